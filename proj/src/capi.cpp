#include "dblcat/dblcat.h"

#include <cstring>
#include <sstream>

#include "dblcat/checks.hpp"
#include "dblcat/corpus.hpp"
#include "dblcat/doc.hpp"
#include "dblcat/gray.hpp"
#include "dblcat/whi.hpp"
#include "dblcat/whitehead.hpp"

struct dbl_cat {
  dbl::DblPtr v;
};
struct dbl_twocat {
  dbl::TwoPtr v;
};
struct dbl_fun {
  dbl::DoubleFunctor v;
};
struct dbl_twofun {
  dbl::TwoFunctor v;
};
struct dbl_report {
  dbl::CheckReport v;
};

namespace {

thread_local std::string g_last_error;

dbl_status status_of(const dbl::Error& e) {
  using dbl::ErrorCode;
  switch (e.code()) {
    case ErrorCode::ParseError: return DBL_E_PARSE;
    case ErrorCode::UnknownName: return DBL_E_UNKNOWN_NAME;
    case ErrorCode::PreconditionFailed:
    case ErrorCode::SourceNotWhi:
    case ErrorCode::NotInjective:
    case ErrorCode::Mismatch: return DBL_E_PRECONDITION;
    case ErrorCode::GrayTensorInfinite:
    case ErrorCode::SaturationCapExceeded:
    case ErrorCode::DepthExceeded: return DBL_E_LIMIT;
    case ErrorCode::Internal:
    case ErrorCode::NonUnique:
    case ErrorCode::ConstructionMismatch: return DBL_E_INTERNAL;
    default: return DBL_E_VALIDATE;
  }
}

template <typename F>
dbl_status guarded(F&& body) {
  try {
    return body();
  } catch (const dbl::Error& e) {
    g_last_error = e.what();
    return status_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return DBL_E_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

dbl_status need(bool ok, const char* what) {
  if (!ok) {
    g_last_error = std::string("bad argument: ") + what;
    return DBL_E_BADARG;
  }
  return DBL_OK;
}

}  // namespace

extern "C" {

const char* dbl_last_error(void) { return g_last_error.c_str(); }

dbl_status dbl_cat_load(const char* spec, dbl_cat** out) {
  if (auto s = need(spec && out, "spec/out")) return s;
  return guarded([&] {
    *out = new dbl_cat{dbl::doc::load_double(spec)};
    return DBL_OK;
  });
}

dbl_status dbl_twocat_load(const char* spec, dbl_twocat** out) {
  if (auto s = need(spec && out, "spec/out")) return s;
  return guarded([&] {
    *out = new dbl_twocat{dbl::doc::load_two(spec)};
    return DBL_OK;
  });
}

dbl_status dbl_fun_load(const char* spec, dbl_fun** out) {
  if (auto s = need(spec && out, "spec/out")) return s;
  return guarded([&] {
    *out = new dbl_fun{dbl::doc::load_double_functor(spec)};
    return DBL_OK;
  });
}

dbl_status dbl_twofun_load(const char* spec, dbl_twofun** out) {
  if (auto s = need(spec && out, "spec/out")) return s;
  return guarded([&] {
    *out = new dbl_twofun{dbl::doc::load_two_functor(spec)};
    return DBL_OK;
  });
}

void dbl_cat_free(dbl_cat* p) { delete p; }
void dbl_twocat_free(dbl_twocat* p) { delete p; }
void dbl_fun_free(dbl_fun* p) { delete p; }
void dbl_twofun_free(dbl_twofun* p) { delete p; }
void dbl_report_free(dbl_report* p) { delete p; }
void dbl_string_free(char* p) { std::free(p); }

dbl_status dbl_cat_serialize(const dbl_cat* c, char** out) {
  if (auto s = need(c && out, "cat/out")) return s;
  return guarded([&] {
    *out = dup_string(dbl::doc::serialize(*c->v));
    return DBL_OK;
  });
}

dbl_status dbl_twocat_serialize(const dbl_twocat* c, char** out) {
  if (auto s = need(c && out, "cat/out")) return s;
  return guarded([&] {
    *out = dup_string(dbl::doc::serialize(*c->v));
    return DBL_OK;
  });
}

dbl_status dbl_fun_serialize(const dbl_fun* f, char** out) {
  if (auto s = need(f && out, "fun/out")) return s;
  return guarded([&] {
    *out = dup_string(dbl::doc::serialize(f->v));
    return DBL_OK;
  });
}

#define DBL_CHECK_IMPL(fn, handle, call)                     \
  dbl_status fn(const handle* x, dbl_report** out) {         \
    if (auto s = need(x && out, "subject/out")) return s;    \
    return guarded([&] {                                     \
      *out = new dbl_report{call};                           \
      return DBL_OK;                                         \
    });                                                      \
  }

DBL_CHECK_IMPL(dbl_check_whi, dbl_cat, dbl::is_whi(*x->v))
DBL_CHECK_IMPL(dbl_check_cofibrant, dbl_cat, dbl::is_cofibrant(*x->v))
DBL_CHECK_IMPL(dbl_check_dblbieq, dbl_fun, dbl::is_double_biequivalence(x->v))
DBL_CHECK_IMPL(dbl_check_trivfib, dbl_fun, dbl::is_trivial_fibration(x->v))
DBL_CHECK_IMPL(dbl_check_jwinj, dbl_fun, dbl::is_jw_injective(x->v))
DBL_CHECK_IMPL(dbl_check_weq_whi_source, dbl_fun, dbl::is_weak_equivalence_whi_source(x->v))
DBL_CHECK_IMPL(dbl_check_lackfib, dbl_twofun, dbl::is_lack_fibration(x->v))
DBL_CHECK_IMPL(dbl_check_bieq2, dbl_twofun, dbl::is_biequivalence_2(x->v))

#undef DBL_CHECK_IMPL

dbl_status dbl_check_weq_truncated(const dbl_fun* f, int depth, dbl_report** out) {
  if (auto s = need(f && out && depth >= 0, "fun/out/depth")) return s;
  return guarded([&] {
    *out = new dbl_report{dbl::whi::is_weak_equivalence_truncated(f->v, depth)};
    return DBL_OK;
  });
}

int dbl_report_verdict(const dbl_report* r) { return r && r->v.verdict ? 1 : 0; }

dbl_status dbl_report_render(const dbl_report* r, const char* format, char** out) {
  if (auto s = need(r && format && out, "report/format/out")) return s;
  return guarded([&] {
    std::string fmt = format;
    if (fmt == "text") *out = dup_string(dbl::doc::render_report_text(r->v));
    else if (fmt == "machine") *out = dup_string(dbl::doc::render_report_json(r->v));
    else {
      g_last_error = "unknown format '" + fmt + "'";
      return DBL_E_BADARG;
    }
    return DBL_OK;
  });
}

dbl_status dbl_report_parse(const char* json, dbl_report** out) {
  if (auto s = need(json && out, "json/out")) return s;
  return guarded([&] {
    *out = new dbl_report{dbl::doc::parse_report_json(json)};
    return DBL_OK;
  });
}

dbl_status dbl_construct_product(const dbl_cat* a, const dbl_cat* x, dbl_cat** out) {
  if (auto s = need(a && x && out, "factors/out")) return s;
  return guarded([&] {
    *out = new dbl_cat{std::make_shared<dbl::FinDoubleCategory>(dbl::product(*a->v, *x->v))};
    return DBL_OK;
  });
}

dbl_status dbl_construct_gray(const dbl_cat* a, const dbl_cat* x, int cap, dbl_cat** out) {
  if (auto s = need(a && x && out && cap > 0, "factors/out/cap")) return s;
  return guarded([&] {
    *out = new dbl_cat{dbl::gray_tensor(a->v, x->v, cap).result};
    return DBL_OK;
  });
}

dbl_status dbl_construct_gray_projection(const dbl_cat* a, const dbl_cat* x, int cap,
                                         dbl_fun** out) {
  if (auto s = need(a && x && out && cap > 0, "factors/out/cap")) return s;
  return guarded([&] {
    auto t = dbl::gray_tensor(a->v, x->v, cap);
    *out = new dbl_fun{dbl::projection(t).pi};
    return DBL_OK;
  });
}

dbl_status dbl_construct_hsim(const dbl_twocat* a, dbl_cat** out) {
  if (auto s = need(a && out, "twocat/out")) return s;
  return guarded([&] {
    *out = new dbl_cat{dbl::h_sim(a->v).result};
    return DBL_OK;
  });
}

dbl_status dbl_construct_hsim_inclusion(const dbl_twocat* a, dbl_fun** out) {
  if (auto s = need(a && out, "twocat/out")) return s;
  return guarded([&] {
    auto hs = dbl::h_sim(a->v);
    auto emb = std::make_shared<dbl::FinDoubleCategory>(dbl::h_embed(*a->v));
    *out = new dbl_fun{dbl::h_sim_inclusion(hs, emb)};
    return DBL_OK;
  });
}

dbl_status dbl_construct_quintet(const dbl_twocat* a, dbl_cat** out) {
  if (auto s = need(a && out, "twocat/out")) return s;
  return guarded([&] {
    *out = new dbl_cat{std::make_shared<dbl::FinDoubleCategory>(dbl::quintet(*a->v))};
    return DBL_OK;
  });
}

dbl_status dbl_construct_transpose(const dbl_cat* a, dbl_cat** out) {
  if (auto s = need(a && out, "cat/out")) return s;
  return guarded([&] {
    *out = new dbl_cat{std::make_shared<dbl::FinDoubleCategory>(dbl::transpose(*a->v))};
    return DBL_OK;
  });
}

dbl_status dbl_construct_whi_replacement(const dbl_cat* a, int depth, char** out) {
  if (auto s = need(a && out && depth >= 0, "cat/out/depth")) return s;
  return guarded([&] {
    auto wr = dbl::whi::whi_truncated(a->v, depth);
    const auto& rep = wr.rep;
    std::ostringstream os;
    os << "whi-replacement " << rep.base().name() << " depth " << rep.depth() << "\n";
    os << "horeq " << rep.horeq().size() << "\n";
    for (size_t i = 0; i < rep.horeq().size(); ++i) {
      const auto& e = rep.horeq()[i];
      os << "  datum " << i << " a " << rep.base().hmor(e.a).id << " c "
         << rep.base().hmor(e.c).id << " eta " << rep.base().square(e.eta).id << " eps "
         << rep.base().square(e.eps).id << "\n";
    }
    os << "verticals " << rep.verticals().size() << "\n";
    for (const auto& w : rep.verticals())
      os << "  " << rep.word_id(w) << " : " << rep.base().object(w.src) << " -> "
         << rep.base().object(rep.word_target(w)) << "\n";
    auto chk = dbl::whi::check_whi_truncated(rep);
    os << "whi-check " << (chk.verdict ? "pass" : "depth-bounded") << "\n";
    for (const auto& fl : chk.flags) os << "  flag: " << fl << "\n";
    *out = dup_string(os.str());
    return DBL_OK;
  });
}

dbl_status dbl_whitehead(const dbl_fun* f, dbl_report** out) {
  if (auto s = need(f && out, "fun/out")) return s;
  return guarded([&] {
    auto w = dbl::whitehead_inverse(f->v);
    auto data = dbl::promote_whitehead(f->v, w);
    auto theta = dbl::theta_modification(f->v, data);
    auto rep = dbl::certify_horbieq_implies_dblbieq(f->v, data);
    rep.check = "whitehead";
    auto hp_eps = dbl::is_hpne(w.eps);
    auto hp_eta = dbl::is_hpne(w.eta);
    if (!hp_eps.verdict || !hp_eta.verdict) {
      rep.verdict = false;
      rep.fail("hpne", {}, "inverse transformations are not equivalences");
    }
    rep.flags.push_back("G=" + w.G.name);
    rep.flags.push_back(std::string("theta=") +
                        (dbl::modification_invertible(theta) ? "invertible" : "broken"));
    *out = new dbl_report{rep};
    return DBL_OK;
  });
}

}  // extern "C"

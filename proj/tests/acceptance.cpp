// Acceptance suite: one line per criterion, exit 0 iff all pass.

#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "dblcat/checks.hpp"
#include "dblcat/corpus.hpp"
#include "dblcat/gray.hpp"
#include "dblcat/whi.hpp"
#include "dblcat/whitehead.hpp"

using namespace dbl;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& label, const std::function<bool()>& body) {
  bool ok = false;
  std::string note;
  try {
    ok = body();
  } catch (const std::exception& e) {
    note = std::string(" (") + e.what() + ")";
  }
  if (!ok) ++g_failures;
  std::printf("criterion %2d: %s  %s%s\n", number, ok ? "PASS" : "FAIL", label.c_str(),
              note.c_str());
  std::fflush(stdout);
}

std::vector<DoubleFunctor> oracle_functors() {
  std::vector<DoubleFunctor> fs;
  for (const auto& name : corpus::functor_names()) fs.push_back(corpus::functor(name));
  return fs;
}

std::vector<DoubleFunctor> whitehead_instances() {
  std::vector<DoubleFunctor> out;
  for (const auto& name :
       {"id:hsim:I", "!:hsim:I", "id:hsim:Cinv", "!:quintet:I", "id:quintet:I", "id:1"})
    out.push_back(corpus::functor(name));
  out.push_back(apply_h_sim(corpus::two_functor("swap:I"), corpus::hsim_of("I"),
                            corpus::hsim_of("I")));
  out.push_back(apply_h_sim(corpus::two_functor("swap:Cinv"), corpus::hsim_of("Cinv"),
                            corpus::hsim_of("Cinv")));
  return out;
}

}  // namespace

int main() {
  criterion(1, "trivial fibration iff RLP against I1..I5 on >= 20 corpus functors", [] {
    std::vector<DoubleFunctor> gens;
    for (const auto& g : {"i1", "i2", "i3", "i4", "i5"}) gens.push_back(corpus::functor(g));
    auto fs = oracle_functors();
    if (fs.size() < 20) return false;
    for (const auto& f : fs) {
      bool tf = is_trivial_fibration(f).verdict;
      bool lifts = true;
      for (const auto& g : gens)
        if (!rlp_oracle(f, g)) {
          lifts = false;
          break;
        }
      if (tf != lifts) {
        std::fprintf(stderr, "  disagreement at %s\n", f.name.c_str());
        return false;
      }
    }
    return true;
  });

  criterion(2, "unique weak inverse per adjoint data on S, quintet(I), Hsim(I)", [] {
    int examined = 0;
    for (const auto& name : {"S", "quintet:I", "hsim:I"}) {
      auto d = corpus::double_category(name);
      for (Idx sq = 0; sq < d->n_squares(); ++sq) {
        if (!is_weakly_horizontally_invertible(*d, sq)) continue;
        const auto& bd = d->square(sq).bd;
        for (const auto& top : find_horizontal_equivalences(*d, bd.top)) {
          if (!top.adjoint) continue;
          for (const auto& bottom : find_horizontal_equivalences(*d, bd.bottom)) {
            if (!bottom.adjoint) continue;
            ++examined;
            if (all_weak_inverses(*d, sq, top, bottom).size() != 1) return false;
          }
        }
      }
    }
    return examined > 0;
  });

  criterion(3, "Hsim(A) is whi and J_A a double biequivalence; H(I) is not whi", [] {
    for (const auto& name : {"1", "2", "I", "Cinv"}) {
      if (!is_whi(*corpus::double_category(std::string("hsim:") + name)).verdict) return false;
      if (!is_double_biequivalence(corpus::functor(std::string("J:") + name)).verdict)
        return false;
    }
    return !is_whi(*corpus::double_category("h:I")).verdict;
  });

  criterion(4, "whi(D) iff jw-injective(D -> 1) across the corpus", [] {
    auto one = corpus::double_category("1");
    for (const auto& name : corpus::double_category_names()) {
      if (name == "0") continue;
      auto d = corpus::double_category(name);
      bool lhs = is_whi(*d).verdict;
      bool rhs = is_jw_injective(collapse_to_terminal(d, one)).verdict;
      if (lhs != rhs) {
        std::fprintf(stderr, "  disagreement at %s\n", name.c_str());
        return false;
      }
    }
    return true;
  });

  criterion(5, "the Gray projection is a trivial fibration on all finite corpus tensors", [] {
    auto pairs = std::vector<std::pair<std::string, std::string>>{
        {"H2", "V2"}, {"H2", "H2"}, {"V2", "V2"}, {"1", "S"},
        {"S", "1"},   {"h:I", "H2"}, {"flat", "V2"}};
    for (const auto& [a, x] : pairs) {
      auto t = gray_tensor(corpus::double_category(a), corpus::double_category(x));
      if (!is_trivial_fibration(projection(t).pi).verdict) {
        std::fprintf(stderr, "  fails at %s (x) %s\n", a.c_str(), x.c_str());
        return false;
      }
    }
    return true;
  });

  criterion(6, "boundary image of i2 against i2 misses exactly the two filling squares", [] {
    auto t = gray_tensor(corpus::double_category("H2"), corpus::double_category("H2"));
    auto i2 = corpus::functor("i2");
    auto img = boundary_tensor_image(i2, i2, t);
    const auto& res = *t.result;
    if (img.n_objects() != res.n_objects() || img.n_hmors() != res.n_hmors() ||
        img.n_vmors() != res.n_vmors())
      return false;
    if (img.n_squares() != res.n_squares() - 2) return false;
    // independent enumeration of the two missing squares
    int missing = 0;
    for (Idx s = 0; s < res.n_squares(); ++s) {
      if (img.square_index(res.square(s).id) != kNone) continue;
      const auto& bd = res.square(s).bd;
      if (t.hwords[bd.top].size() != 2 || t.hwords[bd.bottom].size() != 2 ||
          bd.top == bd.bottom)
        return false;
      ++missing;
    }
    return missing == 2;
  });

  criterion(7, "weak equivalence with whi source agrees with double biequivalence", [] {
    int covered = 0;
    for (const auto& name : corpus::functor_names()) {
      auto f = corpus::functor(name);
      if (!is_whi(*f.source).verdict) continue;
      ++covered;
      if (is_weak_equivalence_whi_source(f).verdict != is_double_biequivalence(f).verdict)
        return false;
      auto trunc = whi::is_weak_equivalence_truncated(f, 2);
      if (trunc.verdict != is_double_biequivalence(f).verdict) return false;
    }
    return covered >= 5;
  });

  criterion(8, "Whitehead round trip on >= 5 double biequivalences with whi source", [] {
    auto fs = whitehead_instances();
    if (fs.size() < 5) return false;
    for (const auto& f : fs) {
      auto w = whitehead_inverse(f);
      validate_pseudo_double_functor(w.G);
      if (!w.G.normal) return false;
      validate_hpnt(w.eps);
      validate_hpnt(w.eps_p);
      validate_hpnt(w.eta);
      validate_modification(w.mu);
      validate_modification(w.nu);
      if (!is_hpne(w.eps).verdict || !is_hpne(w.eps_p).verdict || !is_hpne(w.eta).verdict)
        return false;
      if (!modification_invertible(w.mu) || !modification_invertible(w.nu)) return false;
      auto data = promote_whitehead(f, w);
      auto theta = theta_modification(f, data);
      if (!modification_invertible(theta)) return false;
      // certify runs the proof's constructions and cross-checks the blind search
      if (!certify_horbieq_implies_dblbieq(f, data).verdict) return false;
    }
    return true;
  });

  criterion(9, "Lack fibration iff jw-injective Hsim image on >= 10 2-functors", [] {
    struct Case {
      const char* name;
      const char* src;
      const char* tgt;
    };
    std::vector<Case> cases = {
        {"id:1", "1", "1"},           {"id:2", "2", "2"},
        {"id:I", "I", "I"},           {"id:Cinv", "Cinv", "Cinv"},
        {"id:disc2", "disc2", "disc2"}, {"!:2", "2", "1"},
        {"!:I", "I", "1"},            {"!:Cinv", "Cinv", "1"},
        {"!:disc2", "disc2", "1"},    {"incl:2-I", "2", "I"},
        {"incl:2-Cinv", "2", "Cinv"}, {"swap:I", "I", "I"},
        {"swap:Cinv", "Cinv", "Cinv"}, {"pt0:1-2", "1", "2"},
        {"pt1:1-2", "1", "2"},        {"incl:disc2-2", "disc2", "2"}};
    if (cases.size() < 10) return false;
    for (const auto& c : cases) {
      auto f = corpus::two_functor(c.name);
      auto hf = apply_h_sim(f, corpus::hsim_of(c.src), corpus::hsim_of(c.tgt));
      if (is_lack_fibration(f).verdict != is_jw_injective(hf).verdict) {
        std::fprintf(stderr, "  disagreement at %s\n", c.name);
        return false;
      }
    }
    return true;
  });

  criterion(10, "validators reject >= 95% of single-entry mutations with a witness", [] {
    long total = 0, rejected = 0, with_witness = 0;
    auto tally = [&](const std::function<void()>& run) {
      ++total;
      try {
        run();
      } catch (const Error& e) {
        ++rejected;
        if (!e.witness().empty()) ++with_witness;
      }
    };

    // validate_double_category: composition and designation mutations.
    for (const auto& name : {"S", "flat", "quintet:I", "hsim:I"}) {
      auto p = corpus::double_category(name)->presentation();
      auto mutate_comps = [&](std::vector<DblPresentation::Comp> DblPresentation::*field,
                              const std::vector<std::string>& pool) {
        const auto& comps = p.*field;
        for (size_t i = 0; i < comps.size() && i < 12; ++i)
          for (size_t j = 0; j < pool.size(); ++j) {
            if (pool[j] == comps[i].result) continue;
            auto mut = p;
            (mut.*field)[i].result = pool[j];
            tally([&] { validate_double_category(mut); });
          }
      };
      std::vector<std::string> hpool, vpool, spool;
      for (const auto& m : p.hmors) hpool.push_back(m.id);
      for (const auto& m : p.vmors) vpool.push_back(m.id);
      for (const auto& m : p.squares) spool.push_back(m.id);
      mutate_comps(&DblPresentation::hcomp, hpool);
      mutate_comps(&DblPresentation::vcomp, vpool);
      mutate_comps(&DblPresentation::sq_hcomp, spool);
      mutate_comps(&DblPresentation::sq_vcomp, spool);
      for (size_t i = 0; i < p.e_squares.size() && i < 8; ++i)
        for (const auto& s : spool) {
          if (s == p.e_squares[i].second) continue;
          auto mut = p;
          mut.e_squares[i].second = s;
          tally([&] { validate_double_category(mut); });
        }
      for (size_t i = 0; i < p.squares.size() && i < 8; ++i)
        for (const auto& h : hpool) {
          if (h == p.squares[i].top) continue;
          auto mut = p;
          mut.squares[i].top = h;
          tally([&] { validate_double_category(mut); });
        }
    }

    // validate_double_functor: redirect single map entries.
    for (const auto& name : {"incl:dS-S", "J:I", "i5"}) {
      auto f = corpus::functor(name);
      const auto& s = *f.source;
      const auto& t = *f.target;
      RawMaps maps;
      for (Idx o = 0; o < s.n_objects(); ++o) maps.objects[s.object(o)] = t.object(f.obj[o]);
      for (Idx i = 0; i < s.n_hmors(); ++i) maps.hmors[s.hmor(i).id] = t.hmor(f.hmor[i]).id;
      for (Idx i = 0; i < s.n_vmors(); ++i) maps.vmors[s.vmor(i).id] = t.vmor(f.vmor[i]).id;
      for (Idx i = 0; i < s.n_squares(); ++i)
        maps.squares[s.square(i).id] = t.square(f.sq[i]).id;
      int budget = 0;
      for (const auto& [k, v] : maps.squares) {
        if (++budget > 10) break;
        for (Idx j = 0; j < t.n_squares(); ++j) {
          if (t.square(j).id == v) continue;
          auto mut = maps;
          mut.squares[k] = t.square(j).id;
          tally([&] { validate_double_functor(f.source, f.target, mut); });
        }
      }
      budget = 0;
      for (const auto& [k, v] : maps.hmors) {
        if (++budget > 10) break;
        for (Idx j = 0; j < t.n_hmors(); ++j) {
          if (t.hmor(j).id == v) continue;
          auto mut = maps;
          mut.hmors[k] = t.hmor(j).id;
          tally([&] { validate_double_functor(f.source, f.target, mut); });
        }
      }
    }

    // validate_two_category mutations.
    for (const auto& name : {"I", "Cinv"}) {
      auto p = corpus::two_category(name)->presentation();
      std::vector<std::string> pool1, pool2;
      for (const auto& m : p.cells1) pool1.push_back(m.id);
      for (const auto& m : p.cells2) pool2.push_back(m.id);
      for (size_t i = 0; i < p.comp1.size(); ++i)
        for (const auto& c : pool1) {
          if (c == p.comp1[i].result) continue;
          auto mut = p;
          mut.comp1[i].result = c;
          tally([&] { validate_two_category(mut); });
        }
      for (size_t i = 0; i < p.vcomp2.size(); ++i)
        for (const auto& c : pool2) {
          if (c == p.vcomp2[i].result) continue;
          auto mut = p;
          mut.vcomp2[i].result = c;
          tally([&] { validate_two_category(mut); });
        }
    }

    // validate_pseudo_double_functor: comparator mutations on a Whitehead G.
    {
      auto f = corpus::functor("!:hsim:I");
      auto w = whitehead_inverse(f);
      const auto& sa = *f.source;
      int budget = 0;
      for (const auto& [key, sq] : w.G.phi) {
        if (++budget > 6) break;
        for (Idx j = 0; j < sa.n_squares() && j < 12; ++j) {
          if (j == sq) continue;
          auto mut = w.G;
          mut.phi[key] = j;
          tally([&] { validate_pseudo_double_functor(mut); });
        }
      }
    }

    if (total == 0) return false;
    double rate = static_cast<double>(rejected) / static_cast<double>(total);
    double witness_rate = static_cast<double>(with_witness) / static_cast<double>(total);
    std::fprintf(stderr, "  mutations: %ld, rejected: %ld (%.1f%%), with witness: %.1f%%\n",
                 total, rejected, 100.0 * rate, 100.0 * witness_rate);
    return rate >= 0.95 && witness_rate >= 0.95;
  });

  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria pass\n");
  return 0;
}

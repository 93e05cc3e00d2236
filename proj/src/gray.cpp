#include "dblcat/gray.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace dbl {

namespace {

std::string pair_id(const std::string& a, const std::string& b) {
  return "(" + a + "|" + b + ")";
}

// Words are tracked together with their source object pair; the target is
// recovered by walking the moves.
struct WordKey {
  Idx src;  // result-object index of the source
  GrayWord w;
  friend auto operator<=>(const WordKey&, const WordKey&) = default;
};

struct Side {
  const FinDoubleCategory* a;
  const FinDoubleCategory* x;
};

// No non-identity endomorphisms and an acyclic non-identity reachability
// graph: every alternating word then makes strict progress.
bool progressive(const FinCategory& c) {
  int n = static_cast<int>(c.objects.size());
  std::vector<std::vector<int>> adj(n);
  for (const auto& m : c.mors) {
    if (m.is_id) continue;
    if (m.src == m.tgt) return false;
    adj[m.src].push_back(m.tgt);
  }
  std::vector<int> state(n, 0);
  std::function<bool(int)> dfs = [&](int v) {
    state[v] = 1;
    for (int w : adj[v]) {
      if (state[w] == 1) return false;
      if (state[w] == 0 && !dfs(w)) return false;
    }
    state[v] = 2;
    return true;
  };
  for (int v = 0; v < n; ++v)
    if (state[v] == 0 && !dfs(v)) return false;
  return true;
}

std::string move_id(const FinDoubleCategory& a, const FinDoubleCategory& x, bool horizontal,
                    const GrayMove& m) {
  if (m.left_factor)
    return "l:" + (horizontal ? a.hmor(m.mor).id : a.vmor(m.mor).id) + "@" +
           x.object(m.level);
  return "r:" + a.object(m.level) + "@" + (horizontal ? x.hmor(m.mor).id : x.vmor(m.mor).id);
}

std::string word_id(const FinDoubleCategory& a, const FinDoubleCategory& x, bool horizontal,
                    Idx src_a, Idx src_x, const GrayWord& w) {
  if (w.empty()) return "id" + pair_id(a.object(src_a), x.object(src_x));
  std::string s = "[";
  for (size_t i = 0; i < w.size(); ++i)
    s += (i ? "." : "") + move_id(a, x, horizontal, w[i]);
  return s + "]";
}

}  // namespace

Idx GrayTensor::hmor_of_word(Idx src_obj, const GrayWord& w) const {
  for (size_t i = 0; i < hwords.size(); ++i)
    if (hwords[i] == w && result->hmor(static_cast<Idx>(i)).src == src_obj)
      return static_cast<Idx>(i);
  return kNone;
}

Idx GrayTensor::vmor_of_word(Idx src_obj, const GrayWord& w) const {
  for (size_t i = 0; i < vwords.size(); ++i)
    if (vwords[i] == w && result->vmor(static_cast<Idx>(i)).src == src_obj)
      return static_cast<Idx>(i);
  return kNone;
}

GrayTensor gray_tensor(DblPtr ap, DblPtr xp, int cap) {
  const auto& a = *ap;
  const auto& x = *xp;

  auto obj_index = [&](Idx oa, Idx ox) { return oa * x.n_objects() + ox; };
  auto obj_a = [&](Idx o) { return o / x.n_objects(); };
  auto obj_x = [&](Idx o) { return o % x.n_objects(); };

  // One enumeration routine for both directions.
  struct Dir {
    bool horizontal;
    // factor data accessors are resolved through lambdas below
  };

  auto enumerate_words = [&](bool horizontal) {
    auto n_mors = [&](const FinDoubleCategory& d) {
      return horizontal ? d.n_hmors() : d.n_vmors();
    };
    auto mor = [&](const FinDoubleCategory& d, Idx i) -> const FinDoubleCategory::Mor& {
      return horizontal ? d.hmor(i) : d.vmor(i);
    };
    bool fin = progressive(horizontal ? underlying_horizontal_category(a)
                                      : underlying_vertical_category(a)) &&
               progressive(horizontal ? underlying_horizontal_category(x)
                                      : underlying_vertical_category(x));
    std::vector<WordKey> words;
    std::deque<WordKey> frontier;
    for (Idx oa = 0; oa < a.n_objects(); ++oa)
      for (Idx ox = 0; ox < x.n_objects(); ++ox) {
        WordKey k{obj_index(oa, ox), {}};
        words.push_back(k);
        frontier.push_back(k);
      }
    while (!frontier.empty()) {
      WordKey k = frontier.front();
      frontier.pop_front();
      if (!fin && static_cast<int>(k.w.size()) >= cap)
        throw Error(ErrorCode::GrayTensorInfinite,
                    "word enumeration exceeded the cap of " + std::to_string(cap),
                    {word_id(a, x, horizontal, obj_a(k.src), obj_x(k.src), k.w)});
      // current endpoint
      Idx ca = obj_a(k.src), cx = obj_x(k.src);
      for (const auto& mv : k.w) {
        if (mv.left_factor) ca = mor(a, mv.mor).tgt;
        else cx = mor(x, mv.mor).tgt;
      }
      bool last_left = !k.w.empty() && k.w.back().left_factor;
      // extend with a left-factor move (if last move was not left-factor)
      if (k.w.empty() || !last_left)
        for (Idx m = 0; m < n_mors(a); ++m)
          if (!mor(a, m).is_id && mor(a, m).src == ca) {
            WordKey k2 = k;
            k2.w.push_back({true, m, cx});
            words.push_back(k2);
            frontier.push_back(k2);
          }
      if (k.w.empty() || last_left)
        for (Idx m = 0; m < n_mors(x); ++m)
          if (!mor(x, m).is_id && mor(x, m).src == cx) {
            WordKey k2 = k;
            k2.w.push_back({false, m, ca});
            words.push_back(k2);
            frontier.push_back(k2);
          }
    }
    std::sort(words.begin(), words.end());
    return words;
  };

  auto hws = enumerate_words(true);
  auto vws = enumerate_words(false);

  auto word_target = [&](bool horizontal, const WordKey& k) {
    Idx ca = obj_a(k.src), cx = obj_x(k.src);
    for (const auto& mv : k.w) {
      const auto& m = mv.left_factor
                          ? (horizontal ? a.hmor(mv.mor) : a.vmor(mv.mor))
                          : (horizontal ? x.hmor(mv.mor) : x.vmor(mv.mor));
      if (mv.left_factor) ca = m.tgt;
      else cx = m.tgt;
    }
    return obj_index(ca, cx);
  };
  auto word_proj = [&](bool horizontal, const WordKey& k) -> std::pair<Idx, Idx> {
    Idx pa = horizontal ? a.id_hmor(obj_a(k.src)) : a.id_vmor(obj_a(k.src));
    Idx px = horizontal ? x.id_hmor(obj_x(k.src)) : x.id_vmor(obj_x(k.src));
    for (const auto& mv : k.w) {
      if (mv.left_factor)
        pa = horizontal ? a.hcomp(pa, mv.mor) : a.vcomp(pa, mv.mor);
      else
        px = horizontal ? x.hcomp(px, mv.mor) : x.vcomp(px, mv.mor);
    }
    return {pa, px};
  };
  auto normalize_concat = [&](bool horizontal, const GrayWord& w1, const GrayWord& w2) {
    GrayWord out = w1;
    for (const auto& mv : w2) {
      if (!out.empty() && out.back().left_factor == mv.left_factor) {
        // same factor: compose within it, dropping identities
        const auto& d = mv.left_factor ? a : x;
        Idx comp = horizontal ? d.hcomp(out.back().mor, mv.mor)
                              : d.vcomp(out.back().mor, mv.mor);
        bool is_id = horizontal ? d.hmor(comp).is_id : d.vmor(comp).is_id;
        if (is_id) out.pop_back();
        else out.back().mor = comp;
      } else {
        out.push_back(mv);
      }
    }
    return out;
  };

  DblPresentation p;
  p.name = "(" + a.name() + "(x)" + x.name() + ")";
  for (Idx oa = 0; oa < a.n_objects(); ++oa)
    for (Idx ox = 0; ox < x.n_objects(); ++ox)
      p.objects.push_back(pair_id(a.object(oa), x.object(ox)));
  auto obj_id = [&](Idx o) { return pair_id(a.object(obj_a(o)), x.object(obj_x(o))); };

  auto hid = [&](const WordKey& k) {
    return word_id(a, x, true, obj_a(k.src), obj_x(k.src), k.w);
  };
  auto vid = [&](const WordKey& k) {
    return word_id(a, x, false, obj_a(k.src), obj_x(k.src), k.w);
  };
  for (const auto& k : hws)
    p.hmors.push_back({hid(k), obj_id(k.src), obj_id(word_target(true, k)), k.w.empty()});
  for (const auto& k : vws)
    p.vmors.push_back({vid(k), obj_id(k.src), obj_id(word_target(false, k)), k.w.empty()});

  auto find_word = [&](const std::vector<WordKey>& ws, Idx src, const GrayWord& w) {
    WordKey key{src, w};
    auto it = std::lower_bound(ws.begin(), ws.end(), key);
    if (it == ws.end() || !(*it == key))
      throw Error(ErrorCode::Internal, "normal form missing from enumeration");
    return static_cast<Idx>(it - ws.begin());
  };

  for (size_t i = 0; i < hws.size(); ++i)
    for (size_t j = 0; j < hws.size(); ++j) {
      if (word_target(true, hws[i]) != hws[j].src) continue;
      if (hws[i].w.empty() || hws[j].w.empty()) continue;
      auto comp = normalize_concat(true, hws[i].w, hws[j].w);
      p.hcomp.push_back({hid(hws[i]), hid(hws[j]), hid(hws[find_word(hws, hws[i].src, comp)])});
    }
  for (size_t i = 0; i < vws.size(); ++i)
    for (size_t j = 0; j < vws.size(); ++j) {
      if (word_target(false, vws[i]) != vws[j].src) continue;
      if (vws[i].w.empty() || vws[j].w.empty()) continue;
      auto comp = normalize_concat(false, vws[i].w, vws[j].w);
      p.vcomp.push_back({vid(vws[i]), vid(vws[j]), vid(vws[find_word(vws, vws[i].src, comp)])});
    }

  // Squares: per boundary of words, one square for each pair of factor
  // squares over the projected boundary.
  struct SqRec {
    Idx top, bottom, left, right;  // indices into hws/hws/vws/vws
    Idx sa, sx;
  };
  std::vector<SqRec> sqs;
  for (size_t t = 0; t < hws.size(); ++t)
    for (size_t b = 0; b < hws.size(); ++b)
      for (size_t l = 0; l < vws.size(); ++l) {
        if (vws[l].src != hws[t].src) continue;
        if (word_target(false, vws[l]) != hws[b].src) continue;
        for (size_t r = 0; r < vws.size(); ++r) {
          if (vws[r].src != word_target(true, hws[t])) continue;
          if (word_target(false, vws[r]) != word_target(true, hws[b])) continue;
          auto [ta, tx] = word_proj(true, hws[t]);
          auto [ba, bx] = word_proj(true, hws[b]);
          auto [la, lx] = word_proj(false, vws[l]);
          auto [ra, rx] = word_proj(false, vws[r]);
          for (Idx sa : a.squares_over({ta, ba, la, ra}))
            for (Idx sx : x.squares_over({tx, bx, lx, rx}))
              sqs.push_back({static_cast<Idx>(t), static_cast<Idx>(b), static_cast<Idx>(l),
                             static_cast<Idx>(r), sa, sx});
        }
      }
  auto sq_name = [&](size_t i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "q%05zu", i);
    return std::string(buf);
  };
  for (size_t i = 0; i < sqs.size(); ++i)
    p.squares.push_back({sq_name(i), hid(hws[sqs[i].top]), hid(hws[sqs[i].bottom]),
                         vid(vws[sqs[i].left]), vid(vws[sqs[i].right])});
  auto find_sq = [&](Idx top, Idx bottom, Idx left, Idx right, Idx sa, Idx sx) {
    for (size_t i = 0; i < sqs.size(); ++i)
      if (sqs[i].top == top && sqs[i].bottom == bottom && sqs[i].left == left &&
          sqs[i].right == right && sqs[i].sa == sa && sqs[i].sx == sx)
        return sq_name(i);
    throw Error(ErrorCode::Internal, "tensor square missing from enumeration");
  };
  for (size_t i = 0; i < sqs.size(); ++i)
    for (size_t j = 0; j < sqs.size(); ++j) {
      const auto& u = sqs[i];
      const auto& v = sqs[j];
      if (u.right == v.left) {
        if (word_target(true, hws[u.top]) == hws[v.top].src) {
          auto top = find_word(hws, hws[u.top].src,
                               normalize_concat(true, hws[u.top].w, hws[v.top].w));
          auto bot = find_word(hws, hws[u.bottom].src,
                               normalize_concat(true, hws[u.bottom].w, hws[v.bottom].w));
          p.sq_hcomp.push_back({sq_name(i), sq_name(j),
                                find_sq(top, bot, u.left, v.right, a.sq_hcomp(u.sa, v.sa),
                                        x.sq_hcomp(u.sx, v.sx))});
        }
      }
      if (u.bottom == v.top) {
        if (word_target(false, vws[u.left]) == vws[v.left].src) {
          auto l = find_word(vws, vws[u.left].src,
                             normalize_concat(false, vws[u.left].w, vws[v.left].w));
          auto r = find_word(vws, vws[u.right].src,
                             normalize_concat(false, vws[u.right].w, vws[v.right].w));
          p.sq_vcomp.push_back({sq_name(i), sq_name(j),
                                find_sq(u.top, v.bottom, l, r, a.sq_vcomp(u.sa, v.sa),
                                        x.sq_vcomp(u.sx, v.sx))});
        }
      }
    }
  for (size_t t = 0; t < hws.size(); ++t) {
    auto [pa, px] = word_proj(true, hws[t]);
    Idx l = find_word(vws, hws[t].src, {});
    Idx r = find_word(vws, word_target(true, hws[t]), {});
    p.e_squares.push_back({hid(hws[t]), find_sq(static_cast<Idx>(t), static_cast<Idx>(t), l,
                                                r, a.e_square(pa), x.e_square(px))});
  }
  for (size_t v = 0; v < vws.size(); ++v) {
    auto [pa, px] = word_proj(false, vws[v]);
    Idx t = find_word(hws, vws[v].src, {});
    Idx b = find_word(hws, word_target(false, vws[v]), {});
    p.id_squares.push_back({vid(vws[v]), find_sq(t, b, static_cast<Idx>(v),
                                                 static_cast<Idx>(v), a.id_square(pa),
                                                 x.id_square(px))});
  }

  GrayTensor out;
  out.left = ap;
  out.right = xp;
  out.result = std::make_shared<FinDoubleCategory>(validate_double_category(p));
  const auto& res = *out.result;
  out.obj_pair.resize(res.n_objects());
  for (Idx oa = 0; oa < a.n_objects(); ++oa)
    for (Idx ox = 0; ox < x.n_objects(); ++ox)
      out.obj_pair[res.object_index(pair_id(a.object(oa), x.object(ox)))] = {oa, ox};
  out.hwords.resize(res.n_hmors());
  out.hproj.resize(res.n_hmors());
  for (const auto& k : hws) {
    Idx i = res.hmor_index(word_id(a, x, true, obj_a(k.src), obj_x(k.src), k.w));
    out.hwords[i] = k.w;
    out.hproj[i] = word_proj(true, k);
  }
  out.vwords.resize(res.n_vmors());
  out.vproj.resize(res.n_vmors());
  for (const auto& k : vws) {
    Idx i = res.vmor_index(word_id(a, x, false, obj_a(k.src), obj_x(k.src), k.w));
    out.vwords[i] = k.w;
    out.vproj[i] = word_proj(false, k);
  }
  out.sq_pair.resize(res.n_squares());
  for (size_t i = 0; i < sqs.size(); ++i)
    out.sq_pair[res.square_index(sq_name(i))] = {sqs[i].sa, sqs[i].sx};
  return out;
}

GrayProjection projection(const GrayTensor& t) {
  const auto& a = *t.left;
  const auto& x = *t.right;
  const auto& res = *t.result;
  auto prod = std::make_shared<FinDoubleCategory>(product(a, x));
  RawMaps maps;
  for (Idx o = 0; o < res.n_objects(); ++o)
    maps.objects[res.object(o)] =
        pair_id(a.object(t.obj_pair[o].first), x.object(t.obj_pair[o].second));
  for (Idx h = 0; h < res.n_hmors(); ++h)
    maps.hmors[res.hmor(h).id] =
        pair_id(a.hmor(t.hproj[h].first).id, x.hmor(t.hproj[h].second).id);
  for (Idx v = 0; v < res.n_vmors(); ++v)
    maps.vmors[res.vmor(v).id] =
        pair_id(a.vmor(t.vproj[v].first).id, x.vmor(t.vproj[v].second).id);
  for (Idx s = 0; s < res.n_squares(); ++s)
    maps.squares[res.square(s).id] =
        pair_id(a.square(t.sq_pair[s].first).id, x.square(t.sq_pair[s].second).id);
  GrayProjection out;
  out.pi = validate_double_functor(t.result, prod, maps,
                                   "Pi(" + a.name() + "," + x.name() + ")");
  out.prod = prod;
  return out;
}

DoubleFunctor gray_symmetry(const GrayTensor& t, const GrayTensor& swapped) {
  const auto& res = *t.result;
  const auto& sres = *swapped.result;
  const auto& a = *t.left;
  const auto& x = *t.right;
  RawMaps maps;
  auto swap_word = [&](const GrayWord& w) {
    GrayWord out;
    for (const auto& mv : w) out.push_back({!mv.left_factor, mv.mor, mv.level});
    return out;
  };
  for (Idx o = 0; o < res.n_objects(); ++o)
    maps.objects[res.object(o)] =
        pair_id(x.object(t.obj_pair[o].second), a.object(t.obj_pair[o].first));
  for (Idx h = 0; h < res.n_hmors(); ++h) {
    Idx so = sres.object_index(maps.objects[res.object(res.hmor(h).src)]);
    Idx img = swapped.hmor_of_word(so, swap_word(t.hwords[h]));
    if (img == kNone) throw Error(ErrorCode::Internal, "swapped word missing");
    maps.hmors[res.hmor(h).id] = sres.hmor(img).id;
  }
  for (Idx v = 0; v < res.n_vmors(); ++v) {
    Idx so = sres.object_index(maps.objects[res.object(res.vmor(v).src)]);
    Idx img = swapped.vmor_of_word(so, swap_word(t.vwords[v]));
    if (img == kNone) throw Error(ErrorCode::Internal, "swapped word missing");
    maps.vmors[res.vmor(v).id] = sres.vmor(img).id;
  }
  for (Idx s = 0; s < res.n_squares(); ++s) {
    const auto& bd = res.square(s).bd;
    Boundary want{sres.hmor_index(maps.hmors[res.hmor(bd.top).id]),
                  sres.hmor_index(maps.hmors[res.hmor(bd.bottom).id]),
                  sres.vmor_index(maps.vmors[res.vmor(bd.left).id]),
                  sres.vmor_index(maps.vmors[res.vmor(bd.right).id])};
    Idx found = kNone;
    for (Idx cand : sres.squares_over(want))
      if (swapped.sq_pair[cand].first == t.sq_pair[s].second &&
          swapped.sq_pair[cand].second == t.sq_pair[s].first)
        found = cand;
    if (found == kNone) throw Error(ErrorCode::Internal, "swapped square missing");
    maps.squares[res.square(s).id] = sres.square(found).id;
  }
  return validate_double_functor(t.result, swapped.result, maps, "swap");
}

DoubleFunctor gray_tensor_functor(const DoubleFunctor& f, const DoubleFunctor& g,
                                  const GrayTensor& src, const GrayTensor& tgt) {
  if (!same_category(*f.source, *src.left) || !same_category(*g.source, *src.right) ||
      !same_category(*f.target, *tgt.left) || !same_category(*g.target, *tgt.right))
    throw Error(ErrorCode::Mismatch, "tensor functor endpoints do not match");
  const auto& res = *src.result;
  const auto& tres = *tgt.result;
  const auto& ta = *tgt.left;
  const auto& tx = *tgt.right;
  RawMaps maps;
  auto map_word = [&](const GrayWord& w, bool horizontal) {
    GrayWord out;
    for (const auto& mv : w) {
      GrayMove m2 = mv;
      if (mv.left_factor) {
        m2.mor = horizontal ? f.hmor[mv.mor] : f.vmor[mv.mor];
        m2.level = g.obj[mv.level];
        bool is_id = horizontal ? ta.hmor(m2.mor).is_id : ta.vmor(m2.mor).is_id;
        if (is_id) continue;
      } else {
        m2.mor = horizontal ? g.hmor[mv.mor] : g.vmor[mv.mor];
        m2.level = f.obj[mv.level];
        bool is_id = horizontal ? tx.hmor(m2.mor).is_id : tx.vmor(m2.mor).is_id;
        if (is_id) continue;
      }
      if (!out.empty() && out.back().left_factor == m2.left_factor) {
        const auto& d = m2.left_factor ? ta : tx;
        Idx comp = horizontal ? d.hcomp(out.back().mor, m2.mor)
                              : d.vcomp(out.back().mor, m2.mor);
        bool is_id = horizontal ? d.hmor(comp).is_id : d.vmor(comp).is_id;
        if (is_id) out.pop_back();
        else out.back().mor = comp;
      } else {
        out.push_back(m2);
      }
    }
    return out;
  };
  for (Idx o = 0; o < res.n_objects(); ++o)
    maps.objects[res.object(o)] =
        pair_id(ta.object(f.obj[src.obj_pair[o].first]),
                tx.object(g.obj[src.obj_pair[o].second]));
  for (Idx h = 0; h < res.n_hmors(); ++h) {
    Idx so = tres.object_index(maps.objects[res.object(res.hmor(h).src)]);
    Idx img = tgt.hmor_of_word(so, map_word(src.hwords[h], true));
    if (img == kNone) throw Error(ErrorCode::Internal, "image word missing in tensor");
    maps.hmors[res.hmor(h).id] = tres.hmor(img).id;
  }
  for (Idx v = 0; v < res.n_vmors(); ++v) {
    Idx so = tres.object_index(maps.objects[res.object(res.vmor(v).src)]);
    Idx img = tgt.vmor_of_word(so, map_word(src.vwords[v], false));
    if (img == kNone) throw Error(ErrorCode::Internal, "image word missing in tensor");
    maps.vmors[res.vmor(v).id] = tres.vmor(img).id;
  }
  for (Idx s = 0; s < res.n_squares(); ++s) {
    const auto& bd = res.square(s).bd;
    Boundary want{tres.hmor_index(maps.hmors[res.hmor(bd.top).id]),
                  tres.hmor_index(maps.hmors[res.hmor(bd.bottom).id]),
                  tres.vmor_index(maps.vmors[res.vmor(bd.left).id]),
                  tres.vmor_index(maps.vmors[res.vmor(bd.right).id])};
    Idx found = kNone;
    for (Idx cand : tres.squares_over(want))
      if (tgt.sq_pair[cand].first == f.sq[src.sq_pair[s].first] &&
          tgt.sq_pair[cand].second == g.sq[src.sq_pair[s].second])
        found = cand;
    if (found == kNone) throw Error(ErrorCode::Internal, "image square missing in tensor");
    maps.squares[res.square(s).id] = tres.square(found).id;
  }
  return validate_double_functor(src.result, tgt.result, maps,
                                 f.name + "(x)" + g.name);
}

FinDoubleCategory boundary_tensor_image(const DoubleFunctor& i, const DoubleFunctor& j,
                                        const GrayTensor& t) {
  if (!same_category(*i.target, *t.left) || !same_category(*j.target, *t.right))
    throw Error(ErrorCode::Mismatch, "boundary image: tensor factors must be the targets");
  auto injective = [](const std::vector<Idx>& v) {
    std::set<Idx> seen(v.begin(), v.end());
    return seen.size() == v.size();
  };
  for (const auto* f : {&i, &j})
    if (!injective(f->obj) || !injective(f->hmor) || !injective(f->vmor) || !injective(f->sq))
      throw Error(ErrorCode::NotInjective, "boundary image needs injective inclusions");

  std::set<Idx> iobj(i.obj.begin(), i.obj.end());
  std::set<Idx> ihm(i.hmor.begin(), i.hmor.end());
  std::set<Idx> ivm(i.vmor.begin(), i.vmor.end());
  std::set<Idx> isq(i.sq.begin(), i.sq.end());
  std::set<Idx> jobj(j.obj.begin(), j.obj.end());
  std::set<Idx> jhm(j.hmor.begin(), j.hmor.end());
  std::set<Idx> jvm(j.vmor.begin(), j.vmor.end());
  std::set<Idx> jsq(j.sq.begin(), j.sq.end());

  const auto& res = *t.result;
  // A word lies in D (x) E if its right-factor data is in the image of j;
  // in C (x) B if its left-factor data is in the image of i.
  auto word_in = [&](const GrayWord& w, Idx src_obj, bool horizontal, bool de_side) {
    Idx oa = t.obj_pair[src_obj].first, ox = t.obj_pair[src_obj].second;
    if (de_side && !jobj.count(ox)) return false;
    if (!de_side && !iobj.count(oa)) return false;
    for (const auto& mv : w) {
      if (de_side) {
        if (mv.left_factor) {
          if (!jobj.count(mv.level)) return false;
        } else {
          if (horizontal ? !jhm.count(mv.mor) : !jvm.count(mv.mor)) return false;
        }
      } else {
        if (mv.left_factor) {
          if (horizontal ? !ihm.count(mv.mor) : !ivm.count(mv.mor)) return false;
        } else {
          if (!iobj.count(mv.level)) return false;
        }
      }
    }
    return true;
  };

  SeedCells seed;
  for (Idx o = 0; o < res.n_objects(); ++o) {
    auto [oa, ox] = t.obj_pair[o];
    if (jobj.count(ox) || iobj.count(oa)) seed.objects.push_back(res.object(o));
  }
  for (Idx h = 0; h < res.n_hmors(); ++h)
    if (word_in(t.hwords[h], res.hmor(h).src, true, true) ||
        word_in(t.hwords[h], res.hmor(h).src, true, false))
      seed.hmors.push_back(res.hmor(h).id);
  for (Idx v = 0; v < res.n_vmors(); ++v)
    if (word_in(t.vwords[v], res.vmor(v).src, false, true) ||
        word_in(t.vwords[v], res.vmor(v).src, false, false))
      seed.vmors.push_back(res.vmor(v).id);
  for (Idx s = 0; s < res.n_squares(); ++s) {
    const auto& bd = res.square(s).bd;
    bool de = word_in(t.hwords[bd.top], res.hmor(bd.top).src, true, true) &&
              word_in(t.hwords[bd.bottom], res.hmor(bd.bottom).src, true, true) &&
              word_in(t.vwords[bd.left], res.vmor(bd.left).src, false, true) &&
              word_in(t.vwords[bd.right], res.vmor(bd.right).src, false, true) &&
              jsq.count(t.sq_pair[s].second);
    bool cb = word_in(t.hwords[bd.top], res.hmor(bd.top).src, true, false) &&
              word_in(t.hwords[bd.bottom], res.hmor(bd.bottom).src, true, false) &&
              word_in(t.vwords[bd.left], res.vmor(bd.left).src, false, false) &&
              word_in(t.vwords[bd.right], res.vmor(bd.right).src, false, false) &&
              isq.count(t.sq_pair[s].first);
    if (de || cb) seed.squares.push_back(res.square(s).id);
  }
  return generated_subdouble(res, seed);
}

}  // namespace dbl

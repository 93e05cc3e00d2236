#include "dblcat/checks.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace dbl {

bool DblAnalysis::is_equiv(Idx hmor) { return !equivs(hmor).empty(); }

const std::vector<HorEquivData>& DblAnalysis::equivs(Idx hmor) {
  auto it = equivs_.find(hmor);
  if (it == equivs_.end())
    it = equivs_.emplace(hmor, find_horizontal_equivalences(d_, hmor)).first;
  return it->second;
}

bool DblAnalysis::whi_invertible(Idx sq) { return whi_witness(sq).has_value(); }

const std::optional<WeakInvWitness>& DblAnalysis::whi_witness(Idx sq) {
  auto it = whi_.find(sq);
  if (it == whi_.end())
    it = whi_.emplace(sq, is_weakly_horizontally_invertible(d_, sq)).first;
  return it->second;
}

// ---------------------------------------------------------------------------

CheckReport is_double_biequivalence(const DoubleFunctor& f) {
  const auto& s = *f.source;
  const auto& t = *f.target;
  DblAnalysis ta(t);
  CheckReport rep;
  rep.check = "dblbieq";
  rep.subject = f.name;

  // (db1) every target object has a horizontal equivalence to an image object.
  for (Idx b = 0; b < t.n_objects(); ++b) {
    bool found = false;
    for (Idx h = 0; h < t.n_hmors() && !found; ++h) {
      if (t.hmor(h).src != b) continue;
      bool image_tgt = false;
      for (Idx a = 0; a < s.n_objects(); ++a)
        if (f.obj[a] == t.hmor(h).tgt) image_tgt = true;
      if (image_tgt && ta.is_equiv(h)) found = true;
    }
    if (!found)
      rep.fail("db1", {t.object(b)}, "no horizontal equivalence to an image object");
  }

  // (db2) horizontal morphisms between image objects lift up to a vertically
  // invertible square.
  for (Idx a = 0; a < s.n_objects(); ++a)
    for (Idx c = 0; c < s.n_objects(); ++c)
      for (Idx b = 0; b < t.n_hmors(); ++b) {
        if (t.hmor(b).src != f.obj[a] || t.hmor(b).tgt != f.obj[c]) continue;
        bool found = false;
        for (Idx m = 0; m < s.n_hmors() && !found; ++m) {
          if (s.hmor(m).src != a || s.hmor(m).tgt != c) continue;
          Boundary bd{b, f.hmor[m], t.id_vmor(f.obj[a]), t.id_vmor(f.obj[c])};
          for (Idx sq : t.squares_over(bd))
            if (is_vertically_invertible(t, sq)) {
              found = true;
              break;
            }
        }
        if (!found)
          rep.fail("db2", {s.object(a), s.object(c), t.hmor(b).id},
                   "no lift up to vertically invertible square");
      }

  // (db3) vertical morphisms lift up to a weakly horizontally invertible
  // square with horizontal equivalence boundaries.
  for (Idx v = 0; v < t.n_vmors(); ++v) {
    bool found = false;
    for (Idx u = 0; u < s.n_vmors() && !found; ++u) {
      Idx fa = f.obj[s.vmor(u).src], fa2 = f.obj[s.vmor(u).tgt];
      for (Idx b = 0; b < t.n_hmors() && !found; ++b) {
        if (t.hmor(b).src != t.vmor(v).src || t.hmor(b).tgt != fa) continue;
        if (!ta.is_equiv(b)) continue;
        for (Idx b2 = 0; b2 < t.n_hmors() && !found; ++b2) {
          if (t.hmor(b2).src != t.vmor(v).tgt || t.hmor(b2).tgt != fa2) continue;
          if (!ta.is_equiv(b2)) continue;
          Boundary bd{b, b2, v, f.vmor[u]};
          for (Idx sq : t.squares_over(bd))
            if (ta.whi_invertible(sq)) {
              found = true;
              break;
            }
        }
      }
    }
    if (!found)
      rep.fail("db3", {t.vmor(v).id}, "no weakly horizontally invertible lift");
  }

  // (db4) full faithfulness on squares over image boundaries.
  for (Idx top = 0; top < s.n_hmors(); ++top)
    for (Idx bot = 0; bot < s.n_hmors(); ++bot)
      for (Idx l = 0; l < s.n_vmors(); ++l) {
        if (s.vmor(l).src != s.hmor(top).src || s.vmor(l).tgt != s.hmor(bot).src) continue;
        for (Idx r = 0; r < s.n_vmors(); ++r) {
          if (s.vmor(r).src != s.hmor(top).tgt || s.vmor(r).tgt != s.hmor(bot).tgt) continue;
          Boundary bd{top, bot, l, r};
          Boundary fbd = f.on_boundary(bd);
          const auto& pre = s.squares_over(bd);
          const auto& post = t.squares_over(fbd);
          for (Idx beta : post) {
            int hits = 0;
            Idx first = kNone, second = kNone;
            for (Idx alpha : pre)
              if (f.sq[alpha] == beta) {
                if (hits == 0) first = alpha;
                else second = alpha;
                ++hits;
              }
            if (hits == 0)
              rep.fail("db4",
                       {s.hmor(top).id, s.hmor(bot).id, s.vmor(l).id, s.vmor(r).id,
                        t.square(beta).id},
                       "square has no preimage over this boundary");
            else if (hits > 1)
              rep.fail("db4", {s.square(first).id, s.square(second).id},
                       "two squares share an image");
          }
        }
      }
  return rep;
}

CheckReport is_whi(const FinDoubleCategory& d) {
  DblAnalysis da(d);
  CheckReport rep;
  rep.check = "whi";
  rep.subject = d.name();
  for (Idx a = 0; a < d.n_hmors(); ++a) {
    if (!da.is_equiv(a)) continue;
    for (Idx a2 = 0; a2 < d.n_hmors(); ++a2) {
      if (!da.is_equiv(a2)) continue;
      for (Idx w = 0; w < d.n_vmors(); ++w) {
        if (d.vmor(w).src != d.hmor(a).tgt || d.vmor(w).tgt != d.hmor(a2).tgt) continue;
        bool found = false;
        for (Idx u = 0; u < d.n_vmors() && !found; ++u) {
          if (d.vmor(u).src != d.hmor(a).src || d.vmor(u).tgt != d.hmor(a2).src) continue;
          Boundary bd{a, a2, u, w};
          for (Idx sq : d.squares_over(bd))
            if (da.whi_invertible(sq)) {
              found = true;
              break;
            }
        }
        if (!found)
          rep.fail("whi", {d.hmor(a).id, d.hmor(a2).id, d.vmor(w).id},
                   "no lifting vertical with weakly horizontally invertible square");
      }
    }
  }
  return rep;
}

CheckReport is_trivial_fibration(const DoubleFunctor& f) {
  const auto& s = *f.source;
  const auto& t = *f.target;
  CheckReport rep;
  rep.check = "trivfib";
  rep.subject = f.name;

  for (Idx b = 0; b < t.n_objects(); ++b) {
    bool hit = false;
    for (Idx a = 0; a < s.n_objects(); ++a)
      if (f.obj[a] == b) hit = true;
    if (!hit) rep.fail("tf-obj", {t.object(b)}, "object not in the image");
  }
  for (Idx a = 0; a < s.n_objects(); ++a)
    for (Idx c = 0; c < s.n_objects(); ++c)
      for (Idx b = 0; b < t.n_hmors(); ++b) {
        if (t.hmor(b).src != f.obj[a] || t.hmor(b).tgt != f.obj[c]) continue;
        bool hit = false;
        for (Idx m = 0; m < s.n_hmors(); ++m)
          if (s.hmor(m).src == a && s.hmor(m).tgt == c && f.hmor[m] == b) hit = true;
        if (!hit)
          rep.fail("tf-hmor", {s.object(a), s.object(c), t.hmor(b).id},
                   "horizontal morphism has no lift");
      }
  for (Idx a = 0; a < s.n_objects(); ++a)
    for (Idx c = 0; c < s.n_objects(); ++c)
      for (Idx b = 0; b < t.n_vmors(); ++b) {
        if (t.vmor(b).src != f.obj[a] || t.vmor(b).tgt != f.obj[c]) continue;
        bool hit = false;
        for (Idx m = 0; m < s.n_vmors(); ++m)
          if (s.vmor(m).src == a && s.vmor(m).tgt == c && f.vmor[m] == b) hit = true;
        if (!hit)
          rep.fail("tf-vmor", {s.object(a), s.object(c), t.vmor(b).id},
                   "vertical morphism has no lift");
      }
  for (Idx top = 0; top < s.n_hmors(); ++top)
    for (Idx bot = 0; bot < s.n_hmors(); ++bot)
      for (Idx l = 0; l < s.n_vmors(); ++l) {
        if (s.vmor(l).src != s.hmor(top).src || s.vmor(l).tgt != s.hmor(bot).src) continue;
        for (Idx r = 0; r < s.n_vmors(); ++r) {
          if (s.vmor(r).src != s.hmor(top).tgt || s.vmor(r).tgt != s.hmor(bot).tgt) continue;
          Boundary bd{top, bot, l, r};
          const auto& pre = s.squares_over(bd);
          const auto& post = t.squares_over(f.on_boundary(bd));
          for (Idx beta : post) {
            int hits = 0;
            for (Idx alpha : pre)
              if (f.sq[alpha] == beta) ++hits;
            if (hits != 1)
              rep.fail("tf-sq",
                       {s.hmor(top).id, s.hmor(bot).id, s.vmor(l).id, s.vmor(r).id,
                        t.square(beta).id},
                       hits == 0 ? "no preimage square" : "several preimage squares");
          }
        }
      }
  return rep;
}

CheckReport is_jw_injective(const DoubleFunctor& f) {
  const auto& s = *f.source;
  const auto& t = *f.target;
  DblAnalysis sa(s), ta(t);
  CheckReport rep;
  rep.check = "jwinj";
  rep.subject = f.name;

  // (df1) horizontal equivalences into image objects lift strictly.
  for (Idx c = 0; c < s.n_objects(); ++c)
    for (Idx b = 0; b < t.n_hmors(); ++b) {
      if (t.hmor(b).tgt != f.obj[c] || !ta.is_equiv(b)) continue;
      bool found = false;
      for (Idx a = 0; a < s.n_hmors() && !found; ++a)
        if (s.hmor(a).tgt == c && f.hmor[a] == b && sa.is_equiv(a)) found = true;
      if (!found)
        rep.fail("df1", {s.object(c), t.hmor(b).id},
                 "horizontal equivalence has no strict equivalence lift");
    }

  // (df2) vertically invertible squares onto an image horizontal morphism
  // lift strictly.
  for (Idx c = 0; c < s.n_hmors(); ++c) {
    Idx fa = f.obj[s.hmor(c).src], fc = f.obj[s.hmor(c).tgt];
    for (Idx b = 0; b < t.n_hmors(); ++b) {
      if (t.hmor(b).src != fa || t.hmor(b).tgt != fc) continue;
      Boundary tb{b, f.hmor[c], t.id_vmor(fa), t.id_vmor(fc)};
      for (Idx beta : t.squares_over(tb)) {
        if (!is_vertically_invertible(t, beta)) continue;
        bool found = false;
        for (Idx a = 0; a < s.n_hmors() && !found; ++a) {
          if (s.hmor(a).src != s.hmor(c).src || s.hmor(a).tgt != s.hmor(c).tgt) continue;
          Boundary sb{a, c, s.id_vmor(s.hmor(c).src), s.id_vmor(s.hmor(c).tgt)};
          for (Idx alpha : s.squares_over(sb))
            if (f.sq[alpha] == beta && is_vertically_invertible(s, alpha)) {
              found = true;
              break;
            }
        }
        if (!found)
          rep.fail("df2", {s.hmor(c).id, t.square(beta).id},
                   "vertically invertible square has no strict lift");
      }
    }
  }

  // (df3) weakly horizontally invertible squares over image equivalence
  // boundaries lift strictly.
  for (Idx a = 0; a < s.n_hmors(); ++a) {
    if (!sa.is_equiv(a)) continue;
    for (Idx a2 = 0; a2 < s.n_hmors(); ++a2) {
      if (!sa.is_equiv(a2)) continue;
      for (Idx w = 0; w < s.n_vmors(); ++w) {
        if (s.vmor(w).src != s.hmor(a).tgt || s.vmor(w).tgt != s.hmor(a2).tgt) continue;
        for (Idx v = 0; v < t.n_vmors(); ++v) {
          if (t.vmor(v).src != f.obj[s.hmor(a).src] || t.vmor(v).tgt != f.obj[s.hmor(a2).src])
            continue;
          Boundary tb{f.hmor[a], f.hmor[a2], v, f.vmor[w]};
          for (Idx beta : t.squares_over(tb)) {
            if (!ta.whi_invertible(beta)) continue;
            bool found = false;
            for (Idx u = 0; u < s.n_vmors() && !found; ++u) {
              if (s.vmor(u).src != s.hmor(a).src || s.vmor(u).tgt != s.hmor(a2).src) continue;
              Boundary sb{a, a2, u, w};
              for (Idx alpha : s.squares_over(sb))
                if (f.sq[alpha] == beta && sa.whi_invertible(alpha)) {
                  found = true;
                  break;
                }
            }
            if (!found)
              rep.fail("df3", {s.hmor(a).id, s.hmor(a2).id, s.vmor(w).id, t.square(beta).id},
                       "weakly horizontally invertible square has no strict lift");
          }
        }
      }
    }
  }
  return rep;
}

CheckReport is_cofibrant(const FinDoubleCategory& d) {
  CheckReport rep;
  rep.check = "cofibrant";
  rep.subject = d.name();
  auto h = is_free_category(underlying_horizontal_category(d));
  if (!h.free) rep.fail("cof-h", {h.counterexample}, h.reason);
  auto v = is_free_category(underlying_vertical_category(d));
  if (!v.free) rep.fail("cof-v", {v.counterexample}, v.reason);
  return rep;
}

CheckReport is_biequivalence_2(const TwoFunctor& f) {
  const auto& s = *f.source;
  const auto& t = *f.target;
  CheckReport rep;
  rep.check = "bieq2";
  rep.subject = f.name;

  for (Idx b = 0; b < t.n_objects(); ++b) {
    bool found = false;
    for (Idx h = 0; h < t.n_cells1() && !found; ++h) {
      if (t.cell1(h).src != b) continue;
      bool image_tgt = false;
      for (Idx a = 0; a < s.n_objects(); ++a)
        if (f.obj[a] == t.cell1(h).tgt) image_tgt = true;
      if (image_tgt && is_equivalence_2(t, h)) found = true;
    }
    if (!found) rep.fail("b1", {t.object(b)}, "no equivalence to an image object");
  }
  for (Idx a = 0; a < s.n_objects(); ++a)
    for (Idx c = 0; c < s.n_objects(); ++c)
      for (Idx b = 0; b < t.n_cells1(); ++b) {
        if (t.cell1(b).src != f.obj[a] || t.cell1(b).tgt != f.obj[c]) continue;
        bool found = false;
        for (Idx m = 0; m < s.n_cells1() && !found; ++m) {
          if (s.cell1(m).src != a || s.cell1(m).tgt != c) continue;
          for (Idx two : t.cells2_between(b, f.c1[m]))
            if (t.invertible2(two)) {
              found = true;
              break;
            }
        }
        if (!found)
          rep.fail("b2", {s.object(a), s.object(c), t.cell1(b).id},
                   "no essential lift of the 1-cell");
      }
  for (Idx x = 0; x < s.n_cells1(); ++x)
    for (Idx y = 0; y < s.n_cells1(); ++y) {
      if (s.cell1(x).src != s.cell1(y).src || s.cell1(x).tgt != s.cell1(y).tgt) continue;
      for (Idx beta : t.cells2_between(f.c1[x], f.c1[y])) {
        int hits = 0;
        for (Idx alpha : s.cells2_between(x, y))
          if (f.c2[alpha] == beta) ++hits;
        if (hits != 1)
          rep.fail("b3", {s.cell1(x).id, s.cell1(y).id, t.cell2(beta).id},
                   hits == 0 ? "2-cell has no preimage" : "2-cell has several preimages");
      }
    }
  return rep;
}

CheckReport is_lack_fibration(const TwoFunctor& f) {
  const auto& s = *f.source;
  const auto& t = *f.target;
  CheckReport rep;
  rep.check = "lackfib";
  rep.subject = f.name;

  for (Idx c = 0; c < s.n_objects(); ++c)
    for (Idx b = 0; b < t.n_cells1(); ++b) {
      if (t.cell1(b).tgt != f.obj[c] || !is_equivalence_2(t, b)) continue;
      bool found = false;
      for (Idx a = 0; a < s.n_cells1() && !found; ++a)
        if (s.cell1(a).tgt == c && f.c1[a] == b && is_equivalence_2(s, a)) found = true;
      if (!found)
        rep.fail("lf1", {s.object(c), t.cell1(b).id}, "equivalence has no strict lift");
    }
  for (Idx c = 0; c < s.n_cells1(); ++c)
    for (Idx b = 0; b < t.n_cells1(); ++b) {
      if (t.cell1(b).src != f.obj[s.cell1(c).src] || t.cell1(b).tgt != f.obj[s.cell1(c).tgt])
        continue;
      for (Idx beta : t.cells2_between(b, f.c1[c])) {
        if (!t.invertible2(beta)) continue;
        bool found = false;
        for (Idx a = 0; a < s.n_cells1() && !found; ++a) {
          if (s.cell1(a).src != s.cell1(c).src || s.cell1(a).tgt != s.cell1(c).tgt) continue;
          for (Idx alpha : s.cells2_between(a, c))
            if (f.c2[alpha] == beta && s.invertible2(alpha)) {
              found = true;
              break;
            }
        }
        if (!found)
          rep.fail("lf2", {s.cell1(c).id, t.cell2(beta).id},
                   "invertible 2-cell has no strict lift");
      }
    }
  return rep;
}

CheckReport is_weak_equivalence_whi_source(const DoubleFunctor& f) {
  auto src_whi = is_whi(*f.source);
  if (!src_whi.verdict)
    throw Error(ErrorCode::SourceNotWhi,
                "source '" + f.source->name() + "' is not weakly horizontally invariant");
  auto rep = is_double_biequivalence(f);
  rep.check = "weq";
  rep.flags.push_back("Exact");
  return rep;
}

RelativeFreenessReport is_relatively_free(const FinCategory& src, const FinCategory& tgt,
                                          const std::vector<Idx>& mor_map,
                                          const std::vector<Idx>& obj_map) {
  RelativeFreenessReport rep;
  // injectivity on objects, faithfulness
  {
    std::set<Idx> seen;
    for (Idx o : obj_map)
      if (!seen.insert(o).second) {
        rep.reason = "not injective on objects";
        rep.counterexample = tgt.objects[o];
        return rep;
      }
  }
  for (size_t i = 0; i < mor_map.size(); ++i)
    for (size_t j = i + 1; j < mor_map.size(); ++j)
      if (mor_map[i] == mor_map[j] && src.mors[i].src == src.mors[j].src &&
          src.mors[i].tgt == src.mors[j].tgt) {
        rep.reason = "not faithful";
        rep.counterexample = tgt.mors[mor_map[i]].id;
        return rep;
      }

  std::vector<bool> in_image(tgt.mors.size(), false);
  for (Idx m : mor_map) in_image[m] = true;

  // Letters are non-identity image morphisms and added generators; a normal
  // word never has two adjacent image letters. Grow the generator set
  // greedily by word length and check the evaluation map is a bijection onto
  // the non-identity, non-image morphisms plus the image ones.
  struct Path {
    Idx value;
    bool last_image;
    int length;
  };
  std::vector<Idx> gens;
  std::map<Idx, int> factorizations;  // value -> count of normal words
  auto run = [&]() -> std::optional<std::string> {
    factorizations.clear();
    std::deque<Path> frontier;
    for (Idx m = 0; m < static_cast<Idx>(tgt.mors.size()); ++m) {
      if (tgt.mors[m].is_id) continue;
      if (in_image[m]) {
        factorizations[m] += 1;
        frontier.push_back({m, true, 1});
      }
    }
    for (Idx g : gens) {
      factorizations[g] += 1;
      frontier.push_back({g, false, 1});
    }
    size_t limit = tgt.mors.size() + 1;
    while (!frontier.empty()) {
      Path p = frontier.front();
      frontier.pop_front();
      if (p.length > static_cast<int>(limit)) break;
      for (Idx m = 0; m < static_cast<Idx>(tgt.mors.size()); ++m) {
        if (tgt.mors[m].is_id || !tgt.composable(p.value, m)) continue;
        bool image_letter = in_image[m];
        bool is_gen = std::find(gens.begin(), gens.end(), m) != gens.end();
        if (image_letter) {
          if (p.last_image) continue;  // adjacent image letters must compose
        } else if (!is_gen) {
          continue;
        }
        Idx val = tgt.compose(p.value, m);
        if (tgt.mors[val].is_id)
          return "a generator word evaluates to the identity '" + tgt.mors[val].id + "'";
        factorizations[val] += 1;
        if (factorizations[val] > 1)
          return "morphism '" + tgt.mors[val].id + "' has two factorizations";
        frontier.push_back({val, image_letter, p.length + 1});
      }
    }
    return std::nullopt;
  };

  for (;;) {
    auto fail = run();
    if (fail) {
      rep.reason = *fail;
      return rep;
    }
    Idx missing = kNone;
    for (Idx m = 0; m < static_cast<Idx>(tgt.mors.size()); ++m)
      if (!tgt.mors[m].is_id && !factorizations.count(m)) {
        missing = m;
        break;
      }
    if (missing == kNone) break;
    gens.push_back(missing);  // relatively indecomposable, in canonical order
  }
  rep.free = true;
  for (Idx g : gens) rep.added_generators.push_back(tgt.mors[g].id);
  return rep;
}

CheckReport is_relative_cofibration_best_effort(const DoubleFunctor& f) {
  CheckReport rep;
  rep.check = "relcof";
  rep.subject = f.name;
  auto sh = underlying_horizontal_category(*f.source);
  auto th = underlying_horizontal_category(*f.target);
  auto h = is_relatively_free(sh, th, f.hmor, f.obj);
  if (!h.free) rep.fail("relcof-h", {h.counterexample}, h.reason);
  auto sv = underlying_vertical_category(*f.source);
  auto tv = underlying_vertical_category(*f.target);
  auto v = is_relatively_free(sv, tv, f.vmor, f.obj);
  if (!v.free) rep.fail("relcof-v", {v.counterexample}, v.reason);
  return rep;
}

// ---------------------------------------------------------------------------
// Functor enumeration and the lifting oracle.

bool enumerate_double_functors(const FinDoubleCategory& src, const FinDoubleCategory& tgt,
                               const EnumerationPins& pins,
                               const std::function<bool(const IndexMaps&)>& cb) {
  IndexMaps m;
  m.obj.assign(src.n_objects(), kNone);
  m.hmor.assign(src.n_hmors(), kNone);
  m.vmor.assign(src.n_vmors(), kNone);
  m.sq.assign(src.n_squares(), kNone);

  auto pinned = [&](const std::vector<Idx>& v, Idx i) {
    return i < static_cast<Idx>(v.size()) ? v[i] : kNone;
  };
  auto pass_filter = [&](char sort, Idx i, Idx c) {
    return !pins.filter || pins.filter(sort, i, c);
  };

  // Stage checks: verify every equation whose operands are already assigned.
  auto hmors_ok = [&](Idx upto) {
    for (Idx a = 0; a <= upto; ++a) {
      const auto& fm = tgt.hmor(m.hmor[a]);
      if (fm.src != m.obj[src.hmor(a).src] || fm.tgt != m.obj[src.hmor(a).tgt]) return false;
      if (src.hmor(a).is_id && !fm.is_id) return false;
      for (Idx b = 0; b <= upto; ++b)
        if (src.hcomposable(a, b)) {
          Idx r = src.hcomp(a, b);
          if (r <= upto && m.hmor[r] != tgt.hcomp(m.hmor[a], m.hmor[b])) return false;
        }
    }
    return true;
  };
  auto vmors_ok = [&](Idx upto) {
    for (Idx a = 0; a <= upto; ++a) {
      const auto& fm = tgt.vmor(m.vmor[a]);
      if (fm.src != m.obj[src.vmor(a).src] || fm.tgt != m.obj[src.vmor(a).tgt]) return false;
      if (src.vmor(a).is_id && !fm.is_id) return false;
      for (Idx b = 0; b <= upto; ++b)
        if (src.vcomposable(a, b)) {
          Idx r = src.vcomp(a, b);
          if (r <= upto && m.vmor[r] != tgt.vcomp(m.vmor[a], m.vmor[b])) return false;
        }
    }
    return true;
  };

  std::function<bool(Idx)> go_sq = [&](Idx i) -> bool {
    if (i == src.n_squares()) return cb(m);
    Boundary want{m.hmor[src.square(i).bd.top], m.hmor[src.square(i).bd.bottom],
                  m.vmor[src.square(i).bd.left], m.vmor[src.square(i).bd.right]};
    std::vector<Idx> cands;
    if (Idx p = pinned(pins.sq, i); p != kNone) {
      cands = {p};
    } else if (src.e_square(src.square(i).bd.top) == i) {
      cands = {tgt.e_square(want.top)};
    } else if (src.id_square(src.square(i).bd.left) == i) {
      cands = {tgt.id_square(want.left)};
    } else {
      cands = tgt.squares_over(want);
    }
    for (Idx c : cands) {
      if (tgt.square(c).bd != want || !pass_filter('s', i, c)) continue;
      m.sq[i] = c;
      bool ok = true;
      for (Idx j = 0; j <= i && ok; ++j) {
        auto chk = [&](Idx x, Idx y) {
          if (src.sq_hcomposable(x, y)) {
            Idx r = src.sq_hcomp(x, y);
            if (r <= i && m.sq[r] != tgt.sq_hcomp(m.sq[x], m.sq[y])) return false;
          }
          if (src.sq_vcomposable(x, y)) {
            Idx r = src.sq_vcomp(x, y);
            if (r <= i && m.sq[r] != tgt.sq_vcomp(m.sq[x], m.sq[y])) return false;
          }
          return true;
        };
        ok = chk(i, j) && chk(j, i);
      }
      if (ok && go_sq(i + 1)) return true;
      m.sq[i] = kNone;
    }
    return false;
  };

  std::function<bool(Idx)> go_vmor = [&](Idx i) -> bool {
    if (i == src.n_vmors()) return go_sq(0);
    std::vector<Idx> cands;
    if (Idx p = pinned(pins.vmor, i); p != kNone) cands = {p};
    else if (src.vmor(i).is_id) cands = {tgt.id_vmor(m.obj[src.vmor(i).src])};
    else {
      for (Idx c = 0; c < tgt.n_vmors(); ++c)
        if (tgt.vmor(c).src == m.obj[src.vmor(i).src] &&
            tgt.vmor(c).tgt == m.obj[src.vmor(i).tgt])
          cands.push_back(c);
    }
    for (Idx c : cands) {
      if (!pass_filter('v', i, c)) continue;
      m.vmor[i] = c;
      if (vmors_ok(i) && go_vmor(i + 1)) return true;
      m.vmor[i] = kNone;
    }
    return false;
  };

  std::function<bool(Idx)> go_hmor = [&](Idx i) -> bool {
    if (i == src.n_hmors()) return go_vmor(0);
    std::vector<Idx> cands;
    if (Idx p = pinned(pins.hmor, i); p != kNone) cands = {p};
    else if (src.hmor(i).is_id) cands = {tgt.id_hmor(m.obj[src.hmor(i).src])};
    else {
      for (Idx c = 0; c < tgt.n_hmors(); ++c)
        if (tgt.hmor(c).src == m.obj[src.hmor(i).src] &&
            tgt.hmor(c).tgt == m.obj[src.hmor(i).tgt])
          cands.push_back(c);
    }
    for (Idx c : cands) {
      if (!pass_filter('h', i, c)) continue;
      m.hmor[i] = c;
      if (hmors_ok(i) && go_hmor(i + 1)) return true;
      m.hmor[i] = kNone;
    }
    return false;
  };

  std::function<bool(Idx)> go_obj = [&](Idx i) -> bool {
    if (i == src.n_objects()) return go_hmor(0);
    std::vector<Idx> cands;
    if (Idx p = pinned(pins.obj, i); p != kNone) cands = {p};
    else
      for (Idx c = 0; c < tgt.n_objects(); ++c) cands.push_back(c);
    for (Idx c : cands) {
      if (!pass_filter('o', i, c)) continue;
      m.obj[i] = c;
      if (go_obj(i + 1)) return true;
      m.obj[i] = kNone;
    }
    return false;
  };

  return go_obj(0);
}

namespace {

// Full (non-incremental) functoriality check of complete index maps; the
// enumerator prunes with partial checks, this closes the remaining gaps
// (composites whose result index is larger than both operands).
bool maps_are_functorial(const FinDoubleCategory& s, const FinDoubleCategory& t,
                         const IndexMaps& m) {
  for (Idx a = 0; a < s.n_hmors(); ++a)
    for (Idx b = 0; b < s.n_hmors(); ++b)
      if (s.hcomposable(a, b) && m.hmor[s.hcomp(a, b)] != t.hcomp(m.hmor[a], m.hmor[b]))
        return false;
  for (Idx a = 0; a < s.n_vmors(); ++a)
    for (Idx b = 0; b < s.n_vmors(); ++b)
      if (s.vcomposable(a, b) && m.vmor[s.vcomp(a, b)] != t.vcomp(m.vmor[a], m.vmor[b]))
        return false;
  for (Idx a = 0; a < s.n_squares(); ++a)
    for (Idx b = 0; b < s.n_squares(); ++b) {
      if (s.sq_hcomposable(a, b) && m.sq[s.sq_hcomp(a, b)] != t.sq_hcomp(m.sq[a], m.sq[b]))
        return false;
      if (s.sq_vcomposable(a, b) && m.sq[s.sq_vcomp(a, b)] != t.sq_vcomp(m.sq[a], m.sq[b]))
        return false;
    }
  for (Idx a = 0; a < s.n_hmors(); ++a)
    if (m.sq[s.e_square(a)] != t.e_square(m.hmor[a])) return false;
  for (Idx u = 0; u < s.n_vmors(); ++u)
    if (m.sq[s.id_square(u)] != t.id_square(m.vmor[u])) return false;
  return true;
}

}  // namespace

bool rlp_oracle(const DoubleFunctor& f, const DoubleFunctor& i) {
  const auto& c = *i.source;
  const auto& d = *i.target;
  const auto& a = *f.source;
  const auto& b = *f.target;

  bool all_lift = true;
  enumerate_double_functors(c, a, {}, [&](const IndexMaps& top) {
    if (!maps_are_functorial(c, a, top)) return false;
    // Bottom functors D -> B agreeing with f.top on the image of i.
    EnumerationPins bpins;
    bpins.obj.assign(d.n_objects(), kNone);
    bpins.hmor.assign(d.n_hmors(), kNone);
    bpins.vmor.assign(d.n_vmors(), kNone);
    bpins.sq.assign(d.n_squares(), kNone);
    for (Idx x = 0; x < c.n_objects(); ++x) {
      Idx want = f.obj[top.obj[x]];
      Idx slot = i.obj[x];
      if (bpins.obj[slot] != kNone && bpins.obj[slot] != want) return false;
      bpins.obj[slot] = want;
    }
    for (Idx x = 0; x < c.n_hmors(); ++x) {
      Idx want = f.hmor[top.hmor[x]];
      Idx slot = i.hmor[x];
      if (bpins.hmor[slot] != kNone && bpins.hmor[slot] != want) return false;
      bpins.hmor[slot] = want;
    }
    for (Idx x = 0; x < c.n_vmors(); ++x) {
      Idx want = f.vmor[top.vmor[x]];
      Idx slot = i.vmor[x];
      if (bpins.vmor[slot] != kNone && bpins.vmor[slot] != want) return false;
      bpins.vmor[slot] = want;
    }
    for (Idx x = 0; x < c.n_squares(); ++x) {
      Idx want = f.sq[top.sq[x]];
      Idx slot = i.sq[x];
      if (bpins.sq[slot] != kNone && bpins.sq[slot] != want) return false;
      bpins.sq[slot] = want;
    }
    enumerate_double_functors(d, b, bpins, [&](const IndexMaps& bottom) {
      if (!maps_are_functorial(d, b, bottom)) return false;
      // Search a lift L : D -> A with L.i = top and f.L = bottom. If i
      // identifies cells that top separates, no lift can exist.
      EnumerationPins lpins;
      lpins.obj.assign(d.n_objects(), kNone);
      lpins.hmor.assign(d.n_hmors(), kNone);
      lpins.vmor.assign(d.n_vmors(), kNone);
      lpins.sq.assign(d.n_squares(), kNone);
      bool consistent = true;
      auto pin = [&](std::vector<Idx>& slots, Idx slot, Idx want) {
        if (slots[slot] != kNone && slots[slot] != want) consistent = false;
        slots[slot] = want;
      };
      for (Idx x = 0; x < c.n_objects(); ++x) pin(lpins.obj, i.obj[x], top.obj[x]);
      for (Idx x = 0; x < c.n_hmors(); ++x) pin(lpins.hmor, i.hmor[x], top.hmor[x]);
      for (Idx x = 0; x < c.n_vmors(); ++x) pin(lpins.vmor, i.vmor[x], top.vmor[x]);
      for (Idx x = 0; x < c.n_squares(); ++x) pin(lpins.sq, i.sq[x], top.sq[x]);
      if (!consistent) {
        all_lift = false;
        return true;
      }
      lpins.filter = [&](char sort, Idx sc, Idx tc) {
        switch (sort) {
          case 'o': return f.obj[tc] == bottom.obj[sc];
          case 'h': return f.hmor[tc] == bottom.hmor[sc];
          case 'v': return f.vmor[tc] == bottom.vmor[sc];
          default: return f.sq[tc] == bottom.sq[sc];
        }
      };
      bool lifted = enumerate_double_functors(
          d, a, lpins, [&](const IndexMaps& l) { return maps_are_functorial(d, a, l); });
      if (!lifted) {
        all_lift = false;
        return true;  // stop: found a square with no lift
      }
      return false;
    });
    return !all_lift;  // stop outer enumeration once a failure is known
  });
  return all_lift;
}

}  // namespace dbl

#include "dblcat/functors.hpp"

#include <algorithm>
#include <functional>

namespace dbl {

namespace {

void functor_check(bool ok, const std::string& equation, std::vector<std::string> witness) {
  if (!ok) throw Error(ErrorCode::NotAFunctor, equation, std::move(witness));
}

Idx resolve(const std::map<std::string, std::string>& m, const std::string& id,
            const std::function<Idx(std::string_view)>& index, const char* sort) {
  auto it = m.find(id);
  if (it == m.end())
    throw Error(ErrorCode::NotAFunctor, std::string("map is not total on ") + sort + "s",
                {id});
  Idx r = index(it->second);
  if (r == kNone)
    throw Error(ErrorCode::NotAFunctor,
                std::string(sort) + " image '" + it->second + "' does not exist", {id});
  return r;
}

}  // namespace

bool same_category(const FinDoubleCategory& a, const FinDoubleCategory& b) {
  if (&a == &b) return true;
  auto pa = a.presentation();
  auto pb = b.presentation();
  return pa.objects == pb.objects && pa.hmors == pb.hmors && pa.vmors == pb.vmors &&
         pa.squares == pb.squares && pa.hcomp == pb.hcomp && pa.vcomp == pb.vcomp &&
         pa.sq_hcomp == pb.sq_hcomp && pa.sq_vcomp == pb.sq_vcomp &&
         pa.e_squares == pb.e_squares && pa.id_squares == pb.id_squares;
}

bool same_category(const FinTwoCategory& a, const FinTwoCategory& b) {
  if (&a == &b) return true;
  auto pa = a.presentation();
  auto pb = b.presentation();
  return pa.objects == pb.objects && pa.cells1 == pb.cells1 && pa.cells2 == pb.cells2 &&
         pa.comp1 == pb.comp1 && pa.vcomp2 == pb.vcomp2 && pa.hcomp2 == pb.hcomp2 &&
         pa.id2 == pb.id2;
}

DoubleFunctor validate_double_functor(DblPtr src, DblPtr tgt, const RawMaps& maps,
                                      std::string name) {
  DoubleFunctor f;
  f.name = std::move(name);
  f.source = std::move(src);
  f.target = std::move(tgt);
  const auto& s = *f.source;
  const auto& t = *f.target;

  f.obj.resize(s.n_objects());
  for (Idx i = 0; i < s.n_objects(); ++i)
    f.obj[i] = resolve(maps.objects, s.object(i),
                       [&](std::string_view id) { return t.object_index(id); }, "object");
  f.hmor.resize(s.n_hmors());
  for (Idx i = 0; i < s.n_hmors(); ++i)
    f.hmor[i] = resolve(maps.hmors, s.hmor(i).id,
                        [&](std::string_view id) { return t.hmor_index(id); }, "hmor");
  f.vmor.resize(s.n_vmors());
  for (Idx i = 0; i < s.n_vmors(); ++i)
    f.vmor[i] = resolve(maps.vmors, s.vmor(i).id,
                        [&](std::string_view id) { return t.vmor_index(id); }, "vmor");
  f.sq.resize(s.n_squares());
  for (Idx i = 0; i < s.n_squares(); ++i)
    f.sq[i] = resolve(maps.squares, s.square(i).id,
                      [&](std::string_view id) { return t.square_index(id); }, "square");

  for (Idx i = 0; i < s.n_hmors(); ++i) {
    const auto& m = s.hmor(i);
    const auto& fm = t.hmor(f.hmor[i]);
    functor_check(fm.src == f.obj[m.src] && fm.tgt == f.obj[m.tgt],
                  "F does not preserve hmor endpoints", {m.id});
  }
  for (Idx i = 0; i < s.n_vmors(); ++i) {
    const auto& m = s.vmor(i);
    const auto& fm = t.vmor(f.vmor[i]);
    functor_check(fm.src == f.obj[m.src] && fm.tgt == f.obj[m.tgt],
                  "F does not preserve vmor endpoints", {m.id});
  }
  for (Idx o = 0; o < s.n_objects(); ++o) {
    functor_check(f.hmor[s.id_hmor(o)] == t.id_hmor(f.obj[o]),
                  "F does not preserve identity hmors", {s.object(o)});
    functor_check(f.vmor[s.id_vmor(o)] == t.id_vmor(f.obj[o]),
                  "F does not preserve identity vmors", {s.object(o)});
  }
  for (Idx i = 0; i < s.n_squares(); ++i) {
    functor_check(t.square(f.sq[i]).bd == f.on_boundary(s.square(i).bd),
                  "F does not preserve square boundaries", {s.square(i).id});
  }
  for (Idx a = 0; a < s.n_hmors(); ++a)
    for (Idx b = 0; b < s.n_hmors(); ++b)
      if (s.hcomposable(a, b))
        functor_check(f.hmor[s.hcomp(a, b)] == t.hcomp(f.hmor[a], f.hmor[b]),
                      "F does not preserve hcomp", {s.hmor(a).id, s.hmor(b).id});
  for (Idx a = 0; a < s.n_vmors(); ++a)
    for (Idx b = 0; b < s.n_vmors(); ++b)
      if (s.vcomposable(a, b))
        functor_check(f.vmor[s.vcomp(a, b)] == t.vcomp(f.vmor[a], f.vmor[b]),
                      "F does not preserve vcomp", {s.vmor(a).id, s.vmor(b).id});
  for (Idx a = 0; a < s.n_squares(); ++a)
    for (Idx b = 0; b < s.n_squares(); ++b) {
      if (s.sq_hcomposable(a, b))
        functor_check(f.sq[s.sq_hcomp(a, b)] == t.sq_hcomp(f.sq[a], f.sq[b]),
                      "F does not preserve sq_hcomp", {s.square(a).id, s.square(b).id});
      if (s.sq_vcomposable(a, b))
        functor_check(f.sq[s.sq_vcomp(a, b)] == t.sq_vcomp(f.sq[a], f.sq[b]),
                      "F does not preserve sq_vcomp", {s.square(a).id, s.square(b).id});
    }
  for (Idx a = 0; a < s.n_hmors(); ++a)
    functor_check(f.sq[s.e_square(a)] == t.e_square(f.hmor[a]),
                  "F does not preserve e squares", {s.hmor(a).id});
  for (Idx u = 0; u < s.n_vmors(); ++u)
    functor_check(f.sq[s.id_square(u)] == t.id_square(f.vmor[u]),
                  "F does not preserve id squares", {s.vmor(u).id});
  return f;
}

DoubleFunctor identity_functor(DblPtr d) {
  DoubleFunctor f;
  f.name = "id_" + d->name();
  f.source = d;
  f.target = d;
  f.obj.resize(d->n_objects());
  f.hmor.resize(d->n_hmors());
  f.vmor.resize(d->n_vmors());
  f.sq.resize(d->n_squares());
  for (Idx i = 0; i < d->n_objects(); ++i) f.obj[i] = i;
  for (Idx i = 0; i < d->n_hmors(); ++i) f.hmor[i] = i;
  for (Idx i = 0; i < d->n_vmors(); ++i) f.vmor[i] = i;
  for (Idx i = 0; i < d->n_squares(); ++i) f.sq[i] = i;
  return f;
}

DoubleFunctor compose(const DoubleFunctor& f, const DoubleFunctor& g) {
  if (!same_category(*f.target, *g.source))
    throw Error(ErrorCode::Mismatch, "target of '" + f.name + "' is not the source of '" +
                                         g.name + "'");
  DoubleFunctor h;
  h.name = g.name + "." + f.name;
  h.source = f.source;
  h.target = g.target;
  h.obj.resize(f.obj.size());
  h.hmor.resize(f.hmor.size());
  h.vmor.resize(f.vmor.size());
  h.sq.resize(f.sq.size());
  for (size_t i = 0; i < f.obj.size(); ++i) h.obj[i] = g.obj[f.obj[i]];
  for (size_t i = 0; i < f.hmor.size(); ++i) h.hmor[i] = g.hmor[f.hmor[i]];
  for (size_t i = 0; i < f.vmor.size(); ++i) h.vmor[i] = g.vmor[f.vmor[i]];
  for (size_t i = 0; i < f.sq.size(); ++i) h.sq[i] = g.sq[f.sq[i]];
  return h;
}

DoubleFunctor collapse_to_terminal(DblPtr d, DblPtr terminal) {
  if (terminal->n_objects() != 1 || terminal->n_hmors() != 1 || terminal->n_vmors() != 1 ||
      terminal->n_squares() != 1)
    throw Error(ErrorCode::Mismatch, "target is not terminal");
  DoubleFunctor f;
  f.name = d->name() + "->1";
  f.source = std::move(d);
  f.target = std::move(terminal);
  f.obj.assign(f.source->n_objects(), 0);
  f.hmor.assign(f.source->n_hmors(), 0);
  f.vmor.assign(f.source->n_vmors(), 0);
  f.sq.assign(f.source->n_squares(), 0);
  return f;
}

DoubleFunctor inclusion_functor(DblPtr sub, DblPtr whole, std::string name) {
  RawMaps maps;
  for (Idx o = 0; o < sub->n_objects(); ++o) maps.objects[sub->object(o)] = sub->object(o);
  for (Idx i = 0; i < sub->n_hmors(); ++i) maps.hmors[sub->hmor(i).id] = sub->hmor(i).id;
  for (Idx i = 0; i < sub->n_vmors(); ++i) maps.vmors[sub->vmor(i).id] = sub->vmor(i).id;
  for (Idx i = 0; i < sub->n_squares(); ++i)
    maps.squares[sub->square(i).id] = sub->square(i).id;
  return validate_double_functor(std::move(sub), std::move(whole), maps, std::move(name));
}

namespace {
// Splits "(x|y)" produced by the product construction at the top-level bar.
std::pair<std::string, std::string> split_pair_id(const std::string& id) {
  if (id.size() < 2 || id.front() != '(' || id.back() != ')')
    throw Error(ErrorCode::Mismatch, "not a product cell id: '" + id + "'");
  int depth = 0;
  for (size_t i = 1; i + 1 < id.size(); ++i) {
    if (id[i] == '(') ++depth;
    else if (id[i] == ')') --depth;
    else if (id[i] == '|' && depth == 0)
      return {id.substr(1, i - 1), id.substr(i + 1, id.size() - i - 2)};
  }
  throw Error(ErrorCode::Mismatch, "not a product cell id: '" + id + "'");
}
}  // namespace

DoubleFunctor product_projection(DblPtr prod, DblPtr factor, bool first) {
  RawMaps maps;
  auto pick = [&](const std::string& id) {
    auto [a, b] = split_pair_id(id);
    return first ? a : b;
  };
  for (Idx o = 0; o < prod->n_objects(); ++o) maps.objects[prod->object(o)] = pick(prod->object(o));
  for (Idx i = 0; i < prod->n_hmors(); ++i) maps.hmors[prod->hmor(i).id] = pick(prod->hmor(i).id);
  for (Idx i = 0; i < prod->n_vmors(); ++i) maps.vmors[prod->vmor(i).id] = pick(prod->vmor(i).id);
  for (Idx i = 0; i < prod->n_squares(); ++i)
    maps.squares[prod->square(i).id] = pick(prod->square(i).id);
  return validate_double_functor(std::move(prod), std::move(factor), maps,
                                 first ? "pr1" : "pr2");
}

TwoFunctor validate_two_functor(TwoPtr src, TwoPtr tgt, const RawTwoMaps& maps,
                                std::string name) {
  TwoFunctor f;
  f.name = std::move(name);
  f.source = std::move(src);
  f.target = std::move(tgt);
  const auto& s = *f.source;
  const auto& t = *f.target;

  f.obj.resize(s.n_objects());
  for (Idx i = 0; i < s.n_objects(); ++i)
    f.obj[i] = resolve(maps.objects, s.object(i),
                       [&](std::string_view id) { return t.object_index(id); }, "object");
  f.c1.resize(s.n_cells1());
  for (Idx i = 0; i < s.n_cells1(); ++i)
    f.c1[i] = resolve(maps.cells1, s.cell1(i).id,
                      [&](std::string_view id) { return t.cell1_index(id); }, "1-cell");
  f.c2.resize(s.n_cells2());
  for (Idx i = 0; i < s.n_cells2(); ++i)
    f.c2[i] = resolve(maps.cells2, s.cell2(i).id,
                      [&](std::string_view id) { return t.cell2_index(id); }, "2-cell");

  for (Idx i = 0; i < s.n_cells1(); ++i) {
    const auto& m = s.cell1(i);
    const auto& fm = t.cell1(f.c1[i]);
    functor_check(fm.src == f.obj[m.src] && fm.tgt == f.obj[m.tgt],
                  "F does not preserve 1-cell endpoints", {m.id});
  }
  for (Idx o = 0; o < s.n_objects(); ++o)
    functor_check(f.c1[s.id1(o)] == t.id1(f.obj[o]), "F does not preserve identity 1-cells",
                  {s.object(o)});
  for (Idx i = 0; i < s.n_cells2(); ++i) {
    const auto& m = s.cell2(i);
    const auto& fm = t.cell2(f.c2[i]);
    functor_check(fm.src == f.c1[m.src] && fm.tgt == f.c1[m.tgt],
                  "F does not preserve 2-cell boundaries", {m.id});
  }
  for (Idx i = 0; i < s.n_cells1(); ++i)
    functor_check(f.c2[s.id2(i)] == t.id2(f.c1[i]), "F does not preserve identity 2-cells",
                  {s.cell1(i).id});
  for (Idx a = 0; a < s.n_cells1(); ++a)
    for (Idx b = 0; b < s.n_cells1(); ++b)
      if (s.composable1(a, b))
        functor_check(f.c1[s.comp1(a, b)] == t.comp1(f.c1[a], f.c1[b]),
                      "F does not preserve comp1", {s.cell1(a).id, s.cell1(b).id});
  for (Idx a = 0; a < s.n_cells2(); ++a)
    for (Idx b = 0; b < s.n_cells2(); ++b) {
      if (s.vcomposable2(a, b))
        functor_check(f.c2[s.vcomp2(a, b)] == t.vcomp2(f.c2[a], f.c2[b]),
                      "F does not preserve vcomp2", {s.cell2(a).id, s.cell2(b).id});
      if (s.hcomposable2(a, b))
        functor_check(f.c2[s.hcomp2(a, b)] == t.hcomp2(f.c2[a], f.c2[b]),
                      "F does not preserve hcomp2", {s.cell2(a).id, s.cell2(b).id});
    }
  return f;
}

TwoFunctor identity_two_functor(TwoPtr c) {
  TwoFunctor f;
  f.name = "id_" + c->name();
  f.source = c;
  f.target = c;
  f.obj.resize(c->n_objects());
  f.c1.resize(c->n_cells1());
  f.c2.resize(c->n_cells2());
  for (Idx i = 0; i < c->n_objects(); ++i) f.obj[i] = i;
  for (Idx i = 0; i < c->n_cells1(); ++i) f.c1[i] = i;
  for (Idx i = 0; i < c->n_cells2(); ++i) f.c2[i] = i;
  return f;
}

TwoFunctor compose(const TwoFunctor& f, const TwoFunctor& g) {
  if (!same_category(*f.target, *g.source))
    throw Error(ErrorCode::Mismatch, "target of '" + f.name + "' is not the source of '" +
                                         g.name + "'");
  TwoFunctor h;
  h.name = g.name + "." + f.name;
  h.source = f.source;
  h.target = g.target;
  h.obj.resize(f.obj.size());
  h.c1.resize(f.c1.size());
  h.c2.resize(f.c2.size());
  for (size_t i = 0; i < f.obj.size(); ++i) h.obj[i] = g.obj[f.obj[i]];
  for (size_t i = 0; i < f.c1.size(); ++i) h.c1[i] = g.c1[f.c1[i]];
  for (size_t i = 0; i < f.c2.size(); ++i) h.c2[i] = g.c2[f.c2[i]];
  return h;
}

// ---------------------------------------------------------------------------
// Embeddings.

namespace {
std::string idv_name(const std::string& obj) { return "v:" + obj; }
}  // namespace

FinDoubleCategory h_embed(const FinTwoCategory& a) {
  DblPresentation p;
  p.name = "H" + a.name();
  for (Idx o = 0; o < a.n_objects(); ++o) p.objects.push_back(a.object(o));
  for (Idx i = 0; i < a.n_cells1(); ++i) {
    const auto& m = a.cell1(i);
    p.hmors.push_back({m.id, a.object(m.src), a.object(m.tgt), m.is_id});
  }
  for (Idx o = 0; o < a.n_objects(); ++o)
    p.vmors.push_back({idv_name(a.object(o)), a.object(o), a.object(o), true});
  for (Idx i = 0; i < a.n_cells2(); ++i) {
    const auto& m = a.cell2(i);
    p.squares.push_back({m.id, a.cell1(m.src).id, a.cell1(m.tgt).id,
                         idv_name(a.object(a.cell1(m.src).src)),
                         idv_name(a.object(a.cell1(m.src).tgt))});
  }
  for (Idx f = 0; f < a.n_cells1(); ++f)
    for (Idx g = 0; g < a.n_cells1(); ++g)
      if (a.composable1(f, g))
        p.hcomp.push_back({a.cell1(f).id, a.cell1(g).id, a.cell1(a.comp1(f, g)).id});
  for (Idx s = 0; s < a.n_cells2(); ++s)
    for (Idx t = 0; t < a.n_cells2(); ++t) {
      if (a.vcomposable2(s, t))
        p.sq_vcomp.push_back({a.cell2(s).id, a.cell2(t).id, a.cell2(a.vcomp2(s, t)).id});
      if (a.hcomposable2(s, t))
        p.sq_hcomp.push_back({a.cell2(s).id, a.cell2(t).id, a.cell2(a.hcomp2(s, t)).id});
    }
  for (Idx f = 0; f < a.n_cells1(); ++f)
    p.e_squares.push_back({a.cell1(f).id, a.cell2(a.id2(f)).id});
  for (Idx o = 0; o < a.n_objects(); ++o)
    p.id_squares.push_back({idv_name(a.object(o)), a.cell2(a.id2(a.id1(o))).id});
  return validate_double_category(p);
}

FinDoubleCategory v_embed(const FinTwoCategory& a) {
  auto t = transpose(h_embed(a));
  auto p = t.presentation();
  p.name = "V" + a.name();
  return validate_double_category(p);
}

// ---------------------------------------------------------------------------
// Adjoint equivalences and H~.

bool is_adjoint_equivalence(const FinTwoCategory& a, const AdjEquiv& e) {
  const auto& u = a.cell1(e.u);
  const auto& us = a.cell1(e.usharp);
  if (us.src != u.tgt || us.tgt != u.src) return false;
  const auto& eta = a.cell2(e.eta);
  const auto& eps = a.cell2(e.eps);
  if (eta.src != a.id1(u.src) || eta.tgt != a.comp1(e.u, e.usharp)) return false;
  if (eps.src != a.comp1(e.usharp, e.u) || eps.tgt != a.id1(u.tgt)) return false;
  if (!a.invertible2(e.eta) || !a.invertible2(e.eps)) return false;
  // Triangle identities.
  Idx t1 = a.vcomp2(a.hcomp2(e.eta, a.id2(e.u)), a.hcomp2(a.id2(e.u), e.eps));
  if (t1 != a.id2(e.u)) return false;
  Idx t2 = a.vcomp2(a.hcomp2(a.id2(e.usharp), e.eta), a.hcomp2(e.eps, a.id2(e.usharp)));
  return t2 == a.id2(e.usharp);
}

std::vector<AdjEquiv> adjoint_equivalences(const FinTwoCategory& a) {
  std::vector<AdjEquiv> out;
  for (Idx u = 0; u < a.n_cells1(); ++u)
    for (Idx us = 0; us < a.n_cells1(); ++us) {
      if (a.cell1(us).src != a.cell1(u).tgt || a.cell1(us).tgt != a.cell1(u).src) continue;
      for (Idx eta : a.cells2_between(a.id1(a.cell1(u).src), a.comp1(u, us)))
        for (Idx eps : a.cells2_between(a.comp1(us, u), a.id1(a.cell1(u).tgt))) {
          AdjEquiv e{u, us, eta, eps};
          if (is_adjoint_equivalence(a, e)) out.push_back(e);
        }
    }
  return out;
}

namespace {

std::string tuple_id(const FinTwoCategory& a, const AdjEquiv& e) {
  return "(" + a.cell1(e.u).id + "|" + a.cell1(e.usharp).id + "|" + a.cell2(e.eta).id +
         "|" + a.cell2(e.eps).id + ")";
}

// Composite adjoint equivalence, pasting units and counits.
AdjEquiv compose_tuples(const FinTwoCategory& a, const AdjEquiv& x, const AdjEquiv& y) {
  AdjEquiv r;
  r.u = a.comp1(x.u, y.u);
  r.usharp = a.comp1(y.usharp, x.usharp);
  r.eta = a.vcomp2(x.eta,
                   a.hcomp2(a.id2(x.u), a.hcomp2(y.eta, a.id2(x.usharp))));
  r.eps = a.vcomp2(a.hcomp2(a.id2(y.usharp), a.hcomp2(x.eps, a.id2(y.u))), y.eps);
  return r;
}

std::string padded(const char* prefix, size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%s%04zu", prefix, i);
  return buf;
}

}  // namespace

Idx HSim::vmor_of_tuple(const AdjEquiv& e) const {
  for (size_t i = 0; i < verticals.size(); ++i)
    if (verticals[i] == e) return static_cast<Idx>(i);
  return kNone;
}

Idx HSim::square_of(const Boundary& bd, Idx carrier) const {
  for (size_t i = 0; i < squares.size(); ++i)
    if (squares[i].first == bd && squares[i].second == carrier) return static_cast<Idx>(i);
  return kNone;
}

HSim h_sim(TwoPtr ap) {
  const auto& a = *ap;
  HSim hs;
  hs.base = ap;

  auto tuples = adjoint_equivalences(a);
  std::sort(tuples.begin(), tuples.end(), [&](const AdjEquiv& x, const AdjEquiv& y) {
    return tuple_id(a, x) < tuple_id(a, y);
  });

  DblPresentation p;
  p.name = "Hsim" + a.name();
  for (Idx o = 0; o < a.n_objects(); ++o) p.objects.push_back(a.object(o));
  for (Idx i = 0; i < a.n_cells1(); ++i) {
    const auto& m = a.cell1(i);
    p.hmors.push_back({m.id, a.object(m.src), a.object(m.tgt), m.is_id});
  }
  for (const auto& t : tuples) {
    bool is_id = a.cell1(t.u).is_id && a.cell1(t.usharp).is_id &&
                 t.eta == a.id2(a.id1(a.cell1(t.u).src)) &&
                 t.eps == a.id2(a.id1(a.cell1(t.u).src));
    p.vmors.push_back({tuple_id(a, t), a.object(a.cell1(t.u).src),
                       a.object(a.cell1(t.u).tgt), is_id});
  }

  // The sealed category sorts vmors lexicographically; mirror that order so
  // the tuple table stays index-aligned.
  std::sort(tuples.begin(), tuples.end(), [&](const AdjEquiv& x, const AdjEquiv& y) {
    return tuple_id(a, x) < tuple_id(a, y);
  });
  hs.verticals = tuples;
  auto tuple_index = [&](const AdjEquiv& e) {
    for (size_t i = 0; i < tuples.size(); ++i)
      if (tuples[i] == e) return static_cast<Idx>(i);
    throw Error(ErrorCode::Internal, "composite tuple missing from enumeration");
  };

  // Squares: boundary (top a, bottom a', left t1, right t2) with one square
  // per 2-cell  a ; t2.u  =>  t1.u ; a'.
  struct SqRec {
    Idx top, bottom, lt, rt, carrier;
  };
  std::vector<SqRec> sqs;
  for (Idx top = 0; top < a.n_cells1(); ++top)
    for (Idx bot = 0; bot < a.n_cells1(); ++bot)
      for (size_t lt = 0; lt < tuples.size(); ++lt) {
        const auto& l = a.cell1(tuples[lt].u);
        if (l.src != a.cell1(top).src || l.tgt != a.cell1(bot).src) continue;
        for (size_t rt = 0; rt < tuples.size(); ++rt) {
          const auto& r = a.cell1(tuples[rt].u);
          if (r.src != a.cell1(top).tgt || r.tgt != a.cell1(bot).tgt) continue;
          Idx from = a.comp1(top, tuples[rt].u);
          Idx to = a.comp1(tuples[lt].u, bot);
          for (Idx c : a.cells2_between(from, to))
            sqs.push_back({top, bot, static_cast<Idx>(lt), static_cast<Idx>(rt), c});
        }
      }
  for (size_t i = 0; i < sqs.size(); ++i) {
    const auto& s = sqs[i];
    p.squares.push_back({padded("q", i), a.cell1(s.top).id, a.cell1(s.bottom).id,
                         tuple_id(a, tuples[s.lt]), tuple_id(a, tuples[s.rt])});
    hs.squares.push_back({Boundary{s.top, s.bottom, s.lt, s.rt}, s.carrier});
  }
  auto square_index = [&](Idx top, Idx bot, Idx lt, Idx rt, Idx carrier) -> std::string {
    for (size_t i = 0; i < sqs.size(); ++i)
      if (sqs[i].top == top && sqs[i].bottom == bot && sqs[i].lt == lt && sqs[i].rt == rt &&
          sqs[i].carrier == carrier)
        return padded("q", i);
    throw Error(ErrorCode::Internal, "composite square missing from enumeration");
  };

  for (Idx f = 0; f < a.n_cells1(); ++f)
    for (Idx g = 0; g < a.n_cells1(); ++g)
      if (a.composable1(f, g))
        p.hcomp.push_back({a.cell1(f).id, a.cell1(g).id, a.cell1(a.comp1(f, g)).id});
  for (size_t x = 0; x < tuples.size(); ++x)
    for (size_t y = 0; y < tuples.size(); ++y) {
      if (a.cell1(tuples[x].u).tgt != a.cell1(tuples[y].u).src) continue;
      auto comp = compose_tuples(a, tuples[x], tuples[y]);
      p.vcomp.push_back({tuple_id(a, tuples[x]), tuple_id(a, tuples[y]),
                         tuple_id(a, tuples[tuple_index(comp)])});
    }
  for (size_t i = 0; i < sqs.size(); ++i)
    for (size_t j = 0; j < sqs.size(); ++j) {
      const auto& x = sqs[i];
      const auto& y = sqs[j];
      // Horizontal: right tuple of x equals left tuple of y.
      if (x.rt == y.lt && a.cell1(x.top).tgt == a.cell1(y.top).src) {
        Idx c = a.vcomp2(a.hcomp2(a.id2(x.top), y.carrier),
                         a.hcomp2(x.carrier, a.id2(y.bottom)));
        p.sq_hcomp.push_back({padded("q", i), padded("q", j),
                              square_index(a.comp1(x.top, y.top), a.comp1(x.bottom, y.bottom),
                                           x.lt, y.rt, c)});
      }
      // Vertical: bottom of x equals top of y.
      if (x.bottom == y.top && a.cell1(tuples[x.lt].u).tgt == a.cell1(tuples[y.lt].u).src &&
          a.cell1(tuples[x.rt].u).tgt == a.cell1(tuples[y.rt].u).src) {
        Idx c = a.vcomp2(a.hcomp2(x.carrier, a.id2(tuples[y.rt].u)),
                         a.hcomp2(a.id2(tuples[x.lt].u), y.carrier));
        auto lcomp = compose_tuples(a, tuples[x.lt], tuples[y.lt]);
        auto rcomp = compose_tuples(a, tuples[x.rt], tuples[y.rt]);
        p.sq_vcomp.push_back({padded("q", i), padded("q", j),
                              square_index(x.top, y.bottom, tuple_index(lcomp),
                                           tuple_index(rcomp), c)});
      }
    }
  for (Idx f = 0; f < a.n_cells1(); ++f) {
    AdjEquiv ids{a.id1(a.cell1(f).src), a.id1(a.cell1(f).src),
                 a.id2(a.id1(a.cell1(f).src)), a.id2(a.id1(a.cell1(f).src))};
    AdjEquiv idt{a.id1(a.cell1(f).tgt), a.id1(a.cell1(f).tgt),
                 a.id2(a.id1(a.cell1(f).tgt)), a.id2(a.id1(a.cell1(f).tgt))};
    p.e_squares.push_back(
        {a.cell1(f).id,
         square_index(f, f, tuple_index(ids), tuple_index(idt), a.id2(f))});
  }
  for (size_t t = 0; t < tuples.size(); ++t) {
    Idx srco = a.cell1(tuples[t].u).src;
    Idx tgto = a.cell1(tuples[t].u).tgt;
    p.id_squares.push_back(
        {tuple_id(a, tuples[t]),
         square_index(a.id1(srco), a.id1(tgto), static_cast<Idx>(t), static_cast<Idx>(t),
                      a.id2(tuples[t].u))});
  }

  auto sealed = std::make_shared<FinDoubleCategory>(validate_double_category(p));
  // Re-align bookkeeping with the sealed (sorted) cell order.
  {
    std::vector<AdjEquiv> vs(sealed->n_vmors());
    for (size_t t = 0; t < tuples.size(); ++t)
      vs[sealed->vmor_index(tuple_id(a, tuples[t]))] = tuples[t];
    hs.verticals = vs;
    std::vector<std::pair<Boundary, Idx>> sq2(sealed->n_squares());
    for (size_t i = 0; i < sqs.size(); ++i) {
      Boundary bd{sqs[i].top, sqs[i].bottom, kNone, kNone};
      bd.left = sealed->vmor_index(tuple_id(a, tuples[sqs[i].lt]));
      bd.right = sealed->vmor_index(tuple_id(a, tuples[sqs[i].rt]));
      // top/bottom indices in the sealed category coincide with cell1 indices
      // only if the ids sort identically; translate explicitly.
      bd.top = sealed->hmor_index(a.cell1(sqs[i].top).id);
      bd.bottom = sealed->hmor_index(a.cell1(sqs[i].bottom).id);
      sq2[sealed->square_index(padded("q", i))] = {bd, sqs[i].carrier};
    }
    hs.squares = sq2;
  }
  hs.result = sealed;
  return hs;
}

DoubleFunctor h_sim_inclusion(const HSim& hs, DblPtr embedded) {
  const auto& a = *hs.base;
  const auto& h = *hs.result;
  RawMaps maps;
  for (Idx o = 0; o < embedded->n_objects(); ++o)
    maps.objects[embedded->object(o)] = embedded->object(o);
  for (Idx f = 0; f < embedded->n_hmors(); ++f)
    maps.hmors[embedded->hmor(f).id] = embedded->hmor(f).id;
  for (Idx v = 0; v < embedded->n_vmors(); ++v) {
    // identity vertical at X maps to the identity tuple at X
    Idx o = embedded->vmor(v).src;
    Idx oa = a.object_index(embedded->object(o));
    AdjEquiv ids{a.id1(oa), a.id1(oa), a.id2(a.id1(oa)), a.id2(a.id1(oa))};
    maps.vmors[embedded->vmor(v).id] = h.vmor(hs.vmor_of_tuple(ids)).id;
  }
  for (Idx s = 0; s < embedded->n_squares(); ++s) {
    const auto& sq = embedded->square(s);
    Idx carrier = a.cell2_index(sq.id);
    Boundary bd;
    bd.top = h.hmor_index(embedded->hmor(sq.bd.top).id);
    bd.bottom = h.hmor_index(embedded->hmor(sq.bd.bottom).id);
    bd.left = h.vmor_index(maps.vmors[embedded->vmor(sq.bd.left).id]);
    bd.right = h.vmor_index(maps.vmors[embedded->vmor(sq.bd.right).id]);
    Idx hsq = hs.square_of(bd, carrier);
    if (hsq == kNone)
      throw Error(ErrorCode::Internal, "embedded square missing in Hsim", {sq.id});
    maps.squares[sq.id] = h.square(hsq).id;
  }
  return validate_double_functor(std::move(embedded), hs.result, maps, "J_" + a.name());
}

DoubleFunctor apply_h_sim(const TwoFunctor& f, const HSim& src, const HSim& tgt) {
  if (!same_category(*f.source, *src.base) || !same_category(*f.target, *tgt.base))
    throw Error(ErrorCode::Mismatch, "h_sim application endpoints do not match");
  const auto& s = *src.result;
  const auto& t = *tgt.result;
  RawMaps maps;
  for (Idx o = 0; o < s.n_objects(); ++o)
    maps.objects[s.object(o)] = t.object(f.obj[f.source->object_index(s.object(o))]);
  for (Idx h = 0; h < s.n_hmors(); ++h)
    maps.hmors[s.hmor(h).id] =
        t.hmor(f.c1[f.source->cell1_index(s.hmor(h).id)]).id;
  for (Idx v = 0; v < s.n_vmors(); ++v) {
    const auto& e = src.verticals[v];
    AdjEquiv img{f.c1[e.u], f.c1[e.usharp], f.c2[e.eta], f.c2[e.eps]};
    Idx tv = tgt.vmor_of_tuple(img);
    if (tv == kNone)
      throw Error(ErrorCode::Internal, "image tuple missing in target Hsim");
    maps.vmors[s.vmor(v).id] = t.vmor(tv).id;
  }
  for (Idx q = 0; q < s.n_squares(); ++q) {
    const auto& [bd, carrier] = src.squares[q];
    Boundary tb;
    tb.top = t.hmor_index(maps.hmors[s.hmor(bd.top).id]);
    tb.bottom = t.hmor_index(maps.hmors[s.hmor(bd.bottom).id]);
    tb.left = t.vmor_index(maps.vmors[s.vmor(bd.left).id]);
    tb.right = t.vmor_index(maps.vmors[s.vmor(bd.right).id]);
    Idx tq = tgt.square_of(tb, f.c2[carrier]);
    if (tq == kNone)
      throw Error(ErrorCode::Internal, "image square missing in target Hsim");
    maps.squares[s.square(q).id] = t.square(tq).id;
  }
  return validate_double_functor(src.result, tgt.result, maps, "Hsim(" + f.name + ")");
}

FinDoubleCategory quintet(const FinTwoCategory& a) {
  DblPresentation p;
  p.name = "Q" + a.name();
  for (Idx o = 0; o < a.n_objects(); ++o) p.objects.push_back(a.object(o));
  for (Idx i = 0; i < a.n_cells1(); ++i) {
    const auto& m = a.cell1(i);
    p.hmors.push_back({m.id, a.object(m.src), a.object(m.tgt), m.is_id});
    p.vmors.push_back({m.id, a.object(m.src), a.object(m.tgt), m.is_id});
  }
  struct SqRec {
    Idx top, bottom, left, right, carrier;
  };
  std::vector<SqRec> sqs;
  for (Idx top = 0; top < a.n_cells1(); ++top)
    for (Idx bot = 0; bot < a.n_cells1(); ++bot)
      for (Idx l = 0; l < a.n_cells1(); ++l) {
        if (a.cell1(l).src != a.cell1(top).src || a.cell1(l).tgt != a.cell1(bot).src)
          continue;
        for (Idx r = 0; r < a.n_cells1(); ++r) {
          if (a.cell1(r).src != a.cell1(top).tgt || a.cell1(r).tgt != a.cell1(bot).tgt)
            continue;
          for (Idx c : a.cells2_between(a.comp1(top, r), a.comp1(l, bot)))
            sqs.push_back({top, bot, l, r, c});
        }
      }
  for (size_t i = 0; i < sqs.size(); ++i)
    p.squares.push_back({padded("q", i), a.cell1(sqs[i].top).id, a.cell1(sqs[i].bottom).id,
                         a.cell1(sqs[i].left).id, a.cell1(sqs[i].right).id});
  auto square_id = [&](Idx top, Idx bot, Idx l, Idx r, Idx c) -> std::string {
    for (size_t i = 0; i < sqs.size(); ++i)
      if (sqs[i].top == top && sqs[i].bottom == bot && sqs[i].left == l && sqs[i].right == r &&
          sqs[i].carrier == c)
        return padded("q", i);
    throw Error(ErrorCode::Internal, "quintet square missing");
  };
  for (Idx f = 0; f < a.n_cells1(); ++f)
    for (Idx g = 0; g < a.n_cells1(); ++g)
      if (a.composable1(f, g)) {
        p.hcomp.push_back({a.cell1(f).id, a.cell1(g).id, a.cell1(a.comp1(f, g)).id});
        p.vcomp.push_back({a.cell1(f).id, a.cell1(g).id, a.cell1(a.comp1(f, g)).id});
      }
  for (size_t i = 0; i < sqs.size(); ++i)
    for (size_t j = 0; j < sqs.size(); ++j) {
      const auto& x = sqs[i];
      const auto& y = sqs[j];
      if (x.right == y.left && a.cell1(x.top).tgt == a.cell1(y.top).src) {
        Idx c = a.vcomp2(a.hcomp2(a.id2(x.top), y.carrier),
                         a.hcomp2(x.carrier, a.id2(y.bottom)));
        p.sq_hcomp.push_back({padded("q", i), padded("q", j),
                              square_id(a.comp1(x.top, y.top), a.comp1(x.bottom, y.bottom),
                                        x.left, y.right, c)});
      }
      if (x.bottom == y.top && a.cell1(x.left).tgt == a.cell1(y.left).src &&
          a.cell1(x.right).tgt == a.cell1(y.right).src) {
        Idx c = a.vcomp2(a.hcomp2(x.carrier, a.id2(y.right)),
                         a.hcomp2(a.id2(x.left), y.carrier));
        p.sq_vcomp.push_back({padded("q", i), padded("q", j),
                              square_id(x.top, y.bottom, a.comp1(x.left, y.left),
                                        a.comp1(x.right, y.right), c)});
      }
    }
  for (Idx f = 0; f < a.n_cells1(); ++f) {
    p.e_squares.push_back(
        {a.cell1(f).id, square_id(f, f, a.id1(a.cell1(f).src), a.id1(a.cell1(f).tgt),
                                  a.id2(f))});
    p.id_squares.push_back(
        {a.cell1(f).id, square_id(a.id1(a.cell1(f).src), a.id1(a.cell1(f).tgt), f, f,
                                  a.id2(f))});
  }
  return validate_double_category(p);
}

// ---------------------------------------------------------------------------
// Isomorphism search.

namespace {

// Generic backtracking bijection: assign target indices to source slots in
// order, with a local consistency check after each assignment.
bool match_bijection(int n, int m, const std::function<std::vector<Idx>(Idx)>& candidates,
                     const std::function<bool(const std::vector<Idx>&, Idx)>& check,
                     std::vector<Idx>& out) {
  if (n != m) return false;
  out.assign(n, kNone);
  std::vector<bool> used(m, false);
  std::function<bool(Idx)> go = [&](Idx i) -> bool {
    if (i == n) return true;
    for (Idx c : candidates(i)) {
      if (used[c]) continue;
      out[i] = c;
      used[c] = true;
      if (check(out, i) && go(i + 1)) return true;
      used[c] = false;
      out[i] = kNone;
    }
    return false;
  };
  return go(0);
}

}  // namespace

std::optional<DoubleFunctor> find_isomorphism(DblPtr ap, DblPtr bp) {
  const auto& a = *ap;
  const auto& b = *bp;
  if (a.n_objects() != b.n_objects() || a.n_hmors() != b.n_hmors() ||
      a.n_vmors() != b.n_vmors() || a.n_squares() != b.n_squares())
    return std::nullopt;

  std::vector<Idx> omap, hmap, vmap, smap;

  std::function<bool(Idx)> try_objects;
  auto hmor_candidates = [&](Idx f) {
    std::vector<Idx> cs;
    for (Idx g = 0; g < b.n_hmors(); ++g)
      if (b.hmor(g).src == omap[a.hmor(f).src] && b.hmor(g).tgt == omap[a.hmor(f).tgt] &&
          b.hmor(g).is_id == a.hmor(f).is_id)
        cs.push_back(g);
    return cs;
  };
  auto hmor_check = [&](const std::vector<Idx>& m, Idx i) {
    for (Idx j = 0; j <= i; ++j) {
      if (m[j] == kNone) continue;
      if (a.hcomposable(i, j)) {
        Idx r = a.hcomp(i, j);
        if (r <= i && m[r] != kNone && m[r] != b.hcomp(m[i], m[j])) return false;
      }
      if (a.hcomposable(j, i)) {
        Idx r = a.hcomp(j, i);
        if (r <= i && m[r] != kNone && m[r] != b.hcomp(m[j], m[i])) return false;
      }
    }
    return true;
  };
  auto vmor_candidates = [&](Idx f) {
    std::vector<Idx> cs;
    for (Idx g = 0; g < b.n_vmors(); ++g)
      if (b.vmor(g).src == omap[a.vmor(f).src] && b.vmor(g).tgt == omap[a.vmor(f).tgt] &&
          b.vmor(g).is_id == a.vmor(f).is_id)
        cs.push_back(g);
    return cs;
  };
  auto vmor_check = [&](const std::vector<Idx>& m, Idx i) {
    for (Idx j = 0; j <= i; ++j) {
      if (m[j] == kNone) continue;
      if (a.vcomposable(i, j)) {
        Idx r = a.vcomp(i, j);
        if (r <= i && m[r] != kNone && m[r] != b.vcomp(m[i], m[j])) return false;
      }
      if (a.vcomposable(j, i)) {
        Idx r = a.vcomp(j, i);
        if (r <= i && m[r] != kNone && m[r] != b.vcomp(m[j], m[i])) return false;
      }
    }
    return true;
  };
  auto sq_candidates = [&](Idx s) {
    std::vector<Idx> cs;
    const auto& bd = a.square(s).bd;
    Boundary tb{hmap[bd.top], hmap[bd.bottom], vmap[bd.left], vmap[bd.right]};
    // e/id designations are forced.
    if (a.e_square(bd.top) == s) return std::vector<Idx>{b.e_square(tb.top)};
    if (a.id_square(bd.left) == s) return std::vector<Idx>{b.id_square(tb.left)};
    for (Idx t : b.squares_over(tb)) cs.push_back(t);
    return cs;
  };
  auto sq_check = [&](const std::vector<Idx>& m, Idx i) {
    const auto& bd = a.square(i).bd;
    Boundary tb{hmap[bd.top], hmap[bd.bottom], vmap[bd.left], vmap[bd.right]};
    if (b.square(m[i]).bd != tb) return false;
    for (Idx j = 0; j <= i; ++j) {
      if (m[j] == kNone) continue;
      auto chk = [&](Idx x, Idx y) {
        if (a.sq_hcomposable(x, y)) {
          Idx r = a.sq_hcomp(x, y);
          if (r <= i && m[r] != kNone && m[r] != b.sq_hcomp(m[x], m[y])) return false;
        }
        if (a.sq_vcomposable(x, y)) {
          Idx r = a.sq_vcomp(x, y);
          if (r <= i && m[r] != kNone && m[r] != b.sq_vcomp(m[x], m[y])) return false;
        }
        return true;
      };
      if (!chk(i, j) || !chk(j, i)) return false;
    }
    return true;
  };

  // Enumerate object bijections by backtracking, then morphisms and squares.
  std::vector<bool> oused(b.n_objects(), false);
  omap.assign(a.n_objects(), kNone);
  std::function<bool(Idx)> go = [&](Idx i) -> bool {
    if (i == a.n_objects()) {
      if (!match_bijection(a.n_hmors(), b.n_hmors(), hmor_candidates, hmor_check, hmap))
        return false;
      if (!match_bijection(a.n_vmors(), b.n_vmors(), vmor_candidates, vmor_check, vmap))
        return false;
      return match_bijection(a.n_squares(), b.n_squares(), sq_candidates, sq_check, smap);
    }
    for (Idx c = 0; c < b.n_objects(); ++c) {
      if (oused[c]) continue;
      omap[i] = c;
      oused[c] = true;
      if (go(i + 1)) return true;
      oused[c] = false;
      omap[i] = kNone;
    }
    return false;
  };
  if (!go(0)) return std::nullopt;

  RawMaps maps;
  for (Idx o = 0; o < a.n_objects(); ++o) maps.objects[a.object(o)] = b.object(omap[o]);
  for (Idx f = 0; f < a.n_hmors(); ++f) maps.hmors[a.hmor(f).id] = b.hmor(hmap[f]).id;
  for (Idx u = 0; u < a.n_vmors(); ++u) maps.vmors[a.vmor(u).id] = b.vmor(vmap[u]).id;
  for (Idx s = 0; s < a.n_squares(); ++s) maps.squares[a.square(s).id] = b.square(smap[s]).id;
  return validate_double_functor(ap, bp, maps, "iso");
}

}  // namespace dbl

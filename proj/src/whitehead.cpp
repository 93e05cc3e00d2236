#include "dblcat/whitehead.hpp"

#include <algorithm>

namespace dbl {

namespace {

void coherence(bool ok, const std::string& axiom, std::vector<std::string> cells) {
  if (!ok) throw Error(ErrorCode::CoherenceViolation, axiom, std::move(cells));
}

}  // namespace

void validate_pseudo_double_functor(const PseudoDoubleFunctor& g) {
  const auto& s = *g.source;
  const auto& t = *g.target;

  coherence(g.obj.size() == static_cast<size_t>(s.n_objects()) &&
                g.hmor.size() == static_cast<size_t>(s.n_hmors()) &&
                g.vmor.size() == static_cast<size_t>(s.n_vmors()) &&
                g.sq.size() == static_cast<size_t>(s.n_squares()),
            "component maps are not total", {});

  for (Idx b = 0; b < s.n_hmors(); ++b) {
    const auto& m = s.hmor(b);
    const auto& im = t.hmor(g.hmor[b]);
    coherence(im.src == g.obj[m.src] && im.tgt == g.obj[m.tgt],
              "hmor endpoints are not preserved", {m.id});
  }
  for (Idx v = 0; v < s.n_vmors(); ++v) {
    const auto& m = s.vmor(v);
    const auto& im = t.vmor(g.vmor[v]);
    coherence(im.src == g.obj[m.src] && im.tgt == g.obj[m.tgt],
              "vmor endpoints are not preserved", {m.id});
  }
  for (Idx q = 0; q < s.n_squares(); ++q)
    coherence(t.square(g.sq[q]).bd == g.on_boundary(s.square(q).bd),
              "square boundaries are not preserved", {s.square(q).id});

  // Comparator boundaries and invertibility.
  coherence(g.phi_unit.size() == static_cast<size_t>(s.n_objects()) &&
                g.psi_unit.size() == static_cast<size_t>(s.n_objects()),
            "unit comparators are not total", {});
  for (Idx o = 0; o < s.n_objects(); ++o) {
    Idx go = g.obj[o];
    Boundary want{t.id_hmor(go), g.hmor[s.id_hmor(o)], t.id_vmor(go), t.id_vmor(go)};
    coherence(t.square(g.phi_unit[o]).bd == want, "Phi unit has wrong boundary",
              {s.object(o)});
    coherence(is_vertically_invertible(t, g.phi_unit[o]), "Phi unit is not invertible",
              {s.object(o)});
    Boundary wantp{t.id_hmor(go), t.id_hmor(go), t.id_vmor(go), g.vmor[s.id_vmor(o)]};
    coherence(t.square(g.psi_unit[o]).bd == wantp, "Psi unit has wrong boundary",
              {s.object(o)});
    coherence(is_horizontally_invertible(t, g.psi_unit[o]), "Psi unit is not invertible",
              {s.object(o)});
  }
  if (g.normal)
    for (Idx o = 0; o < s.n_objects(); ++o) {
      coherence(g.phi_unit[o] == t.e_square(t.id_hmor(g.obj[o])) &&
                    g.psi_unit[o] == t.id_square(t.id_vmor(g.obj[o])),
                "normal pseudo functor has non-identity units", {s.object(o)});
    }
  for (Idx b = 0; b < s.n_hmors(); ++b)
    for (Idx d = 0; d < s.n_hmors(); ++d) {
      if (!s.hcomposable(b, d)) continue;
      auto it = g.phi.find({b, d});
      coherence(it != g.phi.end(), "Phi comparator missing", {s.hmor(b).id, s.hmor(d).id});
      Boundary want{t.hcomp(g.hmor[b], g.hmor[d]), g.hmor[s.hcomp(b, d)],
                    t.id_vmor(g.obj[s.hmor(b).src]), t.id_vmor(g.obj[s.hmor(d).tgt])};
      coherence(t.square(it->second).bd == want, "Phi has wrong boundary",
                {s.hmor(b).id, s.hmor(d).id});
      coherence(is_vertically_invertible(t, it->second), "Phi is not invertible",
                {s.hmor(b).id, s.hmor(d).id});
    }
  for (Idx v = 0; v < s.n_vmors(); ++v)
    for (Idx w = 0; w < s.n_vmors(); ++w) {
      if (!s.vcomposable(v, w)) continue;
      auto it = g.psi.find({v, w});
      coherence(it != g.psi.end(), "Psi comparator missing", {s.vmor(v).id, s.vmor(w).id});
      Boundary want{t.id_hmor(g.obj[s.vmor(v).src]), t.id_hmor(g.obj[s.vmor(w).tgt]),
                    t.vcomp(g.vmor[v], g.vmor[w]), g.vmor[s.vcomp(v, w)]};
      coherence(t.square(it->second).bd == want, "Psi has wrong boundary",
                {s.vmor(v).id, s.vmor(w).id});
      coherence(is_horizontally_invertible(t, it->second), "Psi is not invertible",
                {s.vmor(v).id, s.vmor(w).id});
    }

  // The seven coherence families.
  // (1) associativity of Phi
  for (Idx b = 0; b < s.n_hmors(); ++b)
    for (Idx d = 0; d < s.n_hmors(); ++d) {
      if (!s.hcomposable(b, d)) continue;
      for (Idx f2 = 0; f2 < s.n_hmors(); ++f2) {
        if (!s.hcomposable(d, f2)) continue;
        Idx lhs = t.sq_vcomp(t.sq_hcomp(g.phi_at(b, d), t.e_square(g.hmor[f2])),
                             g.phi_at(s.hcomp(b, d), f2));
        Idx rhs = t.sq_vcomp(t.sq_hcomp(t.e_square(g.hmor[b]), g.phi_at(d, f2)),
                             g.phi_at(b, s.hcomp(d, f2)));
        coherence(lhs == rhs, "Phi associativity fails",
                  {s.hmor(b).id, s.hmor(d).id, s.hmor(f2).id});
      }
    }
  // (2) unit laws for Phi
  for (Idx b = 0; b < s.n_hmors(); ++b) {
    Idx lb = s.id_hmor(s.hmor(b).src), rb = s.id_hmor(s.hmor(b).tgt);
    Idx lhs = t.sq_vcomp(t.sq_hcomp(g.phi_unit[s.hmor(b).src], t.e_square(g.hmor[b])),
                         g.phi_at(lb, b));
    coherence(lhs == t.e_square(g.hmor[b]), "Phi left unit law fails", {s.hmor(b).id});
    Idx rhs = t.sq_vcomp(t.sq_hcomp(t.e_square(g.hmor[b]), g.phi_unit[s.hmor(b).tgt]),
                         g.phi_at(b, rb));
    coherence(rhs == t.e_square(g.hmor[b]), "Phi right unit law fails", {s.hmor(b).id});
  }
  // (3) associativity of Psi
  for (Idx v = 0; v < s.n_vmors(); ++v)
    for (Idx w = 0; w < s.n_vmors(); ++w) {
      if (!s.vcomposable(v, w)) continue;
      for (Idx x = 0; x < s.n_vmors(); ++x) {
        if (!s.vcomposable(w, x)) continue;
        Idx lhs = t.sq_hcomp(t.sq_vcomp(g.psi_at(v, w), t.id_square(g.vmor[x])),
                             g.psi_at(s.vcomp(v, w), x));
        Idx rhs = t.sq_hcomp(t.sq_vcomp(t.id_square(g.vmor[v]), g.psi_at(w, x)),
                             g.psi_at(v, s.vcomp(w, x)));
        coherence(lhs == rhs, "Psi associativity fails",
                  {s.vmor(v).id, s.vmor(w).id, s.vmor(x).id});
      }
    }
  // (4) unit laws for Psi
  for (Idx v = 0; v < s.n_vmors(); ++v) {
    Idx tv = s.id_vmor(s.vmor(v).src), bv = s.id_vmor(s.vmor(v).tgt);
    Idx lhs = t.sq_hcomp(t.sq_vcomp(g.psi_unit[s.vmor(v).src], t.id_square(g.vmor[v])),
                         g.psi_at(tv, v));
    coherence(lhs == t.id_square(g.vmor[v]), "Psi top unit law fails", {s.vmor(v).id});
    Idx rhs = t.sq_hcomp(t.sq_vcomp(t.id_square(g.vmor[v]), g.psi_unit[s.vmor(v).tgt]),
                         g.psi_at(v, bv));
    coherence(rhs == t.id_square(g.vmor[v]), "Psi bottom unit law fails", {s.vmor(v).id});
  }
  // (5) compatibility with horizontal composition of squares
  for (Idx q1 = 0; q1 < s.n_squares(); ++q1)
    for (Idx q2 = 0; q2 < s.n_squares(); ++q2) {
      if (!s.sq_hcomposable(q1, q2)) continue;
      const auto& b1 = s.square(q1).bd;
      const auto& b2 = s.square(q2).bd;
      Idx lhs = t.sq_vcomp(t.sq_hcomp(g.sq[q1], g.sq[q2]), g.phi_at(b1.bottom, b2.bottom));
      Idx rhs = t.sq_vcomp(g.phi_at(b1.top, b2.top), g.sq[s.sq_hcomp(q1, q2)]);
      coherence(lhs == rhs, "square/hcomp compatibility fails",
                {s.square(q1).id, s.square(q2).id});
    }
  // (6) compatibility with vertical composition of squares
  for (Idx q1 = 0; q1 < s.n_squares(); ++q1)
    for (Idx q2 = 0; q2 < s.n_squares(); ++q2) {
      if (!s.sq_vcomposable(q1, q2)) continue;
      const auto& b1 = s.square(q1).bd;
      const auto& b2 = s.square(q2).bd;
      Idx lhs = t.sq_hcomp(g.psi_at(b1.left, b2.left), g.sq[s.sq_vcomp(q1, q2)]);
      Idx rhs = t.sq_hcomp(t.sq_vcomp(g.sq[q1], g.sq[q2]), g.psi_at(b1.right, b2.right));
      coherence(lhs == rhs, "square/vcomp compatibility fails",
                {s.square(q1).id, s.square(q2).id});
    }
  // (7) unit squares
  for (Idx b = 0; b < s.n_hmors(); ++b) {
    Idx lhs = t.sq_hcomp(g.psi_unit[s.hmor(b).src], g.sq[s.e_square(b)]);
    Idx rhs = t.sq_hcomp(t.e_square(g.hmor[b]), g.psi_unit[s.hmor(b).tgt]);
    coherence(lhs == rhs, "e squares break the unit comparison", {s.hmor(b).id});
  }
  for (Idx v = 0; v < s.n_vmors(); ++v) {
    Idx lhs = t.sq_vcomp(g.phi_unit[s.vmor(v).src], g.sq[s.id_square(v)]);
    Idx rhs = t.sq_vcomp(t.id_square(g.vmor[v]), g.phi_unit[s.vmor(v).tgt]);
    coherence(lhs == rhs, "id squares break the unit comparison", {s.vmor(v).id});
  }
}

PseudoDoubleFunctor strict_as_pseudo(const DoubleFunctor& f) {
  PseudoDoubleFunctor g;
  g.name = f.name;
  g.source = f.source;
  g.target = f.target;
  g.obj = f.obj;
  g.hmor = f.hmor;
  g.vmor = f.vmor;
  g.sq = f.sq;
  const auto& s = *f.source;
  const auto& t = *f.target;
  for (Idx b = 0; b < s.n_hmors(); ++b)
    for (Idx d = 0; d < s.n_hmors(); ++d)
      if (s.hcomposable(b, d))
        g.phi[{b, d}] = t.e_square(t.hcomp(f.hmor[b], f.hmor[d]));
  for (Idx v = 0; v < s.n_vmors(); ++v)
    for (Idx w = 0; w < s.n_vmors(); ++w)
      if (s.vcomposable(v, w))
        g.psi[{v, w}] = t.id_square(t.vcomp(f.vmor[v], f.vmor[w]));
  g.phi_unit.resize(s.n_objects());
  g.psi_unit.resize(s.n_objects());
  for (Idx o = 0; o < s.n_objects(); ++o) {
    g.phi_unit[o] = t.e_square(t.id_hmor(f.obj[o]));
    g.psi_unit[o] = t.id_square(t.id_vmor(f.obj[o]));
  }
  g.normal = true;
  return g;
}

bool same_pseudo(const PseudoDoubleFunctor& a, const PseudoDoubleFunctor& b) {
  return same_category(*a.source, *b.source) && same_category(*a.target, *b.target) &&
         a.obj == b.obj && a.hmor == b.hmor && a.vmor == b.vmor && a.sq == b.sq &&
         a.phi == b.phi && a.psi == b.psi && a.phi_unit == b.phi_unit &&
         a.psi_unit == b.psi_unit;
}

PseudoDoubleFunctor compose_pseudo_after_strict(const PseudoDoubleFunctor& g,
                                                const DoubleFunctor& f) {
  if (!same_category(*f.target, *g.source))
    throw Error(ErrorCode::Mismatch, "composite endpoints do not match");
  PseudoDoubleFunctor h;
  h.name = g.name + "." + f.name;
  h.source = f.source;
  h.target = g.target;
  const auto& s = *f.source;
  h.obj.resize(s.n_objects());
  h.hmor.resize(s.n_hmors());
  h.vmor.resize(s.n_vmors());
  h.sq.resize(s.n_squares());
  for (Idx o = 0; o < s.n_objects(); ++o) h.obj[o] = g.obj[f.obj[o]];
  for (Idx b = 0; b < s.n_hmors(); ++b) h.hmor[b] = g.hmor[f.hmor[b]];
  for (Idx v = 0; v < s.n_vmors(); ++v) h.vmor[v] = g.vmor[f.vmor[v]];
  for (Idx q = 0; q < s.n_squares(); ++q) h.sq[q] = g.sq[f.sq[q]];
  for (Idx b = 0; b < s.n_hmors(); ++b)
    for (Idx d = 0; d < s.n_hmors(); ++d)
      if (s.hcomposable(b, d)) h.phi[{b, d}] = g.phi_at(f.hmor[b], f.hmor[d]);
  for (Idx v = 0; v < s.n_vmors(); ++v)
    for (Idx w = 0; w < s.n_vmors(); ++w)
      if (s.vcomposable(v, w)) h.psi[{v, w}] = g.psi_at(f.vmor[v], f.vmor[w]);
  h.phi_unit.resize(s.n_objects());
  h.psi_unit.resize(s.n_objects());
  for (Idx o = 0; o < s.n_objects(); ++o) {
    h.phi_unit[o] = g.phi_unit[f.obj[o]];
    h.psi_unit[o] = g.psi_unit[f.obj[o]];
  }
  h.normal = g.normal;
  return h;
}

PseudoDoubleFunctor compose_strict_after_pseudo(const DoubleFunctor& f,
                                                const PseudoDoubleFunctor& g) {
  if (!same_category(*g.target, *f.source))
    throw Error(ErrorCode::Mismatch, "composite endpoints do not match");
  PseudoDoubleFunctor h;
  h.name = f.name + "." + g.name;
  h.source = g.source;
  h.target = f.target;
  const auto& s = *g.source;
  h.obj.resize(s.n_objects());
  h.hmor.resize(s.n_hmors());
  h.vmor.resize(s.n_vmors());
  h.sq.resize(s.n_squares());
  for (Idx o = 0; o < s.n_objects(); ++o) h.obj[o] = f.obj[g.obj[o]];
  for (Idx b = 0; b < s.n_hmors(); ++b) h.hmor[b] = f.hmor[g.hmor[b]];
  for (Idx v = 0; v < s.n_vmors(); ++v) h.vmor[v] = f.vmor[g.vmor[v]];
  for (Idx q = 0; q < s.n_squares(); ++q) h.sq[q] = f.sq[g.sq[q]];
  for (const auto& [k, sq] : g.phi) h.phi[k] = f.sq[sq];
  for (const auto& [k, sq] : g.psi) h.psi[k] = f.sq[sq];
  h.phi_unit.resize(s.n_objects());
  h.psi_unit.resize(s.n_objects());
  for (Idx o = 0; o < s.n_objects(); ++o) {
    h.phi_unit[o] = f.sq[g.phi_unit[o]];
    h.psi_unit[o] = f.sq[g.psi_unit[o]];
  }
  h.normal = g.normal;
  return h;
}

// ---------------------------------------------------------------------------
// HPNTs.

void validate_hpnt(const HPNT& t) {
  coherence(same_category(*t.from.source, *t.to.source) &&
                same_category(*t.from.target, *t.to.target),
            "transformation endpoints do not match", {});
  const auto& s = *t.from.source;
  const auto& a = *t.from.target;

  coherence(t.at_obj.size() == static_cast<size_t>(s.n_objects()) &&
                t.at_hmor.size() == static_cast<size_t>(s.n_hmors()) &&
                t.at_vmor.size() == static_cast<size_t>(s.n_vmors()),
            "transformation components are not total", {t.name});

  for (Idx o = 0; o < s.n_objects(); ++o) {
    const auto& c = a.hmor(t.at_obj[o]);
    coherence(c.src == t.from.obj[o] && c.tgt == t.to.obj[o],
              "object component has wrong endpoints", {s.object(o)});
  }
  for (Idx b = 0; b < s.n_hmors(); ++b) {
    const auto& m = s.hmor(b);
    Boundary want{a.hcomp(t.at_obj[m.src], t.to.hmor[b]),
                  a.hcomp(t.from.hmor[b], t.at_obj[m.tgt]), a.id_vmor(t.from.obj[m.src]),
                  a.id_vmor(t.to.obj[m.tgt])};
    coherence(a.square(t.at_hmor[b]).bd == want, "hmor component has wrong boundary",
              {m.id});
    coherence(is_vertically_invertible(a, t.at_hmor[b]),
              "hmor component is not vertically invertible", {m.id});
  }
  for (Idx v = 0; v < s.n_vmors(); ++v) {
    const auto& m = s.vmor(v);
    Boundary want{t.at_obj[m.src], t.at_obj[m.tgt], t.from.vmor[v], t.to.vmor[v]};
    coherence(a.square(t.at_vmor[v]).bd == want, "vmor component has wrong boundary",
              {m.id});
  }

  // (t1) horizontal unit compatibility
  for (Idx o = 0; o < s.n_objects(); ++o) {
    Idx b = s.id_hmor(o);
    Idx lhs = a.sq_vcomp(a.sq_hcomp(a.e_square(t.at_obj[o]), t.to.phi_unit[o]), t.at_hmor[b]);
    Idx rhs = a.sq_hcomp(t.from.phi_unit[o], a.e_square(t.at_obj[o]));
    coherence(lhs == rhs, "hmor components break the unit law", {s.object(o)});
  }
  // (t2) compatibility with horizontal composition
  for (Idx b = 0; b < s.n_hmors(); ++b)
    for (Idx d = 0; d < s.n_hmors(); ++d) {
      if (!s.hcomposable(b, d)) continue;
      Idx bsrc = s.hmor(b).src, dtgt = s.hmor(d).tgt;
      Idx lhs = a.sq_vcomp(a.sq_hcomp(a.e_square(t.at_obj[bsrc]), t.to.phi_at(b, d)),
                           t.at_hmor[s.hcomp(b, d)]);
      Idx x = a.sq_vcomp(a.sq_hcomp(t.at_hmor[b], a.e_square(t.to.hmor[d])),
                         a.sq_hcomp(a.e_square(t.from.hmor[b]), t.at_hmor[d]));
      Idx rhs = a.sq_vcomp(x, a.sq_hcomp(t.from.phi_at(b, d), a.e_square(t.at_obj[dtgt])));
      coherence(lhs == rhs, "hmor components break hcomp compatibility",
                {s.hmor(b).id, s.hmor(d).id});
    }
  // (t3) compatibility with vertical composition and its unit
  for (Idx v = 0; v < s.n_vmors(); ++v)
    for (Idx w = 0; w < s.n_vmors(); ++w) {
      if (!s.vcomposable(v, w)) continue;
      Idx lhs = a.sq_hcomp(t.from.psi_at(v, w), t.at_vmor[s.vcomp(v, w)]);
      Idx rhs = a.sq_hcomp(a.sq_vcomp(t.at_vmor[v], t.at_vmor[w]), t.to.psi_at(v, w));
      coherence(lhs == rhs, "vmor components break vcomp compatibility",
                {s.vmor(v).id, s.vmor(w).id});
    }
  for (Idx o = 0; o < s.n_objects(); ++o) {
    Idx v = s.id_vmor(o);
    Idx lhs = a.sq_hcomp(t.from.psi_unit[o], t.at_vmor[v]);
    Idx rhs = a.sq_hcomp(a.e_square(t.at_obj[o]), t.to.psi_unit[o]);
    coherence(lhs == rhs, "vmor components break the vertical unit law", {s.object(o)});
  }
  // (t4) naturality against squares
  for (Idx q = 0; q < s.n_squares(); ++q) {
    const auto& bd = s.square(q).bd;
    Idx lhs = a.sq_vcomp(a.sq_hcomp(t.at_vmor[bd.left], t.to.sq[q]), t.at_hmor[bd.bottom]);
    Idx rhs = a.sq_vcomp(t.at_hmor[bd.top], a.sq_hcomp(t.from.sq[q], t.at_vmor[bd.right]));
    coherence(lhs == rhs, "naturality fails at a square", {s.square(q).id});
  }
}

HPNT identity_hpnt(const PseudoDoubleFunctor& f) {
  HPNT t;
  t.name = "id_" + f.name;
  t.from = f;
  t.to = f;
  const auto& s = *f.source;
  const auto& a = *f.target;
  t.at_obj.resize(s.n_objects());
  t.at_hmor.resize(s.n_hmors());
  t.at_vmor.resize(s.n_vmors());
  for (Idx o = 0; o < s.n_objects(); ++o) t.at_obj[o] = a.id_hmor(f.obj[o]);
  for (Idx b = 0; b < s.n_hmors(); ++b) t.at_hmor[b] = a.e_square(f.hmor[b]);
  for (Idx v = 0; v < s.n_vmors(); ++v) t.at_vmor[v] = a.id_square(f.vmor[v]);
  return t;
}

HPNT compose_hpnt(const HPNT& s, const HPNT& t) {
  if (!same_pseudo(s.to, t.from))
    throw Error(ErrorCode::Mismatch, "transformations are not composable");
  HPNT r;
  r.name = t.name + "." + s.name;
  r.from = s.from;
  r.to = t.to;
  const auto& src = *s.from.source;
  const auto& a = *s.from.target;
  r.at_obj.resize(src.n_objects());
  r.at_hmor.resize(src.n_hmors());
  r.at_vmor.resize(src.n_vmors());
  for (Idx o = 0; o < src.n_objects(); ++o)
    r.at_obj[o] = a.hcomp(s.at_obj[o], t.at_obj[o]);
  for (Idx b = 0; b < src.n_hmors(); ++b) {
    Idx o = src.hmor(b).src, o2 = src.hmor(b).tgt;
    r.at_hmor[b] = a.sq_vcomp(a.sq_hcomp(a.e_square(s.at_obj[o]), t.at_hmor[b]),
                              a.sq_hcomp(s.at_hmor[b], a.e_square(t.at_obj[o2])));
  }
  for (Idx v = 0; v < src.n_vmors(); ++v)
    r.at_vmor[v] = a.sq_hcomp(s.at_vmor[v], t.at_vmor[v]);
  return r;
}

HPNT whisker_right(const HPNT& t, const DoubleFunctor& rfun) {
  if (!same_category(*rfun.target, *t.from.source))
    throw Error(ErrorCode::Mismatch, "whiskering endpoints do not match");
  HPNT r;
  r.name = t.name + "_" + rfun.name;
  r.from = compose_pseudo_after_strict(t.from, rfun);
  r.to = compose_pseudo_after_strict(t.to, rfun);
  const auto& s = *rfun.source;
  r.at_obj.resize(s.n_objects());
  r.at_hmor.resize(s.n_hmors());
  r.at_vmor.resize(s.n_vmors());
  for (Idx o = 0; o < s.n_objects(); ++o) r.at_obj[o] = t.at_obj[rfun.obj[o]];
  for (Idx b = 0; b < s.n_hmors(); ++b) r.at_hmor[b] = t.at_hmor[rfun.hmor[b]];
  for (Idx v = 0; v < s.n_vmors(); ++v) r.at_vmor[v] = t.at_vmor[rfun.vmor[v]];
  return r;
}

HPNT whisker_left(const DoubleFunctor& sfun, const HPNT& t) {
  if (!same_category(*t.from.target, *sfun.source))
    throw Error(ErrorCode::Mismatch, "whiskering endpoints do not match");
  HPNT r;
  r.name = sfun.name + "_" + t.name;
  r.from = compose_strict_after_pseudo(sfun, t.from);
  r.to = compose_strict_after_pseudo(sfun, t.to);
  const auto& s = *t.from.source;
  r.at_obj.resize(s.n_objects());
  r.at_hmor.resize(s.n_hmors());
  r.at_vmor.resize(s.n_vmors());
  for (Idx o = 0; o < s.n_objects(); ++o) r.at_obj[o] = sfun.hmor[t.at_obj[o]];
  for (Idx b = 0; b < s.n_hmors(); ++b) r.at_hmor[b] = sfun.sq[t.at_hmor[b]];
  for (Idx v = 0; v < s.n_vmors(); ++v) r.at_vmor[v] = sfun.sq[t.at_vmor[v]];
  return r;
}

CheckReport is_hpne(const HPNT& t) {
  CheckReport rep;
  rep.check = "hpne";
  rep.subject = t.name;
  const auto& s = *t.from.source;
  const auto& a = *t.from.target;
  DblAnalysis an(a);
  for (Idx o = 0; o < s.n_objects(); ++o)
    if (!an.is_equiv(t.at_obj[o]))
      rep.fail("hpne-obj", {s.object(o), a.hmor(t.at_obj[o]).id},
               "object component is not a horizontal equivalence");
  for (Idx v = 0; v < s.n_vmors(); ++v)
    if (!an.whi_invertible(t.at_vmor[v]))
      rep.fail("hpne-vmor", {s.vmor(v).id, a.square(t.at_vmor[v]).id},
               "vertical component is not weakly horizontally invertible");
  return rep;
}

// ---------------------------------------------------------------------------
// Modifications.

void validate_modification(const Modification& m) {
  const auto& s = *m.from.from.source;
  const auto& a = *m.from.from.target;
  coherence(same_pseudo(m.from.from, m.to.from) && same_pseudo(m.from.to, m.to.to),
            "modification endpoints do not match", {m.name});
  coherence(m.at_obj.size() == static_cast<size_t>(s.n_objects()),
            "modification components are not total", {m.name});
  for (Idx o = 0; o < s.n_objects(); ++o) {
    Boundary want{m.from.at_obj[o], m.to.at_obj[o], a.id_vmor(m.from.from.obj[o]),
                  a.id_vmor(m.from.to.obj[o])};
    coherence(a.square(m.at_obj[o]).bd == want, "modification component has wrong boundary",
              {s.object(o)});
  }
  // horizontal coherence
  for (Idx b = 0; b < s.n_hmors(); ++b) {
    Idx o = s.hmor(b).src, o2 = s.hmor(b).tgt;
    Idx lhs = a.sq_vcomp(a.sq_hcomp(m.at_obj[o], a.e_square(m.from.to.hmor[b])),
                         m.to.at_hmor[b]);
    Idx rhs = a.sq_vcomp(m.from.at_hmor[b],
                         a.sq_hcomp(a.e_square(m.from.from.hmor[b]), m.at_obj[o2]));
    coherence(lhs == rhs, "modification breaks horizontal coherence", {s.hmor(b).id});
  }
  // vertical coherence
  for (Idx v = 0; v < s.n_vmors(); ++v) {
    Idx o = s.vmor(v).src, o2 = s.vmor(v).tgt;
    Idx lhs = a.sq_vcomp(m.at_obj[o], m.to.at_vmor[v]);
    Idx rhs = a.sq_vcomp(m.from.at_vmor[v], m.at_obj[o2]);
    coherence(lhs == rhs, "modification breaks vertical coherence", {s.vmor(v).id});
  }
}

bool modification_invertible(const Modification& m) {
  const auto& a = *m.from.from.target;
  for (Idx sq : m.at_obj)
    if (!is_vertically_invertible(a, sq)) return false;
  return true;
}

Modification whisker_left_mod(const DoubleFunctor& sfun, const Modification& m) {
  Modification r;
  r.name = sfun.name + "_" + m.name;
  r.from = whisker_left(sfun, m.from);
  r.to = whisker_left(sfun, m.to);
  r.at_obj.resize(m.at_obj.size());
  for (size_t i = 0; i < m.at_obj.size(); ++i) r.at_obj[i] = sfun.sq[m.at_obj[i]];
  return r;
}

// ---------------------------------------------------------------------------
// The Whitehead inverse.

WhiteheadData whitehead_inverse(const DoubleFunctor& f) {
  if (!is_whi(*f.source).verdict)
    throw Error(ErrorCode::PreconditionFailed,
                "source '" + f.source->name() + "' is not weakly horizontally invariant");
  if (!is_double_biequivalence(f).verdict)
    throw Error(ErrorCode::PreconditionFailed, "'" + f.name + "' is not a double biequivalence");

  const auto& sa = *f.source;  // A
  const auto& tb = *f.target;  // B
  DblAnalysis ta(tb), saan(sa);

  PseudoDoubleFunctor G;
  G.name = "G(" + f.name + ")";
  G.source = f.target;
  G.target = f.source;
  G.obj.assign(tb.n_objects(), kNone);
  G.hmor.assign(tb.n_hmors(), kNone);
  G.vmor.assign(tb.n_vmors(), kNone);
  G.sq.assign(tb.n_squares(), kNone);

  // G and eps on objects: db1 choices with adjoint equivalence data
  // (eps_B, eps'_B, mu_B, nu_B).
  // eps_B runs FA -> B, so the db1 witness is taken with its source at an
  // image object.
  std::vector<HorEquivData> eps_data(tb.n_objects());
  for (Idx b = 0; b < tb.n_objects(); ++b) {
    bool found = false;
    for (Idx h = 0; h < tb.n_hmors() && !found; ++h) {
      if (tb.hmor(h).tgt != b) continue;
      for (Idx a = 0; a < sa.n_objects() && !found; ++a) {
        if (f.obj[a] != tb.hmor(h).src) continue;
        auto data = canonical_adjoint_equivalence(tb, h);
        if (!data) continue;
        G.obj[b] = a;
        eps_data[b] = *data;
        found = true;
      }
    }
    if (!found) throw Error(ErrorCode::ChoiceExhausted, "db1 choice failed", {tb.object(b)});
  }
  auto eps_of = [&](Idx b) { return eps_data[b].a; };
  auto epsp_of = [&](Idx b) { return eps_data[b].c; };
  auto mu_of = [&](Idx b) { return eps_data[b].eta; };
  auto nu_of = [&](Idx b) { return eps_data[b].eps; };

  // db4 preimage helper: the unique source square over `bd` mapping to beta.
  auto db4_preimage = [&](const Boundary& bd, Idx beta, const char* stage) {
    Idx found = kNone;
    for (Idx alpha : sa.squares_over(bd))
      if (f.sq[alpha] == beta) {
        if (found != kNone)
          throw Error(ErrorCode::ConstructionMismatch,
                      std::string("db4 preimage is not unique (") + stage + ")",
                      {sa.square(found).id, sa.square(alpha).id});
        found = alpha;
      }
    if (found == kNone)
      throw Error(ErrorCode::ConstructionMismatch,
                  std::string("db4 preimage is missing (") + stage + ")",
                  {tb.square(beta).id, sa.hmor(bd.top).id, sa.hmor(bd.bottom).id,
                   sa.vmor(bd.left).id, sa.vmor(bd.right).id});
    return found;
  };

  // G and eps on horizontal morphisms.
  std::vector<Idx> eps_bar(tb.n_hmors(), kNone);  // (eps_B ; b ; eps'_C  =>  F G b)
  std::vector<Idx> eps_h(tb.n_hmors(), kNone);    // (eps_B ; b  =>  F G b ; eps_C)
  for (Idx b = 0; b < tb.n_hmors(); ++b) {
    Idx B = tb.hmor(b).src, C = tb.hmor(b).tgt;
    if (tb.hmor(b).is_id) {
      G.hmor[b] = sa.id_hmor(G.obj[B]);
      eps_bar[b] = vertical_inverse(tb, mu_of(B));
    } else {
      Idx comp = tb.hcomp(tb.hcomp(eps_of(B), b), epsp_of(C));
      bool found = false;
      for (Idx m = 0; m < sa.n_hmors() && !found; ++m) {
        if (sa.hmor(m).src != G.obj[B] || sa.hmor(m).tgt != G.obj[C]) continue;
        Boundary bd{comp, f.hmor[m], tb.id_vmor(tb.hmor(comp).src),
                    tb.id_vmor(tb.hmor(comp).tgt)};
        for (Idx sq : tb.squares_over(bd))
          if (is_vertically_invertible(tb, sq)) {
            G.hmor[b] = m;
            eps_bar[b] = sq;
            found = true;
            break;
          }
      }
      if (!found) throw Error(ErrorCode::ChoiceExhausted, "db2 choice failed", {tb.hmor(b).id});
    }
    Idx nuC_inv = vertical_inverse(tb, nu_of(C));
    eps_h[b] = tb.sq_vcomp(
        tb.sq_hcomp(tb.e_square(tb.hcomp(eps_of(B), b)), nuC_inv),
        tb.sq_hcomp(eps_bar[b], tb.e_square(eps_of(C))));
  }

  // Horizontal comparators Phi.
  for (Idx b = 0; b < tb.n_hmors(); ++b)
    for (Idx d = 0; d < tb.n_hmors(); ++d) {
      if (!tb.hcomposable(b, d)) continue;
      Idx B = tb.hmor(b).src, C = tb.hmor(b).tgt, D = tb.hmor(d).tgt;
      Idx bd_comp = tb.hcomp(b, d);
      Idx r1 = tb.sq_hcomp(vertical_inverse(tb, eps_bar[b]), vertical_inverse(tb, eps_bar[d]));
      Idx r2 = tb.sq_hcomp(
          tb.e_square(tb.hcomp(eps_of(B), b)),
          tb.sq_hcomp(nu_of(C), tb.e_square(tb.hcomp(d, epsp_of(D)))));
      Idx theta = tb.sq_vcomp(r1, tb.sq_vcomp(r2, eps_bar[bd_comp]));
      Boundary want{sa.hcomp(G.hmor[b], G.hmor[d]), G.hmor[bd_comp],
                    sa.id_vmor(G.obj[B]), sa.id_vmor(G.obj[D])};
      G.phi[{b, d}] = db4_preimage(want, theta, "Phi");
    }

  // G and eps on vertical morphisms.
  std::vector<Idx> eps_v(tb.n_vmors(), kNone);   // (eps_B, eps_B', F G v, v)
  std::vector<Idx> epsp_v(tb.n_vmors(), kNone);  // its weak inverse
  for (Idx v = 0; v < tb.n_vmors(); ++v) {
    Idx B = tb.vmor(v).src, B2 = tb.vmor(v).tgt;
    if (tb.vmor(v).is_id) {
      G.vmor[v] = sa.id_vmor(G.obj[B]);
      eps_v[v] = tb.e_square(eps_of(B));
    } else {
      // db3 witness (u', gamma_v) with equivalences (b, d).
      Idx uprime = kNone, gamma_v = kNone, bh = kNone, dh = kNone;
      for (Idx u = 0; u < sa.n_vmors() && uprime == kNone; ++u) {
        Idx fa = f.obj[sa.vmor(u).src], fa2 = f.obj[sa.vmor(u).tgt];
        for (Idx h = 0; h < tb.n_hmors() && uprime == kNone; ++h) {
          if (tb.hmor(h).src != B || tb.hmor(h).tgt != fa || !ta.is_equiv(h)) continue;
          for (Idx h2 = 0; h2 < tb.n_hmors() && uprime == kNone; ++h2) {
            if (tb.hmor(h2).src != B2 || tb.hmor(h2).tgt != fa2 || !ta.is_equiv(h2)) continue;
            Boundary bd{h, h2, v, f.vmor[u]};
            for (Idx sq : tb.squares_over(bd))
              if (ta.whi_invertible(sq)) {
                uprime = u;
                gamma_v = sq;
                bh = h;
                dh = h2;
                break;
              }
          }
        }
      }
      if (uprime == kNone)
        throw Error(ErrorCode::ChoiceExhausted, "db3 choice failed", {tb.vmor(v).id});
      auto b_data = canonical_adjoint_equivalence(tb, bh);
      auto d_data = canonical_adjoint_equivalence(tb, dh);
      if (!b_data || !d_data)
        throw Error(ErrorCode::ChoiceExhausted, "db3 boundary data failed", {tb.vmor(v).id});
      Idx gamma_vp = weak_inverse(tb, gamma_v, *b_data, *d_data);
      // db2 lifts of eps_B ; b and eps_B' ; d.
      auto lift_along = [&](Idx composite, Idx src_obj, Idx tgt_obj, Idx* out_sq) {
        for (Idx m = 0; m < sa.n_hmors(); ++m) {
          if (sa.hmor(m).src != src_obj || sa.hmor(m).tgt != tgt_obj) continue;
          Boundary bd{composite, f.hmor[m], tb.id_vmor(tb.hmor(composite).src),
                      tb.id_vmor(tb.hmor(composite).tgt)};
          for (Idx sq : tb.squares_over(bd))
            if (is_vertically_invertible(tb, sq)) {
              *out_sq = sq;
              return m;
            }
        }
        throw Error(ErrorCode::ChoiceExhausted, "db2 lift failed", {tb.vmor(v).id});
      };
      Idx gamma_b = kNone, gamma_d = kNone;
      Idx a_h = lift_along(tb.hcomp(eps_of(B), bh), G.obj[B], sa.vmor(uprime).src, &gamma_b);
      Idx c_h = lift_along(tb.hcomp(eps_of(B2), dh), G.obj[B2], sa.vmor(uprime).tgt, &gamma_d);
      if (!saan.is_equiv(a_h) || !saan.is_equiv(c_h))
        throw Error(ErrorCode::ConstructionMismatch,
                    "db2 lift of an equivalence is not an equivalence", {tb.vmor(v).id});
      // whi lift in the source.
      Idx u = kNone, alpha_v = kNone;
      for (Idx cand = 0; cand < sa.n_vmors() && u == kNone; ++cand) {
        if (sa.vmor(cand).src != sa.hmor(a_h).src || sa.vmor(cand).tgt != sa.hmor(c_h).src)
          continue;
        Boundary bd{a_h, c_h, cand, uprime};
        for (Idx sq : sa.squares_over(bd))
          if (saan.whi_invertible(sq)) {
            u = cand;
            alpha_v = sq;
            break;
          }
      }
      if (u == kNone)
        throw Error(ErrorCode::ChoiceExhausted, "whi lift failed in the source",
                    {tb.vmor(v).id});
      G.vmor[v] = u;
      Idx r1 = tb.sq_hcomp(tb.e_square(eps_of(B)), b_data->eta);
      Idx r2 = tb.sq_hcomp(gamma_b, tb.e_square(b_data->c));
      Idx r3 = tb.sq_hcomp(f.sq[alpha_v], gamma_vp);
      Idx r4 = tb.sq_hcomp(vertical_inverse(tb, gamma_d), tb.e_square(d_data->c));
      Idx r5 = tb.sq_hcomp(tb.e_square(eps_of(B2)), vertical_inverse(tb, d_data->eta));
      eps_v[v] =
          tb.sq_vcomp(r1, tb.sq_vcomp(r2, tb.sq_vcomp(r3, tb.sq_vcomp(r4, r5))));
    }
    epsp_v[v] = weak_inverse(tb, eps_v[v], eps_data[B], eps_data[B2]);
  }

  // Vertical comparators Psi.
  for (Idx v = 0; v < tb.n_vmors(); ++v)
    for (Idx w = 0; w < tb.n_vmors(); ++w) {
      if (!tb.vcomposable(v, w)) continue;
      Idx B = tb.vmor(v).src, B3 = tb.vmor(w).tgt;
      Idx vw = tb.vcomp(v, w);
      Idx mid = tb.sq_hcomp(tb.sq_vcomp(eps_v[v], eps_v[w]), epsp_v[vw]);
      Idx omega = tb.sq_vcomp(mu_of(B), tb.sq_vcomp(mid, vertical_inverse(tb, mu_of(B3))));
      Boundary want{sa.id_hmor(G.obj[B]), sa.id_hmor(G.obj[B3]),
                    sa.vcomp(G.vmor[v], G.vmor[w]), G.vmor[vw]};
      G.psi[{v, w}] = db4_preimage(want, omega, "Psi");
    }

  // G on squares.
  for (Idx q = 0; q < tb.n_squares(); ++q) {
    const auto& bd = tb.square(q).bd;
    Idx delta = tb.sq_vcomp(
        vertical_inverse(tb, eps_bar[bd.top]),
        tb.sq_vcomp(tb.sq_hcomp(eps_v[bd.left], tb.sq_hcomp(q, epsp_v[bd.right])),
                    eps_bar[bd.bottom]));
    Boundary want{G.hmor[bd.top], G.hmor[bd.bottom], G.vmor[bd.left], G.vmor[bd.right]};
    G.sq[q] = db4_preimage(want, delta, "Gsq");
  }

  G.phi_unit.resize(tb.n_objects());
  G.psi_unit.resize(tb.n_objects());
  for (Idx o = 0; o < tb.n_objects(); ++o) {
    G.phi_unit[o] = sa.e_square(sa.id_hmor(G.obj[o]));
    G.psi_unit[o] = sa.id_square(sa.id_vmor(G.obj[o]));
  }
  G.normal = true;

  WhiteheadData out;
  out.G = G;

  auto fg = compose_strict_after_pseudo(f, G);
  auto id_b = strict_as_pseudo(identity_functor(f.target));

  out.eps.name = "eps";
  out.eps.from = fg;
  out.eps.to = id_b;
  out.eps.at_obj.resize(tb.n_objects());
  out.eps.at_hmor = eps_h;
  out.eps.at_vmor = eps_v;
  for (Idx b = 0; b < tb.n_objects(); ++b) out.eps.at_obj[b] = eps_of(b);

  out.eps_p.name = "eps'";
  out.eps_p.from = id_b;
  out.eps_p.to = fg;
  out.eps_p.at_obj.resize(tb.n_objects());
  out.eps_p.at_hmor.resize(tb.n_hmors());
  out.eps_p.at_vmor = epsp_v;
  for (Idx b = 0; b < tb.n_objects(); ++b) out.eps_p.at_obj[b] = epsp_of(b);
  for (Idx b = 0; b < tb.n_hmors(); ++b) {
    Idx B = tb.hmor(b).src, C = tb.hmor(b).tgt;
    Idx fgb = f.hmor[G.hmor[b]];
    Idx r1 = tb.sq_hcomp(tb.e_square(tb.hcomp(epsp_of(B), fgb)), mu_of(C));
    Idx r2 = tb.sq_hcomp(tb.e_square(epsp_of(B)),
                         tb.sq_hcomp(vertical_inverse(tb, eps_h[b]), tb.e_square(epsp_of(C))));
    Idx r3 = tb.sq_hcomp(nu_of(B), tb.e_square(tb.hcomp(b, epsp_of(C))));
    out.eps_p.at_hmor[b] = tb.sq_vcomp(r1, tb.sq_vcomp(r2, r3));
  }

  out.mu.name = "mu";
  out.mu.from = identity_hpnt(fg);
  out.mu.to = compose_hpnt(out.eps, out.eps_p);
  out.mu.at_obj.resize(tb.n_objects());
  for (Idx b = 0; b < tb.n_objects(); ++b) out.mu.at_obj[b] = mu_of(b);

  out.nu.name = "nu";
  out.nu.from = compose_hpnt(out.eps_p, out.eps);
  out.nu.to = identity_hpnt(id_b);
  out.nu.at_obj.resize(tb.n_objects());
  for (Idx b = 0; b < tb.n_objects(); ++b) out.nu.at_obj[b] = nu_of(b);

  // eta : id_A => GF via db2 against eps'_F.
  auto gf = compose_pseudo_after_strict(G, f);
  auto id_a = strict_as_pseudo(identity_functor(f.source));
  out.eta.name = "eta";
  out.eta.from = id_a;
  out.eta.to = gf;
  out.eta.at_obj.assign(sa.n_objects(), kNone);
  out.eta.at_hmor.assign(sa.n_hmors(), kNone);
  out.eta.at_vmor.assign(sa.n_vmors(), kNone);
  out.rho.assign(sa.n_objects(), kNone);
  for (Idx A = 0; A < sa.n_objects(); ++A) {
    Idx target_h = epsp_of(f.obj[A]);  // eps'_{FA} : FA -> FGFA
    bool found = false;
    for (Idx m = 0; m < sa.n_hmors() && !found; ++m) {
      if (sa.hmor(m).src != A || sa.hmor(m).tgt != G.obj[f.obj[A]]) continue;
      Boundary bd{target_h, f.hmor[m], tb.id_vmor(tb.hmor(target_h).src),
                  tb.id_vmor(tb.hmor(target_h).tgt)};
      for (Idx sq : tb.squares_over(bd))
        if (is_vertically_invertible(tb, sq)) {
          out.eta.at_obj[A] = m;
          out.rho[A] = sq;
          found = true;
          break;
        }
    }
    if (!found) throw Error(ErrorCode::ChoiceExhausted, "eta component failed", {sa.object(A)});
  }
  for (Idx a = 0; a < sa.n_hmors(); ++a) {
    Idx A = sa.hmor(a).src, C = sa.hmor(a).tgt;
    Idx fgfa = f.hmor[gf.hmor[a]];
    Idx r1 = tb.sq_hcomp(vertical_inverse(tb, out.rho[A]), tb.e_square(fgfa));
    Idx r2 = out.eps_p.at_hmor[f.hmor[a]];
    Idx r3 = tb.sq_hcomp(tb.e_square(f.hmor[a]), out.rho[C]);
    Idx psi_a = tb.sq_vcomp(r1, tb.sq_vcomp(r2, r3));
    Boundary want{sa.hcomp(out.eta.at_obj[A], gf.hmor[a]),
                  sa.hcomp(a, out.eta.at_obj[C]), sa.id_vmor(A),
                  sa.id_vmor(gf.obj[C])};
    out.eta.at_hmor[a] = db4_preimage(want, psi_a, "eta_hmor");
  }
  for (Idx u = 0; u < sa.n_vmors(); ++u) {
    Idx A = sa.vmor(u).src, A2 = sa.vmor(u).tgt;
    Idx psi_u = tb.sq_vcomp(
        vertical_inverse(tb, out.rho[A]),
        tb.sq_vcomp(out.eps_p.at_vmor[f.vmor[u]], out.rho[A2]));
    Boundary want{out.eta.at_obj[A], out.eta.at_obj[A2], u, gf.vmor[u]};
    out.eta.at_vmor[u] = db4_preimage(want, psi_u, "eta_vmor");
  }

  validate_pseudo_double_functor(out.G);
  validate_hpnt(out.eps);
  validate_hpnt(out.eps_p);
  validate_hpnt(out.eta);
  validate_modification(out.mu);
  validate_modification(out.nu);
  return out;
}

// ---------------------------------------------------------------------------
// Promotion and the theta lemma.

BiadjointData promote_whitehead(const DoubleFunctor& f, const WhiteheadData& w) {
  const auto& sa = *f.source;
  BiadjointData d;
  d.G = w.G;
  d.eps = w.eps;
  d.eps_p = w.eps_p;
  d.mu = w.mu;
  d.nu = w.nu;
  d.eta = w.eta;

  // Promote eta to an adjoint equivalence pair: eta'_A is the canonical
  // adjoint partner, eta'_a the mate of eta_a, eta'_u the unique weak inverse.
  std::vector<HorEquivData> eta_data(sa.n_objects());
  for (Idx A = 0; A < sa.n_objects(); ++A) {
    auto all = find_horizontal_equivalences(sa, w.eta.at_obj[A]);
    if (all.empty())
      throw Error(ErrorCode::ChoiceExhausted, "eta component is not an equivalence",
                  {sa.object(A)});
    bool ok = false;
    for (const auto& eq : all)
      if (eq.adjoint) {
        eta_data[A] = eq;
        ok = true;
        break;
      }
    if (!ok) eta_data[A] = promote_to_adjoint(sa, all.front());
  }

  d.eta_p.name = "eta'";
  d.eta_p.from = w.eta.to;  // GF
  d.eta_p.to = w.eta.from;  // id
  d.eta_p.at_obj.resize(sa.n_objects());
  d.eta_p.at_hmor.resize(sa.n_hmors());
  d.eta_p.at_vmor.resize(sa.n_vmors());
  for (Idx A = 0; A < sa.n_objects(); ++A) d.eta_p.at_obj[A] = eta_data[A].c;
  const auto& gf = w.eta.to;
  for (Idx a = 0; a < sa.n_hmors(); ++a) {
    Idx A = sa.hmor(a).src, C = sa.hmor(a).tgt;
    Idx etapA = eta_data[A].c, etapC = eta_data[C].c;
    Idx r1 = sa.sq_hcomp(sa.e_square(sa.hcomp(etapA, a)), eta_data[C].eta);
    Idx r2 = sa.sq_hcomp(
        sa.e_square(etapA),
        sa.sq_hcomp(vertical_inverse(sa, w.eta.at_hmor[a]), sa.e_square(etapC)));
    Idx r3 = sa.sq_hcomp(eta_data[A].eps, sa.e_square(sa.hcomp(gf.hmor[a], etapC)));
    d.eta_p.at_hmor[a] = sa.sq_vcomp(r1, sa.sq_vcomp(r2, r3));
  }
  for (Idx u = 0; u < sa.n_vmors(); ++u) {
    Idx A = sa.vmor(u).src, A2 = sa.vmor(u).tgt;
    d.eta_p.at_vmor[u] = weak_inverse(sa, w.eta.at_vmor[u], eta_data[A], eta_data[A2]);
  }
  validate_hpnt(d.eta_p);

  d.lambda.name = "lambda";
  d.lambda.from = identity_hpnt(w.eta.from);
  d.lambda.to = compose_hpnt(w.eta, d.eta_p);
  d.lambda.at_obj.resize(sa.n_objects());
  d.kappa.name = "kappa";
  d.kappa.from = compose_hpnt(d.eta_p, w.eta);
  d.kappa.to = identity_hpnt(w.eta.to);
  d.kappa.at_obj.resize(sa.n_objects());
  for (Idx A = 0; A < sa.n_objects(); ++A) {
    d.lambda.at_obj[A] = eta_data[A].eta;
    d.kappa.at_obj[A] = eta_data[A].eps;
  }
  validate_modification(d.lambda);
  validate_modification(d.kappa);

  // Theta : id_F ~ eps_F . F eta, built from rho and nu.
  const auto& tb = *f.target;
  d.Theta.name = "Theta";
  d.Theta.from = identity_hpnt(strict_as_pseudo(f));
  d.Theta.to = compose_hpnt(whisker_left(f, w.eta), whisker_right(w.eps, f));
  d.Theta.at_obj.resize(sa.n_objects());
  for (Idx A = 0; A < sa.n_objects(); ++A) {
    Idx FA = f.obj[A];
    Idx nuFA_inv = vertical_inverse(tb, w.nu.at_obj[FA]);
    d.Theta.at_obj[A] =
        tb.sq_vcomp(nuFA_inv, tb.sq_hcomp(w.rho[A], tb.e_square(w.eps.at_obj[FA])));
  }
  validate_modification(d.Theta);
  return d;
}

Modification theta_modification(const DoubleFunctor& f, const BiadjointData& data) {
  const auto& sa = *f.source;
  const auto& tb = *f.target;
  Modification theta;
  theta.name = "theta";
  theta.from = whisker_left(f, data.eta_p);
  theta.to = whisker_right(data.eps, f);
  theta.at_obj.resize(sa.n_objects());
  auto fkappa = whisker_left_mod(f, data.kappa);
  for (Idx A = 0; A < sa.n_objects(); ++A) {
    Idx FetapA = f.hmor[data.eta_p.at_obj[A]];
    Idx epsFA = data.eps.at_obj[f.obj[A]];
    Idx r1 = tb.sq_hcomp(tb.e_square(FetapA), data.Theta.at_obj[A]);
    Idx r2 = tb.sq_hcomp(fkappa.at_obj[A], tb.e_square(epsFA));
    theta.at_obj[A] = tb.sq_vcomp(r1, r2);
  }
  validate_modification(theta);
  if (!modification_invertible(theta))
    throw Error(ErrorCode::CoherenceViolation, "theta is not invertible");
  return theta;
}

CheckReport certify_horbieq_implies_dblbieq(const DoubleFunctor& f, const BiadjointData& data) {
  const auto& sa = *f.source;
  const auto& tb = *f.target;
  CheckReport rep;
  rep.check = "horbieq=>dblbieq";
  rep.subject = f.name;
  DblAnalysis ta(tb);

  auto mismatch = [&](const std::string& what, std::vector<std::string> cells) {
    throw Error(ErrorCode::ConstructionMismatch, what, std::move(cells));
  };

  auto theta = theta_modification(f, data);

  // (db1) eps'_B : B -> F G B.
  for (Idx b = 0; b < tb.n_objects(); ++b)
    if (!ta.is_equiv(data.eps_p.at_obj[b]))
      mismatch("db1 certificate is not an equivalence", {tb.object(b)});

  // (db2) a := eta_A ; G b ; eta'_C with the three-row pasting.
  for (Idx A = 0; A < sa.n_objects(); ++A)
    for (Idx C = 0; C < sa.n_objects(); ++C)
      for (Idx b = 0; b < tb.n_hmors(); ++b) {
        if (tb.hmor(b).src != f.obj[A] || tb.hmor(b).tgt != f.obj[C]) continue;
        Idx a = sa.hcomp(sa.hcomp(data.eta.at_obj[A], data.G.hmor[b]), data.eta_p.at_obj[C]);
        Idx ThetaA = data.Theta.at_obj[A];
        Idx r1 = tb.sq_hcomp(ThetaA, tb.e_square(b));
        Idx r2 = tb.sq_hcomp(tb.e_square(f.hmor[data.eta.at_obj[A]]),
                             data.eps.at_hmor[b]);
        Idx fgb = f.hmor[data.G.hmor[b]];
        Idx r3 = tb.sq_hcomp(
            tb.e_square(tb.hcomp(f.hmor[data.eta.at_obj[A]], fgb)),
            vertical_inverse(tb, theta.at_obj[C]));
        Idx cert = tb.sq_vcomp(r1, tb.sq_vcomp(r2, r3));
        Boundary want{b, f.hmor[a], tb.id_vmor(f.obj[A]), tb.id_vmor(f.obj[C])};
        if (tb.square(cert).bd != want)
          mismatch("db2 certificate has wrong boundary", {tb.hmor(b).id});
        if (!is_vertically_invertible(tb, cert))
          mismatch("db2 certificate is not invertible", {tb.hmor(b).id});
      }

  // (db3) u := G v with eps'_v.
  for (Idx v = 0; v < tb.n_vmors(); ++v) {
    Idx cert = data.eps_p.at_vmor[v];
    const auto& bd = tb.square(cert).bd;
    if (bd.left != v || bd.right != f.vmor[data.G.vmor[v]])
      mismatch("db3 certificate has wrong boundary", {tb.vmor(v).id});
    if (!ta.whi_invertible(cert))
      mismatch("db3 certificate is not weakly horizontally invertible", {tb.vmor(v).id});
  }

  // (db4) the five-row pasting gives the unique preimage.
  for (Idx top = 0; top < sa.n_hmors(); ++top)
    for (Idx bot = 0; bot < sa.n_hmors(); ++bot)
      for (Idx l = 0; l < sa.n_vmors(); ++l) {
        if (sa.vmor(l).src != sa.hmor(top).src || sa.vmor(l).tgt != sa.hmor(bot).src)
          continue;
        for (Idx r = 0; r < sa.n_vmors(); ++r) {
          if (sa.vmor(r).src != sa.hmor(top).tgt || sa.vmor(r).tgt != sa.hmor(bot).tgt)
            continue;
          Boundary sbd{top, bot, l, r};
          Boundary tbd = f.on_boundary(sbd);
          for (Idx beta : tb.squares_over(tbd)) {
            Idx A = sa.hmor(top).src, C = sa.hmor(top).tgt;
            Idx A2 = sa.hmor(bot).src, C2 = sa.hmor(bot).tgt;
            Idx gbeta = data.G.sq[beta];
            Idx r1 = sa.sq_hcomp(data.lambda.at_obj[A], sa.e_square(top));
            Idx r2 = sa.sq_hcomp(sa.e_square(data.eta.at_obj[A]), data.eta_p.at_hmor[top]);
            Idx r3 = sa.sq_hcomp(
                data.eta.at_vmor[l],
                sa.sq_hcomp(gbeta, data.eta_p.at_vmor[r]));
            Idx r4 = sa.sq_hcomp(sa.e_square(data.eta.at_obj[A2]),
                                 vertical_inverse(sa, data.eta_p.at_hmor[bot]));
            Idx r5 = sa.sq_hcomp(vertical_inverse(sa, data.lambda.at_obj[A2]),
                                 sa.e_square(bot));
            Idx alpha =
                sa.sq_vcomp(r1, sa.sq_vcomp(r2, sa.sq_vcomp(r3, sa.sq_vcomp(r4, r5))));
            if (sa.square(alpha).bd != sbd)
              mismatch("db4 certificate has wrong boundary", {tb.square(beta).id});
            if (f.sq[alpha] != beta)
              mismatch("db4 certificate does not map to the given square",
                       {tb.square(beta).id, sa.square(alpha).id});
            int count = 0;
            for (Idx other : sa.squares_over(sbd))
              if (f.sq[other] == beta) ++count;
            if (count != 1)
              mismatch("db4 uniqueness fails", {tb.square(beta).id});
            (void)C;
            (void)C2;
          }
        }
      }

  // Cross-check against the blind search.
  auto blind = is_double_biequivalence(f);
  if (!blind.verdict) mismatch("blind db search disagrees with the certificates", {});
  rep.flags.push_back("certified");
  return rep;
}

}  // namespace dbl

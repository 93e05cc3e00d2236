#include "dblcat/equivalence.hpp"

namespace dbl {

Idx vertical_inverse(const FinDoubleCategory& d, Idx sq) {
  const auto& bd = d.square(sq).bd;
  for (Idx cand = 0; cand < d.n_squares(); ++cand) {
    const auto& cb = d.square(cand).bd;
    if (cb.top != bd.bottom || cb.bottom != bd.top) continue;
    if (!d.vcomposable(bd.left, cb.left) || !d.vcomposable(bd.right, cb.right)) continue;
    if (!d.vmor(d.vcomp(bd.left, cb.left)).is_id) continue;
    if (!d.vmor(d.vcomp(bd.right, cb.right)).is_id) continue;
    if (!d.vmor(d.vcomp(cb.left, bd.left)).is_id) continue;
    if (!d.vmor(d.vcomp(cb.right, bd.right)).is_id) continue;
    if (d.sq_vcomp(sq, cand) == d.e_square(bd.top) &&
        d.sq_vcomp(cand, sq) == d.e_square(cb.top))
      return cand;
  }
  return kNone;
}

Idx horizontal_inverse(const FinDoubleCategory& d, Idx sq) {
  const auto& bd = d.square(sq).bd;
  for (Idx cand = 0; cand < d.n_squares(); ++cand) {
    const auto& cb = d.square(cand).bd;
    if (cb.left != bd.right || cb.right != bd.left) continue;
    if (!d.hcomposable(bd.top, cb.top) || !d.hcomposable(bd.bottom, cb.bottom)) continue;
    if (!d.hmor(d.hcomp(bd.top, cb.top)).is_id) continue;
    if (!d.hmor(d.hcomp(bd.bottom, cb.bottom)).is_id) continue;
    if (!d.hmor(d.hcomp(cb.top, bd.top)).is_id) continue;
    if (!d.hmor(d.hcomp(cb.bottom, bd.bottom)).is_id) continue;
    if (d.sq_hcomp(sq, cand) == d.id_square(bd.left) &&
        d.sq_hcomp(cand, sq) == d.id_square(cb.left))
      return cand;
  }
  return kNone;
}

std::vector<HorEquivData> find_horizontal_equivalences(const FinDoubleCategory& d, Idx a) {
  std::vector<HorEquivData> out;
  const auto& am = d.hmor(a);
  Idx ids = d.id_hmor(am.src), idt = d.id_hmor(am.tgt);
  for (Idx c = 0; c < d.n_hmors(); ++c) {
    const auto& cm = d.hmor(c);
    if (cm.src != am.tgt || cm.tgt != am.src) continue;
    Idx ac = d.hcomp(a, c), ca = d.hcomp(c, a);
    Boundary eta_bd{ids, ac, d.id_vmor(am.src), d.id_vmor(am.src)};
    Boundary eps_bd{ca, idt, d.id_vmor(am.tgt), d.id_vmor(am.tgt)};
    for (Idx eta : d.squares_over(eta_bd)) {
      if (!is_vertically_invertible(d, eta)) continue;
      for (Idx eps : d.squares_over(eps_bd)) {
        if (!is_vertically_invertible(d, eps)) continue;
        HorEquivData eq{a, c, eta, eps, false};
        eq.adjoint = triangle_identities_hold(d, eq);
        out.push_back(eq);
      }
    }
  }
  return out;
}

bool is_horizontal_equivalence(const FinDoubleCategory& d, Idx a) {
  return !find_horizontal_equivalences(d, a).empty();
}

std::optional<HorEquivData> canonical_adjoint_equivalence(const FinDoubleCategory& d, Idx a) {
  auto all = find_horizontal_equivalences(d, a);
  if (all.empty()) return std::nullopt;
  for (const auto& eq : all)
    if (eq.adjoint) return eq;
  return promote_to_adjoint(d, all.front());
}

bool triangle_identities_hold(const FinDoubleCategory& d, const HorEquivData& eq) {
  // (eta . a)(a . eps) = e_a  and  (c . eta)(eps . c) = e_c, pasted in squares.
  Idx t1 = d.sq_vcomp(d.sq_hcomp(eq.eta, d.e_square(eq.a)),
                      d.sq_hcomp(d.e_square(eq.a), eq.eps));
  if (t1 != d.e_square(eq.a)) return false;
  Idx t2 = d.sq_vcomp(d.sq_hcomp(d.e_square(eq.c), eq.eta),
                      d.sq_hcomp(eq.eps, d.e_square(eq.c)));
  return t2 == d.e_square(eq.c);
}

HorEquivData promote_to_adjoint(const FinDoubleCategory& d, const HorEquivData& eq) {
  Idx eta_inv = vertical_inverse(d, eq.eta);
  Idx eps_inv = vertical_inverse(d, eq.eps);
  if (eta_inv == kNone || eps_inv == kNone)
    throw Error(ErrorCode::NotAnEquivalence, "unit or counit square is not invertible",
                {d.square(eq.eta).id, d.square(eq.eps).id});
  const auto& am = d.hmor(eq.a);
  if (d.hmor(eq.c).src != am.tgt || d.hmor(eq.c).tgt != am.src)
    throw Error(ErrorCode::NotAnEquivalence, "weak inverse has wrong endpoints",
                {d.hmor(eq.a).id, d.hmor(eq.c).id});
  Idx ca = d.hcomp(eq.c, eq.a);
  // eps' := (c;a => c;a;c;a => c;a => id), built from eps^-1 and eta^-1.
  Idx step1 = d.sq_hcomp(d.e_square(ca), eps_inv);
  Idx step2 = d.sq_hcomp(d.e_square(eq.c), d.sq_hcomp(eta_inv, d.e_square(eq.a)));
  Idx eps2 = d.sq_vcomp(step1, d.sq_vcomp(step2, eq.eps));
  HorEquivData out{eq.a, eq.c, eq.eta, eps2, false};
  out.adjoint = triangle_identities_hold(d, out);
  if (!out.adjoint)
    throw Error(ErrorCode::NotAnEquivalence, "counit correction failed the triangle check",
                {d.hmor(eq.a).id});
  return out;
}

bool weak_inverse_equations_hold(const FinDoubleCategory& d, Idx alpha, Idx gamma,
                                 const HorEquivData& top, const HorEquivData& bottom) {
  const auto& ab = d.square(alpha).bd;
  const auto& gb = d.square(gamma).bd;
  if (gb.top != top.c || gb.bottom != bottom.c) return false;
  if (gb.left != ab.right || gb.right != ab.left) return false;
  // (E1)  eta over (alpha | gamma)  =  id_u over eta'
  Idx lhs1 = d.sq_vcomp(top.eta, d.sq_hcomp(alpha, gamma));
  Idx rhs1 = d.sq_vcomp(d.id_square(ab.left), bottom.eta);
  if (lhs1 != rhs1) return false;
  // (E2)  eps over id_w  =  (gamma | alpha) over eps'
  Idx lhs2 = d.sq_vcomp(top.eps, d.id_square(ab.right));
  Idx rhs2 = d.sq_vcomp(d.sq_hcomp(gamma, alpha), bottom.eps);
  return lhs2 == rhs2;
}

std::optional<WeakInvWitness> is_weakly_horizontally_invertible(const FinDoubleCategory& d,
                                                                Idx alpha) {
  const auto& bd = d.square(alpha).bd;
  auto tops = find_horizontal_equivalences(d, bd.top);
  if (tops.empty()) return std::nullopt;
  auto bottoms = find_horizontal_equivalences(d, bd.bottom);
  if (bottoms.empty()) return std::nullopt;
  for (const auto& top : tops)
    for (const auto& bottom : bottoms) {
      Boundary gbd{top.c, bottom.c, bd.right, bd.left};
      for (Idx gamma : d.squares_over(gbd))
        if (weak_inverse_equations_hold(d, alpha, gamma, top, bottom))
          return WeakInvWitness{gamma, top, bottom};
    }
  return std::nullopt;
}

std::vector<Idx> all_weak_inverses(const FinDoubleCategory& d, Idx alpha,
                                   const HorEquivData& top, const HorEquivData& bottom) {
  std::vector<Idx> out;
  const auto& bd = d.square(alpha).bd;
  Boundary gbd{top.c, bottom.c, bd.right, bd.left};
  for (Idx gamma : d.squares_over(gbd))
    if (weak_inverse_equations_hold(d, alpha, gamma, top, bottom)) out.push_back(gamma);
  return out;
}

Idx weak_inverse(const FinDoubleCategory& d, Idx alpha, const HorEquivData& top,
                 const HorEquivData& bottom) {
  if (!top.adjoint || !bottom.adjoint)
    throw Error(ErrorCode::PreconditionFailed, "weak_inverse needs adjoint equivalence data");
  auto all = all_weak_inverses(d, alpha, top, bottom);
  if (all.empty())
    throw Error(ErrorCode::NotInvertible, "no weak inverse for the given data",
                {d.square(alpha).id});
  if (all.size() > 1)
    throw Error(ErrorCode::NonUnique,
                "several weak inverses for fixed adjoint data; this contradicts uniqueness",
                {d.square(alpha).id, d.square(all[0]).id, d.square(all[1]).id});
  return all[0];
}

std::vector<TwoEquivData> find_equivalences_2(const FinTwoCategory& c, Idx f) {
  std::vector<TwoEquivData> out;
  const auto& fm = c.cell1(f);
  for (Idx g = 0; g < c.n_cells1(); ++g) {
    if (c.cell1(g).src != fm.tgt || c.cell1(g).tgt != fm.src) continue;
    for (Idx eta : c.cells2_between(c.id1(fm.src), c.comp1(f, g))) {
      if (!c.invertible2(eta)) continue;
      for (Idx eps : c.cells2_between(c.comp1(g, f), c.id1(fm.tgt))) {
        if (!c.invertible2(eps)) continue;
        out.push_back({f, g, eta, eps});
      }
    }
  }
  return out;
}

bool is_equivalence_2(const FinTwoCategory& c, Idx f) {
  return !find_equivalences_2(c, f).empty();
}

}  // namespace dbl

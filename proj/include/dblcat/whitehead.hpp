#pragma once

#include <map>

#include "dblcat/checks.hpp"
#include "dblcat/equivalence.hpp"
#include "dblcat/functors.hpp"

namespace dbl {

// A pseudo double functor: strict on boundaries, with vertically invertible
// horizontal comparators Phi and horizontally invertible vertical comparators
// Psi. The coherence laws checked by the validator are the seven pasting
// equations listed in validate_pseudo_double_functor.
struct PseudoDoubleFunctor {
  std::string name;
  DblPtr source, target;
  std::vector<Idx> obj, hmor, vmor, sq;
  // Phi[(b,d)] : (Gb ; Gd  =>  G(b;d)) for composable hmors, Phi_unit[B] :
  // (id_GB => G id_B); Psi transposed.
  std::map<std::pair<Idx, Idx>, Idx> phi;
  std::vector<Idx> phi_unit;
  std::map<std::pair<Idx, Idx>, Idx> psi;
  std::vector<Idx> psi_unit;
  bool normal = false;

  Idx phi_at(Idx b, Idx d) const { return phi.at({b, d}); }
  Idx psi_at(Idx v, Idx w) const { return psi.at({v, w}); }
  Boundary on_boundary(const Boundary& bd) const {
    return {hmor[bd.top], hmor[bd.bottom], vmor[bd.left], vmor[bd.right]};
  }
};

// Throws Error(CoherenceViolation) naming the failing axiom and cells.
void validate_pseudo_double_functor(const PseudoDoubleFunctor& g);

PseudoDoubleFunctor strict_as_pseudo(const DoubleFunctor& f);
bool same_pseudo(const PseudoDoubleFunctor& a, const PseudoDoubleFunctor& b);
// Composites with a strict functor on either side (pseudo-pseudo composition
// is not needed and not provided).
PseudoDoubleFunctor compose_pseudo_after_strict(const PseudoDoubleFunctor& g,
                                                const DoubleFunctor& f);
PseudoDoubleFunctor compose_strict_after_pseudo(const DoubleFunctor& f,
                                                const PseudoDoubleFunctor& g);

// Horizontal pseudo natural transformation  from => to  between pseudo double
// functors with common endpoints.
struct HPNT {
  std::string name;
  PseudoDoubleFunctor from, to;
  std::vector<Idx> at_obj;   // phi_B : hmor  from(B) -> to(B)
  std::vector<Idx> at_hmor;  // vertically invertible (phi_B ; to(b), from(b) ; phi_C, e, e)
  std::vector<Idx> at_vmor;  // (phi_B, phi_B', from(u), to(u))
};

void validate_hpnt(const HPNT& t);
HPNT identity_hpnt(const PseudoDoubleFunctor& f);
HPNT compose_hpnt(const HPNT& s, const HPNT& t);  // s then t
HPNT whisker_right(const HPNT& t, const DoubleFunctor& r);  // components at r(-)
HPNT whisker_left(const DoubleFunctor& s, const HPNT& t);   // s applied to components

// Equivalence certificate: components are horizontal equivalences and the
// vertical naturality squares are weakly horizontally invertible.
CheckReport is_hpne(const HPNT& t);

// Modification with trivial vertical boundaries.
struct Modification {
  std::string name;
  HPNT from, to;
  std::vector<Idx> at_obj;  // (from_B, to_B, e, e)
};

void validate_modification(const Modification& m);
bool modification_invertible(const Modification& m);
Modification whisker_left_mod(const DoubleFunctor& s, const Modification& m);

// The outcome of the constructive Whitehead inverse.
struct WhiteheadData {
  PseudoDoubleFunctor G;       // normal
  HPNT eps, eps_p;             // FG => id and id => FG, mutually adjoint
  Modification mu, nu;         // id ~ eps' . eps  and  eps . eps' ~ id
  HPNT eta;                    // id => GF, a horizontal pseudo natural equivalence
  std::vector<Idx> rho;        // db2 witnesses  (eps'_F A, F eta_A)  per object
};

// Follows the proof of the Whitehead theorem step by step, with canonical
// (id-lexicographic first) choices everywhere. Pre: F a double biequivalence
// with weakly horizontally invariant source.
WhiteheadData whitehead_inverse(const DoubleFunctor& f);

// Promotion of the inverse data to the F-side biadjoint biequivalence tuple:
// eta is promoted to an adjoint horizontal pseudo natural equivalence
// (eta, eta', lambda, kappa) and the triangle modification Theta : id_F ~
// eps_F . F eta is built from rho.
struct BiadjointData {
  PseudoDoubleFunctor G;
  HPNT eta, eta_p, eps, eps_p;
  Modification lambda, kappa, mu, nu, Theta;
};

BiadjointData promote_whitehead(const DoubleFunctor& f, const WhiteheadData& w);

// Lemma: the promotion data induces an invertible modification
// theta : F eta' ~ eps_F, built componentwise from (F kappa_A, Theta_A).
Modification theta_modification(const DoubleFunctor& f, const BiadjointData& data);

// Runs the proof of "horizontal biequivalence implies double biequivalence":
// db1-db4 certificates are constructed from the data (not searched) and
// cross-checked against the blind search. Throws ConstructionMismatch if a
// constructed certificate fails its defining property.
CheckReport certify_horbieq_implies_dblbieq(const DoubleFunctor& f, const BiadjointData& data);

}  // namespace dbl

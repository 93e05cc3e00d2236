#pragma once

#include <optional>
#include <vector>

#include "dblcat/core.hpp"

namespace dbl {

// Certificate that a horizontal morphism a is a horizontal equivalence:
// a weak inverse c with vertically invertible unit and counit squares
//   eta : (id_src(a), a;c, e, e)   and   eps : (c;a, id_tgt(a), e, e).
// `adjoint` records that both triangle identities hold.
struct HorEquivData {
  Idx a = kNone, c = kNone;
  Idx eta = kNone, eps = kNone;
  bool adjoint = false;

  friend bool operator==(const HorEquivData&, const HorEquivData&) = default;
};

// Vertical and horizontal invertibility of a square: an inverse square whose
// two composites are the identity squares on the shared boundaries.
Idx vertical_inverse(const FinDoubleCategory& d, Idx sq);    // kNone if none
Idx horizontal_inverse(const FinDoubleCategory& d, Idx sq);  // kNone if none
inline bool is_vertically_invertible(const FinDoubleCategory& d, Idx sq) {
  return vertical_inverse(d, sq) != kNone;
}
inline bool is_horizontally_invertible(const FinDoubleCategory& d, Idx sq) {
  return horizontal_inverse(d, sq) != kNone;
}

// All horizontal equivalence certificates for a, by exhaustive search in
// canonical order; empty means a is not a horizontal equivalence.
std::vector<HorEquivData> find_horizontal_equivalences(const FinDoubleCategory& d, Idx a);
bool is_horizontal_equivalence(const FinDoubleCategory& d, Idx a);
// First certificate in canonical order, promoted to adjoint.
std::optional<HorEquivData> canonical_adjoint_equivalence(const FinDoubleCategory& d, Idx a);

bool triangle_identities_hold(const FinDoubleCategory& d, const HorEquivData& eq);

// Keeps a and eta, corrects the counit so that both triangle identities hold.
// Throws Error(NotAnEquivalence) if the input data is not valid equivalence
// data to begin with.
HorEquivData promote_to_adjoint(const FinDoubleCategory& d, const HorEquivData& eq);

// Witness of Def "weakly horizontally invertible": the weak inverse gamma
// together with horizontal equivalence data for the two horizontal boundaries
// (whose unit/counit squares are the four invertible squares of the pasting
// equalities).
struct WeakInvWitness {
  Idx gamma = kNone;
  HorEquivData top;     // data for the top boundary a
  HorEquivData bottom;  // data for the bottom boundary a'
};

// The two pasting equalities, for given candidate data.
bool weak_inverse_equations_hold(const FinDoubleCategory& d, Idx alpha, Idx gamma,
                                 const HorEquivData& top, const HorEquivData& bottom);

// Exhaustive search over weak inverses and boundary data; first witness in
// canonical order, or nullopt.
std::optional<WeakInvWitness> is_weakly_horizontally_invertible(const FinDoubleCategory& d,
                                                                Idx alpha);

// The unique weak inverse with respect to fixed *adjoint* data. Throws
// NotInvertible if none exists and NonUnique if more than one does (which
// signals a model bug on valid input).
Idx weak_inverse(const FinDoubleCategory& d, Idx alpha, const HorEquivData& top,
                 const HorEquivData& bottom);
// All weak inverses for the given data, for oracle-style uniqueness tests.
std::vector<Idx> all_weak_inverses(const FinDoubleCategory& d, Idx alpha,
                                   const HorEquivData& top, const HorEquivData& bottom);

// 2-category-level equivalence certificates (used for quintets, Hsim and the
// Lack model structure checks).
struct TwoEquivData {
  Idx f = kNone, g = kNone;
  Idx eta = kNone, eps = kNone;  // invertible 2-cells id => f;g and g;f => id
  friend bool operator==(const TwoEquivData&, const TwoEquivData&) = default;
};
std::vector<TwoEquivData> find_equivalences_2(const FinTwoCategory& c, Idx f);
bool is_equivalence_2(const FinTwoCategory& c, Idx f);

}  // namespace dbl

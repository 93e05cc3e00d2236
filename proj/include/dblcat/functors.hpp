#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>

#include "dblcat/core.hpp"

namespace dbl {

using DblPtr = std::shared_ptr<const FinDoubleCategory>;
using TwoPtr = std::shared_ptr<const FinTwoCategory>;

// Structural identity of (immutable) categories, used to guard composition.
bool same_category(const FinDoubleCategory& a, const FinDoubleCategory& b);
bool same_category(const FinTwoCategory& a, const FinTwoCategory& b);

// Raw functor data: cell id -> cell id, total on the source.
struct RawMaps {
  std::map<std::string, std::string> objects, hmors, vmors, squares;
};

class DoubleFunctor {
 public:
  std::string name;
  DblPtr source, target;
  std::vector<Idx> obj, hmor, vmor, sq;  // index maps

  Idx on_obj(Idx i) const { return obj[i]; }
  Idx on_hmor(Idx i) const { return hmor[i]; }
  Idx on_vmor(Idx i) const { return vmor[i]; }
  Idx on_sq(Idx i) const { return sq[i]; }
  Boundary on_boundary(const Boundary& bd) const {
    return {hmor[bd.top], hmor[bd.bottom], vmor[bd.left], vmor[bd.right]};
  }
};

// Seals the maps after checking strict structure preservation. Throws
// Error(NotAFunctor) with the violated equation and witness cells.
DoubleFunctor validate_double_functor(DblPtr src, DblPtr tgt, const RawMaps& maps,
                                      std::string name = "F");

DoubleFunctor identity_functor(DblPtr d);
DoubleFunctor compose(const DoubleFunctor& f, const DoubleFunctor& g);  // f then g
// The unique functor to the terminal double category.
DoubleFunctor collapse_to_terminal(DblPtr d, DblPtr terminal);
// Inclusion of a sub-double-category built by generated_subdouble.
DoubleFunctor inclusion_functor(DblPtr sub, DblPtr whole, std::string name = "incl");
// Product projections.
DoubleFunctor product_projection(DblPtr prod, DblPtr factor, bool first);

class TwoFunctor {
 public:
  std::string name;
  TwoPtr source, target;
  std::vector<Idx> obj, c1, c2;

  Idx on_obj(Idx i) const { return obj[i]; }
  Idx on_c1(Idx i) const { return c1[i]; }
  Idx on_c2(Idx i) const { return c2[i]; }
};

struct RawTwoMaps {
  std::map<std::string, std::string> objects, cells1, cells2;
};

TwoFunctor validate_two_functor(TwoPtr src, TwoPtr tgt, const RawTwoMaps& maps,
                                std::string name = "F");
TwoFunctor identity_two_functor(TwoPtr c);
TwoFunctor compose(const TwoFunctor& f, const TwoFunctor& g);

// ---------------------------------------------------------------------------
// Embeddings and the homotopical horizontal embedding.

// Horizontal embedding: same objects and 1-cells, only identity verticals,
// squares the 2-cells. Satisfies underlying_horizontal_2cat(h_embed(A)) = A.
FinDoubleCategory h_embed(const FinTwoCategory& a);
FinDoubleCategory v_embed(const FinTwoCategory& a);

// An adjoint equivalence (u, usharp, eta, eps) in a 2-category, diagrammatic:
// eta : id => u;usharp and eps : usharp;u => id, both invertible, satisfying
// the triangle identities.
struct AdjEquiv {
  Idx u, usharp, eta, eps;
  friend bool operator==(const AdjEquiv&, const AdjEquiv&) = default;
  friend auto operator<=>(const AdjEquiv&, const AdjEquiv&) = default;
};

// All adjoint equivalence tuples of a 2-category, in canonical order.
std::vector<AdjEquiv> adjoint_equivalences(const FinTwoCategory& a);
bool is_adjoint_equivalence(const FinTwoCategory& a, const AdjEquiv& e);

// The double category H~(A) together with bookkeeping to address its cells.
struct HSim {
  DblPtr result;
  TwoPtr base;
  std::vector<AdjEquiv> verticals;            // index-aligned with result vmors
  std::vector<std::pair<Boundary, Idx>> squares;  // boundary + carrier 2-cell

  Idx vmor_of_tuple(const AdjEquiv& e) const;
  Idx square_of(const Boundary& bd, Idx carrier) const;
};

HSim h_sim(TwoPtr a);
// The inclusion J_A : h_embed(A) -> H~(A).
DoubleFunctor h_sim_inclusion(const HSim& hs, DblPtr embedded);
// Functoriality of H~ on a 2-functor.
DoubleFunctor apply_h_sim(const TwoFunctor& f, const HSim& src, const HSim& tgt);

// Quintet double category: both kinds of morphism are the 1-cells, squares
// the 2-cells w;a => u;a' read diagrammatically.
FinDoubleCategory quintet(const FinTwoCategory& a);

// ---------------------------------------------------------------------------
// Isomorphism search (backtracking, id-lexicographic candidate order).
std::optional<DoubleFunctor> find_isomorphism(DblPtr a, DblPtr b);

}  // namespace dbl

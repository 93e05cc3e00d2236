#pragma once

#include "dblcat/functors.hpp"

namespace dbl {

// A single generator move of an alternating word: a non-identity morphism of
// one factor at a fixed level (object) of the other factor.
struct GrayMove {
  bool left_factor;  // true: morphism of A at a level of X
  Idx mor;           // hmor/vmor index in its factor
  Idx level;         // object index in the other factor

  friend bool operator==(const GrayMove&, const GrayMove&) = default;
  friend auto operator<=>(const GrayMove&, const GrayMove&) = default;
};

using GrayWord = std::vector<GrayMove>;

// The Gray tensor of two double categories, realized on normal-form
// alternating words, with enough bookkeeping to project and to carve out
// sub-double-categories. Squares are stored as (boundary, pair of factor
// squares); this is exactly what full faithfulness of the projection pins
// down.
struct GrayTensor {
  DblPtr result;
  DblPtr left, right;
  std::vector<std::pair<Idx, Idx>> obj_pair;            // per result object
  std::vector<GrayWord> hwords, vwords;                 // per result hmor/vmor
  std::vector<std::pair<Idx, Idx>> hproj, vproj;        // composites in the factors
  std::vector<std::pair<Idx, Idx>> sq_pair;             // factor squares per square

  Idx hmor_of_word(Idx src_obj, const GrayWord& w) const;
  Idx vmor_of_word(Idx src_obj, const GrayWord& w) const;
};

// Builds the tensor. Word enumeration is breadth-first; if the factors are
// not progressive and a word exceeds `cap` moves, throws GrayTensorInfinite
// with the offending word as witness.
GrayTensor gray_tensor(DblPtr a, DblPtr x, int cap = 64);

// The projection to the cartesian product (which is built alongside and
// shares the ids produced by product()).
struct GrayProjection {
  DblPtr prod;
  DoubleFunctor pi;
};
GrayProjection projection(const GrayTensor& t);

// The canonical isomorphism A (x) X  ->  X (x) A given by swapping the two
// kinds of moves.
DoubleFunctor gray_symmetry(const GrayTensor& t, const GrayTensor& swapped);

// Tensor of two double functors on realized tensors (letterwise on words).
DoubleFunctor gray_tensor_functor(const DoubleFunctor& f, const DoubleFunctor& g,
                                  const GrayTensor& src, const GrayTensor& tgt);

// The image of the pushout-product of i : C -> D and j : E -> B inside
// the tensor of the targets: the sub-double-category generated by the cells
// of D (x) E and C (x) B. Requires i and j injective on all four sorts.
FinDoubleCategory boundary_tensor_image(const DoubleFunctor& i, const DoubleFunctor& j,
                                        const GrayTensor& t);

}  // namespace dbl

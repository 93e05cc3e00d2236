#pragma once

#include <string>
#include <vector>

#include "dblcat/functors.hpp"

namespace dbl::corpus {

// Built-in double categories, by name:
//   1        terminal
//   H2       free double category on a horizontal morphism
//   V2       free double category on a vertical morphism
//   S        free double category on a square
//   dS       boundary of S
//   S2       free double category on two squares with the same boundary
//   flat     strict isos a : A ~ C, a' : A' ~ C' and a lone vertical w : C -> C'
//   quintet:NAME   quintets of the 2-category NAME
//   hsim:NAME      homotopical horizontal embedding of NAME
//   h:NAME / v:NAME  horizontal/vertical embedding of NAME
// Built-in 2-categories, by name: 1, 2, I (walking isomorphism),
//   Cinv (free-living 2-isomorphism), disc1, disc2, E1 (walking retraction-free
//   pair f,g with no relations beyond typing is not finite, hence absent).
// Aliases: HsimI = hsim:I, QI = quintet:I.

std::vector<std::string> double_category_names();
std::vector<std::string> two_category_names();

DblPtr double_category(const std::string& name);
TwoPtr two_category(const std::string& name);

// The HSim bookkeeping for hsim:NAME (cached).
const HSim& hsim_of(const std::string& two_cat_name);

// Named double functors used by the test corpus and the CLI:
//   id:NAME            identity on double_category(NAME)
//   !:NAME             collapse NAME -> 1
//   incl:dS-S          boundary inclusion
//   i5:S2-S            the functor sending both squares of S2 to the square of S
//   J:NAME             inclusion h:NAME -> hsim:NAME
//   pr1:A,X / pr2:A,X  product projections
//   i1 i2 i3 i4 i5     the generating cofibrations of the model structure
std::vector<std::string> functor_names();
DoubleFunctor functor(const std::string& name);

// Named 2-functors:
//   id:NAME, !:NAME (collapse to 1), incl:2-I, incl:2-Cinv, swap:I, swap:Cinv,
//   pt0:1-2, pt1:1-2, pt0:1-I, collapse:I-2 is not a 2-functor and is absent.
std::vector<std::string> two_functor_names();
TwoFunctor two_functor(const std::string& name);

}  // namespace dbl::corpus

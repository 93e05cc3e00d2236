#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dblcat/equivalence.hpp"
#include "dblcat/functors.hpp"

namespace dbl {

struct Witness {
  std::string condition;            // db1..db4, df1..df3, whi, tf-*, ...
  std::vector<std::string> cells;   // offending cells, minimal in canonical order
  std::string note;
};

struct CheckReport {
  std::string check;
  std::string subject;
  bool verdict = true;
  std::vector<Witness> witnesses;   // non-empty whenever verdict is false
  std::vector<std::string> flags;   // e.g. Exact, DepthBounded, Unknown loci

  void fail(std::string condition, std::vector<std::string> cells, std::string note = "") {
    verdict = false;
    witnesses.push_back({std::move(condition), std::move(cells), std::move(note)});
  }
};

// Memoized per-category analysis shared by the searches below.
class DblAnalysis {
 public:
  explicit DblAnalysis(const FinDoubleCategory& d) : d_(d) {}

  const FinDoubleCategory& cat() const { return d_; }
  bool is_equiv(Idx hmor);
  const std::vector<HorEquivData>& equivs(Idx hmor);
  bool whi_invertible(Idx sq);
  const std::optional<WeakInvWitness>& whi_witness(Idx sq);

 private:
  const FinDoubleCategory& d_;
  std::map<Idx, std::vector<HorEquivData>> equivs_;
  std::map<Idx, std::optional<WeakInvWitness>> whi_;
};

// The model-structure checks. Each decides its condition by exhaustive search
// and reports the first (canonical) counterexample on failure.
CheckReport is_double_biequivalence(const DoubleFunctor& f);
CheckReport is_whi(const FinDoubleCategory& d);
CheckReport is_trivial_fibration(const DoubleFunctor& f);
CheckReport is_jw_injective(const DoubleFunctor& f);
CheckReport is_cofibrant(const FinDoubleCategory& d);
CheckReport is_biequivalence_2(const TwoFunctor& f);
CheckReport is_lack_fibration(const TwoFunctor& f);
// Precondition: the source is weakly horizontally invariant (throws
// SourceNotWhi otherwise); then equivalent to is_double_biequivalence.
CheckReport is_weak_equivalence_whi_source(const DoubleFunctor& f);

// Best-effort relative-freeness test for a functor of finite categories:
// injective on objects, faithful, and every morphism of the target factors
// uniquely as an alternating word of image morphisms and relatively
// indecomposable generators. This is a documented approximation of relative
// cofibrancy and is not part of the acceptance surface.
struct RelativeFreenessReport {
  bool free = false;
  std::vector<std::string> added_generators;
  std::string counterexample;
  std::string reason;
};
RelativeFreenessReport is_relatively_free(const FinCategory& src, const FinCategory& tgt,
                                          const std::vector<Idx>& mor_map,
                                          const std::vector<Idx>& obj_map);
// Applies the relative-freeness test to both underlying functors.
CheckReport is_relative_cofibration_best_effort(const DoubleFunctor& f);

// ---------------------------------------------------------------------------
// Generic double functor enumeration (used by the lifting-property oracle).

struct EnumerationPins {
  // Preassigned images by source index; kNone leaves the slot free.
  std::vector<Idx> obj, hmor, vmor, sq;
  // Additional pointwise restriction on candidate images.
  std::function<bool(char sort, Idx src_cell, Idx tgt_cell)> filter;
};

struct IndexMaps {
  std::vector<Idx> obj, hmor, vmor, sq;
};

// Calls cb for every strict double functor src -> tgt compatible with the
// pins; stops early when cb returns true. Returns whether cb ever did.
bool enumerate_double_functors(const FinDoubleCategory& src, const FinDoubleCategory& tgt,
                               const EnumerationPins& pins,
                               const std::function<bool(const IndexMaps&)>& cb);

// Right lifting property of f against i, by exhaustive enumeration of
// commutative squares and of lifts.
bool rlp_oracle(const DoubleFunctor& f, const DoubleFunctor& i);

}  // namespace dbl

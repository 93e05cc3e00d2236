#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dblcat/checks.hpp"
#include "dblcat/equivalence.hpp"
#include "dblcat/functors.hpp"

namespace dbl::whi {

// Letters of vertical words in the truncated replacement: base verticals of
// the underlying double category, or the generators u_e / v_e freely added
// for a horizontal adjoint equivalence datum e.
struct Letter {
  enum Kind { Base, GenU, GenV } kind = Base;
  Idx ref = kNone;  // vmor index (Base) or datum index (GenU/GenV)

  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

// A reduced vertical word anchored at its source object. Reduction composes
// adjacent base letters and cancels adjacent u_e/v_e pairs of one datum.
struct VWord {
  Idx src = kNone;
  std::vector<Letter> letters;

  bool empty() const { return letters.empty(); }
  int gen_count() const;
  friend bool operator==(const VWord&, const VWord&) = default;
  friend auto operator<=>(const VWord&, const VWord&) = default;
};

// A square of the replacement over single-letter word boundaries, represented
// by its base core: the square obtained by stripping generator letters with
// the freely added witnesses. Cores make equality and enumeration exact.
struct RepSquare {
  Idx top = kNone, bottom = kNone;  // base hmors (the replacement adds none)
  VWord left, right;                // single-letter words
  Idx core = kNone;                 // base square over the stripped boundary

  friend bool operator==(const RepSquare&, const RepSquare&) = default;
};

// A composite witness over word boundaries beyond the exactly-represented
// range: carries its boundary, a human-readable provenance, and whether every
// constituent was weakly horizontally invertible (which certifies the
// composite).
struct PastedSquare {
  Idx top = kNone, bottom = kNone;
  VWord left, right;
  bool whi_certified = false;
  std::string provenance;
};

using RepValue = std::variant<RepSquare, PastedSquare>;

enum class HomStatus { Present, Absent, Unknown };

std::vector<HorEquivData> enumerate_horeq(const FinDoubleCategory& d);

class Replacement {
 public:
  // Realizes the truncated weakly horizontally invariant replacement of d:
  // vertical words carry at most `depth` generator letters; square hom-sets
  // are exact over single-letter boundaries. Throws SaturationCapExceeded if
  // the word count passes `cap`.
  Replacement(DblPtr d, int depth, int cap = 20000);

  const FinDoubleCategory& base() const { return *base_; }
  DblPtr base_ptr() const { return base_; }
  int depth() const { return depth_; }
  const std::vector<HorEquivData>& horeq() const { return horeq_; }
  const std::vector<VWord>& verticals() const { return words_; }

  VWord reduce(Idx src, std::vector<Letter> letters) const;
  VWord word_of_base(Idx vmor) const;  // j on verticals
  Idx word_target(const VWord& w) const;
  Idx word_index(const VWord& w) const;  // kNone when beyond depth
  std::string word_id(const VWord& w) const;

  // Square hom-sets (exact for single-letter sides, Unknown otherwise).
  HomStatus hom_status(Idx top, Idx bottom, const VWord& l, const VWord& r) const;
  std::vector<RepSquare> squares_over(Idx top, Idx bottom, const VWord& l,
                                      const VWord& r) const;

  // j on squares; fully faithful over base boundaries by construction.
  RepSquare from_base(Idx base_square) const;
  std::optional<Idx> to_base(const RepSquare& sq) const;  // when all sides are base

  // Freely added witnesses and their weak inverses (closed-form cores).
  RepSquare alpha(Idx datum) const;        // (a_e, id, u_e, id-vert)
  RepSquare gamma(Idx datum) const;        // (c_e, id, v_e, id-vert)
  RepSquare alpha_weak_inverse(Idx datum) const;
  RepSquare gamma_weak_inverse(Idx datum) const;
  RepSquare e_square(Idx hmor) const;
  RepSquare id_square(const Letter& l) const;

  RepSquare hcomp(const RepSquare& x, const RepSquare& y) const;
  // Supported side junctions: identity-letter against anything, base against
  // base. Other patterns are not represented exactly; use paste_vertical.
  RepSquare vcomp(const RepSquare& x, const RepSquare& y) const;
  bool vcomp_supported(const RepSquare& x, const RepSquare& y) const;

  // Composite witness over arbitrary word boundaries; whi certification is
  // compositional (a pasting of weakly horizontally invertible squares).
  PastedSquare paste_vertical(const std::vector<RepValue>& column) const;

  // Weak horizontal invertibility of a represented square, decided within the
  // single-letter range by the pasting-equality search.
  bool whi_invertible(const RepSquare& sq) const;

 private:
  DblPtr base_;
  int depth_;
  std::vector<HorEquivData> horeq_;
  std::vector<VWord> words_;

  bool single_letter(const VWord& w) const { return w.letters.size() <= 1; }
  // Stripped vertical and the horizontal corrections of a single-letter side.
  Idx stripped_vmor(const VWord& w) const;
  Idx correct_top_left(const VWord& w, Idx top) const;
  Idx correct_top_right(Idx top, const VWord& w) const;
};

// j_D as data: identity on objects and horizontal morphisms; verticals embed
// as one-letter words, squares via from_base.
struct WhiReplacement {
  Replacement rep;
  // convenience mirrors of the spec fields
  int depth() const { return rep.depth(); }
};

WhiReplacement whi_truncated(DblPtr d, int depth, int cap = 20000);

// Def 2.5 on the realized object, by constructed lifts: for every pair of
// horizontal equivalences and every vertical word the canonical composite
// v_e' . w . u_e is proposed; configurations whose lift would exceed the
// depth are flagged Unknown.
CheckReport check_whi_truncated(const Replacement& rep);

// The explicit db3 lift along a composite of freely added vertical morphisms:
// given a double biequivalence f : A -> B, a pure-generator word v in the
// replacement of B and horizontal equivalences b : FA ~ B, b' : FA' ~ B',
// produces a source word u and the pasted witness square.
struct Db3Lift {
  VWord u;          // in the source replacement
  RepValue beta;    // witness over (b, b', u-image, v)
};
Db3Lift db3_lift_along_freely_added(const DoubleFunctor& f, const Replacement& src_rep,
                                    const Replacement& tgt_rep, const VWord& v, Idx b,
                                    Idx b2);

// Depth-k approximation of membership in the weak equivalences: exact (via
// the whi-source reduction) when the source is weakly horizontally
// invariant, depth-bounded otherwise.
CheckReport is_weak_equivalence_truncated(const DoubleFunctor& f, int depth);

}  // namespace dbl::whi

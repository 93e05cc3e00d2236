#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dblcat/error.hpp"

namespace dbl {

// Cells are addressed by index into the sealed tables; ids are opaque strings
// and the canonical order is lexicographic on ids. Composition is written in
// diagrammatic order throughout: hcomp(f, g) is "f then g".

using Idx = int;
inline constexpr Idx kNone = -1;

struct Boundary {
  Idx top = kNone;
  Idx bottom = kNone;
  Idx left = kNone;
  Idx right = kNone;

  friend bool operator==(const Boundary&, const Boundary&) = default;
  friend auto operator<=>(const Boundary&, const Boundary&) = default;
};

// Unchecked presentation of a double category, as parsed or hand-built.
// Composition tables list entries "lhs then rhs = result"; entries whose
// left or right operand is an identity (identity morphism for hcomp/vcomp,
// id_u for sq_hcomp, e_a for sq_vcomp) may be omitted and are derived.
struct DblPresentation {
  struct Mor {
    std::string id, src, tgt;
    bool is_id = false;
    friend bool operator==(const Mor&, const Mor&) = default;
  };
  struct Sq {
    std::string id, top, bottom, left, right;
    friend bool operator==(const Sq&, const Sq&) = default;
  };
  struct Comp {
    std::string lhs, rhs, result;
    friend bool operator==(const Comp&, const Comp&) = default;
  };

  std::string name;
  std::vector<std::string> objects;
  std::vector<Mor> hmors;
  std::vector<Mor> vmors;
  std::vector<Sq> squares;
  std::vector<Comp> hcomp;
  std::vector<Comp> vcomp;
  std::vector<Comp> sq_hcomp;
  std::vector<Comp> sq_vcomp;
  // Designated identity squares: e_a per horizontal morphism, id_u per
  // vertical morphism. e over an identity hmor and id over the matching
  // identity vmor must designate the same square.
  std::vector<std::pair<std::string, std::string>> e_squares;
  std::vector<std::pair<std::string, std::string>> id_squares;
};

class FinDoubleCategory {
 public:
  struct Mor {
    std::string id;
    Idx src, tgt;
    bool is_id;
  };
  struct Sq {
    std::string id;
    Boundary bd;
  };

  const std::string& name() const { return name_; }

  int n_objects() const { return static_cast<int>(objects_.size()); }
  int n_hmors() const { return static_cast<int>(hmors_.size()); }
  int n_vmors() const { return static_cast<int>(vmors_.size()); }
  int n_squares() const { return static_cast<int>(squares_.size()); }

  const std::string& object(Idx i) const { return objects_[i]; }
  const Mor& hmor(Idx i) const { return hmors_[i]; }
  const Mor& vmor(Idx i) const { return vmors_[i]; }
  const Sq& square(Idx i) const { return squares_[i]; }

  Idx object_index(std::string_view id) const;
  Idx hmor_index(std::string_view id) const;
  Idx vmor_index(std::string_view id) const;
  Idx square_index(std::string_view id) const;

  Idx id_hmor(Idx obj) const { return id_hmor_[obj]; }
  Idx id_vmor(Idx obj) const { return id_vmor_[obj]; }
  // Designated identity squares.
  Idx e_square(Idx hm) const { return e_square_[hm]; }
  Idx id_square(Idx vm) const { return id_square_[vm]; }
  Idx object_square(Idx obj) const { return e_square_[id_hmor_[obj]]; }

  bool hcomposable(Idx f, Idx g) const { return hmors_[f].tgt == hmors_[g].src; }
  bool vcomposable(Idx u, Idx v) const { return vmors_[u].tgt == vmors_[v].src; }
  Idx hcomp(Idx f, Idx g) const { return hcomp_[f * n_hmors() + g]; }
  Idx vcomp(Idx u, Idx v) const { return vcomp_[u * n_vmors() + v]; }

  bool sq_hcomposable(Idx a, Idx b) const {
    return squares_[a].bd.right == squares_[b].bd.left;
  }
  bool sq_vcomposable(Idx a, Idx b) const {
    return squares_[a].bd.bottom == squares_[b].bd.top;
  }
  Idx sq_hcomp(Idx a, Idx b) const { return sq_hcomp_[a * n_squares() + b]; }
  Idx sq_vcomp(Idx a, Idx b) const { return sq_vcomp_[a * n_squares() + b]; }

  // Squares sharing a boundary, in canonical (index) order.
  const std::vector<Idx>& squares_over(const Boundary& bd) const;

  // Fold a composable sequence left to right.
  Idx hcomp_chain(const std::vector<Idx>& fs) const;
  Idx vcomp_chain(const std::vector<Idx>& us) const;
  Idx sq_hcomp_chain(const std::vector<Idx>& row) const;
  Idx sq_vcomp_chain(const std::vector<Idx>& col) const;

  DblPresentation presentation() const;

  friend FinDoubleCategory validate_double_category(const DblPresentation& raw);

 private:
  std::string name_;
  std::vector<std::string> objects_;
  std::vector<Mor> hmors_;
  std::vector<Mor> vmors_;
  std::vector<Sq> squares_;
  std::vector<Idx> id_hmor_, id_vmor_;       // per object
  std::vector<Idx> e_square_, id_square_;    // per hmor / vmor
  std::vector<Idx> hcomp_, vcomp_;           // dense tables, kNone if not composable
  std::vector<Idx> sq_hcomp_, sq_vcomp_;
  std::map<std::string, Idx, std::less<>> obj_by_id_, hmor_by_id_, vmor_by_id_, sq_by_id_;
  std::map<Boundary, std::vector<Idx>> by_boundary_;
};

// Checks every axiom of a strict double category by table exhaustion and
// returns the sealed value. Throws Error with code DanglingReference,
// MissingComposite or AxiomViolation.
FinDoubleCategory validate_double_category(const DblPresentation& raw);

// ---------------------------------------------------------------------------
// Finite categories (used for the underlying-category ops and freeness).

struct FinCategory {
  struct Mor {
    std::string id;
    Idx src, tgt;
    bool is_id;
  };
  std::vector<std::string> objects;
  std::vector<Mor> mors;
  std::vector<Idx> id_mor;   // per object
  std::vector<Idx> comp;     // dense, diagrammatic

  bool composable(Idx f, Idx g) const { return mors[f].tgt == mors[g].src; }
  Idx compose(Idx f, Idx g) const { return comp[f * mors.size() + g]; }
};

struct FreenessReport {
  bool free = false;
  // When free: the ids of the generating (indecomposable) morphisms.
  std::vector<std::string> generators;
  // When not free: a morphism with zero or at least two factorizations into
  // indecomposables, plus a short explanation.
  std::string counterexample;
  std::string reason;
};

// True iff the indecomposable non-identity morphisms freely generate: the
// evaluation map from composable paths of indecomposables to non-identity
// morphisms is a bijection.
FreenessReport is_free_category(const FinCategory& cat);

// ---------------------------------------------------------------------------
// Finite 2-categories.

struct TwoPresentation {
  struct Cell1 {
    std::string id, src, tgt;
    bool is_id = false;
    friend bool operator==(const Cell1&, const Cell1&) = default;
  };
  struct Cell2 {
    std::string id, src, tgt;  // parallel 1-cells
    friend bool operator==(const Cell2&, const Cell2&) = default;
  };
  struct Comp {
    std::string lhs, rhs, result;
    friend bool operator==(const Comp&, const Comp&) = default;
  };

  std::string name;
  std::vector<std::string> objects;
  std::vector<Cell1> cells1;
  std::vector<Cell2> cells2;
  std::vector<Comp> comp1;    // diagrammatic
  std::vector<Comp> vcomp2;   // f=>g then g=>h
  std::vector<Comp> hcomp2;   // side-by-side, diagrammatic
  std::vector<std::pair<std::string, std::string>> id2;  // 1-cell -> identity 2-cell
};

class FinTwoCategory {
 public:
  struct Cell1 {
    std::string id;
    Idx src, tgt;
    bool is_id;
  };
  struct Cell2 {
    std::string id;
    Idx src, tgt;
  };

  const std::string& name() const { return name_; }
  int n_objects() const { return static_cast<int>(objects_.size()); }
  int n_cells1() const { return static_cast<int>(cells1_.size()); }
  int n_cells2() const { return static_cast<int>(cells2_.size()); }
  const std::string& object(Idx i) const { return objects_[i]; }
  const Cell1& cell1(Idx i) const { return cells1_[i]; }
  const Cell2& cell2(Idx i) const { return cells2_[i]; }

  Idx object_index(std::string_view id) const;
  Idx cell1_index(std::string_view id) const;
  Idx cell2_index(std::string_view id) const;

  Idx id1(Idx obj) const { return id1_[obj]; }
  Idx id2(Idx c1) const { return id2_[c1]; }

  bool composable1(Idx f, Idx g) const { return cells1_[f].tgt == cells1_[g].src; }
  Idx comp1(Idx f, Idx g) const { return comp1_[f * n_cells1() + g]; }
  bool vcomposable2(Idx a, Idx b) const { return cells2_[a].tgt == cells2_[b].src; }
  Idx vcomp2(Idx a, Idx b) const { return vcomp2_[a * n_cells2() + b]; }
  bool hcomposable2(Idx a, Idx b) const {
    return cells1_[cells2_[a].src].tgt == cells1_[cells2_[b].src].src;
  }
  Idx hcomp2(Idx a, Idx b) const { return hcomp2_[a * n_cells2() + b]; }

  // Whiskering, derived from hcomp2 with identity 2-cells.
  Idx whisker_l(Idx f, Idx a) const { return hcomp2(id2(f), a); }
  Idx whisker_r(Idx a, Idx g) const { return hcomp2(a, id2(g)); }

  // 2-cells from f to g, canonical order.
  const std::vector<Idx>& cells2_between(Idx f, Idx g) const;

  // Is the 2-cell invertible under vcomp2?
  bool invertible2(Idx a) const;
  Idx inverse2(Idx a) const;  // kNone if not invertible

  TwoPresentation presentation() const;

  friend FinTwoCategory validate_two_category(const TwoPresentation& raw);

 private:
  std::string name_;
  std::vector<std::string> objects_;
  std::vector<Cell1> cells1_;
  std::vector<Cell2> cells2_;
  std::vector<Idx> id1_, id2_;
  std::vector<Idx> comp1_, vcomp2_, hcomp2_;
  std::vector<Idx> inverse2_;
  std::map<std::string, Idx, std::less<>> obj_by_id_, c1_by_id_, c2_by_id_;
  std::map<std::pair<Idx, Idx>, std::vector<Idx>> parallel_;
};

FinTwoCategory validate_two_category(const TwoPresentation& raw);

// Forgetful truncations.
FinCategory underlying_category(const FinTwoCategory& c);
FinCategory underlying_horizontal_category(const FinDoubleCategory& d);
FinCategory underlying_vertical_category(const FinDoubleCategory& d);

// H D: objects and hmors of D, 2-cells the squares with identity vertical
// boundaries. V D is obtained via transpose.
FinTwoCategory underlying_horizontal_2cat(const FinDoubleCategory& d);
FinTwoCategory underlying_vertical_2cat(const FinDoubleCategory& d);

// ---------------------------------------------------------------------------
// Pasting.

// Rectangular grid of squares with cellwise matching boundaries; evaluation
// is fold-order independent by interchange.
struct PastingGrid {
  int rows = 0, cols = 0;
  std::vector<Idx> cells;  // row-major

  Idx at(int r, int c) const { return cells[r * cols + c]; }
};

// Composite of the grid; throws Error(IncompatibleGrid-style AxiomViolation)
// if adjacent edges do not match.
Idx paste(const FinDoubleCategory& d, const PastingGrid& g);

// ---------------------------------------------------------------------------
// Constructions on double categories.

FinDoubleCategory product(const FinDoubleCategory& a, const FinDoubleCategory& x);
FinDoubleCategory transpose(const FinDoubleCategory& d);

struct SeedCells {
  std::vector<std::string> objects, hmors, vmors, squares;
};

// Smallest sub-double-category containing the seed, closed under boundaries,
// identities and all four compositions. The result's cells keep their ids.
FinDoubleCategory generated_subdouble(const FinDoubleCategory& d, const SeedCells& seed);

}  // namespace dbl

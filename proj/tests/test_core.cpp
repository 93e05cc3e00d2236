#include "doctest.h"

#include <random>

#include "dblcat/core.hpp"
#include "dblcat/corpus.hpp"
#include "dblcat/functors.hpp"

using namespace dbl;

TEST_CASE("corpus presentations validate") {
  for (const auto& name : corpus::double_category_names()) {
    CAPTURE(name);
    CHECK_NOTHROW(corpus::double_category(name));
  }
  for (const auto& name : corpus::two_category_names()) {
    CAPTURE(name);
    CHECK_NOTHROW(corpus::two_category(name));
  }
}

TEST_CASE("V2 presentation is the free vertical morphism") {
  auto v2 = corpus::double_category("V2");
  CHECK(v2->n_objects() == 2);
  CHECK(v2->n_vmors() == 3);
  CHECK(v2->n_hmors() == 2);
  CHECK(v2->n_squares() == 3);
}

TEST_CASE("empty and terminal double categories validate") {
  auto empty = corpus::double_category("0");
  CHECK(empty->n_objects() == 0);
  auto term = corpus::double_category("1");
  CHECK(term->n_squares() == 1);
}

TEST_CASE("interchange violations are detected") {
  // Mutate sq_vcomp of S2 so that composing the doubled square along the two
  // directions disagrees; expect AxiomViolation with witness cells.
  auto p = corpus::double_category("S2")->presentation();
  // sq over sq is not composable in S2, so instead break a unit-adjacent
  // entry: redirect the composite of ea0 over sq to sq2.
  p.sq_vcomp.push_back({"ea0", "sq", "sq2"});
  try {
    validate_double_category(p);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AxiomViolation);
    CHECK(!e.witness().empty());
  }
}

TEST_CASE("missing composites are reported") {
  auto p = corpus::double_category("flat")->presentation();
  std::erase_if(p.hcomp, [](const auto& c) { return c.lhs == "a" && c.rhs == "ai"; });
  try {
    validate_double_category(p);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingComposite);
  }
}

TEST_CASE("dangling references are reported") {
  auto p = corpus::double_category("H2")->presentation();
  p.squares.push_back({"bad", "a", "a", "nope", "v1"});
  CHECK_THROWS_AS(validate_double_category(p), Error);
}

TEST_CASE("paste: singleton and unit grids") {
  auto s = corpus::double_category("S");
  Idx sq = s->square_index("sq");
  PastingGrid g1{1, 1, {sq}};
  CHECK(paste(*s, g1) == sq);

  // Vertical composite of e_a with itself is e_a (unit law).
  auto h2 = corpus::double_category("H2");
  Idx ea = h2->square_index("ea");
  PastingGrid g2{2, 1, {ea, ea}};
  CHECK(paste(*h2, g2) == ea);
}

TEST_CASE("paste: fold order independence on random grids") {
  // Oracle: evaluate a grid by an arbitrary interleaving of row/column folds
  // and compare with paste(). Grids are built from composable squares of the
  // product S*S, which has enough non-trivial squares.
  auto a = corpus::double_category("S");
  auto prod = std::make_shared<FinDoubleCategory>(product(*a, *a));
  std::mt19937 rng(20240817);

  auto random_grid = [&](int rows, int cols) -> std::optional<PastingGrid> {
    PastingGrid g{rows, cols, std::vector<Idx>(static_cast<size_t>(rows) * cols, kNone)};
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) {
        std::vector<Idx> cands;
        for (Idx s = 0; s < prod->n_squares(); ++s) {
          const auto& bd = prod->square(s).bd;
          if (c > 0 && prod->square(g.at(r, c - 1)).bd.right != bd.left) continue;
          if (r > 0 && prod->square(g.at(r - 1, c)).bd.bottom != bd.top) continue;
          cands.push_back(s);
        }
        if (cands.empty()) return std::nullopt;
        g.cells[r * cols + c] = cands[rng() % cands.size()];
      }
    return g;
  };

  // Independent oracle: fold columns first, then rows.
  auto column_major = [&](const PastingGrid& g) {
    std::vector<Idx> cols;
    for (int c = 0; c < g.cols; ++c) {
      std::vector<Idx> col;
      for (int r = 0; r < g.rows; ++r) col.push_back(g.at(r, c));
      cols.push_back(prod->sq_vcomp_chain(col));
    }
    return prod->sq_hcomp_chain(cols);
  };

  int done = 0;
  for (int trial = 0; trial < 200 && done < 40; ++trial) {
    int rows = 1 + static_cast<int>(rng() % 3);
    int cols = 1 + static_cast<int>(rng() % 3);
    auto g = random_grid(rows, cols);
    if (!g) continue;
    CHECK(paste(*prod, *g) == column_major(*g));
    ++done;
  }
  CHECK(done >= 20);
}

TEST_CASE("paste rejects incompatible grids") {
  auto s = corpus::double_category("S");
  PastingGrid g{1, 2, {s->square_index("sq"), s->square_index("sq")}};
  CHECK_THROWS_AS(paste(*s, g), Error);
}

TEST_CASE("product: H2 x V2 is isomorphic to S") {
  auto h2 = corpus::double_category("H2");
  auto v2 = corpus::double_category("V2");
  auto prod = std::make_shared<FinDoubleCategory>(product(*h2, *v2));
  auto s = corpus::double_category("S");
  CHECK(find_isomorphism(prod, s).has_value());
}

TEST_CASE("product: unit and square counts") {
  auto one = corpus::double_category("1");
  for (const auto& name : {"H2", "V2", "S", "flat"}) {
    auto a = corpus::double_category(name);
    auto prod = std::make_shared<FinDoubleCategory>(product(*a, *one));
    CHECK(find_isomorphism(prod, a).has_value());
  }
  // |squares(A*X)| = |squares(A)| * |squares(X)| on corpus pairs.
  for (const auto& an : {"H2", "S", "flat"})
    for (const auto& xn : {"V2", "S2"}) {
      auto a = corpus::double_category(an);
      auto x = corpus::double_category(xn);
      auto prod = product(*a, *x);
      CHECK(prod.n_squares() == a->n_squares() * x->n_squares());
      CHECK(prod.n_hmors() == a->n_hmors() * x->n_hmors());
    }
}

TEST_CASE("transpose is an involution and exchanges H2 and V2") {
  auto h2 = corpus::double_category("H2");
  auto v2 = corpus::double_category("V2");
  CHECK(find_isomorphism(std::make_shared<FinDoubleCategory>(transpose(*h2)), v2).has_value());
  auto s = corpus::double_category("S");
  CHECK(find_isomorphism(std::make_shared<FinDoubleCategory>(transpose(*s)), s).has_value());
  auto one = corpus::double_category("1");
  CHECK(find_isomorphism(std::make_shared<FinDoubleCategory>(transpose(*one)), one).has_value());
  for (const auto& name : {"S", "flat", "quintet:I"}) {
    auto d = corpus::double_category(name);
    auto tt = std::make_shared<FinDoubleCategory>(transpose(transpose(*d)));
    CHECK(same_category(*tt, *d));
  }
}

TEST_CASE("generated subdouble") {
  auto s = corpus::double_category("S");
  SUBCASE("all cells give the whole category") {
    SeedCells seed;
    for (Idx o = 0; o < s->n_objects(); ++o) seed.objects.push_back(s->object(o));
    for (Idx i = 0; i < s->n_squares(); ++i) seed.squares.push_back(s->square(i).id);
    auto sub = generated_subdouble(*s, seed);
    CHECK(same_category(sub, *s));
  }
  SUBCASE("one object gives the trivial sub") {
    SeedCells seed;
    seed.objects = {"00"};
    auto sub = generated_subdouble(*s, seed);
    CHECK(sub.n_objects() == 1);
    CHECK(sub.n_squares() == 1);
  }
  SUBCASE("boundary generators give dS") {
    SeedCells seed;
    seed.hmors = {"a0", "a1"};
    seed.vmors = {"b0", "b1"};
    auto sub = std::make_shared<FinDoubleCategory>(generated_subdouble(*s, seed));
    CHECK(find_isomorphism(sub, corpus::double_category("dS")).has_value());
  }
}

TEST_CASE("underlying 2-categories and categories") {
  auto h2 = corpus::double_category("H2");
  auto two = corpus::two_category("2");
  auto uh = std::make_shared<FinTwoCategory>(underlying_horizontal_2cat(*h2));
  CHECK(uh->n_objects() == two->n_objects());
  CHECK(uh->n_cells1() == two->n_cells1());
  CHECK(uh->n_cells2() == two->n_cells2());

  // H(V2) is the discrete two-object 2-category.
  auto v2 = corpus::double_category("V2");
  auto uv = underlying_horizontal_2cat(*v2);
  CHECK(uv.n_cells1() == 2);
  CHECK(uv.n_cells2() == 2);

  // H(S): squares with identity verticals are the e squares of the 6 hmors.
  auto s = corpus::double_category("S");
  auto us = underlying_horizontal_2cat(*s);
  CHECK(us.n_cells1() == 6);
  CHECK(us.n_cells2() == 6);

  auto cinv = corpus::two_category("Cinv");
  auto ucat = underlying_category(*cinv);
  int nonid = 0;
  for (const auto& m : ucat.mors) nonid += m.is_id ? 0 : 1;
  CHECK(nonid == 2);  // two parallel arrows
}

TEST_CASE("H(h_embed(A)) recovers A") {
  for (const auto& name : corpus::two_category_names()) {
    auto a = corpus::two_category(name);
    auto emb = h_embed(*a);
    auto back = underlying_horizontal_2cat(emb);
    CHECK(back.n_objects() == a->n_objects());
    CHECK(back.n_cells1() == a->n_cells1());
    CHECK(back.n_cells2() == a->n_cells2());
    for (Idx i = 0; i < a->n_cells1(); ++i) {
      Idx j = back.cell1_index(a->cell1(i).id);
      REQUIRE(j != kNone);
      for (Idx k = 0; k < a->n_cells1(); ++k)
        if (a->composable1(i, k)) {
          Idx jk = back.cell1_index(a->cell1(k).id);
          CHECK(back.cell1(back.comp1(j, jk)).id == a->cell1(a->comp1(i, k)).id);
        }
    }
  }
}

TEST_CASE("is_free_category") {
  SUBCASE("underlying categories of S are free") {
    auto s = corpus::double_category("S");
    CHECK(is_free_category(underlying_horizontal_category(*s)).free);
    CHECK(is_free_category(underlying_vertical_category(*s)).free);
  }
  SUBCASE("linear poset with the composite collapsed onto a declared arrow is free") {
    // 0 < 1 < 2 with hom(0,2) = {h} and g.f = h: the evaluation map from
    // generator paths {f, g, fg} is a bijection, so this is the free category
    // on the linear quiver.
    FinCategory c;
    c.objects = {"0", "1", "2"};
    c.mors = {{"e0", 0, 0, true}, {"e1", 1, 1, true}, {"e2", 2, 2, true},
              {"f", 0, 1, false}, {"g", 1, 2, false}, {"h", 0, 2, false}};
    c.id_mor = {0, 1, 2};
    c.comp.assign(36, kNone);
    auto set = [&](Idx a, Idx b, Idx r) { c.comp[a * 6 + b] = r; };
    for (Idx i = 0; i < 6; ++i)
      for (Idx j = 0; j < 6; ++j) {
        if (!c.composable(i, j)) continue;
        if (c.mors[i].is_id) set(i, j, j);
        else if (c.mors[j].is_id) set(i, j, i);
      }
    set(3, 4, 5);
    CHECK(is_free_category(c).free);
  }
  SUBCASE("commuting square has a non-unique factorization") {
    // Two parallel composable pairs with a shared composite d = g.f = g'.f'.
    FinCategory c;
    c.objects = {"0", "1", "2", "3"};
    c.mors = {{"e0", 0, 0, true},  {"e1", 1, 1, true},  {"e2", 2, 2, true},
              {"e3", 3, 3, true},  {"f", 0, 1, false},  {"fp", 0, 2, false},
              {"g", 1, 3, false},  {"gp", 2, 3, false}, {"d", 0, 3, false}};
    c.id_mor = {0, 1, 2, 3};
    const int n = 9;
    c.comp.assign(n * n, kNone);
    auto set = [&](Idx a, Idx b, Idx r) { c.comp[a * n + b] = r; };
    for (Idx i = 0; i < n; ++i)
      for (Idx j = 0; j < n; ++j) {
        if (!c.composable(i, j)) continue;
        if (c.mors[i].is_id) set(i, j, j);
        else if (c.mors[j].is_id) set(i, j, i);
      }
    set(4, 6, 8);  // g.f = d
    set(5, 7, 8);  // gp.fp = d
    auto rep = is_free_category(c);
    CHECK(!rep.free);
    CHECK(rep.counterexample == "d");
  }
  SUBCASE("idempotent endomorphism is not free") {
    FinCategory c;
    c.objects = {"x"};
    c.mors = {{"e", 0, 0, true}, {"m", 0, 0, false}};
    c.id_mor = {0};
    c.comp = {0, 1, 1, 1};  // e.e=e, e.m=m, m.e=m, m.m=m
    auto rep = is_free_category(c);
    CHECK(!rep.free);
    CHECK(rep.counterexample == "m");
  }
  SUBCASE("free monoid truncated is caught as non-free") {
    // One object, m with m.m = n, m.n = n.m = n.n = n: n is decomposable,
    // but n.m = n breaks unique factorization.
    FinCategory c;
    c.objects = {"x"};
    c.mors = {{"e", 0, 0, true}, {"m", 0, 0, false}, {"n", 0, 0, false}};
    c.id_mor = {0};
    c.comp.assign(9, kNone);
    auto set = [&](Idx a, Idx b, Idx r) { c.comp[a * 3 + b] = r; };
    set(0, 0, 0); set(0, 1, 1); set(0, 2, 2);
    set(1, 0, 1); set(2, 0, 2);
    set(1, 1, 2); set(1, 2, 2); set(2, 1, 2); set(2, 2, 2);
    auto rep = is_free_category(c);
    CHECK(!rep.free);
  }
}

TEST_CASE("corpus objects are cofibrant-style free on both sides") {
  for (const auto& name : {"1", "H2", "V2", "S", "dS", "S2"}) {
    auto d = corpus::double_category(name);
    CAPTURE(name);
    CHECK(is_free_category(underlying_horizontal_category(*d)).free);
    CHECK(is_free_category(underlying_vertical_category(*d)).free);
  }
}

TEST_CASE("single-entry mutations of valid tables are rejected") {
  // Mutation oracle for validate_double_category: redirect one composition
  // entry at a time and count detections.
  int total = 0, rejected = 0;
  for (const auto& name : {"S", "flat", "quintet:I"}) {
    auto base = corpus::double_category(name);
    auto p = base->presentation();
    auto try_mutated = [&](DblPresentation mut) {
      ++total;
      try {
        validate_double_category(mut);
      } catch (const Error&) {
        ++rejected;
      }
    };
    for (size_t i = 0; i < p.hcomp.size(); ++i)
      for (const auto& m : p.hmors) {
        if (m.id == p.hcomp[i].result) continue;
        auto mut = p;
        mut.hcomp[i].result = m.id;
        try_mutated(std::move(mut));
      }
    for (size_t i = 0; i < p.sq_hcomp.size() && i < 10; ++i)
      for (const auto& s : p.squares) {
        if (s.id == p.sq_hcomp[i].result) continue;
        auto mut = p;
        mut.sq_hcomp[i].result = s.id;
        try_mutated(std::move(mut));
      }
    for (size_t i = 0; i < p.e_squares.size(); ++i)
      for (const auto& s : p.squares) {
        if (s.id == p.e_squares[i].second) continue;
        auto mut = p;
        mut.e_squares[i].second = s.id;
        try_mutated(std::move(mut));
      }
  }
  CHECK(total > 0);
  CHECK(rejected == total);
}

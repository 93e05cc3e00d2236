#include "doctest.h"

#include "dblcat/corpus.hpp"
#include "dblcat/equivalence.hpp"
#include "dblcat/functors.hpp"

using namespace dbl;

TEST_CASE("validate_double_functor accepts and rejects") {
  auto s = corpus::double_category("S");
  CHECK_NOTHROW(identity_functor(s));
  CHECK_NOTHROW(corpus::functor("!:S"));

  // H2 -> H2 sending a to the identity on 0 breaks endpoint preservation.
  auto h2 = corpus::double_category("H2");
  RawMaps maps;
  maps.objects = {{"0", "0"}, {"1", "1"}};
  maps.hmors = {{"a", "h0"}, {"h0", "h0"}, {"h1", "h1"}};
  maps.vmors = {{"v0", "v0"}, {"v1", "v1"}};
  maps.squares = {{"ea", "s0"}, {"s0", "s0"}, {"s1", "s1"}};
  try {
    validate_double_functor(h2, h2, maps);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAFunctor);
    CHECK(!e.witness().empty());
  }
}

TEST_CASE("compose functors") {
  auto s = corpus::double_category("S");
  auto ds = corpus::double_category("dS");
  auto f = corpus::functor("incl:dS-S");
  auto to1 = corpus::functor("!:S");
  auto id_s = identity_functor(s);

  auto c1 = compose(f, id_s);
  CHECK(c1.obj == f.obj);
  CHECK(c1.sq == f.sq);
  auto c2 = compose(identity_functor(ds), f);
  CHECK(c2.hmor == f.hmor);

  auto c3 = compose(f, to1);
  auto direct = corpus::functor("!:dS");
  CHECK(c3.obj == direct.obj);
  CHECK(c3.hmor == direct.hmor);
  CHECK(c3.vmor == direct.vmor);
  CHECK(c3.sq == direct.sq);

  auto v2 = corpus::double_category("V2");
  CHECK_THROWS_AS(compose(to1, corpus::functor("!:V2")), Error);
  (void)v2;
}

TEST_CASE("h_embed gives H2, v_embed its transpose") {
  auto two = corpus::two_category("2");
  auto emb = std::make_shared<FinDoubleCategory>(h_embed(*two));
  CHECK(find_isomorphism(emb, corpus::double_category("H2")).has_value());
  auto vemb = std::make_shared<FinDoubleCategory>(v_embed(*two));
  CHECK(find_isomorphism(vemb, corpus::double_category("V2")).has_value());

  auto disc = corpus::two_category("disc2");
  auto de = h_embed(*disc);
  for (Idx v = 0; v < de.n_vmors(); ++v) CHECK(de.vmor(v).is_id);
}

TEST_CASE("adjoint equivalence enumeration in the walking isomorphism") {
  auto iso = corpus::two_category("I");
  auto tuples = adjoint_equivalences(*iso);
  // Independent oracle: quadruples with both triangle identities, counted by
  // brute force over all (u, usharp, eta, eps).
  int oracle = 0;
  for (Idx u = 0; u < iso->n_cells1(); ++u)
    for (Idx us = 0; us < iso->n_cells1(); ++us)
      for (Idx eta = 0; eta < iso->n_cells2(); ++eta)
        for (Idx eps = 0; eps < iso->n_cells2(); ++eps)
          if (is_adjoint_equivalence(*iso, {u, us, eta, eps})) ++oracle;
  CHECK(static_cast<int>(tuples.size()) == oracle);
  CHECK(tuples.size() == 4);  // two identities, (f,g,..), (g,f,..)

  bool has_fg = false, has_gf = false;
  for (const auto& t : tuples) {
    if (iso->cell1(t.u).id == "f" && iso->cell1(t.usharp).id == "g") has_fg = true;
    if (iso->cell1(t.u).id == "g" && iso->cell1(t.usharp).id == "f") has_gf = true;
  }
  CHECK(has_fg);
  CHECK(has_gf);
}

TEST_CASE("Hsim of the walking isomorphism") {
  const auto& hs = corpus::hsim_of("I");
  const auto& h = *hs.result;
  CHECK(h.n_vmors() == 4);

  // (g,f) after (f,g) composes to the identity vertical at 0.
  auto iso = hs.base;
  Idx f = iso->cell1_index("f"), g = iso->cell1_index("g");
  Idx vfg = kNone, vgf = kNone;
  for (Idx v = 0; v < h.n_vmors(); ++v) {
    if (hs.verticals[v].u == f) vfg = v;
    if (hs.verticals[v].u == g) vgf = v;
  }
  REQUIRE(vfg != kNone);
  REQUIRE(vgf != kNone);
  Idx comp = h.vcomp(vfg, vgf);
  CHECK(h.vmor(comp).is_id);
  CHECK(h.vmor(comp).src == h.object_index("0"));
}

TEST_CASE("Hsim of a discrete one-object 2-category is terminal") {
  auto hs = h_sim(corpus::two_category("disc1"));
  CHECK(find_isomorphism(hs.result, corpus::double_category("1")).has_value());
}

TEST_CASE("J_Cinv is bijective on verticals") {
  const auto& hs = corpus::hsim_of("Cinv");
  auto emb = corpus::double_category("h:Cinv");
  auto j = corpus::functor("J:Cinv");
  CHECK(hs.result->n_vmors() == emb->n_vmors());
  CHECK(j.source->n_vmors() == 2);
}

TEST_CASE("every vertical of HsimA is a vertical equivalence") {
  for (const auto& name : corpus::two_category_names()) {
    const auto& hs = corpus::hsim_of(name);
    auto vcat = underlying_vertical_2cat(*hs.result);
    for (Idx v = 0; v < hs.result->n_vmors(); ++v) {
      Idx c1 = vcat.cell1_index(hs.result->vmor(v).id);
      REQUIRE(c1 != kNone);
      CAPTURE(name);
      CAPTURE(hs.result->vmor(v).id);
      CHECK(is_equivalence_2(vcat, c1));
    }
  }
}

TEST_CASE("quintet double categories") {
  auto qd = quintet(*corpus::two_category("disc2"));
  CHECK(qd.n_squares() == 2);  // only the object squares

  auto q2 = quintet(*corpus::two_category("2"));
  CHECK(q2.n_vmors() == 3);
  // Oracle: squares of quintet(2) are the boundary tuples whose two composites
  // coincide, since 2 has only identity 2-cells.
  auto two = corpus::two_category("2");
  int oracle = 0;
  for (Idx top = 0; top < two->n_cells1(); ++top)
    for (Idx bot = 0; bot < two->n_cells1(); ++bot)
      for (Idx l = 0; l < two->n_cells1(); ++l)
        for (Idx r = 0; r < two->n_cells1(); ++r) {
          if (two->cell1(l).src != two->cell1(top).src) continue;
          if (two->cell1(l).tgt != two->cell1(bot).src) continue;
          if (two->cell1(r).src != two->cell1(top).tgt) continue;
          if (two->cell1(r).tgt != two->cell1(bot).tgt) continue;
          if (two->comp1(top, r) == two->comp1(l, bot)) ++oracle;
        }
  CHECK(q2.n_squares() == oracle);
}

TEST_CASE("apply_h_sim") {
  const auto& hsI = corpus::hsim_of("I");
  SUBCASE("identity maps to identity") {
    auto f = apply_h_sim(corpus::two_functor("id:I"), hsI, hsI);
    auto idf = identity_functor(hsI.result);
    CHECK(f.obj == idf.obj);
    CHECK(f.vmor == idf.vmor);
    CHECK(f.sq == idf.sq);
  }
  SUBCASE("collapse I -> 1 hits every vertical of Hsim(1)") {
    const auto& hs1 = corpus::hsim_of("1");
    auto f = apply_h_sim(corpus::two_functor("!:I"), hsI, hs1);
    for (Idx v = 0; v < hs1.result->n_vmors(); ++v) {
      bool hit = false;
      for (Idx u = 0; u < hsI.result->n_vmors(); ++u)
        if (f.vmor[u] == v) hit = true;
      CHECK(hit);
    }
  }
  SUBCASE("inclusion 2 -> I maps identity verticals to identity verticals") {
    const auto& hs2 = corpus::hsim_of("2");
    auto f = apply_h_sim(corpus::two_functor("incl:2-I"), hs2, hsI);
    for (Idx u = 0; u < hs2.result->n_vmors(); ++u)
      if (hs2.result->vmor(u).is_id) CHECK(hsI.result->vmor(f.vmor[u]).is_id);
  }
}

TEST_CASE("quintet and h_sim outputs validate for every corpus 2-category") {
  for (const auto& name : corpus::two_category_names()) {
    CAPTURE(name);
    CHECK_NOTHROW(corpus::double_category("quintet:" + name));
    CHECK_NOTHROW(corpus::double_category("hsim:" + name));
  }
}

#include "doctest.h"

#include "dblcat/checks.hpp"
#include "dblcat/corpus.hpp"
#include "dblcat/gray.hpp"

using namespace dbl;

TEST_CASE("is_double_biequivalence") {
  SUBCASE("identities pass") {
    for (const auto& name : {"1", "S", "quintet:I", "hsim:I"})
      CHECK(is_double_biequivalence(corpus::functor(std::string("id:") + name)).verdict);
  }
  SUBCASE("H2 -> 1 fails db2 at the reversed pair") {
    auto rep = is_double_biequivalence(corpus::functor("!:H2"));
    CHECK(!rep.verdict);
    REQUIRE(!rep.witnesses.empty());
    CHECK(rep.witnesses.front().condition == "db2");
    CHECK(rep.witnesses.front().cells.size() == 3);
  }
  SUBCASE("J_I is a double biequivalence") {
    CHECK(is_double_biequivalence(corpus::functor("J:I")).verdict);
  }
  SUBCASE("Hsim(I) -> 1 is a double biequivalence") {
    CHECK(is_double_biequivalence(corpus::functor("!:hsim:I")).verdict);
  }
}

TEST_CASE("is_whi") {
  SUBCASE("Hsim A is weakly horizontally invariant for every corpus 2-category") {
    for (const auto& name : corpus::two_category_names()) {
      CAPTURE(name);
      CHECK(is_whi(*corpus::double_category("hsim:" + name)).verdict);
    }
  }
  SUBCASE("H(I) is not weakly horizontally invariant, witness (f, id1, v1)") {
    auto rep = is_whi(*corpus::double_category("h:I"));
    CHECK(!rep.verdict);
    REQUIRE(!rep.witnesses.empty());
    bool found = false;
    for (const auto& w : rep.witnesses)
      if (w.cells.size() == 3 && w.cells[0] == "f") found = true;
    CHECK(found);
  }
  SUBCASE("flat double category fails at (a, ap, w)") {
    auto rep = is_whi(*corpus::double_category("flat"));
    CHECK(!rep.verdict);
    bool found = false;
    for (const auto& w : rep.witnesses)
      if (w.cells == std::vector<std::string>{"a", "ap", "w"}) found = true;
    CHECK(found);
  }
  SUBCASE("quintets are weakly horizontally invariant") {
    for (const auto& name : {"quintet:I", "quintet:2", "quintet:Cinv"}) {
      CAPTURE(name);
      CHECK(is_whi(*corpus::double_category(name)).verdict);
    }
  }
}

TEST_CASE("is_trivial_fibration") {
  SUBCASE("identities pass") {
    CHECK(is_trivial_fibration(corpus::functor("id:S")).verdict);
  }
  SUBCASE("boundary inclusion dS -> S fails square surjectivity") {
    auto rep = is_trivial_fibration(corpus::functor("incl:dS-S"));
    CHECK(!rep.verdict);
    bool sq_clause = false;
    for (const auto& w : rep.witnesses)
      if (w.condition == "tf-sq") sq_clause = true;
    CHECK(sq_clause);
  }
  SUBCASE("i5 : S2 -> S fails faithfulness") {
    auto rep = is_trivial_fibration(corpus::functor("i5"));
    CHECK(!rep.verdict);
  }
  SUBCASE("product projections are generally not full on morphisms") {
    // pr1 : H2 x V2 -> H2 cannot lift id_0 against the pair ((0|0), (0|1)).
    auto rep = is_trivial_fibration(corpus::functor("pr1:H2,V2"));
    CHECK(!rep.verdict);
  }
}

TEST_CASE("rlp oracle on the generating cofibrations") {
  auto i4 = corpus::functor("i4");
  CHECK(rlp_oracle(corpus::functor("id:S"), i4));
  CHECK(rlp_oracle(corpus::functor("!:S"), corpus::functor("i5")));
  // i4 detects the missing filler of the generating square.
  CHECK(!rlp_oracle(corpus::functor("incl:dS-S"), i4));
  // dS -> S is surjective on objects, so i1 lifts.
  CHECK(rlp_oracle(corpus::functor("incl:dS-S"), corpus::functor("i1")));
  // i5 detects non-faithfulness on squares.
  CHECK(!rlp_oracle(corpus::functor("i5"), corpus::functor("i5")));
}

TEST_CASE("oracle equivalence: trivial fibration iff rlp against i1..i5") {
  std::vector<DoubleFunctor> gens;
  for (const auto& g : {"i1", "i2", "i3", "i4", "i5"}) gens.push_back(corpus::functor(g));
  for (const auto& name : {"id:S", "id:hsim:I", "!:S", "!:H2", "!:1", "incl:dS-S", "i5",
                           "pr1:H2,V2", "J:I"}) {
    CAPTURE(name);
    auto f = corpus::functor(name);
    bool tf = is_trivial_fibration(f).verdict;
    bool lifts = true;
    for (const auto& g : gens)
      if (!rlp_oracle(f, g)) {
        lifts = false;
        break;
      }
    CHECK(tf == lifts);
  }
}

TEST_CASE("is_jw_injective") {
  SUBCASE("identity is injective") {
    CHECK(is_jw_injective(corpus::functor("id:S")).verdict);
  }
  SUBCASE("whi objects over the point") {
    CHECK(is_jw_injective(corpus::functor("!:hsim:I")).verdict);
    auto rep = is_jw_injective(corpus::functor("!:h:I"));
    CHECK(!rep.verdict);
    bool df3 = false;
    for (const auto& w : rep.witnesses)
      if (w.condition == "df3") df3 = true;
    CHECK(df3);
  }
}

TEST_CASE("whi iff jw-injective over the point, across the corpus") {
  for (const auto& name : corpus::double_category_names()) {
    if (name == "0") continue;  // the empty double category has no map issues
    CAPTURE(name);
    auto d = corpus::double_category(name);
    auto to1 = collapse_to_terminal(d, corpus::double_category("1"));
    CHECK(is_whi(*d).verdict == is_jw_injective(to1).verdict);
  }
}

TEST_CASE("is_cofibrant") {
  CHECK(is_cofibrant(*corpus::double_category("S")).verdict);
  CHECK(is_cofibrant(*corpus::double_category("1")).verdict);
  auto rep = is_cofibrant(*corpus::double_category("quintet:I"));
  CHECK(!rep.verdict);  // g.f = id is a relation
  CHECK(!rep.witnesses.empty());
}

TEST_CASE("2-category checks") {
  SUBCASE("identities") {
    CHECK(is_biequivalence_2(corpus::two_functor("id:I")).verdict);
    CHECK(is_lack_fibration(corpus::two_functor("id:I")).verdict);
  }
  SUBCASE("I -> 1 is a biequivalence, 2 -> 1 is not") {
    CHECK(is_biequivalence_2(corpus::two_functor("!:I")).verdict);
    auto rep = is_biequivalence_2(corpus::two_functor("!:2"));
    CHECK(!rep.verdict);
    REQUIRE(!rep.witnesses.empty());
    CHECK(rep.witnesses.front().condition == "b2");
  }
  SUBCASE("all 2-functors to the point are Lack fibrations") {
    for (const auto& name : {"!:2", "!:I", "!:Cinv", "!:disc2"})
      CHECK(is_lack_fibration(corpus::two_functor(name)).verdict);
  }
  SUBCASE("the inclusion 2 -> I is not a Lack fibration") {
    auto rep = is_lack_fibration(corpus::two_functor("incl:2-I"));
    CHECK(!rep.verdict);
    CHECK(rep.witnesses.front().condition == "lf1");
  }
}

TEST_CASE("weak equivalence with whi source") {
  CHECK(is_weak_equivalence_whi_source(corpus::functor("id:hsim:I")).verdict);
  CHECK(is_weak_equivalence_whi_source(corpus::functor("!:hsim:I")).verdict);
  CHECK_THROWS_AS(is_weak_equivalence_whi_source(corpus::functor("!:h:I")), Error);
}

TEST_CASE("trivial fibration implies double biequivalence on the corpus") {
  for (const auto& name : corpus::functor_names()) {
    CAPTURE(name);
    auto f = corpus::functor(name);
    if (is_trivial_fibration(f).verdict) CHECK(is_double_biequivalence(f).verdict);
  }
}

TEST_CASE("jw-injective and double biequivalence iff trivial fibration") {
  for (const auto& name : corpus::functor_names()) {
    CAPTURE(name);
    auto f = corpus::functor(name);
    bool lhs = is_jw_injective(f).verdict && is_double_biequivalence(f).verdict;
    CHECK(lhs == is_trivial_fibration(f).verdict);
  }
}

TEST_CASE("right induction: Lack fibration iff jw-injective Hsim image") {
  struct Case {
    const char* name;
    const char* src;
    const char* tgt;
  };
  std::vector<Case> cases = {
      {"id:1", "1", "1"},         {"id:2", "2", "2"},         {"id:I", "I", "I"},
      {"id:Cinv", "Cinv", "Cinv"},{"id:disc2", "disc2", "disc2"},
      {"!:2", "2", "1"},          {"!:I", "I", "1"},          {"!:Cinv", "Cinv", "1"},
      {"!:disc2", "disc2", "1"},  {"incl:2-I", "2", "I"},     {"incl:2-Cinv", "2", "Cinv"},
      {"swap:I", "I", "I"},       {"swap:Cinv", "Cinv", "Cinv"},
      {"pt0:1-2", "1", "2"},      {"pt1:1-2", "1", "2"},      {"incl:disc2-2", "disc2", "2"},
  };
  CHECK(cases.size() >= 10);
  for (const auto& c : cases) {
    CAPTURE(c.name);
    auto f = corpus::two_functor(c.name);
    auto hf = apply_h_sim(f, corpus::hsim_of(c.src), corpus::hsim_of(c.tgt));
    CHECK(is_lack_fibration(f).verdict == is_jw_injective(hf).verdict);
  }
}

TEST_CASE("best-effort relative freeness") {
  // The generating cofibrations are relative cofibrations.
  for (const auto& name : {"i2", "i3", "i4", "i5", "incl:dS-S"}) {
    CAPTURE(name);
    CHECK(is_relative_cofibration_best_effort(corpus::functor(name)).verdict);
  }
  // Inserting the point into h:I forces the relation g.f = id on the added
  // generators, so the extension is not relatively free.
  auto one = corpus::double_category("1");
  auto hi = corpus::double_category("h:I");
  RawMaps maps;
  maps.objects = {{"*", "0"}};
  maps.hmors = {{"h*", "f0"}};
  maps.vmors = {{"v*", "v:0"}};
  maps.squares = {{"s*", "i0"}};
  auto pt = validate_double_functor(one, hi, maps, "pt");
  auto rep = is_relative_cofibration_best_effort(pt);
  CHECK(!rep.verdict);
}

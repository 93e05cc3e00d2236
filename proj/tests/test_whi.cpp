#include "doctest.h"

#include "dblcat/corpus.hpp"
#include "dblcat/gray.hpp"
#include "dblcat/whi.hpp"

using namespace dbl;
using namespace dbl::whi;

TEST_CASE("enumerate_horeq") {
  auto v2 = corpus::double_category("V2");
  auto he = enumerate_horeq(*v2);
  for (const auto& e : he) CHECK(v2->hmor(e.a).is_id);
  CHECK(he.size() == 2);  // one identity datum per object

  auto hi = corpus::double_category("h:I");
  auto hei = enumerate_horeq(*hi);
  bool has_f = false, has_g = false;
  for (const auto& e : hei) {
    if (hi->hmor(e.a).id == "f") has_f = true;
    if (hi->hmor(e.a).id == "g") has_g = true;
  }
  CHECK(has_f);
  CHECK(has_g);

  auto one = corpus::double_category("1");
  CHECK(enumerate_horeq(*one).size() == 1);
}

TEST_CASE("depth 0 replacement is the base with identity unit") {
  auto flat = corpus::double_category("flat");
  auto wr = whi_truncated(flat, 0);
  CHECK(static_cast<int>(wr.rep.verticals().size()) == flat->n_vmors());
  for (Idx v = 0; v < flat->n_vmors(); ++v) {
    auto w = wr.rep.word_of_base(v);
    CHECK(wr.rep.word_index(w) != kNone);
  }
  // j is bijective on squares over base boundaries.
  for (Idx s = 0; s < flat->n_squares(); ++s) {
    auto r = wr.rep.from_base(s);
    auto back = wr.rep.to_base(r);
    REQUIRE(back.has_value());
    CHECK(*back == s);
  }
}

TEST_CASE("flat replacement at depth 1") {
  auto flat = corpus::double_category("flat");
  auto wr = whi_truncated(flat, 1);
  const auto& rep = wr.rep;

  // The generator for the datum of a exists, with its alpha witness.
  Idx datum = kNone;
  for (size_t i = 0; i < rep.horeq().size(); ++i)
    if (flat->hmor(rep.horeq()[i].a).id == "a") datum = static_cast<Idx>(i);
  REQUIRE(datum != kNone);
  VWord ue{flat->object_index("A"), {{Letter::GenU, datum}}};
  CHECK(rep.word_index(ue) != kNone);
  auto al = rep.alpha(datum);
  CHECK(rep.whi_invertible(al));

  // db3-style lift of the configuration (a, id_Cp, w) at depth 1: the word
  // w . u_e with the pasted witness alpha_e over id_w.
  Idx w = flat->vmor_index("w");
  auto lift_word = rep.reduce(flat->object_index("A"),
                              {{Letter::GenU, datum}, {Letter::Base, w}});
  CHECK(lift_word.gen_count() == 1);
  CHECK(rep.word_index(lift_word) != kNone);
  PastedSquare idw;
  idw.top = flat->id_hmor(flat->object_index("C"));
  idw.bottom = flat->id_hmor(flat->object_index("Cp"));
  idw.left = rep.word_of_base(w);
  idw.right = rep.word_of_base(w);
  idw.whi_certified = true;
  idw.provenance = "id_w";
  auto witness = rep.paste_vertical({RepValue{al}, RepValue{idw}});
  CHECK(witness.whi_certified);
  CHECK(witness.top == flat->hmor_index("a"));
  CHECK(witness.left == lift_word);

  // Lifting the failing base configuration (a, ap, w) needs depth 2: at
  // depth 1 it is flagged unknown, at depth 2 it is constructed.
  auto chk1 = check_whi_truncated(rep);
  CHECK(!chk1.verdict);
  bool base_config_flagged = false;
  for (const auto& fw : chk1.witnesses)
    if (fw.cells == std::vector<std::string>{"a", "ap", "[w]"}) base_config_flagged = true;
  CHECK(base_config_flagged);
  auto wr2 = whi_truncated(flat, 2);
  auto chk2 = check_whi_truncated(wr2.rep);
  // At depth 2 a pure-base configuration always fits (it needs at most two
  // fresh generators), so only generator-bearing words can remain undecided.
  for (const auto& fw : chk2.witnesses) {
    CHECK(fw.condition == "whi-depth");
    CHECK(fw.cells.back() != "[w]");
  }
}

TEST_CASE("replacement pasting calculus is coherent") {
  auto hi = corpus::double_category("h:I");
  auto wr = whi_truncated(hi, 1);
  const auto& rep = wr.rep;
  REQUIRE(!rep.horeq().empty());
  Idx datum = kNone;
  for (size_t i = 0; i < rep.horeq().size(); ++i)
    if (hi->hmor(rep.horeq()[i].a).id == "f") datum = static_cast<Idx>(i);
  REQUIRE(datum != kNone);

  auto al = rep.alpha(datum);
  SUBCASE("id squares act as units for hcomp") {
    Letter u{Letter::GenU, datum};
    auto idu = rep.id_square(u);
    auto left_unit = rep.hcomp(idu, al);
    CHECK(left_unit == al);
    auto gw = rep.alpha_weak_inverse(datum);
    auto right_unit = rep.hcomp(gw, idu);
    CHECK(right_unit == gw);
  }
  SUBCASE("e squares act as units for vcomp") {
    auto ef = rep.e_square(hi->hmor_index("f"));
    auto top_unit = rep.vcomp(ef, al);
    CHECK(top_unit == al);
  }
  SUBCASE("stripping alpha against its weak inverse gives the counit core") {
    auto gw = rep.alpha_weak_inverse(datum);
    auto comp = rep.hcomp(gw, al);  // over (c;a, id, id-word, u-then... )
    CHECK(comp.left.letters.empty());
    // by the pasting equality this is the counit of the datum
    CHECK(comp.core == rep.horeq()[datum].eps);
  }
  SUBCASE("the freely added witnesses are weakly horizontally invertible") {
    CHECK(rep.whi_invertible(rep.alpha(datum)));
    CHECK(rep.whi_invertible(rep.gamma(datum)));
    CHECK(rep.whi_invertible(rep.id_square({Letter::GenU, datum})));
  }
}

TEST_CASE("base configurations lift at depth 2 with no hard failures") {
  for (const auto& name : {"h:I", "h:Cinv", "V2", "flat"}) {
    CAPTURE(name);
    auto d = corpus::double_category(name);
    auto wr = whi_truncated(d, 2);
    auto chk = check_whi_truncated(wr.rep);
    for (const auto& fw : chk.witnesses) {
      CHECK(fw.condition == "whi-depth");
      // every undecided configuration involves freely added generators
      CHECK(fw.cells.back() != "[w]");
    }
  }
}

TEST_CASE("db3 lift along freely added verticals") {
  auto hi = corpus::double_category("h:I");
  auto f = identity_functor(hi);
  auto sr = whi_truncated(hi, 1).rep;
  auto tr = whi_truncated(hi, 1).rep;

  Idx datum = kNone;
  for (size_t i = 0; i < tr.horeq().size(); ++i)
    if (hi->hmor(tr.horeq()[i].a).id == "f") datum = static_cast<Idx>(i);
  REQUIRE(datum != kNone);

  SUBCASE("single generator lifts to a matching source generator") {
    VWord v{hi->object_index("0"), {{Letter::GenU, datum}}};
    Idx b = hi->id_hmor(hi->object_index("0"));
    Idx b2 = hi->id_hmor(hi->object_index("1"));
    auto lift = db3_lift_along_freely_added(f, sr, tr, v, b, b2);
    CHECK(lift.u.gen_count() == 1);
    REQUIRE(std::holds_alternative<RepSquare>(lift.beta));
    const auto& beta = std::get<RepSquare>(lift.beta);
    CHECK(beta.top == b);
    CHECK(beta.bottom == b2);
    CHECK(beta.right == v);
    CHECK(tr.whi_invertible(beta));
  }
  SUBCASE("empty word lifts trivially") {
    VWord v{hi->object_index("0"), {}};
    Idx b = hi->id_hmor(hi->object_index("0"));
    auto lift = db3_lift_along_freely_added(f, sr, tr, v, b, b);
    CHECK(lift.u.letters.empty());
  }
  SUBCASE("depth violations are reported") {
    VWord v{hi->object_index("0"),
            {{Letter::GenU, datum}, {Letter::GenU, kNone}}};  // malformed on purpose
    v.letters.pop_back();
    auto deep = VWord{hi->object_index("0"), {{Letter::GenU, datum}, {Letter::GenV, datum}}};
    (void)deep;  // reduces to the empty word; build a genuinely deep one below
    Idx other = kNone;
    for (size_t i = 0; i < tr.horeq().size(); ++i)
      if (hi->hmor(tr.horeq()[i].a).id == "g") other = static_cast<Idx>(i);
    REQUIRE(other != kNone);
    VWord two{hi->object_index("0"), {{Letter::GenU, datum}, {Letter::GenU, other}}};
    CHECK_THROWS_AS(
        db3_lift_along_freely_added(f, sr, tr, two, hi->id_hmor(hi->object_index("0")),
                                    hi->id_hmor(hi->object_index("0"))),
        Error);
  }
}

TEST_CASE("is_weak_equivalence_truncated") {
  SUBCASE("whi source delegates to the exact check") {
    auto rep = is_weak_equivalence_truncated(corpus::functor("!:hsim:I"), 2);
    CHECK(rep.verdict);
    REQUIRE(!rep.flags.empty());
    CHECK(rep.flags.front() == "Exact");
  }
  SUBCASE("trivial fibrations pass at every depth") {
    auto t = gray_tensor(corpus::double_category("H2"), corpus::double_category("V2"));
    auto pi = projection(t);
    REQUIRE(is_trivial_fibration(pi.pi).verdict);
    for (int depth : {0, 1, 2})
      CHECK(is_weak_equivalence_truncated(pi.pi, depth).verdict);
  }
  SUBCASE("H2 -> 1 fails with a db2 witness, exactly") {
    auto rep = is_weak_equivalence_truncated(corpus::functor("!:H2"), 2);
    CHECK(!rep.verdict);
    bool db2 = false;
    for (const auto& w : rep.witnesses)
      if (w.condition == "db2") db2 = true;
    CHECK(db2);
  }
  SUBCASE("j of a non-whi object is depth bounded") {
    // flat -> flat^whi is not even a functor we materialize; instead check
    // that a functor with non-whi source gets the DepthBounded flag.
    auto rep = is_weak_equivalence_truncated(corpus::functor("id:flat"), 1);
    bool depth_bounded = false;
    for (const auto& fl : rep.flags)
      if (fl == "DepthBounded") depth_bounded = true;
    CHECK(depth_bounded);
  }
}

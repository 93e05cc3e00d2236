#include "doctest.h"

#include "dblcat/corpus.hpp"
#include "dblcat/doc.hpp"

using namespace dbl;

TEST_CASE("corpus documents round-trip byte-identically") {
  for (const auto& name : corpus::double_category_names()) {
    CAPTURE(name);
    auto d = corpus::double_category(name);
    auto text = doc::serialize(*d);
    auto reparsed = validate_double_category(doc::parse_double(text));
    CHECK(doc::serialize(reparsed) == text);
  }
  for (const auto& name : corpus::two_category_names()) {
    CAPTURE(name);
    auto c = corpus::two_category(name);
    auto text = doc::serialize(*c);
    auto reparsed = validate_two_category(doc::parse_two(text));
    CHECK(doc::serialize(reparsed) == text);
  }
}

TEST_CASE("functor documents round-trip") {
  for (const auto& name : {"incl:dS-S", "J:I", "i5", "!:flat"}) {
    CAPTURE(name);
    auto f = corpus::functor(name);
    auto text = doc::serialize(f);
    auto g = doc::load_double_functor(text);
    CHECK(g.obj == f.obj);
    CHECK(g.hmor == f.hmor);
    CHECK(g.vmor == f.vmor);
    CHECK(g.sq == f.sq);
  }
}

TEST_CASE("the S document parses to the free double category on a square") {
  auto s = doc::load_double("corpus:S");
  CHECK(s->n_squares() == 9);
  Idx sq = s->square_index("sq");
  REQUIRE(sq != kNone);
  const auto& bd = s->square(sq).bd;
  CHECK(!s->hmor(bd.top).is_id);
  CHECK(!s->vmor(bd.left).is_id);
}

TEST_CASE("malformed documents raise ParseError with a line") {
  auto expect_parse_error = [](const std::string& text) {
    try {
      doc::parse_double(text);
      return false;
    } catch (const Error& e) {
      return e.code() == ErrorCode::ParseError;
    }
  };
  CHECK(expect_parse_error("dblcat X\nhcomp a b\nend\n"));      // arity
  CHECK(expect_parse_error("dblcat X\nobjects A\n"));            // missing end
  CHECK(expect_parse_error("dblcat X\nwhatever A B\nend\n"));    // unknown directive
  CHECK(expect_parse_error(""));                                  // empty
}

TEST_CASE("dangling ids are caught by validation, not parsing") {
  std::string text = "dblcat X\nobjects A\nhmor h A B identity\nend\n";
  auto p = doc::parse_double(text);
  CHECK_THROWS_AS(validate_double_category(p), Error);
}

TEST_CASE("machine report format is stable and invertible") {
  auto rep = is_whi(*corpus::double_category("h:I"));
  auto json1 = doc::render_report_json(rep);
  auto back = doc::parse_report_json(json1);
  CHECK(doc::render_report_json(back) == json1);
  CHECK(back.verdict == rep.verdict);
  CHECK(back.witnesses.size() == rep.witnesses.size());
}

TEST_CASE("multi-document functor text with local endpoints") {
  auto h2 = corpus::double_category("H2");
  std::string text = doc::serialize(*h2);
  text += doc::serialize(*corpus::double_category("1"));
  text +=
      "dblfunctor collapse\n"
      "source H2\n"
      "target 1\n"
      "obj 0 *\nobj 1 *\n"
      "hmor a h*\nhmor h0 h*\nhmor h1 h*\n"
      "vmor v0 v*\nvmor v1 v*\n"
      "sq ea s*\nsq s0 s*\nsq s1 s*\n"
      "end\n";
  auto f = doc::load_double_functor(text);
  CHECK(f.source->n_objects() == 2);
  CHECK(f.target->n_objects() == 1);
}

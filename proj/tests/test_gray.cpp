#include "doctest.h"

#include <set>

#include "dblcat/checks.hpp"
#include "dblcat/corpus.hpp"
#include "dblcat/gray.hpp"

using namespace dbl;

TEST_CASE("H2 (x) H2: words and the interchange square") {
  auto h2 = corpus::double_category("H2");
  auto t = gray_tensor(h2, h2);
  const auto& res = *t.result;
  CHECK(res.n_objects() == 4);
  // Exactly two horizontal morphisms across the diagonal.
  int diag = 0;
  Idx src = res.object_index("(0|0)"), tgt = res.object_index("(1|1)");
  std::vector<Idx> diags;
  for (Idx h = 0; h < res.n_hmors(); ++h)
    if (res.hmor(h).src == src && res.hmor(h).tgt == tgt) {
      ++diag;
      diags.push_back(h);
    }
  CHECK(diag == 2);
  // They are related by a vertically invertible square in both directions.
  REQUIRE(diags.size() == 2);
  Boundary bd{diags[0], diags[1], res.id_vmor(src), res.id_vmor(tgt)};
  REQUIRE(res.squares_over(bd).size() == 1);
  CHECK(is_vertically_invertible(res, res.squares_over(bd)[0]));
  // Total square count: one per parallel pair with equal projections.
  CHECK(res.n_squares() == 12);
}

TEST_CASE("unit: A (x) 1 is isomorphic to A") {
  auto one = corpus::double_category("1");
  for (const auto& name : {"H2", "V2", "S", "flat"}) {
    CAPTURE(name);
    auto a = corpus::double_category(name);
    auto t = gray_tensor(a, one);
    CHECK(find_isomorphism(t.result, a).has_value());
    // and the projection is an isomorphism-like trivial fibration
    auto pi = projection(t);
    CHECK(is_trivial_fibration(pi.pi).verdict);
  }
}

TEST_CASE("infinite tensors are reported with a growth witness") {
  // The delooped idempotent monoid {1, m} has a non-identity endomorphism,
  // so alternating words never reduce.
  TwoPresentation p;
  p.name = "M";
  p.objects = {"x"};
  p.cells1 = {{"e", "x", "x", true}, {"m", "x", "x", false}};
  p.comp1 = {{"m", "m", "m"}};
  p.cells2 = {{"ie", "e", "e"}, {"im", "m", "m"}};
  p.id2 = {{"e", "ie"}, {"m", "im"}};
  auto m2 = std::make_shared<FinTwoCategory>(validate_two_category(p));
  auto hm = std::make_shared<FinDoubleCategory>(h_embed(*m2));
  try {
    gray_tensor(hm, hm, 8);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GrayTensorInfinite);
    REQUIRE(!e.witness().empty());
    CHECK(e.witness()[0].find("m") != std::string::npos);
  }
}

TEST_CASE("projection is a trivial fibration for the corpus tensors") {
  auto h2 = corpus::double_category("H2");
  auto v2 = corpus::double_category("V2");
  for (auto [a, x] : {std::pair{h2, v2}, {h2, h2}, {v2, v2}}) {
    CAPTURE(a->name());
    CAPTURE(x->name());
    auto t = gray_tensor(a, x);
    auto pi = projection(t);
    CHECK(is_trivial_fibration(pi.pi).verdict);
    // structurally fully faithful on squares: counts match per boundary
    const auto& res = *t.result;
    for (Idx s = 0; s < res.n_squares(); ++s) {
      const auto& bd = res.square(s).bd;
      CHECK(static_cast<int>(res.squares_over(bd).size()) ==
            static_cast<int>(pi.pi.target->squares_over(pi.pi.on_boundary(bd)).size()));
    }
  }
}

TEST_CASE("word normal forms compose associatively and unitally") {
  auto h2 = corpus::double_category("H2");
  auto hi = corpus::double_category("h:I");
  auto t = gray_tensor(hi, h2);
  const auto& res = *t.result;
  // associativity and unitality are exactly the sealed category axioms,
  // which validate_double_category has already exhausted; spot-check the
  // normal forms of a mixed triple composite.
  Idx w1 = kNone;
  for (Idx h = 0; h < res.n_hmors(); ++h)
    if (t.hwords[h].size() == 3) w1 = h;
  if (w1 != kNone) {
    CHECK(res.hmor(w1).is_id == false);
  }
  CHECK(res.n_hmors() > hi->n_hmors());
}

TEST_CASE("symmetry: the word swap is an isomorphism") {
  auto h2 = corpus::double_category("H2");
  auto v2 = corpus::double_category("V2");
  for (auto [a, x] : {std::pair{h2, v2}, {h2, h2}}) {
    auto t = gray_tensor(a, x);
    auto s = gray_tensor(x, a);
    auto iso = gray_symmetry(t, s);
    CHECK(iso.source->n_squares() == iso.target->n_squares());
    // bijectivity on each sort
    std::set<Idx> hit(iso.sq.begin(), iso.sq.end());
    CHECK(static_cast<int>(hit.size()) == iso.source->n_squares());
  }
}

TEST_CASE("boundary tensor image of i2 against i2") {
  auto h2 = corpus::double_category("H2");
  auto t = gray_tensor(h2, h2);
  auto i2 = corpus::functor("i2");
  auto img = boundary_tensor_image(i2, i2, t);
  // Everything except the two squares over the full boundary.
  CHECK(img.n_objects() == t.result->n_objects());
  CHECK(img.n_hmors() == t.result->n_hmors());
  CHECK(img.n_vmors() == t.result->n_vmors());
  CHECK(img.n_squares() == t.result->n_squares() - 2);
  // Independent enumeration: the missing squares are exactly those whose
  // top and bottom are the two distinct diagonal words.
  const auto& res = *t.result;
  int missing = 0;
  for (Idx s = 0; s < res.n_squares(); ++s) {
    if (img.square_index(res.square(s).id) != kNone) continue;
    ++missing;
    const auto& bd = res.square(s).bd;
    CHECK(bd.top != bd.bottom);
    CHECK(t.hwords[bd.top].size() == 2);
    CHECK(t.hwords[bd.bottom].size() == 2);
  }
  CHECK(missing == 2);
}

TEST_CASE("boundary tensor image: i1 and i3 cases") {
  auto h2 = corpus::double_category("H2");
  auto v2 = corpus::double_category("V2");
  SUBCASE("empty left factor leaves the right image only") {
    auto t = gray_tensor(corpus::double_category("1"), h2);
    auto i1 = corpus::functor("i1");
    auto img = boundary_tensor_image(i1, corpus::functor("id:H2"), t);
    CHECK(img.n_objects() == t.result->n_objects());
    CHECK(img.n_squares() == t.result->n_squares());
  }
  SUBCASE("i3 against i3 gives the boundary of V2 (x) V2") {
    auto t = gray_tensor(v2, v2);
    auto i3 = corpus::functor("i3");
    auto img = boundary_tensor_image(i3, i3, t);
    CHECK(img.n_squares() == t.result->n_squares() - 2);
    CHECK(img.n_vmors() == t.result->n_vmors());
  }
  SUBCASE("non-injective inputs are rejected") {
    auto t = gray_tensor(h2, h2);
    CHECK_THROWS_AS(boundary_tensor_image(corpus::functor("i5"), corpus::functor("id:H2"), t),
                    Error);
  }
}

TEST_CASE("stability smoke test across the projection") {
  // For a double biequivalence F with finite tensors on both sides:
  // F x id a double biequivalence together with the two projections being
  // trivial fibrations forces F (x) id to be one too.
  auto h2 = corpus::double_category("H2");
  auto hi = corpus::double_category("h:I");
  auto hsimI = corpus::double_category("hsim:I");
  auto f = corpus::functor("J:I");  // h:I -> hsim:I, a double biequivalence

  auto src = gray_tensor(hi, h2);
  auto tgt = gray_tensor(hsimI, h2);
  auto fid = gray_tensor_functor(f, identity_functor(h2), src, tgt);

  auto fxid_prod = [&] {
    auto sp = projection(src);
    auto tp = projection(tgt);
    // product functor F x id on the cartesian product
    RawMaps maps;
    const auto& s = *sp.prod;
    const auto& t2 = *tp.prod;
    auto split = [&](const std::string& id) {
      int depth = 0;
      for (size_t i = 1; i + 1 < id.size(); ++i) {
        if (id[i] == '(') ++depth;
        else if (id[i] == ')') --depth;
        else if (id[i] == '|' && depth == 0)
          return std::pair<std::string, std::string>{id.substr(1, i - 1),
                                                     id.substr(i + 1, id.size() - i - 2)};
      }
      throw Error(ErrorCode::Internal, "bad pair id");
    };
    auto map_pair = [&](const std::string& id, auto which) {
      auto [l, r] = split(id);
      return "(" + which(l) + "|" + r + ")";
    };
    for (Idx o = 0; o < s.n_objects(); ++o)
      maps.objects[s.object(o)] = map_pair(s.object(o), [&](const std::string& l) {
        return hsimI->object(f.obj[hi->object_index(l)]);
      });
    for (Idx h = 0; h < s.n_hmors(); ++h)
      maps.hmors[s.hmor(h).id] = map_pair(s.hmor(h).id, [&](const std::string& l) {
        return hsimI->hmor(f.hmor[hi->hmor_index(l)]).id;
      });
    for (Idx v = 0; v < s.n_vmors(); ++v)
      maps.vmors[s.vmor(v).id] = map_pair(s.vmor(v).id, [&](const std::string& l) {
        return hsimI->vmor(f.vmor[hi->vmor_index(l)]).id;
      });
    for (Idx q = 0; q < s.n_squares(); ++q)
      maps.squares[s.square(q).id] = map_pair(s.square(q).id, [&](const std::string& l) {
        return hsimI->square(f.sq[hi->square_index(l)]).id;
      });
    return validate_double_functor(sp.prod, tp.prod, maps, "Fxid");
  }();

  bool prod_bieq = is_double_biequivalence(fxid_prod).verdict;
  bool pi_src = is_trivial_fibration(projection(src).pi).verdict;
  bool pi_tgt = is_trivial_fibration(projection(tgt).pi).verdict;
  if (prod_bieq && pi_src && pi_tgt) CHECK(is_double_biequivalence(fid).verdict);
}

#include "doctest.h"

#include "dblcat/corpus.hpp"
#include "dblcat/whitehead.hpp"

using namespace dbl;

namespace {

std::vector<DoubleFunctor> whi_source_biequivalences() {
  // Corpus double biequivalences with weakly horizontally invariant source.
  std::vector<DoubleFunctor> out;
  for (const auto& name : {"id:hsim:I", "!:hsim:I", "id:hsim:Cinv", "!:quintet:I",
                           "id:quintet:I", "id:1"})
    out.push_back(corpus::functor(name));
  out.push_back(apply_h_sim(corpus::two_functor("swap:I"), corpus::hsim_of("I"),
                            corpus::hsim_of("I")));
  out.push_back(apply_h_sim(corpus::two_functor("swap:Cinv"), corpus::hsim_of("Cinv"),
                            corpus::hsim_of("Cinv")));
  return out;
}

}  // namespace

TEST_CASE("strict functors are valid normal pseudo functors") {
  for (const auto& name : {"id:S", "!:S", "incl:dS-S", "J:I"}) {
    CAPTURE(name);
    auto g = strict_as_pseudo(corpus::functor(name));
    CHECK_NOTHROW(validate_pseudo_double_functor(g));
    CHECK(g.normal);
  }
}

TEST_CASE("broken comparators are detected") {
  auto f = corpus::functor("id:hsim:I");
  auto g = strict_as_pseudo(f);
  // redirect one Phi entry to a wrongly-shaped square
  const auto& s = *f.source;
  for (auto& [k, v] : g.phi) {
    // pick some other square with a different boundary
    for (Idx q = 0; q < s.n_squares(); ++q)
      if (s.square(q).bd != s.square(v).bd) {
        v = q;
        break;
      }
    break;
  }
  CHECK_THROWS_AS(validate_pseudo_double_functor(g), Error);
}

TEST_CASE("identity transformations validate and are equivalences") {
  auto f = strict_as_pseudo(corpus::functor("id:hsim:I"));
  auto t = identity_hpnt(f);
  CHECK_NOTHROW(validate_hpnt(t));
  CHECK(is_hpne(t).verdict);
}

TEST_CASE("whitehead_inverse on identities gives an identity-like inverse") {
  auto f = corpus::functor("id:hsim:I");
  auto w = whitehead_inverse(f);
  CHECK(w.G.normal);
  // The canonical first witness need not be the identity equivalence, but
  // each G B comes with an equivalence onto B.
  for (Idx b = 0; b < f.target->n_objects(); ++b)
    CHECK(is_horizontal_equivalence(*f.target, w.eps.at_obj[b]));
  CHECK(is_hpne(w.eps).verdict);
  CHECK(is_hpne(w.eps_p).verdict);
  CHECK(is_hpne(w.eta).verdict);
  CHECK(modification_invertible(w.mu));
  CHECK(modification_invertible(w.nu));
}

TEST_CASE("whitehead_inverse on the collapse of Hsim(I)") {
  auto f = corpus::functor("!:hsim:I");
  auto w = whitehead_inverse(f);
  // the unique object of 1 is sent to the lexicographically first object
  CHECK(w.G.obj.size() == 1);
  CHECK(is_hpne(w.eps).verdict);
  CHECK(is_hpne(w.eta).verdict);
  // Normality on identities holds exactly.
  const auto& tb = *f.target;
  for (Idx b = 0; b < tb.n_hmors(); ++b)
    if (tb.hmor(b).is_id) CHECK(f.source->hmor(w.G.hmor[b]).is_id);
  for (Idx v = 0; v < tb.n_vmors(); ++v)
    if (tb.vmor(v).is_id) CHECK(f.source->vmor(w.G.vmor[v]).is_id);
}

TEST_CASE("whitehead preconditions") {
  CHECK_THROWS_AS(whitehead_inverse(corpus::functor("!:h:I")), Error);   // not whi source
  CHECK_THROWS_AS(whitehead_inverse(corpus::functor("incl:dS-S")), Error);  // not a bieq
}

TEST_CASE("promotion, theta and certification round-trip") {
  auto fs = whi_source_biequivalences();
  CHECK(fs.size() >= 5);
  for (const auto& f : fs) {
    CAPTURE(f.name);
    auto w = whitehead_inverse(f);
    auto data = promote_whitehead(f, w);
    auto theta = theta_modification(f, data);
    CHECK(modification_invertible(theta));
    auto rep = certify_horbieq_implies_dblbieq(f, data);
    CHECK(rep.verdict);
  }
}

TEST_CASE("theta is the identity modification for identity data") {
  auto f = corpus::functor("id:1");
  auto w = whitehead_inverse(f);
  auto data = promote_whitehead(f, w);
  auto theta = theta_modification(f, data);
  const auto& t = *f.target;
  for (Idx sq : theta.at_obj) CHECK(sq == t.object_square(0));
}

TEST_CASE("mutated kappa breaks the theta coherence") {
  auto f = corpus::functor("!:hsim:I");
  auto w = whitehead_inverse(f);
  auto data = promote_whitehead(f, w);
  // replace a kappa component with a square of the wrong boundary
  auto& sa = *f.source;
  bool mutated = false;
  for (auto& sq : data.kappa.at_obj) {
    for (Idx q = 0; q < sa.n_squares(); ++q)
      if (sa.square(q).bd != sa.square(sq).bd) {
        sq = q;
        mutated = true;
        break;
      }
    if (mutated) break;
  }
  REQUIRE(mutated);
  CHECK_THROWS_AS(
      [&] {
        validate_modification(data.kappa);
        auto th = theta_modification(f, data);
        (void)th;
      }(),
      Error);
}

TEST_CASE("db4 uniqueness of the constructed preimages on corpus instances") {
  for (const auto& f : whi_source_biequivalences()) {
    CAPTURE(f.name);
    auto w = whitehead_inverse(f);
    // every comparator of G is the unique preimage of its pasting
    const auto& sa = *f.source;
    for (const auto& [key, sq] : w.G.phi) {
      const auto& bd = sa.square(sq).bd;
      int n = 0;
      for (Idx other : sa.squares_over(bd))
        if (f.sq[other] == f.sq[sq]) ++n;
      CHECK(n == 1);
    }
  }
}

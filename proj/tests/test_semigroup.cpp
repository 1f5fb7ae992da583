#include "doctest.h"

#include "nsdecomp/error.hpp"
#include "nsdecomp/semigroup.hpp"
#include "support.hpp"

using namespace nsdecomp;

namespace {

KunzCoordinates kunz_of(std::vector<Int> gens) { return kunz_from_generators(NumericalSemigroup(std::move(gens))); }

std::vector<Int> vec(const KunzCoordinates& x) { return {x.values().begin(), x.values().end()}; }

}  // namespace

TEST_CASE("NumericalSemigroup: normalizes the generator list") {
  const NumericalSemigroup s({18, 5, 12, 11, 5});
  CHECK(s.generators() == std::vector<Int>{5, 11, 12, 18});
  CHECK(s.multiplicity() == 5);
  CHECK(NumericalSemigroup({1, 7}).generators() == std::vector<Int>{1});
}

TEST_CASE("NumericalSemigroup: rejects bad generator lists") {
  auto code = [](std::vector<Int> g) {
    try {
      NumericalSemigroup s(std::move(g));
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::Internal;
  };
  CHECK(code({4, 6}) == Errc::GcdNotOne);
  CHECK(code({}) == Errc::InvalidGenerators);
  CHECK(code({0, 3, 5}) == Errc::InvalidGenerators);
  CHECK(code({-2, 3}) == Errc::InvalidGenerators);
}

TEST_CASE("apery_set: small examples") {
  const auto ap = apery_set(NumericalSemigroup({5, 11, 12, 18}));
  CHECK(ap.m == 5);
  CHECK(ap.w == std::vector<Int>{0, 11, 12, 18, 24});
  CHECK(apery_set(NumericalSemigroup({3, 5})).w == std::vector<Int>{0, 10, 5});
  CHECK_THROWS_AS(apery_set(NumericalSemigroup({1})), Error);
}

TEST_CASE("kunz_from_generators: published examples") {
  CHECK(vec(kunz_of({5, 11, 12, 18})) == std::vector<Int>{2, 2, 3, 4});
  CHECK(vec(kunz_of({12, 17, 18, 23, 26, 28, 33, 39})) == std::vector<Int>{4, 2, 3, 2, 1, 1, 3, 3, 2, 2, 1});
  CHECK(vec(kunz_of({5, 6, 7, 8, 9})) == std::vector<Int>{1, 1, 1, 1});
  try {
    kunz_of({1, 2});
    FAIL("expected TrivialSemigroup");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::TrivialSemigroup);
  }
}

TEST_CASE("generators_from_kunz: minimal generating systems") {
  CHECK(generators_from_kunz(KunzCoordinates(5, {2, 2, 3, 4})).generators() == std::vector<Int>{5, 11, 12, 18});
  CHECK(generators_from_kunz(KunzCoordinates(5, {2, 1, 1, 1})).generators() == std::vector<Int>{5, 7, 8, 9, 11});
  CHECK(generators_from_kunz(KunzCoordinates(5, {1, 2, 3, 4})).generators() == std::vector<Int>{5, 6});
  CHECK(generators_from_kunz(KunzCoordinates::all_ones(4)).generators() == std::vector<Int>{4, 5, 6, 7});
}

TEST_CASE("generators_from_kunz: round trip and minimality against closure") {
  testing::Rng rng(11);
  for (int t = 0; t < 300; ++t) {
    const Int m = rng.between(2, 12);
    const auto x = testing::random_kunz(rng, m, 5);
    const auto gens = generators_from_kunz(x).generators();
    CHECK(kunz_of(gens) == x);
    // No generator is a sum of the others.
    for (std::size_t i = 0; i < gens.size(); ++i) {
      std::vector<Int> rest = gens;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
      CHECK_FALSE(testing::elements_upto(rest, gens[i])[static_cast<std::size_t>(gens[i])]);
    }
  }
}

TEST_CASE("KunzCoordinates: validation") {
  CHECK_THROWS_AS(KunzCoordinates(5, {2, 2, 3}), Error);
  CHECK_THROWS_AS(KunzCoordinates(5, {1, 1, 3, 1}), Error);
  CHECK_THROWS_AS(KunzCoordinates(5, {0, 1, 1, 1}), Error);
  CHECK_THROWS_AS(KunzCoordinates(1, {}), Error);
  const KunzCoordinates x(5, {2, 2, 3, 4});
  CHECK(x.at(4) == 4);
  CHECK(x.at_residue(0) == 0);
  CHECK_THROWS_AS(x.at(5), Error);
  CHECK_THROWS_AS(x.at(0), Error);
  CHECK(to_string(x) == "(2,2,3,4)");
}

TEST_CASE("is_kunz_vector: examples") {
  CHECK(is_kunz_vector(5, std::vector<Int>{2, 2, 3, 4}));
  CHECK(is_kunz_vector(5, std::vector<Int>{1, 1, 2, 1}));
  CHECK_FALSE(is_kunz_vector(5, std::vector<Int>{1, 1, 3, 1}));
  CHECK_FALSE(is_kunz_vector(3, std::vector<Int>{0, 1}));
  try {
    is_kunz_vector(5, std::vector<Int>{1, 1});
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DimensionMismatch);
  }
}

TEST_CASE("is_kunz_vector: agrees with the Apery-set definition on every small vector") {
  for (Int m = 2; m <= 6; ++m) {
    std::vector<Int> x(static_cast<std::size_t>(m - 1), 1);
    while (true) {
      CHECK(is_kunz_vector(m, x) == testing::brute_is_kunz(m, x));
      std::size_t i = 0;
      while (i < x.size() && x[i] == 4) x[i++] = 1;
      if (i == x.size()) break;
      ++x[i];
    }
  }
}

TEST_CASE("genus, frobenius, contains, gaps: agree with the closure") {
  testing::Rng rng(7);
  for (int t = 0; t < 400; ++t) {
    const auto x = testing::random_kunz(rng, rng.between(2, 11), 5);
    const auto s = testing::brute_semigroup(x);
    CHECK(genus(x) == static_cast<Int>(s.gaps.size()));
    CHECK(frobenius(x) == s.frobenius);
    CHECK(gaps(x) == s.gaps);
    for (Int n = -2; n <= s.frobenius + 2 * x.multiplicity(); ++n) CHECK(contains(x, n) == s.contains(n));
  }
}

TEST_CASE("genus and frobenius: Example 26 values") {
  const KunzCoordinates x(5, {2, 2, 3, 4});
  CHECK(genus(x) == 11);
  CHECK(frobenius(x) == 19);
  CHECK(contains(x, 11));
  CHECK_FALSE(contains(x, 13));
  CHECK(genus(KunzCoordinates::all_ones(5)) == 4);
  CHECK(frobenius(KunzCoordinates::all_ones(5)) == 4);
}

TEST_CASE("special_gaps_above_m: published examples") {
  CHECK(special_gaps_above_m(KunzCoordinates(5, {2, 2, 3, 4})) == std::vector<Int>{6, 13, 19});
  CHECK(special_gaps_above_m(kunz_of({12, 17, 18, 23, 26, 28, 33, 39})) ==
        std::vector<Int>{21, 22, 27, 31, 32, 37});
  CHECK(special_gaps_above_m(KunzCoordinates::all_ones(6)).empty());
}

TEST_CASE("special_gaps_above_m: exhaustive agreement with the closure definition") {
  std::size_t checked = 0;
  for (Int m = 2; m <= 6; ++m) {
    for (const auto& x : testing::all_kunz(m, 3)) {
      CHECK(special_gaps_above_m(x) == testing::brute_special_gaps(testing::brute_semigroup(x)));
      ++checked;
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("special_gaps_above_m: random agreement with the closure definition") {
  testing::Rng rng(3);
  for (int t = 0; t < 300; ++t) {
    const auto x = testing::random_kunz(rng, rng.between(3, 12), 5);
    CHECK(special_gaps_above_m(x) == testing::brute_special_gaps(testing::brute_semigroup(x)));
  }
}

TEST_CASE("special_gaps_above_m: the Frobenius number is special unless x is all ones") {
  testing::Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    const auto x = testing::random_kunz(rng, rng.between(2, 12), 4);
    const auto sg = special_gaps_above_m(x);
    if (x.is_all_ones()) {
      CHECK(sg.empty());
    } else {
      REQUIRE_FALSE(sg.empty());
      CHECK(sg.back() == frobenius(x));
    }
  }
}

TEST_CASE("is_m_irreducible: genus characterization matches the intersection definition") {
  std::size_t irreducible = 0;
  for (Int m = 2; m <= 5; ++m) {
    for (const auto& x : testing::all_kunz(m, 3)) {
      const bool brute = testing::brute_is_m_irreducible(x);
      CHECK(is_m_irreducible(x) == brute);
      // At most one special gap above m exactly when irreducible.
      CHECK((special_gaps_above_m(x).size() <= 1) == brute);
      irreducible += brute;
    }
  }
  CHECK(irreducible > 10);
  CHECK(is_m_irreducible(KunzCoordinates::all_ones(5)));
  CHECK_FALSE(is_m_irreducible(KunzCoordinates(5, {2, 2, 3, 4})));
}

TEST_CASE("intersect: componentwise maximum is the intersection") {
  const KunzCoordinates a(5, {2, 1, 1, 1});
  const KunzCoordinates b(5, {1, 2, 3, 4});
  CHECK(intersect(a, b) == KunzCoordinates(5, {2, 2, 3, 4}));
  CHECK_THROWS_AS(intersect(std::span<const KunzCoordinates>{}), Error);
  CHECK_THROWS_AS(intersect(a, KunzCoordinates::all_ones(4)), Error);

  testing::Rng rng(9);
  for (int t = 0; t < 100; ++t) {
    const Int m = rng.between(3, 9);
    const auto x = testing::random_kunz(rng, m, 4);
    const auto y = testing::random_kunz(rng, m, 4);
    const auto sx = testing::brute_semigroup(x), sy = testing::brute_semigroup(y);
    const auto z = intersect(x, y);
    for (Int n = 0; n <= 4 * m * 5; ++n) CHECK(contains(z, n) == (sx.contains(n) && sy.contains(n)));
  }
}

TEST_CASE("is_undercoordinate: oversemigroups have smaller coordinates") {
  const KunzCoordinates x(5, {2, 2, 3, 4});
  CHECK(is_undercoordinate(KunzCoordinates(5, {2, 1, 1, 1}), x));
  CHECK_FALSE(is_undercoordinate(x, KunzCoordinates(5, {2, 1, 1, 1})));
  CHECK(is_undercoordinate(x, x));
  CHECK_THROWS_AS(is_undercoordinate(x, KunzCoordinates::all_ones(3)), Error);
}

TEST_CASE("covers_gap: matches gap membership") {
  const KunzCoordinates x(5, {2, 2, 3, 4});
  const KunzCoordinates p(5, {1, 2, 3, 4});
  CHECK(covers_gap(p, 13));
  CHECK(covers_gap(p, 19));
  CHECK_FALSE(covers_gap(p, 6));
  for (Int h : special_gaps_above_m(x)) {
    const Int k = residue(h, 5);
    CHECK(covers_gap(p, h) == (p.at(k) == x.at(k)));
  }
}

TEST_CASE("residue and ceil_half: integer helpers") {
  CHECK(residue(19, 5) == 4);
  CHECK(residue(-1, 5) == 4);
  CHECK(ceil_half(20) == 10);
  CHECK(ceil_half(21) == 11);
  CHECK(ceil_half(0) == 0);
}

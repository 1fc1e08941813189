#include "genmech/detectors.hpp"
#include "genmech/generators.hpp"

#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace genmech;

TEST_CASE("parse_complex") {
  CHECK(parse_complex("1") == Complex{1.0, 0.0});
  CHECK(parse_complex("i") == Complex{0.0, 1.0});
  CHECK(parse_complex("-i") == Complex{0.0, -1.0});
  CHECK(parse_complex("0.5-2i") == Complex{0.5, -2.0});
  CHECK(parse_complex("3+0.25i") == Complex{3.0, 0.25});
  CHECK(parse_complex(" -2.5 ") == Complex{-2.5, 0.0});
  CHECK(parse_complex("1e-3+2i") == Complex{1e-3, 2.0});
  CHECK_THROWS_AS(parse_complex(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_complex("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_complex("1+"), std::invalid_argument);
}

TEST_CASE("Palette") {
  const Palette p = Palette::parse("1,i");
  REQUIRE(p.size() == 2);
  CHECK(p.values()[1] == Complex{0.0, 1.0});
  CHECK_THROWS_AS(Palette::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Palette::parse("1,1"), std::invalid_argument);
  CHECK_THROWS_AS(Palette(std::vector<Complex>{1.0, 1.0 + 2e-9}), std::invalid_argument);
  CHECK_NOTHROW(Palette(std::vector<Complex>{1.0, 1.0 + 1e-6}));
}

TEST_CASE("overlap modes round-trip through their names") {
  for (auto m : {OverlapMode::Induced, OverlapMode::FreeSymmetric})
    CHECK(parse_overlap_mode(to_string(m)) == m);
  CHECK_THROWS_AS(parse_overlap_mode("bogus"), std::invalid_argument);
}

TEST_CASE("pair_class_partition: identity S and T pairs (a,b) with (b,a)") {
  const std::size_t n = 4;
  const PairClassPartition part = pair_class_partition(Bijection::identity(n), Bijection::identity(n));
  CHECK(part.class_count() == n + n * (n - 1) / 2);
  for (StateId a = 0; a < n; ++a)
    for (StateId b = 0; b < n; ++b) CHECK(part.class_of_pair(a, b) == part.class_of_pair(b, a));
  CHECK(part.class_of_pair(0, 0) == 0);
  CHECK(part.representatives[0] == std::pair<StateId, StateId>{0, 0});
}

TEST_CASE("pair_class_partition: 3-cycle with T = id") {
  const PairClassPartition part = pair_class_partition(Bijection{1, 2, 0}, Bijection::identity(3));
  CHECK(part.class_count() == 2);
  CHECK(part.class_of_pair(0, 0) == part.class_of_pair(1, 1));
  CHECK(part.class_of_pair(0, 0) == part.class_of_pair(2, 2));
  CHECK(part.class_of_pair(0, 1) == part.class_of_pair(2, 0));
  CHECK(part.class_of_pair(0, 0) != part.class_of_pair(0, 1));
}

TEST_CASE("property: partition is closed under both laws and matches the orbit count") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const Bijection S = random_permutation(n, rng);
    const Bijection T = random_permutation(n, rng);
    const PairClassPartition part = pair_class_partition(S, T);
    CHECK(part.class_count() == test::orbit_count_by_closure(S, T));
    // Dense ids in first-appearance order.
    std::size_t next = 0;
    for (std::size_t idx = 0; idx < n * n; ++idx) {
      CHECK(part.class_of[idx] <= next);
      if (part.class_of[idx] == next) ++next;
    }
    CHECK(next == part.class_count());
    // Random walk along the generators never leaves the class.
    StateId a = rng() % n;
    StateId b = rng() % n;
    const std::size_t c = part.class_of_pair(a, b);
    for (int step = 0; step < 50; ++step) {
      if (rng() % 2) {
        a = S(a);
        b = S(b);
      } else {
        const StateId na = T(b);
        b = T(a);
        a = na;
      }
      CHECK(part.class_of_pair(a, b) == c);
    }
  }
}

TEST_CASE("compatible_preoverlap is deterministic in its seed and uses palette values") {
  const Bijection S{2, 0, 1, 3};
  const Bijection T{1, 0, 3, 2};
  const Palette palette = Palette::parse("1,i,-1,2");
  const PreOverlapTable p1 = compatible_preoverlap(S, T, palette, 99);
  CHECK(p1 == compatible_preoverlap(S, T, palette, 99));
  for (const Complex z : p1.data())
    CHECK(std::find(palette.values().begin(), palette.values().end(), z) != palette.values().end());
}

TEST_CASE("overlap tables") {
  PreOverlapTable p = PreOverlapTable::square(2, Complex{0.0, 0.0});
  p(0, 0) = 1.0;
  p(1, 1) = Complex{0.0, 1.0};
  p(0, 1) = Complex{0.6, 0.8};
  p(1, 0) = 2.0;
  const OverlapTable o = induced_overlap(p);
  CHECK(o(0, 0) == doctest::Approx(1.0));
  CHECK(o(1, 1) == doctest::Approx(1.0));
  CHECK(o(0, 1) == doctest::Approx(2.0));
  CHECK(o(1, 0) == doctest::Approx(2.0));

  const OverlapTable f = free_symmetric_overlap(6, 3);
  CHECK(f == free_symmetric_overlap(6, 3));
  for (std::size_t a = 0; a < 6; ++a) {
    CHECK(f(a, a) == 1.0);
    for (std::size_t b = 0; b < 6; ++b) {
      CHECK(f(a, b) == f(b, a));
      CHECK(f(a, b) >= 0.0);
      CHECK(f(a, b) <= 1.0);
    }
  }
}

TEST_CASE("random_involution is an involution") {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = rng() % 10;
    CHECK(random_involution(n, rng).is_involution());
  }
}

TEST_CASE("property: tri_pair is always invariant, violating_pair never") {
  const Palette palette = Palette::parse("1,i,2");
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const std::size_t n = 1 + seed % 8;
    auto [S, T] = tri_pair(n, seed);
    const GeneralSystem tri = test::system_with(S, T, palette, OverlapMode::Induced, seed);
    CHECK(validate(tri).ok());
    CHECK(is_time_reversal_invariant(tri));
    if (n >= 3) {
      auto [S2, T2] = violating_pair(n, seed);
      const GeneralSystem viol = test::system_with(S2, T2, palette, OverlapMode::FreeSymmetric, seed);
      CHECK(validate(viol).ok());
      CHECK_FALSE(is_time_reversal_invariant(viol));
    }
  }
  CHECK(tri_pair(5, 7) == tri_pair(5, 7));
  CHECK_THROWS_AS(violating_pair(2, 1), ImpossibleOrder);
  CHECK_THROWS_AS(random_violating_source(5, 2, palette, OverlapMode::Induced, 1), ImpossibleOrder);
}

TEST_CASE("all_permutations") {
  CHECK(all_permutations(0).size() == 1);
  CHECK(all_permutations(3).size() == 6);
  CHECK(all_permutations(4).size() == 24);
  const auto p3 = all_permutations(3);
  CHECK(p3.front() == Bijection{0, 1, 2});
  CHECK(p3.back() == Bijection{2, 1, 0});
}

TEST_CASE("ExhaustiveSystems: counts") {
  CHECK(ExhaustiveSystems(1, Palette::parse("1")).size() == 1);
  CHECK(ExhaustiveSystems(2, Palette::parse("1")).size() == 4);

  const ExhaustiveSystems ex(3, Palette::parse("1,i"));
  CHECK(ex.pair_count() == 36);
  std::size_t expected = 0;
  for (std::size_t k = 0; k < ex.pair_count(); ++k) {
    const auto& [S, T] = ex.pairs()[k];
    const std::size_t classes = test::orbit_count_by_closure(S, T);
    CHECK(ex.class_count(k) == classes);
    expected += std::size_t{1} << classes;
  }
  CHECK(ex.size() == expected);
  CHECK(ex.size() == 480);
}

TEST_CASE("ExhaustiveSystems: every member validates, members are distinct") {
  const ExhaustiveSystems ex(3, Palette::parse("1,i"));
  std::vector<GeneralSystem> seen;
  for (std::size_t i = 0; i < ex.size(); ++i) {
    const GeneralSystem sys = ex.at(i);
    CHECK(validate(sys).ok());
    seen.push_back(sys);
  }
  // S slowest, then T: the first member has S = T = id with every class at palette[0].
  CHECK(seen.front().dynamics.is_identity());
  CHECK(seen.front().time_reversal.is_identity());
  for (const Complex z : seen.front().pre_overlap.data()) CHECK(z == Complex{1.0, 0.0});
  for (std::size_t i = 1; i < seen.size(); ++i) CHECK_FALSE(seen[i] == seen[i - 1]);
  CHECK_THROWS(ex.at(ex.size()));
}

TEST_CASE("ExhaustiveSystems: size guard") {
  CHECK_THROWS_AS(ExhaustiveSystems(5, Palette::parse("1")), SizeGuard);
  CHECK_THROWS_AS(ExhaustiveSystems(3, Palette::parse("1,i"), OverlapMode::Induced, 100), SizeGuard);
  CHECK_NOTHROW(ExhaustiveSystems(3, Palette::parse("1,i"), OverlapMode::Induced, 480));
}

TEST_CASE("random sources are deterministic and respect their size ranges") {
  const Palette palette = Palette::parse("1,i");
  const SystemSource a = random_tri_source(50, 6, palette, OverlapMode::Induced, 17);
  const SystemSource b = random_tri_source(50, 6, palette, OverlapMode::Induced, 17);
  const SystemSource v = random_violating_source(50, 6, palette, OverlapMode::Induced, 17);
  REQUIRE(a.count == 50);
  for (std::size_t i = 0; i < a.count; ++i) {
    const GeneralSystem sa = a.at(i);
    CHECK(sa == b.at(i));
    CHECK(sa.n >= 2);
    CHECK(sa.n <= 6);
    const GeneralSystem sv = v.at(i);
    CHECK(sv.n >= 3);
    CHECK(sv.n <= 6);
    CHECK_FALSE(is_time_reversal_invariant(sv));
  }
  CHECK(derive_seed(1, 2) == derive_seed(1, 2));
  CHECK(derive_seed(1, 2) != derive_seed(1, 3));
  CHECK(derive_seed(1, 2) != derive_seed(2, 2));
}

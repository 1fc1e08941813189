#include "genmech/detectors.hpp"
#include "genmech/generators.hpp"

#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace genmech;

namespace {

// TRI by brute force: for every x, find T⁻¹(S x) and S⁻¹(T x) by search.
bool tri_brute_force(const Bijection& S, const Bijection& T) {
  const std::size_t n = S.size();
  auto preimage = [n](const Bijection& f, StateId y) {
    for (StateId x = 0; x < n; ++x)
      if (f(x) == y) return x;
    return n;
  };
  for (StateId x = 0; x < n; ++x)
    if (preimage(T, S(x)) != preimage(S, T(x))) return false;
  return true;
}

GeneralSystem three_cycle_with_split_palette() {
  // S = 3-cycle, T = id: the diagonal is one class and all off-diagonal pairs
  // another. Diagonal 1, off-diagonal 2.
  const Bijection S{1, 2, 0};
  const Bijection T = Bijection::identity(3);
  const PairClassPartition part = pair_class_partition(S, T);
  REQUIRE(part.class_count() == 2);
  std::vector<Complex> values(2);
  values[part.class_of_pair(0, 0)] = 1.0;
  values[part.class_of_pair(0, 1)] = 2.0;
  GeneralSystem sys;
  sys.n = 3;
  sys.dynamics = S;
  sys.time_reversal = T;
  sys.pre_overlap = preoverlap_from_classes(part, values);
  sys.overlap = induced_overlap(sys.pre_overlap);
  return sys;
}

} // namespace

TEST_CASE("equivalent: reflexive and row-identical states") {
  GeneralSystem sys = identity_system(3);
  for (StateId a = 0; a < 3; ++a) CHECK(equivalent(sys, a, a));
  CHECK_FALSE(equivalent(sys, 0, 1));
  // Rows 0 and 1 both become (1, 1, 0).
  sys.overlap(0, 1) = sys.overlap(1, 0) = 1.0;
  CHECK(equivalent(sys, 0, 1));
  CHECK(equivalent(sys, 1, 0));
  CHECK_FALSE(equivalent(sys, 0, 2));
}

TEST_CASE("property: equivalent is reflexive, symmetric and (on separated tables) transitive") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng() % 6;
    // Overlap values drawn from {0, 0.5, 1}: separated far beyond 2·eps_eq.
    GeneralSystem sys = identity_system(n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a; b < n; ++b) sys.overlap(a, b) = sys.overlap(b, a) = 0.5 * (rng() % 3);
    for (StateId a = 0; a < n; ++a) {
      CHECK(equivalent(sys, a, a));
      for (StateId b = 0; b < n; ++b) {
        CHECK(equivalent(sys, a, b) == equivalent(sys, b, a));
        for (StateId c = 0; c < n; ++c)
          if (equivalent(sys, a, b) && equivalent(sys, b, c)) CHECK(equivalent(sys, a, c));
      }
    }
  }
}

TEST_CASE("is_stationary and stationary_set") {
  const GeneralSystem id3 = identity_system(3);
  for (StateId a = 0; a < 3; ++a) {
    CHECK(is_stationary(id3, a, StationarityMode::Strict));
    CHECK(is_stationary(id3, a, StationarityMode::ByOverlap));
  }
  CHECK(stationary_set(id3, StationarityMode::Strict) == std::vector<StateId>{0, 1, 2});

  GeneralSystem swap = identity_system(2);
  swap.dynamics = Bijection{1, 0};
  swap.pre_overlap = PreOverlapTable::square(2, Complex{1.0, 0.0});
  CHECK_FALSE(is_stationary(swap, 0, StationarityMode::Strict));
  CHECK_FALSE(is_stationary(swap, 0, StationarityMode::ByOverlap));

  GeneralSystem cycle = identity_system(3);
  cycle.dynamics = Bijection{1, 2, 0};
  CHECK(stationary_set(cycle, StationarityMode::Strict).empty());
  // With all states equivalent, the 3-cycle is stationary by overlap everywhere.
  cycle.overlap = OverlapTable::square(3, 1.0);
  CHECK(stationary_set(cycle, StationarityMode::ByOverlap).size() == 3);
}

TEST_CASE("stationary_signature") {
  GeneralSystem sys = identity_system(3);
  sys.pre_overlap(1, 1) = Complex{0.0, 2.0};
  CHECK(stationary_signature(sys, 1) == Complex{0.0, 2.0});
  CHECK(stationary_signature(sys, 0) == Complex{1.0, 0.0});
}

TEST_CASE("property: signatures are constant along S-orbits") {
  const Palette palette = Palette::parse("1,i,-1,2-i,0.5");
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const std::size_t n = 1 + seed % 8;
    auto [S, T] = tri_pair(n, seed);
    const GeneralSystem sys = test::system_with(S, T, palette, OverlapMode::Induced, seed);
    for (StateId a = 0; a < n; ++a)
      CHECK(sys.tol.same(stationary_signature(sys, sys.dynamics(a)), stationary_signature(sys, a)));
  }
}

TEST_CASE("is_nondegenerate") {
  SUBCASE("a single stationary state is non-degenerate") {
    GeneralSystem sys = identity_system(3);
    sys.dynamics = Bijection{0, 2, 1};
    sys.pre_overlap = PreOverlapTable::square(3, Complex{1.0, 0.0});
    CHECK(is_nondegenerate(sys, 0, StationarityMode::Strict));
  }
  SUBCASE("equal signatures on non-equivalent states make both degenerate") {
    const GeneralSystem sys = identity_system(2);  // both signatures are 1
    CHECK_FALSE(is_nondegenerate(sys, 0, StationarityMode::Strict));
    CHECK_FALSE(is_nondegenerate(sys, 1, StationarityMode::Strict));
  }
  SUBCASE("distinct signatures are non-degenerate") {
    GeneralSystem sys = identity_system(2);
    sys.pre_overlap(1, 1) = Complex{0.0, -1.0};
    CHECK(is_nondegenerate(sys, 0, StationarityMode::Strict));
    CHECK(is_nondegenerate(sys, 1, StationarityMode::Strict));
  }
  SUBCASE("non-stationary state is an error") {
    GeneralSystem sys = identity_system(2);
    sys.dynamics = Bijection{1, 0};
    CHECK_THROWS_AS(is_nondegenerate(sys, 0, StationarityMode::Strict), NotStationary);
  }
}

TEST_CASE("is_time_reversal_invariant: worked examples") {
  GeneralSystem sys = identity_system(3);
  sys.dynamics = Bijection{2, 0, 1};
  sys.time_reversal = sys.dynamics;
  CHECK(is_time_reversal_invariant(sys));  // S = T

  // 3-cycle with T = id: T⁻¹S = S but S⁻¹T = S⁻¹ ≠ S.
  sys.dynamics = Bijection{1, 2, 0};
  sys.time_reversal = Bijection::identity(3);
  CHECK_FALSE(is_time_reversal_invariant(sys));
  CHECK(tri_brute_force(sys.dynamics, sys.time_reversal) == false);
}

TEST_CASE("property: S = T∘A with A an involution is invariant") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const Bijection A = random_involution(n, rng);
    const Bijection T = random_permutation(n, rng);
    GeneralSystem sys = identity_system(n);
    sys.dynamics = T.after(A);
    sys.time_reversal = T;
    CHECK(is_time_reversal_invariant(sys));
  }
}

TEST_CASE("tri_equivalent_forms: examples") {
  const TriForms id = tri_equivalent_forms(identity_system(3));
  CHECK(id.inverse_form);
  CHECK(id.identity_form);
  CHECK(id.swapped_form);

  GeneralSystem sys = identity_system(3);
  sys.dynamics = Bijection{1, 2, 0};
  const TriForms f = tri_equivalent_forms(sys);
  CHECK_FALSE(f.inverse_form);
  CHECK_FALSE(f.identity_form);
  CHECK_FALSE(f.swapped_form);
}

TEST_CASE("property: the three invariance forms agree, exhaustively for n <= 3") {
  std::size_t tri_pairs_n3 = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto perms = all_permutations(n);
    for (const auto& S : perms) {
      for (const auto& T : perms) {
        GeneralSystem sys = identity_system(n);
        sys.dynamics = S;
        sys.time_reversal = T;
        const TriForms f = tri_equivalent_forms(sys);
        CHECK(f.agree());
        CHECK(f.inverse_form == tri_brute_force(S, T));
        CHECK(is_time_reversal_invariant(sys) == f.inverse_form);
        if (n == 3 && f.inverse_form) ++tri_pairs_n3;
      }
    }
  }
  // 6 choices of T times the 4 involutions of 3 elements.
  CHECK(tri_pairs_n3 == 24);
}

TEST_CASE("property: the three invariance forms agree on 1000 random pairs, n <= 8") {
  std::mt19937_64 rng(41);
  std::size_t tri = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    GeneralSystem sys = identity_system(n);
    sys.dynamics = random_permutation(n, rng);
    sys.time_reversal = random_permutation(n, rng);
    const TriForms f = tri_equivalent_forms(sys);
    CHECK(f.agree());
    CHECK(f.inverse_form == tri_brute_force(sys.dynamics, sys.time_reversal));
    tri += f.inverse_form ? 1 : 0;
  }
  CHECK(tri > 0);  // small n make invariant pairs common
}

TEST_CASE("wigner_witnesses and wigner_verdict") {
  SUBCASE("identity system") {
    const Verdict v = wigner_verdict(identity_system(3), StationarityMode::Strict);
    CHECK(v.witnesses.empty());
    CHECK(v.tri_direct);
    CHECK(v.consistent);
  }
  SUBCASE("T = identity never has witnesses") {
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 1 + rng() % 6;
      GeneralSystem sys = test::system_with(random_permutation(n, rng), Bijection::identity(n),
                                            Palette::parse("1,i,2,-3i"), OverlapMode::FreeSymmetric,
                                            rng());
      CHECK(wigner_witnesses(sys, StationarityMode::Strict).empty());
      CHECK(wigner_witnesses(sys, StationarityMode::ByOverlap).empty());
    }
  }
  SUBCASE("S = id, T a 3-cycle: signatures coincide, no witnesses") {
    GeneralSystem sys = identity_system(3);
    sys.time_reversal = Bijection{1, 2, 0};
    // p[Ta][Ta] = p[a][a] puts the whole diagonal in one class.
    CHECK(wigner_witnesses(sys, StationarityMode::Strict).empty());
    CHECK_FALSE(is_time_reversal_invariant(sys));
  }
  SUBCASE("strict witness on an invariant system (T not an involution at the witness)") {
    const GeneralSystem sys = test::strict_counterexample();
    REQUIRE(validate(sys).ok());
    const Verdict v = wigner_verdict(sys, StationarityMode::Strict);
    CHECK(v.witnesses == std::vector<StateId>{0});
    CHECK(v.tri_direct);
    CHECK_FALSE(v.consistent);
    CHECK_FALSE(proof_chain(sys, 0).rho_coincides);
  }
}

TEST_CASE("witnesses are sorted and satisfy their definition") {
  const Palette palette = Palette::parse("1,2,i,-1");
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t n = 3 + seed % 5;
    auto [S, T] = violating_pair(n, seed);
    const GeneralSystem sys = test::system_with(S, T, palette, OverlapMode::FreeSymmetric, seed);
    for (auto mode : {StationarityMode::Strict, StationarityMode::ByOverlap}) {
      const auto w = wigner_witnesses(sys, mode);
      CHECK(std::is_sorted(w.begin(), w.end()));
      for (StateId a = 0; a < n; ++a) {
        const bool expected = is_stationary(sys, a, mode) && is_nondegenerate(sys, a, mode) &&
                              !equivalent(sys, sys.time_reversal(a), a);
        CHECK(expected == std::binary_search(w.begin(), w.end(), a));
      }
    }
  }
}

TEST_CASE("proof_chain: identity system evaluates every line at p[a][a]") {
  GeneralSystem sys = identity_system(3);
  sys.pre_overlap(2, 2) = Complex{0.25, -1.0};
  for (StateId a = 0; a < 3; ++a) {
    const ChainTrace tr = proof_chain(sys, a);
    for (const Complex v : tr.step_values) CHECK(v == sys.pre_overlap(a, a));
    CHECK(tr.all_equal());
    CHECK(tr.rho_coincides);
  }
}

TEST_CASE("proof_chain: non-invariant system keeps step 1 and breaks the invariance step") {
  const GeneralSystem sys = three_cycle_with_split_palette();
  REQUIRE(validate(sys).ok());
  REQUIRE_FALSE(is_time_reversal_invariant(sys));
  for (StateId a = 0; a < 3; ++a) {
    const ChainTrace tr = proof_chain(sys, a);
    CHECK(tr.step_equal[0]);
    CHECK_FALSE(tr.step_equal[1]);
    CHECK(tr.step_equal[2]);  // S-compatibility still holds
    CHECK(tr.step_equal[3]);
    CHECK(tr.sigma == a);
    CHECK(tr.rho_f == a);
    CHECK(tr.rho_i == sys.dynamics(a));
  }
}

TEST_CASE("property: on invariant systems every chain line agrees") {
  const Palette palette = Palette::parse("1,i,2,-0.5+3i");
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const std::size_t n = 1 + seed % 8;
    auto [S, T] = tri_pair(n, seed);
    const GeneralSystem sys = test::system_with(S, T, palette, OverlapMode::Induced, seed);
    for (StateId a = 0; a < n; ++a) {
      const ChainTrace tr = proof_chain(sys, a);
      CHECK(tr.all_equal());
      CHECK(tr.step_args[1] == tr.step_args[2]);
      CHECK(tr.step_args[3] == tr.step_args[4]);
    }
  }
}

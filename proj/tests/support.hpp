#pragma once

#include "genmech/generators.hpp"
#include "genmech/system.hpp"

#include <filesystem>
#include <random>
#include <string>

namespace genmech::test {

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("genmech-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

/// System with the given S and T, a compatible pre-overlap drawn from
/// `palette`, and overlap table `overlap`.
inline GeneralSystem system_with(Bijection S, Bijection T, const Palette& palette,
                                 OverlapMode overlap = OverlapMode::Induced,
                                 std::uint64_t seed = 1) {
  return make_system(std::move(S), std::move(T), palette, overlap, seed);
}

/// n = 3, S = (1 2), T = 0→1→2→0, identity overlap, constant pre-overlap.
/// Valid and time reversal invariant, yet state 0 is a strict witness.
inline GeneralSystem strict_counterexample() {
  GeneralSystem sys;
  sys.n = 3;
  sys.dynamics = Bijection{0, 2, 1};
  sys.time_reversal = Bijection{1, 2, 0};
  sys.overlap = OverlapTable::square(3, 0.0);
  for (std::size_t k = 0; k < 3; ++k) sys.overlap(k, k) = 1.0;
  sys.pre_overlap = PreOverlapTable::square(3, Complex{1.0, 0.0});
  return sys;
}

/// Applies g1: (a,b) ↦ (Sa,Sb) and g2: (a,b) ↦ (Tb,Ta) from every unvisited
/// pair until closure and counts the orbits. Independent of union-find.
inline std::size_t orbit_count_by_closure(const Bijection& S, const Bijection& T) {
  const std::size_t n = S.size();
  std::vector<bool> seen(n * n, false);
  std::size_t orbits = 0;
  for (std::size_t start = 0; start < n * n; ++start) {
    if (seen[start]) continue;
    ++orbits;
    std::vector<std::size_t> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
      const std::size_t p = stack.back();
      stack.pop_back();
      const std::size_t a = p / n;
      const std::size_t b = p % n;
      for (std::size_t q : {S(a) * n + S(b), T(b) * n + T(a)}) {
        if (!seen[q]) {
          seen[q] = true;
          stack.push_back(q);
        }
      }
    }
  }
  return orbits;
}

} // namespace genmech::test

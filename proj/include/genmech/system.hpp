#pragma once

#include "genmech/bijection.hpp"
#include "genmech/table.hpp"

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

namespace genmech {

/// Threshold for every real and complex value comparison. Permutation
/// comparisons never use it.
struct Tolerance {
  double eps_eq = 1e-9;

  bool same(double a, double b) const { return std::abs(a - b) <= eps_eq; }
  bool same(Complex a, Complex b) const { return std::abs(a - b) <= eps_eq; }

  friend bool operator==(const Tolerance&, const Tolerance&) = default;
};

/// How "stationary" is read: `Strict` requires the dynamics to fix the state
/// index, `ByOverlap` only requires the image to be equivalent to the state.
enum class StationarityMode { Strict, ByOverlap };

std::string_view to_string(StationarityMode mode);

/// A finite general-mechanics system: states are indices [0, n), the dynamics
/// and time reversal are permutations, and both pairwise maps are n×n tables.
struct GeneralSystem {
  std::size_t n = 0;
  Bijection dynamics;        // S
  Bijection time_reversal;   // T
  OverlapTable overlap;
  PreOverlapTable pre_overlap;
  Tolerance tol;

  friend bool operator==(const GeneralSystem&, const GeneralSystem&) = default;
};

/// Identity system on n states: S = T = id, unit diagonal overlaps and
/// pre-overlaps, zeros elsewhere.
GeneralSystem identity_system(std::size_t n);

enum class ViolationKind {
  Dimension,
  NegativeTolerance,
  DynamicsNotBijective,
  TimeReversalNotBijective,
  OverlapAsymmetric,
  PreOverlapSCompatibility,
  PreOverlapTCompatibility,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::vector<StateId> indices;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  bool contains(ViolationKind kind) const;
};

/// Checks every structural law of a system. Shape problems are reported as
/// `Dimension` violations and suppress the table checks.
ValidationReport validate(const GeneralSystem& system);

} // namespace genmech

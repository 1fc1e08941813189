#pragma once

#include "genmech/system.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <span>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

namespace genmech {

class ImpossibleOrder : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class SizeGuard : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Finite set of well-separated complex values used to fill pre-overlap classes.
class Palette {
public:
  /// Throws std::invalid_argument if empty or if two values are within 3·eps_eq.
  explicit Palette(std::vector<Complex> values, Tolerance tol = {});

  /// Comma-separated complex literals: "1,i", "0.5-2i", "-i", "3+0.25i".
  static Palette parse(std::string_view text, Tolerance tol = {});

  const std::vector<Complex>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

private:
  std::vector<Complex> values_;
};

/// Parses one complex literal as accepted by Palette::parse.
Complex parse_complex(std::string_view text);

/// Ordered state pairs grouped by the equalities that S- and T-compatibility
/// force on a pre-overlap: (a,b) ~ (Sa,Sb) and (Ta,Tb) ~ (b,a).
///
/// Class ids are dense and numbered by first appearance in row-major order.
struct PairClassPartition {
  std::size_t n = 0;
  std::vector<std::size_t> class_of;                        // indexed a*n + b
  std::vector<std::pair<StateId, StateId>> representatives; // first pair of each class

  std::size_t class_count() const noexcept { return representatives.size(); }
  std::size_t class_of_pair(StateId a, StateId b) const { return class_of.at(a * n + b); }
};

PairClassPartition pair_class_partition(const Bijection& S, const Bijection& T);

/// Pre-overlap taking `class_values[c]` on every pair of class c.
PreOverlapTable preoverlap_from_classes(const PairClassPartition& partition,
                                        std::span<const Complex> class_values);

/// Random palette value per class; deterministic in (S, T, palette, seed).
PreOverlapTable compatible_preoverlap(const Bijection& S, const Bijection& T,
                                      const Palette& palette, std::uint64_t seed);

enum class OverlapMode {
  Induced,       // O[a][b] = |p[a][b]|·|p[b][a]|, i.e. |p|² when p is Hermitian
  FreeSymmetric, // independent uniform values in [0,1), unit diagonal
};

std::string_view to_string(OverlapMode mode);
OverlapMode parse_overlap_mode(std::string_view text);

OverlapTable induced_overlap(const PreOverlapTable& pre);
OverlapTable free_symmetric_overlap(std::size_t n, std::uint64_t seed);

/// Uniform random permutation.
Bijection random_permutation(std::size_t n, std::mt19937_64& rng);

/// Random involution: disjoint transpositions plus fixed points.
Bijection random_involution(std::size_t n, std::mt19937_64& rng);

/// (T∘A, T) for a random involution A and random T. Always time reversal
/// invariant, because T⁻¹S = A = A⁻¹ = S⁻¹T.
std::pair<Bijection, Bijection> tri_pair(std::size_t n, std::uint64_t seed);

/// (T∘A, T) with A∘A ≠ id. Never time reversal invariant. Throws
/// ImpossibleOrder for n < 3, where every permutation is an involution.
std::pair<Bijection, Bijection> violating_pair(std::size_t n, std::uint64_t seed);

/// Complete system from (S, T) with a compatible pre-overlap.
GeneralSystem make_system(Bijection S, Bijection T, const Palette& palette, OverlapMode overlap,
                          std::uint64_t seed, Tolerance tol = {});

/// Random-access family of systems, addressable by index so that workers can
/// split a corpus by index range.
struct SystemSource {
  std::size_t count = 0;
  std::function<GeneralSystem(std::size_t)> at;
};

/// Every (S, T) permutation pair on n states crossed with every assignment of
/// palette values to that pair's pre-overlap classes. S varies slowest, then T,
/// then the assignment (class 0 is the least significant digit).
class ExhaustiveSystems {
public:
  static constexpr std::size_t kMaxStates = 4;
  static constexpr std::size_t kDefaultCap = 5'000'000;

  /// Throws SizeGuard if n > kMaxStates or the projected count exceeds `cap`.
  ExhaustiveSystems(std::size_t n, Palette palette, OverlapMode overlap = OverlapMode::Induced,
                    std::size_t cap = kDefaultCap, Tolerance tol = {});

  std::size_t size() const noexcept { return total_; }
  std::size_t pair_count() const noexcept { return pairs_.size(); }
  const std::vector<std::pair<Bijection, Bijection>>& pairs() const noexcept { return pairs_; }
  /// Number of pre-overlap classes for pair `k`.
  std::size_t class_count(std::size_t k) const { return partitions_.at(k).class_count(); }

  GeneralSystem at(std::size_t index) const;

private:
  std::size_t n_;
  Palette palette_;
  OverlapMode overlap_;
  Tolerance tol_;
  std::vector<std::pair<Bijection, Bijection>> pairs_;
  std::vector<PairClassPartition> partitions_;
  std::vector<std::size_t> offsets_;  // first system index of each pair, plus total
  std::size_t total_ = 0;
};

/// All permutations of [0, n) in lexicographic order.
std::vector<Bijection> all_permutations(std::size_t n);

SystemSource exhaustive_source(std::shared_ptr<const ExhaustiveSystems> systems);

/// `count` tri_pair systems with sizes drawn from [min(2, max_n), max_n].
SystemSource random_tri_source(std::size_t count, std::size_t max_n, Palette palette,
                               OverlapMode overlap, std::uint64_t seed, Tolerance tol = {});

/// `count` violating_pair systems with sizes drawn from [3, max_n].
/// Throws ImpossibleOrder if max_n < 3.
SystemSource random_violating_source(std::size_t count, std::size_t max_n, Palette palette,
                                     OverlapMode overlap, std::uint64_t seed,
                                     Tolerance tol = {});

/// Well-mixed 64-bit seed for item `index` of a stream seeded by `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

} // namespace genmech

#pragma once

#include "genmech/detectors.hpp"
#include "genmech/generators.hpp"
#include "genmech/quantum.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace genmech::harness {

/// A generated system failed `validate`. Carries the offending system.
class InvalidSystem : public std::runtime_error {
public:
  InvalidSystem(std::size_t index, GeneralSystem system, ValidationReport report);

  std::size_t index() const noexcept { return index_; }
  const GeneralSystem& system() const noexcept { return system_; }
  const ValidationReport& report() const noexcept { return report_; }

private:
  std::size_t index_;
  GeneralSystem system_;
  ValidationReport report_;
};

/// A witness found on a time reversal invariant system.
struct Finding {
  std::size_t system_index = 0;
  GeneralSystem system;
  StateId witness = 0;
  /// Whether Tσ = T⁻¹Sσ at the witness (the proof's ρ is a single state).
  bool rho_coincides = false;
};

struct TheoremReport {
  StationarityMode mode = StationarityMode::Strict;
  std::size_t systems_checked = 0;
  std::size_t tri_count = 0;
  /// Strict-mode witnesses on invariant systems.
  std::vector<Finding> strict_violations;
  /// ByOverlap-mode witnesses on invariant systems. Recorded, never failing.
  std::vector<Finding> byoverlap_anomalies;
  /// Strict-mode witnesses on invariant systems at which ρ_f = ρ_i. The
  /// chain argument rules these out completely, so any entry is a logic bug.
  std::vector<Finding> coherence_failures;
  double elapsed_seconds = 0.0;

  bool accepted() const noexcept { return strict_violations.empty(); }
};

/// Checks every system of `source`: invariant systems must have no witness.
/// `threads` = 0 uses the hardware concurrency. Results are merged in system
/// index order, so reports are deterministic.
///
/// Throws InvalidSystem for the first (lowest-index) system failing validate.
TheoremReport verify_wigner_theorem(const SystemSource& source, StationarityMode mode,
                                    unsigned threads = 0);

enum class ChainFailureKind {
  Value,       // adjacent step values differ beyond tolerance
  Permutation, // the index identities of the invariance or S-cancellation lines fail
};

struct ChainFailure {
  std::size_t system_index = 0;
  StateId state = 0;
  std::size_t step = 0;  // 0..3, the equality between lines step and step+1
  ChainFailureKind kind = ChainFailureKind::Value;
  bool tri = false;
};

struct ChainReport {
  std::size_t systems_checked = 0;
  std::size_t tri_systems = 0;
  std::size_t chains_checked = 0;
  std::vector<ChainFailure> failures;

  bool ok() const noexcept { return failures.empty(); }
};

/// On invariant systems, all four chain equalities must hold for every state,
/// with the two permutation identities checked exactly. On other systems only
/// the first (T-compatibility) equality is asserted; they are skipped entirely
/// when `only_tri`. A negative `value_tol` uses each system's eps_eq.
ChainReport check_proof_chain_bulk(const SystemSource& source, bool only_tri,
                                   double value_tol = -1.0, unsigned threads = 0);

class AliasedSpectrum : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct QuantumAgreement {
  quantum::SpectrumReport spectrum;
  std::size_t states = 0;
  bool quantum_tri = false;
  bool table_tri = false;
  Verdict verdict;  // ByOverlap mode
  std::size_t eigen_states = 0;
  std::size_t stationary_mismatches = 0;
  std::size_t degeneracy_mismatches = 0;
  std::vector<std::string> notes;

  bool tri_agrees() const noexcept { return quantum_tri == table_tri; }
  bool full_agreement() const noexcept {
    return tri_agrees() && stationary_mismatches == 0 && degeneracy_mismatches == 0;
  }
};

/// Tabulates (H, t, T) and compares the abstract detectors against the
/// quantum-side facts: T-invariance of H, stationarity of eigenvector states,
/// and non-degeneracy versus eigenvalue multiplicity.
///
/// Empty `seeds` means the eigenvectors of H. Throws AliasedSpectrum if two
/// distinct eigenvalues alias at t; OrbitNotClosed propagates from tabulate.
QuantumAgreement cross_validate_quantum(const quantum::Hamiltonian& H, double t,
                                        const quantum::TimeReversalOp& T,
                                        std::vector<quantum::StateVector> seeds,
                                        quantum::OrbitClosureConfig cfg, Tolerance tol = {});

struct FootnoteTally {
  std::size_t dim = 0;
  std::size_t trials = 0;
  std::size_t phase_pairs_passed = 0;
  std::size_t independent_pairs_passed = 0;

  std::size_t failures() const noexcept {
    return 2 * trials - phase_pairs_passed - independent_pairs_passed;
  }
};

/// Phase-related vectors must agree on every probe overlap and have their
/// phase recovered; independent random vectors must be told apart on both
/// counts. Probes are the standard basis plus 20 random unit vectors.
FootnoteTally footnote_oracle(std::size_t dim, std::size_t trials, std::uint64_t seed);

/// Probe-overlap tolerance and phase-recovery tolerance used by footnote_oracle.
inline constexpr double kProbeTolerance = 1e-10;
inline constexpr double kPhaseTolerance = 1e-8;

} // namespace genmech::harness

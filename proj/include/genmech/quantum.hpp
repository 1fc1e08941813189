#pragma once

#include "genmech/system.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace genmech::quantum {

using StateVector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

class NonHermitian : public std::invalid_argument {
public:
  explicit NonHermitian(double residual);
  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

class OrbitNotClosed : public std::runtime_error {
public:
  explicit OrbitNotClosed(std::size_t cap);
  std::size_t cap() const noexcept { return cap_; }

private:
  std::size_t cap_;
};

/// Internal inconsistency: a closed state set on which S or T is not a bijection.
class NonBijective : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Hamiltonian in units with ħ = 1. Hermiticity is checked by the operations
/// that need it, not on construction.
struct Hamiltonian {
  Matrix matrix;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix.rows()); }
  /// max |H[a][b] − conj(H[b][a])|, or +inf for a non-square matrix.
  double hermitian_residual() const;
};

/// ψ ↦ V·conj(ψ) when `conjugates`, else ψ ↦ V·ψ.
struct TimeReversalOp {
  Matrix unitary_part;
  bool conjugates = true;

  /// Plain complex conjugation in the standard basis.
  static TimeReversalOp conjugation(std::size_t dim);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(unitary_part.rows()); }
  /// max |V†V − I|.
  double unitarity_residual() const;
};

struct OrbitClosureConfig {
  std::size_t max_states = 256;
  double dedup_eps = 1e-9;
  double time = 0.0;
};

struct SpectrumReport {
  std::vector<double> eigenvalues;           // distinct, ascending
  std::vector<std::size_t> multiplicities;   // parallel to eigenvalues
  std::vector<std::pair<std::size_t, std::size_t>> aliased_pairs;  // j < k into eigenvalues
};

struct Eigensystem {
  Eigen::VectorXd values;  // ascending
  Matrix vectors;          // columns are unit eigenvectors
};

/// Throws NonHermitian when the residual exceeds `tol.eps_eq`.
Eigensystem eigensystem(const Hamiltonian& H, Tolerance tol = {});

/// e^{−itH}, built from the eigendecomposition of H.
Matrix evolution_operator(const Hamiltonian& H, double t, Tolerance tol = {});

StateVector evolve(const Hamiltonian& H, double t, const StateVector& psi, Tolerance tol = {});

/// Σ conj(ψ_k)·φ_k.
Complex inner(const StateVector& psi, const StateVector& phi);

/// |⟨ψ, φ⟩|².
double transition_probability(const StateVector& psi, const StateVector& phi);

StateVector time_reverse(const TimeReversalOp& T, const StateVector& psi);

/// θ ∈ (−π, π] with ‖ψ − e^{iθ}φ‖ ≤ tol, read off the largest component of φ,
/// or nullopt when no phase relates the two vectors.
std::optional<double> phase_equivalent(const StateVector& psi, const StateVector& phi,
                                       double tol);

SpectrumReport spectrum_degeneracy(const Hamiltonian& H, double t, Tolerance tol = {});

/// Whether the time reversal commutes with H: V·conj(H)·V† = H for the
/// antiunitary form, V·H·V† = H otherwise.
bool is_t_invariant_quantum(const Hamiltonian& H, const TimeReversalOp& T, Tolerance tol = {});

/// Unit eigenvectors of H, each rotated so its largest component is real and
/// positive. Used as default tabulation seeds.
std::vector<StateVector> eigenvector_seeds(const Hamiltonian& H, Tolerance tol = {});

/// A general system tabulated from a quantum model, with the vector for each
/// state index.
struct TabulatedSystem {
  GeneralSystem system;
  std::vector<StateVector> states;
};

/// Closes `seeds` under e^{−itH} and the time reversal, deduplicating by
/// vector distance (not by ray), and tabulates overlap = |⟨·,·⟩|² and
/// pre-overlap = ⟨·,·⟩.
///
/// Throws OrbitNotClosed when the closure needs more than `cfg.max_states`
/// states, NonHermitian for a bad H, std::invalid_argument for bad seeds.
TabulatedSystem tabulate(const Hamiltonian& H, const TimeReversalOp& T,
                         const OrbitClosureConfig& cfg, const std::vector<StateVector>& seeds,
                         Tolerance tol = {});

// Sampling helpers for tests and the verification harness.

/// Complex Gaussian vector, normalized.
StateVector random_state(std::size_t dim, std::mt19937_64& rng);

/// (G + G†)/2 with complex Gaussian G.
Hamiltonian random_hermitian(std::size_t dim, std::mt19937_64& rng);

/// Random orthogonal Q.
Eigen::MatrixXd random_orthogonal(std::size_t dim, std::mt19937_64& rng);

/// Real symmetric Q·diag(h)·Qᵀ whose eigenphases at time `t` are distinct
/// `period`-th roots of unity, so every eigenvector orbit closes and no pair
/// of eigenvalues aliases. Requires dim ≤ period.
Hamiltonian random_commensurate_real_symmetric(std::size_t dim, double t, std::size_t period,
                                               std::mt19937_64& rng);

} // namespace genmech::quantum

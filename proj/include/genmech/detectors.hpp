#pragma once

#include "genmech/system.hpp"

#include <array>
#include <stdexcept>
#include <utility>
#include <vector>

namespace genmech {

/// Raised by `is_nondegenerate` when the queried state is not stationary.
class NotStationary : public std::invalid_argument {
public:
  explicit NotStationary(StateId state);
  StateId state() const noexcept { return state_; }

private:
  StateId state_;
};

/// Two states are equivalent when their overlap rows agree against every state.
bool equivalent(const GeneralSystem& system, StateId a, StateId b);

bool is_stationary(const GeneralSystem& system, StateId a, StationarityMode mode);

/// Stationary states in ascending order.
std::vector<StateId> stationary_set(const GeneralSystem& system, StationarityMode mode);

/// Pre-overlap of a state with its own dynamical image, p[a][S a]. Plays the
/// role of an eigenphase; equal signatures mean "same energy".
Complex stationary_signature(const GeneralSystem& system, StateId a);

/// A stationary state is non-degenerate when every stationary state (same mode)
/// sharing its signature is equivalent to it.
///
/// Throws NotStationary when `a` is not stationary in `mode`.
bool is_nondegenerate(const GeneralSystem& system, StateId a, StationarityMode mode);

/// T⁻¹∘S == S⁻¹∘T, compared exactly as permutations.
bool is_time_reversal_invariant(const GeneralSystem& system);

/// The three algebraic forms of time reversal invariance. They must always agree.
struct TriForms {
  bool inverse_form = false;   // T⁻¹S = S⁻¹T
  bool identity_form = false;  // T⁻¹ST⁻¹S = I
  bool swapped_form = false;   // TS⁻¹ = ST⁻¹

  bool agree() const noexcept {
    return inverse_form == identity_form && identity_form == swapped_form;
  }
};

TriForms tri_equivalent_forms(const GeneralSystem& system);

/// States that are stationary, non-degenerate, and not equivalent to their time
/// reverse. Any witness implies the system is not time reversal invariant.
/// Sorted ascending.
std::vector<StateId> wigner_witnesses(const GeneralSystem& system, StationarityMode mode);

struct Verdict {
  std::vector<StateId> witnesses;
  bool tri_direct = false;
  bool consistent = true;  // !(witnesses nonempty && tri_direct)
};

Verdict wigner_verdict(const GeneralSystem& system, StationarityMode mode);

/// Evaluation of the five-line chain showing that a time reversal invariant
/// system gives σ and its reverse the same signature.
///
/// With σ_i = a, σ_f = S a, ρ_f = T a, ρ_i = T⁻¹ S a the lines are
///   p(σ_f, S σ_i)
///   p(T⁻¹ S σ_i, T⁻¹ σ_f)     T-compatibility
///   p(S⁻¹ ρ_f, ρ_i)           invariance + definition of ρ
///   p(S S⁻¹ ρ_f, S ρ_i)       S-compatibility
///   p(ρ_f, S ρ_i)
struct ChainTrace {
  StateId sigma = 0;
  StateId rho_f = 0;
  StateId rho_i = 0;
  /// Index pair at which each line evaluates the pre-overlap.
  std::array<std::pair<StateId, StateId>, 5> step_args{};
  std::array<Complex, 5> step_values{};
  std::array<bool, 4> step_equal{};
  bool rho_coincides = false;

  bool all_equal() const noexcept {
    return step_equal[0] && step_equal[1] && step_equal[2] && step_equal[3];
  }
};

ChainTrace proof_chain(const GeneralSystem& system, StateId a);

} // namespace genmech

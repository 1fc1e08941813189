#include "genmech/detectors.hpp"

#include <string>

namespace genmech {

NotStationary::NotStationary(StateId state)
    : std::invalid_argument("state " + std::to_string(state) + " is not stationary"),
      state_(state) {}

bool equivalent(const GeneralSystem& sys, StateId a, StateId b) {
  if (a == b) return true;
  for (std::size_t xi = 0; xi < sys.n; ++xi)
    if (!sys.tol.same(sys.overlap(a, xi), sys.overlap(b, xi))) return false;
  return true;
}

bool is_stationary(const GeneralSystem& sys, StateId a, StationarityMode mode) {
  const StateId image = sys.dynamics(a);
  if (mode == StationarityMode::Strict) return image == a;
  return equivalent(sys, image, a);
}

std::vector<StateId> stationary_set(const GeneralSystem& sys, StationarityMode mode) {
  std::vector<StateId> out;
  for (StateId a = 0; a < sys.n; ++a)
    if (is_stationary(sys, a, mode)) out.push_back(a);
  return out;
}

Complex stationary_signature(const GeneralSystem& sys, StateId a) {
  return sys.pre_overlap(a, sys.dynamics(a));
}

namespace {

// Non-degeneracy of `a` against a precomputed stationary set.
bool nondegenerate_among(const GeneralSystem& sys, StateId a,
                         const std::vector<StateId>& stationary) {
  const Complex sig = stationary_signature(sys, a);
  for (StateId rho : stationary) {
    if (rho == a) continue;
    if (sys.tol.same(sig, stationary_signature(sys, rho)) && !equivalent(sys, a, rho))
      return false;
  }
  return true;
}

} // namespace

bool is_nondegenerate(const GeneralSystem& sys, StateId a, StationarityMode mode) {
  if (!is_stationary(sys, a, mode)) throw NotStationary(a);
  return nondegenerate_among(sys, a, stationary_set(sys, mode));
}

bool is_time_reversal_invariant(const GeneralSystem& sys) {
  const Bijection& S = sys.dynamics;
  const Bijection& T = sys.time_reversal;
  return T.inverse().after(S) == S.inverse().after(T);
}

TriForms tri_equivalent_forms(const GeneralSystem& sys) {
  const Bijection& S = sys.dynamics;
  const Bijection& T = sys.time_reversal;
  const Bijection S_inv = S.inverse();
  const Bijection T_inv = T.inverse();

  TriForms forms;
  forms.inverse_form = T_inv.after(S) == S_inv.after(T);
  forms.identity_form = T_inv.after(S).after(T_inv).after(S).is_identity();
  forms.swapped_form = T.after(S_inv) == S.after(T_inv);
  return forms;
}

std::vector<StateId> wigner_witnesses(const GeneralSystem& sys, StationarityMode mode) {
  const std::vector<StateId> stationary = stationary_set(sys, mode);
  std::vector<StateId> out;
  for (StateId a : stationary) {
    if (!nondegenerate_among(sys, a, stationary)) continue;
    if (equivalent(sys, sys.time_reversal(a), a)) continue;
    out.push_back(a);
  }
  return out;
}

Verdict wigner_verdict(const GeneralSystem& sys, StationarityMode mode) {
  Verdict v;
  v.witnesses = wigner_witnesses(sys, mode);
  v.tri_direct = is_time_reversal_invariant(sys);
  v.consistent = !(!v.witnesses.empty() && v.tri_direct);
  return v;
}

ChainTrace proof_chain(const GeneralSystem& sys, StateId a) {
  const Bijection& S = sys.dynamics;
  const Bijection& T = sys.time_reversal;
  const Bijection S_inv = S.inverse();
  const Bijection T_inv = T.inverse();

  ChainTrace tr;
  tr.sigma = a;
  const StateId sigma_i = a;
  const StateId sigma_f = S(a);
  tr.rho_f = T(sigma_i);
  tr.rho_i = T_inv(sigma_f);
  tr.rho_coincides = tr.rho_f == tr.rho_i;

  tr.step_args = {{
      {sigma_f, S(sigma_i)},
      {T_inv(S(sigma_i)), T_inv(sigma_f)},
      {S_inv(tr.rho_f), tr.rho_i},
      {S(S_inv(tr.rho_f)), S(tr.rho_i)},
      {tr.rho_f, S(tr.rho_i)},
  }};
  for (std::size_t k = 0; k < 5; ++k)
    tr.step_values[k] = sys.pre_overlap(tr.step_args[k].first, tr.step_args[k].second);
  for (std::size_t k = 0; k < 4; ++k)
    tr.step_equal[k] = sys.tol.same(tr.step_values[k], tr.step_values[k + 1]);
  return tr;
}

} // namespace genmech

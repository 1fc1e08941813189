#include "genmech/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <numbers>
#include <optional>
#include <thread>

namespace genmech::harness {

InvalidSystem::InvalidSystem(std::size_t index, GeneralSystem system, ValidationReport report)
    : std::runtime_error("generated system " + std::to_string(index) + " failed validation (" +
                         std::to_string(report.violations.size()) + " violations)"),
      index_(index), system_(std::move(system)), report_(std::move(report)) {}

namespace {

// Runs fn(index) for every index in [0, count) on up to `threads` workers and
// returns the results in index order. The lowest-index exception is rethrown.
template <typename Result, typename Fn>
std::vector<Result> parallel_map(std::size_t count, unsigned threads, Fn fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));

  std::vector<Result> results(count);
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::size_t> error_index(threads, count);
  auto work = [&](unsigned w) {
    const std::size_t lo = count * w / threads;
    const std::size_t hi = count * (w + 1) / threads;
    for (std::size_t k = lo; k < hi; ++k) {
      try {
        results[k] = fn(k);
      } catch (...) {
        errors[w] = std::current_exception();
        error_index[w] = k;
        return;
      }
    }
  };

  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
  }
  // Chunks are ordered, so the first failing chunk holds the lowest index.
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

GeneralSystem checked(const SystemSource& source, std::size_t k) {
  GeneralSystem sys = source.at(k);
  ValidationReport rep = validate(sys);
  if (!rep.ok()) throw InvalidSystem(k, std::move(sys), std::move(rep));
  return sys;
}

struct TheoremItem {
  bool tri = false;
  std::vector<Finding> findings;
};

} // namespace

TheoremReport verify_wigner_theorem(const SystemSource& source, StationarityMode mode,
                                    unsigned threads) {
  const auto start = std::chrono::steady_clock::now();
  auto items = parallel_map<TheoremItem>(source.count, threads, [&](std::size_t k) {
    TheoremItem item;
    GeneralSystem sys = checked(source, k);
    item.tri = is_time_reversal_invariant(sys);
    if (!item.tri) return item;
    for (StateId w : wigner_witnesses(sys, mode))
      item.findings.push_back({k, sys, w, proof_chain(sys, w).rho_coincides});
    return item;
  });

  TheoremReport report;
  report.mode = mode;
  report.systems_checked = source.count;
  for (auto& item : items) {
    if (item.tri) ++report.tri_count;
    for (auto& f : item.findings) {
      if (mode == StationarityMode::Strict) {
        if (f.rho_coincides) report.coherence_failures.push_back(f);
        report.strict_violations.push_back(std::move(f));
      } else {
        report.byoverlap_anomalies.push_back(std::move(f));
      }
    }
  }
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

namespace {

struct ChainItem {
  bool tri = false;
  bool checked = false;
  std::size_t chains = 0;
  std::vector<ChainFailure> failures;
};

} // namespace

ChainReport check_proof_chain_bulk(const SystemSource& source, bool only_tri, double value_tol,
                                   unsigned threads) {
  auto items = parallel_map<ChainItem>(source.count, threads, [&](std::size_t k) {
    ChainItem item;
    const GeneralSystem sys = checked(source, k);
    item.tri = is_time_reversal_invariant(sys);
    if (only_tri && !item.tri) return item;
    item.checked = true;
    const double eps = value_tol < 0.0 ? sys.tol.eps_eq : value_tol;
    for (StateId a = 0; a < sys.n; ++a) {
      const ChainTrace tr = proof_chain(sys, a);
      ++item.chains;
      const std::size_t steps = item.tri ? 4 : 1;
      for (std::size_t s = 0; s < steps; ++s) {
        if (std::abs(tr.step_values[s] - tr.step_values[s + 1]) > eps)
          item.failures.push_back({k, a, s, ChainFailureKind::Value, item.tri});
      }
      if (!item.tri) continue;
      // T⁻¹Sσ = S⁻¹Tσ is the invariance step; S S⁻¹ρ_f = ρ_f is plain cancellation.
      if (tr.step_args[1] != tr.step_args[2])
        item.failures.push_back({k, a, 1, ChainFailureKind::Permutation, true});
      if (tr.step_args[3] != tr.step_args[4])
        item.failures.push_back({k, a, 3, ChainFailureKind::Permutation, true});
    }
    return item;
  });

  ChainReport report;
  for (auto& item : items) {
    if (!item.checked) continue;
    ++report.systems_checked;
    if (item.tri) ++report.tri_systems;
    report.chains_checked += item.chains;
    for (auto& f : item.failures) report.failures.push_back(f);
  }
  return report;
}

QuantumAgreement cross_validate_quantum(const quantum::Hamiltonian& H, double t,
                                        const quantum::TimeReversalOp& T,
                                        std::vector<quantum::StateVector> seeds,
                                        quantum::OrbitClosureConfig cfg, Tolerance tol) {
  QuantumAgreement out;
  out.spectrum = quantum::spectrum_degeneracy(H, t, tol);
  if (!out.spectrum.aliased_pairs.empty())
    throw AliasedSpectrum("eigenvalues " + std::to_string(out.spectrum.aliased_pairs.front().first) +
                          " and " + std::to_string(out.spectrum.aliased_pairs.front().second) +
                          " alias at t = " + std::to_string(t));
  if (seeds.empty()) seeds = quantum::eigenvector_seeds(H, tol);
  cfg.time = t;
  const quantum::TabulatedSystem tab = quantum::tabulate(H, T, cfg, seeds, tol);
  const GeneralSystem& sys = tab.system;
  out.states = sys.n;
  out.quantum_tri = quantum::is_t_invariant_quantum(H, T, tol);
  out.table_tri = is_time_reversal_invariant(sys);
  out.verdict = wigner_verdict(sys, StationarityMode::ByOverlap);

  // Eigenvector detection is looser than eps_eq: the residual of a computed
  // eigenvector scales with ‖H‖ and accumulates along the orbit.
  const double scale = std::max(1.0, H.matrix.cwiseAbs().maxCoeff());
  const double eig_tol = 1e-7 * scale;
  for (StateId a = 0; a < sys.n; ++a) {
    const auto& psi = tab.states[a];
    const Complex rayleigh = quantum::inner(psi, H.matrix * psi);
    if ((H.matrix * psi - rayleigh * psi).norm() > eig_tol) continue;
    ++out.eigen_states;

    const bool stationary = is_stationary(sys, a, StationarityMode::ByOverlap);
    if (!stationary) {
      ++out.stationary_mismatches;
      out.notes.push_back("eigenvector state " + std::to_string(a) + " is not stationary");
      continue;
    }
    const auto& ev = out.spectrum.eigenvalues;
    const auto nearest = std::min_element(ev.begin(), ev.end(), [&](double x, double y) {
      return std::abs(x - rayleigh.real()) < std::abs(y - rayleigh.real());
    });
    const std::size_t multiplicity =
        out.spectrum.multiplicities[static_cast<std::size_t>(nearest - ev.begin())];
    const bool nondegenerate = is_nondegenerate(sys, a, StationarityMode::ByOverlap);
    if (nondegenerate != (multiplicity == 1)) {
      ++out.degeneracy_mismatches;
      out.notes.push_back("state " + std::to_string(a) + ": nondegenerate=" +
                          (nondegenerate ? "true" : "false") + " but multiplicity " +
                          std::to_string(multiplicity));
    }
  }
  if (!out.tri_agrees())
    out.notes.push_back(std::string("quantum T-invariance ") + (out.quantum_tri ? "true" : "false") +
                        " but tabulated invariance " + (out.table_tri ? "true" : "false"));
  return out;
}

FootnoteTally footnote_oracle(std::size_t dim, std::size_t trials, std::uint64_t seed) {
  if (dim < 2) throw std::invalid_argument("footnote_oracle: dim must be >= 2");
  if (trials < 1) throw std::invalid_argument("footnote_oracle: trials must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  const auto d = static_cast<Eigen::Index>(dim);

  std::vector<quantum::StateVector> probes;
  for (Eigen::Index k = 0; k < d; ++k) probes.push_back(quantum::StateVector::Unit(d, k));
  for (int k = 0; k < 20; ++k) probes.push_back(quantum::random_state(dim, rng));

  auto probes_agree = [&](const quantum::StateVector& psi, const quantum::StateVector& phi) {
    return std::all_of(probes.begin(), probes.end(), [&](const quantum::StateVector& xi) {
      return std::abs(quantum::transition_probability(psi, xi) -
                      quantum::transition_probability(phi, xi)) <= kProbeTolerance;
    });
  };
  auto angle_gap = [](double a, double b) {
    return std::abs(std::remainder(a - b, 2.0 * std::numbers::pi));
  };

  FootnoteTally tally;
  tally.dim = dim;
  tally.trials = trials;
  for (std::size_t k = 0; k < trials; ++k) {
    const quantum::StateVector phi = quantum::random_state(dim, rng);
    const double theta = angle(rng);
    const quantum::StateVector psi = std::polar(1.0, theta) * phi;
    const auto found = quantum::phase_equivalent(psi, phi, kPhaseTolerance);
    if (probes_agree(psi, phi) && found && angle_gap(*found, theta) <= kPhaseTolerance)
      ++tally.phase_pairs_passed;

    const quantum::StateVector other = quantum::random_state(dim, rng);
    if (!probes_agree(other, phi) && !quantum::phase_equivalent(other, phi, kPhaseTolerance))
      ++tally.independent_pairs_passed;
  }
  return tally;
}

} // namespace genmech::harness

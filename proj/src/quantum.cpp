#include "genmech/quantum.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <string>

namespace genmech::quantum {

NonHermitian::NonHermitian(double residual)
    : std::invalid_argument("Hamiltonian is not Hermitian (residual " +
                            std::to_string(residual) + ")"),
      residual_(residual) {}

OrbitNotClosed::OrbitNotClosed(std::size_t cap)
    : std::runtime_error("orbit closure exceeded max_states = " + std::to_string(cap)),
      cap_(cap) {}

double Hamiltonian::hermitian_residual() const {
  if (matrix.rows() != matrix.cols()) return std::numeric_limits<double>::infinity();
  if (matrix.size() == 0) return 0.0;
  return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
}

TimeReversalOp TimeReversalOp::conjugation(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  return {Matrix::Identity(d, d), true};
}

double TimeReversalOp::unitarity_residual() const {
  if (unitary_part.rows() != unitary_part.cols()) return std::numeric_limits<double>::infinity();
  const auto d = unitary_part.rows();
  if (d == 0) return 0.0;
  return (unitary_part.adjoint() * unitary_part - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
}

namespace {

void require_hermitian(const Hamiltonian& H, Tolerance tol) {
  const double r = H.hermitian_residual();
  if (!(r <= tol.eps_eq)) throw NonHermitian(r);
}

void require_dim(std::size_t expected, Eigen::Index got, const char* what) {
  if (static_cast<std::size_t>(got) != expected)
    throw std::invalid_argument(std::string(what) + ": dimension " + std::to_string(got) +
                                " does not match " + std::to_string(expected));
}

// Rotate so the largest-magnitude component is real and positive.
StateVector fix_phase(StateVector v) {
  Eigen::Index k = 0;
  v.cwiseAbs().maxCoeff(&k);
  const double mag = std::abs(v(k));
  if (mag > 0) v *= std::conj(v(k)) / mag;
  return v;
}

} // namespace

Eigensystem eigensystem(const Hamiltonian& H, Tolerance tol) {
  require_hermitian(H, tol);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(H.matrix);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix evolution_operator(const Hamiltonian& H, double t, Tolerance tol) {
  const Eigensystem es = eigensystem(H, tol);
  Eigen::VectorXcd phases(es.values.size());
  for (Eigen::Index k = 0; k < es.values.size(); ++k)
    phases(k) = std::polar(1.0, -t * es.values(k));
  return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

StateVector evolve(const Hamiltonian& H, double t, const StateVector& psi, Tolerance tol) {
  require_dim(H.dim(), psi.size(), "evolve");
  return evolution_operator(H, t, tol) * psi;
}

Complex inner(const StateVector& psi, const StateVector& phi) {
  require_dim(static_cast<std::size_t>(psi.size()), phi.size(), "inner");
  return psi.dot(phi);  // conjugates the left operand
}

double transition_probability(const StateVector& psi, const StateVector& phi) {
  return std::norm(inner(psi, phi));
}

StateVector time_reverse(const TimeReversalOp& T, const StateVector& psi) {
  require_dim(T.dim(), psi.size(), "time_reverse");
  if (T.conjugates) return T.unitary_part * psi.conjugate();
  return T.unitary_part * psi;
}

std::optional<double> phase_equivalent(const StateVector& psi, const StateVector& phi,
                                       double tol) {
  require_dim(static_cast<std::size_t>(psi.size()), phi.size(), "phase_equivalent");
  if (phi.size() == 0) return 0.0;
  Eigen::Index k = 0;
  phi.cwiseAbs().maxCoeff(&k);
  double theta = 0.0;
  if (std::abs(phi(k)) > 0.0 && std::abs(psi(k)) > 0.0) theta = std::arg(psi(k) / phi(k));
  if (theta <= -std::numbers::pi) theta = std::numbers::pi;
  if ((psi - std::polar(1.0, theta) * phi).norm() <= tol) return theta;
  return std::nullopt;
}

SpectrumReport spectrum_degeneracy(const Hamiltonian& H, double t, Tolerance tol) {
  const Eigensystem es = eigensystem(H, tol);
  SpectrumReport rep;
  double cluster_start = 0.0;
  double cluster_sum = 0.0;
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    const double h = es.values(k);
    if (rep.eigenvalues.empty() || h - cluster_start > tol.eps_eq) {
      if (!rep.eigenvalues.empty())
        rep.eigenvalues.back() = cluster_sum / static_cast<double>(rep.multiplicities.back());
      rep.eigenvalues.push_back(h);
      rep.multiplicities.push_back(1);
      cluster_start = h;
      cluster_sum = h;
    } else {
      ++rep.multiplicities.back();
      cluster_sum += h;
    }
  }
  if (!rep.eigenvalues.empty())
    rep.eigenvalues.back() = cluster_sum / static_cast<double>(rep.multiplicities.back());

  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t j = 0; j < rep.eigenvalues.size(); ++j) {
    for (std::size_t k = j + 1; k < rep.eigenvalues.size(); ++k) {
      const double phase = (rep.eigenvalues[k] - rep.eigenvalues[j]) * t;
      if (std::abs(std::remainder(phase, two_pi)) <= tol.eps_eq)
        rep.aliased_pairs.emplace_back(j, k);
    }
  }
  return rep;
}

bool is_t_invariant_quantum(const Hamiltonian& H, const TimeReversalOp& T, Tolerance tol) {
  require_dim(H.dim(), T.unitary_part.rows(), "is_t_invariant_quantum");
  const Matrix& V = T.unitary_part;
  const Matrix reversed =
      T.conjugates ? Matrix(V * H.matrix.conjugate() * V.adjoint()) : Matrix(V * H.matrix * V.adjoint());
  if (H.matrix.size() == 0) return true;
  return (reversed - H.matrix).cwiseAbs().maxCoeff() <= tol.eps_eq;
}

std::vector<StateVector> eigenvector_seeds(const Hamiltonian& H, Tolerance tol) {
  const Eigensystem es = eigensystem(H, tol);
  std::vector<StateVector> out;
  for (Eigen::Index k = 0; k < es.vectors.cols(); ++k)
    out.push_back(fix_phase(es.vectors.col(k).normalized()));
  return out;
}

TabulatedSystem tabulate(const Hamiltonian& H, const TimeReversalOp& T,
                         const OrbitClosureConfig& cfg, const std::vector<StateVector>& seeds,
                         Tolerance tol) {
  if (seeds.empty()) throw std::invalid_argument("tabulate: no seed states");
  if (cfg.max_states < 1) throw std::invalid_argument("tabulate: max_states must be >= 1");
  if (!(cfg.dedup_eps >= 0.0)) throw std::invalid_argument("tabulate: dedup_eps must be >= 0");
  require_dim(H.dim(), T.unitary_part.rows(), "tabulate (time reversal)");
  for (const auto& s : seeds) {
    require_dim(H.dim(), s.size(), "tabulate (seed)");
    if (std::abs(s.norm() - 1.0) > tol.eps_eq)
      throw std::invalid_argument("tabulate: seed is not unit norm");
  }

  const Matrix U = evolution_operator(H, cfg.time, tol);

  std::vector<StateVector> states;
  auto index_of = [&](const StateVector& v) -> StateId {
    for (std::size_t k = 0; k < states.size(); ++k)
      if ((states[k] - v).norm() <= cfg.dedup_eps) return k;
    if (states.size() >= cfg.max_states) throw OrbitNotClosed(cfg.max_states);
    states.push_back(v);
    return states.size() - 1;
  };

  for (const auto& s : seeds) index_of(s);
  std::vector<StateId> s_image;
  std::vector<StateId> t_image;
  for (std::size_t k = 0; k < states.size(); ++k) {
    // `states` may grow while we walk it; copy before inserting.
    const StateVector current = states[k];
    s_image.push_back(index_of(U * current));
    t_image.push_back(index_of(time_reverse(T, current)));
  }

  TabulatedSystem out;
  GeneralSystem& sys = out.system;
  sys.n = states.size();
  sys.tol = tol;
  sys.dynamics = Bijection(std::move(s_image));
  sys.time_reversal = Bijection(std::move(t_image));
  if (!sys.dynamics.is_permutation())
    throw NonBijective("tabulate: evolution is not a bijection on the closed state set");
  if (!sys.time_reversal.is_permutation())
    throw NonBijective("tabulate: time reversal is not a bijection on the closed state set");

  sys.overlap = OverlapTable::square(sys.n);
  sys.pre_overlap = PreOverlapTable::square(sys.n);
  for (std::size_t a = 0; a < sys.n; ++a) {
    for (std::size_t b = a; b < sys.n; ++b) {
      const Complex z = inner(states[a], states[b]);
      sys.pre_overlap(a, b) = z;
      sys.pre_overlap(b, a) = std::conj(z);
      sys.overlap(a, b) = sys.overlap(b, a) = std::norm(z);
    }
  }
  out.states = std::move(states);
  return out;
}

StateVector random_state(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  StateVector v(static_cast<Eigen::Index>(dim));
  for (auto& z : v) z = Complex(gauss(rng), gauss(rng));
  return v.normalized();
}

Hamiltonian random_hermitian(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  const auto d = static_cast<Eigen::Index>(dim);
  Matrix g(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) g(r, c) = Complex(gauss(rng), gauss(rng));
  return {(g + g.adjoint()) / 2.0};
}

Eigen::MatrixXd random_orthogonal(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  const auto d = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXd g(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) g(r, c) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  return qr.householderQ() * Eigen::MatrixXd::Identity(d, d);
}

Hamiltonian random_commensurate_real_symmetric(std::size_t dim, double t, std::size_t period,
                                               std::mt19937_64& rng) {
  if (dim > period) throw std::invalid_argument("random_commensurate: dim exceeds period");
  if (t == 0.0) throw std::invalid_argument("random_commensurate: t must be nonzero");
  std::vector<long> residues(period);
  for (std::size_t k = 0; k < period; ++k) residues[k] = static_cast<long>(k);
  std::shuffle(residues.begin(), residues.end(), rng);
  std::uniform_int_distribution<long> wrap(-1, 1);

  const auto d = static_cast<Eigen::Index>(dim);
  Eigen::VectorXd h(d);
  const auto p = static_cast<long>(period);
  for (Eigen::Index k = 0; k < d; ++k) {
    const long m = residues[static_cast<std::size_t>(k)] + p * wrap(rng);
    h(k) = 2.0 * std::numbers::pi * static_cast<double>(m) / (t * static_cast<double>(p));
  }
  const Eigen::MatrixXd Q = random_orthogonal(dim, rng);
  Eigen::MatrixXd real = Q * h.asDiagonal() * Q.transpose();
  real = (real + real.transpose()) / 2.0;
  return {real.cast<Complex>()};
}

} // namespace genmech::quantum

#include "genmech/system.hpp"

#include <algorithm>
#include <sstream>

namespace genmech {

std::string_view to_string(StationarityMode mode) {
  switch (mode) {
  case StationarityMode::Strict: return "strict";
  case StationarityMode::ByOverlap: return "overlap";
  }
  return "?";
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
  case ViolationKind::Dimension: return "dimension";
  case ViolationKind::NegativeTolerance: return "negative-tolerance";
  case ViolationKind::DynamicsNotBijective: return "dynamics-not-bijective";
  case ViolationKind::TimeReversalNotBijective: return "time-reversal-not-bijective";
  case ViolationKind::OverlapAsymmetric: return "overlap-asymmetric";
  case ViolationKind::PreOverlapSCompatibility: return "pre-overlap-S-compatibility";
  case ViolationKind::PreOverlapTCompatibility: return "pre-overlap-T-compatibility";
  }
  return "?";
}

bool ValidationReport::contains(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

GeneralSystem identity_system(std::size_t n) {
  GeneralSystem sys;
  sys.n = n;
  sys.dynamics = Bijection::identity(n);
  sys.time_reversal = Bijection::identity(n);
  sys.overlap = OverlapTable::square(n, 0.0);
  sys.pre_overlap = PreOverlapTable::square(n, Complex{0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k) {
    sys.overlap(k, k) = 1.0;
    sys.pre_overlap(k, k) = 1.0;
  }
  return sys;
}

namespace {

std::string shape(std::size_t rows, std::size_t cols) {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

std::string describe(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  return os.str();
}

} // namespace

ValidationReport validate(const GeneralSystem& sys) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, std::vector<StateId> idx, std::string detail) {
    report.violations.push_back({kind, std::move(idx), std::move(detail)});
  };

  const std::size_t n = sys.n;
  if (!(sys.tol.eps_eq >= 0.0))
    add(ViolationKind::NegativeTolerance, {}, "eps_eq must be >= 0");

  bool shape_ok = true;
  if (sys.dynamics.size() != n) {
    add(ViolationKind::Dimension, {}, "dynamics has length " + std::to_string(sys.dynamics.size()) +
                                          ", expected " + std::to_string(n));
    shape_ok = false;
  }
  if (sys.time_reversal.size() != n) {
    add(ViolationKind::Dimension, {}, "time reversal has length " +
                                          std::to_string(sys.time_reversal.size()) + ", expected " +
                                          std::to_string(n));
    shape_ok = false;
  }
  if (!sys.overlap.is_square(n)) {
    add(ViolationKind::Dimension, {}, "overlap is " + shape(sys.overlap.rows(), sys.overlap.cols()) +
                                          ", expected " + shape(n, n));
    shape_ok = false;
  }
  if (!sys.pre_overlap.is_square(n)) {
    add(ViolationKind::Dimension, {}, "pre-overlap is " +
                                          shape(sys.pre_overlap.rows(), sys.pre_overlap.cols()) +
                                          ", expected " + shape(n, n));
    shape_ok = false;
  }
  if (!shape_ok) return report;

  const Tolerance& tol = sys.tol;
  const bool s_ok = sys.dynamics.is_permutation();
  const bool t_ok = sys.time_reversal.is_permutation();
  if (!s_ok) add(ViolationKind::DynamicsNotBijective, {}, "S is not a permutation of [0, n)");
  if (!t_ok) add(ViolationKind::TimeReversalNotBijective, {}, "T is not a permutation of [0, n)");

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      if (!tol.same(sys.overlap(a, b), sys.overlap(b, a)))
        add(ViolationKind::OverlapAsymmetric, {a, b}, "O[a][b] != O[b][a]");
    }
  }

  const auto& S = sys.dynamics;
  const auto& T = sys.time_reversal;
  const auto& p = sys.pre_overlap;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (s_ok && !tol.same(p(S(a), S(b)), p(a, b)))
        add(ViolationKind::PreOverlapSCompatibility, {a, b},
            "p[Sa][Sb] = " + describe(p(S(a), S(b))) + " but p[a][b] = " + describe(p(a, b)));
      if (t_ok && !tol.same(p(T(a), T(b)), p(b, a)))
        add(ViolationKind::PreOverlapTCompatibility, {a, b},
            "p[Ta][Tb] = " + describe(p(T(a), T(b))) + " but p[b][a] = " + describe(p(b, a)));
    }
  }
  return report;
}

} // namespace genmech

#include "genmech/system_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace genmech::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw FormatError(what); }

const json& field(const json& doc, const char* key) {
  if (!doc.is_object()) fail("expected a JSON object");
  const auto it = doc.find(key);
  if (it == doc.end()) fail(std::string("missing field '") + key + "'");
  return *it;
}

std::size_t to_index(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where + ": expected an integer");
  if (j.is_number_unsigned()) return j.get<std::size_t>();
  const auto v = j.get<long long>();
  if (v < 0) fail(where + ": negative index " + std::to_string(v));
  return static_cast<std::size_t>(v);
}

double to_real(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where + ": expected a number");
  return j.get<double>();
}

Bijection bijection_from_json(const json& j, const char* name) {
  if (!j.is_array()) fail(std::string(name) + ": expected an array");
  std::vector<StateId> image;
  for (std::size_t k = 0; k < j.size(); ++k)
    image.push_back(to_index(j[k], std::string(name) + "[" + std::to_string(k) + "]"));
  return Bijection(std::move(image));
}

// Rectangular table of cells; ragged rows are a format error.
template <typename T, typename Cell>
Table<T> table_from_json(const json& j, const char* name, Cell cell) {
  if (!j.is_array()) fail(std::string(name) + ": expected an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows == 0 ? 0 : j[0].size();
  Table<T> t(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array()) fail(std::string(name) + ": row " + std::to_string(r) + " is not an array");
    if (j[r].size() != cols) fail(std::string(name) + ": ragged row " + std::to_string(r));
    for (std::size_t c = 0; c < cols; ++c)
      t(r, c) = cell(j[r][c], std::string(name) + "[" + std::to_string(r) + "][" +
                                  std::to_string(c) + "]");
  }
  return t;
}

quantum::Matrix matrix_from_json(const json& j, const char* name, std::size_t dim) {
  const auto t = table_from_json<Complex>(j, name, [](const json& c, const std::string& where) {
    try {
      return complex_from_json(c);
    } catch (const FormatError& e) {
      fail(where + ": " + e.what());
    }
  });
  if (!t.is_square(dim)) fail(std::string(name) + ": expected " + std::to_string(dim) + "x" +
                              std::to_string(dim));
  const auto d = static_cast<Eigen::Index>(dim);
  quantum::Matrix m(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c)
      m(r, c) = t(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  return m;
}

quantum::StateVector vector_from_json(const json& j, std::size_t dim, const std::string& where) {
  if (!j.is_array() || j.size() != dim)
    fail(where + ": expected " + std::to_string(dim) + " amplitudes");
  quantum::StateVector v(static_cast<Eigen::Index>(dim));
  for (std::size_t k = 0; k < dim; ++k) {
    try {
      v(static_cast<Eigen::Index>(k)) = complex_from_json(j[k]);
    } catch (const FormatError& e) {
      fail(where + "[" + std::to_string(k) + "]: " + e.what());
    }
  }
  return v;
}

json parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

json finding_to_json(const harness::Finding& f) {
  return {{"system_index", f.system_index},
          {"witness", f.witness},
          {"rho_coincides", f.rho_coincides},
          {"system", to_json(f.system)}};
}

} // namespace

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail("expected a complex number as [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json vector_to_json(const quantum::StateVector& v) {
  json out = json::array();
  for (const auto& z : v) out.push_back(complex_to_json(z));
  return out;
}

json to_json(const GeneralSystem& sys, const json& meta) {
  json overlap = json::array();
  json pre = json::array();
  for (std::size_t r = 0; r < sys.overlap.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < sys.overlap.cols(); ++c) row.push_back(sys.overlap(r, c));
    overlap.push_back(std::move(row));
  }
  for (std::size_t r = 0; r < sys.pre_overlap.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < sys.pre_overlap.cols(); ++c)
      row.push_back(complex_to_json(sys.pre_overlap(r, c)));
    pre.push_back(std::move(row));
  }
  json doc = {{"n", sys.n},
              {"S", sys.dynamics.image()},
              {"T", sys.time_reversal.image()},
              {"overlap", std::move(overlap)},
              {"pre_overlap", std::move(pre)}};
  if (!meta.is_null() && !meta.empty()) doc["meta"] = meta;
  return doc;
}

SystemFile system_from_json(const json& doc, Tolerance tol) {
  SystemFile out;
  GeneralSystem& sys = out.system;
  sys.tol = tol;
  sys.n = to_index(field(doc, "n"), "n");
  sys.dynamics = bijection_from_json(field(doc, "S"), "S");
  sys.time_reversal = bijection_from_json(field(doc, "T"), "T");
  sys.overlap = table_from_json<double>(field(doc, "overlap"), "overlap", to_real);
  sys.pre_overlap = table_from_json<Complex>(
      field(doc, "pre_overlap"), "pre_overlap", [](const json& c, const std::string& where) {
        try {
          return complex_from_json(c);
        } catch (const FormatError& e) {
          fail(where + ": " + e.what());
        }
      });
  if (const auto it = doc.find("meta"); it != doc.end()) {
    if (!it->is_object()) fail("meta: expected an object");
    out.meta = *it;
  }
  return out;
}

SystemFile read_system_file(const std::filesystem::path& path, Tolerance tol) {
  return system_from_json(parse_file(path), tol);
}

void write_system_file(const std::filesystem::path& path, const GeneralSystem& system,
                       const json& meta) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << to_json(system, meta).dump(2) << '\n';
}

QuantumFile quantum_from_json(const json& doc) {
  QuantumFile q;
  const std::size_t dim = to_index(field(doc, "dim"), "dim");
  if (dim < 1) fail("dim must be >= 1");
  q.hamiltonian.matrix = matrix_from_json(field(doc, "hamiltonian"), "hamiltonian", dim);
  q.time = to_real(field(doc, "time"), "time");
  q.time_reversal = quantum::TimeReversalOp::conjugation(dim);
  if (const auto it = doc.find("t_unitary"); it != doc.end())
    q.time_reversal.unitary_part = matrix_from_json(*it, "t_unitary", dim);
  if (const auto it = doc.find("t_conjugates"); it != doc.end()) {
    if (!it->is_boolean()) fail("t_conjugates: expected a boolean");
    q.time_reversal.conjugates = it->get<bool>();
  }
  if (const auto it = doc.find("seeds"); it != doc.end()) {
    if (!it->is_array()) fail("seeds: expected an array of vectors");
    for (std::size_t k = 0; k < it->size(); ++k)
      q.seeds.push_back(vector_from_json((*it)[k], dim, "seeds[" + std::to_string(k) + "]"));
  }
  if (const auto it = doc.find("tolerance"); it != doc.end()) {
    const double t = to_real(*it, "tolerance");
    if (!(t >= 0.0)) fail("tolerance must be >= 0");
    q.tolerance = t;
  }
  return q;
}

QuantumFile read_quantum_file(const std::filesystem::path& path) {
  return quantum_from_json(parse_file(path));
}

json to_json(const QuantumFile& q) {
  json h = json::array();
  json v = json::array();
  for (Eigen::Index r = 0; r < q.hamiltonian.matrix.rows(); ++r) {
    json hrow = json::array();
    json vrow = json::array();
    for (Eigen::Index c = 0; c < q.hamiltonian.matrix.cols(); ++c) {
      hrow.push_back(complex_to_json(q.hamiltonian.matrix(r, c)));
      vrow.push_back(complex_to_json(q.time_reversal.unitary_part(r, c)));
    }
    h.push_back(std::move(hrow));
    v.push_back(std::move(vrow));
  }
  json doc = {{"dim", q.hamiltonian.dim()},
              {"hamiltonian", std::move(h)},
              {"time", q.time},
              {"t_unitary", std::move(v)},
              {"t_conjugates", q.time_reversal.conjugates}};
  if (!q.seeds.empty()) {
    json seeds = json::array();
    for (const auto& s : q.seeds) seeds.push_back(vector_to_json(s));
    doc["seeds"] = std::move(seeds);
  }
  if (q.tolerance) doc["tolerance"] = *q.tolerance;
  return doc;
}

json states_to_json(const std::vector<quantum::StateVector>& states) {
  json out = json::array();
  for (std::size_t k = 0; k < states.size(); ++k)
    out.push_back({{"index", k}, {"amplitudes", vector_to_json(states[k])}});
  return out;
}

json to_json(const ValidationReport& report) {
  json out = json::array();
  for (const auto& v : report.violations)
    out.push_back({{"kind", std::string(to_string(v.kind))},
                   {"indices", v.indices},
                   {"detail", v.detail}});
  return out;
}

json to_json(const quantum::SpectrumReport& rep) {
  json aliased = json::array();
  for (const auto& [j, k] : rep.aliased_pairs) aliased.push_back({j, k});
  return {{"eigenvalues", rep.eigenvalues},
          {"multiplicities", rep.multiplicities},
          {"aliased_pairs", std::move(aliased)}};
}

json to_json(const harness::TheoremReport& rep) {
  json strict = json::array();
  json anomalies = json::array();
  json coherence = json::array();
  for (const auto& f : rep.strict_violations) strict.push_back(finding_to_json(f));
  for (const auto& f : rep.byoverlap_anomalies) anomalies.push_back(finding_to_json(f));
  for (const auto& f : rep.coherence_failures) coherence.push_back(finding_to_json(f));
  return {{"mode", std::string(to_string(rep.mode))},
          {"systems_checked", rep.systems_checked},
          {"tri_count", rep.tri_count},
          {"strict_violations", std::move(strict)},
          {"byoverlap_anomalies", std::move(anomalies)},
          {"coherence_failures", std::move(coherence)}};
}

json to_json(const harness::ChainReport& rep) {
  json failures = json::array();
  for (const auto& f : rep.failures)
    failures.push_back({{"system_index", f.system_index},
                        {"state", f.state},
                        {"step", f.step},
                        {"kind", f.kind == harness::ChainFailureKind::Value ? "value" : "permutation"},
                        {"tri", f.tri}});
  return {{"systems_checked", rep.systems_checked},
          {"tri_systems", rep.tri_systems},
          {"chains_checked", rep.chains_checked},
          {"failures", std::move(failures)}};
}

std::string format_complex(Complex z) {
  char buf[96];
  const double im = z.imag();
  std::snprintf(buf, sizeof buf, "%.12g%s%.12gi", z.real(), std::signbit(im) ? "-" : "+",
                std::abs(im));
  return buf;
}

} // namespace genmech::io

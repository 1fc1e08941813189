#pragma once

#include "genmech/detectors.hpp"
#include "genmech/harness.hpp"
#include "genmech/quantum.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace genmech::io {

using json = nlohmann::json;

/// Malformed or structurally unreadable input file.
class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// SystemFile: {"n", "S", "T", "overlap", "pre_overlap" ([re, im] pairs), "meta"?}.
struct SystemFile {
  GeneralSystem system;
  json meta = json::object();
};

json to_json(const GeneralSystem& system, const json& meta = json::object());
/// Shape mismatches against n are kept (and later reported by validate);
/// ragged rows, wrong types and negative indices are FormatErrors.
SystemFile system_from_json(const json& doc, Tolerance tol = {});

SystemFile read_system_file(const std::filesystem::path& path, Tolerance tol = {});
void write_system_file(const std::filesystem::path& path, const GeneralSystem& system,
                       const json& meta = json::object());

/// QuantumFile: {"dim", "hamiltonian", "time", "t_unitary"?, "t_conjugates"?,
/// "seeds"?, "tolerance"?}. Missing seeds mean "eigenvectors of H".
struct QuantumFile {
  quantum::Hamiltonian hamiltonian;
  double time = 0.0;
  quantum::TimeReversalOp time_reversal;
  std::vector<quantum::StateVector> seeds;
  std::optional<double> tolerance;
};

QuantumFile quantum_from_json(const json& doc);
QuantumFile read_quantum_file(const std::filesystem::path& path);
json to_json(const QuantumFile& file);

json complex_to_json(Complex z);
Complex complex_from_json(const json& j);
json vector_to_json(const quantum::StateVector& v);

/// Sidecar dictionary: [{"index": k, "amplitudes": [[re, im], ...]}, ...].
json states_to_json(const std::vector<quantum::StateVector>& states);

json to_json(const ValidationReport& report);
json to_json(const quantum::SpectrumReport& report);
json to_json(const harness::TheoremReport& report);
json to_json(const harness::ChainReport& report);

/// "re+imi" / "re-imi" with 12 significant digits.
std::string format_complex(Complex z);

} // namespace genmech::io

#include "genmech/cli.hpp"

#include "genmech/detectors.hpp"
#include "genmech/generators.hpp"
#include "genmech/harness.hpp"
#include "genmech/system_io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

namespace genmech::cli {

namespace {

namespace fs = std::filesystem;
using io::json;

struct GlobalOptions {
  double tolerance = 1e-9;
  std::string format = "text";
  std::uint64_t seed = 0;

  Tolerance tol() const { return Tolerance{tolerance}; }
  bool as_json() const { return format == "json"; }
};

StationarityMode parse_mode(const std::string& s) {
  return s == "overlap" ? StationarityMode::ByOverlap : StationarityMode::Strict;
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

std::string id_list(const std::vector<StateId>& ids) {
  std::ostringstream os;
  os << '[';
  for (std::size_t k = 0; k < ids.size(); ++k) os << (k ? ", " : "") << ids[k];
  os << ']';
  return os.str();
}

void print_violations(const ValidationReport& rep, std::ostream& out) {
  for (const auto& v : rep.violations) {
    out << "  " << to_string(v.kind);
    if (!v.indices.empty()) out << " at " << id_list(v.indices);
    if (!v.detail.empty()) out << ": " << v.detail;
    out << '\n';
  }
}

// ---------------------------------------------------------------- validate

int cmd_validate(const std::string& path, const GlobalOptions& g, std::ostream& out) {
  const io::SystemFile file = io::read_system_file(path, g.tol());
  const ValidationReport rep = validate(file.system);
  if (g.as_json()) {
    out << json{{"valid", rep.ok()}, {"violations", io::to_json(rep)}}.dump(2) << '\n';
  } else {
    out << "violations: " << rep.violations.size() << '\n';
    print_violations(rep, out);
  }
  return rep.ok() ? kSuccess : kInvalid;
}

// ------------------------------------------------------------------ report

int cmd_report(const std::string& path, const std::string& mode_name, const GlobalOptions& g,
               std::ostream& out, std::ostream& err) {
  const io::SystemFile file = io::read_system_file(path, g.tol());
  const GeneralSystem& sys = file.system;
  const ValidationReport rep = validate(sys);
  if (!rep.ok()) {
    err << "invalid system (" << rep.violations.size() << " violations):\n";
    print_violations(rep, err);
    return kInvalid;
  }

  const StationarityMode mode = parse_mode(mode_name);
  const std::vector<StateId> stationary = stationary_set(sys, mode);
  const Verdict verdict = wigner_verdict(sys, mode);
  const TriForms forms = tri_equivalent_forms(sys);

  if (g.as_json()) {
    json st = json::array();
    for (StateId a : stationary)
      st.push_back({{"state", a},
                    {"signature", io::complex_to_json(stationary_signature(sys, a))},
                    {"nondegenerate", is_nondegenerate(sys, a, mode)}});
    out << json{{"n", sys.n},
                {"mode", std::string(to_string(mode))},
                {"stationary", std::move(st)},
                {"witnesses", verdict.witnesses},
                {"tri_direct", verdict.tri_direct},
                {"tri_forms",
                 {{"inverse", forms.inverse_form},
                  {"identity", forms.identity_form},
                  {"swapped", forms.swapped_form}}},
                {"consistent", verdict.consistent}}
               .dump(2)
        << '\n';
  } else {
    out << "n: " << sys.n << "\nmode: " << to_string(mode) << '\n';
    out << "stationary: " << stationary.size() << '\n';
    for (StateId a : stationary)
      out << "  state " << a << "  signature " << io::format_complex(stationary_signature(sys, a))
          << "  nondegenerate " << bool_str(is_nondegenerate(sys, a, mode)) << '\n';
    out << "witnesses: " << id_list(verdict.witnesses) << '\n'
        << "tri_direct: " << bool_str(verdict.tri_direct) << '\n'
        << "tri_forms: inverse=" << bool_str(forms.inverse_form)
        << " identity=" << bool_str(forms.identity_form)
        << " swapped=" << bool_str(forms.swapped_form) << '\n'
        << "consistent: " << bool_str(verdict.consistent) << '\n';
  }
  if (!forms.agree()) {
    err << "error: invariance forms disagree\n";
    return kInconsistent;
  }
  if (!verdict.consistent) {
    err << "error: witness " << verdict.witnesses.front()
        << " coexists with time reversal invariance\n";
    return kInconsistent;
  }
  return kSuccess;
}

// ----------------------------------------------------------------- quantum

struct QuantumOptions {
  std::string path;
  std::optional<double> time;
  std::size_t max_states = 256;
  double dedup_eps = 1e-9;
  std::string out_path;
};

int cmd_quantum(const QuantumOptions& q, const GlobalOptions& g, std::ostream& out,
                std::ostream& err) {
  const io::QuantumFile file = io::read_quantum_file(q.path);
  const Tolerance tol{file.tolerance.value_or(g.tolerance)};
  const double t = q.time.value_or(file.time);

  const double residual = file.hamiltonian.hermitian_residual();
  if (!(residual <= tol.eps_eq)) {
    err << "error: Hamiltonian is not Hermitian (residual " << residual << ", tolerance "
        << tol.eps_eq << ")\n";
    return kInvalid;
  }
  if (!(file.time_reversal.unitarity_residual() <= tol.eps_eq)) {
    err << "error: t_unitary is not unitary (residual " << file.time_reversal.unitarity_residual()
        << ")\n";
    return kInvalid;
  }

  const quantum::SpectrumReport spectrum = quantum::spectrum_degeneracy(file.hamiltonian, t, tol);
  const std::vector<quantum::StateVector> seeds =
      file.seeds.empty() ? quantum::eigenvector_seeds(file.hamiltonian, tol) : file.seeds;

  quantum::TabulatedSystem tab;
  try {
    tab = quantum::tabulate(file.hamiltonian, file.time_reversal,
                            {q.max_states, q.dedup_eps, t}, seeds, tol);
  } catch (const quantum::OrbitNotClosed& e) {
    err << "error: orbit did not close within max_states = " << e.cap() << '\n';
    return kInvalid;
  }
  const ValidationReport rep = validate(tab.system);
  const bool quantum_tri = quantum::is_t_invariant_quantum(file.hamiltonian, file.time_reversal, tol);
  const bool table_tri = is_time_reversal_invariant(tab.system);

  if (!q.out_path.empty()) {
    const json meta = {{"label", "quantum tabulation"},
                       {"provenance", q.path},
                       {"time", t},
                       {"max_states", q.max_states}};
    io::write_system_file(q.out_path, tab.system, meta);
    fs::path sidecar = q.out_path;
    sidecar.replace_extension(".states.json");
    std::ofstream(sidecar) << io::states_to_json(tab.states).dump(2) << '\n';
  }

  if (g.as_json()) {
    out << json{{"spectrum", io::to_json(spectrum)},
                {"time", t},
                {"states", tab.system.n},
                {"violations", io::to_json(rep)},
                {"quantum_t_invariant", quantum_tri},
                {"tri_direct", table_tri}}
               .dump(2)
        << '\n';
  } else {
    out << "eigenvalues:";
    for (std::size_t k = 0; k < spectrum.eigenvalues.size(); ++k)
      out << ' ' << spectrum.eigenvalues[k] << " (x" << spectrum.multiplicities[k] << ')';
    out << "\naliased pairs: " << spectrum.aliased_pairs.size() << '\n';
    for (const auto& [j, k] : spectrum.aliased_pairs)
      out << "  warning: eigenvalues " << j << " and " << k << " alias at t = " << t << '\n';
    out << "states: " << tab.system.n << '\n'
        << "violations: " << rep.violations.size() << '\n'
        << "quantum_t_invariant: " << bool_str(quantum_tri) << '\n'
        << "tri_direct: " << bool_str(table_tri) << '\n';
    print_violations(rep, out);
  }
  return kSuccess;
}

// ---------------------------------------------------------------- generate

struct GenerateOptions {
  std::size_t n = 3;
  std::size_t count = 10;
  std::string kind = "tri";
  std::string palette = "1,i";
  std::string overlap = "induced";
  std::string out_dir = ".";
};

int cmd_generate(const GenerateOptions& o, const GlobalOptions& g, std::ostream& out) {
  const Palette palette = Palette::parse(o.palette, g.tol());
  const OverlapMode overlap = parse_overlap_mode(o.overlap);
  if (o.kind == "violating" && o.n < 3)
    throw ImpossibleOrder("violating systems need n >= 3, got n = " + std::to_string(o.n));
  fs::create_directories(o.out_dir);

  auto write = [&](std::size_t k, const GeneralSystem& sys) {
    const std::string name = o.kind + "-" + std::to_string(o.n) + "-" + std::to_string(g.seed) +
                             "-" + std::to_string(k) + ".json";
    const json meta = {{"kind", o.kind}, {"n", o.n}, {"seed", g.seed}, {"index", k},
                       {"palette", o.palette}, {"overlap", o.overlap}};
    io::write_system_file(fs::path(o.out_dir) / name, sys, meta);
  };

  std::size_t written = 0;
  if (o.kind == "exhaustive") {
    const ExhaustiveSystems all(o.n, palette, overlap, ExhaustiveSystems::kDefaultCap, g.tol());
    const std::size_t limit = o.count == 0 ? all.size() : std::min(o.count, all.size());
    for (; written < limit; ++written) write(written, all.at(written));
  } else {
    for (; written < o.count; ++written) {
      const std::uint64_t item = derive_seed(g.seed, written);
      auto [S, T] = o.kind == "tri" ? tri_pair(o.n, item) : violating_pair(o.n, item);
      write(written, make_system(std::move(S), std::move(T), palette, overlap,
                                 derive_seed(item, 3), g.tol()));
    }
  }
  out << "wrote " << written << " systems to " << o.out_dir << '\n';
  return kSuccess;
}

// ------------------------------------------------------------------ verify

struct VerifyOptions {
  std::size_t n = 3;
  std::string palette = "1,i";
  std::string mode = "strict";
  std::string overlap = "induced";
  std::size_t random = 0;
  unsigned threads = 0;
};

void print_findings(const char* title, const std::vector<harness::Finding>& fs, std::ostream& out) {
  out << title << ": " << fs.size() << '\n';
  const std::size_t shown = std::min<std::size_t>(fs.size(), 10);
  for (std::size_t k = 0; k < shown; ++k)
    out << "  system " << fs[k].system_index << " witness " << fs[k].witness
        << " rho_coincides " << bool_str(fs[k].rho_coincides) << " S=" << id_list(fs[k].system.dynamics.image())
        << " T=" << id_list(fs[k].system.time_reversal.image()) << '\n';
  if (fs.size() > shown) out << "  ... " << fs.size() - shown << " more\n";
}

int cmd_verify(const VerifyOptions& o, const GlobalOptions& g, std::ostream& out,
               std::ostream& err) {
  const Palette palette = Palette::parse(o.palette, g.tol());
  const OverlapMode overlap = parse_overlap_mode(o.overlap);
  const StationarityMode mode = parse_mode(o.mode);

  SystemSource source;
  std::optional<SystemSource> violating;
  std::size_t pairs = 0;
  std::size_t tri_pairs = 0;
  if (o.random == 0) {
    auto all = std::make_shared<const ExhaustiveSystems>(o.n, palette, overlap,
                                                         ExhaustiveSystems::kDefaultCap, g.tol());
    pairs = all->pair_count();
    for (const auto& [S, T] : all->pairs())
      tri_pairs += T.inverse().after(S) == S.inverse().after(T) ? 1 : 0;
    source = exhaustive_source(std::move(all));
  } else {
    source = random_tri_source(o.random, o.n, palette, overlap, g.seed, g.tol());
    if (o.n >= 3)
      violating = random_violating_source(o.random, o.n, palette, overlap,
                                          derive_seed(g.seed, 0xA11CE), g.tol());
  }

  harness::TheoremReport theorem;
  harness::ChainReport chain;
  std::size_t violating_tri = 0;
  std::optional<harness::ChainReport> violating_chain;
  try {
    theorem = harness::verify_wigner_theorem(source, mode, o.threads);
    chain = harness::check_proof_chain_bulk(source, false, -1.0, o.threads);
    if (violating) {
      violating_chain = harness::check_proof_chain_bulk(*violating, false, -1.0, o.threads);
      violating_tri = violating_chain->tri_systems;
    }
  } catch (const harness::InvalidSystem& e) {
    err << "error: " << e.what() << '\n' << io::to_json(e.system()).dump() << '\n';
    print_violations(e.report(), err);
    return kInvalid;
  }

  const bool chain_ok = chain.ok() && (!violating_chain || violating_chain->ok());
  if (g.as_json()) {
    json doc = io::to_json(theorem);
    doc["source"] = o.random == 0 ? "exhaustive" : "random";
    doc["n"] = o.n;
    doc["palette"] = o.palette;
    doc["overlap"] = std::string(to_string(overlap));
    if (o.random == 0) {
      doc["pairs"] = pairs;
      doc["tri_pairs"] = tri_pairs;
    } else {
      doc["seed"] = g.seed;
    }
    doc["proof_chain"] = io::to_json(chain);
    if (violating_chain) {
      doc["violating_systems"] = violating->count;
      doc["violating_tri"] = violating_tri;
      doc["violating_proof_chain"] = io::to_json(*violating_chain);
    }
    out << doc.dump(2) << '\n';
  } else {
    out << "source: " << (o.random == 0 ? "exhaustive" : "random") << " n=" << o.n
        << " palette=" << o.palette << " overlap=" << to_string(overlap)
        << " mode=" << to_string(mode) << '\n';
    if (o.random == 0) out << "pairs: " << pairs << " (tri: " << tri_pairs << ")\n";
    out << "systems_checked: " << theorem.systems_checked << '\n'
        << "tri_count: " << theorem.tri_count << '\n';
    print_findings("strict_violations", theorem.strict_violations, out);
    print_findings("byoverlap_anomalies", theorem.byoverlap_anomalies, out);
    print_findings("coherence_failures", theorem.coherence_failures, out);
    out << "proof_chain: " << chain.chains_checked << " chains, " << chain.failures.size()
        << " failures\n";
    if (violating_chain)
      out << "violating: " << violating->count << " systems, " << violating_tri
          << " invariant, " << violating_chain->failures.size() << " chain failures\n";
    err << "elapsed: " << theorem.elapsed_seconds << " s\n";
  }

  if (!theorem.strict_violations.empty() || !theorem.coherence_failures.empty() || !chain_ok ||
      violating_tri != 0)
    return kInconsistent;
  return kSuccess;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Time reversal checks for finite general-mechanics systems", "genmech"};
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--tolerance", g.tolerance, "Value comparison threshold eps_eq")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", g.seed, "Random seed");

  std::string path;
  auto* validate_cmd = app.add_subcommand("validate", "Check a system file against all laws");
  validate_cmd->add_option("path", path, "System file")->required();

  std::string report_mode = "strict";
  auto* report_cmd = app.add_subcommand("report", "Run the detectors on a system file");
  report_cmd->add_option("path", path, "System file")->required();
  report_cmd->add_option("--mode", report_mode, "Stationarity reading")
      ->check(CLI::IsMember({"strict", "overlap"}));

  QuantumOptions qo;
  auto* quantum_cmd = app.add_subcommand("quantum", "Tabulate a quantum model as a system file");
  quantum_cmd->add_option("path", qo.path, "Quantum file")->required();
  quantum_cmd->add_option("--time", qo.time, "Override the evolution time");
  quantum_cmd->add_option("--max-states", qo.max_states, "Orbit closure cap")
      ->check(CLI::PositiveNumber);
  quantum_cmd->add_option("--dedup-eps", qo.dedup_eps, "Vector deduplication distance")
      ->check(CLI::NonNegativeNumber);
  quantum_cmd->add_option("--out", qo.out_path, "Write the tabulated system here");

  GenerateOptions go;
  auto* generate_cmd = app.add_subcommand("generate", "Write a deterministic corpus of systems");
  generate_cmd->add_option("--n", go.n, "State count");
  generate_cmd->add_option("--count", go.count, "Number of systems (0 = all for exhaustive)");
  generate_cmd->add_option("--kind", go.kind, "Corpus kind")
      ->check(CLI::IsMember({"tri", "violating", "exhaustive"}));
  generate_cmd->add_option("--palette", go.palette, "Pre-overlap values, e.g. 1,i");
  generate_cmd->add_option("--overlap", go.overlap, "Overlap table mode")
      ->check(CLI::IsMember({"induced", "free"}));
  generate_cmd->add_option("--out-dir", go.out_dir, "Output directory");

  VerifyOptions vo;
  auto* verify_cmd = app.add_subcommand("verify", "Check the witness theorem over a corpus");
  verify_cmd->add_option("--n", vo.n, "State count (maximum for --random)");
  verify_cmd->add_option("--palette", vo.palette, "Pre-overlap values, e.g. 1,i");
  verify_cmd->add_option("--mode", vo.mode, "Stationarity reading")
      ->check(CLI::IsMember({"strict", "overlap"}));
  verify_cmd->add_option("--overlap", vo.overlap, "Overlap table mode")
      ->check(CLI::IsMember({"induced", "free"}));
  verify_cmd->add_option("--random", vo.random, "Sample this many systems instead of enumerating");
  verify_cmd->add_option("--threads", vo.threads, "Worker threads (0 = hardware)");

  for (auto* sub : {validate_cmd, report_cmd, quantum_cmd, generate_cmd, verify_cmd})
    sub->fallthrough();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInvalid;
  }

  try {
    if (*validate_cmd) return cmd_validate(path, g, out);
    if (*report_cmd) return cmd_report(path, report_mode, g, out, err);
    if (*quantum_cmd) return cmd_quantum(qo, g, out, err);
    if (*generate_cmd) return cmd_generate(go, g, out);
    if (*verify_cmd) return cmd_verify(vo, g, out, err);
  } catch (const io::FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::invalid_argument& e) {
    // ImpossibleOrder, SizeGuard, malformed palettes, bad seeds
    err << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return kInvalid;
}

} // namespace genmech::cli

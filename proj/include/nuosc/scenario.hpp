#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "nuosc/encoders.hpp"
#include "nuosc/observables.hpp"

namespace nuosc {

/// Scenario configuration, loaded from a versioned JSON file. For bipolar
/// ensembles the (delta, theta) pair parameterizes the subspace Hamiltonian
/// directly; the runner derives the equivalent per-qubit mixing angle
/// (pi/2 - theta) for the conventional and full-Dicke encodings so that all
/// encodings simulate the same system.
struct ScenarioConfig {
    int schema_version = 1;
    std::string name;
    EnsembleSpec ensemble;
    std::vector<EncodingKind> encodings;
    double t_max = 1.0;
    int n_steps = 1;
    std::optional<std::uint64_t> shots;
    std::uint64_t seed = 1;
    bool write_csv = true;
    bool write_qasm = false;

    double dt() const { return t_max / n_steps; }
    void validate() const;
};

ScenarioConfig load_scenario(const std::filesystem::path& json_path);

struct RunOptions {
    std::filesystem::path out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> shots;
};

/// Per-encoding result table: survival per mode for circuit, exact oracle
/// and trotter reference at every step.
struct EncodingResult {
    EncodingKind kind;
    int qubits = 0;
    std::size_t gate_count_per_step = 0;
    int depth_per_step = 0;
    std::vector<std::string> observable_names;
    RealVec times;
    RealMat circuit;   // rows = steps+1, cols = observables
    RealMat exact;
    RealMat reference;
    RealMat sampled;       // empty unless shots requested
    RealMat sampled_err;
};

EncodingResult run_encoding(const ScenarioConfig& config, EncodingKind kind,
                            std::optional<std::uint64_t> shots, std::uint64_t seed);

/// Runs every encoding of the scenario, writes one CSV per encoding (and
/// per-step QASM when requested). Returns 0 on success.
int run_scenario(const ScenarioConfig& config, const RunOptions& options);

/// Summary table: max |circuit - exact| per observable, qubit counts, gate
/// counts and depths per encoding.
int compare_report(const ScenarioConfig& config, std::ostream& out);

/// QASM export of every step circuit of every encoding.
int export_scenario_qasm(const ScenarioConfig& config, const RunOptions& options);

std::string format_csv(const EncodingResult& result);

}  // namespace nuosc

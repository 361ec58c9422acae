#include "nuosc/scenario.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "nuosc/qasm.hpp"

namespace nuosc {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Flavor flavor_from_name(const std::string& s) {
    if (s == "electron" || s == "e") return Flavor::electron;
    if (s == "x") return Flavor::x;
    throw std::invalid_argument("unknown flavor: " + s);
}

}  // namespace

void ScenarioConfig::validate() const {
    ensemble.validate();
    require(schema_version == 1, "scenario: unsupported schema_version");
    require(!name.empty(), "scenario: name must not be empty");
    require(t_max > 0.0, "scenario: t_max must be positive");
    require(n_steps >= 1, "scenario: n_steps must be >= 1");
    require(!encodings.empty(), "scenario: at least one encoding required");
    for (auto kind : encodings) {
        if (kind == EncodingKind::diagonal_dicke)
            require(is_bipolar(ensemble), "scenario: diagonal_dicke requires a bipolar system");
        if (kind == EncodingKind::conventional)
            require(ensemble.total_neutrinos() >= 1, "scenario: empty ensemble");
    }
    if (shots) require(*shots >= 1, "scenario: shots must be >= 1 when given");
}

ScenarioConfig load_scenario(const std::filesystem::path& json_path) {
    std::ifstream in(json_path);
    require(in.good(), "cannot open scenario file: " + json_path.string());
    json j = json::parse(in);

    ScenarioConfig cfg;
    cfg.schema_version = j.value("schema_version", 1);
    cfg.name = j.at("name").get<std::string>();
    const auto& ens = j.at("ensemble");
    for (const auto& jm : ens.at("modes")) {
        ModeSpec m;
        m.n_particles = jm.at("n_particles").get<int>();
        m.delta = jm.at("delta").get<double>();
        m.theta = jm.at("theta").get<double>();
        m.is_antineutrino = jm.value("antineutrino", false);
        m.initial_flavor = flavor_from_name(jm.value("flavor", std::string("electron")));
        cfg.ensemble.modes.push_back(m);
    }
    const auto& jc = ens.at("coupling");
    const int n = static_cast<int>(cfg.ensemble.modes.size());
    cfg.ensemble.coupling = RealMat::Zero(n, n);
    require(static_cast<int>(jc.size()) == n, "scenario: coupling row count mismatch");
    for (int r = 0; r < n; ++r) {
        require(static_cast<int>(jc[r].size()) == n, "scenario: coupling column count mismatch");
        for (int c = 0; c < n; ++c) cfg.ensemble.coupling(r, c) = jc[r][c].get<double>();
    }
    for (const auto& e : j.at("encodings")) cfg.encodings.push_back(encoding_from_name(e));
    cfg.t_max = j.at("t_max").get<double>();
    cfg.n_steps = j.at("n_steps").get<int>();
    if (j.contains("shots") && !j["shots"].is_null())
        cfg.shots = j["shots"].get<std::uint64_t>();
    cfg.seed = j.value("seed", 1);
    if (j.contains("outputs")) {
        cfg.write_csv = false;
        cfg.write_qasm = false;
        for (const auto& o : j["outputs"]) {
            const auto s = o.get<std::string>();
            if (s == "csv") cfg.write_csv = true;
            else if (s == "qasm") cfg.write_qasm = true;
            else throw std::invalid_argument("scenario: unknown output kind " + s);
        }
    }
    cfg.validate();
    return cfg;
}

namespace {

/// Bipolar scenarios parameterize the subspace Hamiltonian; the equivalent
/// per-qubit system carries the complementary mixing angle (b_z negated).
EnsembleSpec frame_ensemble(const EnsembleSpec& spec, EncodingKind kind) {
    if (!is_bipolar(spec) || kind == EncodingKind::diagonal_dicke) return spec;
    EnsembleSpec out = spec;
    for (auto& m : out.modes) m.theta = kPi / 2.0 - m.theta;
    return out;
}

struct ModeSpaceOracle {
    std::vector<long> dims;     // N_i + 1 per mode
    std::vector<long> strides;  // mode 0 fastest
    Eigen::SelfAdjointEigenSolver<Mat> solver;
    Vec psi0;

    ModeSpaceOracle(const EnsembleSpec& spec) {
        long dim = 1;
        for (const auto& m : spec.modes) {
            dims.push_back(m.n_particles + 1);
            strides.push_back(dim);
            dim *= m.n_particles + 1;
        }
        Mat h = build_spin_hamiltonian(spec);
        solver.compute(h);
        long idx = 0;
        for (int i = 0; i < spec.n_modes(); ++i)
            idx += initial_register_value(spec.modes[i]) * strides[i];
        psi0 = Vec::Zero(dim);
        psi0[idx] = 1.0;
    }

    Vec state_at(double t) const {
        Vec coeff = solver.eigenvectors().adjoint() * psi0;
        for (long i = 0; i < coeff.size(); ++i)
            coeff[i] *= std::exp(Complex(0.0, -solver.eigenvalues()[i] * t));
        return solver.eigenvectors() * coeff;
    }

    double mode_survival(const Vec& psi, const EnsembleSpec& spec, int mode) const {
        const int N = spec.modes[mode].n_particles;
        const long j0 = initial_register_value(spec.modes[mode]);
        double flips = 0.0;
        for (long idx = 0; idx < psi.size(); ++idx) {
            const long j = (idx / strides[mode]) % dims[mode];
            flips += std::norm(psi[idx]) * static_cast<double>(j0 == 0 ? j : N - j);
        }
        return 1.0 - flips / N;
    }
};

double mode_survival_conventional(const StateVector& state, const EnsembleSpec& expanded,
                                  const std::vector<int>& logical_to_physical, int first,
                                  int count) {
    double acc = 0.0;
    for (int p = first; p < first + count; ++p)
        acc += survival_conventional(state, logical_to_physical[p],
                                     expanded.modes[p].initial_flavor,
                                     expanded.modes[p].is_antineutrino);
    return acc / count;
}

}  // namespace

EncodingResult run_encoding(const ScenarioConfig& config, EncodingKind kind,
                            std::optional<std::uint64_t> shots, std::uint64_t seed) {
    config.validate();
    const EnsembleSpec spec = frame_ensemble(config.ensemble, kind);
    const double dt = config.dt();
    const int n_steps = config.n_steps;
    const int n_modes = spec.n_modes();

    EncodingResult res;
    res.kind = kind;
    res.qubits = required_qubits(config.ensemble, kind);
    res.times = RealVec::Zero(n_steps + 1);
    for (int k = 0; k <= n_steps; ++k) res.times[k] = k * dt;

    const bool diagonal = kind == EncodingKind::diagonal_dicke;
    if (diagonal) {
        res.observable_names = {"survival_nu", "survival_nubar"};
    } else {
        for (int i = 0; i < n_modes; ++i)
            res.observable_names.push_back("survival_m" + std::to_string(i));
    }
    const int n_obs = static_cast<int>(res.observable_names.size());
    res.circuit = RealMat::Zero(n_steps + 1, n_obs);
    res.exact = RealMat::Zero(n_steps + 1, n_obs);
    res.reference = RealMat::Zero(n_steps + 1, n_obs);
    if (shots) {
        res.sampled = RealMat::Zero(n_steps + 1, n_obs);
        res.sampled_err = RealMat::Zero(n_steps + 1, n_obs);
    }

    if (diagonal) {
        const int N = spec.modes[0].n_particles;
        const double delta = spec.modes[0].delta;
        const double theta = spec.modes[0].theta;
        const double J = spec.coupling(0, 1);
        TridiagonalHermitian h = build_diagonal_subspace_hamiltonian(N, delta, theta, J);
        StateVector psi0 = StateVector::basis_state(
            plan_registers(spec, kind).total_width, 0, plan_registers(spec, kind).all_registers());
        // the exact oracle lives on the (N+1)-dim subspace directly
        Eigen::SelfAdjointEigenSolver<Mat> solver(h.to_dense());
        Vec e0 = Vec::Zero(N + 1);
        e0[0] = 1.0;
        auto exact_state = [&](double t) {
            Vec c = solver.eigenvectors().adjoint() * e0;
            for (long i = 0; i < c.size(); ++i)
                c[i] *= std::exp(Complex(0.0, -solver.eigenvalues()[i] * t));
            return (solver.eigenvectors() * c).eval();
        };
        auto subspace_survival = [&](const Vec& v) {
            double mean = 0.0;
            for (long i = 0; i <= N; ++i) mean += std::norm(v[i]) * static_cast<double>(i);
            return 1.0 - mean / N;
        };

        Circuit step = diagonal_dicke_trotter_step(N, delta, theta, J, dt);
        res.gate_count_per_step = step.gate_count();
        res.depth_per_step = step.depth();
        StateVector psi = run_statevector(prepare_initial_state(spec, kind), psi0);
        auto factors = diagonal_step_reference_factors(N, delta, theta, J, dt);
        Vec ref = e0;
        for (int k = 0; k <= n_steps; ++k) {
            auto [snu, snubar] = survival_diagonal(psi, N);
            res.circuit(k, 0) = snu;
            res.circuit(k, 1) = snubar;
            const double se = subspace_survival(exact_state(res.times[k]));
            res.exact(k, 0) = se;
            res.exact(k, 1) = se;
            const double sr = subspace_survival(ref);
            res.reference(k, 0) = sr;
            res.reference(k, 1) = sr;
            if (shots) {
                auto counts = sample_counts(psi, *shots, seed + k);
                auto est = survival_from_counts(
                    counts, [&](const std::string& bits) { return decode_diagonal_bits(bits, N); });
                res.sampled(k, 0) = est.survival;
                res.sampled(k, 1) = est.survival;
                res.sampled_err(k, 0) = est.std_error;
                res.sampled_err(k, 1) = est.std_error;
            }
            if (k < n_steps) {
                psi = run_statevector(step, psi);
                ref = apply_factor_product(factors, ref);
            }
        }
        return res;
    }

    // exact oracle on the mode product space (valid for flavour-pure modes)
    ModeSpaceOracle oracle(spec);

    if (kind == EncodingKind::conventional) {
        const EnsembleSpec expanded = spec.expanded();
        const int n = expanded.n_modes();
        const int builder_steps = std::max(2, n);  // divisor source, = N - 1 partners
        RegisterPlan plan = plan_registers(spec, kind);

        StateVector psi = run_statevector(prepare_initial_state(spec, kind),
                                          StateVector::basis_state(n, 0, plan.all_registers()));
        Vec ref = psi.amplitudes;

        std::vector<int> logical_to_physical(n);
        for (int i = 0; i < n; ++i) logical_to_physical[i] = i;

        std::vector<int> mode_first(n_modes);
        for (int i = 0, acc = 0; i < n_modes; ++i) {
            mode_first[i] = acc;
            acc += spec.modes[i].n_particles;
        }

        for (int k = 0; k <= n_steps; ++k) {
            Vec ex = oracle.state_at(res.times[k]);
            StateVector ref_state(ref, plan.all_registers());
            for (int i = 0; i < n_modes; ++i) {
                res.circuit(k, i) = mode_survival_conventional(psi, expanded, logical_to_physical,
                                                               mode_first[i],
                                                               spec.modes[i].n_particles);
                res.exact(k, i) = oracle.mode_survival(ex, spec, i);
                std::vector<int> ident(n);
                for (int p = 0; p < n; ++p) ident[p] = p;
                res.reference(k, i) = mode_survival_conventional(
                    ref_state, expanded, ident, mode_first[i], spec.modes[i].n_particles);
            }
            if (shots) {
                auto counts = sample_counts(psi, *shots, seed + k);
                for (int i = 0; i < n_modes; ++i) {
                    auto est = survival_from_counts(counts, [&](const std::string& bits) {
                        double acc = 0.0;
                        for (int p = mode_first[i]; p < mode_first[i] + spec.modes[i].n_particles;
                             ++p)
                            acc += decode_conventional_bit(bits, logical_to_physical[p],
                                                           expanded.modes[p].initial_flavor,
                                                           expanded.modes[p].is_antineutrino);
                        return acc / spec.modes[i].n_particles;
                    });
                    res.sampled(k, i) = est.survival;
                    res.sampled_err(k, i) = est.std_error;
                }
            }
            if (k < n_steps) {
                Circuit step = conventional_trotter_step(expanded, dt, builder_steps, k);
                if (k == 0) {
                    res.gate_count_per_step = step.gate_count();
                    res.depth_per_step = step.depth();
                }
                psi = run_statevector(step, psi);
                // the step builder tracks the SWAP-fused arrangement chain
                logical_to_physical = step.logical_map;
                auto factors =
                    conventional_step_factors(expanded, dt, builder_steps, TrotterOrder::second, k);
                ref = apply_step_factors(factors, ref, n);
            }
        }
        return res;
    }

    // full Dicke encodings
    const RXVariant variant =
        kind == EncodingKind::dicke_ancilla ? RXVariant::ancilla : RXVariant::pauli;
    RegisterPlan plan = plan_registers(spec, kind);
    Circuit step = dicke_trotter_step(spec, dt, variant);
    res.gate_count_per_step = step.gate_count();
    res.depth_per_step = step.depth();

    StateVector psi = run_statevector(
        prepare_initial_state(spec, kind),
        StateVector::basis_state(plan.total_width, 0, plan.all_registers()));
    auto factors = dicke_step_reference_factors(spec, dt);
    Vec ref = oracle.psi0;

    for (int k = 0; k <= n_steps; ++k) {
        Vec ex = oracle.state_at(res.times[k]);
        for (int i = 0; i < n_modes; ++i) {
            res.circuit(k, i) = survival_dicke(psi, plan.mode_registers[i], spec.modes[i]);
            res.exact(k, i) = oracle.mode_survival(ex, spec, i);
            res.reference(k, i) = oracle.mode_survival(ref, spec, i);
        }
        if (shots) {
            auto counts = sample_counts(psi, *shots, seed + k);
            for (int i = 0; i < n_modes; ++i) {
                auto est = survival_from_counts(counts, [&](const std::string& bits) {
                    return decode_dicke_bits(bits, plan.mode_registers[i], spec.modes[i]);
                });
                res.sampled(k, i) = est.survival;
                res.sampled_err(k, i) = est.std_error;
            }
        }
        if (k < n_steps) {
            psi = run_statevector(step, psi);
            ref = apply_factor_product(factors, ref);
        }
    }
    return res;
}

std::string format_csv(const EncodingResult& res) {
    std::ostringstream out;
    out << "step,time";
    for (const auto& n : res.observable_names) out << "," << n << "_circuit";
    for (const auto& n : res.observable_names) out << "," << n << "_exact";
    for (const auto& n : res.observable_names) out << "," << n << "_trotter";
    if (res.sampled.size() > 0) {
        for (const auto& n : res.observable_names) out << "," << n << "_sampled";
        for (const auto& n : res.observable_names) out << "," << n << "_stderr";
    }
    out << "\n";
    for (long k = 0; k < res.times.size(); ++k) {
        out << k << "," << fmt17(res.times[k]);
        for (long i = 0; i < res.circuit.cols(); ++i) out << "," << fmt17(res.circuit(k, i));
        for (long i = 0; i < res.exact.cols(); ++i) out << "," << fmt17(res.exact(k, i));
        for (long i = 0; i < res.reference.cols(); ++i) out << "," << fmt17(res.reference(k, i));
        if (res.sampled.size() > 0) {
            for (long i = 0; i < res.sampled.cols(); ++i) out << "," << fmt17(res.sampled(k, i));
            for (long i = 0; i < res.sampled_err.cols(); ++i)
                out << "," << fmt17(res.sampled_err(k, i));
        }
        out << "\n";
    }
    return out.str();
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    require(out.good(), "cannot write " + path.string());
    out << content;
}

Circuit step_circuit_for(const ScenarioConfig& config, EncodingKind kind, int step_index) {
    const EnsembleSpec spec = frame_ensemble(config.ensemble, kind);
    const double dt = config.dt();
    switch (kind) {
        case EncodingKind::conventional: {
            EnsembleSpec expanded = spec.expanded();
            return conventional_trotter_step(expanded, dt,
                                             std::max(2, expanded.n_modes()), step_index);
        }
        case EncodingKind::dicke_ancilla:
            return dicke_trotter_step(spec, dt, RXVariant::ancilla);
        case EncodingKind::dicke_pauli:
            return dicke_trotter_step(spec, dt, RXVariant::pauli);
        case EncodingKind::diagonal_dicke:
            return diagonal_dicke_trotter_step(spec.modes[0].n_particles, spec.modes[0].delta,
                                               spec.modes[0].theta, spec.coupling(0, 1), dt);
    }
    throw std::logic_error("unreachable");
}

}  // namespace

int run_scenario(const ScenarioConfig& config, const RunOptions& options) {
    config.validate();
    std::filesystem::create_directories(options.out_dir);
    const std::uint64_t seed = options.seed.value_or(config.seed);
    const auto shots = options.shots ? options.shots : config.shots;
    for (auto kind : config.encodings) {
        EncodingResult res = run_encoding(config, kind, shots, seed);
        if (config.write_csv) {
            auto path = options.out_dir /
                        (config.name + "_" + encoding_name(kind) + ".csv");
            write_file(path, format_csv(res));
            std::cout << "wrote " << path.string() << "\n";
        }
        if (config.write_qasm) {
            for (int k = 0; k < config.n_steps; ++k) {
                auto path = options.out_dir / (config.name + "_" + encoding_name(kind) +
                                               "_step" + std::to_string(k) + ".qasm");
                write_file(path, export_qasm(step_circuit_for(config, kind, k)));
            }
        }
    }
    return 0;
}

int export_scenario_qasm(const ScenarioConfig& config, const RunOptions& options) {
    config.validate();
    std::filesystem::create_directories(options.out_dir);
    for (auto kind : config.encodings) {
        auto prep = prepare_initial_state(frame_ensemble(config.ensemble, kind), kind);
        write_file(options.out_dir / (config.name + "_" + encoding_name(kind) + "_prep.qasm"),
                   export_qasm(prep));
        for (int k = 0; k < config.n_steps; ++k) {
            auto path = options.out_dir / (config.name + "_" + encoding_name(kind) + "_step" +
                                           std::to_string(k) + ".qasm");
            write_file(path, export_qasm(step_circuit_for(config, kind, k)));
        }
        std::cout << "wrote " << config.n_steps << " step file(s) for " << encoding_name(kind)
                  << "\n";
    }
    return 0;
}

int compare_report(const ScenarioConfig& config, std::ostream& out) {
    config.validate();
    out << "scenario " << config.name << ": t_max=" << config.t_max
        << " n_steps=" << config.n_steps << "\n";
    for (auto kind : config.encodings) {
        EncodingResult res = run_encoding(config, kind, std::nullopt, config.seed);

        ScenarioConfig doubled = config;
        doubled.n_steps *= 2;
        EncodingResult fine = run_encoding(doubled, kind, std::nullopt, config.seed);

        out << encoding_name(kind) << ": qubits=" << res.qubits
            << " gates/step=" << res.gate_count_per_step << " depth/step=" << res.depth_per_step
            << "\n";
        double coarse_err = 0.0, fine_err = 0.0;
        for (long i = 0; i < res.circuit.cols(); ++i) {
            const double dev = (res.circuit.col(i) - res.exact.col(i)).cwiseAbs().maxCoeff();
            out << "  max|circuit-exact| " << res.observable_names[i] << " = " << fmt17(dev)
                << "\n";
            coarse_err = std::max(coarse_err, dev);
            fine_err = std::max(
                fine_err, (fine.circuit.col(i) - fine.exact.col(i)).cwiseAbs().maxCoeff());
        }
        if (fine_err > 1e-13)
            out << "  trotter error ratio under dt halving = " << coarse_err / fine_err << "\n";
    }
    return 0;
}

}  // namespace nuosc

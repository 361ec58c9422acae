#include "nuosc/encoders.hpp"

#include <cmath>

namespace nuosc {

namespace {

constexpr double kAngleEps = 1e-15;

int register_width_for(int n_particles) {
    int w = 0;
    while ((1L << w) < n_particles + 1) ++w;
    return std::max(w, 1);
}

/// Appends src into dst with src qubit q mapped to qmap[q].
void append_mapped(Circuit& dst, const Circuit& src, const std::vector<int>& qmap) {
    for (const auto& g : src.gates) {
        Gate mapped = g;
        for (auto& t : mapped.targets) t = qmap[t];
        for (auto& c : mapped.controls) c = qmap[c];
        dst.add(std::move(mapped));
    }
}

std::vector<int> register_qubits(const RegisterSpan& reg) {
    std::vector<int> qs(reg.width);
    for (int i = 0; i < reg.width; ++i) qs[i] = reg.offset + i;
    return qs;
}

}  // namespace

void EncodingChoice::validate() const {
    if (kind == EncodingKind::conventional) {
        require(trotter_order == TrotterOrder::second,
                "EncodingChoice: the conventional encoding is second order");
        require(n_steps >= 2, "EncodingChoice: conventional requires n_steps >= 2");
    }
    if (kind == EncodingKind::diagonal_dicke)
        require(trotter_order == TrotterOrder::first,
                "EncodingChoice: the diagonal Dicke encoding is first order");
}

const char* encoding_name(EncodingKind kind) {
    switch (kind) {
        case EncodingKind::conventional: return "conventional";
        case EncodingKind::dicke_ancilla: return "dicke_ancilla";
        case EncodingKind::dicke_pauli: return "dicke_pauli";
        case EncodingKind::diagonal_dicke: return "diagonal_dicke";
    }
    return "?";
}

EncodingKind encoding_from_name(const std::string& name) {
    if (name == "conventional") return EncodingKind::conventional;
    if (name == "dicke_ancilla") return EncodingKind::dicke_ancilla;
    if (name == "dicke_pauli") return EncodingKind::dicke_pauli;
    if (name == "diagonal_dicke") return EncodingKind::diagonal_dicke;
    throw std::invalid_argument("unknown encoding: " + name);
}

bool is_bipolar(const EnsembleSpec& spec) {
    if (spec.n_modes() != 2) return false;
    const auto& a = spec.modes[0];
    const auto& b = spec.modes[1];
    if (a.n_particles != b.n_particles) return false;
    if (a.initial_flavor != Flavor::electron || b.initial_flavor != Flavor::electron) return false;
    if (a.is_antineutrino == b.is_antineutrino) return false;
    if (a.delta != b.delta || a.theta != b.theta) return false;
    return true;
}

RegisterPlan plan_registers(const EnsembleSpec& spec, EncodingKind kind) {
    spec.validate();
    RegisterPlan plan;
    int offset = 0;
    switch (kind) {
        case EncodingKind::conventional:
            for (int i = 0; i < spec.n_modes(); ++i) {
                plan.mode_registers.push_back({"m" + std::to_string(i), offset,
                                               spec.modes[i].n_particles});
                offset += spec.modes[i].n_particles;
            }
            break;
        case EncodingKind::dicke_ancilla:
        case EncodingKind::dicke_pauli:
            for (int i = 0; i < spec.n_modes(); ++i) {
                const int w = register_width_for(spec.modes[i].n_particles);
                plan.mode_registers.push_back({"m" + std::to_string(i), offset, w});
                offset += w;
            }
            if (kind == EncodingKind::dicke_ancilla) {
                plan.ancilla = offset;
                ++offset;
            }
            break;
        case EncodingKind::diagonal_dicke: {
            require(is_bipolar(spec),
                    "diagonal_dicke: requires a symmetric bipolar (nu_e + nubar_e) system");
            const int w = register_width_for(spec.modes[0].n_particles);
            plan.mode_registers.push_back({"q", 0, w});
            offset = w;
            break;
        }
    }
    plan.total_width = offset;
    return plan;
}

std::vector<RegisterSpan> RegisterPlan::all_registers() const {
    std::vector<RegisterSpan> regs = mode_registers;
    if (ancilla >= 0) regs.push_back({"anc", ancilla, 1});
    return regs;
}

int required_qubits(const EnsembleSpec& spec, EncodingKind kind) {
    return plan_registers(spec, kind).total_width;
}

Circuit prepare_initial_state(const EnsembleSpec& spec, EncodingKind kind) {
    RegisterPlan plan = plan_registers(spec, kind);
    Circuit c(plan.total_width, plan.all_registers());
    switch (kind) {
        case EncodingKind::conventional:
            for (int i = 0; i < spec.n_modes(); ++i) {
                if (spec.modes[i].initial_basis_bit() == 0) continue;
                const auto& reg = plan.mode_registers[i];
                for (int p = 0; p < reg.width; ++p) c.x(reg.offset + p);
            }
            break;
        case EncodingKind::dicke_ancilla:
        case EncodingKind::dicke_pauli:
            for (int i = 0; i < spec.n_modes(); ++i) {
                const long v = initial_register_value(spec.modes[i]);
                const auto& reg = plan.mode_registers[i];
                for (int p = 0; p < reg.width; ++p)
                    if (v & (1L << p)) c.x(reg.offset + p);
            }
            break;
        case EncodingKind::diagonal_dicke:
            break;  // register value 0
    }
    return c;
}

namespace {

// exp(-i (theta/2) Z(x)Z) on (a, b) using CZ as the only entangling gate
void zz_core(Circuit& c, int a, int b, double theta) {
    c.h(b);
    c.cz(a, b);
    c.h(b);
    c.rz(b, theta);
    c.h(b);
    c.cz(a, b);
    c.h(b);
}

}  // namespace

Circuit u2_gate(double J_dt) {
    const double phi = J_dt + kPi / 4.0;
    Circuit c(2);
    // exp(-i phi (XX + YY + ZZ)) as three commuting factors
    c.h(0);
    c.h(1);
    zz_core(c, 0, 1, 2.0 * phi);
    c.h(0);
    c.h(1);
    c.sdg(0);
    c.h(0);
    c.sdg(1);
    c.h(1);
    zz_core(c, 0, 1, 2.0 * phi);
    c.h(0);
    c.phase(0, kPi / 2.0);
    c.h(1);
    c.phase(1, kPi / 2.0);
    zz_core(c, 0, 1, 2.0 * phi);
    std::swap(c.logical_map[0], c.logical_map[1]);  // the pi/4 offset swaps the pair
    return c;
}

Circuit conventional_trotter_step(const EnsembleSpec& spec, double dt, int n_steps,
                                  int step_index) {
    spec.validate();
    require(spec.per_neutrino(), "conventional_trotter_step: requires all N_i = 1");
    require(n_steps >= 2, "conventional_trotter_step: n_steps must be >= 2");
    const int n = spec.n_modes();
    RegisterPlan plan = plan_registers(spec, EncodingKind::conventional);
    Circuit c(n, plan.all_registers());

    std::vector<BVector> b(n);
    for (int p = 0; p < n; ++p)
        b[p] = vacuum_b_vector(spec.modes[p].delta, spec.modes[p].theta,
                               spec.modes[p].is_antineutrino);

    if (n == 1) {
        // no pairs; symmetric single-qubit splitting of the full step
        if (std::abs(b[0].x * dt) > kAngleEps) c.rx(0, 0.5 * b[0].x * dt);
        if (std::abs(b[0].z * dt) > kAngleEps) c.rz(0, b[0].z * dt);
        if (std::abs(b[0].x * dt) > kAngleEps) c.rx(0, 0.5 * b[0].x * dt);
        return c;
    }

    // half one-body slice of h_pq per block side
    const double w = dt / (2.0 * (n_steps - 1));
    auto enter_slice = [&](int qubit, int logical) {
        if (std::abs(b[logical].x * w) > kAngleEps) c.rx(qubit, b[logical].x * w);
        if (std::abs(b[logical].z * w) > kAngleEps) c.rz(qubit, b[logical].z * w);
    };
    auto leave_slice = [&](int qubit, int logical) {
        if (std::abs(b[logical].z * w) > kAngleEps) c.rz(qubit, b[logical].z * w);
        if (std::abs(b[logical].x * w) > kAngleEps) c.rx(qubit, b[logical].x * w);
    };

    // assumes the arrangement left by step_index earlier steps (each step
    // reverses the qubit order); for even n the brick direction alternates so
    // that consecutive steps traverse the logical pairs in opposite order
    const bool reversed_start = step_index % 2 == 1;
    const bool odd_first = (n % 2 == 0) && reversed_start;
    std::vector<int> pos(n);  // pos[physical] = logical
    for (int i = 0; i < n; ++i) pos[i] = reversed_start ? n - 1 - i : i;
    for (int round = 0; round < n; ++round) {
        const int start = (round + (odd_first ? 1 : 0)) % 2;
        for (int i = start; i + 1 < n; i += 2) {
            const int p = pos[i], q = pos[i + 1];
            enter_slice(i, p);
            enter_slice(i + 1, q);
            append_mapped(c, u2_gate(spec.coupling(p, q) * dt), {i, i + 1});
            // the u2 swap moved p to i+1 and q to i
            leave_slice(i + 1, p);
            leave_slice(i, q);
            std::swap(pos[i], pos[i + 1]);
        }
    }
    for (int i = 0; i < n; ++i) c.logical_map[pos[i]] = i;
    return c;
}

Circuit gate_rsz(int width, const RegisterSpan& reg, double phi) {
    Circuit c(width);
    // exp(-i phi (n_hat - S)), one phase gate per qubit, weight 2^p
    for (int p = 0; p < reg.width; ++p) {
        const double angle = -std::ldexp(phi, p);
        if (std::abs(angle) > kAngleEps) c.phase(reg.offset + p, angle);
    }
    return c;
}

Circuit gate_rszsz(int width, const RegisterSpan& reg1, const RegisterSpan& reg2, double theta,
                   double S1, double S2) {
    require(reg1.offset + reg1.width <= reg2.offset || reg2.offset + reg2.width <= reg1.offset,
            "gate_rszsz: registers must be disjoint");
    Circuit c(width);
    if (std::abs(theta) <= kAngleEps) return c;
    // (n1 - S1)(n2 - S2) = n1 n2 - S2 n1 - S1 n2 + const
    for (int p = 0; p < reg1.width; ++p) {
        const double angle = S2 * std::ldexp(theta, p);
        if (std::abs(angle) > kAngleEps) c.phase(reg1.offset + p, angle);
    }
    for (int q = 0; q < reg2.width; ++q) {
        const double angle = S1 * std::ldexp(theta, q);
        if (std::abs(angle) > kAngleEps) c.phase(reg2.offset + q, angle);
    }
    for (int p = 0; p < reg1.width; ++p)
        for (int q = 0; q < reg2.width; ++q) {
            const double angle = -std::ldexp(theta, p + q);
            if (std::abs(angle) > kAngleEps)
                c.cphase(reg1.offset + p, reg2.offset + q, angle);
        }
    return c;
}

Circuit eq_gate(int width, const RegisterSpan& reg, long k, int ancilla) {
    require(k >= 0 && k < (1L << reg.width), "eq_gate: k out of register range");
    require(ancilla >= 0 && ancilla < width, "eq_gate: ancilla out of range");
    Circuit c(width);
    for (int p = 0; p < reg.width; ++p)
        if (!(k & (1L << p))) c.x(reg.offset + p);
    c.mcx(register_qubits(reg), ancilla);
    for (int p = 0; p < reg.width; ++p)
        if (!(k & (1L << p))) c.x(reg.offset + p);
    return c;
}

Circuit controlled_increment(int width, const RegisterSpan& reg, int ancilla) {
    require(ancilla >= 0 && ancilla < width, "controlled_increment: ancilla out of range");
    Circuit c(width);
    // conditioned bit flips from the most significant qubit down
    for (int p = reg.width - 1; p >= 1; --p) {
        std::vector<int> controls{ancilla};
        for (int l = 0; l < p; ++l) controls.push_back(reg.offset + l);
        c.mcx(controls, reg.offset + p);
    }
    c.cx(ancilla, reg.offset);
    return c;
}

Circuit controlled_decrement(int width, const RegisterSpan& reg, int ancilla) {
    Circuit c(width);
    // flip, increment, flip: any qubit flips only if all lower ones were zero
    for (int p = 0; p < reg.width; ++p) c.x(reg.offset + p);
    c.append(controlled_increment(width, reg, ancilla));
    for (int p = 0; p < reg.width; ++p) c.x(reg.offset + p);
    return c;
}

double rx1_prefactor(int n_particles, int k) {
    const double S = 0.5 * n_particles;
    return ladder_coefficient(S, k - S, LadderDirection::raise);
}

double rx2_prefactor(int n1, int j, int n2, int k) {
    const double S1 = 0.5 * n1, S2 = 0.5 * n2;
    return ladder_coefficient(S1, j - S1, LadderDirection::raise) *
           ladder_coefficient(S2, k - S2, LadderDirection::lower);
}

namespace {

void mask_to_ones(Circuit& c, const RegisterSpan& reg, long value) {
    for (int p = 0; p < reg.width; ++p)
        if (!(value & (1L << p))) c.x(reg.offset + p);
}

void pauli_two_level_rotation(Circuit& c, const std::vector<int>& qmap, long from, long to,
                              int n_qubits, double half_generator_angle) {
    // exp(-i half_generator_angle (|to><from| + h.c.)) via commuting
    // Pauli-string rotations
    for (const auto& s : transition_pauli_strings(from, to, n_qubits)) {
        Circuit rot = pauli_rotation_circuit(s, 2.0 * half_generator_angle);
        append_mapped(c, rot, qmap);
    }
}

}  // namespace

Circuit gate_rx1(int width, const RegisterSpan& reg, int n_particles, int k, double theta,
                 RXVariant variant, int ancilla) {
    require(k >= 0 && k < n_particles, "gate_rx1: transition k <-> k+1 out of physical range");
    Circuit c(width);
    if (std::abs(theta) <= kAngleEps) return c;

    if (variant == RXVariant::pauli) {
        pauli_two_level_rotation(c, register_qubits(reg), k, k + 1, reg.width, 0.5 * theta);
        return c;
    }

    require(ancilla >= 0, "gate_rx1: ancilla variant needs an ancilla qubit");
    c.append(eq_gate(width, reg, k + 1, ancilla));
    c.append(controlled_decrement(width, reg, ancilla));
    mask_to_ones(c, reg, k);
    c.mcrx(register_qubits(reg), ancilla, theta);
    mask_to_ones(c, reg, k);
    c.append(controlled_increment(width, reg, ancilla));
    c.append(eq_gate(width, reg, k + 1, ancilla));
    return c;
}

Circuit gate_rx2(int width, const RegisterSpan& reg1, int n1, const RegisterSpan& reg2, int n2,
                 int j, int k, double theta, RXVariant variant, int ancilla) {
    require(j >= 0 && j < n1, "gate_rx2: register-1 transition out of physical range");
    require(k >= 1 && k <= n2, "gate_rx2: register-2 transition out of physical range");
    Circuit c(width);
    const double prefactor = rx2_prefactor(n1, j, n2, k);
    if (std::abs(theta) <= kAngleEps || prefactor == 0.0) return c;

    if (variant == RXVariant::pauli) {
        std::vector<int> qmap;
        for (int q : register_qubits(reg1)) qmap.push_back(q);
        for (int q : register_qubits(reg2)) qmap.push_back(q);
        const long from = j | (static_cast<long>(k) << reg1.width);
        const long to = (j + 1) | (static_cast<long>(k - 1) << reg1.width);
        pauli_two_level_rotation(c, qmap, from, to, reg1.width + reg2.width,
                                 0.25 * theta * prefactor);
        return c;
    }

    require(ancilla >= 0, "gate_rx2: ancilla variant needs an ancilla qubit");
    std::vector<int> data = register_qubits(reg1);
    for (int q : register_qubits(reg2)) data.push_back(q);

    auto eq_joint = [&](long v1, long v2) {
        mask_to_ones(c, reg1, v1);
        mask_to_ones(c, reg2, v2);
        c.mcx(data, ancilla);
        mask_to_ones(c, reg1, v1);
        mask_to_ones(c, reg2, v2);
    };

    eq_joint(j + 1, k - 1);
    c.append(controlled_decrement(width, reg1, ancilla));
    c.append(controlled_increment(width, reg2, ancilla));
    mask_to_ones(c, reg1, j);
    mask_to_ones(c, reg2, k);
    c.mcrx(data, ancilla, 0.5 * theta * prefactor);
    mask_to_ones(c, reg1, j);
    mask_to_ones(c, reg2, k);
    c.append(controlled_increment(width, reg1, ancilla));
    c.append(controlled_decrement(width, reg2, ancilla));
    eq_joint(j + 1, k - 1);
    return c;
}

Circuit dicke_trotter_step(const EnsembleSpec& spec, double dt, RXVariant variant) {
    spec.validate();
    const EncodingKind kind =
        variant == RXVariant::ancilla ? EncodingKind::dicke_ancilla : EncodingKind::dicke_pauli;
    RegisterPlan plan = plan_registers(spec, kind);
    Circuit c(plan.total_width, plan.all_registers());

    // vacuum rotations, register by register
    for (int i = 0; i < spec.n_modes(); ++i) {
        const auto& mode = spec.modes[i];
        const auto& reg = plan.mode_registers[i];
        BVector b = vacuum_b_vector(mode.delta, mode.theta, mode.is_antineutrino);
        // S_z = S - n_hat in the flip-count register convention
        c.append(gate_rsz(plan.total_width, reg, -b.z * dt));
        if (std::abs(b.x) > kAngleEps)
            for (int k = 0; k < mode.n_particles; ++k)
                c.append(gate_rx1(plan.total_width, reg, mode.n_particles, k,
                                  b.x * rx1_prefactor(mode.n_particles, k) * dt, variant,
                                  plan.ancilla));
    }

    // self-interaction, pair by pair
    for (int i = 0; i < spec.n_modes(); ++i)
        for (int j = i + 1; j < spec.n_modes(); ++j) {
            const double J = spec.coupling(i, j);
            if (J == 0.0) continue;
            const auto& ri = plan.mode_registers[i];
            const auto& rj = plan.mode_registers[j];
            c.append(gate_rszsz(plan.total_width, ri, rj, 4.0 * J * dt,
                                0.5 * spec.modes[i].n_particles,
                                0.5 * spec.modes[j].n_particles));
            for (int a = 0; a < spec.modes[i].n_particles; ++a)
                for (int b2 = 1; b2 <= spec.modes[j].n_particles; ++b2)
                    c.append(gate_rx2(plan.total_width, ri, spec.modes[i].n_particles, rj,
                                      spec.modes[j].n_particles, a, b2, 8.0 * J * dt, variant,
                                      plan.ancilla));
        }
    return c;
}

Circuit diagonal_dicke_trotter_step(int N, double delta, double theta, double J, double dt) {
    require(N >= 1, "diagonal_dicke_trotter_step: N must be >= 1");
    const int w = register_width_for(N);
    Circuit c(w, {{"q", 0, w}});
    const double S = 0.5 * N;
    const double alpha = -4.0 * J;
    const double beta = -2.0 * delta * std::cos(2.0 * theta) + 8.0 * J * S;

    // H_D = alpha n^2 + beta n; projector weights, then the Z expansion
    std::vector<double> wj(w), wjl(w * w, 0.0);
    for (int j = 0; j < w; ++j) wj[j] = alpha * std::ldexp(1.0, 2 * j) + beta * std::ldexp(1.0, j);
    for (int j = 0; j < w; ++j)
        for (int l = j + 1; l < w; ++l) wjl[j * w + l] = 2.0 * alpha * std::ldexp(1.0, j + l);

    for (int j = 0; j < w; ++j) {
        double zj = -0.5 * wj[j];
        for (int l = 0; l < w; ++l) {
            if (l == j) continue;
            zj -= 0.25 * wjl[std::min(j, l) * w + std::max(j, l)];
        }
        const double angle = 2.0 * zj * dt;
        if (std::abs(angle) > kAngleEps) c.rz(j, angle);
    }
    for (int j = 0; j < w; ++j)
        for (int l = j + 1; l < w; ++l) {
            const double angle = 2.0 * 0.25 * wjl[j * w + l] * dt;
            if (std::abs(angle) > kAngleEps) c.rzz(j, l, angle);
        }

    // off-diagonal blocks T_{i,i-1}, ancilla-free
    for (int i = 1; i <= N; ++i) {
        const double t_i = 2.0 * J * i * (N - i + 1);
        if (std::abs(t_i * dt) <= kAngleEps) continue;
        pauli_two_level_rotation(c, register_qubits({"q", 0, w}), i - 1, i, w, t_i * dt);
    }
    return c;
}

}  // namespace nuosc

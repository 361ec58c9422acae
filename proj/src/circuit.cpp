#include "nuosc/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace nuosc {

namespace {
const Complex kI{0.0, 1.0};
}

const char* gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::X: return "x";
        case GateKind::H: return "h";
        case GateKind::SDG: return "sdg";
        case GateKind::RX: return "rx";
        case GateKind::RZ: return "rz";
        case GateKind::PHASE: return "p";
        case GateKind::CX: return "cx";
        case GateKind::CZ: return "cz";
        case GateKind::CPHASE: return "cp";
        case GateKind::RZZ: return "rzz";
        case GateKind::MCX: return "mcx";
        case GateKind::MCRX: return "mcrx";
    }
    return "?";
}

bool gate_has_angle(GateKind kind) {
    switch (kind) {
        case GateKind::RX:
        case GateKind::RZ:
        case GateKind::PHASE:
        case GateKind::CPHASE:
        case GateKind::RZZ:
        case GateKind::MCRX:
            return true;
        default:
            return false;
    }
}

Mat gate_target_matrix(const Gate& g) {
    const double t = g.angle;
    switch (g.kind) {
        case GateKind::X:
        case GateKind::CX:
        case GateKind::MCX:
            return pauli_x();
        case GateKind::H: {
            Mat m(2, 2);
            m << 1, 1, 1, -1;
            return m / std::sqrt(2.0);
        }
        case GateKind::SDG: {
            Mat m = Mat::Zero(2, 2);
            m(0, 0) = 1.0;
            m(1, 1) = -kI;
            return m;
        }
        case GateKind::RX:
        case GateKind::MCRX: {
            Mat m(2, 2);
            m << std::cos(t / 2), -kI * std::sin(t / 2), -kI * std::sin(t / 2), std::cos(t / 2);
            return m;
        }
        case GateKind::RZ: {
            Mat m = Mat::Zero(2, 2);
            m(0, 0) = std::exp(-kI * t / 2.0);
            m(1, 1) = std::exp(kI * t / 2.0);
            return m;
        }
        case GateKind::PHASE:
        case GateKind::CPHASE: {
            Mat m = Mat::Zero(2, 2);
            m(0, 0) = 1.0;
            m(1, 1) = std::exp(kI * t);
            return m;
        }
        case GateKind::CZ: {
            Mat m = Mat::Zero(2, 2);
            m(0, 0) = 1.0;
            m(1, 1) = -1.0;
            return m;
        }
        case GateKind::RZZ: {
            Mat m = Mat::Zero(4, 4);
            m(0, 0) = std::exp(-kI * t / 2.0);
            m(1, 1) = std::exp(kI * t / 2.0);
            m(2, 2) = std::exp(kI * t / 2.0);
            m(3, 3) = std::exp(-kI * t / 2.0);
            return m;
        }
    }
    require(false, "gate_target_matrix: unknown gate");
    return {};
}

Circuit::Circuit(int w) : width(w) {
    logical_map.resize(w);
    for (int i = 0; i < w; ++i) logical_map[i] = i;
}

Circuit::Circuit(int w, std::vector<RegisterSpan> regs) : Circuit(w) { registers = std::move(regs); }

void Circuit::add(Gate g) {
    for (int t : g.targets) require(t >= 0 && t < width, "Circuit: target out of range");
    for (int c : g.controls) {
        require(c >= 0 && c < width, "Circuit: control out of range");
        for (int t : g.targets) require(c != t, "Circuit: controls and targets must be disjoint");
    }
    gates.push_back(std::move(g));
}

void Circuit::x(int q) { add({GateKind::X, {q}, {}, 0.0}); }
void Circuit::h(int q) { add({GateKind::H, {q}, {}, 0.0}); }
void Circuit::sdg(int q) { add({GateKind::SDG, {q}, {}, 0.0}); }
void Circuit::rx(int q, double theta) { add({GateKind::RX, {q}, {}, theta}); }
void Circuit::rz(int q, double theta) { add({GateKind::RZ, {q}, {}, theta}); }
void Circuit::phase(int q, double theta) { add({GateKind::PHASE, {q}, {}, theta}); }
void Circuit::cx(int c, int t) { add({GateKind::CX, {t}, {c}, 0.0}); }
void Circuit::cz(int a, int b) { add({GateKind::CZ, {b}, {a}, 0.0}); }
void Circuit::cphase(int a, int b, double theta) { add({GateKind::CPHASE, {b}, {a}, theta}); }
void Circuit::rzz(int a, int b, double theta) { add({GateKind::RZZ, {a, b}, {}, theta}); }
void Circuit::mcx(std::vector<int> controls, int target) {
    add({GateKind::MCX, {target}, std::move(controls), 0.0});
}
void Circuit::mcrx(std::vector<int> controls, int target, double theta) {
    add({GateKind::MCRX, {target}, std::move(controls), theta});
}

void Circuit::append(const Circuit& other) {
    require(other.width == width, "Circuit::append: width mismatch");
    gates.insert(gates.end(), other.gates.begin(), other.gates.end());
    std::vector<int> composed(width);
    for (int l = 0; l < width; ++l) composed[l] = other.logical_map[logical_map[l]];
    logical_map = std::move(composed);
}

int Circuit::depth() const {
    std::vector<int> level(width, 0);
    int depth = 0;
    for (const auto& g : gates) {
        int top = 0;
        for (int q : g.targets) top = std::max(top, level[q]);
        for (int q : g.controls) top = std::max(top, level[q]);
        ++top;
        for (int q : g.targets) level[q] = top;
        for (int q : g.controls) level[q] = top;
        depth = std::max(depth, top);
    }
    return depth;
}

namespace {

bool controls_satisfied(long index, const std::vector<int>& controls) {
    for (int c : controls)
        if (!(index & (1L << c))) return false;
    return true;
}

}  // namespace

void apply_gate_inplace(Vec& amps, const Gate& gate, int n_qubits) {
    for (int t : gate.targets) require(t >= 0 && t < n_qubits, "apply_gate: target out of range");
    for (int c : gate.controls) require(c >= 0 && c < n_qubits, "apply_gate: control out of range");
    const long dim = amps.size();

    switch (gate.kind) {
        case GateKind::RZ:
        case GateKind::PHASE:
        case GateKind::SDG: {
            const Mat m = gate_target_matrix(gate);
            const long tmask = 1L << gate.targets[0];
            for (long i = 0; i < dim; ++i) amps[i] *= (i & tmask) ? m(1, 1) : m(0, 0);
            return;
        }
        case GateKind::CZ:
        case GateKind::CPHASE: {
            const Mat m = gate_target_matrix(gate);
            const long tmask = 1L << gate.targets[0];
            for (long i = 0; i < dim; ++i)
                if ((i & tmask) && controls_satisfied(i, gate.controls))
                    amps[i] *= m(1, 1);
            return;
        }
        case GateKind::RZZ: {
            const long m0 = 1L << gate.targets[0];
            const long m1 = 1L << gate.targets[1];
            const Complex even = std::exp(-kI * gate.angle / 2.0);
            const Complex odd = std::exp(kI * gate.angle / 2.0);
            for (long i = 0; i < dim; ++i) {
                const bool parity = (bool(i & m0)) != (bool(i & m1));
                amps[i] *= parity ? odd : even;
            }
            return;
        }
        case GateKind::X:
        case GateKind::CX:
        case GateKind::MCX: {
            const long tmask = 1L << gate.targets[0];
            for (long i = 0; i < dim; ++i) {
                if (i & tmask) continue;
                if (!controls_satisfied(i, gate.controls)) continue;
                std::swap(amps[i], amps[i | tmask]);
            }
            return;
        }
        default: {
            const Mat m = gate_target_matrix(gate);
            const long tmask = 1L << gate.targets[0];
            for (long i = 0; i < dim; ++i) {
                if (i & tmask) continue;
                if (!controls_satisfied(i, gate.controls)) continue;
                const Complex a0 = amps[i];
                const Complex a1 = amps[i | tmask];
                amps[i] = m(0, 0) * a0 + m(0, 1) * a1;
                amps[i | tmask] = m(1, 0) * a0 + m(1, 1) * a1;
            }
            return;
        }
    }
}

StateVector apply_gate(const StateVector& state, const Gate& gate) {
    StateVector out = state;
    apply_gate_inplace(out.amplitudes, gate, state.n_qubits());
    return out;
}

StateVector run_statevector(const Circuit& circuit, const StateVector& psi0) {
    require(psi0.n_qubits() == circuit.width, "run_statevector: width mismatch");
    StateVector out = psi0;
    if (out.layout.empty()) out.layout = circuit.registers;
    for (const auto& g : circuit.gates) apply_gate_inplace(out.amplitudes, g, circuit.width);
    return out;
}

Mat circuit_unitary(const Circuit& circuit) {
    require(circuit.width >= 1 && circuit.width <= kUnitaryWidthCap,
            "circuit_unitary: width exceeds the dense cap");
    const long dim = 1L << circuit.width;
    Mat u = Mat::Identity(dim, dim);
    for (long col = 0; col < dim; ++col) {
        Vec v = u.col(col);
        for (const auto& g : circuit.gates) apply_gate_inplace(v, g, circuit.width);
        u.col(col) = v;
    }
    return u;
}

std::map<std::string, std::uint64_t> sample_counts(const StateVector& state, std::uint64_t shots,
                                                   std::uint64_t seed) {
    require(shots >= 1, "sample_counts: shots must be >= 1");
    const long dim = state.dim();
    const int n = state.n_qubits();
    std::vector<double> cdf(dim);
    double acc = 0.0;
    for (long i = 0; i < dim; ++i) {
        acc += std::norm(state.amplitudes[i]);
        cdf[i] = acc;
    }
    std::mt19937_64 rng(seed);
    std::map<std::string, std::uint64_t> counts;
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const double x = u * acc;
        long lo = 0, hi = dim - 1;
        while (lo < hi) {
            long mid = (lo + hi) / 2;
            if (cdf[mid] <= x) lo = mid + 1; else hi = mid;
        }
        std::string key(n, '0');
        for (int q = 0; q < n; ++q)
            if (lo & (1L << q)) key[n - 1 - q] = '1';
        ++counts[key];
    }
    return counts;
}

bool PauliString::all_identity() const {
    for (auto l : letters)
        if (l != PauliLetter::I) return false;
    return true;
}

Mat PauliString::to_matrix() const {
    Mat m = Mat::Identity(1, 1);
    for (auto l : letters) {
        Mat single;
        switch (l) {
            case PauliLetter::I: single = identity2(); break;
            case PauliLetter::X: single = pauli_x(); break;
            case PauliLetter::Y: single = pauli_y(); break;
            case PauliLetter::Z: single = pauli_z(); break;
        }
        m = kron(single, m).eval();  // letters[0] acts on the least significant qubit
    }
    return coefficient * m;
}

std::vector<PauliString> transition_pauli_strings(long from, long to, int n_qubits) {
    require(n_qubits >= 1 && n_qubits <= 20, "transition_pauli_strings: bad qubit count");
    require(from >= 0 && from < (1L << n_qubits) && to >= 0 && to < (1L << n_qubits),
            "transition_pauli_strings: state out of range");
    // |to><from| as a product of one-qubit factors, each a sum of two Pauli
    // terms; expand over all 2^n choices and keep strings whose combined
    // coefficient (with the Hermitian conjugate) is nonzero.
    std::vector<PauliString> out;
    const long n_choices = 1L << n_qubits;
    for (long choice = 0; choice < n_choices; ++choice) {
        PauliString s;
        s.letters.resize(n_qubits, PauliLetter::I);
        Complex coeff{1.0, 0.0};
        for (int q = 0; q < n_qubits; ++q) {
            const bool bra = (from >> q) & 1;  // source bit
            const bool ket = (to >> q) & 1;    // destination bit
            const bool second = (choice >> q) & 1;
            if (!bra && !ket) {  // |0><0| = (I + Z)/2
                s.letters[q] = second ? PauliLetter::Z : PauliLetter::I;
                coeff *= 0.5;
            } else if (bra && ket) {  // |1><1| = (I - Z)/2
                s.letters[q] = second ? PauliLetter::Z : PauliLetter::I;
                coeff *= second ? -0.5 : 0.5;
            } else if (!bra && ket) {  // |1><0| = (X - iY)/2
                s.letters[q] = second ? PauliLetter::Y : PauliLetter::X;
                coeff *= second ? Complex(0.0, -0.5) : Complex(0.5, 0.0);
            } else {  // |0><1| = (X + iY)/2
                s.letters[q] = second ? PauliLetter::Y : PauliLetter::X;
                coeff *= second ? Complex(0.0, 0.5) : Complex(0.5, 0.0);
            }
        }
        const double combined = 2.0 * coeff.real();  // string + its h.c. partner
        if (std::abs(combined) < 1e-15) continue;
        s.coefficient = Complex(combined, 0.0);
        out.push_back(std::move(s));
    }
    return out;
}

Circuit pauli_rotation_circuit(const PauliString& string, double angle) {
    require(!string.all_identity(),
            "pauli_rotation_circuit: all-identity string is a global phase only");
    require(std::abs(string.coefficient.imag()) < 1e-12,
            "pauli_rotation_circuit: string coefficient must be real");
    const int n = string.width();
    Circuit c(n);
    std::vector<int> active;
    for (int q = 0; q < n; ++q)
        if (string.letters[q] != PauliLetter::I) active.push_back(q);

    for (int q : active) {
        if (string.letters[q] == PauliLetter::X) {
            c.h(q);
        } else if (string.letters[q] == PauliLetter::Y) {
            c.sdg(q);
            c.h(q);
        }
    }
    for (std::size_t i = 0; i + 1 < active.size(); ++i) c.cx(active[i], active[i + 1]);
    c.rz(active.back(), string.coefficient.real() * angle);
    for (std::size_t i = active.size() - 1; i >= 1; --i) c.cx(active[i - 1], active[i]);
    for (auto it = active.rbegin(); it != active.rend(); ++it) {
        const int q = *it;
        if (string.letters[q] == PauliLetter::X) {
            c.h(q);
        } else if (string.letters[q] == PauliLetter::Y) {
            c.h(q);
            c.phase(q, kPi / 2.0);  // S, the inverse of SDG
        }
    }
    return c;
}

}  // namespace nuosc

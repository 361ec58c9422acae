#pragma once

#include <cstdint>
#include <map>

#include "nuosc/state.hpp"

namespace nuosc {

enum class GateKind {
    X,
    H,
    SDG,     // diag(1, -i)
    RX,      // exp(-i theta X / 2)
    RZ,      // exp(-i theta Z / 2)
    PHASE,   // diag(1, e^{i theta})
    CX,
    CZ,
    CPHASE,  // controlled diag(1, e^{i theta})
    RZZ,     // exp(-i theta Z(x)Z / 2)
    MCX,
    MCRX,
};

struct Gate {
    GateKind kind;
    std::vector<int> targets;
    std::vector<int> controls;
    double angle = 0.0;
};

const char* gate_name(GateKind kind);
bool gate_has_angle(GateKind kind);
/// Dense matrix of the gate on its targets (controls excluded).
Mat gate_target_matrix(const Gate& g);

/// Ordered gate list over named registers. logical_map[l] is the physical
/// position of logical qubit l after the circuit (tracks SWAP fusion).
struct Circuit {
    int width = 0;
    std::vector<RegisterSpan> registers;
    std::vector<Gate> gates;
    std::vector<int> logical_map;

    explicit Circuit(int w = 0);
    Circuit(int w, std::vector<RegisterSpan> regs);

    void add(Gate g);
    void x(int q);
    void h(int q);
    void sdg(int q);
    void rx(int q, double theta);
    void rz(int q, double theta);
    void phase(int q, double theta);
    void cx(int c, int t);
    void cz(int a, int b);
    void cphase(int a, int b, double theta);
    void rzz(int a, int b, double theta);
    void mcx(std::vector<int> controls, int target);
    void mcrx(std::vector<int> controls, int target, double theta);

    /// Appends another circuit of the same width; logical maps compose.
    void append(const Circuit& other);
    std::size_t gate_count() const { return gates.size(); }
    /// Greedy ASAP depth over qubit usage.
    int depth() const;
};

StateVector apply_gate(const StateVector& state, const Gate& gate);
void apply_gate_inplace(Vec& amps, const Gate& gate, int n_qubits);

StateVector run_statevector(const Circuit& circuit, const StateVector& psi0);

inline constexpr int kUnitaryWidthCap = 12;
Mat circuit_unitary(const Circuit& circuit);

/// Multinomial sample of |amplitude|^2. Keys are bitstrings, most significant
/// qubit first. Deterministic for a fixed seed: mt19937_64 with 53-bit
/// uniforms ((x >> 11) * 2^-53) and inverse-CDF lookup.
std::map<std::string, std::uint64_t> sample_counts(const StateVector& state,
                                                   std::uint64_t shots, std::uint64_t seed);

enum class PauliLetter : char { I = 'I', X = 'X', Y = 'Y', Z = 'Z' };

struct PauliString {
    std::vector<PauliLetter> letters;  // letters[q] acts on qubit q
    Complex coefficient{1.0, 0.0};

    int width() const { return static_cast<int>(letters.size()); }
    bool all_identity() const;
    Mat to_matrix() const;  // coefficient included
};

/// Pauli expansion of |to><from| + h.c. over n qubits; only strings with a
/// nonvanishing (real) combined coefficient are returned.
std::vector<PauliString> transition_pauli_strings(long from, long to, int n_qubits);

/// Circuit for exp(-i (angle/2) c P): per-qubit basis changes (H for X, SDG
/// then H for Y), a CNOT parity chain, RZ(c*angle) on the chain end, then the
/// exact reversal. The string coefficient c must be real.
Circuit pauli_rotation_circuit(const PauliString& string, double angle);

}  // namespace nuosc

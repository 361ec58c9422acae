#pragma once

#include "nuosc/circuit.hpp"
#include "nuosc/evolver.hpp"
#include "nuosc/physics.hpp"

namespace nuosc {

enum class EncodingKind { conventional, dicke_ancilla, dicke_pauli, diagonal_dicke };

enum class RXVariant { ancilla, pauli };

struct EncodingChoice {
    EncodingKind kind = EncodingKind::conventional;
    TrotterOrder trotter_order = TrotterOrder::second;
    int n_steps = 2;

    void validate() const;
};

const char* encoding_name(EncodingKind kind);
EncodingKind encoding_from_name(const std::string& name);

/// Register layout for an encoding: one register per mode (one per neutrino
/// for the conventional encoding), plus one ancilla for dicke_ancilla.
struct RegisterPlan {
    std::vector<RegisterSpan> mode_registers;
    int ancilla = -1;  // ancilla qubit index, or -1
    int total_width = 0;

    std::vector<RegisterSpan> all_registers() const;
};

RegisterPlan plan_registers(const EnsembleSpec& spec, EncodingKind kind);
int required_qubits(const EnsembleSpec& spec, EncodingKind kind);

/// True for a symmetric bipolar system: two flavour-pure electron modes of
/// equal size, one neutrino and one antineutrino, equal delta and theta.
bool is_bipolar(const EnsembleSpec& spec);

/// X gates producing the computational-basis encoding of the initial state.
/// Rejects specs whose modes are not flavour-pure.
Circuit prepare_initial_state(const EnsembleSpec& spec, EncodingKind kind);

/// Two-qubit fragment realizing exp(-i (J_dt + pi/4) sigma.sigma) up to a
/// global phase, single-qubit gates + CZ only.
Circuit u2_gate(double J_dt);

/// One second-order conventional Trotter step (all N_i = 1). The qubit order
/// is exactly reversed and each logical pair entangles once. The builder
/// assumes the arrangement left by step_index earlier steps (identity for
/// even, reversed for odd) and picks the brick direction so that consecutive
/// steps traverse the logical pairs in opposite order (second order); the
/// returned logical_map gives each logical qubit's position after the step.
Circuit conventional_trotter_step(const EnsembleSpec& spec, double dt, int n_steps,
                                  int step_index = 0);

/// exp(-i phi (n_hat - S)) on a register, up to a global phase (one PHASE
/// gate per qubit, angle -2^p phi).
Circuit gate_rsz(int width, const RegisterSpan& reg, double phi);

/// exp(-i theta (n1_hat - S1)(n2_hat - S2)) up to a global phase.
Circuit gate_rszsz(int width, const RegisterSpan& reg1, const RegisterSpan& reg2, double theta,
                   double S1, double S2);

/// exp(-i (theta/2) X_{k,k+1}) on register values, identity elsewhere, up to
/// a global phase. The ancilla variant uses EQ / controlled decrement / MCRX
/// / controlled increment / EQ and returns the ancilla to |0>.
Circuit gate_rx1(int width, const RegisterSpan& reg, int n_particles, int k, double theta,
                 RXVariant variant, int ancilla = -1);

/// Two-level rotation exp(-i (theta/4) c+ c- X) in the |j;k> <-> |j+1;k-1>
/// subspace of two registers, identity elsewhere, up to a global phase.
Circuit gate_rx2(int width, const RegisterSpan& reg1, int n1, const RegisterSpan& reg2, int n2,
                 int j, int k, double theta, RXVariant variant, int ancilla = -1);

/// Flips the ancilla iff the register holds value k; register restored.
Circuit eq_gate(int width, const RegisterSpan& reg, long k, int ancilla);
/// Register value += 1 (mod 2^width) when the ancilla is |1>.
Circuit controlled_increment(int width, const RegisterSpan& reg, int ancilla);
Circuit controlled_decrement(int width, const RegisterSpan& reg, int ancilla);

/// One first-order Trotter step in the Dicke encoding: per-register vacuum
/// rotations (R_Sz then the R_X1 chain, k ascending), then per-pair R_SzSz
/// followed by the R_X2 chain.
Circuit dicke_trotter_step(const EnsembleSpec& spec, double dt, RXVariant variant);

/// One first-order step on the bipolar subspace register: exact diagonal
/// layer (RZ + RZZ from the number-operator expansion), then the T_{i,i-1}
/// two-level blocks as Pauli-string rotations, i ascending.
Circuit diagonal_dicke_trotter_step(int N, double delta, double theta, double J, double dt);

/// Ladder prefactor c_k of the R_X1 chain (transition k <-> k+1 of an
/// n-particle register).
double rx1_prefactor(int n_particles, int k);
/// c+ c- prefactor of the R_X2 block |j;k> -> |j+1;k-1>.
double rx2_prefactor(int n1, int j, int n2, int k);

}  // namespace nuosc

#pragma once

#include <map>
#include <string>

#include "nuosc/linalg.hpp"

namespace nuosc {

struct RegisterSpan {
    std::string name;
    int offset = 0;
    int width = 0;
};

/// Normalized amplitude vector over qubits; qubit 0 is the least significant
/// bit of the basis index. Registers are contiguous ranges of qubits.
struct StateVector {
    Vec amplitudes;
    std::vector<RegisterSpan> layout;

    StateVector() = default;
    StateVector(Vec amps, std::vector<RegisterSpan> regs);

    int n_qubits() const;
    int dim() const { return static_cast<int>(amplitudes.size()); }
    double norm() const { return amplitudes.norm(); }

    static StateVector basis_state(int n_qubits, long index,
                                   std::vector<RegisterSpan> regs = {});
    /// Probability of measuring `value` on the register qubits.
    double register_probability(const RegisterSpan& reg, long value) const;
    /// Marginal distribution over register values.
    RealVec register_distribution(const RegisterSpan& reg) const;
};

struct Trajectory {
    RealVec times;
    std::vector<StateVector> states;
    std::map<std::string, RealVec> observables;
};

}  // namespace nuosc

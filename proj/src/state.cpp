#include "nuosc/state.hpp"

#include <cmath>

namespace nuosc {

StateVector::StateVector(Vec amps, std::vector<RegisterSpan> regs)
    : amplitudes(std::move(amps)), layout(std::move(regs)) {
    require(amplitudes.size() > 0, "StateVector: empty amplitude vector");
    long d = amplitudes.size();
    require((d & (d - 1)) == 0, "StateVector: dimension must be a power of two");
    require(std::abs(amplitudes.norm() - 1.0) <= 1e-10, "StateVector: state must be normalized");
}

int StateVector::n_qubits() const {
    int n = 0;
    while ((1L << n) < amplitudes.size()) ++n;
    return n;
}

StateVector StateVector::basis_state(int n_qubits, long index, std::vector<RegisterSpan> regs) {
    require(n_qubits >= 1, "basis_state: need at least one qubit");
    require(index >= 0 && index < (1L << n_qubits), "basis_state: index out of range");
    Vec amps = Vec::Zero(1L << n_qubits);
    amps[index] = 1.0;
    return StateVector(std::move(amps), std::move(regs));
}

double StateVector::register_probability(const RegisterSpan& reg, long value) const {
    require(value >= 0 && value < (1L << reg.width), "register_probability: value out of range");
    const long mask = ((1L << reg.width) - 1) << reg.offset;
    const long want = value << reg.offset;
    double p = 0.0;
    for (long i = 0; i < amplitudes.size(); ++i)
        if ((i & mask) == want) p += std::norm(amplitudes[i]);
    return p;
}

RealVec StateVector::register_distribution(const RegisterSpan& reg) const {
    RealVec dist = RealVec::Zero(1L << reg.width);
    const long mask = (1L << reg.width) - 1;
    for (long i = 0; i < amplitudes.size(); ++i)
        dist[(i >> reg.offset) & mask] += std::norm(amplitudes[i]);
    return dist;
}

}  // namespace nuosc

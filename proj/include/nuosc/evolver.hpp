#pragma once

#include "nuosc/physics.hpp"
#include "nuosc/state.hpp"

namespace nuosc {

/// exp(-i H t) via Hermitian eigendecomposition. Rejects non-Hermitian input.
Mat matrix_exponential(const Mat& hamiltonian, double t);

Trajectory evolve_exact(const Mat& hamiltonian, const StateVector& psi0, const RealVec& times);
Trajectory evolve_exact(const TridiagonalHermitian& hamiltonian, const StateVector& psi0,
                        const RealVec& times);

enum class TrotterOrder { first, second };

/// One factor of a Trotter product: a dense operator on a few target qubits
/// (or register-space levels, depending on the space it was built for).
struct TrotterFactor {
    std::vector<int> targets;  // qubit indices, ascending significance
    Mat op;
};

/// Factor sequence for one conventional Trotter step on the logical qubits,
/// in the exact order used by conventional_trotter_step (SWAP fusion
/// excluded). Second order mirrors the brick direction per step_index.
std::vector<TrotterFactor> conventional_step_factors(const EnsembleSpec& spec, double dt,
                                                     int n_steps, TrotterOrder order,
                                                     int step_index);

/// Product of n_steps conventional steps of size dt on the full qubit space,
/// same factor order as the circuit builder, no qubit reordering. The
/// one-body pair-term weight is fixed to the physical 1/(N-1), independent of
/// n_steps, so the product converges to the full Hamiltonian as dt -> 0.
Mat trotter_reference(const EnsembleSpec& spec, double dt, int n_steps, TrotterOrder order);

/// First-order factor sequences mirroring the Dicke-encoded circuits, acting
/// on the mode-product space (dimension prod(N_i+1)); the diagonal variant
/// acts on the N+1 bipolar subspace. Used for the trotter-reference columns.
std::vector<Mat> dicke_step_reference_factors(const EnsembleSpec& spec, double dt);
std::vector<Mat> diagonal_step_reference_factors(int N, double delta, double theta, double J,
                                                 double dt);

Vec apply_factor_product(const std::vector<Mat>& factors, const Vec& psi);
Vec apply_step_factors(const std::vector<TrotterFactor>& factors, const Vec& psi, int n_qubits);

}  // namespace nuosc

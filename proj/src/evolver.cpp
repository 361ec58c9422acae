#include "nuosc/evolver.hpp"

#include <Eigen/Eigenvalues>

namespace nuosc {

namespace {
const Complex kI{0.0, 1.0};

Mat b_dot_sigma(const BVector& b) {
    return b.x * pauli_x() + b.y * pauli_y() + b.z * pauli_z();
}
}  // namespace

Mat matrix_exponential(const Mat& hamiltonian, double t) {
    require(hamiltonian.rows() == hamiltonian.cols(), "matrix_exponential: matrix must be square");
    require(is_hermitian(hamiltonian), "matrix_exponential: input is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Mat> solver(hamiltonian);
    require(solver.info() == Eigen::Success, "matrix_exponential: eigendecomposition failed");
    const auto& evals = solver.eigenvalues();
    Vec phases(evals.size());
    for (long i = 0; i < evals.size(); ++i) phases[i] = std::exp(-kI * evals[i] * t);
    return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

namespace {

Trajectory evolve_with_solver(const Eigen::SelfAdjointEigenSolver<Mat>& solver,
                              const StateVector& psi0, const RealVec& times) {
    for (long k = 1; k < times.size(); ++k)
        require(times[k] > times[k - 1], "evolve_exact: times must be strictly increasing");
    Trajectory traj;
    traj.times = times;
    const Vec coeffs = solver.eigenvectors().adjoint() * psi0.amplitudes;
    for (long k = 0; k < times.size(); ++k) {
        Vec phased(coeffs.size());
        for (long i = 0; i < coeffs.size(); ++i)
            phased[i] = std::exp(-kI * solver.eigenvalues()[i] * times[k]) * coeffs[i];
        Vec amps = solver.eigenvectors() * phased;
        amps /= amps.norm();  // remove rounding drift, stays within 1e-9 of 1
        traj.states.emplace_back(std::move(amps), psi0.layout);
    }
    return traj;
}

}  // namespace

Trajectory evolve_exact(const Mat& hamiltonian, const StateVector& psi0, const RealVec& times) {
    require(hamiltonian.rows() == psi0.amplitudes.size(),
            "evolve_exact: Hamiltonian and state dimensions differ");
    require(is_hermitian(hamiltonian), "evolve_exact: input is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Mat> solver(hamiltonian);
    return evolve_with_solver(solver, psi0, times);
}

Trajectory evolve_exact(const TridiagonalHermitian& hamiltonian, const StateVector& psi0,
                        const RealVec& times) {
    hamiltonian.validate();
    return evolve_exact(hamiltonian.to_dense(), psi0, times);
}

namespace {

struct BrickLayer {
    std::vector<std::pair<int, int>> bonds;  // physical positions
};

// Odd-even transposition network: n rounds of alternating bond parity.
std::vector<BrickLayer> brick_layers(int n, bool odd_first) {
    std::vector<BrickLayer> layers;
    for (int l = 0; l < n; ++l) {
        BrickLayer layer;
        int start = (l + (odd_first ? 1 : 0)) % 2;
        for (int i = start; i + 1 < n; i += 2) layer.bonds.emplace_back(i, i + 1);
        layers.push_back(layer);
    }
    return layers;
}

}  // namespace

std::vector<TrotterFactor> conventional_step_factors(const EnsembleSpec& spec, double dt,
                                                     int n_steps, TrotterOrder order,
                                                     int step_index) {
    spec.validate();
    require(spec.per_neutrino(), "conventional step: requires all N_i = 1");
    require(n_steps >= 2, "conventional step: n_steps must be >= 2");
    const int n = spec.n_modes();

    std::vector<TrotterFactor> factors;
    if (n == 1) {
        const auto& m = spec.modes[0];
        Mat h = 0.5 * b_dot_sigma(vacuum_b_vector(m.delta, m.theta, m.is_antineutrino));
        factors.push_back({{0}, matrix_exponential(h, dt)});
        return factors;
    }

    if (order == TrotterOrder::first) {
        // one leading one-body factor per qubit, then pure pair couplings
        for (int p = 0; p < n; ++p) {
            const auto& m = spec.modes[p];
            Mat h = 0.5 * b_dot_sigma(vacuum_b_vector(m.delta, m.theta, m.is_antineutrino));
            factors.push_back({{p}, matrix_exponential(h, dt)});
        }
        const Mat pair = kron(pauli_x(), pauli_x()) + kron(pauli_y(), pauli_y()) +
                         kron(pauli_z(), pauli_z());
        std::vector<int> pos(n);
        for (int i = 0; i < n; ++i) pos[i] = i;
        for (const auto& layer : brick_layers(n, false)) {
            for (auto [a, b] : layer.bonds) {
                int p = pos[a], q = pos[b];
                factors.push_back(
                    {{std::min(p, q), std::max(p, q)},
                     matrix_exponential(spec.coupling(p, q) * pair, dt)});
                std::swap(pos[a], pos[b]);
            }
        }
        return factors;
    }

    // second order: exact pair-term exponentials in the brick order of the
    // step circuit, which starts from the arrangement left by step_index
    // earlier steps and alternates the brick direction for even n
    const bool reversed_start = step_index % 2 == 1;
    const bool odd_first = (n % 2 == 0) && reversed_start;
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[i] = reversed_start ? n - 1 - i : i;
    for (const auto& layer : brick_layers(n, odd_first)) {
        for (auto [a, b] : layer.bonds) {
            int p = pos[a], q = pos[b];
            int lo = std::min(p, q), hi = std::max(p, q);
            Mat h = pair_term_block(lo, hi, spec, n_steps);
            factors.push_back({{lo, hi}, matrix_exponential(h, dt)});
            std::swap(pos[a], pos[b]);
        }
    }
    return factors;
}

Vec apply_step_factors(const std::vector<TrotterFactor>& factors, const Vec& psi, int n_qubits) {
    Vec out = psi;
    for (const auto& f : factors) {
        const int k = static_cast<int>(f.targets.size());
        const long sub = 1L << k;
        Vec scratch(sub);
        const long dim = out.size();
        const long n_free = dim >> k;
        for (long free = 0; free < n_free; ++free) {
            long base = 0;
            long rem = free;
            for (int q = 0, fb = 0; q < n_qubits; ++q) {
                bool is_target = false;
                for (int t : f.targets)
                    if (t == q) is_target = true;
                if (is_target) continue;
                if (rem & (1L << fb)) base |= (1L << q);
                ++fb;
            }
            for (long r = 0; r < sub; ++r) {
                long idx = base;
                for (int b = 0; b < k; ++b)
                    if (r & (1L << b)) idx |= (1L << f.targets[b]);
                scratch[r] = out[idx];
            }
            Vec res = f.op * scratch;
            for (long r = 0; r < sub; ++r) {
                long idx = base;
                for (int b = 0; b < k; ++b)
                    if (r & (1L << b)) idx |= (1L << f.targets[b]);
                out[idx] = res[r];
            }
        }
    }
    return out;
}

Mat trotter_reference(const EnsembleSpec& spec, double dt, int n_steps, TrotterOrder order) {
    require(n_steps >= 2, "trotter_reference: n_steps must be >= 2");
    const int n = spec.total_neutrinos();
    require(n <= kDefaultQubitCap, "trotter_reference: qubit count exceeds the dense cap");
    const long dim = 1L << n;
    // the one-body weight uses the physical divisor (pair partners per
    // neutrino), so the product converges to the full Hamiltonian
    const int divisor_steps = std::max(2, n);
    Mat u = Mat::Identity(dim, dim);
    for (int s = 0; s < n_steps; ++s) {
        auto factors = conventional_step_factors(spec, dt, divisor_steps, order, s);
        for (const auto& f : factors) u = embed_operator(f.op, f.targets, n) * u;
    }
    return u;
}

std::vector<Mat> dicke_step_reference_factors(const EnsembleSpec& spec, double dt) {
    spec.validate();
    const int n = spec.n_modes();
    std::vector<SpinMatrices> spins;
    std::vector<long> mode_dim;
    long dim = 1;
    for (const auto& m : spec.modes) {
        spins.push_back(spin_matrices(m.n_particles));
        mode_dim.push_back(m.n_particles + 1);
        dim *= m.n_particles + 1;
    }
    require(dim <= kDefaultDickeCap, "dicke reference: dimension exceeds the dense cap");

    auto lift = [&](const Mat& op, int i) {
        Mat out = op;
        for (int j = i + 1; j < n; ++j) out = kron(Mat::Identity(mode_dim[j], mode_dim[j]), out);
        for (int j = i - 1; j >= 0; --j) out = kron(out, Mat::Identity(mode_dim[j], mode_dim[j]));
        return out;
    };

    // mirrors dicke_trotter_step: per-register R_Sz then the R_X1 chain,
    // then per pair R_SzSz then the R_X2 chain
    std::vector<Mat> factors;
    for (int i = 0; i < n; ++i) {
        const auto& m = spec.modes[i];
        BVector b = vacuum_b_vector(m.delta, m.theta, m.is_antineutrino);
        if (b.z != 0.0) factors.push_back(matrix_exponential(b.z * lift(spins[i].sz, i), dt));
        if (b.x != 0.0) {
            const int N = m.n_particles;
            const double S = 0.5 * N;
            for (int k = 0; k < N; ++k) {
                // two-level X block between register values k and k+1
                Mat block = Mat::Zero(mode_dim[i], mode_dim[i]);
                const double c = ladder_coefficient(S, k - S, LadderDirection::raise);
                block(k, k + 1) = c;
                block(k + 1, k) = c;
                factors.push_back(matrix_exponential(0.5 * b.x * lift(block, i), dt));
            }
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double J = spec.coupling(i, j);
            if (J == 0.0) continue;
            factors.push_back(
                matrix_exponential(4.0 * J * lift(spins[i].sz, i) * lift(spins[j].sz, j), dt));
            const int n1 = spec.modes[i].n_particles;
            const int n2 = spec.modes[j].n_particles;
            const double S1 = 0.5 * n1, S2 = 0.5 * n2;
            for (int a = 0; a < n1; ++a)
                for (int b2 = 1; b2 <= n2; ++b2) {
                    Mat up = Mat::Zero(mode_dim[i], mode_dim[i]);
                    up(a + 1, a) = 1.0;
                    Mat down = Mat::Zero(mode_dim[j], mode_dim[j]);
                    down(b2 - 1, b2) = 1.0;
                    const double c = ladder_coefficient(S1, a - S1, LadderDirection::raise) *
                                     ladder_coefficient(S2, b2 - S2, LadderDirection::lower);
                    Mat gen = c * lift(up, i) * lift(down, j);
                    gen = gen + gen.adjoint().eval();
                    factors.push_back(matrix_exponential(2.0 * J * gen, dt));
                }
        }
    return factors;
}

std::vector<Mat> diagonal_step_reference_factors(int N, double delta, double theta, double J,
                                                 double dt) {
    TridiagonalHermitian h = build_diagonal_subspace_hamiltonian(N, delta, theta, J);
    std::vector<Mat> factors;
    Mat diag = Mat::Zero(N + 1, N + 1);
    for (int i = 0; i <= N; ++i) diag(i, i) = h.diagonal[i];
    factors.push_back(matrix_exponential(diag, dt));
    for (int i = 1; i <= N; ++i) {
        Mat block = Mat::Zero(N + 1, N + 1);
        block(i, i - 1) = h.offdiagonal[i - 1];
        block(i - 1, i) = h.offdiagonal[i - 1];
        factors.push_back(matrix_exponential(block, dt));
    }
    return factors;
}

Vec apply_factor_product(const std::vector<Mat>& factors, const Vec& psi) {
    Vec out = psi;
    for (const auto& f : factors) out = f * out;
    return out;
}

}  // namespace nuosc

#include "nuosc/physics.hpp"

#include <cmath>

namespace nuosc {

void ModeSpec::validate() const {
    require(n_particles >= 1, "ModeSpec: n_particles must be >= 1");
    require(delta >= 0.0, "ModeSpec: delta must be >= 0");
}

int ModeSpec::initial_basis_bit() const {
    const bool electron = initial_flavor == Flavor::electron;
    if (!is_antineutrino) return electron ? 0 : 1;
    return electron ? 1 : 0;
}

void EnsembleSpec::validate() const {
    require(!modes.empty(), "EnsembleSpec: needs at least one mode");
    for (const auto& m : modes) m.validate();
    const int n = n_modes();
    require(coupling.rows() == n && coupling.cols() == n,
            "EnsembleSpec: coupling dimension must equal the number of modes");
    require((coupling - coupling.transpose()).cwiseAbs().maxCoeff() <= 1e-12,
            "EnsembleSpec: coupling matrix must be symmetric");
}

int EnsembleSpec::total_neutrinos() const {
    int n = 0;
    for (const auto& m : modes) n += m.n_particles;
    return n;
}

bool EnsembleSpec::per_neutrino() const {
    for (const auto& m : modes)
        if (m.n_particles != 1) return false;
    return true;
}

EnsembleSpec EnsembleSpec::expanded() const {
    validate();
    EnsembleSpec out;
    std::vector<int> owner;
    for (int i = 0; i < n_modes(); ++i) {
        for (int c = 0; c < modes[i].n_particles; ++c) {
            ModeSpec single = modes[i];
            single.n_particles = 1;
            out.modes.push_back(single);
            owner.push_back(i);
        }
    }
    const int n = static_cast<int>(out.modes.size());
    out.coupling = RealMat::Zero(n, n);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            if (p != q) out.coupling(p, q) = coupling(owner[p], owner[q]);
    return out;
}

BVector vacuum_b_vector(double delta, double theta, bool is_antineutrino) {
    require(delta >= 0.0, "vacuum_b_vector: delta must be >= 0");
    const double sign = is_antineutrino ? -1.0 : 1.0;
    return BVector{sign * delta * std::sin(2.0 * theta), 0.0,
                   -sign * delta * std::cos(2.0 * theta)};
}

long initial_register_value(const ModeSpec& mode) {
    return mode.initial_basis_bit() == 0 ? 0 : mode.n_particles;
}

double coupling_strength(double mu, double alpha) {
    require(mu >= 0.0, "coupling_strength: mu must be >= 0");
    return mu / std::sqrt(2.0) * (1.0 - std::cos(alpha));
}

double ladder_coefficient(double S, double m, LadderDirection dir) {
    require(std::abs(m) <= S + 1e-12, "ladder_coefficient: |m| must not exceed S");
    const double target = dir == LadderDirection::raise ? m + 1.0 : m - 1.0;
    if (target > S + 1e-12 || target < -S - 1e-12) return 0.0;
    const double val = S * (S + 1.0) - m * target;
    return val > 0.0 ? std::sqrt(val) : 0.0;
}

namespace {

Mat b_dot_sigma(const BVector& b) {
    return b.x * pauli_x() + b.y * pauli_y() + b.z * pauli_z();
}

Mat heisenberg_block() {
    return kron(pauli_x(), pauli_x()) + kron(pauli_y(), pauli_y()) + kron(pauli_z(), pauli_z());
}

}  // namespace

Mat build_qubit_hamiltonian(const EnsembleSpec& spec, int qubit_cap) {
    spec.validate();
    require(spec.per_neutrino(), "build_qubit_hamiltonian: requires all N_i = 1");
    const int n = spec.n_modes();
    require(n <= qubit_cap, "build_qubit_hamiltonian: qubit count exceeds the dense cap");

    const long dim = 1L << n;
    Mat h = Mat::Zero(dim, dim);
    for (int p = 0; p < n; ++p) {
        const auto& mode = spec.modes[p];
        BVector b = vacuum_b_vector(mode.delta, mode.theta, mode.is_antineutrino);
        h += 0.5 * embed_operator(b_dot_sigma(b), {p}, n);
    }
    const Mat pair = heisenberg_block();
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) {
            const double J = spec.coupling(p, q);
            if (J != 0.0) h += J * embed_operator(pair, {p, q}, n);
        }
    return h;
}

Mat pair_term_block(int p, int q, const EnsembleSpec& spec, int n_steps) {
    spec.validate();
    require(spec.per_neutrino(), "pair_term: requires all N_i = 1");
    require(n_steps >= 2, "pair_term: n_steps must be >= 2 (the divisor n_steps - 1 vanishes)");
    require(p >= 0 && q < spec.n_modes() && p < q, "pair_term: need 0 <= p < q < N");

    const auto& mp = spec.modes[p];
    const auto& mq = spec.modes[q];
    BVector bp = vacuum_b_vector(mp.delta, mp.theta, mp.is_antineutrino);
    BVector bq = vacuum_b_vector(mq.delta, mq.theta, mq.is_antineutrino);
    const double w = 1.0 / (2.0 * (n_steps - 1));
    Mat h = w * (kron(identity2(), b_dot_sigma(bp)) + kron(b_dot_sigma(bq), identity2()));
    h += spec.coupling(p, q) * heisenberg_block();
    return h;
}

Mat build_pair_term(int p, int q, const EnsembleSpec& spec, int n_steps, int qubit_cap) {
    const int n = spec.n_modes();
    require(n <= qubit_cap, "build_pair_term: qubit count exceeds the dense cap");
    return embed_operator(pair_term_block(p, q, spec, n_steps), {p, q}, n);
}

Mat build_spin_hamiltonian(const EnsembleSpec& spec, bool include_self_coupling, int dicke_cap) {
    spec.validate();
    long dim = 1;
    for (const auto& m : spec.modes) dim *= m.n_particles + 1;
    require(dim <= dicke_cap, "build_spin_hamiltonian: Dicke dimension exceeds the dense cap");

    const int n = spec.n_modes();
    std::vector<SpinMatrices> spins;
    std::vector<long> mode_dim;
    for (const auto& m : spec.modes) {
        spins.push_back(spin_matrices(m.n_particles));
        mode_dim.push_back(m.n_particles + 1);
    }

    // operator of mode i on the product space; mode 0 is the fastest index
    auto lift = [&](const Mat& op, int i) {
        Mat out = op;
        for (int j = i + 1; j < n; ++j) out = kron(Mat::Identity(mode_dim[j], mode_dim[j]), out);
        for (int j = i - 1; j >= 0; --j) out = kron(out, Mat::Identity(mode_dim[j], mode_dim[j]));
        return out;
    };

    Mat h = Mat::Zero(dim, dim);
    for (int i = 0; i < n; ++i) {
        const auto& m = spec.modes[i];
        BVector b = vacuum_b_vector(m.delta, m.theta, m.is_antineutrino);
        Mat bs = b.x * spins[i].sx + b.y * spins[i].sy + b.z * spins[i].sz;
        h += lift(bs, i);
        if (include_self_coupling && spec.coupling(i, i) != 0.0) {
            Mat s2 = spins[i].sx * spins[i].sx + spins[i].sy * spins[i].sy +
                     spins[i].sz * spins[i].sz;
            h += 2.0 * spec.coupling(i, i) * lift(s2, i);
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double J = spec.coupling(i, j);
            if (J == 0.0) continue;
            h += 4.0 * J *
                 (lift(spins[i].sx, i) * lift(spins[j].sx, j) +
                  lift(spins[i].sy, i) * lift(spins[j].sy, j) +
                  lift(spins[i].sz, i) * lift(spins[j].sz, j));
        }
    return h;
}

Mat TridiagonalHermitian::to_dense() const {
    const int n = dim();
    Mat m = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = diagonal[i];
    for (int i = 0; i + 1 < n; ++i) {
        m(i, i + 1) = offdiagonal[i];
        m(i + 1, i) = offdiagonal[i];
    }
    return m;
}

void TridiagonalHermitian::validate() const {
    require(diagonal.size() >= 1, "TridiagonalHermitian: empty diagonal");
    require(offdiagonal.size() == diagonal.size() - 1,
            "TridiagonalHermitian: offdiagonal length must be dim - 1");
}

TridiagonalHermitian build_diagonal_subspace_hamiltonian(int N, double delta, double theta,
                                                         double J) {
    require(N >= 1, "diagonal subspace: N must be >= 1");
    const double S = 0.5 * N;
    TridiagonalHermitian h;
    h.diagonal = RealVec::Zero(N + 1);
    h.offdiagonal = RealVec::Zero(N);
    const double c2t = std::cos(2.0 * theta);
    for (int i = 0; i <= N; ++i) {
        const double m = i - S;
        h.diagonal[i] = -2.0 * delta * c2t * m - 4.0 * J * m * m;
    }
    for (int i = 1; i <= N; ++i) h.offdiagonal[i - 1] = 2.0 * J * i * (N - i + 1);
    return h;
}

}  // namespace nuosc

#include "doctest.h"
#include "test_util.hpp"

using namespace nuosc;
using namespace nuosc::test;

TEST_CASE("vacuum b vector") {
    BVector b = vacuum_b_vector(1.0, 0.0, false);
    CHECK(b.x == doctest::Approx(0.0));
    CHECK(b.y == 0.0);
    CHECK(b.z == doctest::Approx(-1.0));

    b = vacuum_b_vector(1.0, kPi / 4.0, false);
    CHECK(b.x == doctest::Approx(1.0));
    CHECK(b.z == doctest::Approx(0.0).epsilon(1e-12));

    // antineutrinos flip the sign of b
    b = vacuum_b_vector(1.0, 0.0, true);
    CHECK(b.z == doctest::Approx(1.0));

    CHECK_THROWS(vacuum_b_vector(-0.5, 0.0, false));
}

TEST_CASE("coupling strength") {
    CHECK(coupling_strength(1.0, 0.0) == doctest::Approx(0.0));
    CHECK(coupling_strength(1.0, kPi) == doctest::Approx(std::sqrt(2.0)));
    CHECK(coupling_strength(1.0, kPi / 2.0) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK_THROWS(coupling_strength(-1.0, 0.0));
}

TEST_CASE("ladder coefficient") {
    CHECK(ladder_coefficient(0.5, -0.5, LadderDirection::raise) == doctest::Approx(1.0));
    CHECK(ladder_coefficient(3.5, -3.5, LadderDirection::raise) ==
          doctest::Approx(std::sqrt(7.0)));
    CHECK(ladder_coefficient(1.0, 1.0, LadderDirection::raise) == 0.0);
    CHECK(ladder_coefficient(1.0, -1.0, LadderDirection::lower) == 0.0);

    // cross-check sqrt(7) against the dense S+ built from single-spin raising
    // operators on seven qubits, sandwiched between symmetrized basis states
    const int n = 7;
    const long dim = 1L << n;
    Mat sigma_plus(2, 2);  // |0> is spin up, so raising maps |1> -> |0>
    sigma_plus << 0, 1, 0, 0;
    Mat sp_qubit = Mat::Zero(dim, dim);
    for (int q = 0; q < n; ++q) sp_qubit += embed_operator(sigma_plus, {q}, n);

    auto symmetrized = [&](int flips) {
        Vec v = Vec::Zero(dim);
        for (long idx = 0; idx < dim; ++idx)
            if (__builtin_popcountl(idx) == flips) v[idx] = 1.0;
        return (v / v.norm()).eval();
    };
    // m = -7/2 is the all-flipped state; raising it lands on flips = 6
    Complex elem = symmetrized(6).adjoint() * sp_qubit * symmetrized(7);
    CHECK(std::abs(elem - Complex(std::sqrt(7.0), 0.0)) < 1e-12);
}

TEST_CASE("qubit hamiltonian basics") {
    // single qubit, theta = 0: H = -1/2 delta sigma_z
    auto spec1 = uniform_ensemble({mode(1, 1.0, 0.0)}, 0.0);
    Mat h1 = build_qubit_hamiltonian(spec1);
    CHECK(std::abs(h1(0, 0) - Complex(-0.5, 0.0)) < 1e-14);
    CHECK(std::abs(h1(1, 1) - Complex(0.5, 0.0)) < 1e-14);

    // two qubits, b = 0: pure Heisenberg coupling, eigenvalues {J, J, J, -3J}
    const double J = 0.37;
    auto spec2 = uniform_ensemble({mode(1, 0.0, 0.0), mode(1, 0.0, 0.0)}, J);
    Mat h2 = build_qubit_hamiltonian(spec2);
    CHECK(is_hermitian(h2));
    Eigen::SelfAdjointEigenSolver<Mat> es(h2);
    RealVec ev = es.eigenvalues();
    CHECK(ev[0] == doctest::Approx(-3.0 * J));
    CHECK(ev[1] == doctest::Approx(J));
    CHECK(ev[3] == doctest::Approx(J));

    CHECK_THROWS(build_qubit_hamiltonian(spec2, 1));
}

TEST_CASE("antineutrino block is the sigma_y conjugation of the neutrino block") {
    const double J = 0.81;
    Mat heis = J * (kron(pauli_x(), pauli_x()) + kron(pauli_y(), pauli_y()) +
                    kron(pauli_z(), pauli_z()));
    Mat nubar = J * (-kron(pauli_x(), pauli_x()) + kron(pauli_y(), pauli_y()) -
                     kron(pauli_z(), pauli_z()));
    Mat u = kron(identity2(), pauli_y());
    CHECK((u * heis * u.adjoint() - nubar).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("qubit hamiltonian commutes with adjacent swaps for identical neutrinos") {
    Mat swap = Mat::Zero(4, 4);
    swap(0, 0) = swap(3, 3) = 1.0;
    swap(1, 2) = swap(2, 1) = 1.0;
    for (int n = 2; n <= 5; ++n) {
        std::vector<ModeSpec> modes(n, mode(1, 1.0, 0.3));
        auto spec = uniform_ensemble(modes, 0.42);
        Mat h = build_qubit_hamiltonian(spec);
        for (int q = 0; q + 1 < n; ++q) {
            Mat s = embed_operator(swap, {q, q + 1}, n);
            CHECK((h * s - s * h).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("pair term") {
    auto spec = uniform_ensemble({mode(1, 1.0, 0.2), mode(1, 0.7, 0.2)}, 0.0);
    SUBCASE("J = 0, n_steps = 2 leaves the free term") {
        Mat h = build_pair_term(0, 1, spec, 2);
        Mat expect = build_qubit_hamiltonian(spec);  // J = 0 and divisor 1
        CHECK((h - expect).cwiseAbs().maxCoeff() < 1e-14);
    }
    SUBCASE("b = 0 leaves the coupling, independent of n_steps") {
        auto bare = uniform_ensemble({mode(1, 0.0, 0.0), mode(1, 0.0, 0.0)}, 0.9);
        Mat h3 = build_pair_term(0, 1, bare, 3);
        Mat h7 = build_pair_term(0, 1, bare, 7);
        CHECK((h3 - h7).cwiseAbs().maxCoeff() < 1e-14);
        CHECK((h3 - build_qubit_hamiltonian(bare)).cwiseAbs().maxCoeff() < 1e-14);
    }
    SUBCASE("n_steps = 1 is rejected") { CHECK_THROWS(build_pair_term(0, 1, spec, 1)); }
    SUBCASE("pair exponentials approximate the full evolution as dt -> 0") {
        // with n_steps = N the pair terms sum to H_q exactly
        const int n = 3;
        auto s3 = uniform_ensemble({mode(1, 1.0, 0.25), mode(1, 0.8, 0.25), mode(1, 0.5, 0.25)},
                                   0.6);
        Mat sum = Mat::Zero(8, 8);
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) sum += build_pair_term(p, q, s3, n);
        CHECK((sum - build_qubit_hamiltonian(s3)).cwiseAbs().maxCoeff() < 1e-12);

        double prev_err = -1.0;
        for (double dt : {0.2, 0.1, 0.05}) {
            Mat prod = Mat::Identity(8, 8);
            for (int p = 0; p < n; ++p)
                for (int q = p + 1; q < n; ++q)
                    prod = matrix_exponential(build_pair_term(p, q, s3, n), dt) * prod;
            double err =
                (prod - matrix_exponential(build_qubit_hamiltonian(s3), dt)).cwiseAbs().maxCoeff();
            if (prev_err > 0.0) CHECK(err < prev_err / 2.0);
            prev_err = err;
        }
    }
}

TEST_CASE("spin hamiltonian") {
    SUBCASE("single mode, N = 1 reduces to the qubit Hamiltonian") {
        auto spec = uniform_ensemble({mode(1, 1.3, 0.4)}, 0.0);
        Mat hs = build_spin_hamiltonian(spec);
        Mat hq = build_qubit_hamiltonian(spec);
        CHECK((hs - hq).cwiseAbs().maxCoeff() < 1e-14);
    }
    SUBCASE("single mode, pure b_z is diagonal with entries b_z m") {
        auto spec = uniform_ensemble({mode(7, 2.0, 0.0)}, 0.0);  // b_z = -2
        Mat hs = build_spin_hamiltonian(spec);
        const double S = 3.5;
        for (int j = 0; j <= 7; ++j) {
            CHECK(std::abs(hs(j, j) - Complex(-2.0 * (S - j), 0.0)) < 1e-13);
            for (int l = 0; l <= 7; ++l)
                if (l != j) CHECK(std::abs(hs(j, l)) < 1e-14);
        }
    }
    SUBCASE("1+7 modes agree with the qubit Hamiltonian on the symmetric sector") {
        const double J = 0.31;
        auto spec = uniform_ensemble({mode(1, 1.0, 0.35), mode(7, 0.6, 0.35, false, Flavor::x)},
                                     J);
        Mat hs = build_spin_hamiltonian(spec);
        CHECK(is_hermitian(hs));

        auto expanded = spec.expanded();
        Mat hq = build_qubit_hamiltonian(expanded);
        // isometry onto symmetrized bitstrings: qubit 0 = beam, 1..7 = background
        const long dim = 1L << 8;
        Mat iso = Mat::Zero(dim, 16);
        for (int j1 = 0; j1 <= 1; ++j1)
            for (int j2 = 0; j2 <= 7; ++j2) {
                Vec v = Vec::Zero(dim);
                for (long idx = 0; idx < dim; ++idx) {
                    if (((idx & 1) != 0) != (j1 == 1)) continue;
                    if (__builtin_popcountl(idx >> 1) != j2) continue;
                    v[idx] = 1.0;
                }
                iso.col(j1 + 2 * j2) = v / v.norm();
            }
        Mat restricted = iso.adjoint() * hq * iso;
        CHECK((restricted - hs).cwiseAbs().maxCoeff() < 1e-12);

        Eigen::SelfAdjointEigenSolver<Mat> es_s(hs), es_r(restricted);
        CHECK((es_s.eigenvalues() - es_r.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
    }
    SUBCASE("total spin is conserved for identical modes") {
        auto spec = uniform_ensemble({mode(3, 1.0, 0.3), mode(3, 1.0, 0.3)}, 0.5);
        Mat hs = build_spin_hamiltonian(spec);
        auto sm = spin_matrices(3);
        Mat id = Mat::Identity(4, 4);
        Mat sx = kron(id, sm.sx) + kron(sm.sx, id);
        Mat sy = kron(id, sm.sy) + kron(sm.sy, id);
        Mat sz = kron(id, sm.sz) + kron(sm.sz, id);
        Mat s2 = sx * sx + sy * sy + sz * sz;
        CHECK((hs * s2 - s2 * hs).cwiseAbs().maxCoeff() < 1e-11);
    }
    SUBCASE("optional self-coupling term is 2 J_i S_i^2") {
        RealMat c = RealMat::Zero(1, 1);
        c(0, 0) = 0.8;
        auto spec = ensemble({mode(3, 0.0, 0.0)}, c);
        Mat base = build_spin_hamiltonian(spec, false);
        Mat with = build_spin_hamiltonian(spec, true);
        const double S = 1.5;
        Mat diff = with - base;
        CHECK((diff - 2.0 * 0.8 * S * (S + 1.0) * Mat::Identity(4, 4)).cwiseAbs().maxCoeff() <
              1e-12);
    }
    SUBCASE("antidiagonal closure for b_x = 0") {
        auto spec = uniform_ensemble({mode(3, 1.0, 0.0), mode(3, 1.0, 0.0, true)}, 0.45);
        Mat hs = build_spin_hamiltonian(spec);
        // flip channel j1 + j2 = const: no matrix element may leave it
        for (int j1 = 0; j1 <= 3; ++j1)
            for (int j2 = 0; j2 <= 3; ++j2)
                for (int l1 = 0; l1 <= 3; ++l1)
                    for (int l2 = 0; l2 <= 3; ++l2) {
                        if (j1 + j2 == l1 + l2) continue;
                        CHECK(std::abs(hs(j1 + 4 * j2, l1 + 4 * l2)) < 1e-14);
                    }
    }
    SUBCASE("dimension cap") {
        auto spec = uniform_ensemble({mode(100, 1.0, 0.0), mode(100, 1.0, 0.0)}, 0.1);
        CHECK_THROWS(build_spin_hamiltonian(spec, false, 64));
    }
}

TEST_CASE("diagonal subspace hamiltonian") {
    SUBCASE("off-diagonal couplings 2 J i (N - i + 1)") {
        auto h = build_diagonal_subspace_hamiltonian(7, 1.0, 0.0, 1.0);
        RealVec expect(7);
        expect << 14, 24, 30, 32, 30, 24, 14;
        CHECK((h.offdiagonal - expect).cwiseAbs().maxCoeff() < 1e-13);
    }
    SUBCASE("J = 0, theta = 0 is the pure linear diagonal") {
        auto h = build_diagonal_subspace_hamiltonian(5, 1.7, 0.0, 0.0);
        for (int i = 0; i <= 5; ++i)
            CHECK(h.diagonal[i] == doctest::Approx(-2.0 * 1.7 * (i - 2.5)));
        CHECK(h.offdiagonal.cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("matches the two-mode Dicke Hamiltonian on the antidiagonal states") {
        // the subspace frame corresponds to the complementary per-qubit
        // mixing angle (b_z negated)
        const int N = 7;
        const double delta = 1.0, theta = 0.0, J = 0.1;
        auto h = build_diagonal_subspace_hamiltonian(N, delta, theta, J);

        auto spec = uniform_ensemble({mode(N, delta, kPi / 2.0 - theta),
                                      mode(N, delta, kPi / 2.0 - theta, true)},
                                     J);
        Mat hs = build_spin_hamiltonian(spec);  // 64 x 64
        Mat restricted(N + 1, N + 1);
        for (int i = 0; i <= N; ++i)
            for (int l = 0; l <= N; ++l)
                restricted(i, l) = hs(i + (N + 1) * (N - i), l + (N + 1) * (N - l));
        CHECK((restricted - h.to_dense()).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("validation") {
        CHECK_THROWS(build_diagonal_subspace_hamiltonian(0, 1.0, 0.0, 1.0));
        auto h = build_diagonal_subspace_hamiltonian(3, 1.0, 0.2, 0.3);
        h.validate();
        CHECK(is_hermitian(h.to_dense()));
    }
}

TEST_CASE("ensemble expansion") {
    auto spec = uniform_ensemble({mode(1, 1.0, 0.1), mode(3, 0.5, 0.1, false, Flavor::x)}, 0.25);
    auto flat = spec.expanded();
    CHECK(flat.n_modes() == 4);
    CHECK(flat.modes[1].initial_flavor == Flavor::x);
    CHECK(flat.coupling(0, 1) == doctest::Approx(0.25));
    CHECK(flat.coupling(1, 2) == doctest::Approx(0.0));  // intra-mode J_i = 0 here

    RealMat c(2, 2);
    c << 0.5, 0.25, 0.25, 0.5;
    auto self = ensemble({mode(2, 1.0, 0.0), mode(2, 1.0, 0.0)}, c);
    auto flat2 = self.expanded();
    CHECK(flat2.coupling(0, 1) == doctest::Approx(0.5));   // intra-mode from diagonal
    CHECK(flat2.coupling(1, 2) == doctest::Approx(0.25));  // inter-mode
}

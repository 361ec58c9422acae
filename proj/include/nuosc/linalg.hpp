#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace nuosc {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RealVec = Eigen::VectorXd;
using RealMat = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846;

/// Pauli matrices and the 2x2 identity.
Mat pauli_x();
Mat pauli_y();
Mat pauli_z();
Mat identity2();

Mat kron(const Mat& a, const Mat& b);

/// Operator acting on `targets` (ascending significance order: targets[0] is
/// the least significant qubit of `op`), embedded into an n-qubit space.
/// Qubit 0 is the least significant bit of the basis index.
Mat embed_operator(const Mat& op, const std::vector<int>& targets, int n_qubits);

bool is_hermitian(const Mat& m, double tol = 1e-12);
bool is_unitary(const Mat& m, double tol = 1e-10);

/// max |a_ij - b_ij| after aligning the global phase of b to a.
double phase_aligned_distance(const Mat& a, const Mat& b);
double phase_aligned_distance(const Vec& a, const Vec& b);

void require(bool cond, const std::string& msg);

/// Collective spin matrices on the (n+1)-dimensional symmetric space of n
/// spin-1/2 particles. Basis index j counts flipped spins: m = S - j with
/// S = n/2, so for n = 1 these reduce exactly to sigma/2.
struct SpinMatrices {
    Mat sx, sy, sz, sp, sm;
};
SpinMatrices spin_matrices(int n_particles);

}  // namespace nuosc

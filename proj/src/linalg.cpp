#include "nuosc/linalg.hpp"

#include <unsupported/Eigen/KroneckerProduct>

namespace nuosc {

namespace {
const Complex kI{0.0, 1.0};
}

Mat pauli_x() {
    Mat m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Mat pauli_y() {
    Mat m(2, 2);
    m << 0, -kI, kI, 0;
    return m;
}

Mat pauli_z() {
    Mat m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Mat identity2() { return Mat::Identity(2, 2); }

Mat kron(const Mat& a, const Mat& b) { return Eigen::kroneckerProduct(a, b).eval(); }

Mat embed_operator(const Mat& op, const std::vector<int>& targets, int n_qubits) {
    const int k = static_cast<int>(targets.size());
    require(op.rows() == (1L << k) && op.cols() == (1L << k),
            "embed_operator: operator dimension does not match target count");
    for (int t : targets)
        require(t >= 0 && t < n_qubits, "embed_operator: target out of range");

    const long dim = 1L << n_qubits;
    Mat out = Mat::Zero(dim, dim);
    const long n_free = dim >> k;
    for (long free = 0; free < n_free; ++free) {
        // scatter the free bits around the target positions
        long base = 0;
        long rem = free;
        for (int q = 0, f = 0; q < n_qubits; ++q) {
            bool is_target = false;
            for (int t : targets)
                if (t == q) is_target = true;
            if (is_target) continue;
            if (rem & (1L << f)) base |= (1L << q);
            ++f;
        }
        for (long r = 0; r < (1L << k); ++r) {
            long row = base;
            for (int b = 0; b < k; ++b)
                if (r & (1L << b)) row |= (1L << targets[b]);
            for (long c = 0; c < (1L << k); ++c) {
                if (op(r, c) == Complex(0.0, 0.0)) continue;
                long col = base;
                for (int b = 0; b < k; ++b)
                    if (c & (1L << b)) col |= (1L << targets[b]);
                out(row, col) = op(r, c);
            }
        }
    }
    return out;
}

bool is_hermitian(const Mat& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * std::max(1.0, m.cwiseAbs().maxCoeff());
}

bool is_unitary(const Mat& m, double tol) {
    if (m.rows() != m.cols()) return false;
    Mat r = m.adjoint() * m - Mat::Identity(m.rows(), m.cols());
    return r.cwiseAbs().maxCoeff() <= tol;
}

double phase_aligned_distance(const Mat& a, const Mat& b) {
    Complex tr = (b.adjoint() * a).trace();
    Complex phase = std::abs(tr) > 1e-14 ? tr / std::abs(tr) : Complex(1.0, 0.0);
    return (a - phase * b).cwiseAbs().maxCoeff();
}

double phase_aligned_distance(const Vec& a, const Vec& b) {
    Complex ov = b.adjoint() * a;
    Complex phase = std::abs(ov) > 1e-14 ? ov / std::abs(ov) : Complex(1.0, 0.0);
    return (a - phase * b).cwiseAbs().maxCoeff();
}

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

SpinMatrices spin_matrices(int n_particles) {
    require(n_particles >= 1, "spin_matrices: need at least one particle");
    const int dim = n_particles + 1;
    const double S = 0.5 * n_particles;
    SpinMatrices out;
    out.sz = Mat::Zero(dim, dim);
    out.sp = Mat::Zero(dim, dim);
    for (int j = 0; j < dim; ++j) {
        const double m = S - j;
        out.sz(j, j) = m;
        // S+ raises m, i.e. maps j -> j-1
        if (j >= 1) out.sp(j - 1, j) = std::sqrt(S * (S + 1) - m * (m + 1));
    }
    out.sm = out.sp.adjoint();
    out.sx = 0.5 * (out.sp + out.sm);
    out.sy = Complex(0.0, -0.5) * (out.sp - out.sm);
    return out;
}

}  // namespace nuosc

#pragma once

#include <optional>

#include "nuosc/linalg.hpp"

namespace nuosc {

struct BVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

enum class Flavor { electron, x };

/// One neutrino mode: N_i particles sharing energy, direction and initial
/// flavor. delta = dm^2/(2E) in inverse-time units.
struct ModeSpec {
    int n_particles = 1;
    double delta = 0.0;
    double theta = 0.0;
    bool is_antineutrino = false;
    Flavor initial_flavor = Flavor::electron;

    void validate() const;
    /// Computational-basis value of the initial single-particle state under
    /// the conventional mapping (nu_e, nubar_x -> 0; nu_x, nubar_e -> 1).
    int initial_basis_bit() const;
};

struct EnsembleSpec {
    std::vector<ModeSpec> modes;
    RealMat coupling;  // symmetric, dim = #modes; diagonal = intra-mode J_i

    void validate() const;
    int n_modes() const { return static_cast<int>(modes.size()); }
    int total_neutrinos() const;
    bool per_neutrino() const;  // every N_i == 1
    /// Expands a mode-level spec into one mode per neutrino, J_pq inherited
    /// from the mode coupling (intra-mode pairs use the diagonal entry).
    EnsembleSpec expanded() const;
};

BVector vacuum_b_vector(double delta, double theta, bool is_antineutrino);

/// Initial register value of a flavour-pure mode in the flip-count Dicke
/// convention: 0 when the initial flavour maps to basis bit 0, N_i otherwise.
long initial_register_value(const ModeSpec& mode);

/// J = (mu / sqrt(2)) (1 - cos alpha), mu = G_F n_nu.
double coupling_strength(double mu, double alpha);

enum class LadderDirection { raise, lower };

/// sqrt(S(S+1) - m(m +- 1)); zero for out-of-range transitions.
double ladder_coefficient(double S, double m, LadderDirection dir);

inline constexpr int kDefaultQubitCap = 14;
inline constexpr int kDefaultDickeCap = 4096;

/// H_q = 1/2 sum_p b_p.sigma_p + sum_{p<q} J_pq sigma_p.sigma_q on 2^N.
Mat build_qubit_hamiltonian(const EnsembleSpec& spec, int qubit_cap = kDefaultQubitCap);

/// Pair term h_pq of the Trotter splitting, embedded in the full 2^N space.
/// The single-particle part carries the 1/(n_steps - 1) weight; pass
/// n_steps = N so that the pair terms sum to H_q.
Mat build_pair_term(int p, int q, const EnsembleSpec& spec, int n_steps,
                    int qubit_cap = kDefaultQubitCap);
/// Same pair term as a 4x4 block on (p, q).
Mat pair_term_block(int p, int q, const EnsembleSpec& spec, int n_steps);

/// H_s = sum_i b_i.S_i [+ 2 sum_i J_i S_i^2] + 4 sum_{i<j} J_ij S_i.S_j on
/// the product of symmetric spaces, dimension prod(N_i + 1). The self term
/// is dropped by default (constant on fixed-S sectors).
Mat build_spin_hamiltonian(const EnsembleSpec& spec, bool include_self_coupling = false,
                           int dicke_cap = kDefaultDickeCap);

/// Real symmetric tridiagonal matrix; offdiagonal[i] couples |i> and |i+1>.
struct TridiagonalHermitian {
    RealVec diagonal;
    RealVec offdiagonal;

    int dim() const { return static_cast<int>(diagonal.size()); }
    Mat to_dense() const;
    void validate() const;
};

/// Bipolar-subspace Hamiltonian on N+1 states |i>:
///   diagonal[i]  = -2 delta cos(2 theta) (i - S) - 4 J (i - S)^2,  S = N/2
///   offdiagonal[i-1] = 2 J i (N - i + 1)
TridiagonalHermitian build_diagonal_subspace_hamiltonian(int N, double delta, double theta,
                                                         double J);

}  // namespace nuosc

#include "nuosc/observables.hpp"

#include <cmath>

namespace nuosc {

double survival_conventional(const StateVector& state, int qubit, Flavor initial_flavor,
                             bool is_antineutrino) {
    require(qubit >= 0 && qubit < state.n_qubits(), "survival_conventional: qubit out of range");
    ModeSpec probe;
    probe.initial_flavor = initial_flavor;
    probe.is_antineutrino = is_antineutrino;
    const int want = probe.initial_basis_bit();
    const long mask = 1L << qubit;
    double p = 0.0;
    for (long i = 0; i < state.dim(); ++i)
        if (((i & mask) != 0) == (want == 1)) p += std::norm(state.amplitudes[i]);
    return p;
}

double survival_dicke(const StateVector& state, const RegisterSpan& reg, const ModeSpec& mode) {
    const int N = mode.n_particles;
    RealVec dist = state.register_distribution(reg);
    double unphysical = 0.0;
    for (long j = N + 1; j < dist.size(); ++j) unphysical += dist[j];
    require(unphysical <= 1e-8,
            "survival_dicke: amplitude on unphysical register values (encoder bug)");
    const long j0 = initial_register_value(mode) == 0 ? 0 : N;
    double flips = 0.0;
    for (long j = 0; j <= N && j < dist.size(); ++j)
        flips += dist[j] * static_cast<double>(j0 == 0 ? j : N - j);
    return 1.0 - flips / N;
}

std::pair<double, double> survival_diagonal(const StateVector& state, int N) {
    require(!state.layout.empty(), "survival_diagonal: state has no register layout");
    const RegisterSpan& reg = state.layout.front();
    require((1L << reg.width) >= N + 1, "survival_diagonal: register too small for N");
    RealVec dist = state.register_distribution(reg);
    double unphysical = 0.0;
    for (long i = N + 1; i < dist.size(); ++i) unphysical += dist[i];
    require(unphysical <= 1e-8,
            "survival_diagonal: amplitude on unphysical register values (encoder bug)");
    double mean_i = 0.0;
    for (long i = 0; i <= N; ++i) mean_i += dist[i] * static_cast<double>(i);
    const double s = 1.0 - mean_i / N;
    // pair-wise flavour flips: neutrino and antineutrino survival coincide
    return {s, s};
}

CountEstimate survival_from_counts(const std::map<std::string, std::uint64_t>& counts,
                                   const std::function<double(const std::string&)>& decode) {
    std::uint64_t shots = 0;
    double acc = 0.0;
    for (const auto& [bits, n] : counts) {
        shots += n;
        acc += decode(bits) * static_cast<double>(n);
    }
    require(shots >= 1, "survival_from_counts: empty histogram");
    CountEstimate est;
    est.shots = shots;
    est.survival = acc / static_cast<double>(shots);
    est.std_error =
        std::sqrt(std::max(0.0, est.survival * (1.0 - est.survival)) / static_cast<double>(shots));
    return est;
}

namespace {

long register_value_from_bits(const std::string& bits, const RegisterSpan& reg) {
    const int n = static_cast<int>(bits.size());
    long v = 0;
    for (int p = 0; p < reg.width; ++p) {
        const int q = reg.offset + p;  // qubit q is bits[n-1-q]
        if (bits.at(n - 1 - q) == '1') v |= (1L << p);
    }
    return v;
}

}  // namespace

double decode_conventional_bit(const std::string& bits, int qubit, Flavor flavor, bool anti) {
    ModeSpec probe;
    probe.initial_flavor = flavor;
    probe.is_antineutrino = anti;
    const int want = probe.initial_basis_bit();
    const char bit = bits.at(bits.size() - 1 - qubit);
    return (bit == '1') == (want == 1) ? 1.0 : 0.0;
}

double decode_dicke_bits(const std::string& bits, const RegisterSpan& reg, const ModeSpec& mode) {
    const long j = register_value_from_bits(bits, reg);
    const int N = mode.n_particles;
    require(j <= N, "decode_dicke_bits: sampled unphysical register value");
    const long j0 = initial_register_value(mode) == 0 ? 0 : N;
    const double flips = static_cast<double>(j0 == 0 ? j : N - j);
    return 1.0 - flips / N;
}

double decode_diagonal_bits(const std::string& bits, int N) {
    long v = 0;
    for (std::size_t q = 0; q < bits.size(); ++q)
        if (bits[bits.size() - 1 - q] == '1') v |= (1L << q);
    require(v <= N, "decode_diagonal_bits: sampled unphysical register value");
    return 1.0 - static_cast<double>(v) / N;
}

}  // namespace nuosc

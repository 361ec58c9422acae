#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>

#include "nuosc/physics.hpp"
#include "nuosc/state.hpp"

namespace nuosc {

struct SurvivalReport {
    double time = 0.0;
    std::vector<double> survival;  // per mode, in [0,1]
    std::vector<double> mean_m;    // z-projection per register
};

/// Probability that the qubit is found in the basis state encoding its
/// initial flavour.
double survival_conventional(const StateVector& state, int qubit, Flavor initial_flavor,
                             bool is_antineutrino);

/// 1 - <flips>/N for a Dicke register; <flips> counts from the mode's
/// initial register value (0 or N). Throws if amplitude above 1e-8 sits on
/// unphysical register values > N.
double survival_dicke(const StateVector& state, const RegisterSpan& reg, const ModeSpec& mode);

/// Bipolar subspace decoding: survival of neutrinos and antineutrinos,
/// identical by construction, 1 - <i>/N.
std::pair<double, double> survival_diagonal(const StateVector& state, int N);

struct CountEstimate {
    double survival = 0.0;
    double std_error = 0.0;
    std::uint64_t shots = 0;
};

/// Decoder context for sampled bitstrings: survival = expectation of
/// `decode` over the histogram, with the binomial standard error.
CountEstimate survival_from_counts(const std::map<std::string, std::uint64_t>& counts,
                                   const std::function<double(const std::string&)>& decode);

/// Per-shot survival value of one sampled bitstring under the three decoders.
double decode_conventional_bit(const std::string& bits, int qubit, Flavor flavor, bool anti);
double decode_dicke_bits(const std::string& bits, const RegisterSpan& reg, const ModeSpec& mode);
double decode_diagonal_bits(const std::string& bits, int N);

}  // namespace nuosc

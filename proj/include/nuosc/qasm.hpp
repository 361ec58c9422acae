#pragma once

#include <string>

#include "nuosc/circuit.hpp"

namespace nuosc {

/// OpenQASM 3 text for the circuit, one gate per line, stdgates.inc names
/// only. MCX/MCRX are expanded into {p, sx, rx, crx, cx, ccx} here; all other
/// gates map one-to-one. A header comment records the emitted gate count.
std::string export_qasm(const Circuit& circuit);

}  // namespace nuosc

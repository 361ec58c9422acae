#pragma once

// Independent OpenQASM 3 subset reader used to validate exported circuits.
// Shares no code with the exporter: its own tokenizer, grammar checks and
// gate matrices. Supports the stdgates.inc subset the exporter emits.

#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "nuosc/linalg.hpp"

namespace qasm_ref {

struct ParsedGate {
    std::string name;
    std::vector<double> params;
    std::vector<int> qubits;  // flattened global indices
};

struct ParsedProgram {
    int n_qubits = 0;
    std::vector<std::pair<std::string, int>> registers;
    std::vector<ParsedGate> gates;
    int header_gate_count = -1;
};

inline const std::map<std::string, std::pair<int, int>>& gate_table() {
    // name -> (#params, #qubits)
    static const std::map<std::string, std::pair<int, int>> table = {
        {"x", {0, 1}},   {"h", {0, 1}},    {"s", {0, 1}},   {"sdg", {0, 1}}, {"sx", {0, 1}},
        {"p", {1, 1}},   {"rx", {1, 1}},   {"rz", {1, 1}},  {"cx", {0, 2}},  {"cz", {0, 2}},
        {"cp", {1, 2}},  {"crx", {1, 2}},  {"ccx", {0, 3}},
    };
    return table;
}

class ParseError : public std::runtime_error {
  public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

inline ParsedProgram parse(const std::string& text) {
    ParsedProgram prog;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool saw_version = false, saw_include = false;
    std::map<std::string, std::pair<int, int>> reg_offset_width;

    auto fail = [&](const std::string& msg) {
        throw ParseError("line " + std::to_string(lineno) + ": " + msg);
    };

    while (std::getline(in, line)) {
        ++lineno;
        // strip comments and whitespace
        auto cut = line.find("//");
        std::string comment;
        if (cut != std::string::npos) {
            comment = line.substr(cut + 2);
            line = line.substr(0, cut);
        }
        if (comment.find("gates:") != std::string::npos)
            prog.header_gate_count = std::stoi(comment.substr(comment.find(':') + 1));
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        if (line.empty()) continue;

        if (line.rfind("OPENQASM", 0) == 0) {
            if (line != "OPENQASM 3.0;") fail("unsupported version statement");
            saw_version = true;
            continue;
        }
        if (line.rfind("include", 0) == 0) {
            if (line != "include \"stdgates.inc\";") fail("unsupported include");
            saw_include = true;
            continue;
        }
        if (line.rfind("qubit", 0) == 0) {
            int width = 0;
            char name[64] = {0};
            if (std::sscanf(line.c_str(), "qubit[%d] %63[A-Za-z0-9_];", &width, name) != 2)
                fail("malformed qubit declaration");
            if (width < 1) fail("empty quantum register");
            reg_offset_width[name] = {prog.n_qubits, width};
            prog.registers.emplace_back(name, width);
            prog.n_qubits += width;
            continue;
        }

        // gate application: name(params)? operand (, operand)* ;
        if (line.back() != ';') fail("missing semicolon");
        line.pop_back();
        std::string name, params_str, rest;
        auto paren = line.find('(');
        auto space = line.find(' ');
        if (paren != std::string::npos && paren < space) {
            name = line.substr(0, paren);
            auto close = line.find(')', paren);
            if (close == std::string::npos) fail("unbalanced parameter list");
            params_str = line.substr(paren + 1, close - paren - 1);
            rest = line.substr(close + 1);
        } else {
            if (space == std::string::npos) fail("gate without operands");
            name = line.substr(0, space);
            rest = line.substr(space);
        }
        auto it = gate_table().find(name);
        if (it == gate_table().end()) fail("unknown gate " + name);

        ParsedGate g;
        g.name = name;
        if (!params_str.empty()) {
            std::istringstream ps(params_str);
            std::string tok;
            while (std::getline(ps, tok, ',')) g.params.push_back(std::stod(tok));
        }
        std::istringstream os(rest);
        std::string tok;
        while (std::getline(os, tok, ',')) {
            auto a = tok.find_first_not_of(" \t");
            auto b = tok.find_last_not_of(" \t");
            if (a == std::string::npos) fail("empty operand");
            tok = tok.substr(a, b - a + 1);
            char rname[64] = {0};
            int idx = -1;
            if (std::sscanf(tok.c_str(), "%63[A-Za-z0-9_][%d]", rname, &idx) != 2)
                fail("malformed operand " + tok);
            auto reg = reg_offset_width.find(rname);
            if (reg == reg_offset_width.end()) fail("unknown register " + tok);
            if (idx < 0 || idx >= reg->second.second) fail("operand index out of range: " + tok);
            g.qubits.push_back(reg->second.first + idx);
        }
        if (static_cast<int>(g.params.size()) != it->second.first)
            fail("wrong parameter count for " + name);
        if (static_cast<int>(g.qubits.size()) != it->second.second)
            fail("wrong operand count for " + name);
        for (std::size_t a = 0; a < g.qubits.size(); ++a)
            for (std::size_t b = a + 1; b < g.qubits.size(); ++b)
                if (g.qubits[a] == g.qubits[b]) fail("repeated operand in " + name);
        prog.gates.push_back(std::move(g));
    }
    if (!saw_version) throw ParseError("missing OPENQASM version statement");
    if (!saw_include) throw ParseError("missing stdgates include");
    if (prog.n_qubits == 0) throw ParseError("no qubits declared");
    return prog;
}

inline nuosc::Mat gate_matrix(const ParsedGate& g) {
    using nuosc::Complex;
    using nuosc::Mat;
    const Complex i{0.0, 1.0};
    auto rx = [&](double t) {
        Mat m(2, 2);
        m << std::cos(t / 2), -i * std::sin(t / 2), -i * std::sin(t / 2), std::cos(t / 2);
        return m;
    };
    auto phase = [&](double t) {
        Mat m = Mat::Zero(2, 2);
        m(0, 0) = 1.0;
        m(1, 1) = std::exp(i * t);
        return m;
    };
    auto controlled = [&](const Mat& u, int n_controls) {
        const long dim = 1L << (n_controls + 1);
        Mat m = Mat::Identity(dim, dim);
        // controls are the low qubits in our operand convention (see apply)
        m.block(dim - 2, dim - 2, 2, 2) = u;
        return m;
    };

    if (g.name == "x") return nuosc::pauli_x();
    if (g.name == "h") {
        Mat m(2, 2);
        m << 1, 1, 1, -1;
        return m / std::sqrt(2.0);
    }
    if (g.name == "s") return phase(nuosc::kPi / 2);
    if (g.name == "sdg") return phase(-nuosc::kPi / 2);
    if (g.name == "sx") {
        Mat m(2, 2);
        m << Complex(0.5, 0.5), Complex(0.5, -0.5), Complex(0.5, -0.5), Complex(0.5, 0.5);
        return m;
    }
    if (g.name == "p") return phase(g.params[0]);
    if (g.name == "rx") return rx(g.params[0]);
    if (g.name == "rz") {
        Mat m = Mat::Zero(2, 2);
        m(0, 0) = std::exp(-i * g.params[0] / 2.0);
        m(1, 1) = std::exp(i * g.params[0] / 2.0);
        return m;
    }
    if (g.name == "cx") return controlled(nuosc::pauli_x(), 1);
    if (g.name == "cz") return controlled(nuosc::pauli_z(), 1);
    if (g.name == "cp") return controlled(phase(g.params[0]), 1);
    if (g.name == "crx") return controlled(rx(g.params[0]), 1);
    if (g.name == "ccx") return controlled(nuosc::pauli_x(), 2);
    throw ParseError("no matrix for gate " + g.name);
}

/// Reconstructs the full unitary of a parsed program (small widths only).
inline nuosc::Mat program_unitary(const ParsedProgram& prog) {
    nuosc::require(prog.n_qubits <= 12, "qasm_ref: width too large for a dense unitary");
    const long dim = 1L << prog.n_qubits;
    nuosc::Mat u = nuosc::Mat::Identity(dim, dim);
    for (const auto& g : prog.gates) {
        // operand order: controls first, target last; map the gate's own
        // qubit 0.. to (control..., target) with the target least significant
        std::vector<int> targets(g.qubits.rbegin(), g.qubits.rend());
        // targets[0] = target, then controls; embed wants ascending
        // significance = (target, controls...) matching `controlled` above
        u = nuosc::embed_operator(gate_matrix_reordered(g), targets, prog.n_qubits) * u;
    }
    return u;
}

/// gate matrix with qubit order (target = least significant, controls above)
inline nuosc::Mat gate_matrix_reordered(const ParsedGate& g) {
    nuosc::Mat base = gate_matrix(g);
    return base;
}

}  // namespace qasm_ref

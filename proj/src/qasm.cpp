#include "nuosc/qasm.hpp"

#include <cstdio>
#include <sstream>

namespace nuosc {

namespace {

std::string fmt_angle(double a) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", a);
    return buf;
}

struct Emitter {
    const Circuit& circuit;
    std::vector<std::string> lines;

    std::string operand(int q) const {
        for (const auto& reg : circuit.registers)
            if (q >= reg.offset && q < reg.offset + reg.width)
                return reg.name + "[" + std::to_string(q - reg.offset) + "]";
        return "q[" + std::to_string(q) + "]";
    }

    void emit(const std::string& name, std::initializer_list<int> qs) {
        std::string line = name + " ";
        bool first = true;
        for (int q : qs) {
            if (!first) line += ", ";
            line += operand(q);
            first = false;
        }
        lines.push_back(line + ";");
    }
    void emit(const std::string& name, double angle, std::initializer_list<int> qs) {
        emit(name + "(" + fmt_angle(angle) + ")", qs);
    }

    // controlled X^(1/denom): p(pi/(2 denom)) on the control, crx(pi/denom)
    void c_xroot(int control, int target, double denom, bool inverse) {
        const double s = inverse ? -1.0 : 1.0;
        if (inverse) {
            emit("crx", -kPi / denom, {control, target});
            emit("p", -kPi / (2.0 * denom), {control});
        } else {
            emit("p", s * kPi / (2.0 * denom), {control});
            emit("crx", s * kPi / denom, {control, target});
        }
    }

    // multi-controlled X^(1/denom); denom = 1 is a plain MCX
    void mc_xroot(std::vector<int> controls, int target, double denom) {
        if (controls.empty()) {
            require(denom == 1.0, "qasm: uncontrolled X root should not occur");
            emit("x", {target});
            return;
        }
        if (controls.size() == 1) {
            if (denom == 1.0) {
                emit("cx", {controls[0], target});
            } else {
                c_xroot(controls[0], target, denom, false);
            }
            return;
        }
        if (controls.size() == 2 && denom == 1.0) {
            emit("ccx", {controls[0], controls[1], target});
            return;
        }
        const int last = controls.back();
        std::vector<int> rest(controls.begin(), controls.end() - 1);
        c_xroot(last, target, 2.0 * denom, false);
        mc_xroot(rest, last, 1.0);
        c_xroot(last, target, 2.0 * denom, true);
        mc_xroot(rest, last, 1.0);
        mc_xroot(rest, target, 2.0 * denom);
    }

    void mc_rx(std::vector<int> controls, int target, double theta) {
        if (controls.empty()) {
            emit("rx", theta, {target});
            return;
        }
        if (controls.size() == 1) {
            emit("crx", theta, {controls[0], target});
            return;
        }
        const int last = controls.back();
        std::vector<int> rest(controls.begin(), controls.end() - 1);
        emit("crx", 0.5 * theta, {last, target});
        mc_xroot(rest, last, 1.0);
        emit("crx", -0.5 * theta, {last, target});
        mc_xroot(rest, last, 1.0);
        mc_rx(rest, target, 0.5 * theta);
    }

    void gate(const Gate& g) {
        switch (g.kind) {
            case GateKind::X: emit("x", {g.targets[0]}); return;
            case GateKind::H: emit("h", {g.targets[0]}); return;
            case GateKind::SDG: emit("sdg", {g.targets[0]}); return;
            case GateKind::RX: emit("rx", g.angle, {g.targets[0]}); return;
            case GateKind::RZ: emit("rz", g.angle, {g.targets[0]}); return;
            case GateKind::PHASE: emit("p", g.angle, {g.targets[0]}); return;
            case GateKind::CX: emit("cx", {g.controls[0], g.targets[0]}); return;
            case GateKind::CZ: emit("cz", {g.controls[0], g.targets[0]}); return;
            case GateKind::CPHASE: emit("cp", g.angle, {g.controls[0], g.targets[0]}); return;
            case GateKind::RZZ:
                emit("cx", {g.targets[0], g.targets[1]});
                emit("rz", g.angle, {g.targets[1]});
                emit("cx", {g.targets[0], g.targets[1]});
                return;
            case GateKind::MCX: mc_xroot(g.controls, g.targets[0], 1.0); return;
            case GateKind::MCRX: mc_rx(g.controls, g.targets[0], g.angle); return;
        }
    }
};

}  // namespace

std::string export_qasm(const Circuit& circuit) {
    Emitter em{circuit, {}};
    for (const auto& g : circuit.gates) em.gate(g);

    std::ostringstream out;
    out << "// gates: " << em.lines.size() << "\n";
    out << "OPENQASM 3.0;\n";
    out << "include \"stdgates.inc\";\n";
    if (circuit.registers.empty()) {
        out << "qubit[" << circuit.width << "] q;\n";
    } else {
        for (const auto& reg : circuit.registers)
            out << "qubit[" << reg.width << "] " << reg.name << ";\n";
    }
    for (const auto& line : em.lines) out << line << "\n";
    return out.str();
}

}  // namespace nuosc

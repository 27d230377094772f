#pragma once

// OpenQASM 2.0 export.
//
// The text format only knows h, x, z, cx, ccx, ry and barrier, so MCX and
// MCRY are first rewritten into that set by lower_for_export():
//
//   * C^m X (m >= 3) borrows one idle qubit `a` in any state and splits the
//     controls into A and B:  C^|A|X(A->a) C^|B|+1X(B+a->t) C^|A|X(A->a)
//     C^|B|+1X(B+a->t). The sub-gates recurse the same way and leave `a`
//     unchanged.
//   * C^k RY(theta) with an idle qubit is RY(theta/2) C^kX RY(-theta/2) C^kX
//     on the target. Without one, the last control c is peeled off:
//     CRY_c(theta/2) C^k-1X(->c) CRY_c(-theta/2) C^k-1X(->c) C^k-1RY(theta/2),
//     where the target itself serves as the idle qubit for C^k-1X.
//
// The gate set is real and, on four or more qubits, every gate in it has
// determinant +1, while a C^n-1 X spanning the whole register has
// determinant -1. Such a gate therefore cannot be written exactly without an
// extra qubit; when one occurs the exported register gains one ancilla,
// q[n], which starts and ends in |0>.

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qgeom/circuit.hpp"
#include "qgeom/format.hpp"

namespace qgeom {

struct QasmDocument {
    std::string text;

    friend bool operator==(const QasmDocument&, const QasmDocument&) = default;
};

namespace detail {

inline std::vector<Qubit> idle_qubits(std::size_t width, const std::vector<Qubit>& busy) {
    std::vector<Qubit> idle;
    for (Qubit q = 0; q < width; ++q) {
        if (std::ranges::find(busy, q) == busy.end()) idle.push_back(q);
    }
    return idle;
}

inline void emit_mcx(Circuit& out, const std::vector<Qubit>& controls, Qubit target) {
    switch (controls.size()) {
        case 0: out.x(target); return;
        case 1: out.cx(controls[0], target); return;
        case 2: out.ccx(controls[0], controls[1], target); return;
        default: break;
    }
    std::vector<Qubit> busy = controls;
    busy.push_back(target);
    const auto idle = idle_qubits(out.num_qubits(), busy);
    if (idle.empty()) throw InternalError("no idle qubit available for a multi-controlled X");
    const Qubit borrowed = idle.front();

    const std::size_t split = (controls.size() + 1) / 2;
    const std::vector<Qubit> first(controls.begin(), controls.begin() + static_cast<std::ptrdiff_t>(split));
    std::vector<Qubit> second(controls.begin() + static_cast<std::ptrdiff_t>(split), controls.end());
    second.push_back(borrowed);

    for (int rep = 0; rep < 2; ++rep) {
        emit_mcx(out, first, borrowed);
        emit_mcx(out, second, target);
    }
}

inline void emit_mcry(Circuit& out, double angle, const std::vector<Qubit>& controls, Qubit target) {
    if (controls.empty()) {
        out.ry(angle, target);
        return;
    }
    std::vector<Qubit> busy = controls;
    busy.push_back(target);
    if (controls.size() <= 2 || !idle_qubits(out.num_qubits(), busy).empty()) {
        out.ry(angle / 2, target);
        emit_mcx(out, controls, target);
        out.ry(-angle / 2, target);
        emit_mcx(out, controls, target);
        return;
    }
    const Qubit last = controls.back();
    const std::vector<Qubit> rest(controls.begin(), controls.end() - 1);
    emit_mcry(out, angle / 2, {last}, target);
    emit_mcx(out, rest, last);
    emit_mcry(out, -angle / 2, {last}, target);
    emit_mcx(out, rest, last);
    emit_mcry(out, angle / 2, rest, target);
}

inline bool needs_export_ancilla(const Circuit& circuit) {
    for (const Gate& g : circuit.ops()) {
        if (g.kind == GateKind::MCX && g.controls.size() >= 3 && g.controls.size() + 1 == circuit.num_qubits()) {
            return true;
        }
    }
    return false;
}

inline void write_qubits(std::ostream& os, const std::vector<Qubit>& qubits) {
    for (std::size_t i = 0; i < qubits.size(); ++i) os << (i ? "," : "") << "q[" << qubits[i] << "]";
}

}  // namespace detail

// Rewrites MCX/MCRY into {h, x, z, cx, ccx, ry, barrier}. The result is
// one qubit wider than the input exactly when an ancilla is required (see
// the header comment); otherwise it has the same width.
inline Circuit lower_for_export(const Circuit& circuit) {
    const std::size_t width = circuit.num_qubits() + (detail::needs_export_ancilla(circuit) ? 1 : 0);
    Circuit out(width);
    for (const Gate& g : circuit.ops()) {
        switch (g.kind) {
            case GateKind::MCX: detail::emit_mcx(out, g.controls, g.target()); break;
            case GateKind::MCRY: detail::emit_mcry(out, g.angle, g.controls, g.target()); break;
            default: out.append(g); break;
        }
    }
    return out;
}

inline QasmDocument export_qasm(const Circuit& circuit) {
    const Circuit lowered = lower_for_export(circuit);
    std::ostringstream os;
    os << "OPENQASM 2.0;\n";
    os << "include \"qelib1.inc\";\n";
    os << "qreg q[" << lowered.num_qubits() << "];\n";
    for (const Gate& g : lowered.ops()) {
        switch (g.kind) {
            case GateKind::H:
            case GateKind::X:
            case GateKind::Z:
                for (Qubit t : g.targets) os << gate_name(g.kind) << " q[" << t << "];\n";
                break;
            case GateKind::RY: os << "ry(" << fmt::real(g.angle) << ") q[" << g.target() << "];\n"; break;
            case GateKind::CX:
            case GateKind::CCX: {
                std::vector<Qubit> operands = g.controls;
                operands.push_back(g.target());
                os << gate_name(g.kind) << " ";
                detail::write_qubits(os, operands);
                os << ";\n";
                break;
            }
            case GateKind::BARRIER:
                os << "barrier ";
                detail::write_qubits(os, g.targets);
                os << ";\n";
                break;
            case GateKind::MCX:
            case GateKind::MCRY: throw InternalError("multi-controlled gate survived lowering");
        }
    }
    return {os.str()};
}

}  // namespace qgeom

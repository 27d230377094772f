#pragma once

// Dense statevector simulation.
//
// Every gate in the IR is a (possibly multi-controlled) single-qubit
// operation, so one kernel covers them all: walk the amplitude pairs that
// differ only in the target bit, skip pairs whose control bits are not all
// set, and apply a 2x2 matrix. No full unitary is ever formed here;
// gate_unitary() builds one independently for cross-checking.

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "qgeom/circuit.hpp"
#include "qgeom/errors.hpp"
#include "qgeom/statevector.hpp"

namespace qgeom {

using Matrix2 = std::array<Amplitude, 4>;  // row-major {m00, m01, m10, m11}

inline Matrix2 hadamard_matrix() {
    const double s = 1.0 / std::sqrt(2.0);
    return {s, s, s, -s};
}
inline Matrix2 pauli_x_matrix() { return {0.0, 1.0, 1.0, 0.0}; }
inline Matrix2 pauli_z_matrix() { return {1.0, 0.0, 0.0, -1.0}; }
inline Matrix2 ry_matrix(double angle) {
    const double c = std::cos(angle / 2), s = std::sin(angle / 2);
    return {c, -s, s, c};
}

inline Matrix2 gate_matrix(const Gate& g) {
    switch (g.kind) {
        case GateKind::H: return hadamard_matrix();
        case GateKind::X:
        case GateKind::CX:
        case GateKind::CCX:
        case GateKind::MCX: return pauli_x_matrix();
        case GateKind::Z: return pauli_z_matrix();
        case GateKind::RY:
        case GateKind::MCRY: return ry_matrix(g.angle);
        case GateKind::BARRIER: break;
    }
    return {1.0, 0.0, 0.0, 1.0};
}

namespace kernels {

inline BasisIndex control_mask(std::span<const Qubit> controls) {
    BasisIndex mask = 0;
    for (Qubit c : controls) mask |= BasisIndex{1} << c;
    return mask;
}

template <typename PairOp>
void for_each_pair(std::span<Amplitude> amps, Qubit target, BasisIndex cmask, PairOp&& op) {
    const BasisIndex stride = BasisIndex{1} << target;
    const BasisIndex dim = amps.size();
    for (BasisIndex base = 0; base < dim; base += 2 * stride) {
        for (BasisIndex off = 0; off < stride; ++off) {
            const BasisIndex i0 = base | off;
            if ((i0 & cmask) != cmask) continue;
            op(amps[i0], amps[i0 | stride]);
        }
    }
}

inline void apply_x(std::span<Amplitude> amps, Qubit target, BasisIndex cmask) {
    for_each_pair(amps, target, cmask, [](Amplitude& a0, Amplitude& a1) { std::swap(a0, a1); });
}

inline void apply_z(std::span<Amplitude> amps, Qubit target, BasisIndex cmask) {
    for_each_pair(amps, target, cmask, [](Amplitude&, Amplitude& a1) { a1 = -a1; });
}

inline void apply_matrix(std::span<Amplitude> amps, Qubit target, BasisIndex cmask, const Matrix2& m) {
    for_each_pair(amps, target, cmask, [&m](Amplitude& a0, Amplitude& a1) {
        const Amplitude v0 = a0, v1 = a1;
        a0 = m[0] * v0 + m[1] * v1;
        a1 = m[2] * v0 + m[3] * v1;
    });
}

}  // namespace kernels

// Applies one gate in place.
inline void apply_gate(Statevector& state, const Gate& g) {
    for (Qubit q : g.controls) {
        if (q >= state.num_qubits()) throw DimensionError("control qubit " + std::to_string(q) + " out of range");
    }
    for (Qubit q : g.targets) {
        if (q >= state.num_qubits()) throw DimensionError("target qubit " + std::to_string(q) + " out of range");
    }
    if (g.is_barrier()) return;

    auto amps = state.amplitudes();
    const BasisIndex cmask = kernels::control_mask(g.controls);
    for (Qubit t : g.targets) {
        switch (g.kind) {
            case GateKind::X:
            case GateKind::CX:
            case GateKind::CCX:
            case GateKind::MCX: kernels::apply_x(amps, t, cmask); break;
            case GateKind::Z: kernels::apply_z(amps, t, cmask); break;
            default: kernels::apply_matrix(amps, t, cmask, gate_matrix(g)); break;
        }
    }
}

// Runs the circuit from `initial`, or from |0...0> when absent.
inline Statevector run(const Circuit& circuit, std::optional<Statevector> initial = std::nullopt) {
    Statevector state = initial ? std::move(*initial) : Statevector(circuit.num_qubits());
    if (state.num_qubits() != circuit.num_qubits()) {
        throw DimensionError("initial state has " + std::to_string(state.num_qubits()) + " qubits, circuit has " +
                             std::to_string(circuit.num_qubits()));
    }
    for (const Gate& g : circuit.ops()) apply_gate(state, g);
    return state;
}

inline constexpr std::size_t kMaxUnitaryQubits = 10;

// Full 2^n x 2^n matrix of `g` embedded in an n-qubit register, built
// entry by entry from the gate definition.
inline RegisterMatrix gate_unitary(const Gate& g, std::size_t num_qubits) {
    if (num_qubits == 0) throw DimensionError("a register needs at least one qubit");
    if (num_qubits > kMaxUnitaryQubits) {
        throw CapacityError("gate_unitary is limited to " + std::to_string(kMaxUnitaryQubits) + " qubits");
    }
    for (Qubit q : g.controls) {
        if (q >= num_qubits) throw DimensionError("control qubit out of range");
    }
    for (Qubit q : g.targets) {
        if (q >= num_qubits) throw DimensionError("target qubit out of range");
    }

    RegisterMatrix u(num_qubits);
    const std::size_t dim = u.dimension();
    if (g.is_barrier()) {
        for (std::size_t i = 0; i < dim; ++i) u(i, i) = 1.0;
        return u;
    }

    const Matrix2 m = gate_matrix(g);
    BasisIndex target_mask = 0;
    for (Qubit t : g.targets) target_mask |= BasisIndex{1} << t;
    BasisIndex cmask = 0;
    for (Qubit c : g.controls) cmask |= BasisIndex{1} << c;

    for (std::size_t col = 0; col < dim; ++col) {
        if ((col & cmask) != cmask) {
            u(col, col) = 1.0;
            continue;
        }
        for (std::size_t row = 0; row < dim; ++row) {
            if ((row & ~target_mask) != (col & ~target_mask)) continue;
            Amplitude entry = 1.0;
            for (Qubit t : g.targets) entry *= m[2 * ((row >> t) & 1U) + ((col >> t) & 1U)];
            u(row, col) = entry;
        }
    }
    return u;
}

}  // namespace qgeom

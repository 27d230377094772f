#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qgeom/errors.hpp"
#include "qgeom/statevector.hpp"

namespace qgeom {

enum class GateKind { H, X, Z, CX, CCX, RY, MCX, MCRY, BARRIER };

inline std::string_view gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::H: return "h";
        case GateKind::X: return "x";
        case GateKind::Z: return "z";
        case GateKind::CX: return "cx";
        case GateKind::CCX: return "ccx";
        case GateKind::RY: return "ry";
        case GateKind::MCX: return "mcx";
        case GateKind::MCRY: return "mcry";
        case GateKind::BARRIER: return "barrier";
    }
    return "?";
}

// One circuit operation.
//
// H, X and Z may list several targets; they act on each independently (the
// broadcast form `x([1, 2])`). Controlled kinds have exactly one target.
// A BARRIER lists the qubits it spans in `targets` and acts as identity.
struct Gate {
    GateKind kind;
    std::vector<Qubit> controls;
    std::vector<Qubit> targets;
    double angle = 0.0;  // radians; RY and MCRY only

    bool is_barrier() const noexcept { return kind == GateKind::BARRIER; }
    Qubit target() const { return targets.front(); }

    friend bool operator==(const Gate&, const Gate&) = default;
};

class Circuit {
public:
    explicit Circuit(std::size_t num_qubits) : num_qubits_(num_qubits) {
        if (num_qubits == 0) throw DimensionError("a circuit needs at least one qubit");
    }

    std::size_t num_qubits() const noexcept { return num_qubits_; }
    const std::vector<Gate>& ops() const noexcept { return ops_; }

    // Number of operations that are not barriers.
    std::size_t gate_count() const noexcept {
        return static_cast<std::size_t>(std::ranges::count_if(ops_, [](const Gate& g) { return !g.is_barrier(); }));
    }

    Circuit& append(Gate gate) {
        validate(gate);
        ops_.push_back(std::move(gate));
        return *this;
    }

    Circuit& append(const Circuit& other) {
        if (other.num_qubits_ > num_qubits_) throw DimensionError("appended circuit is wider than the target");
        for (const auto& g : other.ops_) append(g);
        return *this;
    }

    Circuit& h(Qubit q) { return append({GateKind::H, {}, {q}}); }
    Circuit& x(Qubit q) { return append({GateKind::X, {}, {q}}); }
    Circuit& x(std::initializer_list<Qubit> qs) { return append({GateKind::X, {}, qs}); }
    Circuit& z(Qubit q) { return append({GateKind::Z, {}, {q}}); }
    Circuit& cx(Qubit control, Qubit target) { return append({GateKind::CX, {control}, {target}}); }
    Circuit& ccx(Qubit c0, Qubit c1, Qubit target) { return append({GateKind::CCX, {c0, c1}, {target}}); }
    Circuit& ry(double angle, Qubit q) { return append({GateKind::RY, {}, {q}, angle}); }
    Circuit& mcx(std::vector<Qubit> controls, Qubit target) {
        return append({GateKind::MCX, std::move(controls), {target}});
    }
    Circuit& mcry(double angle, std::vector<Qubit> controls, Qubit target) {
        return append({GateKind::MCRY, std::move(controls), {target}, angle});
    }
    // Barrier across the whole register.
    Circuit& barrier() {
        std::vector<Qubit> all(num_qubits_);
        for (Qubit q = 0; q < num_qubits_; ++q) all[q] = q;
        return append({GateKind::BARRIER, {}, std::move(all)});
    }
    Circuit& barrier(std::initializer_list<Qubit> qs) { return append({GateKind::BARRIER, {}, qs}); }

    friend bool operator==(const Circuit&, const Circuit&) = default;

private:
    void validate(const Gate& g) const {
        const auto name = std::string(gate_name(g.kind));
        if (g.targets.empty()) throw DimensionError(name + " gate without target");
        std::size_t expected_controls = 0;
        bool single_target = true;
        switch (g.kind) {
            case GateKind::H:
            case GateKind::X:
            case GateKind::Z:
            case GateKind::BARRIER: single_target = false; break;
            case GateKind::RY: break;
            case GateKind::CX: expected_controls = 1; break;
            case GateKind::CCX: expected_controls = 2; break;
            case GateKind::MCX:
            case GateKind::MCRY: expected_controls = g.controls.size(); break;
        }
        if (g.controls.size() != expected_controls) throw DimensionError(name + " gate has the wrong control count");
        if (single_target && g.targets.size() != 1) throw DimensionError(name + " gate takes one target");

        std::vector<Qubit> all = g.controls;
        all.insert(all.end(), g.targets.begin(), g.targets.end());
        for (Qubit q : all) {
            if (q >= num_qubits_) {
                throw DimensionError(name + " gate references qubit " + std::to_string(q) + " of a " +
                                     std::to_string(num_qubits_) + "-qubit circuit");
            }
        }
        std::ranges::sort(all);
        if (std::ranges::adjacent_find(all) != all.end()) throw DimensionError(name + " gate repeats a qubit");
    }

    std::size_t num_qubits_;
    std::vector<Gate> ops_;
};

// Inverse of a single gate. Every kind here is self-inverse except the
// rotations, which negate their angle.
inline Gate inverse(Gate g) {
    if (g.kind == GateKind::RY || g.kind == GateKind::MCRY) g.angle = -g.angle;
    return g;
}

inline Circuit inverse(const Circuit& c) {
    Circuit out(c.num_qubits());
    for (auto it = c.ops().rbegin(); it != c.ops().rend(); ++it) out.append(inverse(*it));
    return out;
}

}  // namespace qgeom

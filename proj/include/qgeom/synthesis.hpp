#pragma once

// Preparation circuits for sparse real states by term merging.
//
// Work backwards from the target towards a single basis state. Each round
// picks the two support strings closest in Hamming distance, routes them
// with CX gates (controlled on one differing bit `d`) until they differ only
// at `d`, then applies an RY on `d` controlled by just enough other bits to
// single out that pair, rotating all their weight onto one string. After
// k-1 rounds one basis string remains; X gates send it to |0...0>. The
// preparation circuit is the inverse of this reduction.
//
// Each round uses at most n-1 CX gates and one multi-controlled RY with at
// most k-2 controls (plus X conjugation for controls read as 0).

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "qgeom/circuit.hpp"
#include "qgeom/errors.hpp"
#include "qgeom/statevector.hpp"

namespace qgeom {

namespace detail {

// Real amplitudes of the target after removing the global phase of its
// largest coefficient and normalizing.
inline std::map<BasisIndex, double> real_normalized_amplitudes(const SparseState& target) {
    if (target.empty() || target.norm() == 0.0) throw DegenerateStateError("cannot prepare the zero state");
    const auto largest = std::ranges::max_element(target.terms(), {}, [](const SparseTerm& t) { return std::abs(t.coeff); });
    const Amplitude phase = largest->coeff / std::abs(largest->coeff);
    const double scale = target.norm();

    std::map<BasisIndex, double> amps;
    for (const auto& t : target.terms()) {
        const Amplitude rotated = t.coeff / phase / scale;
        if (std::abs(rotated.imag()) > 1e-12) {
            throw DomainError("target has relative complex phases; only real amplitudes (up to a global phase) "
                              "can be prepared with the RY-based gate set");
        }
        amps[t.index] = rotated.real();
    }
    return amps;
}

inline bool has_bit(BasisIndex v, Qubit b) { return ((v >> b) & 1U) != 0; }

}  // namespace detail

inline Circuit synth_sparse_state(const SparseState& target) {
    const std::size_t n = target.num_qubits();
    if (n > kMaxDenseQubits) {
        throw CapacityError("synthesis is limited to " + std::to_string(kMaxDenseQubits) + " qubits");
    }
    std::map<BasisIndex, double> amps = detail::real_normalized_amplitudes(target);

    // Gates taking the target to |0...0>, in application order.
    Circuit reduction(n);

    while (amps.size() > 1) {
        // Closest pair; map order makes the choice deterministic.
        BasisIndex x1 = 0, x2 = 0;
        int best = 64;
        for (auto i = amps.begin(); i != amps.end(); ++i) {
            for (auto j = std::next(i); j != amps.end(); ++j) {
                const int d = std::popcount(i->first ^ j->first);
                if (d < best) {
                    best = d;
                    x1 = i->first;
                    x2 = j->first;
                }
            }
        }
        const BasisIndex diff = x1 ^ x2;
        const Qubit pivot = static_cast<Qubit>(std::countr_zero(diff));
        if (detail::has_bit(x1, pivot)) std::swap(x1, x2);

        // Route x2 onto x1 ^ (1 << pivot).
        for (Qubit b = 0; b < n; ++b) {
            if (b == pivot || !detail::has_bit(diff, b)) continue;
            reduction.cx(pivot, b);
            std::map<BasisIndex, double> routed;
            for (const auto& [key, value] : amps) {
                routed[detail::has_bit(key, pivot) ? key ^ (BasisIndex{1} << b) : key] = value;
            }
            amps = std::move(routed);
        }
        const BasisIndex partner = x1 | (BasisIndex{1} << pivot);

        // Greedily pick controls that exclude every other support string.
        std::vector<BasisIndex> others;
        for (const auto& [key, value] : amps) {
            if (key != x1 && key != partner) others.push_back(key);
        }
        std::vector<Qubit> controls;
        while (!others.empty()) {
            Qubit pick = n;
            std::size_t pick_hits = 0;
            for (Qubit b = 0; b < n; ++b) {
                if (b == pivot || std::ranges::find(controls, b) != controls.end()) continue;
                const auto hits = static_cast<std::size_t>(std::ranges::count_if(
                    others, [&](BasisIndex y) { return detail::has_bit(y, b) != detail::has_bit(x1, b); }));
                if (hits > pick_hits) {
                    pick = b;
                    pick_hits = hits;
                }
            }
            if (pick == n) throw InternalError("no control separates the merge pair");
            controls.push_back(pick);
            std::erase_if(others, [&](BasisIndex y) { return detail::has_bit(y, pick) != detail::has_bit(x1, pick); });
        }
        std::ranges::sort(controls);

        std::vector<Qubit> zero_controls;
        for (Qubit c : controls) {
            if (!detail::has_bit(x1, c)) zero_controls.push_back(c);
        }

        const double a = amps[x1];
        const double b = amps[partner];
        const double angle = -2.0 * std::atan2(b, a);
        for (Qubit c : zero_controls) reduction.x(c);
        if (controls.empty()) {
            reduction.ry(angle, pivot);
        } else {
            reduction.mcry(angle, controls, pivot);
        }
        for (Qubit c : zero_controls) reduction.x(c);
        amps[x1] = std::hypot(a, b);
        amps.erase(partner);
    }

    const BasisIndex last = amps.begin()->first;
    for (Qubit b = 0; b < n; ++b) {
        if (detail::has_bit(last, b)) reduction.x(b);
    }
    return inverse(reduction);
}

}  // namespace qgeom

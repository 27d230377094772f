#pragma once

// Multilinear polynomials as n-qubit states.
//
// A monomial over x_1..x_m is identified by its variable subset, encoded as
// a basis index with bit i-1 set iff x_i is present. The coefficient of that
// monomial becomes the amplitude at that index, so
//
//   c_0 + c_1 x_1 + c_2 x_2 + c_12 x_1 x_2   <->   c_0|00> + c_1|01> + c_2|10> + c_12|11>.
//
// Index 0 is always the constant term.

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qgeom/errors.hpp"
#include "qgeom/format.hpp"
#include "qgeom/statevector.hpp"

namespace qgeom {

using Assignment = std::vector<Amplitude>;  // x_1 .. x_m

class MultilinearPoly {
public:
    explicit MultilinearPoly(std::size_t num_vars) : num_vars_(num_vars) {
        if (num_vars == 0) throw DimensionError("a polynomial needs at least one variable");
        if (num_vars > kMaxSparseQubits) throw CapacityError("more than 63 variables");
    }

    std::size_t num_vars() const noexcept { return num_vars_; }
    const std::map<BasisIndex, Amplitude>& coeffs() const noexcept { return coeffs_; }

    Amplitude coeff(BasisIndex subset) const {
        const auto it = coeffs_.find(subset);
        return it == coeffs_.end() ? Amplitude{} : it->second;
    }

    // Sets the coefficient of the monomial `subset`; zero erases it.
    MultilinearPoly& set(BasisIndex subset, Amplitude value) {
        if (subset >= basis_dimension(num_vars_)) throw DimensionError("monomial subset exceeds the variable count");
        if (value == Amplitude{}) {
            coeffs_.erase(subset);
        } else {
            coeffs_[subset] = value;
        }
        return *this;
    }

    // Adds `value` times the product of the listed (1-based) variables.
    MultilinearPoly& add_monomial(Amplitude value, std::span<const std::size_t> variables) {
        BasisIndex subset = 0;
        for (std::size_t v : variables) {
            if (v == 0 || v > num_vars_) throw DimensionError("variable x_" + std::to_string(v) + " out of range");
            const BasisIndex bit = BasisIndex{1} << (v - 1);
            if (subset & bit) throw DomainError("x_" + std::to_string(v) + " repeated in a multilinear monomial");
            subset |= bit;
        }
        return set(subset, coeff(subset) + value);
    }

    MultilinearPoly& add_monomial(Amplitude value, std::initializer_list<std::size_t> variables) {
        return add_monomial(value, std::span<const std::size_t>(variables.begin(), variables.size()));
    }

    friend bool operator==(const MultilinearPoly&, const MultilinearPoly&) = default;

private:
    std::size_t num_vars_;
    std::map<BasisIndex, Amplitude> coeffs_;
};

// Human-readable form such as "x1*x3 - x2*x4"; used in diagnostics.
inline std::string to_string(const MultilinearPoly& p) {
    if (p.coeffs().empty()) return "0";
    std::string out;
    for (const auto& [subset, c] : p.coeffs()) {
        std::string monomial;
        for (std::size_t i = 0; i < p.num_vars(); ++i) {
            if ((subset >> i) & 1U) monomial += (monomial.empty() ? "x" : "*x") + std::to_string(i + 1);
        }
        const bool unit = c.imag() == 0.0 && std::abs(c.real()) == 1.0;
        const bool negative = c.imag() == 0.0 && c.real() < 0.0;
        std::string term;
        if (unit && !monomial.empty()) {
            term = monomial;
        } else {
            const Amplitude shown = negative ? -c : c;
            term = shown.imag() == 0.0 ? fmt::real(shown.real())
                                       : "(" + fmt::real(shown.real()) + "+" + fmt::real(shown.imag()) + "i)";
            if (!monomial.empty()) term += "*" + monomial;
        }
        if (out.empty()) {
            out = (negative ? "-" : "") + term;
        } else {
            out += (negative ? " - " : " + ") + term;
        }
    }
    return out;
}

inline SparseState poly_to_state(const MultilinearPoly& p) {
    SparseState s(p.num_vars());
    for (const auto& [subset, c] : p.coeffs()) s.add(subset, c);
    return s;
}

inline MultilinearPoly state_to_poly(const SparseState& s) {
    MultilinearPoly p(s.num_qubits());
    for (const auto& t : s.terms()) p.set(t.index, t.coeff);
    return p;
}

// Unnormalized tensor product of (|0> + x_i|1>) over all variables: the
// amplitude at subset S is the monomial prod_{i in S} x_i.
inline Statevector product_state(std::span<const Amplitude> x) {
    if (x.empty()) throw DimensionError("empty assignment");
    if (x.size() > kMaxDenseQubits) {
        throw CapacityError("assignment of " + std::to_string(x.size()) + " variables exceeds the " +
                            std::to_string(kMaxDenseQubits) + "-qubit limit");
    }
    Statevector state = Statevector::zero(x.size());
    auto amps = state.amplitudes();
    amps[0] = 1.0;
    // Doubling construction: after processing variable i, the first 2^(i+1)
    // entries hold the expansion over x_1..x_{i+1}.
    std::size_t filled = 1;
    for (const Amplitude& xi : x) {
        for (std::size_t j = 0; j < filled; ++j) amps[filled + j] = amps[j] * xi;
        filled *= 2;
    }
    return state;
}

inline Statevector product_state(const Assignment& x) { return product_state(std::span<const Amplitude>(x)); }

// <p_state | product_state(x)>: the polynomial value when coefficients are real.
inline Amplitude eval_via_inner(const SparseState& p_state, std::span<const Amplitude> x) {
    if (p_state.num_qubits() != x.size()) {
        throw DimensionError("polynomial has " + std::to_string(p_state.num_qubits()) + " variables, assignment has " +
                             std::to_string(x.size()));
    }
    return inner_product(p_state, product_state(x));
}

inline Amplitude eval_via_inner(const SparseState& p_state, const Assignment& x) {
    return eval_via_inner(p_state, std::span<const Amplitude>(x));
}

// Term-by-term evaluation, independent of any state construction.
inline Amplitude eval_direct(const MultilinearPoly& p, std::span<const Amplitude> x) {
    if (p.num_vars() != x.size()) {
        throw DimensionError("polynomial has " + std::to_string(p.num_vars()) + " variables, assignment has " +
                             std::to_string(x.size()));
    }
    Amplitude total{};
    for (const auto& [subset, c] : p.coeffs()) {
        Amplitude monomial = 1.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if ((subset >> i) & 1U) monomial *= x[i];
        }
        total += c * monomial;
    }
    return total;
}

inline Amplitude eval_direct(const MultilinearPoly& p, const Assignment& x) {
    return eval_direct(p, std::span<const Amplitude>(x));
}

}  // namespace qgeom

#pragma once

// Dense and sparse pure states over n qubits.
//
// Bit convention: qubit b is bit b of the basis index (least significant
// first). Ket labels are written with the highest qubit leftmost, so the
// label "0101" is basis index 5 and its rightmost character is qubit 0.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "qgeom/errors.hpp"

namespace qgeom {

using Amplitude = std::complex<double>;
using BasisIndex = std::uint64_t;
using Qubit = std::size_t;

// Largest register a dense Statevector may hold: 2^26 amplitudes of 16
// bytes each, i.e. 1 GiB.
inline constexpr std::size_t kMaxDenseQubits = 26;
// Sparse states only need their indices to fit in a BasisIndex.
inline constexpr std::size_t kMaxSparseQubits = 63;

inline constexpr double kAmplitudeTolerance = 1e-10;
inline constexpr double kNormTolerance = 1e-12;

inline constexpr BasisIndex basis_dimension(std::size_t num_qubits) {
    return BasisIndex{1} << num_qubits;
}

// Formats `index` as an n-character ket label, highest qubit first.
inline std::string ket_label(BasisIndex index, std::size_t num_qubits) {
    std::string label(num_qubits, '0');
    for (std::size_t b = 0; b < num_qubits; ++b) {
        if ((index >> b) & 1U) label[num_qubits - 1 - b] = '1';
    }
    return label;
}

class Statevector {
public:
    // |0...0>
    explicit Statevector(std::size_t num_qubits) : num_qubits_(checked_width(num_qubits)) {
        amplitudes_.assign(basis_dimension(num_qubits_), Amplitude{});
        amplitudes_[0] = 1.0;
    }

    Statevector(std::size_t num_qubits, std::vector<Amplitude> amplitudes)
        : num_qubits_(checked_width(num_qubits)), amplitudes_(std::move(amplitudes)) {
        if (amplitudes_.size() != basis_dimension(num_qubits_)) {
            throw DimensionError("amplitude count " + std::to_string(amplitudes_.size()) +
                                 " does not match 2^" + std::to_string(num_qubits_));
        }
    }

    static Statevector zero(std::size_t num_qubits) {
        return Statevector(num_qubits, std::vector<Amplitude>(basis_dimension(checked_width(num_qubits))));
    }

    static Statevector basis(std::size_t num_qubits, BasisIndex index) {
        Statevector s = zero(num_qubits);
        if (index >= s.dimension()) throw DimensionError("basis index out of range");
        s.amplitudes_[index] = 1.0;
        return s;
    }

    std::size_t num_qubits() const noexcept { return num_qubits_; }
    std::size_t dimension() const noexcept { return amplitudes_.size(); }

    const Amplitude& operator[](BasisIndex i) const { return amplitudes_[i]; }
    Amplitude& operator[](BasisIndex i) { return amplitudes_[i]; }

    std::span<const Amplitude> amplitudes() const noexcept { return amplitudes_; }
    std::span<Amplitude> amplitudes() noexcept { return amplitudes_; }

    double norm_squared() const noexcept {
        double total = 0.0;
        for (const auto& a : amplitudes_) total += std::norm(a);
        return total;
    }
    double norm() const noexcept { return std::sqrt(norm_squared()); }

    bool is_normalized(double tol = kNormTolerance) const noexcept {
        return std::abs(norm_squared() - 1.0) <= tol;
    }

    Statevector& operator*=(Amplitude factor) noexcept {
        for (auto& a : amplitudes_) a *= factor;
        return *this;
    }

private:
    static std::size_t checked_width(std::size_t num_qubits) {
        if (num_qubits == 0) throw DimensionError("a register needs at least one qubit");
        if (num_qubits > kMaxDenseQubits) {
            throw CapacityError("dense state of " + std::to_string(num_qubits) + " qubits exceeds the " +
                                std::to_string(kMaxDenseQubits) + "-qubit limit");
        }
        return num_qubits;
    }

    std::size_t num_qubits_;
    std::vector<Amplitude> amplitudes_;
};

struct SparseTerm {
    BasisIndex index;
    Amplitude coeff;

    friend bool operator==(const SparseTerm&, const SparseTerm&) = default;
};

// Weighted superposition of a few basis states. Terms keep insertion order;
// indices are distinct and coefficients nonzero. Norm is unconstrained.
class SparseState {
public:
    explicit SparseState(std::size_t num_qubits) : num_qubits_(checked_width(num_qubits)) {}

    SparseState(std::size_t num_qubits, std::vector<SparseTerm> terms) : SparseState(num_qubits) {
        terms_.reserve(terms.size());
        for (const auto& t : terms) add(t.index, t.coeff);
    }

    // Appends a term; zero coefficients are dropped.
    SparseState& add(BasisIndex index, Amplitude coeff) {
        if (index >= basis_dimension(num_qubits_)) {
            throw DimensionError("basis index " + std::to_string(index) + " exceeds a " +
                                 std::to_string(num_qubits_) + "-qubit register");
        }
        for (const auto& t : terms_) {
            if (t.index == index) throw FormatError("duplicate basis index " + std::to_string(index));
        }
        if (coeff != Amplitude{}) terms_.push_back({index, coeff});
        return *this;
    }

    std::size_t num_qubits() const noexcept { return num_qubits_; }
    const std::vector<SparseTerm>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool empty() const noexcept { return terms_.empty(); }

    Amplitude coeff(BasisIndex index) const noexcept {
        for (const auto& t : terms_) {
            if (t.index == index) return t.coeff;
        }
        return {};
    }

    double norm_squared() const noexcept {
        double total = 0.0;
        for (const auto& t : terms_) total += std::norm(t.coeff);
        return total;
    }
    double norm() const noexcept { return std::sqrt(norm_squared()); }

    // Terms sorted by basis index.
    std::vector<SparseTerm> sorted_terms() const {
        auto sorted = terms_;
        std::ranges::sort(sorted, {}, &SparseTerm::index);
        return sorted;
    }

    // Same width and same set of (index, coefficient) pairs, in any order.
    friend bool operator==(const SparseState& a, const SparseState& b) {
        return a.num_qubits_ == b.num_qubits_ && a.sorted_terms() == b.sorted_terms();
    }

    Statevector to_dense() const {
        Statevector dense = Statevector::zero(num_qubits_);
        for (const auto& t : terms_) dense[t.index] = t.coeff;
        return dense;
    }

private:
    static std::size_t checked_width(std::size_t num_qubits) {
        if (num_qubits == 0) throw DimensionError("a register needs at least one qubit");
        if (num_qubits > kMaxSparseQubits) throw CapacityError("sparse state wider than 63 qubits");
        return num_qubits;
    }

    std::size_t num_qubits_;
    std::vector<SparseTerm> terms_;
};

// Single basis state from a '0'/'1' label, leftmost character = highest qubit.
inline SparseState ket_from_label(std::string_view label) {
    if (label.empty()) throw FormatError("empty ket label");
    if (label.size() > kMaxSparseQubits) throw CapacityError("ket label wider than 63 qubits");
    BasisIndex index = 0;
    for (char c : label) {
        if (c != '0' && c != '1') throw FormatError("ket label may contain only '0' and '1': " + std::string(label));
        index = (index << 1) | static_cast<BasisIndex>(c == '1');
    }
    return SparseState(label.size(), {{index, 1.0}});
}

// Signed superposition of labelled kets, e.g. {{"0101", 1}, {"1010", -1}}.
// All labels must share one width.
inline SparseState sparse_from_labels(std::initializer_list<std::pair<std::string_view, Amplitude>> terms) {
    if (terms.size() == 0) throw FormatError("no ket labels given");
    SparseState out(terms.begin()->first.size());
    for (const auto& [label, coeff] : terms) {
        const SparseState ket = ket_from_label(label);
        if (ket.num_qubits() != out.num_qubits()) throw FormatError("ket labels of differing width");
        out.add(ket.terms().front().index, coeff);
    }
    return out;
}

namespace detail {

inline void require_same_width(std::size_t a, std::size_t b) {
    if (a != b) {
        throw DimensionError("qubit-count mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
    }
}

}  // namespace detail

// <bra|ket>, conjugate-linear in the bra.
inline Amplitude inner_product(const Statevector& bra, const Statevector& ket) {
    detail::require_same_width(bra.num_qubits(), ket.num_qubits());
    Amplitude total{};
    const auto b = bra.amplitudes();
    const auto k = ket.amplitudes();
    for (std::size_t i = 0; i < b.size(); ++i) total += std::conj(b[i]) * k[i];
    return total;
}

inline Amplitude inner_product(const SparseState& bra, const Statevector& ket) {
    detail::require_same_width(bra.num_qubits(), ket.num_qubits());
    Amplitude total{};
    for (const auto& t : bra.terms()) total += std::conj(t.coeff) * ket[t.index];
    return total;
}

inline Amplitude inner_product(const Statevector& bra, const SparseState& ket) {
    return std::conj(inner_product(ket, bra));
}

inline Amplitude inner_product(const SparseState& bra, const SparseState& ket) {
    detail::require_same_width(bra.num_qubits(), ket.num_qubits());
    Amplitude total{};
    for (const auto& t : bra.terms()) total += std::conj(t.coeff) * ket.coeff(t.index);
    return total;
}

template <typename State>
struct Normalized {
    State state;
    double scale;  // original = scale * state
};

inline Normalized<Statevector> normalize(Statevector state) {
    const double scale = state.norm();
    if (scale == 0.0) throw DegenerateStateError("cannot normalize the zero state");
    state *= 1.0 / scale;
    return {std::move(state), scale};
}

inline Normalized<SparseState> normalize(const SparseState& state) {
    const double scale = state.norm();
    if (scale == 0.0) throw DegenerateStateError("cannot normalize the zero state");
    SparseState out(state.num_qubits());
    for (const auto& t : state.terms()) out.add(t.index, t.coeff / scale);
    return {std::move(out), scale};
}

struct PhaseComparison {
    bool equal = false;
    std::optional<Amplitude> phase;  // a == phase * b, present iff equal

    explicit operator bool() const noexcept { return equal; }
};

// True iff a == phase * b amplitude-wise within `tol` for some unit phase.
// The phase is read off the largest-magnitude amplitude of b.
inline PhaseComparison equal_up_to_global_phase(const Statevector& a, const Statevector& b,
                                                double tol = kAmplitudeTolerance) {
    detail::require_same_width(a.num_qubits(), b.num_qubits());
    if (!a.is_normalized() || !b.is_normalized()) {
        throw ContractError("equal_up_to_global_phase requires normalized states");
    }
    const auto bs = b.amplitudes();
    const auto as = a.amplitudes();
    const auto pivot = static_cast<std::size_t>(
        std::ranges::max_element(bs, {}, [](const Amplitude& z) { return std::norm(z); }) - bs.begin());
    const Amplitude ratio = as[pivot] / bs[pivot];
    if (std::abs(ratio) == 0.0) return {};
    const Amplitude phase = ratio / std::abs(ratio);
    for (std::size_t i = 0; i < as.size(); ++i) {
        if (std::abs(as[i] - phase * bs[i]) > tol) return {};
    }
    return {true, phase};
}

// 2^n x 2^n complex matrix over an n-qubit register, row-major.
class RegisterMatrix {
public:
    explicit RegisterMatrix(std::size_t num_qubits)
        : num_qubits_(num_qubits), dim_(basis_dimension(num_qubits)), entries_(dim_ * dim_) {}

    std::size_t num_qubits() const noexcept { return num_qubits_; }
    std::size_t dimension() const noexcept { return dim_; }

    const Amplitude& operator()(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }
    Amplitude& operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }

    Amplitude trace() const noexcept {
        Amplitude t{};
        for (std::size_t i = 0; i < dim_; ++i) t += entries_[i * dim_ + i];
        return t;
    }

    double hermiticity_error() const noexcept {
        double worst = 0.0;
        for (std::size_t r = 0; r < dim_; ++r) {
            for (std::size_t c = 0; c < dim_; ++c) {
                worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
            }
        }
        return worst;
    }

private:
    std::size_t num_qubits_;
    std::size_t dim_;
    std::vector<Amplitude> entries_;
};

using DensityMatrix = RegisterMatrix;

// Partial trace of |psi><psi| over every qubit not listed in `keep`.
// keep[j] becomes qubit j of the reduced register.
inline DensityMatrix reduced_density_matrix(const Statevector& state, std::span<const Qubit> keep) {
    const std::size_t n = state.num_qubits();
    if (keep.empty()) throw DimensionError("reduced_density_matrix needs at least one kept qubit");
    std::unordered_set<Qubit> seen;
    for (Qubit q : keep) {
        if (q >= n) throw DimensionError("qubit " + std::to_string(q) + " out of range");
        if (!seen.insert(q).second) throw DimensionError("qubit " + std::to_string(q) + " listed twice");
    }
    std::vector<Qubit> traced;
    for (Qubit q = 0; q < n; ++q) {
        if (!seen.contains(q)) traced.push_back(q);
    }

    auto scatter = [](std::uint64_t compact, std::span<const Qubit> qubits) {
        BasisIndex full = 0;
        for (std::size_t j = 0; j < qubits.size(); ++j) {
            if ((compact >> j) & 1U) full |= BasisIndex{1} << qubits[j];
        }
        return full;
    };

    const std::size_t kept_dim = basis_dimension(keep.size());
    const std::size_t env_dim = basis_dimension(traced.size());
    std::vector<BasisIndex> kept_offsets(kept_dim);
    for (std::size_t r = 0; r < kept_dim; ++r) kept_offsets[r] = scatter(r, keep);

    DensityMatrix rho(keep.size());
    for (std::size_t e = 0; e < env_dim; ++e) {
        const BasisIndex env = scatter(e, traced);
        for (std::size_t r = 0; r < kept_dim; ++r) {
            const Amplitude ar = state[env | kept_offsets[r]];
            if (ar == Amplitude{}) continue;
            for (std::size_t c = 0; c < kept_dim; ++c) {
                rho(r, c) += ar * std::conj(state[env | kept_offsets[c]]);
            }
        }
    }
    return rho;
}

inline DensityMatrix reduced_density_matrix(const Statevector& state, std::initializer_list<Qubit> keep) {
    return reduced_density_matrix(state, std::span<const Qubit>(keep.begin(), keep.size()));
}

}  // namespace qgeom

#pragma once

// Areas, cross products, volumes and determinants evaluated as inner
// products <detector|product_state(x)>, next to their classical formulas.
//
// A detector is a signed sum of basis kets whose decoded polynomial is the
// geometric quantity. For an n x n matrix with entries x_1..x_{n^2} in
// row-major order, the determinant detector holds one ket per permutation
// sigma, with the bits (r-1)*n + sigma(r) - 1 set and coefficient sign(sigma).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "qgeom/errors.hpp"
#include "qgeom/poly.hpp"
#include "qgeom/statevector.hpp"

namespace qgeom {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

// n x n real matrix, row-major.
class SquareMatrix {
public:
    SquareMatrix(std::size_t n, std::vector<double> entries) : n_(n), entries_(std::move(entries)) {
        if (n_ == 0) throw DomainError("matrix order must be at least 1");
        if (entries_.size() != n_ * n_) throw DimensionError("entry count is not n*n");
    }

    static SquareMatrix from_rows(const std::vector<std::vector<double>>& rows) {
        const std::size_t n = rows.size();
        std::vector<double> entries;
        entries.reserve(n * n);
        for (const auto& row : rows) {
            if (row.size() != n) {
                throw DimensionError("matrix is not square: " + std::to_string(n) + " rows but a row of " +
                                     std::to_string(row.size()));
            }
            entries.insert(entries.end(), row.begin(), row.end());
        }
        return SquareMatrix(n, std::move(entries));
    }

    static SquareMatrix identity(std::size_t n) {
        std::vector<double> e(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
        return SquareMatrix(n, std::move(e));
    }

    std::size_t order() const noexcept { return n_; }
    double operator()(std::size_t r, std::size_t c) const { return entries_[r * n_ + c]; }
    double& operator()(std::size_t r, std::size_t c) { return entries_[r * n_ + c]; }
    const std::vector<double>& entries() const noexcept { return entries_; }

    // Variables x_1..x_{n^2} in row-major order.
    Assignment as_assignment() const { return Assignment(entries_.begin(), entries_.end()); }

private:
    std::size_t n_;
    std::vector<double> entries_;
};

enum class AreaMode {
    PaperLiteral,  // x1*x3 - x2*x4, the expression printed next to the 2D area
    Determinant,   // x1*x4 - x2*x3, the determinant of [[x1, x2], [x3, x4]]
};

inline SparseState area2d_detector(AreaMode mode) {
    if (mode == AreaMode::PaperLiteral) return sparse_from_labels({{"0101", 1.0}, {"1010", -1.0}});
    return sparse_from_labels({{"1001", 1.0}, {"0110", -1.0}});
}

// Signed area spanned by v1 and v2.
inline double area2d(const Vec2& v1, const Vec2& v2, AreaMode mode = AreaMode::Determinant) {
    return eval_via_inner(area2d_detector(mode), Assignment{v1.x, v1.y, v2.x, v2.y}).real();
}

// Detectors for the i, j and k components of v1 x v2 over (x1..x6) = (v1, v2).
inline std::array<SparseState, 3> cross3d_detectors() {
    return {
        sparse_from_labels({{"100010", 1.0}, {"010100", -1.0}}),  // x2 x6 - x3 x5
        sparse_from_labels({{"001100", 1.0}, {"100001", -1.0}}),  // x3 x4 - x1 x6
        sparse_from_labels({{"010001", 1.0}, {"001010", -1.0}}),  // x1 x5 - x2 x4
    };
}

inline Vec3 cross3d(const Vec3& v1, const Vec3& v2) {
    const Assignment x{v1.x, v1.y, v1.z, v2.x, v2.y, v2.z};
    const auto detectors = cross3d_detectors();
    const Statevector coefficients = product_state(x);
    return {inner_product(detectors[0], coefficients).real(), inner_product(detectors[1], coefficients).real(),
            inner_product(detectors[2], coefficients).real()};
}

inline constexpr std::size_t kMaxQuantumDetOrder = 4;

namespace detail {

// +1 for even permutations, -1 for odd, by inversion count.
inline int permutation_sign(const std::vector<std::size_t>& perm) {
    int sign = 1;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        for (std::size_t j = i + 1; j < perm.size(); ++j) {
            if (perm[i] > perm[j]) sign = -sign;
        }
    }
    return sign;
}

inline void check_quantum_order(std::size_t n) {
    if (n < 1) throw DomainError("determinant order must be at least 1");
    if (n > kMaxQuantumDetOrder) {
        throw CapacityError("quantum determinant path supports n <= " + std::to_string(kMaxQuantumDetOrder) +
                            " (n^2 qubits), got n = " + std::to_string(n));
    }
}

}  // namespace detail

// Determinant detector over n^2 qubits; terms in lexicographic permutation order.
inline SparseState det_detector(std::size_t n) {
    detail::check_quantum_order(n);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    SparseState detector(n * n);
    do {
        BasisIndex index = 0;
        for (std::size_t r = 0; r < n; ++r) index |= BasisIndex{1} << (r * n + perm[r]);
        detector.add(index, static_cast<double>(detail::permutation_sign(perm)));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return detector;
}

inline double det_quantum(const SquareMatrix& m) {
    const SparseState detector = det_detector(m.order());
    return eval_via_inner(detector, m.as_assignment()).real();
}

// Signed volume of the parallelepiped with edge vectors v1, v2, v3.
inline double volume(const Vec3& v1, const Vec3& v2, const Vec3& v3) {
    return det_quantum(SquareMatrix(3, {v1.x, v1.y, v1.z, v2.x, v2.y, v2.z, v3.x, v3.y, v3.z}));
}

inline constexpr std::size_t kMaxLeibnizOrder = 5;

// Leibniz expansion up to order 5 (exact on integer entries), Gaussian
// elimination with partial pivoting beyond.
inline double det_classical(const SquareMatrix& m) {
    const std::size_t n = m.order();
    if (n <= kMaxLeibnizOrder) {
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        double total = 0.0;
        do {
            double product = detail::permutation_sign(perm);
            for (std::size_t r = 0; r < n; ++r) product *= m(r, perm[r]);
            total += product;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return total;
    }

    SquareMatrix a = m;
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        }
        if (a(pivot, col) == 0.0) return 0.0;
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
            det = -det;
        }
        det *= a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a(r, col) / a(col, col);
            for (std::size_t c = col; c < n; ++c) a(r, c) -= factor * a(col, c);
        }
    }
    return det;
}

}  // namespace qgeom

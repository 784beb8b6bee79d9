#pragma once

// Exact integer linear algebra: Smith normal form, kernels of integer
// matrices acting on Z_d^n, and fraction-free determinants.

#include "graphqec/matrix.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace graphqec {

namespace detail {

template <class T>
T abs_value(const T& x) {
    return x < 0 ? T(-x) : x;
}

}  // namespace detail

/// Fraction-free (Bareiss) determinant with row pivoting; exact for any
/// integer type wide enough to hold the intermediate minors.
template <class T>
T det_exact(Matrix<T> a) {
    if (!a.square()) throw std::invalid_argument("determinant of a non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return T(1);
    T sign(1);
    T prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return T(0);
            a.swap_rows(k, p);
            sign = -sign;
        }
        const T pivot = a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * pivot - a(i, k) * a(k, j)) / prev;
            a(i, k) = 0;
        }
        prev = pivot;
    }
    return sign * a(n - 1, n - 1);
}

/// A = U * S * V with U, V unimodular and S in Smith form. `V_inv` is kept
/// because kernels are read off in the coordinates y = V x.
struct SmithDecomposition {
    IntMatrix U;
    IntMatrix S;
    IntMatrix V;
    IntMatrix U_inv;
    IntMatrix V_inv;

    std::size_t rank() const {
        std::size_t r = 0;
        while (r < std::min(S.rows(), S.cols()) && S(r, r) != 0) ++r;
        return r;
    }
    /// s_i, zero past the diagonal.
    BigInt invariant(std::size_t i) const {
        return i < std::min(S.rows(), S.cols()) ? S(i, i) : BigInt(0);
    }
};

/// Smith normal form. Pivot rule: smallest nonzero absolute value in the
/// active block, ties broken by lowest (row, col).
inline SmithDecomposition smith_normal_form(const IntMatrix& a) {
    const std::size_t r = a.rows();
    const std::size_t c = a.cols();
    IntMatrix s = a;
    IntMatrix p = IntMatrix::identity(r);      // P A Q = S
    IntMatrix p_inv = IntMatrix::identity(r);
    IntMatrix q = IntMatrix::identity(c);
    IntMatrix q_inv = IntMatrix::identity(c);

    auto row_add = [&](std::size_t dst, std::size_t src, const BigInt& k) {
        s.add_row(dst, src, k);
        p.add_row(dst, src, k);
        p_inv.add_col(src, dst, BigInt(-k));
    };
    auto row_swap = [&](std::size_t x, std::size_t y) {
        s.swap_rows(x, y);
        p.swap_rows(x, y);
        p_inv.swap_cols(x, y);
    };
    auto row_negate = [&](std::size_t x) {
        for (std::size_t j = 0; j < c; ++j) s(x, j) = -s(x, j);
        for (std::size_t j = 0; j < r; ++j) p(x, j) = -p(x, j);
        for (std::size_t i = 0; i < r; ++i) p_inv(i, x) = -p_inv(i, x);
    };
    auto col_add = [&](std::size_t dst, std::size_t src, const BigInt& k) {
        s.add_col(dst, src, k);
        q.add_col(dst, src, k);
        q_inv.add_row(src, dst, BigInt(-k));
    };
    auto col_swap = [&](std::size_t x, std::size_t y) {
        s.swap_cols(x, y);
        q.swap_cols(x, y);
        q_inv.swap_rows(x, y);
    };

    auto find_pivot = [&](std::size_t t) -> std::optional<std::pair<std::size_t, std::size_t>> {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        BigInt best_abs;
        for (std::size_t i = t; i < r; ++i)
            for (std::size_t j = t; j < c; ++j) {
                if (s(i, j) == 0) continue;
                BigInt v = detail::abs_value(s(i, j));
                if (!best || v < best_abs) {
                    best = {i, j};
                    best_abs = std::move(v);
                }
            }
        return best;
    };

    const std::size_t diag = std::min(r, c);
    for (std::size_t t = 0; t < diag; ++t) {
        auto piv = find_pivot(t);
        if (!piv) break;
        for (;;) {
            row_swap(t, piv->first);
            col_swap(t, piv->second);
            bool clean = true;
            for (std::size_t i = t + 1; i < r; ++i) {
                if (s(i, t) == 0) continue;
                const BigInt qt = s(i, t) / s(t, t);
                if (qt != 0) row_add(i, t, BigInt(-qt));
                if (s(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                if (s(t, j) == 0) continue;
                const BigInt qt = s(t, j) / s(t, t);
                if (qt != 0) col_add(j, t, BigInt(-qt));
                if (s(t, j) != 0) clean = false;
            }
            if (clean) {
                // Enforce s_t | every entry of the remaining block.
                std::optional<std::size_t> bad_row;
                for (std::size_t i = t + 1; i < r && !bad_row; ++i)
                    for (std::size_t j = t + 1; j < c; ++j)
                        if (s(i, j) % s(t, t) != 0) {
                            bad_row = i;
                            break;
                        }
                if (!bad_row) break;
                row_add(t, *bad_row, BigInt(1));
            }
            piv = find_pivot(t);
        }
        if (s(t, t) < 0) row_negate(t);
    }

    return SmithDecomposition{std::move(p_inv), std::move(s), std::move(q_inv), std::move(p), std::move(q)};
}

/// Generating set of {x in Z_d^n : A x = 0 mod d}.
struct KernelBasis {
    std::int64_t modulus = 0;
    std::vector<std::vector<std::int64_t>> generators;

    bool trivial() const { return generators.empty(); }
};

inline KernelBasis kernel_mod(const SmithDecomposition& snf, std::size_t cols, std::int64_t d) {
    if (d < 2) throw std::invalid_argument("modulus must be >= 2");
    KernelBasis out{d, {}};
    const IntMatrix& q = snf.V_inv;
    for (std::size_t i = 0; i < cols; ++i) {
        // y_i ranges over the multiples of d / gcd(s_i, d).
        const std::int64_t si = mod_floor(snf.invariant(i), d);
        const std::int64_t step = d / std::gcd(si, d);
        if (step == d) continue;
        std::vector<std::int64_t> gen(cols);
        bool nonzero = false;
        for (std::size_t k = 0; k < cols; ++k) {
            gen[k] = static_cast<std::int64_t>(
                (static_cast<__int128>(mod_floor(q(k, i), d)) * step) % d);
            nonzero = nonzero || gen[k] != 0;
        }
        if (nonzero) out.generators.push_back(std::move(gen));
    }
    return out;
}

inline KernelBasis kernel_mod(const IntMatrix& a, std::int64_t d) {
    if (d < 2) throw std::invalid_argument("modulus must be >= 2");
    return kernel_mod(smith_normal_form(a), a.cols(), d);
}

inline bool kernel_trivial(const IntMatrix& a, std::int64_t d) { return kernel_mod(a, d).trivial(); }

/// A x mod d.
inline std::vector<std::int64_t> mul_mod(const IntMatrix& a, std::span<const std::int64_t> x, std::int64_t d) {
    if (x.size() != a.cols()) throw std::invalid_argument("matrix-vector product: dimension mismatch");
    std::vector<std::int64_t> y(a.rows(), 0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        __int128 acc = 0;
        for (std::size_t j = 0; j < a.cols(); ++j)
            acc = (acc + static_cast<__int128>(mod_floor(a(i, j), d)) * mod_floor(x[j], d)) % d;
        y[i] = static_cast<std::int64_t>(acc);
    }
    return y;
}

inline bool is_zero_mod(std::span<const std::int64_t> v, std::int64_t d) {
    return std::all_of(v.begin(), v.end(), [d](std::int64_t x) { return mod_floor(x, d) == 0; });
}

}  // namespace graphqec

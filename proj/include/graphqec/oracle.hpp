#pragma once

// Brute-force ground truth: the coding isometry as a dense complex matrix and
// a direct numerical test of the Knill-Laflamme factorization on rank-one
// error operators |g^E><h^E| (x) 1_I.
//
// Normalization is the counting measure: the standard basis of L^2(G) indexed
// by group elements is orthonormal, so the isometry has entries
//     |G|^{-|Y|/2} exp(2 pi i sum_{u<v} Gamma(u,v) t(g_u, g_v)).

#include "graphqec/abelian.hpp"
#include "graphqec/graph.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace graphqec {

inline constexpr std::uint64_t kDefaultOracleCap = std::uint64_t{1} << 22;
inline constexpr double kDefaultOracleTol = 1e-8;

using Complex = std::complex<double>;

struct CodeIsometry {
    FiniteAbelianGroup group{std::vector<std::int64_t>{2}};
    std::string graph;
    VertexSet inputs;
    VertexSet outputs;
    std::size_t rows = 0;  ///< |G|^{|Y|}, lexicographic over output tuples
    std::size_t cols = 0;  ///< |G|^{|X|}, lexicographic over input tuples
    std::vector<Complex> data;

    const Complex& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

namespace detail {

/// |G|^k, or nullopt when it exceeds `cap`.
inline std::optional<std::uint64_t> bounded_power(std::uint64_t base, std::size_t k, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (r > cap / base) return std::nullopt;
        r *= base;
    }
    return r <= cap ? std::optional<std::uint64_t>(r) : std::nullopt;
}

}  // namespace detail

inline bool within_oracle_cap(const WeightedGraph& g, const FiniteAbelianGroup& grp,
                              std::uint64_t cap = kDefaultOracleCap) {
    return detail::bounded_power(grp.order(), g.size(), cap).has_value();
}

inline CodeIsometry build_isometry(const WeightedGraph& g, const FiniteAbelianGroup& grp,
                                   std::uint64_t cap = kDefaultOracleCap) {
    const std::size_t n = g.size();
    if (!within_oracle_cap(g, grp, cap))
        throw CapExceeded("oracle size |G|^(|X|+|Y|) exceeds cap " + std::to_string(cap));

    const auto elems = grp.enumerate_elements(cap);
    const std::size_t q = elems.size();
    const std::int64_t period = grp.exponent();

    std::vector<std::int64_t> chi_table(q * q);
    for (std::size_t a = 0; a < q; ++a)
        for (std::size_t b = 0; b < q; ++b) chi_table[a * q + b] = grp.chi_numerator(elems[a], elems[b]);

    std::vector<Complex> roots(static_cast<std::size_t>(period));
    for (std::int64_t k = 0; k < period; ++k) roots[static_cast<std::size_t>(k)] = Phase(k, period).to_complex();

    struct Link {
        std::size_t u, v;
        std::int64_t w;
    };
    std::vector<Link> links;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (g.weight(u, v) != 0) links.push_back({u, v, mod_floor(g.weight(u, v), period)});

    CodeIsometry iso;
    iso.group = grp;
    iso.graph = g.name();
    iso.inputs = g.inputs();
    iso.outputs = g.outputs();
    iso.rows = static_cast<std::size_t>(*detail::bounded_power(q, g.outputs().size(), cap));
    iso.cols = static_cast<std::size_t>(*detail::bounded_power(q, g.inputs().size(), cap));
    iso.data.assign(iso.rows * iso.cols, Complex{});
    const double norm = std::pow(static_cast<double>(q), -0.5 * static_cast<double>(g.outputs().size()));

    // assignment[v]: element index of vertex v.
    std::vector<std::size_t> assignment(n, 0);
    for (std::size_t r = 0; r < iso.rows; ++r) {
        std::size_t rr = r;
        for (std::size_t k = g.outputs().size(); k-- > 0;) {
            assignment[g.outputs()[k]] = rr % q;
            rr /= q;
        }
        for (std::size_t c = 0; c < iso.cols; ++c) {
            std::size_t cc = c;
            for (std::size_t k = g.inputs().size(); k-- > 0;) {
                assignment[g.inputs()[k]] = cc % q;
                cc /= q;
            }
            __int128 phase = 0;
            for (const Link& l : links)
                phase += static_cast<__int128>(l.w) * chi_table[assignment[l.u] * q + assignment[l.v]];
            iso.data[r * iso.cols + c] = norm * roots[static_cast<std::size_t>(phase % period)];
        }
    }
    return iso;
}

/// V^dagger V equals the identity entrywise within `tol`.
inline bool check_isometry(const CodeIsometry& v, double tol = kDefaultOracleTol) {
    for (std::size_t a = 0; a < v.cols; ++a)
        for (std::size_t b = a; b < v.cols; ++b) {
            Complex s{};
            for (std::size_t r = 0; r < v.rows; ++r) s += std::conj(v.at(r, a)) * v.at(r, b);
            const Complex expected = a == b ? Complex{1.0} : Complex{};
            if (std::abs(s - expected) > tol) return false;
        }
    return true;
}

/// Proportionality scalar lambda(g^E, h^E) of V^dagger (|g^E><h^E| (x) 1) V,
/// keyed by the lexicographic indices of g^E and h^E in G^E.
using OmegaTable = std::map<std::pair<std::size_t, std::size_t>, Complex>;

namespace detail {

/// Row offsets of the E-coordinates and I-coordinates within the output index.
struct SplitIndex {
    std::vector<std::size_t> e_offsets;  ///< one per element of G^E
    std::vector<std::size_t> i_offsets;  ///< one per element of G^I
};

inline SplitIndex split_outputs(const CodeIsometry& v, const VertexSet& e) {
    const std::size_t q = v.group.order();
    const std::size_t ny = v.outputs.size();
    std::vector<std::size_t> stride(ny);
    std::size_t s = 1;
    for (std::size_t k = ny; k-- > 0;) {
        stride[k] = s;
        s *= q;
    }
    std::vector<std::size_t> e_pos, i_pos;
    for (std::size_t k = 0; k < ny; ++k)
        (std::binary_search(e.begin(), e.end(), v.outputs[k]) ? e_pos : i_pos).push_back(k);

    auto offsets = [&](const std::vector<std::size_t>& pos) {
        std::size_t count = 1;
        for (std::size_t i = 0; i < pos.size(); ++i) count *= q;
        std::vector<std::size_t> out(count);
        for (std::size_t idx = 0; idx < count; ++idx) {
            std::size_t rem = idx, off = 0;
            for (std::size_t k = pos.size(); k-- > 0;) {
                off += (rem % q) * stride[pos[k]];
                rem /= q;
            }
            out[idx] = off;
        }
        return out;
    };
    return {offsets(e_pos), offsets(i_pos)};
}

}  // namespace detail

/// Knill-Laflamme test for configuration E. Returns the lambda table when every
/// rank-one operator on E is compressed to a multiple of the identity, nullopt otherwise.
inline std::optional<OmegaTable> kl_factorization(const CodeIsometry& v, const VertexSet& e,
                                                  double tol = kDefaultOracleTol) {
    if (!is_subset(e, v.outputs)) throw GraphError("error configuration must be a subset of the output vertices");
    const auto split = detail::split_outputs(v, e);
    OmegaTable table;
    std::vector<Complex> m(v.cols * v.cols);
    for (std::size_t ge = 0; ge < split.e_offsets.size(); ++ge)
        for (std::size_t he = 0; he < split.e_offsets.size(); ++he) {
            std::fill(m.begin(), m.end(), Complex{});
            for (std::size_t off_i : split.i_offsets) {
                const std::size_t rg = split.e_offsets[ge] + off_i;
                const std::size_t rh = split.e_offsets[he] + off_i;
                for (std::size_t a = 0; a < v.cols; ++a) {
                    const Complex left = std::conj(v.at(rg, a));
                    for (std::size_t b = 0; b < v.cols; ++b) m[a * v.cols + b] += left * v.at(rh, b);
                }
            }
            const Complex lambda = m[0];
            for (std::size_t a = 0; a < v.cols; ++a)
                for (std::size_t b = 0; b < v.cols; ++b) {
                    const Complex expected = a == b ? lambda : Complex{};
                    if (std::abs(m[a * v.cols + b] - expected) > tol) return std::nullopt;
                }
            table.emplace(std::make_pair(ge, he), lambda);
        }
    return table;
}

inline bool kl_detects(const CodeIsometry& v, const VertexSet& e, double tol = kDefaultOracleTol) {
    return kl_factorization(v, e, tol).has_value();
}

inline bool kl_detects(const WeightedGraph& g, const FiniteAbelianGroup& grp, const VertexSet& e,
                       double tol = kDefaultOracleTol, std::uint64_t cap = kDefaultOracleCap) {
    return kl_detects(build_isometry(g, grp, cap), e, tol);
}

inline OmegaTable omega_table(const WeightedGraph& g, const FiniteAbelianGroup& grp, const VertexSet& e,
                              double tol = kDefaultOracleTol, std::uint64_t cap = kDefaultOracleCap) {
    auto t = kl_factorization(build_isometry(g, grp, cap), e, tol);
    if (!t) throw std::invalid_argument("omega_table: configuration is not detected");
    return std::move(*t);
}

}  // namespace graphqec

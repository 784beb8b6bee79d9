#pragma once

// Off-diagonal subdeterminants of symmetric 2m x 2m weight matrices, the
// primes they exclude, randomized weight search on a support skeleton, and the
// census of small 0/1 graphs whose off-diagonal blocks are all unimodular.

#include "graphqec/combinatorics.hpp"
#include "graphqec/graph.hpp"
#include "graphqec/matrix.hpp"
#include "graphqec/parallel.hpp"
#include "graphqec/zmod.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphqec {

/// Primes dividing a collection of integers. `all` marks that some integer was
/// zero, so every prime divides it.
struct PrimeSet {
    bool all = false;
    std::set<BigInt> primes;

    bool contains(const BigInt& p) const { return all || primes.count(p) > 0; }
    friend bool operator==(const PrimeSet&, const PrimeSet&) = default;
};

struct PartitionDet {
    VertexSet block;  ///< rows of the off-diagonal block; contains vertex 0
    BigInt det;
};

struct DeterminantReport {
    std::size_t m = 0;
    std::vector<PartitionDet> partitions;
    std::set<BigInt> det_set;
    PrimeSet bad_primes;
};

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

/// Prime factors of |n| by trial division; n must be nonzero.
inline std::set<BigInt> prime_factors(BigInt n) {
    if (n == 0) throw std::invalid_argument("prime_factors of zero");
    if (n < 0) n = -n;
    std::set<BigInt> out;
    for (BigInt p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        out.insert(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) out.insert(n);
    return out;
}

inline PrimeSet bad_primes_of(const std::vector<PartitionDet>& parts) {
    PrimeSet ps;
    for (const auto& p : parts) {
        if (p.det == 0) {
            ps.all = true;
            continue;
        }
        for (auto& q : prime_factors(p.det)) ps.primes.insert(q);
    }
    return ps;
}

namespace detail {

inline void require_even_symmetric(const IntMatrix& gamma) {
    if (!gamma.square()) throw std::invalid_argument("weight matrix must be square");
    if (gamma.rows() == 0 || gamma.rows() % 2 != 0) throw std::invalid_argument("weight matrix must have even dimension");
    for (std::size_t i = 0; i < gamma.rows(); ++i) {
        if (gamma(i, i) != 0) throw std::invalid_argument("weight matrix must have zero diagonal");
        for (std::size_t j = i + 1; j < gamma.cols(); ++j)
            if (gamma(i, j) != gamma(j, i)) throw std::invalid_argument("weight matrix must be symmetric");
    }
}

inline VertexSet iota_set(std::size_t n) {
    VertexSet v(n);
    std::iota(v.begin(), v.end(), std::size_t{0});
    return v;
}

/// m-subsets of {0..2m-1} containing 0, lexicographic: one per unordered partition.
inline std::vector<VertexSet> half_partitions(std::size_t n) {
    const std::size_t m = n / 2;
    std::vector<VertexSet> out;
    VertexSet rest(n - 1);
    std::iota(rest.begin(), rest.end(), std::size_t{1});
    for (auto& c : combinations(rest, m - 1)) {
        VertexSet block{0};
        block.insert(block.end(), c.begin(), c.end());
        out.push_back(std::move(block));
    }
    return out;
}

template <class T>
Matrix<T> block(const Matrix<T>& a, const VertexSet& rows, const VertexSet& cols) {
    Matrix<T> b(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) b(i, j) = a(rows[i], cols[j]);
    return b;
}

}  // namespace detail

/// Determinant of every off-diagonal m x m block Gamma[I, complement(I)].
inline DeterminantReport offdiag_subdets(const IntMatrix& gamma) {
    detail::require_even_symmetric(gamma);
    DeterminantReport rep;
    rep.m = gamma.rows() / 2;
    const VertexSet all = detail::iota_set(gamma.rows());
    for (auto& blk : detail::half_partitions(gamma.rows())) {
        const VertexSet comp = set_difference(all, blk);
        BigInt d = det_exact(detail::block(gamma, blk, comp));
        rep.det_set.insert(d);
        rep.partitions.push_back(PartitionDet{std::move(blk), std::move(d)});
    }
    rep.bad_primes = bad_primes_of(rep.partitions);
    return rep;
}

/// Every off-diagonal block is invertible over Z_d.
inline bool is_strongly_ec(const IntMatrix& gamma, std::int64_t d) {
    if (!is_prime(d)) throw std::invalid_argument("is_strongly_ec: " + std::to_string(d) + " is not prime");
    return !offdiag_subdets(gamma).bad_primes.contains(BigInt(d));
}

/// Bad primes over the partitions that keep `fixed_inputs` together in one block.
inline PrimeSet restricted_bad_primes(const IntMatrix& gamma, const VertexSet& fixed_inputs) {
    const DeterminantReport rep = offdiag_subdets(gamma);
    const VertexSet fixed = normalize_vertex_set(fixed_inputs);
    if (fixed.size() > rep.m) throw std::invalid_argument("more fixed inputs than the block size");
    if (!fixed.empty() && fixed.back() >= gamma.rows()) throw std::invalid_argument("fixed input out of range");
    const VertexSet all = detail::iota_set(gamma.rows());
    std::vector<PartitionDet> relevant;
    for (const auto& p : rep.partitions)
        if (is_subset(fixed, p.block) || is_subset(fixed, set_difference(all, p.block))) relevant.push_back(p);
    return bad_primes_of(relevant);
}

// ---------------------------------------------------------------------------
// Weight search

/// Symmetric zero-diagonal support pattern of a 2m x 2m weight matrix.
class Skeleton {
public:
    explicit Skeleton(const IntMatrix& pattern) : n_(pattern.rows()), support_(n_ * n_, false) {
        if (!pattern.square() || n_ == 0 || n_ % 2 != 0)
            throw std::invalid_argument("skeleton must be a square matrix of even dimension");
        for (std::size_t i = 0; i < n_; ++i) {
            if (pattern(i, i) != 0) throw std::invalid_argument("skeleton must have zero diagonal");
            for (std::size_t j = 0; j < n_; ++j) {
                if ((pattern(i, j) != 0) != (pattern(j, i) != 0))
                    throw std::invalid_argument("skeleton must be symmetric");
                support_[i * n_ + j] = pattern(i, j) != 0;
            }
        }
    }

    std::size_t size() const noexcept { return n_; }
    std::size_t m() const noexcept { return n_ / 2; }
    bool allowed(std::size_t i, std::size_t j) const { return support_[i * n_ + j]; }
    std::size_t row_support(std::size_t i) const {
        std::size_t k = 0;
        for (std::size_t j = 0; j < n_; ++j) k += allowed(i, j);
        return k;
    }
    /// Rows with fewer than m admissible entries force a zero row in some block.
    bool admissible() const {
        for (std::size_t i = 0; i < n_; ++i)
            if (row_support(i) < m()) return false;
        return true;
    }

private:
    std::size_t n_;
    std::vector<bool> support_;
};

struct SearchResult {
    std::optional<IntMatrix> gamma;
    std::uint64_t attempts = 0;
    bool success() const { return gamma.has_value(); }
};

namespace detail {

/// All off-diagonal blocks nonsingular; stops at the first singular block.
/// Uses 64-bit Bareiss when Hadamard's bound guarantees no overflow.
inline bool all_blocks_nonsingular(const IntMatrix& gamma, std::int64_t max_abs,
                                   const std::vector<VertexSet>& parts, const VertexSet& all) {
    const std::size_t m = gamma.rows() / 2;
    const double hadamard = std::pow(std::sqrt(static_cast<double>(m)) * static_cast<double>(max_abs),
                                     static_cast<double>(m));
    const bool narrow = hadamard * hadamard < 4e18;
    Matrix<std::int64_t> small;
    if (narrow) {
        small = Matrix<std::int64_t>(gamma.rows(), gamma.cols());
        for (std::size_t i = 0; i < gamma.rows(); ++i)
            for (std::size_t j = 0; j < gamma.cols(); ++j) small(i, j) = gamma(i, j).convert_to<std::int64_t>();
    }
    for (const auto& blk : parts) {
        const VertexSet comp = set_difference(all, blk);
        const bool zero = narrow ? det_exact(block(small, blk, comp)) == 0 : det_exact(block(gamma, blk, comp)) == 0;
        if (zero) return false;
    }
    return true;
}

}  // namespace detail

/// Seeded random search for weights on `skel` in [-bound, bound] \ {0} such
/// that every off-diagonal block has nonzero determinant. Attempt k draws from
/// an engine seeded with (seed, k), so results do not depend on scheduling.
inline SearchResult search_weights(const Skeleton& skel, std::int64_t bound, std::uint64_t seed,
                                   std::uint64_t budget) {
    if (bound < 1) throw std::invalid_argument("weight bound must be >= 1");
    SearchResult res;
    if (!skel.admissible()) return res;

    const std::size_t n = skel.size();
    const auto parts = detail::half_partitions(n);
    const VertexSet all = detail::iota_set(n);
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (skel.allowed(i, j)) slots.emplace_back(i, j);

    std::uniform_int_distribution<std::int64_t> magnitude(1, bound);
    std::bernoulli_distribution negative(0.5);
    for (std::uint64_t attempt = 0; attempt < budget; ++attempt) {
        std::seed_seq sseq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                           static_cast<std::uint32_t>(attempt), static_cast<std::uint32_t>(attempt >> 32)};
        std::mt19937_64 rng(sseq);
        IntMatrix gamma(n, n);
        for (const auto& [i, j] : slots) {
            const std::int64_t w = negative(rng) ? -magnitude(rng) : magnitude(rng);
            gamma(i, j) = gamma(j, i) = w;
        }
        res.attempts = attempt + 1;
        if (detail::all_blocks_nonsingular(gamma, bound, parts, all)) {
            res.gamma = std::move(gamma);
            return res;
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// Census

struct CensusClass {
    std::string bits;  ///< upper triangle, pairs (i<j) in lexicographic order
    Matrix<std::int64_t> adjacency;

    std::string edge_list() const {
        std::string s;
        for (std::size_t i = 0; i < adjacency.rows(); ++i)
            for (std::size_t j = i + 1; j < adjacency.cols(); ++j)
                if (adjacency(i, j) != 0) s += (s.empty() ? "" : " ") + std::to_string(i) + "-" + std::to_string(j);
        return s;
    }
};

inline constexpr std::size_t kCensusCap = 8;

inline std::string adjacency_bits(const Matrix<std::int64_t>& a) {
    std::string s;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j) s += a(i, j) != 0 ? '1' : '0';
    return s;
}

inline Matrix<std::int64_t> adjacency_from_bits(const std::string& bits, std::size_t n) {
    Matrix<std::int64_t> a(n, n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j, ++k)
            if (k < bits.size() && bits[k] == '1') a(i, j) = a(j, i) = 1;
    if (k != bits.size()) throw std::invalid_argument("bit-string length does not match vertex count");
    return a;
}

/// Lexicographically smallest bit-string over all vertex relabelings.
inline std::string canonical_bits(const Matrix<std::int64_t>& a) {
    const std::size_t n = a.rows();
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    std::string best;
    do {
        std::string s;
        s.reserve(n * (n - 1) / 2);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += a(p[i], p[j]) != 0 ? '1' : '0';
        if (best.empty() || s < best) best = std::move(s);
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
}

/// Every off-diagonal (n/2) x (n/2) block has determinant +-1, i.e. is
/// invertible modulo every d >= 2.
inline bool all_offdiag_unimodular(const Matrix<std::int64_t>& a) {
    const std::size_t n = a.rows();
    const VertexSet all = detail::iota_set(n);
    for (const auto& blk : detail::half_partitions(n)) {
        const std::int64_t d = det_exact(detail::block(a, blk, set_difference(all, blk)));
        if (d != 1 && d != -1) return false;
    }
    return true;
}

inline std::vector<CensusClass> graph_census(std::size_t n, std::size_t workers = 1) {
    if (n == 0 || n % 2 != 0) throw std::invalid_argument("census needs an even vertex count");
    if (n > kCensusCap) throw CapExceeded("census limited to " + std::to_string(kCensusCap) + " vertices");
    const std::size_t pairs = n * (n - 1) / 2;
    const std::uint64_t total = std::uint64_t{1} << pairs;

    const std::size_t chunks = std::max<std::size_t>(workers, 1) * 16;
    std::vector<std::set<std::string>> found(chunks);
    parallel_for(chunks, workers, [&](std::size_t c) {
        Matrix<std::int64_t> a(n, n);
        for (std::uint64_t mask = c; mask < total; mask += chunks) {
            std::size_t k = 0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j, ++k) a(i, j) = a(j, i) = static_cast<std::int64_t>((mask >> k) & 1);
            if (all_offdiag_unimodular(a)) found[c].insert(canonical_bits(a));
        }
    });
    std::set<std::string> merged;
    for (auto& s : found) merged.insert(s.begin(), s.end());
    std::vector<CensusClass> out;
    for (const auto& bits : merged) out.push_back(CensusClass{bits, adjacency_from_bits(bits, n)});
    return out;
}

}  // namespace graphqec

#pragma once

// Finite abelian groups as products of cyclic factors Z_{d_1} x ... x Z_{d_r},
// carrying the standard symmetric bicharacter
//     chi(g, h) = exp(2 pi i * sum_i g_i h_i / d_i).

#include <algorithm>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphqec {

inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 20;

class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A root of unity exp(2 pi i * num/den), kept as an exact reduced fraction in [0, 1).
class Phase {
public:
    Phase() = default;
    Phase(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
        if (den <= 0) throw std::invalid_argument("phase denominator must be positive");
        normalize();
    }

    std::int64_t numerator() const noexcept { return num_; }
    std::int64_t denominator() const noexcept { return den_; }
    bool is_trivial() const noexcept { return num_ == 0; }

    std::complex<double> to_complex() const {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(num_) / static_cast<double>(den_);
        return std::polar(1.0, angle);
    }

    friend Phase operator+(const Phase& a, const Phase& b) {
        const std::int64_t l = std::lcm(a.den_, b.den_);
        const __int128 n = static_cast<__int128>(a.num_) * (l / a.den_) + static_cast<__int128>(b.num_) * (l / b.den_);
        return Phase(static_cast<std::int64_t>(n % l), l);
    }
    friend Phase operator-(const Phase& a) { return Phase(a.den_ - a.num_, a.den_); }
    friend Phase operator-(const Phase& a, const Phase& b) { return a + (-b); }
    /// chi^k
    friend Phase operator*(std::int64_t k, const Phase& a) {
        const __int128 n = static_cast<__int128>(k % a.den_) * a.num_;
        return Phase(static_cast<std::int64_t>(((n % a.den_) + a.den_) % a.den_), a.den_);
    }

    friend bool operator==(const Phase&, const Phase&) = default;

    std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

private:
    void normalize() {
        num_ %= den_;
        if (num_ < 0) num_ += den_;
        const std::int64_t g = std::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

struct GroupElement {
    std::vector<std::int64_t> residues;
    friend bool operator==(const GroupElement&, const GroupElement&) = default;
    friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

class FiniteAbelianGroup {
public:
    explicit FiniteAbelianGroup(std::vector<std::int64_t> factors) : factors_(std::move(factors)) {
        if (factors_.empty()) throw std::invalid_argument("group needs at least one cyclic factor");
        order_ = 1;
        exponent_ = 1;
        for (std::int64_t d : factors_) {
            if (d < 2) throw std::invalid_argument("cyclic factor must be >= 2, got " + std::to_string(d));
            if (order_ > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(d))
                throw std::overflow_error("group order overflows 64 bits");
            order_ *= static_cast<std::uint64_t>(d);
            exponent_ = std::lcm(exponent_, d);
        }
    }

    const std::vector<std::int64_t>& factors() const noexcept { return factors_; }
    std::size_t rank() const noexcept { return factors_.size(); }
    std::uint64_t order() const noexcept { return order_; }
    std::int64_t exponent() const noexcept { return exponent_; }

    GroupElement zero() const { return GroupElement{std::vector<std::int64_t>(rank(), 0)}; }

    GroupElement element(std::vector<std::int64_t> residues) const {
        if (residues.size() != rank()) throw std::invalid_argument("element length does not match group rank");
        for (std::size_t i = 0; i < rank(); ++i) residues[i] = reduce(residues[i], factors_[i]);
        return GroupElement{std::move(residues)};
    }

    bool contains(const GroupElement& g) const {
        if (g.residues.size() != rank()) return false;
        for (std::size_t i = 0; i < rank(); ++i)
            if (g.residues[i] < 0 || g.residues[i] >= factors_[i]) return false;
        return true;
    }

    GroupElement add(const GroupElement& g, const GroupElement& h) const {
        require(g);
        require(h);
        GroupElement r = g;
        for (std::size_t i = 0; i < rank(); ++i) r.residues[i] = (g.residues[i] + h.residues[i]) % factors_[i];
        return r;
    }

    GroupElement neg(const GroupElement& g) const {
        require(g);
        GroupElement r = g;
        for (std::size_t i = 0; i < rank(); ++i) r.residues[i] = (factors_[i] - g.residues[i]) % factors_[i];
        return r;
    }

    /// k * g
    GroupElement scale(std::int64_t k, const GroupElement& g) const {
        require(g);
        GroupElement r = g;
        for (std::size_t i = 0; i < rank(); ++i) {
            const std::int64_t d = factors_[i];
            r.residues[i] = static_cast<std::int64_t>(
                (static_cast<__int128>(reduce(k, d)) * g.residues[i]) % d);
        }
        return r;
    }

    /// Standard bicharacter exponent t(g, h) = sum_i g_i h_i / d_i (mod 1).
    Phase chi(const GroupElement& g, const GroupElement& h) const {
        require(g);
        require(h);
        __int128 num = 0;
        for (std::size_t i = 0; i < rank(); ++i) {
            const std::int64_t d = factors_[i];
            const __int128 term = (static_cast<__int128>(g.residues[i]) * h.residues[i]) % d;
            num = (num + term * (exponent_ / d)) % exponent_;
        }
        return Phase(static_cast<std::int64_t>(num), exponent_);
    }

    /// Numerator of chi(g, h) over the fixed denominator exponent().
    std::int64_t chi_numerator(const GroupElement& g, const GroupElement& h) const {
        __int128 num = 0;
        for (std::size_t i = 0; i < rank(); ++i) {
            const std::int64_t d = factors_[i];
            num = (num + ((static_cast<__int128>(g.residues[i]) * h.residues[i]) % d) * (exponent_ / d)) % exponent_;
        }
        return static_cast<std::int64_t>(num);
    }

    /// All elements, lexicographic in the residue tuple.
    std::vector<GroupElement> enumerate_elements(std::uint64_t cap = kDefaultEnumerationCap) const {
        check_cap(cap);
        std::vector<GroupElement> out;
        out.reserve(order_);
        GroupElement g = zero();
        for (std::uint64_t n = 0; n < order_; ++n) {
            out.push_back(g);
            for (std::size_t i = rank(); i-- > 0;) {
                if (++g.residues[i] < factors_[i]) break;
                g.residues[i] = 0;
            }
        }
        return out;
    }

    /// Brute-force check of sum_g chi(g, g') = |G| delta(g').
    bool check_nondegenerate(std::uint64_t cap = kDefaultEnumerationCap) const {
        const auto elems = enumerate_elements(cap);
        const double n = static_cast<double>(order_);
        for (const auto& gp : elems) {
            std::complex<double> sum = 0.0;
            for (const auto& g : elems) sum += chi(g, gp).to_complex();
            const bool is_zero = std::all_of(gp.residues.begin(), gp.residues.end(), [](auto r) { return r == 0; });
            const double expected = is_zero ? n : 0.0;
            if (std::abs(sum - expected) > 1e-9 * n) return false;
        }
        return true;
    }

    void check_cap(std::uint64_t cap) const {
        if (order_ > cap)
            throw CapExceeded("group order " + std::to_string(order_) + " exceeds enumeration cap " +
                              std::to_string(cap));
    }

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < rank(); ++i) s += (i ? "," : "") + std::to_string(factors_[i]);
        return s;
    }

    friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
        return a.factors_ == b.factors_;
    }

private:
    static std::int64_t reduce(std::int64_t a, std::int64_t d) {
        const std::int64_t r = a % d;
        return r < 0 ? r + d : r;
    }
    void require(const GroupElement& g) const {
        if (g.residues.size() != rank()) throw std::invalid_argument("element length does not match group rank");
        if (!contains(g)) throw std::invalid_argument("element residues not reduced for this group");
    }

    std::vector<std::int64_t> factors_;
    std::uint64_t order_ = 1;
    std::int64_t exponent_ = 1;
};

inline FiniteAbelianGroup make_group(std::vector<std::int64_t> factors) {
    return FiniteAbelianGroup(std::move(factors));
}

/// Parses the comma-separated factor literal, e.g. "2" or "2,4".
inline FiniteAbelianGroup parse_group(const std::string& text) {
    std::vector<std::int64_t> factors;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(tok, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad group literal '" + text + "'");
        }
        if (used != tok.size()) throw std::invalid_argument("bad group literal '" + text + "'");
        factors.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return FiniteAbelianGroup(std::move(factors));
}

}  // namespace graphqec

#pragma once

// Weighted graphs with an input/output vertex partition, the submatrix maps
// Gamma_L^K, and the built-in example graphs.

#include "graphqec/abelian.hpp"
#include "graphqec/matrix.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace graphqec {

using VertexSet = std::vector<std::size_t>;  // sorted, duplicate-free

class GraphError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline VertexSet normalize_vertex_set(VertexSet v) {
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end()) throw GraphError("duplicate vertex in set");
    return v;
}

/// Sorted union of two disjoint vertex sets.
inline VertexSet set_union(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline bool is_subset(const VertexSet& a, const VertexSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

class WeightedGraph {
public:
    WeightedGraph() = default;

    /// Validates symmetry, zero diagonal, and that the inputs leave at least one output.
    WeightedGraph(IntMatrix gamma, VertexSet inputs, std::string name = "graph")
        : gamma_(std::move(gamma)), name_(std::move(name)) {
        if (!gamma_.square()) throw GraphError("adjacency matrix must be square");
        const std::size_t n = gamma_.rows();
        for (std::size_t i = 0; i < n; ++i) {
            if (gamma_(i, i) != 0) throw GraphError("self-loop at vertex " + std::to_string(i));
            for (std::size_t j = i + 1; j < n; ++j)
                if (gamma_(i, j) != gamma_(j, i))
                    throw GraphError("asymmetric weight between " + std::to_string(i) + " and " + std::to_string(j));
        }
        set_inputs(std::move(inputs));
    }

    std::size_t size() const noexcept { return gamma_.rows(); }
    const IntMatrix& gamma() const noexcept { return gamma_; }
    const BigInt& weight(std::size_t u, std::size_t v) const { return gamma_(u, v); }
    const VertexSet& inputs() const noexcept { return inputs_; }
    const VertexSet& outputs() const noexcept { return outputs_; }
    const std::string& name() const noexcept { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    /// Same weights, new input set X; outputs become the complement.
    WeightedGraph with_inputs(VertexSet inputs) const {
        WeightedGraph g = *this;
        g.set_inputs(std::move(inputs));
        return g;
    }

    VertexSet neighbors(std::size_t v) const {
        VertexSet out;
        for (std::size_t u = 0; u < size(); ++u)
            if (gamma_(v, u) != 0) out.push_back(u);
        return out;
    }
    std::size_t degree(std::size_t v) const { return neighbors(v).size(); }

    std::size_t edge_count() const {
        std::size_t e = 0;
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = i + 1; j < size(); ++j)
                if (gamma_(i, j) != 0) ++e;
        return e;
    }

    /// Equality ignores the display name.
    friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
        return a.gamma_ == b.gamma_ && a.inputs_ == b.inputs_;
    }

private:
    void set_inputs(VertexSet inputs) {
        inputs_ = normalize_vertex_set(std::move(inputs));
        for (std::size_t x : inputs_)
            if (x >= size()) throw GraphError("input vertex " + std::to_string(x) + " out of range");
        outputs_.clear();
        for (std::size_t v = 0; v < size(); ++v)
            if (!std::binary_search(inputs_.begin(), inputs_.end(), v)) outputs_.push_back(v);
        if (outputs_.empty()) throw GraphError("graph needs at least one output vertex");
    }

    IntMatrix gamma_;
    VertexSet inputs_;
    VertexSet outputs_;
    std::string name_ = "graph";
};

/// Gamma_L^K: rows indexed by K, columns by L, both in vertex order.
inline IntMatrix submatrix(const WeightedGraph& g, const VertexSet& rows, const VertexSet& cols) {
    IntMatrix m(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = g.weight(rows[i], cols[j]);
    return m;
}

/// (sum_l M(k, l) v_l)_k with each group factor reduced separately.
inline std::vector<GroupElement> apply_map(const IntMatrix& m, const FiniteAbelianGroup& grp,
                                           const std::vector<GroupElement>& v) {
    if (v.size() != m.cols()) throw std::invalid_argument("apply_map: dimension mismatch");
    std::vector<GroupElement> out;
    out.reserve(m.rows());
    for (std::size_t k = 0; k < m.rows(); ++k) {
        GroupElement acc = grp.zero();
        for (std::size_t l = 0; l < m.cols(); ++l) {
            if (m(k, l) == 0) continue;
            const std::int64_t w = mod_floor(m(k, l), grp.exponent());
            acc = grp.add(acc, grp.scale(w, v[l]));
        }
        out.push_back(std::move(acc));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Text format
//
//   vertices: <n>
//   inputs: <comma-separated 0-based indices>
//   <u> <v> <w>          one undirected edge per line, w a nonzero integer
//
// '#' starts a comment. Unlisted pairs have weight 0.

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::size_t parse_index(const std::string& tok, std::size_t line) {
    std::size_t used = 0;
    long long v = -1;
    try {
        v = std::stoll(tok, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != tok.size() || v < 0)
        throw GraphError("line " + std::to_string(line) + ": bad vertex index '" + tok + "'");
    return static_cast<std::size_t>(v);
}

inline VertexSet parse_index_list(const std::string& text, std::size_t line) {
    VertexSet out;
    std::string t = trim(text);
    if (t.empty()) return out;
    std::stringstream ss(t);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_index(trim(tok), line));
    return out;
}

}  // namespace detail

/// Comma-separated vertex list, e.g. "1,2,3"; empty string gives the empty set.
inline VertexSet parse_vertex_list(const std::string& text) {
    return normalize_vertex_set(detail::parse_index_list(text, 0));
}

inline WeightedGraph parse_graph(const std::string& text, bool require_inputs = true) {
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    std::optional<std::size_t> n;
    std::optional<VertexSet> inputs;
    std::map<std::pair<std::size_t, std::size_t>, BigInt> edges;

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = detail::trim(raw.substr(0, raw.find('#')));
        if (line.empty()) continue;
        if (!n) {
            if (line.rfind("vertices:", 0) != 0)
                throw GraphError("line " + std::to_string(lineno) + ": expected 'vertices: <n>'");
            n = detail::parse_index(detail::trim(line.substr(9)), lineno);
            continue;
        }
        if (!inputs && line.rfind("inputs:", 0) == 0) {
            inputs = detail::parse_index_list(line.substr(7), lineno);
            continue;
        }
        if (!inputs && require_inputs)
            throw GraphError("line " + std::to_string(lineno) + ": expected 'inputs: <list>'");
        std::istringstream es(line);
        std::string su, sv, sw, extra;
        if (!(es >> su >> sv >> sw) || (es >> extra))
            throw GraphError("line " + std::to_string(lineno) + ": expected '<u> <v> <w>'");
        std::size_t u = detail::parse_index(su, lineno);
        std::size_t v = detail::parse_index(sv, lineno);
        BigInt w;
        try {
            w = BigInt(sw);
        } catch (const std::exception&) {
            throw GraphError("line " + std::to_string(lineno) + ": bad weight '" + sw + "'");
        }
        if (u == v) throw GraphError("line " + std::to_string(lineno) + ": self-loop at vertex " + su);
        if (u >= *n || v >= *n)
            throw GraphError("line " + std::to_string(lineno) + ": vertex index out of range");
        if (w == 0) throw GraphError("line " + std::to_string(lineno) + ": edge weight must be nonzero");
        if (u > v) std::swap(u, v);
        auto [it, fresh] = edges.emplace(std::make_pair(u, v), w);
        if (!fresh && it->second != w)
            throw GraphError("line " + std::to_string(lineno) + ": conflicting weights for edge " +
                             std::to_string(u) + "-" + std::to_string(v));
    }
    if (!n) throw GraphError("missing 'vertices:' header");
    if (!inputs && require_inputs) throw GraphError("missing 'inputs:' line");

    IntMatrix gamma(*n, *n);
    for (const auto& [uv, w] : edges) {
        gamma(uv.first, uv.second) = w;
        gamma(uv.second, uv.first) = w;
    }
    VertexSet x = inputs.value_or(VertexSet{});
    std::sort(x.begin(), x.end());
    if (std::adjacent_find(x.begin(), x.end()) != x.end()) throw GraphError("duplicate input vertex");
    return WeightedGraph(std::move(gamma), std::move(x));
}

inline std::string serialize_graph(const WeightedGraph& g) {
    std::ostringstream out;
    out << "vertices: " << g.size() << "\n";
    out << "inputs: ";
    for (std::size_t i = 0; i < g.inputs().size(); ++i) out << (i ? "," : "") << g.inputs()[i];
    out << "\n";
    for (std::size_t u = 0; u < g.size(); ++u)
        for (std::size_t v = u + 1; v < g.size(); ++v)
            if (g.weight(u, v) != 0) out << u << " " << v << " " << g.weight(u, v) << "\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Built-in graphs

/// Hub vertex 0 (input) joined to a pentagon 1-2-3-4-5-1 of outputs.
inline WeightedGraph wheel_code() {
    IntMatrix g(6, 6);
    auto link = [&](std::size_t a, std::size_t b) { g(a, b) = g(b, a) = 1; };
    for (std::size_t v = 1; v <= 5; ++v) {
        link(0, v);
        link(v, v % 5 + 1);
    }
    return WeightedGraph(std::move(g), {0}, "wheel");
}

/// The wheel's outputs doubled into pairs {2i-1, 2i}. Each output is joined to
/// the hub, to its partner, and to all four vertices of the two adjacent pairs.
inline WeightedGraph tenfold_code() {
    IntMatrix g(11, 11);
    auto pair_of = [](std::size_t v) { return (v - 1) / 2; };  // 0..4
    for (std::size_t u = 1; u <= 10; ++u) {
        g(0, u) = g(u, 0) = 1;
        for (std::size_t v = u + 1; v <= 10; ++v) {
            const std::size_t pu = pair_of(u);
            const std::size_t pv = pair_of(v);
            const std::size_t gap = (pu + 5 - pv) % 5;
            if (pu == pv || gap == 1 || gap == 4) g(u, v) = g(v, u) = 1;
        }
    }
    return WeightedGraph(std::move(g), {0}, "tenfold");
}

/// 8x8 symmetric weight matrix whose off-diagonal 4x4 blocks are all nonsingular.
inline IntMatrix matrix19() {
    return to_int_matrix({
        {0, 0, 1, 0, 1, 1, 1, 0},
        {0, 0, 0, 1, 1, 1, 0, 1},
        {1, 0, 0, 0, 2, 0, -1, 1},
        {0, 1, 0, 0, 0, 1, 2, -2},
        {1, 1, 2, 0, 0, 0, -2, 0},
        {1, 1, 0, 1, 0, 0, 0, -1},
        {1, 0, -1, 2, -2, 0, 0, 0},
        {0, 1, 1, -2, 0, -1, 0, 0},
    });
}

inline WeightedGraph matrix19_code(VertexSet inputs) {
    inputs = normalize_vertex_set(std::move(inputs));
    if (inputs.empty() || inputs.size() > 2) throw GraphError("matrix19 takes one or two input vertices");
    if (inputs.back() >= 8) throw GraphError("matrix19 input vertex out of range");
    return WeightedGraph(matrix19(), std::move(inputs), "matrix19");
}

}  // namespace graphqec

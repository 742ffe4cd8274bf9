#pragma once

// The supersingular l-isogeny graph over F_{p^2} and its clump checks.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "hdrflow/hecke/modular_polynomial.hpp"
#include "hdrflow/locus/supersingular_locus.hpp"
#include "hdrflow/util/parallel.hpp"

namespace hdrflow {

struct IsogenyEdge
{
    FqElement target;
    int multiplicity;

    friend bool operator==(const IsogenyEdge &, const IsogenyEdge &) = default;
};

struct IsogenyGraph
{
    std::uint64_t p = 0;
    int l = 0;
    Field field;                                   // F_{p^2}
    std::vector<FqElement> vertices;               // the supersingular locus, ascending
    std::vector<std::vector<IsogenyEdge>> adjacency; // roots of Phi_l(v, Y), ascending

    int out_degree(std::size_t v) const
    {
        int d = 0;
        for (const auto &e : adjacency[v])
            d += e.multiplicity;
        return d;
    }

    std::ptrdiff_t index_of(const FqElement &j) const
    {
        auto it = std::lower_bound(vertices.begin(), vertices.end(), j);
        return it != vertices.end() && *it == j ? it - vertices.begin() : -1;
    }

    int multiplicity(std::size_t from, const FqElement &to) const
    {
        for (const auto &e : adjacency[from])
            if (e.target == to)
                return e.multiplicity;
        return 0;
    }

    /// "j1,j2,multiplicity" lines, in vertex then neighbour order.
    std::vector<std::string> edge_list() const
    {
        std::vector<std::string> out;
        for (std::size_t v = 0; v < vertices.size(); ++v)
            for (const auto &e : adjacency[v])
                out.push_back(vertices[v].to_string() + "," + e.target.to_string() + "," + std::to_string(e.multiplicity));
        return out;
    }
};

namespace detail {

inline void check_graph_args(std::uint64_t p, int l)
{
    check_level(l);
    if (p == static_cast<std::uint64_t>(l))
        raise(ErrorKind::UnsupportedLevel, "level must differ from the characteristic");
}

} // namespace detail

/// Graph on a precomputed locus.
inline IsogenyGraph build_isogeny_graph(const SupersingularLocus &locus, int l, unsigned workers = 1)
{
    detail::check_graph_args(locus.p, l);
    const ModularPolynomial &phi = modular_polynomial(l);
    IsogenyGraph g;
    g.p = locus.p;
    g.l = l;
    g.field = locus.field;
    g.vertices = locus.j_values;
    g.adjacency = parallel_map(g.vertices.size(), workers, [&](std::size_t v) {
        std::vector<IsogenyEdge> edges;
        for (const auto &[root, mult] : roots_in_fq(phi.specialize_x(g.vertices[v])))
            edges.push_back({root, mult});
        return edges;
    });
    return g;
}

inline IsogenyGraph build_isogeny_graph(std::uint64_t p, int l, unsigned workers = 1)
{
    detail::check_graph_args(p, l);
    return build_isogeny_graph(enumerate_supersingular(p, workers), l, workers);
}

struct ClumpReport
{
    std::uint64_t p = 0;
    int l = 0;
    std::size_t vertex_count = 0;
    std::size_t edge_count = 0;     // distinct (source, target) pairs
    std::uint64_t edge_weight = 0;  // edges counted with multiplicity
    bool closed = false;
    bool regular = false;
    bool connected = false;

    bool pass() const noexcept { return closed && regular; }

    friend bool operator==(const ClumpReport &, const ClumpReport &) = default;
};

inline ClumpReport verify_clump(const IsogenyGraph &g)
{
    ClumpReport r;
    r.p = g.p;
    r.l = g.l;
    r.vertex_count = g.vertices.size();
    r.closed = true;
    r.regular = true;
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        r.edge_count += g.adjacency[v].size();
        r.edge_weight += static_cast<std::uint64_t>(g.out_degree(v));
        if (g.out_degree(v) != g.l + 1)
            r.regular = false;
        for (const auto &e : g.adjacency[v])
            if (g.index_of(e.target) < 0)
                r.closed = false;
    }
    std::vector<char> seen(g.vertices.size(), 0);
    std::vector<std::size_t> stack;
    if (!g.vertices.empty()) {
        seen[0] = 1;
        stack.push_back(0);
    }
    std::size_t reached = stack.size();
    while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        for (const auto &e : g.adjacency[v]) {
            const auto w = g.index_of(e.target);
            if (w >= 0 && !seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++reached;
                stack.push_back(static_cast<std::size_t>(w));
            }
        }
    }
    r.connected = reached == g.vertices.size();
    return r;
}

inline ClumpReport verify_clump(std::uint64_t p, int l, unsigned workers = 1)
{
    return verify_clump(build_isogeny_graph(p, l, workers));
}

} // namespace hdrflow

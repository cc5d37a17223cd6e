#pragma once

// Brute-force reference implementations used only by the tests. They share
// no code with the library kernels beyond the Graph container.

#include <cubehom/graph.hpp>
#include <cubehom/rational.hpp>
#include <cubehom/vertex_set.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

inline auto frac(long num, long den) -> cubehom::Rational
{
    cubehom::Rational r{cubehom::BigInt(num), cubehom::BigInt(den)};
    r.canonicalize();
    return r;
}

namespace oracle
{
    using cubehom::BigInt;
    using cubehom::Graph;
    using cubehom::Rational;
    using cubehom::Vertex;

    /// Every map V(H) -> V(G), counting those that preserve edges and send
    /// all of `same` to one vertex.
    inline auto hom_count(const Graph & h, const Graph & g, std::uint64_t same = 0, bool injective = false) -> BigInt
    {
        const std::size_t vh = h.order(), n = g.order();
        std::vector<Vertex> f(vh, 0);
        auto edges = h.edges();
        BigInt total = 0;
        if (vh == 0)
            return 1;
        if (n == 0)
            return 0;
        while (true) {
            bool ok = true;
            for (auto [u, v] : edges)
                if (! g.adjacent(f[static_cast<std::size_t>(u)], f[static_cast<std::size_t>(v)])) {
                    ok = false;
                    break;
                }
            if (ok && same) {
                Vertex target = -1;
                for (std::size_t v = 0; v < vh && ok; ++v)
                    if ((same >> v) & 1u) {
                        if (target < 0)
                            target = f[v];
                        else if (f[v] != target)
                            ok = false;
                    }
            }
            if (ok && injective) {
                auto sorted = f;
                std::sort(sorted.begin(), sorted.end());
                ok = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
            }
            if (ok)
                ++total;
            std::size_t i = 0;
            while (i < vh && static_cast<std::size_t>(++f[i]) == n)
                f[i++] = 0;
            if (i == vh)
                break;
        }
        return total;
    }

    /// All set partitions of {0..m-1} as block-label vectors (restricted growth strings).
    inline auto set_partitions(std::size_t m) -> std::vector<std::vector<int>>
    {
        std::vector<std::vector<int>> out;
        std::vector<int> a(m, 0);
        std::function<void(std::size_t, int)> rec = [&](std::size_t i, int blocks) {
            if (i == m) {
                out.push_back(a);
                return;
            }
            for (int b = 0; b <= blocks; ++b) {
                a[i] = b;
                rec(i + 1, std::max(blocks, b + 1));
            }
        };
        rec(0, 0);
        return out;
    }

    /// Quotient of H by a partition; nullopt if some block contains an edge.
    inline auto partition_quotient(const Graph & h, const std::vector<int> & block) -> std::optional<Graph>
    {
        int nb = block.empty() ? 0 : *std::max_element(block.begin(), block.end()) + 1;
        std::vector<cubehom::Edge> edges;
        for (auto [u, v] : h.edges()) {
            int a = block[static_cast<std::size_t>(u)], b = block[static_cast<std::size_t>(v)];
            if (a == b)
                return std::nullopt;
            edges.emplace_back(std::min(a, b), std::max(a, b));
        }
        return Graph::from_edges(static_cast<std::size_t>(nb), edges);
    }

    /// Moebius inversion on the partition lattice:
    /// inj(H,G) = sum_pi mu(0,pi) hom(H/pi, G), mu = prod (-1)^{|B|-1}(|B|-1)!.
    inline auto injective_by_partitions(const Graph & h, const Graph & g, const std::function<BigInt(const Graph &, const Graph &)> & hom) -> BigInt
    {
        BigInt total = 0;
        for (auto & p : set_partitions(h.order())) {
            auto q = partition_quotient(h, p);
            if (! q)
                continue;
            std::map<int, int> sizes;
            for (int b : p)
                ++sizes[b];
            BigInt mu = 1;
            for (auto [b, s] : sizes) {
                (void) b;
                BigInt f = 1;
                for (int t = 2; t < s; ++t)
                    f *= t;
                mu *= (s % 2 == 1) ? f : BigInt(-f);
            }
            total += mu * hom(*q, g);
        }
        return total;
    }

    /// Every closed walk of length L with its weight 1/prod d(u_i).
    inline void closed_walks(const Graph & g, std::size_t len, const std::function<void(const std::vector<Vertex> &)> & visit)
    {
        std::vector<Vertex> w;
        std::function<void()> rec = [&]() {
            if (w.size() == len) {
                if (g.adjacent(w.back(), w.front()))
                    visit(w);
                return;
            }
            for (Vertex v : g.neighbours(w.back())) {
                w.push_back(v);
                rec();
                w.pop_back();
            }
        };
        for (std::size_t s = 0; s < g.order(); ++s) {
            w.assign(1, static_cast<Vertex>(s));
            if (len == 1)
                continue;
            rec();
        }
    }

    inline auto walk_weight(const Graph & g, const std::vector<Vertex> & w) -> Rational
    {
        BigInt prod = 1;
        for (Vertex v : w)
            prod *= static_cast<unsigned long>(g.degree(v));
        Rational r(BigInt(1), prod);
        r.canonicalize();
        return r;
    }

    inline auto h2k(const Graph & g, int k) -> Rational
    {
        Rational total = 0;
        closed_walks(g, static_cast<std::size_t>(2 * k), [&](const std::vector<Vertex> & w) { total += walk_weight(g, w); });
        return total;
    }

    /// h_{2k}(i,j) by enumeration; step s is the edge u_{s-1} u_s (u_{2k} = u_0).
    inline auto h2k_pattern(const Graph & g, const cubehom::EdgeColouring & c, int k, int i, int j) -> Rational
    {
        Rational total = 0;
        const std::size_t L = static_cast<std::size_t>(2 * k);
        closed_walks(g, L, [&](const std::vector<Vertex> & w) {
            auto step = [&](int s) { return c.colour(w[static_cast<std::size_t>(s - 1)], w[static_cast<std::size_t>(s) % L]); };
            if (step(i) == step(j))
                total += walk_weight(g, w);
        });
        return total;
    }

    /// Closed form for the hypercube: sum_i C(d,i) ((d-2i)/d)^{2k}.
    inline auto hypercube_h2k(int d, int k) -> Rational
    {
        Rational total = 0;
        BigInt binom = 1;
        for (int i = 0; i <= d; ++i) {
            Rational x(BigInt(d - 2 * i), BigInt(d));
            x.canonicalize();
            total += Rational(binom) * cubehom::pow(x, static_cast<unsigned long>(2 * k));
            binom = binom * (d - i) / (i + 1);
        }
        return total;
    }

    /// 1 + (n-1)^{1-2k}
    inline auto complete_h2k(int n, int k) -> Rational
    {
        Rational r(BigInt(1), cubehom::pow(BigInt(n - 1), static_cast<unsigned long>(2 * k - 1)));
        r.canonicalize();
        return 1 + r;
    }

    /// Every simple cycle (as a vertex sequence rooted at its minimum, both
    /// orientations) of length 3..max_len.
    inline void simple_cycles(const Graph & g, std::size_t max_len, const std::function<void(const std::vector<Vertex> &)> & visit)
    {
        std::vector<Vertex> path;
        std::vector<bool> used(g.order(), false);
        std::function<void()> rec = [&]() {
            Vertex v = path.back();
            for (Vertex w : g.neighbours(v)) {
                if (w == path.front() && path.size() >= 3)
                    visit(path);
                if (w <= path.front() || used[static_cast<std::size_t>(w)] || path.size() >= max_len)
                    continue;
                used[static_cast<std::size_t>(w)] = true;
                path.push_back(w);
                rec();
                path.pop_back();
                used[static_cast<std::size_t>(w)] = false;
            }
        };
        for (std::size_t s = 0; s < g.order(); ++s) {
            path.assign(1, static_cast<Vertex>(s));
            used[s] = true;
            rec();
            used[s] = false;
        }
    }

    inline auto colours_on(const Graph & g, const cubehom::EdgeColouring & c, const std::vector<Vertex> & cyc) -> std::size_t
    {
        std::vector<int> cols;
        for (std::size_t i = 0; i < cyc.size(); ++i)
            cols.push_back(c.colour(cyc[i], cyc[(i + 1) % cyc.size()]));
        std::sort(cols.begin(), cols.end());
        (void) g;
        return static_cast<std::size_t>(std::unique(cols.begin(), cols.end()) - cols.begin());
    }
}

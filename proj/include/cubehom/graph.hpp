#pragma once

#include <cubehom/rational.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cubehom
{
    using Vertex = int;
    using Edge = std::pair<Vertex, Vertex>;

    /// Simple undirected graph on vertices 0..n-1. Immutable once built.
    ///
    /// Neighbour lists are sorted and duplicate-free; labels are an optional
    /// side table (bitstrings for cubes, subsets for set graphs) that the
    /// counting kernels never look at.
    class Graph
    {
    public:
        Graph() = default;

        /// Builds a graph from an edge list, collapsing duplicates. Throws
        /// InputError on an out-of-range endpoint or a self-loop.
        static auto from_edges(std::size_t n, std::span<const Edge> edges) -> Graph;

        auto order() const -> std::size_t { return adjacency_.size(); }
        auto size() const -> std::size_t { return edge_count_; }

        auto neighbours(Vertex v) const -> std::span<const Vertex> { return adjacency_[static_cast<std::size_t>(v)]; }
        auto degree(Vertex v) const -> std::size_t { return adjacency_[static_cast<std::size_t>(v)].size(); }
        auto adjacent(Vertex u, Vertex v) const -> bool;

        auto min_degree() const -> std::size_t;
        auto max_degree() const -> std::size_t;

        /// All edges as (u, v) with u < v, in lexicographic order.
        auto edges() const -> std::vector<Edge>;

        auto has_labels() const -> bool { return ! labels_.empty(); }
        auto label(Vertex v) const -> std::string;
        auto labels() const -> const std::vector<std::string> & { return labels_; }
        auto with_labels(std::vector<std::string> labels) const -> Graph;

        friend auto operator==(const Graph & a, const Graph & b) -> bool { return a.adjacency_ == b.adjacency_; }

    private:
        std::vector<std::vector<Vertex>> adjacency_;
        std::vector<std::string> labels_;
        std::size_t edge_count_ = 0;
    };

    /// Colour assignment for every edge of a graph. Stores, per vertex, the
    /// (neighbour, colour) pairs in the same order as Graph::neighbours.
    class EdgeColouring
    {
    public:
        EdgeColouring() = default;

        /// Throws InputError if some edge of `g` is missing a colour, if a
        /// coloured pair is not an edge, or if an edge is given two colours.
        static auto from_triples(const Graph & g, std::span<const std::pair<Edge, int>> colours) -> EdgeColouring;

        auto colour(Vertex u, Vertex v) const -> int;
        /// Colour of the edge from u to its idx-th neighbour.
        auto colour_at(Vertex u, std::size_t idx) const -> int { return colours_[static_cast<std::size_t>(u)][idx]; }

        auto is_proper() const -> bool { return proper_; }
        auto colour_count() const -> std::size_t { return colour_count_; }
        auto max_colour() const -> int { return max_colour_; }

        /// (u, v, colour) with u < v, edge order as Graph::edges.
        auto triples() const -> std::vector<std::pair<Edge, int>>;

    private:
        std::vector<std::vector<Vertex>> neighbours_;
        std::vector<std::vector<int>> colours_;
        std::size_t colour_count_ = 0;
        int max_colour_ = -1;
        bool proper_ = false;
    };

    /// Recomputes properness from scratch: adjacent edges must differ in colour.
    auto check_proper(const Graph & g, const EdgeColouring & c) -> bool;

    auto make_graph(std::size_t n, std::span<const Edge> edges) -> Graph;

    /// Q_d: vertices are d-bit strings, coordinate 1 is the most significant
    /// bit of the vertex id, so vertex 0b011 of Q_3 is labelled "011".
    auto gen_hypercube(int d) -> Graph;

    /// H_{l,k}: l-subsets of [k] (ids 0..C(k,l)-1, lexicographic) joined to
    /// the (k-l)-subsets containing them (the following ids).
    auto gen_set_graph(int l, int k) -> Graph;

    /// Element bitmask (bit i-1 for element i) of every vertex of H_{l,k}, in vertex-id order.
    auto set_graph_vertex_sets(int l, int k) -> std::vector<std::uint32_t>;

    /// G(n, p): each pair u < v, in lexicographic order, is kept independently
    /// with probability p. Driven by std::mt19937_64 seeded with `seed`.
    auto gen_random(std::size_t n, const Rational & p, std::uint64_t seed) -> Graph;

    auto gen_complete(std::size_t n) -> Graph;
    auto gen_cycle(std::size_t n) -> Graph;
    auto gen_complete_bipartite(std::size_t a, std::size_t b) -> Graph;

    /// 2e(G)/n^2.
    auto edge_density(const Graph & g) -> Rational;

    struct InducedSubgraph
    {
        Graph graph;
        std::vector<Vertex> original; ///< original[i] is the host vertex behind vertex i
    };

    auto induced_subgraph(const Graph & g, std::span<const Vertex> keep) -> InducedSubgraph;

    /// Deletes vertices of degree < t until none remain. The surviving set is
    /// the unique maximal subgraph with minimum degree >= t.
    auto peel_min_degree(const Graph & g, std::size_t t) -> InducedSubgraph;

    /// Greedy colouring over a seeded random edge order, smallest free colour.
    /// Uses at most 2*maxdeg - 1 colours.
    auto greedy_proper_colouring(const Graph & g, std::uint64_t seed) -> EdgeColouring;

    struct ColouredGraph
    {
        Graph graph;
        EdgeColouring colouring;
    };

    /// Q_d with each edge coloured by the (0-based) coordinate it flips.
    auto direction_colouring(int d) -> ColouredGraph;

    /// 2-colouring of a bipartite graph (vertex 0 of each component on side 0),
    /// or nullopt if some component has an odd cycle.
    auto bipartition(const Graph & g) -> std::optional<std::vector<int>>;

    auto is_connected(const Graph & g) -> bool;

    /// Edge-list format: "n m" then m lines "u v".
    auto read_edge_list(std::istream & in) -> Graph;
    void write_edge_list(std::ostream & out, const Graph & g);

    /// Colouring format: m lines "u v colour" covering exactly E(g).
    auto read_colouring(std::istream & in, const Graph & g) -> EdgeColouring;
    void write_colouring(std::ostream & out, const Graph & g, const EdgeColouring & c);

    /// Uniform integer in [0, bound) by rejection, so results do not depend
    /// on the standard library's distribution implementation.
    template <typename Engine>
    auto uniform_below(Engine & engine, std::uint64_t bound) -> std::uint64_t
    {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do
            x = engine();
        while (x >= limit);
        return x % bound;
    }
}

#pragma once

#include <cubehom/graph.hpp>
#include <cubehom/vertex_set.hpp>

#include <optional>
#include <string>

namespace cubehom::cli
{
    /// A graph named on the command line, with the colouring it carries
    /// naturally (direction-coloured cubes, the rainbow triangle) if any.
    struct Host
    {
        std::string spec;
        Graph graph;
        std::optional<EdgeColouring> colouring;
        std::optional<int> cube_dimension;         ///< set for hypercube(d) and direction-cube(d)
        std::optional<std::pair<int, int>> set_graph; ///< (l, k) for setgraph(l,k)
    };

    /// Accepts
    ///   hypercube(d) | Qd, direction-cube(d), setgraph(l,k), complete(n) | Kn,
    ///   cycle(n) | Cn, complete-bipartite(a,b), random(n,p,seed),
    ///   triangle-rainbow, or a path to an edge-list file.
    /// The seed argument of random() may be written "7", "seed 7" or "seed=7".
    auto parse_host(const std::string & spec) -> Host;

    auto load_colouring(const Graph & g, const std::string & path) -> EdgeColouring;

    /// "000,011", "{0,3}" or "0 3": labels or vertex ids.
    auto parse_vertex_set(const Graph & g, const std::string & text) -> VertexSet;

    auto read_text_file(const std::string & path) -> std::string;
    void write_text_file(const std::string & path, const std::string & text);
}

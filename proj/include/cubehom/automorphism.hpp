#pragma once

#include <cubehom/graph.hpp>
#include <cubehom/vertex_set.hpp>

#include <string>
#include <vector>

namespace cubehom
{
    /// Adjacency-preserving permutation of V(H), stored as its image array.
    struct Automorphism
    {
        std::vector<Vertex> perm;
        bool involution = false;

        auto operator()(Vertex v) const -> Vertex { return perm[static_cast<std::size_t>(v)]; }
        auto apply(VertexSet s) const -> VertexSet;
        auto is_identity() const -> bool;

        friend auto operator==(const Automorphism & a, const Automorphism & b) -> bool { return a.perm == b.perm; }
        friend auto operator<(const Automorphism & a, const Automorphism & b) -> bool { return a.perm < b.perm; }
    };

    constexpr std::size_t automorphism_vertex_cap = 32;

    /// Builds an Automorphism from an image array, setting the involution flag.
    /// Throws InputError unless `perm` is a bijection preserving adjacency and non-adjacency.
    auto make_automorphism(const Graph & h, std::vector<Vertex> perm) -> Automorphism;

    auto is_automorphism(const Graph & h, const std::vector<Vertex> & perm) -> bool;

    auto identity_automorphism(std::size_t n) -> Automorphism;
    auto compose(const Automorphism & outer, const Automorphism & inner) -> Automorphism;
    auto inverse(const Automorphism & a) -> Automorphism;

    /// The whole automorphism group, sorted by image array. Throws
    /// CapabilityError above 32 vertices.
    auto enumerate_automorphisms(const Graph & h) -> std::vector<Automorphism>;

    /// Non-identity automorphisms that are their own inverse, sorted.
    auto enumerate_involutions(const Graph & h) -> std::vector<Automorphism>;

    auto fixed_set(const Automorphism & phi) -> VertexSet;

    /// Image array as decimal ids separated by spaces.
    auto to_string(const Automorphism & phi) -> std::string;
}

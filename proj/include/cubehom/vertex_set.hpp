#pragma once

#include <cubehom/graph.hpp>

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace cubehom
{
    /// Subset of the vertices of a pattern graph with at most 64 vertices.
    class VertexSet
    {
    public:
        static constexpr std::size_t capacity = 64;

        constexpr VertexSet() = default;
        constexpr explicit VertexSet(std::uint64_t bits) : bits_(bits) {}
        VertexSet(std::initializer_list<Vertex> members);

        static auto of(std::span<const Vertex> members) -> VertexSet;
        /// {0, ..., n-1}
        static auto full(std::size_t n) -> VertexSet;

        constexpr auto bits() const -> std::uint64_t { return bits_; }
        constexpr auto empty() const -> bool { return bits_ == 0; }
        constexpr auto size() const -> std::size_t { return static_cast<std::size_t>(std::popcount(bits_)); }
        constexpr auto contains(Vertex v) const -> bool { return (bits_ >> v) & 1u; }
        constexpr auto subset_of(VertexSet other) const -> bool { return (bits_ & ~other.bits_) == 0; }
        constexpr auto intersects(VertexSet other) const -> bool { return (bits_ & other.bits_) != 0; }

        void insert(Vertex v) { bits_ |= std::uint64_t{1} << v; }
        void erase(Vertex v) { bits_ &= ~(std::uint64_t{1} << v); }

        auto members() const -> std::vector<Vertex>;
        /// Smallest member; undefined on the empty set.
        auto first() const -> Vertex { return static_cast<Vertex>(std::countr_zero(bits_)); }

        friend constexpr auto operator|(VertexSet a, VertexSet b) -> VertexSet { return VertexSet(a.bits_ | b.bits_); }
        friend constexpr auto operator&(VertexSet a, VertexSet b) -> VertexSet { return VertexSet(a.bits_ & b.bits_); }
        friend constexpr auto operator-(VertexSet a, VertexSet b) -> VertexSet { return VertexSet(a.bits_ & ~b.bits_); }
        friend constexpr auto operator==(VertexSet a, VertexSet b) -> bool = default;
        friend constexpr auto operator<=>(VertexSet a, VertexSet b) = default;

    private:
        std::uint64_t bits_ = 0;
    };

    /// "{a,b,c}" using vertex ids.
    auto to_string(VertexSet s) -> std::string;
    /// "{000,011}" using the graph's labels.
    auto to_label_string(const Graph & g, VertexSet s) -> std::string;
    /// Looks vertices up by label ("011") or decimal id.
    auto parse_vertex(const Graph & g, const std::string & token) -> Vertex;
}

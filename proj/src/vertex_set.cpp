#include <cubehom/error.hpp>
#include <cubehom/vertex_set.hpp>

namespace cubehom
{
    VertexSet::VertexSet(std::initializer_list<Vertex> members)
    {
        for (Vertex v : members) {
            if (v < 0 || static_cast<std::size_t>(v) >= capacity)
                throw CapabilityError("vertex sets hold ids below 64, got " + std::to_string(v));
            insert(v);
        }
    }

    auto VertexSet::of(std::span<const Vertex> members) -> VertexSet
    {
        VertexSet s;
        for (Vertex v : members) {
            if (v < 0 || static_cast<std::size_t>(v) >= capacity)
                throw CapabilityError("vertex sets hold ids below 64, got " + std::to_string(v));
            s.insert(v);
        }
        return s;
    }

    auto VertexSet::full(std::size_t n) -> VertexSet
    {
        if (n > capacity)
            throw CapabilityError("vertex sets hold at most 64 vertices");
        return VertexSet(n == capacity ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
    }

    auto VertexSet::members() const -> std::vector<Vertex>
    {
        std::vector<Vertex> result;
        for (std::uint64_t b = bits_; b; b &= b - 1)
            result.push_back(static_cast<Vertex>(std::countr_zero(b)));
        return result;
    }

    auto to_string(VertexSet s) -> std::string
    {
        std::string out = "{";
        bool first = true;
        for (Vertex v : s.members()) {
            if (! first)
                out += ",";
            out += std::to_string(v);
            first = false;
        }
        return out + "}";
    }

    auto to_label_string(const Graph & g, VertexSet s) -> std::string
    {
        std::string out = "{";
        bool first = true;
        for (Vertex v : s.members()) {
            if (! first)
                out += ",";
            out += g.label(v);
            first = false;
        }
        return out + "}";
    }

    auto parse_vertex(const Graph & g, const std::string & token) -> Vertex
    {
        if (g.has_labels())
            for (std::size_t v = 0; v < g.order(); ++v)
                if (g.labels()[v] == token)
                    return static_cast<Vertex>(v);
        std::size_t used = 0;
        long long id = -1;
        try {
            id = std::stoll(token, &used);
        }
        catch (const std::exception &) {
            used = 0;
        }
        if (used != token.size() || id < 0 || static_cast<std::size_t>(id) >= g.order())
            throw InputError("unknown vertex '" + token + "'");
        return static_cast<Vertex>(id);
    }
}

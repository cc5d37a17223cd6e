#include <cubehom/automorphism.hpp>
#include <cubehom/error.hpp>

#include <algorithm>
#include <numeric>

namespace cubehom
{
    auto Automorphism::apply(VertexSet s) const -> VertexSet
    {
        VertexSet image;
        for (Vertex v : s.members())
            image.insert((*this)(v));
        return image;
    }

    auto Automorphism::is_identity() const -> bool
    {
        for (std::size_t v = 0; v < perm.size(); ++v)
            if (perm[v] != static_cast<Vertex>(v))
                return false;
        return true;
    }

    auto is_automorphism(const Graph & h, const std::vector<Vertex> & perm) -> bool
    {
        if (perm.size() != h.order())
            return false;
        std::vector<bool> hit(h.order(), false);
        for (Vertex v : perm) {
            if (v < 0 || static_cast<std::size_t>(v) >= h.order() || hit[static_cast<std::size_t>(v)])
                return false;
            hit[static_cast<std::size_t>(v)] = true;
        }
        // a bijection mapping edges to edges on a finite graph also maps non-edges to non-edges
        for (auto [u, v] : h.edges())
            if (! h.adjacent(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]))
                return false;
        return true;
    }

    auto make_automorphism(const Graph & h, std::vector<Vertex> perm) -> Automorphism
    {
        if (! is_automorphism(h, perm))
            throw InputError("image array is not an automorphism of the pattern graph");
        Automorphism a{std::move(perm), false};
        a.involution = true;
        for (std::size_t v = 0; v < a.perm.size(); ++v)
            if (a.perm[static_cast<std::size_t>(a.perm[v])] != static_cast<Vertex>(v))
                a.involution = false;
        return a;
    }

    auto identity_automorphism(std::size_t n) -> Automorphism
    {
        Automorphism a;
        a.perm.resize(n);
        std::iota(a.perm.begin(), a.perm.end(), 0);
        a.involution = true;
        return a;
    }

    auto compose(const Automorphism & outer, const Automorphism & inner) -> Automorphism
    {
        Automorphism a;
        a.perm.resize(inner.perm.size());
        for (std::size_t v = 0; v < a.perm.size(); ++v)
            a.perm[v] = outer(inner.perm[v]);
        a.involution = true;
        for (std::size_t v = 0; v < a.perm.size(); ++v)
            if (a.perm[static_cast<std::size_t>(a.perm[v])] != static_cast<Vertex>(v))
                a.involution = false;
        return a;
    }

    auto inverse(const Automorphism & a) -> Automorphism
    {
        Automorphism b;
        b.perm.resize(a.perm.size());
        for (std::size_t v = 0; v < a.perm.size(); ++v)
            b.perm[static_cast<std::size_t>(a.perm[v])] = static_cast<Vertex>(v);
        b.involution = a.involution;
        return b;
    }

    namespace
    {
        struct Search
        {
            const Graph & h;
            std::vector<Vertex> order;                   // vertices in assignment order
            std::vector<std::vector<std::size_t>> sig;   // sorted neighbour degrees
            std::vector<Vertex> image;
            std::vector<bool> used;
            std::vector<Automorphism> found;

            void run(std::size_t depth)
            {
                if (depth == order.size()) {
                    found.push_back(make_automorphism(h, image));
                    return;
                }
                Vertex v = order[depth];
                for (std::size_t c = 0; c < h.order(); ++c) {
                    auto w = static_cast<Vertex>(c);
                    if (used[c] || sig[c] != sig[static_cast<std::size_t>(v)])
                        continue;
                    bool ok = true;
                    for (std::size_t e = 0; e < depth && ok; ++e) {
                        Vertex u = order[e];
                        if (h.adjacent(v, u) != h.adjacent(w, image[static_cast<std::size_t>(u)]))
                            ok = false;
                    }
                    if (! ok)
                        continue;
                    image[static_cast<std::size_t>(v)] = w;
                    used[c] = true;
                    run(depth + 1);
                    used[c] = false;
                }
                image[static_cast<std::size_t>(v)] = -1;
            }
        };

        // each next vertex has the most neighbours among those already placed
        auto assignment_order(const Graph & h) -> std::vector<Vertex>
        {
            std::vector<Vertex> order;
            std::vector<bool> placed(h.order(), false);
            std::vector<std::size_t> links(h.order(), 0);
            for (std::size_t step = 0; step < h.order(); ++step) {
                std::size_t best = h.order();
                for (std::size_t v = 0; v < h.order(); ++v) {
                    if (placed[v])
                        continue;
                    if (best == h.order() || links[v] > links[best] ||
                        (links[v] == links[best] && h.degree(static_cast<Vertex>(v)) > h.degree(static_cast<Vertex>(best))))
                        best = v;
                }
                placed[best] = true;
                order.push_back(static_cast<Vertex>(best));
                for (Vertex w : h.neighbours(static_cast<Vertex>(best)))
                    ++links[static_cast<std::size_t>(w)];
            }
            return order;
        }
    }

    auto enumerate_automorphisms(const Graph & h) -> std::vector<Automorphism>
    {
        if (h.order() > automorphism_vertex_cap)
            throw CapabilityError("automorphism enumeration is capped at 32 vertices, pattern has " + std::to_string(h.order()));

        Search search{h, assignment_order(h), {}, std::vector<Vertex>(h.order(), -1), std::vector<bool>(h.order(), false), {}};
        search.sig.resize(h.order());
        for (std::size_t v = 0; v < h.order(); ++v) {
            for (Vertex w : h.neighbours(static_cast<Vertex>(v)))
                search.sig[v].push_back(h.degree(w));
            std::sort(search.sig[v].begin(), search.sig[v].end());
            search.sig[v].push_back(h.degree(static_cast<Vertex>(v)));
        }
        search.run(0);
        std::sort(search.found.begin(), search.found.end());
        return search.found;
    }

    auto enumerate_involutions(const Graph & h) -> std::vector<Automorphism>
    {
        std::vector<Automorphism> result;
        for (auto & a : enumerate_automorphisms(h))
            if (a.involution && ! a.is_identity())
                result.push_back(a);
        return result;
    }

    auto fixed_set(const Automorphism & phi) -> VertexSet
    {
        if (phi.perm.size() > VertexSet::capacity)
            throw CapabilityError("fixed sets are limited to 64-vertex patterns");
        VertexSet f;
        for (std::size_t v = 0; v < phi.perm.size(); ++v)
            if (phi.perm[v] == static_cast<Vertex>(v))
                f.insert(static_cast<Vertex>(v));
        return f;
    }

    auto to_string(const Automorphism & phi) -> std::string
    {
        std::string out;
        for (std::size_t v = 0; v < phi.perm.size(); ++v) {
            if (v)
                out += ' ';
            out += std::to_string(phi.perm[v]);
        }
        return out;
    }
}

#include <cubehom/error.hpp>
#include <cubehom/graph.hpp>

#include <algorithm>
#include <bit>
#include <deque>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

namespace cubehom
{
    auto Graph::from_edges(std::size_t n, std::span<const Edge> edges) -> Graph
    {
        Graph g;
        g.adjacency_.resize(n);
        for (auto [u, v] : edges) {
            if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n)
                throw InputError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") has an endpoint outside [0," + std::to_string(n) + ")");
            if (u == v)
                throw InputError("self-loop at vertex " + std::to_string(u));
            g.adjacency_[static_cast<std::size_t>(u)].push_back(v);
            g.adjacency_[static_cast<std::size_t>(v)].push_back(u);
        }

        std::size_t twice = 0;
        for (auto & row : g.adjacency_) {
            std::sort(row.begin(), row.end());
            row.erase(std::unique(row.begin(), row.end()), row.end());
            twice += row.size();
        }
        g.edge_count_ = twice / 2;
        return g;
    }

    auto Graph::adjacent(Vertex u, Vertex v) const -> bool
    {
        auto row = neighbours(u);
        return std::binary_search(row.begin(), row.end(), v);
    }

    auto Graph::min_degree() const -> std::size_t
    {
        std::size_t best = adjacency_.empty() ? 0 : SIZE_MAX;
        for (auto & row : adjacency_)
            best = std::min(best, row.size());
        return best;
    }

    auto Graph::max_degree() const -> std::size_t
    {
        std::size_t best = 0;
        for (auto & row : adjacency_)
            best = std::max(best, row.size());
        return best;
    }

    auto Graph::edges() const -> std::vector<Edge>
    {
        std::vector<Edge> result;
        result.reserve(edge_count_);
        for (std::size_t u = 0; u < adjacency_.size(); ++u)
            for (Vertex v : adjacency_[u])
                if (static_cast<Vertex>(u) < v)
                    result.emplace_back(static_cast<Vertex>(u), v);
        return result;
    }

    auto Graph::label(Vertex v) const -> std::string
    {
        if (labels_.empty())
            return std::to_string(v);
        return labels_[static_cast<std::size_t>(v)];
    }

    auto Graph::with_labels(std::vector<std::string> labels) const -> Graph
    {
        if (! labels.empty() && labels.size() != order())
            throw InputError("label table size does not match vertex count");
        Graph g = *this;
        g.labels_ = std::move(labels);
        return g;
    }

    auto EdgeColouring::from_triples(const Graph & g, std::span<const std::pair<Edge, int>> colours) -> EdgeColouring
    {
        EdgeColouring c;
        c.neighbours_.resize(g.order());
        c.colours_.resize(g.order());
        for (std::size_t u = 0; u < g.order(); ++u) {
            auto row = g.neighbours(static_cast<Vertex>(u));
            c.neighbours_[u].assign(row.begin(), row.end());
            c.colours_[u].assign(row.size(), -1);
        }

        auto slot = [&](Vertex u, Vertex v) -> int & {
            auto & row = c.neighbours_[static_cast<std::size_t>(u)];
            auto it = std::lower_bound(row.begin(), row.end(), v);
            return c.colours_[static_cast<std::size_t>(u)][static_cast<std::size_t>(it - row.begin())];
        };

        for (auto & [e, colour] : colours) {
            auto [u, v] = e;
            if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= g.order() || static_cast<std::size_t>(v) >= g.order() || ! g.adjacent(u, v))
                throw InputError("colouring names (" + std::to_string(u) + "," + std::to_string(v) + ") which is not an edge");
            if (colour < 0)
                throw InputError("negative colour on edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
            int & a = slot(u, v);
            if (a != -1)
                throw InputError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") coloured twice");
            a = colour;
            slot(v, u) = colour;
        }

        std::vector<int> seen;
        for (std::size_t u = 0; u < g.order(); ++u)
            for (std::size_t i = 0; i < c.colours_[u].size(); ++i) {
                int colour = c.colours_[u][i];
                if (colour == -1)
                    throw InputError("edge (" + std::to_string(u) + "," + std::to_string(c.neighbours_[u][i]) + ") has no colour");
                seen.push_back(colour);
            }
        std::sort(seen.begin(), seen.end());
        seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
        c.colour_count_ = seen.size();
        c.max_colour_ = seen.empty() ? -1 : seen.back();
        c.proper_ = check_proper(g, c);
        return c;
    }

    auto EdgeColouring::colour(Vertex u, Vertex v) const -> int
    {
        auto & row = neighbours_.at(static_cast<std::size_t>(u));
        auto it = std::lower_bound(row.begin(), row.end(), v);
        if (it == row.end() || *it != v)
            throw InputError("(" + std::to_string(u) + "," + std::to_string(v) + ") is not an edge");
        return colours_[static_cast<std::size_t>(u)][static_cast<std::size_t>(it - row.begin())];
    }

    auto EdgeColouring::triples() const -> std::vector<std::pair<Edge, int>>
    {
        std::vector<std::pair<Edge, int>> result;
        for (std::size_t u = 0; u < neighbours_.size(); ++u)
            for (std::size_t i = 0; i < neighbours_[u].size(); ++i)
                if (static_cast<Vertex>(u) < neighbours_[u][i])
                    result.push_back({{static_cast<Vertex>(u), neighbours_[u][i]}, colours_[u][i]});
        return result;
    }

    auto check_proper(const Graph & g, const EdgeColouring & c) -> bool
    {
        std::vector<int> at_vertex;
        for (std::size_t u = 0; u < g.order(); ++u) {
            at_vertex.clear();
            for (std::size_t i = 0; i < g.degree(static_cast<Vertex>(u)); ++i)
                at_vertex.push_back(c.colour_at(static_cast<Vertex>(u), i));
            std::sort(at_vertex.begin(), at_vertex.end());
            if (std::adjacent_find(at_vertex.begin(), at_vertex.end()) != at_vertex.end())
                return false;
        }
        return true;
    }

    auto make_graph(std::size_t n, std::span<const Edge> edges) -> Graph
    {
        return Graph::from_edges(n, edges);
    }

    auto gen_hypercube(int d) -> Graph
    {
        if (d < 1 || d > 20)
            throw InputError("hypercube dimension must be in [1,20], got " + std::to_string(d));
        const std::size_t n = std::size_t{1} << d;
        std::vector<Edge> edges;
        std::vector<std::string> labels(n);
        for (std::size_t x = 0; x < n; ++x) {
            for (int b = 0; b < d; ++b) {
                std::size_t y = x ^ (std::size_t{1} << b);
                if (x < y)
                    edges.emplace_back(static_cast<Vertex>(x), static_cast<Vertex>(y));
            }
            std::string s(static_cast<std::size_t>(d), '0');
            for (int i = 0; i < d; ++i)
                if ((x >> (d - 1 - i)) & 1)
                    s[static_cast<std::size_t>(i)] = '1';
            labels[x] = std::move(s);
        }
        return Graph::from_edges(n, edges).with_labels(std::move(labels));
    }

    namespace
    {
        auto binomial(int n, int k) -> std::uint64_t
        {
            if (k < 0 || k > n)
                return 0;
            std::uint64_t r = 1;
            for (int i = 1; i <= k; ++i)
                r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
            return r;
        }

        // subsets of {1..k} of size s as bitmasks (bit i-1 for element i), lexicographic by sorted elements
        auto subsets_of_size(int k, int s) -> std::vector<std::uint32_t>
        {
            std::vector<std::uint32_t> result;
            std::vector<int> pick(static_cast<std::size_t>(s));
            std::iota(pick.begin(), pick.end(), 1);
            while (true) {
                std::uint32_t mask = 0;
                for (int e : pick)
                    mask |= 1u << (e - 1);
                result.push_back(mask);
                int i = s - 1;
                while (i >= 0 && pick[static_cast<std::size_t>(i)] == k - s + i + 1)
                    --i;
                if (i < 0)
                    break;
                ++pick[static_cast<std::size_t>(i)];
                for (int j = i + 1; j < s; ++j)
                    pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
            }
            return result;
        }

        auto subset_label(std::uint32_t mask, int k) -> std::string
        {
            std::string s = "{";
            bool first = true;
            for (int e = 1; e <= k; ++e)
                if (mask & (1u << (e - 1))) {
                    if (! first)
                        s += ",";
                    s += std::to_string(e);
                    first = false;
                }
            return s + "}";
        }
    }

    auto set_graph_vertex_sets(int l, int k) -> std::vector<std::uint32_t>
    {
        if (l < 1 || 2 * l >= k)
            throw InputError("set graph needs 1 <= l < k/2, got l=" + std::to_string(l) + " k=" + std::to_string(k));
        if (k > 30 || binomial(k, l) > 100000)
            throw InputError("set graph too large: C(" + std::to_string(k) + "," + std::to_string(l) + ") > 1e5");
        auto result = subsets_of_size(k, l);
        auto large = subsets_of_size(k, k - l);
        result.insert(result.end(), large.begin(), large.end());
        return result;
    }

    auto gen_set_graph(int l, int k) -> Graph
    {
        auto all = set_graph_vertex_sets(l, k);
        std::vector<std::uint32_t> small(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(binomial(k, l)));
        std::vector<std::uint32_t> large(all.begin() + static_cast<std::ptrdiff_t>(small.size()), all.end());
        const std::size_t n = all.size();
        std::vector<Edge> edges;
        std::vector<std::string> labels;
        for (auto s : small)
            labels.push_back(subset_label(s, k));
        for (auto t : large)
            labels.push_back(subset_label(t, k));
        for (std::size_t i = 0; i < small.size(); ++i)
            for (std::size_t j = 0; j < large.size(); ++j)
                if ((small[i] & large[j]) == small[i])
                    edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(small.size() + j));
        return Graph::from_edges(n, edges).with_labels(std::move(labels));
    }

    auto gen_random(std::size_t n, const Rational & p, std::uint64_t seed) -> Graph
    {
        if (p < 0 || p > 1)
            throw InputError("edge probability must lie in [0,1], got " + to_fraction_string(p));
        if (! p.get_den().fits_ulong_p())
            throw InputError("edge probability denominator too large for the sampler");
        const std::uint64_t den = p.get_den().get_ui();
        const std::uint64_t num = p.get_num().get_ui();

        std::mt19937_64 engine(seed);
        std::vector<Edge> edges;
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = u + 1; v < n; ++v)
                if (uniform_below(engine, den) < num)
                    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
        return Graph::from_edges(n, edges);
    }

    auto gen_complete(std::size_t n) -> Graph
    {
        std::vector<Edge> edges;
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = u + 1; v < n; ++v)
                edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
        return Graph::from_edges(n, edges);
    }

    auto gen_cycle(std::size_t n) -> Graph
    {
        if (n < 3)
            throw InputError("cycle needs at least 3 vertices");
        std::vector<Edge> edges;
        for (std::size_t u = 0; u < n; ++u)
            edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>((u + 1) % n));
        return Graph::from_edges(n, edges);
    }

    auto gen_complete_bipartite(std::size_t a, std::size_t b) -> Graph
    {
        std::vector<Edge> edges;
        for (std::size_t u = 0; u < a; ++u)
            for (std::size_t v = 0; v < b; ++v)
                edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(a + v));
        return Graph::from_edges(a + b, edges);
    }

    auto edge_density(const Graph & g) -> Rational
    {
        if (g.order() == 0)
            throw InputError("edge density of the empty vertex set is undefined");
        Rational p(BigInt(2) * BigInt(static_cast<unsigned long>(g.size())), BigInt(static_cast<unsigned long>(g.order())) * BigInt(static_cast<unsigned long>(g.order())));
        p.canonicalize();
        return p;
    }

    auto induced_subgraph(const Graph & g, std::span<const Vertex> keep) -> InducedSubgraph
    {
        std::vector<Vertex> index(g.order(), -1);
        InducedSubgraph result;
        result.original.assign(keep.begin(), keep.end());
        std::sort(result.original.begin(), result.original.end());
        for (std::size_t i = 0; i < result.original.size(); ++i)
            index[static_cast<std::size_t>(result.original[i])] = static_cast<Vertex>(i);

        std::vector<Edge> edges;
        std::vector<std::string> labels;
        for (Vertex u : result.original) {
            for (Vertex v : g.neighbours(u))
                if (u < v && index[static_cast<std::size_t>(v)] != -1)
                    edges.emplace_back(index[static_cast<std::size_t>(u)], index[static_cast<std::size_t>(v)]);
            if (g.has_labels())
                labels.push_back(g.label(u));
        }
        result.graph = Graph::from_edges(result.original.size(), edges).with_labels(std::move(labels));
        return result;
    }

    auto peel_min_degree(const Graph & g, std::size_t t) -> InducedSubgraph
    {
        if (t < 1)
            throw InputError("peeling threshold must be at least 1");
        std::vector<std::size_t> degree(g.order());
        std::vector<bool> removed(g.order(), false);
        std::deque<Vertex> queue;
        for (std::size_t v = 0; v < g.order(); ++v) {
            degree[v] = g.degree(static_cast<Vertex>(v));
            if (degree[v] < t) {
                removed[v] = true;
                queue.push_back(static_cast<Vertex>(v));
            }
        }
        while (! queue.empty()) {
            Vertex v = queue.front();
            queue.pop_front();
            for (Vertex w : g.neighbours(v)) {
                auto wi = static_cast<std::size_t>(w);
                if (removed[wi])
                    continue;
                if (--degree[wi] < t) {
                    removed[wi] = true;
                    queue.push_back(w);
                }
            }
        }

        std::vector<Vertex> keep;
        for (std::size_t v = 0; v < g.order(); ++v)
            if (! removed[v])
                keep.push_back(static_cast<Vertex>(v));
        return induced_subgraph(g, keep);
    }

    auto greedy_proper_colouring(const Graph & g, std::uint64_t seed) -> EdgeColouring
    {
        auto edges = g.edges();
        std::mt19937_64 engine(seed);
        for (std::size_t i = edges.size(); i > 1; --i)
            std::swap(edges[i - 1], edges[uniform_below(engine, i)]);

        std::vector<std::vector<int>> used(g.order());
        std::vector<std::pair<Edge, int>> colours;
        colours.reserve(edges.size());
        for (auto [u, v] : edges) {
            auto & a = used[static_cast<std::size_t>(u)];
            auto & b = used[static_cast<std::size_t>(v)];
            int colour = 0;
            while (std::find(a.begin(), a.end(), colour) != a.end() || std::find(b.begin(), b.end(), colour) != b.end())
                ++colour;
            a.push_back(colour);
            b.push_back(colour);
            colours.push_back({{u, v}, colour});
        }
        auto result = EdgeColouring::from_triples(g, colours);
        if (! result.is_proper())
            throw std::logic_error("greedy colouring produced an improper colouring");
        return result;
    }

    auto direction_colouring(int d) -> ColouredGraph
    {
        auto g = gen_hypercube(d);
        std::vector<std::pair<Edge, int>> colours;
        for (auto [u, v] : g.edges()) {
            int bit = std::countr_zero(static_cast<unsigned>(u ^ v));
            colours.push_back({{u, v}, d - 1 - bit});
        }
        auto c = EdgeColouring::from_triples(g, colours);
        return {std::move(g), std::move(c)};
    }

    auto bipartition(const Graph & g) -> std::optional<std::vector<int>>
    {
        std::vector<int> side(g.order(), -1);
        for (std::size_t s = 0; s < g.order(); ++s) {
            if (side[s] != -1)
                continue;
            side[s] = 0;
            std::deque<Vertex> queue{static_cast<Vertex>(s)};
            while (! queue.empty()) {
                Vertex v = queue.front();
                queue.pop_front();
                for (Vertex w : g.neighbours(v)) {
                    auto & sw = side[static_cast<std::size_t>(w)];
                    if (sw == -1) {
                        sw = 1 - side[static_cast<std::size_t>(v)];
                        queue.push_back(w);
                    }
                    else if (sw == side[static_cast<std::size_t>(v)])
                        return std::nullopt;
                }
            }
        }
        return side;
    }

    auto is_connected(const Graph & g) -> bool
    {
        if (g.order() == 0)
            return true;
        std::vector<bool> seen(g.order(), false);
        std::deque<Vertex> queue{0};
        seen[0] = true;
        std::size_t count = 1;
        while (! queue.empty()) {
            Vertex v = queue.front();
            queue.pop_front();
            for (Vertex w : g.neighbours(v))
                if (! seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = true;
                    ++count;
                    queue.push_back(w);
                }
        }
        return count == g.order();
    }

    namespace
    {
        auto next_data_line(std::istream & in, std::string & line, std::size_t & lineno) -> bool
        {
            while (std::getline(in, line)) {
                ++lineno;
                if (! line.empty() && line.back() == '\r')
                    line.pop_back();
                if (line.find_first_not_of(" \t") != std::string::npos)
                    return true;
            }
            return false;
        }

        auto parse_fields(const std::string & line, std::size_t lineno, std::size_t expected) -> std::vector<long long>
        {
            std::istringstream fields(line);
            std::vector<long long> values;
            std::string token;
            while (fields >> token) {
                std::size_t used = 0;
                long long x = 0;
                try {
                    x = std::stoll(token, &used);
                }
                catch (const std::exception &) {
                    used = 0;
                }
                if (used != token.size())
                    throw InputError("line " + std::to_string(lineno) + ": '" + token + "' is not an integer");
                values.push_back(x);
            }
            if (values.size() != expected)
                throw InputError("line " + std::to_string(lineno) + ": expected " + std::to_string(expected) + " fields, found " + std::to_string(values.size()));
            return values;
        }
    }

    auto read_edge_list(std::istream & in) -> Graph
    {
        std::string line;
        std::size_t lineno = 0;
        if (! next_data_line(in, line, lineno))
            throw InputError("edge list is empty");
        auto header = parse_fields(line, lineno, 2);
        if (header[0] < 0 || header[1] < 0)
            throw InputError("negative vertex or edge count in header");
        std::vector<Edge> edges;
        for (long long i = 0; i < header[1]; ++i) {
            if (! next_data_line(in, line, lineno))
                throw InputError("edge list ended after " + std::to_string(i) + " of " + std::to_string(header[1]) + " edges");
            auto e = parse_fields(line, lineno, 2);
            edges.emplace_back(static_cast<Vertex>(e[0]), static_cast<Vertex>(e[1]));
        }
        if (next_data_line(in, line, lineno))
            throw InputError("line " + std::to_string(lineno) + ": trailing data after " + std::to_string(header[1]) + " edges");
        auto g = Graph::from_edges(static_cast<std::size_t>(header[0]), edges);
        if (g.size() != edges.size())
            throw InputError("edge list contains duplicate edges");
        return g;
    }

    void write_edge_list(std::ostream & out, const Graph & g)
    {
        out << g.order() << ' ' << g.size() << '\n';
        for (auto [u, v] : g.edges())
            out << u << ' ' << v << '\n';
    }

    auto read_colouring(std::istream & in, const Graph & g) -> EdgeColouring
    {
        std::string line;
        std::size_t lineno = 0;
        std::vector<std::pair<Edge, int>> colours;
        while (next_data_line(in, line, lineno)) {
            auto f = parse_fields(line, lineno, 3);
            colours.push_back({{static_cast<Vertex>(f[0]), static_cast<Vertex>(f[1])}, static_cast<int>(f[2])});
        }
        return EdgeColouring::from_triples(g, colours);
    }

    void write_colouring(std::ostream & out, const Graph & g, const EdgeColouring & c)
    {
        for (auto [u, v] : g.edges())
            out << u << ' ' << v << ' ' << c.colour(u, v) << '\n';
    }
}

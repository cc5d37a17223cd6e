#include <cli/hosts.hpp>

#include <cubehom/error.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <regex>
#include <sstream>

namespace cubehom::cli
{
    namespace
    {
        auto trim(std::string s) -> std::string
        {
            auto not_space = [](unsigned char ch) { return ! std::isspace(ch); };
            s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
            s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
            return s;
        }

        auto split_args(const std::string & inner) -> std::vector<std::string>
        {
            std::vector<std::string> parts;
            std::string item;
            std::istringstream in(inner);
            while (std::getline(in, item, ','))
                parts.push_back(trim(item));
            if (! inner.empty() && inner.back() == ',')
                parts.emplace_back();
            return parts;
        }

        auto to_integer(const std::string & spec, const std::string & text) -> long long
        {
            std::size_t used = 0;
            long long value = 0;
            try {
                value = std::stoll(text, &used);
            }
            catch (const std::exception &) {
                throw InputError("host '" + spec + "': expected an integer, got '" + text + "'");
            }
            if (used != text.size() || value < 0)
                throw InputError("host '" + spec + "': expected a non-negative integer, got '" + text + "'");
            return value;
        }

        auto expect_args(const std::string & spec, const std::vector<std::string> & args, std::size_t count)
        {
            if (args.size() != count)
                throw InputError("host '" + spec + "' expects " + std::to_string(count) + " argument(s), got " + std::to_string(args.size()));
        }

        auto small_int(const std::string & spec, const std::string & text) -> int
        {
            auto v = to_integer(spec, text);
            if (v > 1'000'000)
                throw InputError("host '" + spec + "': parameter " + text + " is too large");
            return static_cast<int>(v);
        }

        auto triangle_rainbow() -> Host
        {
            Host h;
            h.graph = gen_complete(3);
            std::vector<std::pair<Edge, int>> colours{{{0, 1}, 0}, {{0, 2}, 1}, {{1, 2}, 2}};
            h.colouring = EdgeColouring::from_triples(h.graph, colours);
            return h;
        }
    }

    auto parse_host(const std::string & raw) -> Host
    {
        const std::string spec = trim(raw);
        static const std::regex call(R"(^([a-z][a-z\-]*)\s*\((.*)\)$)");
        static const std::regex shorthand(R"(^([QKC])([0-9]+)$)");
        std::smatch m;
        Host host;

        if (spec == "triangle-rainbow")
            host = triangle_rainbow();
        else if (std::regex_match(spec, m, shorthand)) {
            int v = small_int(spec, m[2]);
            if (m[1] == "Q") {
                host.graph = gen_hypercube(v);
                host.cube_dimension = v;
            }
            else if (m[1] == "K")
                host.graph = gen_complete(static_cast<std::size_t>(v));
            else
                host.graph = gen_cycle(static_cast<std::size_t>(v));
        }
        else if (std::regex_match(spec, m, call)) {
            std::string name = m[1];
            auto args = split_args(m[2]);
            if (name == "hypercube" || name == "direction-cube") {
                expect_args(spec, args, 1);
                int d = small_int(spec, args[0]);
                if (name == "hypercube")
                    host.graph = gen_hypercube(d);
                else {
                    auto coloured = direction_colouring(d);
                    host.graph = std::move(coloured.graph);
                    host.colouring = std::move(coloured.colouring);
                }
                host.cube_dimension = d;
            }
            else if (name == "setgraph") {
                expect_args(spec, args, 2);
                int l = small_int(spec, args[0]), k = small_int(spec, args[1]);
                host.graph = gen_set_graph(l, k);
                host.set_graph = std::pair{l, k};
            }
            else if (name == "complete") {
                expect_args(spec, args, 1);
                host.graph = gen_complete(static_cast<std::size_t>(small_int(spec, args[0])));
            }
            else if (name == "cycle") {
                expect_args(spec, args, 1);
                host.graph = gen_cycle(static_cast<std::size_t>(small_int(spec, args[0])));
            }
            else if (name == "complete-bipartite") {
                expect_args(spec, args, 2);
                host.graph = gen_complete_bipartite(static_cast<std::size_t>(small_int(spec, args[0])), static_cast<std::size_t>(small_int(spec, args[1])));
            }
            else if (name == "random") {
                expect_args(spec, args, 3);
                auto n = static_cast<std::size_t>(small_int(spec, args[0]));
                auto p = parse_rational(args[1]);
                std::string seed = args[2];
                static const std::regex seed_form(R"(^(?:seed\s*=?\s*)?([0-9]+)$)");
                std::smatch sm;
                if (! std::regex_match(seed, sm, seed_form))
                    throw InputError("host '" + spec + "': bad seed '" + seed + "'");
                std::uint64_t s = 0;
                try {
                    s = std::stoull(sm[1]);
                }
                catch (const std::exception &) {
                    throw InputError("host '" + spec + "': seed out of range");
                }
                host.graph = gen_random(n, p, s);
            }
            else if (name == "triangle-rainbow")
                host = triangle_rainbow();
            else
                throw InputError("unknown host kind '" + name + "'");
        }
        else {
            std::ifstream in(spec);
            if (! in)
                throw InputError("'" + spec + "' is neither a known host form nor a readable file");
            host.graph = read_edge_list(in);
        }
        host.spec = spec;
        return host;
    }

    auto load_colouring(const Graph & g, const std::string & path) -> EdgeColouring
    {
        std::ifstream in(path);
        if (! in)
            throw InputError("cannot open colouring file '" + path + "'");
        return read_colouring(in, g);
    }

    auto parse_vertex_set(const Graph & g, const std::string & text) -> VertexSet
    {
        std::string cleaned;
        for (char ch : text)
            cleaned += (ch == '{' || ch == '}' || ch == ',') ? ' ' : ch;
        std::istringstream in(cleaned);
        std::string token;
        VertexSet set;
        while (in >> token) {
            Vertex v = parse_vertex(g, token);
            if (static_cast<std::size_t>(v) >= VertexSet::capacity)
                throw CapabilityError("vertex sets are limited to the first 64 vertices");
            if (set.contains(v))
                throw InputError("vertex '" + token + "' listed twice");
            set.insert(v);
        }
        return set;
    }

    auto read_text_file(const std::string & path) -> std::string
    {
        std::ifstream in(path);
        if (! in)
            throw InputError("cannot open '" + path + "'");
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

    void write_text_file(const std::string & path, const std::string & text)
    {
        std::ofstream out(path, std::ios::binary);
        if (! out)
            throw InputError("cannot write '" + path + "'");
        out << text;
        if (! out)
            throw InputError("failed writing '" + path + "'");
    }
}

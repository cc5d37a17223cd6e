#include <cubehom/automorphism.hpp>
#include <cubehom/error.hpp>
#include <cubehom/graph.hpp>
#include <cubehom/homcount.hpp>
#include <cubehom/rainbow.hpp>
#include <cubehom/reflectivity.hpp>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace cubehom;

namespace
{
    auto to_py(const BigInt & v) -> py::object
    {
        return py::module_::import("builtins").attr("int")(v.get_str());
    }

    auto to_py(const Rational & v) -> py::object
    {
        return py::module_::import("fractions").attr("Fraction")(v.get_num().get_str() + "/" + v.get_den().get_str());
    }

    auto to_rational(const py::object & value) -> Rational
    {
        return parse_rational(py::str(value).cast<std::string>());
    }

    auto vertex_set(const std::vector<Vertex> & members) -> VertexSet
    {
        return VertexSet::of(members);
    }
}

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Homomorphism counts, reflectivity certificates and rainbow-cycle bounds";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<CapabilityError>(m, "CapabilityError", PyExc_RuntimeError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);

    py::class_<Graph>(m, "Graph")
        .def(py::init([](std::size_t n, const std::vector<Edge> & edges) { return Graph::from_edges(n, edges); }), py::arg("n"), py::arg("edges"))
        .def_property_readonly("order", &Graph::order)
        .def_property_readonly("size", &Graph::size)
        .def("degree", &Graph::degree)
        .def("adjacent", &Graph::adjacent)
        .def("edges", &Graph::edges)
        .def("neighbours", [](const Graph & g, Vertex v) { auto nb = g.neighbours(v); return std::vector<Vertex>(nb.begin(), nb.end()); })
        .def("label", &Graph::label)
        .def_property_readonly("min_degree", &Graph::min_degree)
        .def_property_readonly("max_degree", &Graph::max_degree)
        .def("__eq__", [](const Graph & a, const Graph & b) { return a == b; })
        .def("__repr__", [](const Graph & g) { return "<Graph n=" + std::to_string(g.order()) + " m=" + std::to_string(g.size()) + ">"; });

    py::class_<EdgeColouring>(m, "EdgeColouring")
        .def("colour", &EdgeColouring::colour)
        .def_property_readonly("colour_count", &EdgeColouring::colour_count)
        .def_property_readonly("is_proper", &EdgeColouring::is_proper)
        .def("triples", &EdgeColouring::triples);

    m.def("hypercube", &gen_hypercube, py::arg("d"));
    m.def("set_graph", &gen_set_graph, py::arg("l"), py::arg("k"));
    m.def("complete", &gen_complete, py::arg("n"));
    m.def("cycle", &gen_cycle, py::arg("n"));
    m.def("complete_bipartite", &gen_complete_bipartite, py::arg("a"), py::arg("b"));
    m.def("random_graph", [](std::size_t n, const py::object & p, std::uint64_t seed) { return gen_random(n, to_rational(p), seed); }, py::arg("n"), py::arg("p"), py::arg("seed"));
    m.def("edge_density", [](const Graph & g) { return to_py(edge_density(g)); });
    m.def("direction_colouring", [](int d) { auto c = direction_colouring(d); return py::make_tuple(c.graph, c.colouring); }, py::arg("d"));
    m.def("greedy_colouring", &greedy_proper_colouring, py::arg("g"), py::arg("seed"));

    m.def("automorphism_count", [](const Graph & h) { return enumerate_automorphisms(h).size(); });
    m.def("involution_count", [](const Graph & h) { return enumerate_involutions(h).size(); });

    m.def("hom_count", [](const Graph & h, const Graph & g, std::optional<std::vector<Vertex>> r) {
        return to_py(r ? hom_count(h, g, vertex_set(*r)) : hom_count(h, g));
    }, py::arg("pattern"), py::arg("host"), py::arg("r") = py::none());
    m.def("injective_hom_count", [](const Graph & h, const Graph & g) { return to_py(injective_hom_count(h, g)); });
    m.def("sidorenko_holds", [](const Graph & h, const Graph & g) { return sidorenko_check(h, g).holds; });
    m.def("turan_exponent", [](long v, long e, long t) { return to_py(turan_exponent({v, e, t})); }, py::arg("v"), py::arg("e"), py::arg("t"));

    m.def("certify_all_pairs", [](const Graph & h, std::size_t budget) {
        auto res = certify_all_pairs(h, budget);
        py::dict out;
        out["reflective"] = res.reflective;
        out["certified_pairs"] = res.certificates.size();
        std::vector<std::vector<Vertex>> unknown;
        for (auto r : res.unknown_pairs)
            unknown.push_back(r.members());
        out["unknown_pairs"] = unknown;
        std::size_t max_m = 0;
        for (auto & c : res.certificates)
            max_m = std::max(max_m, c.m());
        out["max_m"] = max_m;
        return out;
    }, py::arg("pattern"), py::arg("budget") = default_search_budget);
    m.def("certify", [](const Graph & h, const std::vector<Vertex> & r0, std::size_t budget) -> py::object {
        auto res = certify_reflective(h, vertex_set(r0), budget);
        if (! res.certificate)
            return py::none();
        return py::module_::import("json").attr("loads")(certificate_to_json(*res.certificate));
    }, py::arg("pattern"), py::arg("r0"), py::arg("budget") = default_search_budget);

    m.def("h2k_exact", [](const Graph & g, int k) { return to_py(h2k_exact(g, k)); }, py::arg("g"), py::arg("k"));
    m.def("h2k_spectral", [](const Graph & g, int k) { auto s = h2k_spectral(g, k); return py::make_tuple(s.value, s.error_bound); }, py::arg("g"), py::arg("k"));
    m.def("h2k_pattern", [](const Graph & g, const EdgeColouring & c, int k, int i, int j) { return to_py(h2k_pattern(g, c, k, i, j)); });
    m.def("find_rainbow_cycle", [](const Graph & g, const EdgeColouring & c, std::size_t max_len, std::size_t budget) {
        auto s = find_rainbow_cycle(g, c, max_len, budget);
        return py::make_tuple(s.cycle ? py::cast(*s.cycle) : py::none(), s.exhaustive);
    }, py::arg("g"), py::arg("colouring"), py::arg("max_len"), py::arg("budget") = default_cycle_budget);
}

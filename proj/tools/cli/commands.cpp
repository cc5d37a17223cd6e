#include <cli/commands.hpp>
#include <cli/hosts.hpp>
#include <cli/report.hpp>

#include <cubehom/error.hpp>
#include <cubehom/homcount.hpp>
#include <cubehom/rainbow.hpp>
#include <cubehom/reflectivity.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <optional>
#include <ostream>
#include <sstream>

namespace cubehom::cli
{
    namespace
    {
        struct Globals
        {
            std::uint64_t seed = 0;
            std::optional<std::size_t> budget;
            std::string out;
            std::string format = "text";
            bool timing = false;
        };

        struct Outcome
        {
            Json report;
            int code = exit_code::ok;
        };

        auto vertex_name(const Graph & g, Vertex v) -> std::string
        {
            return g.has_labels() ? g.label(v) : std::to_string(v);
        }

        auto set_names(const Graph & g, VertexSet s) -> Json
        {
            Json a = Json::array();
            for (Vertex v : s.members())
                a.push_back(vertex_name(g, v));
            return a;
        }

        auto cycle_names(const Graph & g, const std::vector<Vertex> & cycle) -> Json
        {
            Json a = Json::array();
            for (Vertex v : cycle)
                a.push_back(vertex_name(g, v));
            return a;
        }

        auto graph_summary(const Host & h) -> Json
        {
            Json j;
            j["spec"] = h.spec;
            j["vertices"] = h.graph.order();
            j["edges"] = h.graph.size();
            return j;
        }

        auto colouring_for(const Host & host, const std::string & path, std::uint64_t seed, std::string & source) -> EdgeColouring
        {
            if (! path.empty()) {
                source = "file " + path;
                return load_colouring(host.graph, path);
            }
            if (host.colouring) {
                source = "natural";
                return *host.colouring;
            }
            source = "greedy(seed " + std::to_string(seed) + ")";
            return greedy_proper_colouring(host.graph, seed);
        }

        // ---------------------------------------------------------------- gen

        struct GenArgs
        {
            std::string kind;
            int d = 3, l = 1, k = 3;
            std::size_t n = 10;
            std::string p = "1/2";
        };

        auto cmd_gen(const GenArgs & a, const Globals & g, const std::vector<std::string> & args, std::ostream & out) -> Outcome
        {
            Graph graph;
            std::optional<EdgeColouring> colouring;
            if (a.kind == "hypercube")
                graph = gen_hypercube(a.d);
            else if (a.kind == "setgraph")
                graph = gen_set_graph(a.l, a.k);
            else if (a.kind == "random")
                graph = gen_random(a.n, parse_rational(a.p), g.seed);
            else if (a.kind == "complete")
                graph = gen_complete(a.n);
            else if (a.kind == "cycle")
                graph = gen_cycle(a.n);
            else {
                auto coloured = direction_colouring(a.d);
                graph = std::move(coloured.graph);
                colouring = std::move(coloured.colouring);
            }

            std::ostringstream text;
            write_edge_list(text, graph);
            if (g.out.empty()) {
                if (colouring)
                    throw InputError("gen " + a.kind + " writes two files; pass --out");
                out << text.str();
                return {Json(), -1};
            }

            Outcome o{report_header(args)};
            o.report["kind"] = a.kind;
            o.report["vertices"] = graph.order();
            o.report["edges"] = graph.size();
            write_text_file(g.out, text.str());
            Json files = Json::array({g.out});
            if (colouring) {
                std::ostringstream ctext;
                write_colouring(ctext, graph, *colouring);
                write_text_file(g.out + ".col", ctext.str());
                files.push_back(g.out + ".col");
            }
            o.report["files"] = files;
            return o;
        }

        // ------------------------------------------------------------ certify

        struct CertifyArgs
        {
            std::string pattern;
            std::string r0;
            bool all_pairs = false;
            std::string method = "search";
            std::string cert_out;
        };

        auto certificate_summary(const Graph & h, const ReflectivityCertificate & cert) -> Json
        {
            auto check = verify_certificate(h, cert);
            Json j;
            j["start"] = set_names(h, cert.start);
            j["side"] = set_names(h, cert.side);
            j["m"] = cert.m();
            j["s"] = exact(cert.s());
            j["valid"] = check.ok;
            j["relaxed"] = check.relaxed;
            return j;
        }

        auto cmd_certify(const CertifyArgs & a, const Globals & g, const std::vector<std::string> & args) -> Outcome
        {
            auto host = parse_host(a.pattern);
            const Graph & h = host.graph;
            if (! bipartition(h))
                throw InputError("pattern is not bipartite");
            if (! is_connected(h))
                throw InputError("pattern is not connected");
            if (a.all_pairs == ! a.r0.empty())
                throw InputError("give exactly one of --r0 or --all-pairs");
            const std::size_t budget = g.budget.value_or(default_search_budget);

            Outcome o{report_header(args)};
            o.report["pattern"] = graph_summary(host);
            o.report["method"] = a.method;
            o.report["budget"] = budget;

            std::vector<ReflectivityCertificate> certs;
            if (! a.r0.empty()) {
                VertexSet r0 = parse_vertex_set(h, a.r0);
                o.report["start"] = set_names(h, r0);
                std::optional<ReflectivityCertificate> cert;
                if (a.method == "explicit") {
                    if (host.cube_dimension)
                        cert = hypercube_explicit_sequence(*host.cube_dimension, r0);
                    else if (host.set_graph)
                        cert = set_graph_explicit_sequence(host.set_graph->first, host.set_graph->second, r0);
                    else
                        throw InputError("explicit sequences exist only for hypercube(d) and setgraph(l,k) patterns");
                }
                else {
                    auto result = certify_reflective(h, r0, budget);
                    o.report["states_visited"] = result.states_visited;
                    cert = result.certificate;
                }
                o.report["certified"] = cert ? "yes" : "unknown";
                if (cert) {
                    o.report["certificate"] = certificate_summary(h, *cert);
                    certs.push_back(*cert);
                }
                else
                    o.code = exit_code::budget;
            }
            else {
                if (a.method != "search")
                    throw InputError("--all-pairs uses the search method");
                auto result = certify_all_pairs(h, budget);
                o.report["reflective"] = result.reflective ? "yes" : "unknown";
                o.report["used_part_swap"] = result.used_part_swap;
                o.report["certified_pairs"] = result.certificates.size();
                Json unknown = Json::array();
                for (auto r : result.unknown_pairs)
                    unknown.push_back(set_names(h, r));
                o.report["unknown_pairs"] = unknown;
                std::size_t max_m = 0;
                bool all_valid = true;
                for (auto & c : result.certificates) {
                    max_m = std::max(max_m, c.m());
                    all_valid = all_valid && verify_certificate(h, c).ok;
                }
                o.report["max_m"] = max_m;
                o.report["all_certificates_valid"] = all_valid;
                certs = result.certificates;
                if (! all_valid)
                    o.code = exit_code::violated;
                else if (! result.reflective)
                    o.code = exit_code::budget;
            }

            if (! a.cert_out.empty()) {
                std::string text;
                if (! a.all_pairs && certs.size() == 1)
                    text = certificate_to_json(certs.front());
                else {
                    Json arr = Json::array();
                    for (auto & c : certs)
                        arr.push_back(Json::parse(certificate_to_json(c)));
                    text = arr.dump(2) + "\n";
                }
                write_text_file(a.cert_out, text);
                o.report["certificate_file"] = a.cert_out;
            }
            return o;
        }

        // ------------------------------------------------------------- verify

        struct VerifyArgs
        {
            std::string suite;
            std::string pattern = "Q3";
            std::string host;
            std::string colouring;
            std::string cert;
            int k = 0;
            int k_max = 0;
            std::string eps;
        };

        auto require(const std::string & value, const std::string & flag) -> const std::string &
        {
            if (value.empty())
                throw InputError("missing " + flag);
            return value;
        }

        auto verify_section2(const VerifyArgs & a, const Globals & g, Outcome & o)
        {
            auto pattern = parse_host(a.pattern);
            auto host = parse_host(require(a.host, "--host"));
            const Graph & h = pattern.graph;
            const Graph & G = host.graph;
            o.report["pattern"] = graph_summary(pattern);
            o.report["host"] = graph_summary(host);

            auto sid = sidorenko_check(h, G);
            Json sj;
            sj["lhs"] = exact(sid.lhs);
            sj["rhs"] = exact(sid.rhs);
            sj["rhs_decimal"] = decimal(sid.rhs);
            sj["holds"] = sid.holds;
            if (sid.rhs != 0)
                sj["margin"] = decimal(Rational(sid.lhs) / sid.rhs);
            o.report["sidorenko"] = sj;

            auto parts = pattern_parts(h);
            auto triples = enumerate_nice_triples(h);
            std::size_t instances = 0, violations = 0;
            Json first_violation;
            for (auto & t : triples)
                for (auto part : parts) {
                    auto members = part.members();
                    const std::size_t count = std::size_t{1} << members.size();
                    for (std::size_t mask = 1; mask < count; ++mask) {
                        if (std::popcount(mask) < 2)
                            continue;
                        VertexSet r;
                        for (std::size_t i = 0; i < members.size(); ++i)
                            if ((mask >> i) & 1u)
                                r.insert(members[i]);
                        if (! is_admissible(h, t, r))
                            continue;
                        ++instances;
                        auto res = check_reflection_inequality(h, G, t, r);
                        if (! res.holds()) {
                            if (violations == 0) {
                                first_violation["R"] = set_names(h, r);
                                first_violation["A"] = set_names(h, t.a);
                                first_violation["hom_R"] = exact(res.hom_r);
                                first_violation["hom_psi_AB"] = exact(res.hom_psi_ab);
                                first_violation["hom_psi_BA"] = exact(res.hom_psi_ba);
                            }
                            ++violations;
                        }
                    }
                }
            Json rj;
            rj["nice_triples"] = triples.size();
            rj["instances"] = instances;
            rj["violations"] = violations;
            if (violations)
                rj["first_violation"] = first_violation;
            o.report["reflection_one_step"] = rj;

            auto all = certify_all_pairs(h, g.budget.value_or(default_search_budget));
            std::size_t final_violations = 0;
            Json cases = Json::array();
            for (auto & cert : all.certificates) {
                auto fin = check_final_inequality(h, G, cert);
                if (! fin.holds)
                    ++final_violations;
                Json c;
                c["start"] = set_names(h, cert.start);
                c["m"] = fin.m;
                c["hom_start"] = exact(fin.hom_start);
                c["hom_side"] = exact(fin.hom_side);
                c["holds"] = fin.holds;
                cases.push_back(c);
            }
            Json fj;
            fj["certificates"] = all.certificates.size();
            fj["unknown_pairs"] = all.unknown_pairs.size();
            fj["hom_all"] = exact(hom_count(h, G));
            fj["violations"] = final_violations;
            fj["cases"] = cases;
            o.report["final_inequality"] = fj;

            bool ok = sid.holds && violations == 0 && final_violations == 0;
            o.report["all_hold"] = ok;
            if (! ok)
                o.code = exit_code::violated;
            else if (! all.unknown_pairs.empty())
                o.code = exit_code::budget;
        }

        auto witness_json(const Graph & G, const EdgeColouring & c, const CycleSearch & s, const std::string & kind) -> Json
        {
            Json w;
            w["kind"] = kind;
            w["found"] = s.cycle.has_value();
            w["search_completed"] = s.completed;
            w["exhaustive"] = s.exhaustive;
            if (s.cycle) {
                w["cycle"] = cycle_names(G, *s.cycle);
                w["length"] = s.cycle->size();
                w["distinct_colours"] = distinct_colours(G, c, *s.cycle);
            }
            return w;
        }

        auto chain_json(const PatternChainReport & r) -> Json
        {
            Json j;
            j["k"] = r.k;
            j["h2k"] = exact(r.h2k);
            j["h2k_decimal"] = decimal(r.h2k);
            Json pats = Json::array();
            for (int i = 1; i <= 2 * r.k; ++i)
                for (int jj = i + 1; jj <= 2 * r.k; ++jj) {
                    Json p;
                    p["i"] = i;
                    p["j"] = jj;
                    p["value"] = exact(r.pattern(i, jj));
                    pats.push_back(p);
                }
            j["patterns"] = pats;
            Json ineqs = Json::array();
            for (auto & c : r.checks) {
                Json e;
                e["name"] = c.name;
                e["lhs"] = exact(c.lhs);
                e["rhs"] = exact(c.rhs);
                e["holds"] = c.holds;
                e["conditional"] = c.conditional;
                ineqs.push_back(e);
            }
            j["inequalities"] = ineqs;
            return j;
        }

        /// Tracks the contrapositive pipeline: a failed conditional bound
        /// requires a witness cycle from the finder.
        struct Pipeline
        {
            bool unconditional_violation = false;
            bool rainbow_needed = false;
            bool almost_needed = false;
            std::size_t bounds_violated = 0;

            void absorb(const PatternChainReport & r)
            {
                for (auto & c : r.checks) {
                    if (! c.conditional && ! c.holds)
                        unconditional_violation = true;
                    if (c.conditional && ! c.holds) {
                        ++bounds_violated;
                        if (c.name.rfind("variant_", 0) == 0)
                            almost_needed = true;
                        else
                            rainbow_needed = true;
                    }
                }
            }

            /// Runs the finders that are needed; returns witnesses and updates `code`.
            auto witnesses(const Graph & G, const EdgeColouring & c, const std::optional<Rational> & eps, std::size_t budget, int & code, std::size_t & failures) const -> Json
            {
                Json ws = Json::array();
                auto handle = [&](const CycleSearch & s, const std::string & kind) {
                    ws.push_back(witness_json(G, c, s, kind));
                    if (! s.cycle) {
                        if (s.completed) {
                            ++failures;
                            code = std::max(code, exit_code::violated);
                        }
                        else if (code == exit_code::ok)
                            code = exit_code::budget;
                    }
                };
                if (rainbow_needed)
                    handle(find_rainbow_cycle(G, c, G.order(), budget), "rainbow");
                if (almost_needed && eps)
                    handle(find_almost_rainbow(G, c, *eps, G.order(), budget), "almost-rainbow");
                return ws;
            }
        };

        auto k_range(int k, int k_max) -> std::pair<int, int>
        {
            if (k && k_max)
                throw InputError("give at most one of --k and --k-max");
            if (k_max)
                return {1, k_max};
            return {k ? k : 2, k ? k : 2};
        }

        auto verify_section3(const VerifyArgs & a, const Globals & g, Outcome & o)
        {
            auto host = parse_host(require(a.host, "--host"));
            std::string source;
            auto colouring = colouring_for(host, a.colouring, g.seed, source);
            std::optional<Rational> eps;
            if (! a.eps.empty())
                eps = parse_rational(a.eps);
            auto [k_lo, k_hi] = k_range(a.k, a.k_max);

            o.report["host"] = graph_summary(host);
            o.report["colouring"] = source;
            o.report["colours"] = colouring.colour_count();
            if (eps)
                o.report["eps"] = exact(*eps);

            Pipeline pipe;
            Json per_k = Json::array();
            for (int k = k_lo; k <= k_hi; ++k) {
                auto r = eps ? check_variant_chain(host.graph, colouring, k, *eps) : check_pattern_chain(host.graph, colouring, k);
                pipe.absorb(r);
                per_k.push_back(chain_json(r));
            }
            o.report["results"] = per_k;
            o.report["unconditional_ok"] = ! pipe.unconditional_violation;
            o.report["conditional_bounds_violated"] = pipe.bounds_violated;
            std::size_t failures = 0;
            int code = exit_code::ok;
            o.report["cycles_found"] = pipe.witnesses(host.graph, colouring, eps, g.budget.value_or(default_cycle_budget), code, failures);
            o.report["pipeline_failures"] = failures;
            if (pipe.unconditional_violation)
                code = exit_code::violated;
            o.code = code;
        }

        auto verify_certificate_file(const VerifyArgs & a, Outcome & o)
        {
            auto pattern = parse_host(a.pattern);
            auto cert = certificate_from_json(pattern.graph, read_text_file(require(a.cert, "--cert")));
            auto check = verify_certificate(pattern.graph, cert);
            o.report["pattern"] = graph_summary(pattern);
            o.report["valid"] = check.ok;
            o.report["failed_step"] = check.failed_step;
            o.report["message"] = check.message;
            o.report["relaxed"] = check.relaxed;
            o.report["m"] = cert.m();
            o.report["s"] = exact(cert.s());
            if (! check.ok)
                o.code = exit_code::input_error;
        }

        auto cmd_verify(const VerifyArgs & a, const Globals & g, const std::vector<std::string> & args) -> Outcome
        {
            Outcome o{report_header(args)};
            o.report["suite"] = a.suite;
            if (a.suite == "section2")
                verify_section2(a, g, o);
            else if (a.suite == "section3")
                verify_section3(a, g, o);
            else
                verify_certificate_file(a, o);
            return o;
        }

        // --------------------------------------------------------- experiment

        struct ExperimentArgs
        {
            std::string name;
            int d = 3;
            std::size_t n = 40;
            std::string p = "7/10";
            std::size_t trials = 5;
            std::string host;
            int k_max = 4;
            std::string eps;
            std::string threshold = "1/10";
        };

        auto experiment_supersaturation(const ExperimentArgs & a, const Globals & g, Outcome & o)
        {
            Rational p = parse_rational(a.p);
            Rational threshold = parse_rational(a.threshold);
            auto rep = supersaturation_experiment(a.d, a.n, p, g.seed, a.trials);
            Json params;
            params["d"] = a.d;
            params["n"] = a.n;
            params["p"] = exact(p);
            params["seed"] = g.seed;
            params["trials"] = a.trials;
            params["threshold"] = exact(threshold);
            o.report["parameters"] = params;

            std::vector<Rational> ratios, fractions;
            Json trials = Json::array();
            bool all_above = true;
            for (auto & t : rep.trials) {
                Json j;
                j["seed"] = t.seed;
                j["n"] = a.n;
                j["p"] = exact(p);
                j["edges"] = t.edges;
                j["density"] = exact(t.density);
                j["hom"] = exact(t.hom);
                j["injective"] = exact(t.injective);
                j["non_injective_fraction"] = exact(t.non_injective_fraction);
                j["non_injective_fraction_decimal"] = decimal(t.non_injective_fraction);
                if (t.ratio) {
                    j["ratio"] = exact(*t.ratio);
                    j["ratio_decimal"] = decimal(*t.ratio);
                    ratios.push_back(*t.ratio);
                    all_above = all_above && *t.ratio >= threshold;
                }
                else {
                    j["ratio"] = nullptr;
                    j["ratio_decimal"] = nullptr;
                }
                j["almost_regularity_K"] = exact(t.almost_regularity);
                fractions.push_back(t.non_injective_fraction);
                trials.push_back(j);
            }
            o.report["trials"] = trials;
            Json agg;
            if (! ratios.empty()) {
                agg["ratio_min"] = decimal(*std::min_element(ratios.begin(), ratios.end()));
                agg["ratio_median"] = decimal(median(ratios));
                agg["ratio_max"] = decimal(*std::max_element(ratios.begin(), ratios.end()));
            }
            if (! fractions.empty())
                agg["non_injective_fraction_max"] = decimal(*std::max_element(fractions.begin(), fractions.end()));
            agg["all_ratios_at_least_threshold"] = all_above && ! ratios.empty();
            o.report["aggregate"] = agg;
        }

        auto experiment_rainbow(const ExperimentArgs & a, const Globals & g, Outcome & o, bool almost)
        {
            std::optional<Rational> eps;
            if (almost) {
                if (a.eps.empty())
                    throw InputError("almost-rainbow-bounds needs --eps");
                eps = parse_rational(a.eps);
            }
            if (a.k_max < 1)
                throw InputError("--k-max must be at least 1");

            std::vector<Host> hosts;
            if (! a.host.empty())
                hosts.push_back(parse_host(a.host));
            else {
                Rational p = parse_rational(a.p);
                for (std::size_t i = 0; i < a.trials; ++i) {
                    Host h;
                    h.spec = "random(" + std::to_string(a.n) + "," + to_fraction_string(p) + "," + std::to_string(g.seed + i) + ")";
                    h.graph = peel_min_degree(gen_random(a.n, p, g.seed + i), 1).graph;
                    hosts.push_back(std::move(h));
                }
            }

            const std::size_t budget = g.budget.value_or(default_cycle_budget);
            Json results = Json::array();
            std::size_t violated_bounds = 0, witnesses_found = 0, failures = 0;
            bool unconditional_violation = false;
            int code = exit_code::ok;
            for (std::size_t idx = 0; idx < hosts.size(); ++idx) {
                auto & host = hosts[idx];
                Json hj = graph_summary(host);
                if (host.graph.order() == 0 || host.graph.min_degree() == 0) {
                    hj["skipped"] = "empty host or isolated vertex";
                    results.push_back(hj);
                    continue;
                }
                std::string source;
                auto colouring = colouring_for(host, "", g.seed + idx, source);
                hj["colouring"] = source;
                hj["colours"] = colouring.colour_count();
                hj["min_degree"] = host.graph.min_degree();
                bool exact_path = host.graph.order() <= max_pattern_order;
                hj["method"] = exact_path ? "exact" : "spectral";

                Pipeline pipe;
                Json per_k = Json::array();
                Rational delta(BigInt(static_cast<unsigned long>(host.graph.min_degree())));
                Rational n(BigInt(static_cast<unsigned long>(host.graph.order())));
                for (int k = 1; k <= a.k_max; ++k) {
                    Json kj;
                    kj["k"] = k;
                    if (exact_path) {
                        auto r = eps ? check_variant_chain(host.graph, colouring, k, *eps) : check_pattern_chain(host.graph, colouring, k);
                        pipe.absorb(r);
                        kj["h2k"] = exact(r.h2k);
                        kj["h2k_decimal"] = decimal(r.h2k);
                        Json bounds = Json::array();
                        for (auto & c : r.checks) {
                            if (! c.conditional)
                                continue;
                            Json b;
                            b["name"] = c.name;
                            b["rhs"] = exact(c.rhs);
                            b["holds"] = c.holds;
                            bounds.push_back(b);
                        }
                        kj["bounds"] = bounds;
                        kj["unconditional_ok"] = r.unconditional_ok();
                    }
                    else {
                        auto s = h2k_spectral(host.graph, k);
                        Rational factor = eps ? Rational(Rational(BigInt(k)) / (*eps * delta)) : Rational(Rational(BigInt(2 * k * k)) / delta);
                        Rational rhs = pow(factor, static_cast<unsigned long>(k)) * n;
                        bool holds = s.value - s.error_bound <= to_double(rhs);
                        kj["h2k_spectral"] = decimal(s.value);
                        kj["error_bound"] = decimal(s.error_bound);
                        Json b;
                        b["name"] = eps ? "variant_corollary" : "corollary";
                        b["rhs"] = exact(rhs);
                        b["holds"] = holds;
                        kj["bounds"] = Json::array({b});
                        bool lower_ok = s.value + s.error_bound >= 1.0;
                        kj["unconditional_ok"] = lower_ok;
                        if (! lower_ok)
                            pipe.unconditional_violation = true;
                        if (! holds) {
                            ++pipe.bounds_violated;
                            (eps ? pipe.almost_needed : pipe.rainbow_needed) = true;
                        }
                    }
                    per_k.push_back(kj);
                }
                hj["per_k"] = per_k;
                std::size_t host_failures = 0;
                auto ws = pipe.witnesses(host.graph, colouring, eps, budget, code, host_failures);
                for (auto & w : ws)
                    if (w["found"].get<bool>())
                        ++witnesses_found;
                hj["witnesses"] = ws;
                failures += host_failures;
                violated_bounds += pipe.bounds_violated;
                unconditional_violation = unconditional_violation || pipe.unconditional_violation;
                results.push_back(hj);
            }
            Json params;
            params["k_max"] = a.k_max;
            if (eps)
                params["eps"] = exact(*eps);
            params["seed"] = g.seed;
            o.report["parameters"] = params;
            o.report["hosts"] = results;
            Json summary;
            summary["bounds_violated"] = violated_bounds;
            summary["witnesses_found"] = witnesses_found;
            summary["pipeline_failures"] = failures;
            summary["unconditional_ok"] = ! unconditional_violation;
            o.report["summary"] = summary;
            if (unconditional_violation)
                code = exit_code::violated;
            o.code = code;
        }

        auto cmd_experiment(const ExperimentArgs & a, const Globals & g, const std::vector<std::string> & args) -> Outcome
        {
            Outcome o{report_header(args)};
            o.report["experiment"] = a.name;
            if (a.name == "supersaturation")
                experiment_supersaturation(a, g, o);
            else
                experiment_rainbow(a, g, o, a.name == "almost-rainbow-bounds");
            return o;
        }

        // ----------------------------------------------------------- homcount

        struct HomcountArgs
        {
            std::string pattern;
            std::string host;
            std::string r;
            bool injective = false;
        };

        auto cmd_homcount(const HomcountArgs & a, const std::vector<std::string> & args) -> Outcome
        {
            auto pattern = parse_host(a.pattern);
            auto host = parse_host(a.host);
            Outcome o{report_header(args)};
            o.report["pattern"] = graph_summary(pattern);
            o.report["host"] = graph_summary(host);
            if (a.injective) {
                if (! a.r.empty())
                    throw InputError("--injective cannot be combined with --r");
                o.report["mode"] = "injective";
                o.report["count"] = exact(injective_hom_count(pattern.graph, host.graph));
            }
            else if (! a.r.empty()) {
                auto r = parse_vertex_set(pattern.graph, a.r);
                o.report["mode"] = "constrained";
                o.report["constraint"] = set_names(pattern.graph, r);
                o.report["count"] = exact(hom_count(pattern.graph, host.graph, r));
            }
            else {
                o.report["mode"] = "all";
                o.report["count"] = exact(hom_count(pattern.graph, host.graph));
            }
            return o;
        }

        // ---------------------------------------------------------------- h2k

        struct H2kArgs
        {
            std::string host;
            int k = 2;
            std::string method = "both";
            bool patterns = false;
            std::string colouring;
        };

        auto cmd_h2k(const H2kArgs & a, const Globals & g, const std::vector<std::string> & args) -> Outcome
        {
            auto host = parse_host(a.host);
            Outcome o{report_header(args)};
            o.report["host"] = graph_summary(host);
            o.report["k"] = a.k;
            std::optional<Rational> ex;
            std::optional<SpectralValue> sp;
            if (a.method != "spectral") {
                ex = h2k_exact(host.graph, a.k);
                o.report["h2k"] = exact(*ex);
                o.report["h2k_decimal"] = decimal(*ex);
            }
            if (a.method != "exact") {
                sp = h2k_spectral(host.graph, a.k);
                o.report["h2k_spectral"] = decimal(sp->value);
                o.report["error_bound"] = decimal(sp->error_bound);
            }
            if (ex && sp) {
                double e = to_double(*ex);
                bool agree = std::abs(e - sp->value) <= std::max(sp->error_bound, 1e-9 * e);
                o.report["agree"] = agree;
                if (! agree)
                    o.code = exit_code::violated;
            }
            if (a.patterns) {
                std::string source;
                auto colouring = colouring_for(host, a.colouring, g.seed, source);
                auto gaps = h2k_pattern_gaps(host.graph, colouring, a.k);
                o.report["colouring"] = source;
                Json pats = Json::array();
                for (int i = 1; i <= 2 * a.k; ++i)
                    for (int j = i + 1; j <= 2 * a.k; ++j) {
                        Json p;
                        p["i"] = i;
                        p["j"] = j;
                        p["value"] = exact(gaps[static_cast<std::size_t>(pattern_gap(a.k, i, j) - 1)]);
                        pats.push_back(p);
                    }
                o.report["patterns"] = pats;
            }
            return o;
        }
    }

    auto run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int
    {
        CLI::App app{"cubehom: constrained homomorphism counts, reflection certificates and rainbow-cycle bounds", "cubehom"};
        app.require_subcommand(1);
        app.fallthrough();
        Globals g;
        app.add_option("--seed", g.seed, "Seed for random hosts and colourings");
        app.add_option("--budget", g.budget, "Search budget (states or DFS nodes)");
        app.add_option("--out", g.out, "Write the report (or generated graph) to this file");
        app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"text", "json"}));
        app.add_flag("--timing", g.timing, "Print wall-clock time to stderr");

        GenArgs gen_args;
        auto * gen = app.add_subcommand("gen", "Generate a graph file");
        gen->add_option("kind", gen_args.kind, "Graph family")->required()->check(CLI::IsMember({"hypercube", "setgraph", "random", "complete", "cycle", "direction-coloured-cube", "direction-cube"}));
        gen->add_option("--d", gen_args.d, "Cube dimension");
        gen->add_option("--l", gen_args.l, "Set graph: size of the small sets");
        gen->add_option("--k", gen_args.k, "Set graph: ground set size");
        gen->add_option("--n", gen_args.n, "Number of vertices");
        gen->add_option("--p", gen_args.p, "Edge probability, e.g. 1/2");

        CertifyArgs cert_args;
        auto * certify = app.add_subcommand("certify", "Search for or construct reflectivity certificates");
        certify->add_option("pattern", cert_args.pattern, "Pattern graph (host form or file)")->required();
        certify->add_option("--r0", cert_args.r0, "Starting pair, e.g. 000,011");
        certify->add_flag("--all-pairs", cert_args.all_pairs, "Certify every pair on both sides");
        certify->add_option("--method", cert_args.method, "search (BFS) or explicit (cube and set graph sequences)")->check(CLI::IsMember({"search", "explicit"}));
        certify->add_option("--cert-out", cert_args.cert_out, "Write certificate JSON here");

        VerifyArgs verify_args;
        auto * verify = app.add_subcommand("verify", "Check inequality suites");
        verify->add_option("suite", verify_args.suite, "Inequality suite")->required()->check(CLI::IsMember({"section2", "section3", "certificate"}));
        verify->add_option("--pattern", verify_args.pattern, "Pattern graph for section2");
        verify->add_option("--host", verify_args.host, "Host graph");
        verify->add_option("--colouring", verify_args.colouring, "Colouring file (default: natural or greedy)");
        verify->add_option("--cert", verify_args.cert, "Certificate JSON for the certificate suite");
        verify->add_option("--k", verify_args.k, "Half cycle length");
        verify->add_option("--k-max", verify_args.k_max, "Check every k from 1 to this value");
        verify->add_option("--eps", verify_args.eps, "Also run the almost-rainbow variant with this epsilon");

        ExperimentArgs exp_args;
        auto * experiment = app.add_subcommand("experiment", "Seeded batch experiments");
        experiment->add_option("name", exp_args.name, "Experiment")->required()->check(CLI::IsMember({"supersaturation", "rainbow-bounds", "almost-rainbow-bounds"}));
        experiment->add_option("--d", exp_args.d, "Cube dimension (supersaturation supports 3)");
        experiment->add_option("--n", exp_args.n, "Host size");
        experiment->add_option("--p", exp_args.p, "Edge probability");
        experiment->add_option("--trials", exp_args.trials, "Number of seeded trials");
        experiment->add_option("--host", exp_args.host, "Fixed host instead of random ones");
        experiment->add_option("--k-max", exp_args.k_max, "Largest half cycle length");
        experiment->add_option("--eps", exp_args.eps, "Epsilon for almost-rainbow bounds");
        experiment->add_option("--threshold", exp_args.threshold, "Ratio threshold for supersaturation");

        HomcountArgs hom_args;
        auto * homcount = app.add_subcommand("homcount", "Count homomorphisms");
        homcount->add_option("--pattern", hom_args.pattern, "Pattern graph")->required();
        homcount->add_option("--host", hom_args.host, "Host graph")->required();
        homcount->add_option("--r", hom_args.r, "Constraint set mapped to one vertex");
        homcount->add_flag("--injective", hom_args.injective, "Count injective homomorphisms");

        H2kArgs h2k_args;
        auto * h2k = app.add_subcommand("h2k", "Weighted homomorphic cycle counts");
        h2k->add_option("--host", h2k_args.host, "Host graph")->required();
        h2k->add_option("--k", h2k_args.k, "Half cycle length");
        h2k->add_option("--method", h2k_args.method, "Evaluation path")->check(CLI::IsMember({"exact", "spectral", "both"}));
        h2k->add_flag("--patterns", h2k_args.patterns, "Also report the colour-coincidence patterns");
        h2k->add_option("--colouring", h2k_args.colouring, "Colouring file for --patterns");

        try {
            std::vector<std::string> reversed(args.rbegin(), args.rend());
            app.parse(reversed);
        }
        catch (const CLI::ParseError & e) {
            int code = app.exit(e, out, err);
            return code == 0 ? exit_code::ok : exit_code::input_error;
        }

        auto start = std::chrono::steady_clock::now();
        try {
            Outcome o;
            if (gen->parsed())
                o = cmd_gen(gen_args, g, args, out);
            else if (certify->parsed())
                o = cmd_certify(cert_args, g, args);
            else if (verify->parsed())
                o = cmd_verify(verify_args, g, args);
            else if (experiment->parsed())
                o = cmd_experiment(exp_args, g, args);
            else if (homcount->parsed())
                o = cmd_homcount(hom_args, args);
            else
                o = cmd_h2k(h2k_args, g, args);

            if (o.code >= 0) {
                std::string text = render(o.report, g.format == "json" ? Format::json : Format::text);
                if (! g.out.empty() && ! gen->parsed())
                    write_text_file(g.out, text);
                else
                    out << text;
            }
            else
                o.code = exit_code::ok;
            if (g.timing) {
                std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
                err << "elapsed: " << elapsed.count() << " s\n";
            }
            return o.code;
        }
        catch (const InputError & e) {
            err << "input error: " << e.what() << "\n";
            return exit_code::input_error;
        }
        catch (const PreconditionError & e) {
            err << "precondition violated: " << e.what() << "\n";
            return exit_code::input_error;
        }
        catch (const CapabilityError & e) {
            err << "capability limit: " << e.what() << "\n";
            return exit_code::budget;
        }
        catch (const std::logic_error & e) {
            err << "internal invariant violated: " << e.what() << "\n";
            return exit_code::violated;
        }
        catch (const std::exception & e) {
            err << "error: " << e.what() << "\n";
            return exit_code::violated;
        }
    }
}

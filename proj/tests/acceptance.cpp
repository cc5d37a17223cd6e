// Acceptance driver: prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include "oracles.hpp"

#include <cli/commands.hpp>
#include <cubehom/automorphism.hpp>
#include <cubehom/homcount.hpp>
#include <cubehom/rainbow.hpp>
#include <cubehom/reflectivity.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace cubehom;

auto oracle_read(const std::string & path) -> std::string;

namespace
{
    using Clock = std::chrono::steady_clock;

    auto seconds_since(Clock::time_point start) -> double
    {
        return std::chrono::duration<double>(Clock::now() - start).count();
    }

    struct Outcome
    {
        bool pass = true;
        std::string detail;

        void require(bool ok, const std::string & what)
        {
            if (! ok) {
                pass = false;
                if (! detail.empty())
                    detail += "; ";
                detail += what;
            }
        }
    };

    int failures = 0;

    void report(int id, const std::string & title, Outcome o, double secs)
    {
        std::ostringstream line;
        line << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << title;
        line.setf(std::ios::fixed);
        line.precision(2);
        line << " (" << secs << "s)";
        if (! o.detail.empty())
            line << " - " << o.detail;
        std::cout << line.str() << std::endl;
        failures += ! o.pass;
    }

    auto random_host(std::mt19937_64 & rng, std::size_t n_lo, std::size_t n_hi, const Rational & p) -> Graph
    {
        auto n = n_lo + uniform_below(rng, n_hi - n_lo + 1);
        return gen_random(n, p, rng());
    }

    auto min_degree_host(std::mt19937_64 & rng, std::size_t n_lo, std::size_t n_hi, const Rational & p) -> Graph
    {
        for (;;) {
            auto g = peel_min_degree(random_host(rng, n_lo, n_hi, p), 1).graph;
            if (g.order() >= 3)
                return g;
        }
    }

    auto criterion1() -> Outcome
    {
        Outcome o;
        o.require(turan_exponent({8, 12, 4}) == frac(13, 8), "turan_exponent(8,12,4) != 13/8");
        for (long d = 3; d <= 10; ++d) {
            long v = 1L << d, e = d << (d - 1), t = 1L << (d - 1);
            Rational closed = frac(2, 1) - frac(1, d - 1) + frac(1, (d - 1) * t);
            o.require(turan_exponent({v, e, t}) == closed, "identity fails at d=" + std::to_string(d));
        }
        return o;
    }

    auto criterion2() -> Outcome
    {
        Outcome o;
        for (int d = 3; d <= 4; ++d) {
            auto q = gen_hypercube(d);
            auto parts = pattern_parts(q);
            std::size_t pairs = 0;
            for (auto part : parts) {
                auto m = part.members();
                for (std::size_t i = 0; i < m.size(); ++i)
                    for (std::size_t j = i + 1; j < m.size(); ++j) {
                        auto res = certify_reflective(q, VertexSet{m[i], m[j]});
                        bool ok = res.certificate && verify_certificate(q, *res.certificate).ok && res.certificate->steps.empty() == false
                                  && res.certificate->steps.back().next == part;
                        o.require(ok, "Q" + std::to_string(d) + " pair " + to_string(VertexSet{m[i], m[j]}) + " not certified");
                        ++pairs;
                    }
            }
            std::size_t half = std::size_t{1} << (d - 1);
            o.require(pairs == half * (half - 1), "wrong pair count");
        }
        for (int d = 3; d <= 6; ++d) {
            for (auto & ci : hypercube_claim_identities(d))
                o.require(ci.swap_step && ci.complement_step, "claim identity fails at d=" + std::to_string(d) + " k=" + std::to_string(ci.k));
            auto q = gen_hypercube(d);
            auto even = pattern_parts(q)[0].members();
            for (std::size_t j = 1; j < even.size(); ++j) {
                auto cert = hypercube_explicit_sequence(d, VertexSet{even[0], even[j]});
                o.require(verify_certificate(q, cert).ok, "explicit cube sequence fails at d=" + std::to_string(d));
            }
        }
        for (auto [l, k] : {std::pair{1, 3}, {1, 4}, {2, 5}}) {
            auto h = gen_set_graph(l, k);
            auto side = pattern_parts(h)[0].members();
            for (std::size_t i = 0; i < side.size(); ++i)
                for (std::size_t j = i + 1; j < side.size(); ++j)
                    o.require(verify_certificate(h, set_graph_explicit_sequence(l, k, VertexSet{side[i], side[j]})).ok,
                              "set graph sequence fails for (" + std::to_string(l) + "," + std::to_string(k) + ")");
        }
        // H_{1,3} against C_6 through an isomorphism
        auto h13 = gen_set_graph(1, 3);
        auto c6 = gen_cycle(6);
        std::vector<Vertex> iso{0, 1, 2, 3, 4, 5};
        do {
            bool ok = true;
            for (auto [u, v] : c6.edges())
                ok = ok && h13.adjacent(iso[static_cast<std::size_t>(u)], iso[static_cast<std::size_t>(v)]);
            if (ok)
                break;
        } while (std::next_permutation(iso.begin(), iso.end()));
        std::vector<Vertex> back(6);
        for (std::size_t v = 0; v < 6; ++v)
            back[static_cast<std::size_t>(iso[v])] = static_cast<Vertex>(v);
        auto explicit_cert = set_graph_explicit_sequence(1, 3, VertexSet{0, 1});
        auto on_c6 = transport(explicit_cert, back);
        o.require(verify_certificate(c6, on_c6).ok, "H13 certificate does not transport to C6");
        auto searched = certify_reflective(c6, on_c6.start);
        o.require(searched.certificate && verify_certificate(h13, transport(*searched.certificate, iso)).ok, "C6 certificate does not transport to H13");
        return o;
    }

    auto criterion3() -> Outcome
    {
        Outcome o;
        auto q3 = gen_hypercube(3);
        auto triples = enumerate_nice_triples(q3);
        auto parts = pattern_parts(q3);
        std::mt19937_64 rng(2024);
        std::size_t instances = 0, violations = 0;
        while (instances < 1200) {
            auto g = random_host(rng, 4, 12, frac(1, 2));
            for (int rep = 0; rep < 10; ++rep) {
                auto & t = triples[uniform_below(rng, triples.size())];
                VertexSet r(parts[uniform_below(rng, 2)].bits() & rng());
                if (r.empty() || ! is_admissible(q3, t, r))
                    continue;
                ++instances;
                violations += ! check_reflection_inequality(q3, g, t, r).holds();
            }
        }
        o.require(violations == 0, std::to_string(violations) + " one-step violations");

        auto certs = certify_all_pairs(q3).certificates;
        std::size_t hosts = 0, final_violations = 0;
        for (; hosts < 120; ++hosts) {
            auto g = random_host(rng, 4, 12, frac(1, 2));
            for (int rep = 0; rep < 3; ++rep)
                final_violations += ! check_final_inequality(q3, g, certs[uniform_below(rng, certs.size())]).holds;
        }
        o.require(final_violations == 0, std::to_string(final_violations) + " final-inequality violations");
        o.detail = o.detail.empty() ? std::to_string(instances) + " one-step instances, " + std::to_string(hosts) + " final-inequality hosts" : o.detail;
        return o;
    }

    auto criterion4() -> Outcome
    {
        Outcome o;
        auto q3 = gen_hypercube(3);
        std::mt19937_64 rng(77);
        std::size_t violations = 0;
        for (int i = 0; i < 100; ++i) {
            auto n = 10 + uniform_below(rng, 31);
            auto p = frac(static_cast<long>(1 + uniform_below(rng, 9)), 10);
            auto g = gen_random(n, p, rng());
            auto r = sidorenko_check(q3, g);
            // independent restatement of the right-hand side
            Rational density = Rational(BigInt(2 * g.size())) / Rational(BigInt(n * n));
            Rational rhs = pow(Rational(BigInt(n)), 8) * pow(density, 12);
            violations += ! (r.holds && r.rhs == rhs && Rational(r.lhs) >= rhs);
        }
        o.require(violations == 0, std::to_string(violations) + " violations");
        return o;
    }

    auto criterion5() -> Outcome
    {
        Outcome o;
        auto rep = supersaturation_experiment(3, 40, frac(7, 10), 1, 5);
        Rational n8p12 = pow(Rational(40), 8) * pow(frac(7, 10), 12);
        Rational worst_fraction = 0;
        std::optional<Rational> worst_ratio;
        for (auto & t : rep.trials) {
            Rational ratio = Rational(t.injective) / n8p12;
            o.require(ratio >= frac(1, 10), "seed " + std::to_string(t.seed) + ": injective below 0.1 n^8 p^12");
            Rational frac_non = t.hom == 0 ? Rational(0) : Rational(Rational(BigInt(t.hom - t.injective)) / Rational(t.hom));
            o.require(frac_non == t.non_injective_fraction, "non-injective fraction mismatch");
            worst_fraction = std::max(worst_fraction, frac_non);
            worst_ratio = worst_ratio ? std::min(*worst_ratio, ratio) : ratio;
        }
        if (worst_fraction >= frac(1, 2))
            o.require(false, "non-injective fraction reaches " + to_decimal_string(worst_fraction, 4) + " (limit 0.5)");
        o.detail += (o.detail.empty() ? "" : "; ") + std::string("min injective ratio ") + to_decimal_string(worst_ratio.value_or(0), 4)
                  + ", max non-injective fraction " + to_decimal_string(worst_fraction, 4);
        return o;
    }

    auto criterion6() -> Outcome
    {
        Outcome o;
        for (int n = 2; n <= 12; ++n)
            for (int k = 1; k <= 5; ++k) {
                Rational expected = 1 + Rational(1) / pow(Rational(n - 1), static_cast<unsigned long>(2 * k - 1));
                o.require(h2k_exact(gen_complete(static_cast<std::size_t>(n)), k) == expected, "K" + std::to_string(n) + " k=" + std::to_string(k));
            }
        for (int d = 1; d <= 8; ++d)
            for (int k = 1; k <= 5; ++k)
                o.require(h2k_exact(gen_hypercube(d), k) == oracle::hypercube_h2k(d, k), "Q" + std::to_string(d) + " k=" + std::to_string(k));
        std::mt19937_64 rng(6);
        std::size_t disagreements = 0, below_one = 0;
        for (int i = 0; i < 200; ++i) {
            auto p = frac(static_cast<long>(1 + uniform_below(rng, 6)), 20);
            auto g = min_degree_host(rng, 10, 120, p);
            for (int k = 1; k <= 5; ++k) {
                auto exact = h2k_exact(g, k);
                below_one += exact < 1;
                auto spec = h2k_spectral(g, k).value;
                auto ex = to_double(exact);
                disagreements += std::abs(spec - ex) > 1e-9 * ex;
            }
        }
        o.require(disagreements == 0, std::to_string(disagreements) + " exact/spectral disagreements");
        o.require(below_one == 0, std::to_string(below_one) + " values below 1");
        return o;
    }

    auto criterion7() -> Outcome
    {
        Outcome o;
        std::mt19937_64 rng(7);
        std::size_t instances = 0, violations = 0;
        while (instances < 520) {
            auto p = frac(static_cast<long>(2 + uniform_below(rng, 5)), 10);
            auto g = min_degree_host(rng, 6, 30, p);
            auto c = greedy_proper_colouring(g, rng());
            for (int k = 1; k <= 4; ++k) {
                auto r = check_pattern_chain(g, c, k);
                ++instances;
                for (auto & ch : r.checks)
                    if (! ch.conditional && ! ch.holds) {
                        ++violations;
                        o.require(false, ch.name + " violated");
                    }
                // independent restatement of extremal pattern and step down
                for (int i = 1; i <= 2 * k; ++i)
                    for (int j = i + 1; j <= 2 * k; ++j)
                        if (r.pattern(i, j) > r.pattern(1, 2 * k))
                            ++violations;
                if (k >= 2 && r.pattern(1, 2 * k) * g.min_degree() > *r.h2k_prev)
                    ++violations;
            }
        }
        o.require(violations == 0, std::to_string(violations) + " violations over " + std::to_string(instances) + " instances");
        auto c4 = gen_cycle(4);
        std::vector<std::pair<Edge, int>> cols;
        int next = 0;
        for (auto e : c4.edges())
            cols.push_back({e, next++});
        auto col = EdgeColouring::from_triples(c4, cols);
        o.require(h2k_pattern(c4, col, 2, 1, 4) == 1, "h4(1,4) on C4 != 1");
        o.require(h2k_pattern(c4, col, 2, 2, 4) == frac(1, 2), "h4(2,4) on C4 != 1/2");
        return o;
    }

    auto corollary_rhs(std::size_t n, std::size_t delta, int k) -> Rational
    {
        return pow(Rational(BigInt(2 * k * k)) / Rational(BigInt(delta)), static_cast<unsigned long>(k)) * Rational(BigInt(n));
    }

    auto variant_rhs(std::size_t n, std::size_t delta, int k, const Rational & eps) -> Rational
    {
        return pow(Rational(BigInt(k)) / (eps * Rational(BigInt(delta))), static_cast<unsigned long>(k)) * Rational(BigInt(n));
    }

    auto criterion8() -> Outcome
    {
        Outcome o;
        auto q3 = direction_colouring(3);
        auto search = find_rainbow_cycle(q3.graph, q3.colouring, 8);
        o.require(! search.cycle && search.exhaustive, "direction-coloured Q3 search not exhaustive-empty");
        // independent: every simple cycle repeats a colour
        oracle::simple_cycles(q3.graph, 8, [&](const std::vector<Vertex> & cyc) {
            if (oracle::colours_on(q3.graph, q3.colouring, cyc) == cyc.size())
                o.require(false, "oracle found a rainbow cycle in Q3");
        });
        for (int k = 1; k <= 4; ++k) {
            auto r = check_pattern_chain(q3.graph, q3.colouring, k);
            o.require(r.conditional_ok() && r.unconditional_ok(), "Q3 chain fails at k=" + std::to_string(k));
            o.require(h2k_exact(q3.graph, k) <= corollary_rhs(8, 3, k), "Q3 corollary fails at k=" + std::to_string(k));
        }
        for (int d = 1; d <= 8; ++d)
            for (int k = 1; k <= 4; ++k) {
                auto q = gen_hypercube(d);
                auto s = h2k_spectral(q, k);
                auto bound = to_double(corollary_rhs(q.order(), static_cast<std::size_t>(d), k));
                o.require(s.value - s.error_bound <= bound, "spectral bound fails for Q" + std::to_string(d));
            }

        // contrapositive pipeline
        std::size_t instances = 0, violated = 0, pipeline_failures = 0;
        auto eps = frac(2, 5);
        auto run_instance = [&](const Graph & g, const EdgeColouring & c) {
            ++instances;
            auto delta = g.min_degree();
            for (int k = 1; k <= 3; ++k) {
                auto h = h2k_exact(g, k);
                if (h > corollary_rhs(g.order(), delta, k)) {
                    ++violated;
                    auto s = find_rainbow_cycle(g, c, g.order());
                    bool ok = s.cycle && is_simple_cycle(g, *s.cycle) && oracle::colours_on(g, c, *s.cycle) == s.cycle->size();
                    pipeline_failures += ! ok;
                }
                if (h > variant_rhs(g.order(), delta, k, eps)) {
                    ++violated;
                    auto s = find_almost_rainbow(g, c, eps, g.order());
                    bool ok = s.cycle && is_simple_cycle(g, *s.cycle)
                              && Rational(BigInt(oracle::colours_on(g, c, *s.cycle))) > (1 - eps) * Rational(BigInt(s.cycle->size()));
                    pipeline_failures += ! ok;
                }
            }
        };
        for (std::size_t n = 20; n <= 90; n += 2) {
            auto g = gen_complete(n);
            run_instance(g, greedy_proper_colouring(g, n));
        }
        std::mt19937_64 rng(8);
        for (int i = 0; i < 30; ++i) {
            auto g = min_degree_host(rng, 60, 100, frac(19, 20));
            run_instance(g, greedy_proper_colouring(g, rng()));
        }
        for (int i = 0; i < 20; ++i) {
            auto g = min_degree_host(rng, 10, 40, frac(1, 4));
            run_instance(g, greedy_proper_colouring(g, rng()));
        }
        for (int d = 2; d <= 6; ++d) {
            auto q = direction_colouring(d);
            run_instance(q.graph, q.colouring);
        }
        o.require(instances >= 50, "too few pipeline instances");
        o.require(violated > 0, "no instance violated a bound");
        o.require(pipeline_failures == 0, std::to_string(pipeline_failures) + " pipeline failures");
        o.detail = o.detail.empty() ? std::to_string(instances) + " pipeline instances, " + std::to_string(violated) + " bound violations, all with witnesses" : o.detail;
        return o;
    }

    auto criterion9() -> Outcome
    {
        Outcome o;
        namespace fs = std::filesystem;
        auto dir = fs::temp_directory_path() / "cubehom_acceptance";
        fs::create_directories(dir);
        auto graph_file = (dir / "g.txt").string();
        auto run_twice = [&](std::vector<std::string> args) {
            std::ostringstream a, b, ea, eb;
            int sa = cli::run(args, a, ea);
            std::string fa = fs::exists(graph_file) ? oracle_read(graph_file) : "";
            int sb = cli::run(args, b, eb);
            std::string fb = fs::exists(graph_file) ? oracle_read(graph_file) : "";
            std::string joined;
            for (auto & s : args)
                joined += s + " ";
            o.require(sa == sb && a.str() == b.str() && fa == fb, "differs: " + joined);
            o.require(sa == cli::exit_code::ok, "non-zero exit: " + joined);
        };
        run_twice({"gen", "random", "--n", "30", "--p", "1/3", "--seed", "5", "--out", graph_file});
        run_twice({"gen", "hypercube", "--d", "4"});
        run_twice({"certify", "Q3", "--all-pairs", "--format", "json"});
        run_twice({"certify", "Q4", "--r0", "0000,0011", "--method", "explicit"});
        run_twice({"verify", "section2", "--pattern", "Q3", "--host", "random(10,1/2,seed 3)", "--format", "json"});
        run_twice({"verify", "section3", "--host", "direction-cube(3)", "--k", "2", "--format", "json"});
        run_twice({"experiment", "supersaturation", "--d", "3", "--n", "20", "--p", "7/10", "--trials", "3", "--seed", "9", "--format", "json"});
        run_twice({"experiment", "rainbow-bounds", "--n", "30", "--p", "1/4", "--trials", "3", "--k-max", "3", "--seed", "2"});
        run_twice({"homcount", "--pattern", "Q3", "--host", graph_file});
        run_twice({"h2k", "--host", graph_file, "--k", "3", "--method", "both", "--format", "json"});
        return o;
    }
}

auto main() -> int
{
    struct Item
    {
        int id;
        const char * title;
        Outcome (*fn)();
    };
    const Item items[] = {
        {1, "exponent arithmetic", criterion1},
        {2, "reflectivity certificates and explicit sequences", criterion2},
        {3, "one-step and final reflection inequalities", criterion3},
        {4, "Sidorenko bound for Q3", criterion4},
        {5, "supersaturation at G(40, 7/10)", criterion5},
        {6, "weighted cycle count ground truths", criterion6},
        {7, "pattern inequality suite", criterion7},
        {8, "rainbow machinery end to end", criterion8},
        {9, "deterministic reports", criterion9},
    };
    for (auto & item : items) {
        auto start = Clock::now();
        Outcome o;
        try {
            o = item.fn();
        }
        catch (const std::exception & e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        report(item.id, item.title, o, seconds_since(start));
    }
    return failures == 0 ? 0 : 1;
}

auto oracle_read(const std::string & path) -> std::string
{
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

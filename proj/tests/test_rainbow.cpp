#include "oracles.hpp"

#include <cubehom/error.hpp>
#include <cubehom/rainbow.hpp>

#include <doctest.h>

#include <cmath>
#include <random>

using namespace cubehom;

namespace
{
    auto coloured(const Graph & g, std::vector<int> colours) -> EdgeColouring
    {
        std::vector<std::pair<Edge, int>> triples;
        auto edges = g.edges();
        for (std::size_t i = 0; i < edges.size(); ++i)
            triples.push_back({edges[i], colours[i]});
        return EdgeColouring::from_triples(g, triples);
    }

    auto find(const PatternChainReport & r, const std::string & name) -> const InequalityCheck *
    {
        for (auto & c : r.checks)
            if (c.name == name)
                return &c;
        return nullptr;
    }

    auto close(double a, double b) -> bool { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); }
}

TEST_SUITE("rainbow")
{
    TEST_CASE("homomorphic cycles and weights")
    {
        auto c4 = gen_cycle(4);
        CHECK(is_hom_cycle(c4, {0, 1}));
        CHECK(is_hom_cycle(c4, {0, 1, 0, 3}));
        CHECK_FALSE(is_hom_cycle(c4, {0, 2}));
        CHECK_FALSE(is_hom_cycle(c4, {0}));
        CHECK(cycle_weight(c4, {0, 1, 2, 3}) == frac(1, 16));
    }

    TEST_CASE("exact values")
    {
        CHECK(h2k_exact(gen_complete(3), 1) == frac(3, 2));
        for (int k = 1; k <= 5; ++k)
            CHECK(h2k_exact(gen_cycle(4), k) == 2);
        CHECK(h2k_exact(gen_complete(4), 2) == frac(28, 27));
        CHECK(h2k_exact(gen_hypercube(3), 1) == frac(8, 3));
        for (int n = 3; n <= 7; ++n)
            for (int k = 1; k <= 4; ++k)
                CHECK(h2k_exact(gen_complete(static_cast<std::size_t>(n)), k) == oracle::complete_h2k(n, k));
        for (int d = 1; d <= 5; ++d)
            for (int k = 1; k <= 4; ++k)
                CHECK(h2k_exact(gen_hypercube(d), k) == oracle::hypercube_h2k(d, k));
    }

    TEST_CASE("exact values match walk enumeration")
    {
        for (std::uint64_t seed = 0; seed < 6; ++seed) {
            auto g = peel_min_degree(gen_random(9, frac(1, 2), seed), 1).graph;
            if (g.order() == 0)
                continue;
            for (int k = 1; k <= 3; ++k)
                CHECK(h2k_exact(g, k) == oracle::h2k(g, k));
        }
    }

    TEST_CASE("h2 and the weighted cycle lower bound")
    {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            auto g = peel_min_degree(gen_random(20, frac(1, 4), seed), 1).graph;
            Rational h2 = 0;
            for (auto [u, v] : g.edges())
                h2 += Rational(2) / Rational(BigInt(g.degree(u) * g.degree(v)));
            CHECK(h2k_exact(g, 1) == h2);
            CHECK(h2 * g.min_degree() <= Rational(BigInt(g.order())));
            for (int k = 1; k <= 8; ++k)
                CHECK(h2k_exact(g, k) >= 1);
        }
    }

    TEST_CASE("spectral path agrees with the exact path")
    {
        CHECK(close(h2k_spectral(gen_cycle(4), 3).value, 2.0));
        CHECK(close(h2k_spectral(gen_hypercube(3), 1).value, 8.0 / 3.0));
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            auto g = peel_min_degree(gen_random(60 + 30 * seed, frac(1, 10), seed), 1).graph;
            for (int k = 1; k <= 6; ++k) {
                auto exact = to_double(h2k_exact(g, k));
                auto spec = h2k_spectral(g, k);
                CHECK(std::abs(spec.value - exact) <= 1e-9 * exact);
                CHECK(std::abs(spec.value - exact) <= spec.error_bound + 1e-300);
                CHECK(spec.value >= 1 - 1e-9);
            }
        }
        auto big = gen_hypercube(7);
        CHECK(close(h2k_spectral(big, 3).value, to_double(oracle::hypercube_h2k(7, 3))));
    }

    TEST_CASE("normalised adjacency fixes the square-root degree vector")
    {
        auto g = peel_min_degree(gen_random(15, frac(1, 3), 2), 1).graph;
        auto a = normalized_adjacency(g);
        auto n = g.order();
        for (std::size_t u = 0; u < n; ++u) {
            double s = 0;
            for (std::size_t v = 0; v < n; ++v) {
                CHECK(a[u * n + v] == a[v * n + u]);
                s += a[u * n + v] * std::sqrt(static_cast<double>(g.degree(static_cast<Vertex>(v))));
            }
            CHECK(close(s, std::sqrt(static_cast<double>(g.degree(static_cast<Vertex>(u))))));
        }
    }

    TEST_CASE("input checks")
    {
        CHECK_THROWS_AS(h2k_exact(Graph::from_edges(3, std::vector<Edge>{{0, 1}}), 1), InputError);
        CHECK_THROWS_AS(h2k_exact(gen_cycle(4), 0), InputError);
        CHECK_THROWS_AS(h2k_exact(gen_cycle(4), max_exact_k + 1), CapabilityError);
        auto c4 = gen_cycle(4);
        auto c = coloured(c4, {0, 1, 2, 3});
        CHECK_THROWS_AS(h2k_pattern(c4, c, 2, 2, 2), InputError);
        CHECK_THROWS_AS(h2k_pattern(c4, c, 2, 0, 2), InputError);
        CHECK_THROWS_AS(h2k_pattern(c4, c, 2, 1, 5), InputError);
        CHECK_THROWS_AS(check_variant_chain(c4, c, 2, frac(1, 2)), InputError);
        CHECK_THROWS_AS(check_variant_chain(c4, c, 2, frac(0, 1)), InputError);
        auto improper = coloured(c4, {0, 0, 1, 1});
        CHECK_THROWS_AS(check_pattern_chain(c4, improper, 2), InputError);
    }

    TEST_CASE("pattern values")
    {
        auto c4 = gen_cycle(4);
        auto c = coloured(c4, {0, 1, 2, 3});
        CHECK(h2k_pattern(c4, c, 2, 1, 4) == 1);
        CHECK(h2k_pattern(c4, c, 2, 2, 4) == frac(1, 2));
        CHECK(pattern_gap(2, 1, 4) == 1);
        CHECK(pattern_gap(2, 2, 4) == 2);
        CHECK(pattern_gap(3, 1, 3) == 2);
        CHECK(pattern_gap(3, 1, 5) == 2);

        for (std::uint64_t seed = 0; seed < 4; ++seed) {
            auto g = peel_min_degree(gen_random(8, frac(1, 2), seed + 30), 1).graph;
            auto col = greedy_proper_colouring(g, seed);
            for (int k = 1; k <= 3; ++k)
                for (int i = 1; i <= 2 * k; ++i)
                    for (int j = i + 1; j <= 2 * k; ++j)
                        CHECK(h2k_pattern(g, col, k, i, j) == oracle::h2k_pattern(g, col, k, i, j));
        }
    }

    TEST_CASE("pattern values are rotation invariant")
    {
        auto g = peel_min_degree(gen_random(9, frac(1, 2), 77), 1).graph;
        auto col = greedy_proper_colouring(g, 3);
        int k = 3;
        for (int i = 1; i <= 2 * k; ++i)
            for (int j = i + 1; j <= 2 * k; ++j)
                for (int t = 1; t < 2 * k; ++t) {
                    int a = (i - 1 + t) % (2 * k) + 1, b = (j - 1 + t) % (2 * k) + 1;
                    CHECK(oracle::h2k_pattern(g, col, k, std::min(a, b), std::max(a, b)) == oracle::h2k_pattern(g, col, k, i, j));
                }
    }

    TEST_CASE("walk tables reproduce the pattern identities")
    {
        auto g = peel_min_degree(gen_random(9, frac(1, 2), 5), 1).graph;
        auto col = greedy_proper_colouring(g, 5);
        for (int k = 1; k <= 3; ++k) {
            WalkTable first(g, col, k, 1);
            CHECK(first.pair_with(first) == h2k_pattern(g, col, k, 1, 2 * k));
            for (int l = 1; l <= k; ++l) {
                WalkTable alpha(g, col, k, l);
                CHECK(alpha.pair_with(first) == h2k_pattern(g, col, k, l, 2 * k));
                CHECK(alpha.pair_with(alpha) == h2k_pattern(g, col, k, l, 2 * k + 1 - l));
                for (auto & [key, value] : alpha.entries())
                    CHECK(value > 0);
            }
        }
    }

    TEST_CASE("unconditional chain on random properly coloured hosts")
    {
        for (std::uint64_t seed = 5; seed < 11; ++seed) {
            auto g = peel_min_degree(gen_random(12, frac(1, 2), seed), 1).graph;
            auto col = greedy_proper_colouring(g, seed);
            for (int k = 1; k <= 3; ++k) {
                auto r = check_pattern_chain(g, col, k);
                CHECK(r.unconditional_ok());
                CHECK(r.h2k == h2k_exact(g, k));
                for (auto & ch : r.checks)
                    if (! ch.conditional)
                        CHECK_MESSAGE(ch.holds, ch.name);
                Rational total = 0;
                for (int i = 1; i <= 2 * k; ++i)
                    for (int j = i + 1; j <= 2 * k; ++j) {
                        CHECK(r.pattern(i, j) <= r.h2k);
                        CHECK(r.pattern(i, j) <= r.pattern(1, 2 * k));
                        total += r.pattern(i, j);
                    }
                (void) total;
            }
        }
    }

    TEST_CASE("direction-coloured cubes")
    {
        auto q3 = direction_colouring(3);
        auto r = check_pattern_chain(q3.graph, q3.colouring, 2);
        CHECK(r.h2k == frac(56, 27));
        CHECK(r.unconditional_ok());
        CHECK(r.conditional_ok());
        auto cor = find(r, "corollary");
        REQUIRE(cor);
        CHECK(cor->rhs == frac(64, 9) * 8);

        auto none = find_rainbow_cycle(q3.graph, q3.colouring, 8);
        CHECK_FALSE(none.cycle);
        CHECK(none.exhaustive);

        auto q4 = direction_colouring(4);
        auto v = check_variant_chain(q4.graph, q4.colouring, 2, frac(1, 4));
        CHECK(v.unconditional_ok());
        CHECK(v.conditional_ok());
        auto almost = find_almost_rainbow(q4.graph, q4.colouring, frac(1, 4), 16);
        CHECK_FALSE(almost.cycle);
        CHECK(almost.exhaustive);
    }

    TEST_CASE("rainbow triangle")
    {
        auto k3 = gen_complete(3);
        auto col = coloured(k3, {0, 1, 2});
        auto found = find_rainbow_cycle(k3, col, 3);
        REQUIRE(found.cycle);
        CHECK(found.cycle->size() == 3);
        auto almost = find_almost_rainbow(k3, col, frac(1, 10), 3);
        REQUIRE(almost.cycle);
        CHECK(distinct_colours(k3, col, *almost.cycle) == 3);
        // the bounds are loose enough that this small host satisfies them
        auto r = check_variant_chain(k3, col, 2, frac(1, 10));
        CHECK(r.unconditional_ok());
    }

    TEST_CASE("complete graphs violate the one-step bound")
    {
        auto k10 = gen_complete(10);
        auto col = greedy_proper_colouring(k10, 1);
        auto r = check_pattern_chain(k10, col, 2);
        CHECK(r.unconditional_ok());
        auto one = find(r, "one_step");
        REQUIRE(one);
        CHECK_FALSE(one->holds);
        auto found = find_rainbow_cycle(k10, col, 10);
        REQUIRE(found.cycle);
        CHECK(is_simple_cycle(k10, *found.cycle));
        CHECK(distinct_colours(k10, col, *found.cycle) == found.cycle->size());

        auto k30 = gen_complete(30);
        auto c30 = greedy_proper_colouring(k30, 2);
        auto v = check_variant_chain(k30, c30, 2, frac(1, 10));
        auto vs = find(v, "variant_one_step");
        REQUIRE(vs);
        CHECK_FALSE(vs->holds);
        CHECK(find_almost_rainbow(k30, c30, frac(1, 10), 30).cycle);
    }

    TEST_CASE("cycle finders against exhaustive enumeration")
    {
        auto c4 = gen_cycle(4);
        auto alt = coloured(c4, {1, 2, 2, 1});
        CHECK(check_proper(c4, alt));
        auto r = find_rainbow_cycle(c4, alt, 4);
        CHECK_FALSE(r.cycle);
        CHECK(r.exhaustive);
        CHECK_FALSE(find_almost_rainbow(c4, alt, frac(2, 5), 4).cycle);
        CHECK_THROWS_AS(find_almost_rainbow(c4, alt, frac(1, 2), 4), InputError);

        for (std::uint64_t seed = 0; seed < 25; ++seed) {
            auto g = gen_random(9, frac(1, 3), seed + 100);
            auto col = greedy_proper_colouring(g, seed);
            bool any_rainbow = false, any_almost = false;
            oracle::simple_cycles(g, 9, [&](const std::vector<Vertex> & cyc) {
                auto d = oracle::colours_on(g, col, cyc);
                any_rainbow = any_rainbow || d == cyc.size();
                any_almost = any_almost || Rational(BigInt(d)) > (1 - frac(1, 3)) * Rational(BigInt(cyc.size()));
            });
            auto rf = find_rainbow_cycle(g, col, 9);
            CHECK(rf.completed);
            CHECK(rf.cycle.has_value() == any_rainbow);
            if (rf.cycle)
                CHECK(oracle::colours_on(g, col, *rf.cycle) == rf.cycle->size());
            auto af = find_almost_rainbow(g, col, frac(1, 3), 9);
            CHECK(af.cycle.has_value() == any_almost);
        }
    }

    TEST_CASE("budget exhaustion is reported")
    {
        auto q = direction_colouring(6);
        auto r = find_rainbow_cycle(q.graph, q.colouring, 64, 1000);
        CHECK_FALSE(r.cycle);
        CHECK_FALSE(r.completed);
        CHECK_FALSE(r.exhaustive);
    }

    TEST_CASE("decomposition into simple pieces")
    {
        CHECK(decompose_hom_cycle({0, 1, 2, 3}) == std::vector<HomCycle>{{0, 1, 2, 3}});
        CHECK(decompose_hom_cycle({0, 1, 0, 1}) == std::vector<HomCycle>{{0, 1}, {0, 1}});
        CHECK(decompose_hom_cycle({0, 1, 2, 1}) == std::vector<HomCycle>{{1, 2}, {0, 1}});

        auto g = gen_complete(5);
        auto col = greedy_proper_colouring(g, 4);
        std::size_t walks = 0;
        oracle::closed_walks(g, 6, [&](const std::vector<Vertex> & w) {
            ++walks;
            auto pieces = decompose_hom_cycle(w);
            std::size_t total = 0, colours = 0;
            for (auto & p : pieces) {
                total += p.size();
                CHECK(is_hom_cycle(g, p));
                std::vector<Vertex> sorted = p;
                std::sort(sorted.begin(), sorted.end());
                CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
                colours += p.size() == 2 ? 1 : oracle::colours_on(g, col, p);
            }
            CHECK(total == w.size());
            CHECK(oracle::colours_on(g, col, w) <= colours);
        });
        CHECK(walks > 0);
    }
}

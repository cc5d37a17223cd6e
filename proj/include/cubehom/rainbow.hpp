#pragma once

#include <cubehom/graph.hpp>
#include <cubehom/rational.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace cubehom
{
    constexpr int max_exact_k = 16;
    constexpr std::size_t max_exact_order = 512;
    constexpr int max_pattern_k = 8;
    constexpr std::size_t max_pattern_order = 128;

    /// Closed walk u_0 ... u_{L-1} (u_L = u_0), L >= 2.
    using HomCycle = std::vector<Vertex>;

    /// Consecutive vertices (cyclically) are adjacent and the length is at least 2.
    auto is_hom_cycle(const Graph & g, const HomCycle & cycle) -> bool;

    /// 1 / prod d(u_i).
    auto cycle_weight(const Graph & g, const HomCycle & cycle) -> Rational;

    /// Sum of weights of all homomorphic cycles of length 2k, computed as
    /// tr(P^{2k}) / L^{2k} with L the lcm of the degrees and P = diag(L/d) A.
    /// Throws InputError on an isolated vertex or k < 1, CapabilityError
    /// beyond max_exact_order vertices or max_exact_k.
    auto h2k_exact(const Graph & g, int k) -> Rational;

    /// Dense row-major matrix with entries 1/sqrt(d(u) d(v)) on edges.
    auto normalized_adjacency(const Graph & g) -> std::vector<double>;

    struct SpectralValue
    {
        double value = 0;
        double error_bound = 0; ///< absolute bound on |value - exact|
    };

    /// sum_i lambda_i^{2k} over the spectrum of the normalised adjacency matrix.
    auto h2k_spectral(const Graph & g, int k) -> SpectralValue;

    /// h_{2k}(i, j) for 1 <= i < j <= 2k. Depends only on the cyclic gap
    /// min(j - i, 2k - j + i), so all pairs reduce to gaps 1..k.
    auto h2k_pattern(const Graph & g, const EdgeColouring & c, int k, int i, int j) -> Rational;

    /// Pattern values for gaps 1..k (index 0 holds gap 1).
    auto h2k_pattern_gaps(const Graph & g, const EdgeColouring & c, int k) -> std::vector<Rational>;

    /// Gap of the pair (i, j) inside a 2k-cycle.
    auto pattern_gap(int k, int i, int j) -> int;

    /// Walk sums alpha(u_0, u_k, R) over walks of length k whose step `step`
    /// has colour R. Only interior vertices are weighted (1/d each); the
    /// endpoint factors 1/sqrt(d(u_0) d(u_k)) are applied when pairing.
    class WalkTable
    {
    public:
        WalkTable(const Graph & g, const EdgeColouring & c, int k, int step);

        auto k() const -> int { return k_; }
        auto step() const -> int { return step_; }
        auto entries() const -> const std::map<std::tuple<Vertex, Vertex, int>, Rational> & { return entries_; }
        auto at(Vertex u0, Vertex uk, int colour) const -> Rational;

        /// sum over (u_0, u_k, R) of this(u_0,u_k,R) other(u_0,u_k,R) / (d(u_0) d(u_k)).
        auto pair_with(const WalkTable & other) const -> Rational;

    private:
        const Graph * g_;
        int k_;
        int step_;
        std::map<std::tuple<Vertex, Vertex, int>, Rational> entries_;
    };

    struct InequalityCheck
    {
        std::string name;
        Rational lhs;
        Rational rhs;
        bool holds = false;
        bool conditional = false; ///< only guaranteed under a no-(almost-)rainbow hypothesis
    };

    struct PatternChainReport
    {
        int k = 0;
        std::size_t min_degree = 0;
        Rational h2k;
        std::optional<Rational> h2k_prev; ///< h_{2k-2}, for k >= 2
        std::vector<Rational> gaps;      ///< pattern values by gap 1..k
        std::vector<InequalityCheck> checks;

        auto pattern(int i, int j) const -> Rational;
        auto unconditional_ok() const -> bool;
        auto conditional_ok() const -> bool;
    };

    /// Evaluates all patterns and checks:
    ///   unconditional: weighted_cycle_count, pattern_le_total, cycle_cs[l],
    ///     extremal_pattern, step_down (k >= 2), h2_bound (k = 1);
    ///   conditional: one_step (k >= 2), corollary.
    /// Throws InputError if c is not proper, on isolated vertices or bad k;
    /// CapabilityError beyond max_pattern_order / max_pattern_k.
    auto check_pattern_chain(const Graph & g, const EdgeColouring & c, int k) -> PatternChainReport;

    /// As check_pattern_chain plus the conditional variant checks
    /// variant_one_step (k >= 2), variant_corollary and variant_counting_step.
    /// Throws InputError unless 0 < eps < 1/2.
    auto check_variant_chain(const Graph & g, const EdgeColouring & c, int k, const Rational & eps) -> PatternChainReport;

    constexpr std::size_t default_cycle_budget = 5'000'000;
    constexpr std::size_t exhaustive_cycle_order = 16;

    struct CycleSearch
    {
        std::optional<std::vector<Vertex>> cycle; ///< simple cycle, verified
        bool completed = false;  ///< the search space was exhausted within the budget
        bool exhaustive = false; ///< completed and max_len >= v(G): "none" is a certificate
        std::size_t nodes = 0;
    };

    /// Depth-first search over simple cycles of length 3..max_len with all
    /// colours distinct. Each cycle is rooted at its smallest vertex.
    auto find_rainbow_cycle(const Graph & g, const EdgeColouring & c, std::size_t max_len, std::size_t budget = default_cycle_budget) -> CycleSearch;

    /// Simple cycle of some length L <= max_len with more than (1 - eps) L
    /// distinct colours. Throws InputError unless 0 < eps < 1/2.
    auto find_almost_rainbow(const Graph & g, const EdgeColouring & c, const Rational & eps, std::size_t max_len, std::size_t budget = default_cycle_budget) -> CycleSearch;

    auto distinct_colours(const Graph & g, const EdgeColouring & c, const std::vector<Vertex> & cycle) -> std::size_t;
    auto is_simple_cycle(const Graph & g, const std::vector<Vertex> & cycle) -> bool;

    /// Splits a homomorphic cycle at its first repeated vertex (smallest j
    /// with u_j = u_i for some i < j) into (u_i .. u_{j-1}) and
    /// (u_0 .. u_i, u_{j+1} .. u_{L-1}), recursively, until every piece has
    /// distinct vertices. Pieces of length 2 are traversed edges.
    auto decompose_hom_cycle(const HomCycle & cycle) -> std::vector<HomCycle>;
}

#pragma once

#include <cubehom/graph.hpp>
#include <cubehom/rational.hpp>
#include <cubehom/reflectivity.hpp>
#include <cubehom/vertex_set.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace cubehom
{
    constexpr std::size_t hom_pattern_cap = 16;
    constexpr std::size_t injective_pattern_cap = 10;

    /// H/R: the vertices of R merged into their smallest member, parallel
    /// edges collapsed, the remaining vertices renumbered in order. Throws
    /// InputError if R is not independent in H.
    auto quotient(const Graph & h, VertexSet r) -> Graph;

    /// Number of homomorphisms H -> G. Bipartite patterns enumerate the
    /// smaller class and multiply common-neighbourhood sizes for the other.
    auto hom_count(const Graph & h, const Graph & g) -> BigInt;

    /// Homomorphisms sending every vertex of R to one vertex: hom(H/R, G).
    auto hom_count(const Graph & h, const Graph & g, VertexSet r) -> BigInt;

    /// Plain vertex-by-vertex backtracking, no bipartite split.
    auto hom_count_backtracking(const Graph & h, const Graph & g) -> BigInt;

    /// Injective homomorphisms H -> G: distinct assignments of the smaller
    /// class with inclusion-exclusion over collisions in the larger class.
    auto injective_hom_count(const Graph & h, const Graph & g) -> BigInt;

    /// Injective homomorphisms by backtracking with a used-vertex mask.
    auto injective_hom_count_backtracking(const Graph & h, const Graph & g) -> BigInt;

    /// Sum of hom(H, G; R) over all pairs R; dependent pairs contribute 0.
    /// Upper bound for the number of non-injective homomorphisms.
    auto pair_collision_sum(const Graph & h, const Graph & g) -> BigInt;

    struct SidorenkoResult
    {
        BigInt lhs;   ///< hom(H, G)
        Rational rhs; ///< n^{v(H)} p^{e(H)}, p = 2e(G)/n^2
        bool holds = false;
    };

    auto sidorenko_check(const Graph & h, const Graph & g) -> SidorenkoResult;

    struct ReflectionInequality
    {
        VertexSet psi_ab;
        VertexSet psi_ba;
        BigInt hom_r;
        BigInt hom_psi_ab;
        BigInt hom_psi_ba;
        BigInt hom_all;
        bool holds_pair = false; ///< hom(R)^2 <= hom(psi_AB) hom(psi_BA)
        bool holds_weak = false; ///< hom(R)^2 <= hom(psi_AB) hom(H,G)
        auto holds() const -> bool { return holds_pair && holds_weak; }
    };

    /// Throws PreconditionError if R is not admissible for T.
    auto check_reflection_inequality(const Graph & h, const Graph & g, const NiceTriple & t, VertexSet r) -> ReflectionInequality;

    struct FinalInequality
    {
        BigInt hom_side;  ///< hom(H, G; X)
        BigInt hom_start; ///< hom(H, G; R_0)
        BigInt hom_all;   ///< hom(H, G)
        std::size_t m = 0;
        BigInt s;
        bool holds = false; ///< hom(X) hom(H,G)^{s-1} >= hom(R_0)^s
    };

    /// Throws InputError if the certificate does not verify for H.
    auto check_final_inequality(const Graph & h, const Graph & g, const ReflectivityCertificate & cert) -> FinalInequality;

    struct ExponentSpec
    {
        long v = 0; ///< vertices of H
        long e = 0; ///< edges of H
        long t = 0; ///< size of the larger bipartition class
    };

    /// Parameters of a bipartite pattern. Throws InputError otherwise.
    auto exponent_spec(const Graph & h) -> ExponentSpec;

    /// 2 - (v - t - 1)/(e - t). Throws InputError when e <= t.
    auto turan_exponent(const ExponentSpec & spec) -> Rational;

    struct SupersaturationTrial
    {
        std::uint64_t seed = 0;
        std::size_t edges = 0;
        Rational density;            ///< 2e/n^2 of the sampled host
        BigInt hom;
        BigInt injective;
        Rational non_injective_fraction; ///< 0 when hom = 0
        std::optional<Rational> ratio;   ///< injective / (n^8 density^12); nullopt when the host has no edges
        Rational almost_regularity;      ///< max degree / min degree, 0 when min degree is 0
    };

    struct SupersaturationReport
    {
        int d = 3;
        std::size_t n = 0;
        Rational p;
        std::vector<SupersaturationTrial> trials;
    };

    /// Q_3 counts in G(n, p, seed + i) for i < trials. d must be 3, n <= 48.
    auto supersaturation_experiment(int d, std::size_t n, const Rational & p, std::uint64_t seed, std::size_t trials) -> SupersaturationReport;
}

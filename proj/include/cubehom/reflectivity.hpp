#pragma once

#include <cubehom/automorphism.hpp>
#include <cubehom/graph.hpp>
#include <cubehom/rational.hpp>
#include <cubehom/vertex_set.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace cubehom
{
    /// (A, B, phi) with phi an involution whose fixed set F separates A from B,
    /// A, B, F partitioning V(H) and phi(A) = B.
    struct NiceTriple
    {
        VertexSet a;
        VertexSet b;
        Automorphism phi;
        VertexSet fixed;
    };

    struct TripleCheck
    {
        bool ok = false;
        std::string violation; ///< first failed condition, empty when ok
    };

    /// Checks the four nice-triple conditions in a fixed order. Throws
    /// InputError if `phi` is not an automorphism of `h`.
    auto verify_nice_triple(const Graph & h, VertexSet a, VertexSet b, const Automorphism & phi) -> TripleCheck;

    /// Like verify_nice_triple but throws InputError naming the violation.
    auto make_nice_triple(const Graph & h, VertexSet a, VertexSet b, const Automorphism & phi) -> NiceTriple;

    /// (B, A, phi)
    auto swapped(const NiceTriple & t) -> NiceTriple;

    /// Every nice triple of `h`, both orientations, from the non-identity
    /// involutions. A phi contributes only when no component of H - F_phi is
    /// mapped to itself; each pair {C, phi(C)} of components is then sent to
    /// A or B independently.
    auto enumerate_nice_triples(const Graph & h) -> std::vector<NiceTriple>;

    /// The two bipartition classes, part 0 holding vertex 0. Throws InputError
    /// if `h` is not bipartite, CapabilityError above 64 vertices.
    auto pattern_parts(const Graph & h) -> std::array<VertexSet, 2>;

    /// R lies in one part and meets both A u F and B u F.
    auto is_admissible(const Graph & h, const NiceTriple & t, VertexSet r) -> bool;

    /// (R n (A u F)) u phi(R n A), with no admissibility check.
    auto reflect(const NiceTriple & t, VertexSet r) -> VertexSet;

    /// reflect() guarded by is_admissible; throws PreconditionError otherwise.
    auto psi_apply(const Graph & h, const NiceTriple & t, VertexSet r) -> VertexSet;

    struct CertificateStep
    {
        NiceTriple triple;
        VertexSet next;
    };

    /// Reflection sequence from a pair inside one part to the whole part.
    /// Each step only needs next to be a subset of psi(previous).
    struct ReflectivityCertificate
    {
        VertexSet start;
        VertexSet side;
        std::vector<CertificateStep> steps;

        auto m() const -> std::size_t { return steps.size(); }
        /// 2^m, the exponent in the final inequality.
        auto s() const -> BigInt;
    };

    struct CertificateReport
    {
        bool ok = false;
        int failed_step = -1; ///< index of the first bad step, -1 if the failure is global or none
        std::string message;
        bool relaxed = false; ///< some step keeps a proper subset of psi
    };

    /// Validates a certificate from scratch. Throws InputError naming the step
    /// when a step's triple is malformed (phi not an automorphism).
    auto verify_certificate(const Graph & h, const ReflectivityCertificate & cert) -> CertificateReport;

    constexpr std::size_t default_search_budget = 1'000'000;

    struct CertifyResult
    {
        std::optional<ReflectivityCertificate> certificate; ///< nullopt means unknown, never "not reflective"
        std::size_t states_visited = 0;
    };

    /// Breadth-first search over constraint sets from r0. A new state that is a
    /// subset of a visited one is dropped. Throws InputError unless h is
    /// connected and bipartite and r0 is a pair inside one part.
    auto certify_reflective(const Graph & h, VertexSet r0, std::size_t budget = default_search_budget) -> CertifyResult;
    auto certify_reflective(const Graph & h, const std::vector<NiceTriple> & triples, VertexSet r0, std::size_t budget) -> CertifyResult;

    struct AllPairsResult
    {
        bool reflective = false; ///< every pair on both sides certified
        std::vector<ReflectivityCertificate> certificates;
        std::vector<VertexSet> unknown_pairs;
        bool used_part_swap = false;
    };

    /// Runs the search from every pair on both sides. When some automorphism
    /// swaps the two parts, only part 0 is searched and part 1 certificates are
    /// obtained by conjugation.
    auto certify_all_pairs(const Graph & h, std::size_t budget = default_search_budget) -> AllPairsResult;

    /// Certificate for sigma(start), obtained by pushing every set and triple through sigma.
    auto conjugate(const ReflectivityCertificate & cert, const Automorphism & sigma) -> ReflectivityCertificate;

    /// Relabels a certificate along an isomorphism `map` from the vertices of
    /// one pattern to another (map[v] is the image of v).
    auto transport(const ReflectivityCertificate & cert, const std::vector<Vertex> & map) -> ReflectivityCertificate;

    /// The sets S_k and T_k of the even class of Q_d used by the explicit
    /// cube sequence; T_k is defined for 1 <= k <= d-1.
    auto hypercube_s_set(int d, int k) -> VertexSet;
    auto hypercube_t_set(int d, int k) -> VertexSet;

    struct ClaimIdentity
    {
        int k = 0;
        bool swap_step = false;       ///< psi(S_k) == T_k via the coordinate swap k <-> k+1
        bool complement_step = false; ///< psi(T_k) == S_{k+1} via the complemented swap
    };

    /// Recomputes both identities for 2 <= k <= d-1 (3 <= d <= 6).
    auto hypercube_claim_identities(int d) -> std::vector<ClaimIdentity>;

    /// Explicit sequence for Q_d: one normalising step when the pair is not at
    /// distance 2, then alternating swap / complemented-swap steps from S_2 to
    /// S_d, conjugated back to the frame of r0. 3 <= d <= 6.
    auto hypercube_explicit_sequence(int d, VertexSet r0) -> ReflectivityCertificate;

    /// Explicit sequence for H_{l,k}, (l,k) in {(1,3),(1,4),(2,5),(1,5)}: one
    /// normalising element swap when the two sets differ in more than one
    /// element, then the schedule phi_{i,j}, i = l..1, j = i+1..k.
    auto set_graph_explicit_sequence(int l, int k, VertexSet r0) -> ReflectivityCertificate;

    /// {"start":[..],"side":[..],"steps":[{"A":[..],"B":[..],"phi":[..],"R_next":[..]}]}
    auto certificate_to_json(const ReflectivityCertificate & cert) -> std::string;
    /// Parses and rebuilds fixed sets; throws InputError on malformed data.
    auto certificate_from_json(const Graph & h, const std::string & text) -> ReflectivityCertificate;
}

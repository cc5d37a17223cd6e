#include <cubehom/error.hpp>
#include <cubehom/reflectivity.hpp>

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <map>

namespace cubehom
{
    auto ReflectivityCertificate::s() const -> BigInt
    {
        BigInt result = 1;
        mpz_mul_2exp(result.get_mpz_t(), result.get_mpz_t(), steps.size());
        return result;
    }

    namespace
    {
        auto edge_between(const Graph & h, VertexSet x, VertexSet y) -> bool
        {
            for (Vertex u : x.members())
                for (Vertex v : h.neighbours(u))
                    if (y.contains(v))
                        return true;
            return false;
        }

        void check_fits(const Graph & h)
        {
            if (h.order() > VertexSet::capacity)
                throw CapabilityError("pattern graphs are limited to 64 vertices, got " + std::to_string(h.order()));
        }
    }

    auto verify_nice_triple(const Graph & h, VertexSet a, VertexSet b, const Automorphism & phi) -> TripleCheck
    {
        check_fits(h);
        if (! is_automorphism(h, phi.perm))
            throw InputError("phi is not an automorphism of the pattern graph");

        auto all = VertexSet::full(h.order());
        auto f = fixed_set(phi);
        if (phi.perm.size() != h.order())
            return {false, "phi has the wrong length"};
        for (std::size_t v = 0; v < phi.perm.size(); ++v)
            if (phi.perm[static_cast<std::size_t>(phi.perm[v])] != static_cast<Vertex>(v))
                return {false, "phi is not an involution"};
        if (f == all)
            return {false, "phi is the identity"};
        if (! (a | b).subset_of(all))
            return {false, "A or B contains a vertex outside V(H)"};
        if (a.intersects(b) || a.intersects(f) || b.intersects(f) || (a | b | f) != all)
            return {false, "A, B and F_phi do not partition V(H)"};
        if (edge_between(h, a, b))
            return {false, "F_phi does not separate A and B"};
        if (phi.apply(a) != b)
            return {false, "phi(A) != B"};
        return {true, {}};
    }

    auto make_nice_triple(const Graph & h, VertexSet a, VertexSet b, const Automorphism & phi) -> NiceTriple
    {
        auto check = verify_nice_triple(h, a, b, phi);
        if (! check.ok)
            throw InputError("not a nice triple: " + check.violation);
        return {a, b, phi, fixed_set(phi)};
    }

    auto swapped(const NiceTriple & t) -> NiceTriple
    {
        return {t.b, t.a, t.phi, t.fixed};
    }

    auto enumerate_nice_triples(const Graph & h) -> std::vector<NiceTriple>
    {
        check_fits(h);
        std::vector<NiceTriple> result;
        for (auto & phi : enumerate_involutions(h)) {
            auto f = fixed_set(phi);

            // components of H - F
            std::vector<int> component(h.order(), -1);
            std::vector<VertexSet> components;
            for (std::size_t s = 0; s < h.order(); ++s) {
                if (f.contains(static_cast<Vertex>(s)) || component[s] != -1)
                    continue;
                VertexSet comp;
                std::deque<Vertex> queue{static_cast<Vertex>(s)};
                component[s] = static_cast<int>(components.size());
                while (! queue.empty()) {
                    Vertex v = queue.front();
                    queue.pop_front();
                    comp.insert(v);
                    for (Vertex w : h.neighbours(v))
                        if (! f.contains(w) && component[static_cast<std::size_t>(w)] == -1) {
                            component[static_cast<std::size_t>(w)] = component[s];
                            queue.push_back(w);
                        }
                }
                components.push_back(comp);
            }

            // phi permutes components; pair each with its image
            std::vector<std::pair<VertexSet, VertexSet>> pairs;
            bool invariant = false;
            for (std::size_t c = 0; c < components.size(); ++c) {
                auto image = phi.apply(components[c]);
                auto partner = static_cast<std::size_t>(component[static_cast<std::size_t>(image.first())]);
                if (partner == c) {
                    invariant = true;
                    break;
                }
                if (c < partner)
                    pairs.emplace_back(components[c], components[partner]);
            }
            if (invariant || pairs.empty())
                continue;
            if (pairs.size() > 20)
                throw CapabilityError("involution splits the pattern into more than 20 component pairs");

            for (std::uint64_t choice = 0; choice < (std::uint64_t{1} << pairs.size()); ++choice) {
                VertexSet a, b;
                for (std::size_t p = 0; p < pairs.size(); ++p) {
                    bool flip = (choice >> p) & 1u;
                    a = a | (flip ? pairs[p].second : pairs[p].first);
                    b = b | (flip ? pairs[p].first : pairs[p].second);
                }
                result.push_back({a, b, phi, f});
            }
        }
        return result;
    }

    auto pattern_parts(const Graph & h) -> std::array<VertexSet, 2>
    {
        check_fits(h);
        auto side = bipartition(h);
        if (! side)
            throw InputError("pattern graph is not bipartite");
        std::array<VertexSet, 2> parts;
        for (std::size_t v = 0; v < h.order(); ++v)
            parts[static_cast<std::size_t>((*side)[v])].insert(static_cast<Vertex>(v));
        return parts;
    }

    namespace
    {
        auto in_one_part(const std::array<VertexSet, 2> & parts, VertexSet r) -> bool
        {
            return r.subset_of(parts[0]) || r.subset_of(parts[1]);
        }

        auto admissible_in(const std::array<VertexSet, 2> & parts, const NiceTriple & t, VertexSet r) -> bool
        {
            return ! r.empty() && in_one_part(parts, r) && r.intersects(t.a | t.fixed) && r.intersects(t.b | t.fixed);
        }
    }

    auto is_admissible(const Graph & h, const NiceTriple & t, VertexSet r) -> bool
    {
        return admissible_in(pattern_parts(h), t, r);
    }

    auto reflect(const NiceTriple & t, VertexSet r) -> VertexSet
    {
        return (r & (t.a | t.fixed)) | t.phi.apply(r & t.a);
    }

    auto psi_apply(const Graph & h, const NiceTriple & t, VertexSet r) -> VertexSet
    {
        if (! is_admissible(h, t, r))
            throw PreconditionError("constraint set " + to_string(r) + " is not admissible for the triple");
        return reflect(t, r);
    }

    auto verify_certificate(const Graph & h, const ReflectivityCertificate & cert) -> CertificateReport
    {
        auto parts = pattern_parts(h);
        CertificateReport report;
        if (cert.start.size() != 2)
            return {false, -1, "start set does not have exactly two vertices", false};
        if (cert.side != parts[0] && cert.side != parts[1])
            return {false, -1, "side is not a bipartition class of the pattern", false};
        if (! cert.start.subset_of(cert.side))
            return {false, -1, "start set is not inside the side", false};

        VertexSet current = cert.start;
        for (std::size_t j = 0; j < cert.steps.size(); ++j) {
            auto & step = cert.steps[j];
            auto name = "step " + std::to_string(j);
            TripleCheck check;
            try {
                check = verify_nice_triple(h, step.triple.a, step.triple.b, step.triple.phi);
            }
            catch (const InputError & e) {
                throw InputError(name + ": " + e.what());
            }
            if (! check.ok)
                return {false, static_cast<int>(j), name + ": " + check.violation, report.relaxed};
            if (step.triple.fixed != fixed_set(step.triple.phi))
                return {false, static_cast<int>(j), name + ": stored fixed set differs from F_phi", report.relaxed};
            if (! admissible_in(parts, step.triple, current))
                return {false, static_cast<int>(j), name + ": R_j is not admissible", report.relaxed};
            auto image = reflect(step.triple, current);
            if (step.next.empty() || ! step.next.subset_of(image))
                return {false, static_cast<int>(j), name + ": R_{j+1} is not a non-empty subset of psi(R_j)", report.relaxed};
            if (step.next != image)
                report.relaxed = true;
            current = step.next;
        }
        if (current != cert.side)
            return {false, -1, "final set is not the whole side", report.relaxed};
        report.ok = true;
        return report;
    }

    auto certify_reflective(const Graph & h, VertexSet r0, std::size_t budget) -> CertifyResult
    {
        if (! is_connected(h))
            throw InputError("pattern graph is not connected");
        pattern_parts(h);
        return certify_reflective(h, enumerate_nice_triples(h), r0, budget);
    }

    auto certify_reflective(const Graph & h, const std::vector<NiceTriple> & triples, VertexSet r0, std::size_t budget) -> CertifyResult
    {
        if (! is_connected(h))
            throw InputError("pattern graph is not connected");
        auto parts = pattern_parts(h);
        if (r0.size() != 2)
            throw InputError("starting set must have exactly two vertices");
        VertexSet side;
        if (r0.subset_of(parts[0]))
            side = parts[0];
        else if (r0.subset_of(parts[1]))
            side = parts[1];
        else
            throw InputError("starting pair " + to_string(r0) + " is not inside one part");

        ReflectivityCertificate cert{r0, side, {}};
        if (r0 == side)
            return {cert, 1};

        struct Node
        {
            VertexSet set;
            int parent;
            std::size_t triple;
        };
        std::vector<Node> nodes{{r0, -1, 0}};
        std::deque<std::size_t> queue{0};

        auto build = [&](std::size_t leaf) {
            std::vector<CertificateStep> steps;
            for (auto at = static_cast<int>(leaf); nodes[static_cast<std::size_t>(at)].parent != -1; at = nodes[static_cast<std::size_t>(at)].parent) {
                auto & node = nodes[static_cast<std::size_t>(at)];
                steps.push_back({triples[node.triple], node.set});
            }
            std::reverse(steps.begin(), steps.end());
            cert.steps = std::move(steps);
        };

        while (! queue.empty()) {
            auto current = queue.front();
            queue.pop_front();
            auto from = nodes[current].set;
            for (std::size_t t = 0; t < triples.size(); ++t) {
                if (! admissible_in(parts, triples[t], from))
                    continue;
                auto next = reflect(triples[t], from);
                bool dominated = std::any_of(nodes.begin(), nodes.end(), [&](const Node & n) { return next.subset_of(n.set); });
                if (dominated)
                    continue;
                nodes.push_back({next, static_cast<int>(current), t});
                if (next == side) {
                    build(nodes.size() - 1);
                    return {cert, nodes.size()};
                }
                if (nodes.size() >= budget)
                    return {std::nullopt, nodes.size()};
                queue.push_back(nodes.size() - 1);
            }
        }
        return {std::nullopt, nodes.size()};
    }

    auto conjugate(const ReflectivityCertificate & cert, const Automorphism & sigma) -> ReflectivityCertificate
    {
        auto sigma_inv = inverse(sigma);
        ReflectivityCertificate out{sigma.apply(cert.start), sigma.apply(cert.side), {}};
        for (auto & step : cert.steps) {
            auto phi = compose(sigma, compose(step.triple.phi, sigma_inv));
            NiceTriple t{sigma.apply(step.triple.a), sigma.apply(step.triple.b), phi, fixed_set(phi)};
            out.steps.push_back({t, sigma.apply(step.next)});
        }
        return out;
    }

    auto transport(const ReflectivityCertificate & cert, const std::vector<Vertex> & map) -> ReflectivityCertificate
    {
        Automorphism sigma{map, false};
        return conjugate(cert, sigma);
    }

    auto certify_all_pairs(const Graph & h, std::size_t budget) -> AllPairsResult
    {
        if (! is_connected(h))
            throw InputError("pattern graph is not connected");
        auto parts = pattern_parts(h);
        auto triples = enumerate_nice_triples(h);

        std::optional<Automorphism> part_swap;
        for (auto & a : enumerate_automorphisms(h))
            if (a.apply(parts[0]) == parts[1]) {
                part_swap = a;
                break;
            }

        AllPairsResult result;
        result.used_part_swap = part_swap.has_value();
        auto run_side = [&](VertexSet side, std::vector<ReflectivityCertificate> & out) {
            auto members = side.members();
            for (std::size_t i = 0; i < members.size(); ++i)
                for (std::size_t j = i + 1; j < members.size(); ++j) {
                    VertexSet r0{members[i], members[j]};
                    auto found = certify_reflective(h, triples, r0, budget);
                    if (found.certificate)
                        out.push_back(*found.certificate);
                    else
                        result.unknown_pairs.push_back(r0);
                }
        };

        std::vector<ReflectivityCertificate> first, second;
        run_side(parts[0], first);
        if (part_swap) {
            auto unknown_first = result.unknown_pairs;
            for (auto & c : first)
                second.push_back(conjugate(c, *part_swap));
            for (auto r : unknown_first)
                result.unknown_pairs.push_back(part_swap->apply(r));
        }
        else
            run_side(parts[1], second);

        result.certificates = std::move(first);
        result.certificates.insert(result.certificates.end(), second.begin(), second.end());
        result.reflective = result.unknown_pairs.empty();
        return result;
    }

    // ---- explicit hypercube sequence ----

    namespace
    {
        // coordinate i (1-based) of x in Q_d
        auto coord(std::uint64_t x, int i, int d) -> int
        {
            return static_cast<int>((x >> (d - i)) & 1u);
        }

        auto with_coord(std::uint64_t x, int i, int d, int value) -> std::uint64_t
        {
            std::uint64_t bit = std::uint64_t{1} << (d - i);
            return value ? (x | bit) : (x & ~bit);
        }

        auto parity(std::uint64_t x) -> int
        {
            return std::popcount(x) & 1;
        }

        template <typename F>
        auto cube_set(int d, F && keep) -> VertexSet
        {
            VertexSet s;
            for (std::uint64_t x = 0; x < (std::uint64_t{1} << d); ++x)
                if (keep(x))
                    s.insert(static_cast<Vertex>(x));
            return s;
        }

        template <typename F>
        auto cube_map(const Graph & q, int d, F && f) -> Automorphism
        {
            std::vector<Vertex> perm(std::size_t{1} << d);
            for (std::uint64_t x = 0; x < perm.size(); ++x)
                perm[x] = static_cast<Vertex>(f(x));
            return make_automorphism(q, std::move(perm));
        }

        auto swap_coords(std::uint64_t x, int i, int j, int d) -> std::uint64_t
        {
            int xi = coord(x, i, d), xj = coord(x, j, d);
            return with_coord(with_coord(x, i, d, xj), j, d, xi);
        }

        // phi swapping coordinates k, k+1 with A = {x_k=1, x_{k+1}=0}
        auto cube_swap_triple(const Graph & q, int d, int k) -> NiceTriple
        {
            auto phi = cube_map(q, d, [&](std::uint64_t x) { return swap_coords(x, k, k + 1, d); });
            auto a = cube_set(d, [&](std::uint64_t x) { return coord(x, k, d) == 1 && coord(x, k + 1, d) == 0; });
            auto b = cube_set(d, [&](std::uint64_t x) { return coord(x, k, d) == 0 && coord(x, k + 1, d) == 1; });
            return make_nice_triple(q, a, b, phi);
        }

        // (x_k, x_{k+1}) -> (1 - x_{k+1}, 1 - x_k) with A = {x_k = x_{k+1} = 0}
        auto cube_complement_triple(const Graph & q, int d, int k) -> NiceTriple
        {
            auto phi = cube_map(q, d, [&](std::uint64_t x) {
                int xk = coord(x, k, d), xk1 = coord(x, k + 1, d);
                return with_coord(with_coord(x, k, d, 1 - xk1), k + 1, d, 1 - xk);
            });
            auto a = cube_set(d, [&](std::uint64_t x) { return coord(x, k, d) == 0 && coord(x, k + 1, d) == 0; });
            auto b = cube_set(d, [&](std::uint64_t x) { return coord(x, k, d) == 1 && coord(x, k + 1, d) == 1; });
            return make_nice_triple(q, a, b, phi);
        }

        void check_cube_dimension(int d)
        {
            if (d < 3 || d > 6)
                throw InputError("explicit cube sequence needs 3 <= d <= 6, got " + std::to_string(d));
        }

        auto checked(const Graph & h, ReflectivityCertificate cert) -> ReflectivityCertificate
        {
            auto report = verify_certificate(h, cert);
            if (! report.ok)
                throw std::logic_error("explicit reflection sequence failed verification: " + report.message);
            return cert;
        }
    }

    auto hypercube_s_set(int d, int k) -> VertexSet
    {
        return cube_set(d, [&](std::uint64_t x) {
            if (parity(x))
                return false;
            for (int i = k + 1; i <= d; ++i)
                if (coord(x, i, d))
                    return false;
            return true;
        });
    }

    auto hypercube_t_set(int d, int k) -> VertexSet
    {
        return cube_set(d, [&](std::uint64_t x) {
            if (parity(x))
                return false;
            for (int i = k + 2; i <= d; ++i)
                if (coord(x, i, d))
                    return false;
            return ! (coord(x, k, d) == 1 && coord(x, k + 1, d) == 1);
        });
    }

    auto hypercube_claim_identities(int d) -> std::vector<ClaimIdentity>
    {
        check_cube_dimension(d);
        auto q = gen_hypercube(d);
        std::vector<ClaimIdentity> result;
        for (int k = 2; k <= d - 1; ++k) {
            auto s = hypercube_s_set(d, k), t = hypercube_t_set(d, k), s_next = hypercube_s_set(d, k + 1);
            auto first = cube_swap_triple(q, d, k);
            auto second = cube_complement_triple(q, d, k);
            ClaimIdentity id{k, false, false};
            id.swap_step = is_admissible(q, first, s) && reflect(first, s) == t;
            id.complement_step = is_admissible(q, second, t) && reflect(second, t) == s_next;
            result.push_back(id);
        }
        return result;
    }

    auto hypercube_explicit_sequence(int d, VertexSet r0) -> ReflectivityCertificate
    {
        check_cube_dimension(d);
        auto q = gen_hypercube(d);
        const std::uint64_t ones = (std::uint64_t{1} << d) - 1;
        if (r0.size() != 2)
            throw InputError("starting set must have exactly two vertices");
        auto members = r0.members();
        if (static_cast<std::size_t>(members[1]) >= q.order())
            throw InputError("starting vertex outside Q_d");
        auto u = static_cast<std::uint64_t>(members[0]);
        auto v = static_cast<std::uint64_t>(members[1]);
        if (parity(u) != parity(v))
            throw InputError("starting pair " + to_label_string(q, r0) + " mixes the two parity classes");

        auto side = cube_set(d, [&](std::uint64_t x) { return parity(x) == parity(u); });
        ReflectivityCertificate cert{r0, side, {}};

        // normalise to a distance-2 pair
        std::uint64_t a = u, b = v;
        if (std::popcount(u ^ v) != 2) {
            auto shift = cube_map(q, d, [&](std::uint64_t x) { return x ^ u; });
            std::uint64_t w = u ^ v;
            NiceTriple local;
            VertexSet pair;
            if (w != ones) {
                int i = 0, j = 0;
                for (int p = 1; p <= d && ! i; ++p)
                    for (int r = p + 1; r <= d; ++r)
                        if (coord(w, p, d) != coord(w, r, d)) {
                            i = p;
                            j = r;
                            break;
                        }
                auto phi = cube_map(q, d, [&](std::uint64_t x) { return swap_coords(x, i, j, d); });
                auto wa = cube_set(d, [&](std::uint64_t x) { return coord(x, i, d) == coord(w, i, d) && coord(x, j, d) == coord(w, j, d); });
                auto wb = cube_set(d, [&](std::uint64_t x) { return coord(x, i, d) != coord(w, i, d) && coord(x, j, d) != coord(w, j, d); });
                local = make_nice_triple(q, wa, wb, phi);
                pair = VertexSet{static_cast<Vertex>(w), phi(static_cast<Vertex>(w))};
            }
            else {
                auto phi = cube_map(q, d, [&](std::uint64_t x) {
                    int x1 = coord(x, 1, d), x2 = coord(x, 2, d);
                    return with_coord(with_coord(x, 1, d, 1 - x2), 2, d, 1 - x1);
                });
                auto wa = cube_set(d, [&](std::uint64_t x) { return coord(x, 1, d) == 0 && coord(x, 2, d) == 0; });
                auto wb = cube_set(d, [&](std::uint64_t x) { return coord(x, 1, d) == 1 && coord(x, 2, d) == 1; });
                local = make_nice_triple(q, wa, wb, phi);
                pair = VertexSet{0, phi(0)};
            }
            if (! pair.subset_of(reflect(local, VertexSet{0, static_cast<Vertex>(w)})))
                throw std::logic_error("normalising step does not produce the expected pair");

            ReflectivityCertificate piece{VertexSet{0, static_cast<Vertex>(w)}, VertexSet{}, {{local, pair}}};
            piece = conjugate(piece, shift);
            cert.steps.push_back(piece.steps.front());
            auto next = piece.steps.front().next.members();
            a = static_cast<std::uint64_t>(next[0]);
            b = static_cast<std::uint64_t>(next[1]);
        }

        // relabel {a, b} to {0...0, 110...0}: x -> pi(x ^ a)
        std::uint64_t w = a ^ b;
        std::vector<int> ones_at;
        for (int i = 1; i <= d; ++i)
            if (coord(w, i, d))
                ones_at.push_back(i);
        std::vector<int> target(static_cast<std::size_t>(d + 1)); // coordinate i goes to target[i]
        target[static_cast<std::size_t>(ones_at[0])] = 1;
        target[static_cast<std::size_t>(ones_at[1])] = 2;
        for (int i = 1, next = 3; i <= d; ++i)
            if (i != ones_at[0] && i != ones_at[1])
                target[static_cast<std::size_t>(i)] = next++;
        auto normalise = cube_map(q, d, [&](std::uint64_t x) {
            std::uint64_t y = 0, z = x ^ a;
            for (int i = 1; i <= d; ++i)
                y = with_coord(y, target[static_cast<std::size_t>(i)], d, coord(z, i, d));
            return y;
        });

        ReflectivityCertificate chain{hypercube_s_set(d, 2), hypercube_s_set(d, d), {}};
        VertexSet current = chain.start;
        for (int k = 2; k <= d - 1; ++k) {
            auto first = cube_swap_triple(q, d, k);
            auto t = hypercube_t_set(d, k);
            if (! is_admissible(q, first, current) || reflect(first, current) != t)
                throw std::logic_error("psi(S_k) != T_k at k=" + std::to_string(k));
            chain.steps.push_back({first, t});
            auto second = cube_complement_triple(q, d, k);
            auto s_next = hypercube_s_set(d, k + 1);
            if (! is_admissible(q, second, t) || reflect(second, t) != s_next)
                throw std::logic_error("psi(T_k) != S_{k+1} at k=" + std::to_string(k));
            chain.steps.push_back({second, s_next});
            current = s_next;
        }

        auto back = conjugate(chain, inverse(normalise));
        cert.steps.insert(cert.steps.end(), back.steps.begin(), back.steps.end());
        return checked(q, std::move(cert));
    }

    // ---- explicit set-graph sequence ----

    namespace
    {
        struct SetGraphFrame
        {
            int l, k;
            Graph h;
            std::vector<std::uint32_t> sets;
            std::map<std::uint32_t, Vertex> id;

            auto element_map(const std::vector<int> & image) const -> Automorphism
            {
                std::vector<Vertex> perm(sets.size());
                for (std::size_t v = 0; v < sets.size(); ++v) {
                    std::uint32_t out = 0;
                    for (int e = 1; e <= k; ++e)
                        if (sets[v] & (1u << (e - 1)))
                            out |= 1u << (image[static_cast<std::size_t>(e)] - 1);
                    perm[v] = id.at(out);
                }
                return make_automorphism(h, std::move(perm));
            }

            auto swap(int i, int j) const -> Automorphism
            {
                std::vector<int> image(static_cast<std::size_t>(k + 1));
                for (int e = 1; e <= k; ++e)
                    image[static_cast<std::size_t>(e)] = e;
                std::swap(image[static_cast<std::size_t>(i)], image[static_cast<std::size_t>(j)]);
                return element_map(image);
            }

            // sets containing i but not j
            auto having(int i, int j) const -> VertexSet
            {
                VertexSet s;
                for (std::size_t v = 0; v < sets.size(); ++v)
                    if ((sets[v] & (1u << (i - 1))) && ! (sets[v] & (1u << (j - 1))))
                        s.insert(static_cast<Vertex>(v));
                return s;
            }

            auto swap_triple(int i, int j) const -> NiceTriple
            {
                return make_nice_triple(h, having(i, j), having(j, i), swap(i, j));
            }

            auto small_side() const -> VertexSet
            {
                VertexSet s;
                for (std::size_t v = 0; v < sets.size(); ++v)
                    if (std::popcount(sets[v]) == l)
                        s.insert(static_cast<Vertex>(v));
                return s;
            }
        };
    }

    auto set_graph_explicit_sequence(int l, int k, VertexSet r0) -> ReflectivityCertificate
    {
        const bool supported = (l == 1 && (k == 3 || k == 4 || k == 5)) || (l == 2 && k == 5);
        if (! supported)
            throw CapabilityError("explicit set-graph sequence supports (1,3), (1,4), (1,5), (2,5) only");
        SetGraphFrame frame{l, k, gen_set_graph(l, k), set_graph_vertex_sets(l, k), {}};
        for (std::size_t v = 0; v < frame.sets.size(); ++v)
            frame.id[frame.sets[v]] = static_cast<Vertex>(v);

        auto side = frame.small_side();
        if (r0.size() != 2 || ! r0.subset_of(side))
            throw InputError("starting set must be two l-subsets");

        ReflectivityCertificate cert{r0, side, {}};
        auto members = r0.members();
        std::uint32_t s = frame.sets[static_cast<std::size_t>(members[0])];
        std::uint32_t t = frame.sets[static_cast<std::size_t>(members[1])];

        if (std::popcount(s & ~t) != 1) {
            int i = std::countr_zero(s & ~t) + 1;
            int j = std::countr_zero(~(s | t)) + 1;
            auto triple = frame.swap_triple(i, j);
            auto sv = frame.id.at(s);
            VertexSet pair{sv, triple.phi(sv)};
            if (! pair.subset_of(psi_apply(frame.h, triple, r0)))
                throw std::logic_error("normalising swap does not keep S and its image");
            cert.steps.push_back({triple, pair});
            t = frame.sets[static_cast<std::size_t>(triple.phi(sv))];
        }

        // element relabelling: common -> 1..l-1, s\t -> l, t\s -> l+1, others -> l+2..k
        std::vector<int> image(static_cast<std::size_t>(k + 1));
        int next_common = 1, next_other = l + 2;
        for (int e = 1; e <= k; ++e) {
            std::uint32_t bit = 1u << (e - 1);
            if ((s & bit) && (t & bit))
                image[static_cast<std::size_t>(e)] = next_common++;
            else if (s & bit)
                image[static_cast<std::size_t>(e)] = l;
            else if (t & bit)
                image[static_cast<std::size_t>(e)] = l + 1;
            else
                image[static_cast<std::size_t>(e)] = next_other++;
        }
        auto normalise = frame.element_map(image);

        std::uint32_t base = (1u << l) - 1;                              // [l]
        std::uint32_t other = ((1u << (l - 1)) - 1) | (1u << l);         // [l-1] u {l+1}
        VertexSet current{frame.id.at(base), frame.id.at(other)};
        ReflectivityCertificate chain{current, side, {}};
        for (int i = l; i >= 1; --i)
            for (int j = i + 1; j <= k; ++j) {
                auto triple = frame.swap_triple(i, j);
                if (! is_admissible(frame.h, triple, current))
                    throw std::logic_error("R_t not admissible for phi_{" + std::to_string(i) + "," + std::to_string(j) + "}");
                current = reflect(triple, current);

                // every l-set containing [i-1] and meeting {i..j} is present
                std::uint32_t prefix = (1u << (i - 1)) - 1;
                std::uint32_t window = ((1u << j) - 1) & ~prefix;
                for (Vertex v : side.members()) {
                    auto p = frame.sets[static_cast<std::size_t>(v)];
                    if ((p & prefix) == prefix && (p & window) && ! current.contains(v))
                        throw std::logic_error("superset invariant fails after phi_{" + std::to_string(i) + "," + std::to_string(j) + "}");
                }
                chain.steps.push_back({triple, current});
            }
        if (current != side)
            throw std::logic_error("schedule did not reach the whole l-side");

        auto back = conjugate(chain, inverse(normalise));
        cert.steps.insert(cert.steps.end(), back.steps.begin(), back.steps.end());
        return checked(frame.h, std::move(cert));
    }

    // ---- certificate files ----

    auto certificate_to_json(const ReflectivityCertificate & cert) -> std::string
    {
        nlohmann::ordered_json j;
        j["start"] = cert.start.members();
        j["side"] = cert.side.members();
        j["steps"] = nlohmann::ordered_json::array();
        for (auto & step : cert.steps) {
            nlohmann::ordered_json s;
            s["A"] = step.triple.a.members();
            s["B"] = step.triple.b.members();
            s["phi"] = step.triple.phi.perm;
            s["R_next"] = step.next.members();
            j["steps"].push_back(std::move(s));
        }
        return j.dump(2) + "\n";
    }

    auto certificate_from_json(const Graph & h, const std::string & text) -> ReflectivityCertificate
    {
        try {
            auto j = nlohmann::json::parse(text);
            auto set_of = [&](const nlohmann::json & array) {
                auto members = array.get<std::vector<Vertex>>();
                for (Vertex v : members)
                    if (v < 0 || static_cast<std::size_t>(v) >= h.order())
                        throw InputError("vertex " + std::to_string(v) + " outside the pattern");
                return VertexSet::of(members);
            };
            ReflectivityCertificate cert{set_of(j.at("start")), set_of(j.at("side")), {}};
            std::size_t index = 0;
            for (auto & s : j.at("steps")) {
                auto perm = s.at("phi").get<std::vector<Vertex>>();
                Automorphism phi;
                try {
                    phi = make_automorphism(h, perm);
                }
                catch (const InputError & e) {
                    throw InputError("step " + std::to_string(index) + ": " + e.what());
                }
                cert.steps.push_back({{set_of(s.at("A")), set_of(s.at("B")), phi, fixed_set(phi)}, set_of(s.at("R_next"))});
                ++index;
            }
            return cert;
        }
        catch (const nlohmann::json::exception & e) {
            throw InputError(std::string("malformed certificate: ") + e.what());
        }
    }
}

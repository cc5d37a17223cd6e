#include <cubehom/error.hpp>
#include <cubehom/homcount.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace cubehom
{
    namespace
    {
        using u128 = unsigned __int128;
        using i128 = __int128;

        auto to_bigint(u128 x) -> BigInt
        {
            BigInt hi = static_cast<unsigned long>(x >> 64);
            BigInt lo = static_cast<unsigned long>(static_cast<std::uint64_t>(x));
            hi <<= 64;
            return hi + lo;
        }

        auto to_bigint(const BigInt & x) -> BigInt { return x; }

        auto mul(u128 a, std::size_t b) -> u128 { return a * b; }
        auto mul(const BigInt & a, std::size_t b) -> BigInt { return a * static_cast<unsigned long>(b); }

        /// Host adjacency as packed bit rows.
        class HostBits
        {
        public:
            explicit HostBits(const Graph & g) :
                n_(g.order()), words_((g.order() + 63) / 64), rows_(n_ * words_, 0), full_(words_, 0)
            {
                for (std::size_t u = 0; u < n_; ++u)
                    for (Vertex v : g.neighbours(static_cast<Vertex>(u)))
                        rows_[u * words_ + static_cast<std::size_t>(v) / 64] |= std::uint64_t{1} << (v % 64);
                for (std::size_t v = 0; v < n_; ++v)
                    full_[v / 64] |= std::uint64_t{1} << (v % 64);
            }

            auto n() const -> std::size_t { return n_; }
            auto words() const -> std::size_t { return words_; }
            auto row(std::size_t v) const -> const std::uint64_t * { return rows_.data() + v * words_; }
            auto full() const -> const std::uint64_t * { return full_.data(); }

        private:
            std::size_t n_;
            std::size_t words_;
            std::vector<std::uint64_t> rows_;
            std::vector<std::uint64_t> full_;
        };

        auto popcount(const std::uint64_t * a, std::size_t words) -> std::size_t
        {
            std::size_t c = 0;
            for (std::size_t i = 0; i < words; ++i)
                c += static_cast<std::size_t>(std::popcount(a[i]));
            return c;
        }

        /// dst = a & b, returns whether the result is non-empty.
        auto intersect(std::uint64_t * dst, const std::uint64_t * a, const std::uint64_t * b, std::size_t words) -> bool
        {
            std::uint64_t any = 0;
            for (std::size_t i = 0; i < words; ++i) {
                dst[i] = a[i] & b[i];
                any |= dst[i];
            }
            return any != 0;
        }

        /// n^v fits comfortably in 127 bits.
        auto fits_u128(std::size_t v, std::size_t n) -> bool
        {
            if (n <= 1)
                return true;
            return static_cast<double>(v) * std::log2(static_cast<double>(n)) < 120.0;
        }

        void check_hom_cap(const Graph & h)
        {
            if (h.order() > hom_pattern_cap)
                throw CapabilityError("homomorphism counting is limited to patterns with " + std::to_string(hom_pattern_cap) + " vertices, got " + std::to_string(h.order()));
        }

        void check_injective_cap(const Graph & h, const Graph & g)
        {
            if (h.order() > injective_pattern_cap)
                throw CapabilityError("injective counting is limited to patterns with " + std::to_string(injective_pattern_cap) + " vertices, got " + std::to_string(h.order()));
            if (g.order() > 64)
                throw CapabilityError("injective counting is limited to hosts with 64 vertices, got " + std::to_string(g.order()));
        }

        /// Order in which to place vertices: repeatedly the one with most links
        /// (neighbours plus common neighbours) to those already placed, ties to
        /// the higher degree, then smaller id.
        auto placement_order(const Graph & h, const std::vector<Vertex> & pool) -> std::vector<Vertex>
        {
            std::vector<int> links(h.order(), 0);
            std::vector<bool> taken(h.order(), false);
            std::vector<Vertex> order;
            for (std::size_t step = 0; step < pool.size(); ++step) {
                Vertex best = -1;
                for (Vertex v : pool) {
                    if (taken[static_cast<std::size_t>(v)])
                        continue;
                    if (best < 0)
                        best = v;
                    else {
                        auto lv = links[static_cast<std::size_t>(v)], lb = links[static_cast<std::size_t>(best)];
                        if (lv > lb || (lv == lb && h.degree(v) > h.degree(best)))
                            best = v;
                    }
                }
                taken[static_cast<std::size_t>(best)] = true;
                order.push_back(best);
                for (Vertex w : h.neighbours(best))
                    for (Vertex z : h.neighbours(w))
                        if (z != best)
                            ++links[static_cast<std::size_t>(z)];
                for (Vertex w : h.neighbours(best))
                    ++links[static_cast<std::size_t>(w)];
            }
            return order;
        }

        /// Shared state for kernels that enumerate one class X of a bipartite
        /// pattern and track, for every vertex y of the other class, the
        /// intersection of the host neighbourhoods of its assigned neighbours.
        class SplitState
        {
        public:
            SplitState(const Graph & h, const HostBits & host, const std::vector<int> & side, int x_side) : host_(host)
            {
                std::vector<Vertex> xs_pool;
                std::vector<int> y_index(h.order(), -1);
                for (std::size_t v = 0; v < h.order(); ++v) {
                    if (side[v] == x_side)
                        xs_pool.push_back(static_cast<Vertex>(v));
                    else {
                        y_index[v] = static_cast<int>(ys.size());
                        ys.push_back(static_cast<Vertex>(v));
                    }
                }
                xs = placement_order(h, xs_pool);

                std::vector<std::size_t> position(h.order(), 0);
                for (std::size_t i = 0; i < xs.size(); ++i)
                    position[static_cast<std::size_t>(xs[i])] = i;

                x_nbrs.assign(xs.size(), {});
                completes.assign(xs.size(), {});
                for (std::size_t i = 0; i < xs.size(); ++i)
                    for (Vertex y : h.neighbours(xs[i]))
                        x_nbrs[i].push_back(y_index[static_cast<std::size_t>(y)]);

                const std::size_t w = host.words();
                level_.assign(ys.size(), 0);
                inter_.resize(ys.size());
                for (std::size_t j = 0; j < ys.size(); ++j) {
                    auto deg = h.degree(ys[j]);
                    inter_[j].assign((deg + 1) * w, 0);
                    std::copy(host.full(), host.full() + w, inter_[j].begin());
                    if (deg == 0)
                        isolated_y.push_back(static_cast<int>(j));
                    else {
                        std::size_t last = 0;
                        for (Vertex x : h.neighbours(ys[j]))
                            last = std::max(last, position[static_cast<std::size_t>(x)]);
                        completes[last].push_back(static_cast<int>(j));
                    }
                }
            }

            /// Assign host vertex c to X vertex at depth i; false (and no state
            /// change) if some neighbour's candidate set becomes empty.
            auto push(std::size_t i, std::size_t c) -> bool
            {
                const std::size_t w = host_.words();
                std::size_t done = 0;
                bool ok = true;
                for (int y : x_nbrs[i]) {
                    auto & buf = inter_[static_cast<std::size_t>(y)];
                    auto & lv = level_[static_cast<std::size_t>(y)];
                    bool nonempty = intersect(buf.data() + (lv + 1) * w, buf.data() + lv * w, host_.row(c), w);
                    ++lv;
                    ++done;
                    if (! nonempty) {
                        ok = false;
                        break;
                    }
                }
                if (! ok)
                    for (std::size_t t = 0; t < done; ++t)
                        --level_[static_cast<std::size_t>(x_nbrs[i][t])];
                return ok;
            }

            void pop(std::size_t i)
            {
                for (int y : x_nbrs[i])
                    --level_[static_cast<std::size_t>(y)];
            }

            /// Current candidate set of y.
            auto candidates(int y) const -> const std::uint64_t *
            {
                auto j = static_cast<std::size_t>(y);
                return inter_[j].data() + level_[j] * host_.words();
            }

            std::vector<Vertex> xs;
            std::vector<Vertex> ys;
            std::vector<std::vector<int>> x_nbrs;
            std::vector<std::vector<int>> completes;
            std::vector<int> isolated_y;

        private:
            const HostBits & host_;
            std::vector<std::size_t> level_;
            std::vector<std::vector<std::uint64_t>> inter_;
        };

        template <typename Acc>
        class BipartiteCounter
        {
        public:
            BipartiteCounter(SplitState & state, const HostBits & host) : state_(state), host_(host) {}

            auto run() -> Acc
            {
                Acc start = 1;
                for (std::size_t t = 0; t < state_.isolated_y.size(); ++t)
                    start = mul(start, host_.n());
                if (state_.xs.empty())
                    return start;
                recurse(0, start);
                return total_;
            }

        private:
            void recurse(std::size_t depth, const Acc & prod)
            {
                if (depth == state_.xs.size()) {
                    total_ += prod;
                    return;
                }
                for (std::size_t c = 0; c < host_.n(); ++c) {
                    if (! state_.push(depth, c))
                        continue;
                    Acc p = prod;
                    for (int y : state_.completes[depth])
                        p = mul(p, popcount(state_.candidates(y), host_.words()));
                    if (p != 0)
                        recurse(depth + 1, p);
                    state_.pop(depth);
                }
            }

            SplitState & state_;
            const HostBits & host_;
            Acc total_ = 0;
        };

        /// Vertex-at-a-time backtracking; optionally injective.
        template <typename Acc>
        class Backtracker
        {
        public:
            Backtracker(const Graph & h, const HostBits & host, bool injective) : h_(h), host_(host), injective_(injective)
            {
                std::vector<Vertex> all;
                for (std::size_t v = 0; v < h.order(); ++v)
                    all.push_back(static_cast<Vertex>(v));
                order_ = placement_order(h, all);
                image_.assign(h.order(), -1);
                used_.assign(host.words(), 0);
                scratch_.assign((h.order() + 1) * host.words(), 0);
            }

            auto run() -> Acc
            {
                if (order_.empty())
                    return 1;
                recurse(0);
                return total_;
            }

        private:
            void recurse(std::size_t depth)
            {
                const std::size_t w = host_.words();
                std::uint64_t * cand = scratch_.data() + depth * w;
                std::copy(host_.full(), host_.full() + w, cand);
                Vertex v = order_[depth];
                for (Vertex u : h_.neighbours(v)) {
                    auto img = image_[static_cast<std::size_t>(u)];
                    if (img >= 0)
                        intersect(cand, cand, host_.row(static_cast<std::size_t>(img)), w);
                }
                if (injective_)
                    for (std::size_t i = 0; i < w; ++i)
                        cand[i] &= ~used_[i];

                if (depth + 1 == order_.size()) {
                    total_ += static_cast<Acc>(popcount(cand, w));
                    return;
                }
                for (std::size_t i = 0; i < w; ++i) {
                    std::uint64_t bits = cand[i];
                    while (bits) {
                        auto c = i * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                        bits &= bits - 1;
                        image_[static_cast<std::size_t>(v)] = static_cast<Vertex>(c);
                        used_[c / 64] |= std::uint64_t{1} << (c % 64);
                        recurse(depth + 1);
                        used_[c / 64] &= ~(std::uint64_t{1} << (c % 64));
                    }
                }
                image_[static_cast<std::size_t>(v)] = -1;
            }

            const Graph & h_;
            const HostBits & host_;
            bool injective_;
            std::vector<Vertex> order_;
            std::vector<Vertex> image_;
            std::vector<std::uint64_t> used_;
            std::vector<std::uint64_t> scratch_;
            Acc total_ = 0;
        };

        template <typename Acc>
        auto backtrack_count(const Graph & h, const Graph & g, bool injective) -> BigInt
        {
            HostBits host(g);
            Backtracker<Acc> bt(h, host, injective);
            return to_bigint(bt.run());
        }

        auto bipartite_count(const Graph & h, const Graph & g, const std::vector<int> & side) -> BigInt
        {
            std::size_t zeros = static_cast<std::size_t>(std::count(side.begin(), side.end(), 0));
            int x_side = zeros <= h.order() - zeros ? 0 : 1;
            HostBits host(g);
            SplitState state(h, host, side, x_side);
            if (fits_u128(h.order(), g.order()))
                return to_bigint(BipartiteCounter<u128>(state, host).run());
            return BipartiteCounter<BigInt>(state, host).run();
        }

        /// Injective count for a bipartite pattern: distinct images for X,
        /// then inclusion-exclusion over set partitions of Y with Moebius
        /// weights (-1)^{|B|-1} (|B|-1)!.
        class InjectiveSplit
        {
        public:
            InjectiveSplit(SplitState & state, const HostBits & host) : state_(state), host_(host)
            {
                const std::size_t ny = state.ys.size();
                const std::size_t subsets = std::size_t{1} << ny;
                mu_.assign(subsets, 0);
                for (std::size_t mask = 1; mask < subsets; ++mask) {
                    int size = std::popcount(mask);
                    i128 f = 1;
                    for (int t = 2; t < size; ++t)
                        f *= t;
                    mu_[mask] = (size % 2 == 1) ? f : -f;
                }
                sets_.assign(subsets * host.words(), 0);
                count_.assign(subsets, 0);
                f_.assign(subsets, 0);
                used_.assign(host.words(), 0);
            }

            auto run() -> BigInt
            {
                recurse(0);
                return to_bigint(static_cast<u128>(total_));
            }

        private:
            void recurse(std::size_t depth)
            {
                if (depth == state_.xs.size()) {
                    total_ += leaf();
                    return;
                }
                for (std::size_t c = 0; c < host_.n(); ++c) {
                    auto bit = std::uint64_t{1} << (c % 64);
                    if (used_[c / 64] & bit)
                        continue;
                    if (! state_.push(depth, c))
                        continue;
                    used_[c / 64] |= bit;
                    recurse(depth + 1);
                    used_[c / 64] &= ~bit;
                    state_.pop(depth);
                }
            }

            auto leaf() -> i128
            {
                const std::size_t w = host_.words();
                const std::size_t ny = state_.ys.size();
                if (ny == 0)
                    return 1;
                const std::size_t subsets = std::size_t{1} << ny;
                for (std::size_t mask = 1; mask < subsets; ++mask) {
                    std::uint64_t * dst = sets_.data() + mask * w;
                    auto low = static_cast<std::size_t>(std::countr_zero(mask));
                    std::size_t rest = mask & (mask - 1);
                    const std::uint64_t * own = state_.candidates(static_cast<int>(low));
                    if (rest == 0)
                        for (std::size_t i = 0; i < w; ++i)
                            dst[i] = own[i] & ~used_[i];
                    else
                        intersect(dst, own, sets_.data() + rest * w, w);
                    count_[mask] = static_cast<i128>(popcount(dst, w));
                }
                f_[0] = 1;
                for (std::size_t mask = 1; mask < subsets; ++mask) {
                    std::size_t low = mask & (~mask + 1);
                    std::size_t rest = mask ^ low;
                    i128 acc = 0;
                    for (std::size_t sub = rest;; sub = (sub - 1) & rest) {
                        std::size_t block = sub | low;
                        if (count_[block] != 0)
                            acc += mu_[block] * count_[block] * f_[mask ^ block];
                        if (sub == 0)
                            break;
                    }
                    f_[mask] = acc;
                }
                return f_[subsets - 1];
            }

            SplitState & state_;
            const HostBits & host_;
            std::vector<i128> mu_;
            std::vector<std::uint64_t> sets_;
            std::vector<i128> count_;
            std::vector<i128> f_;
            std::vector<std::uint64_t> used_;
            i128 total_ = 0;
        };

        auto bigint_from_ulong(std::size_t x) -> BigInt { return BigInt(static_cast<unsigned long>(x)); }
    }

    auto quotient(const Graph & h, VertexSet r) -> Graph
    {
        if (h.order() > VertexSet::capacity)
            throw CapabilityError("pattern graphs are limited to 64 vertices, got " + std::to_string(h.order()));
        if (! r.subset_of(VertexSet::full(h.order())))
            throw InputError("constraint set " + to_string(r) + " contains a vertex outside the pattern");
        for (auto [u, v] : h.edges())
            if (r.contains(u) && r.contains(v))
                throw InputError("constraint set " + to_string(r) + " is not independent: it contains the edge " + std::to_string(u) + "-" + std::to_string(v));
        if (r.size() <= 1)
            return Graph::from_edges(h.order(), h.edges());

        Vertex rep = r.first();
        std::vector<Vertex> id(h.order(), -1);
        Vertex next = 0;
        for (std::size_t v = 0; v < h.order(); ++v)
            if (! r.contains(static_cast<Vertex>(v)) || static_cast<Vertex>(v) == rep)
                id[v] = next++;
        for (std::size_t v = 0; v < h.order(); ++v)
            if (id[v] < 0)
                id[v] = id[static_cast<std::size_t>(rep)];

        std::vector<Edge> edges;
        for (auto [u, v] : h.edges()) {
            auto a = id[static_cast<std::size_t>(u)], b = id[static_cast<std::size_t>(v)];
            edges.emplace_back(std::min(a, b), std::max(a, b));
        }
        return Graph::from_edges(static_cast<std::size_t>(next), edges);
    }

    auto hom_count(const Graph & h, const Graph & g) -> BigInt
    {
        check_hom_cap(h);
        if (h.order() == 0)
            return 1;
        if (auto side = bipartition(h))
            return bipartite_count(h, g, *side);
        return hom_count_backtracking(h, g);
    }

    auto hom_count(const Graph & h, const Graph & g, VertexSet r) -> BigInt
    {
        check_hom_cap(h);
        return hom_count(quotient(h, r), g);
    }

    auto hom_count_backtracking(const Graph & h, const Graph & g) -> BigInt
    {
        check_hom_cap(h);
        if (fits_u128(h.order(), g.order()))
            return backtrack_count<u128>(h, g, false);
        return backtrack_count<BigInt>(h, g, false);
    }

    auto injective_hom_count(const Graph & h, const Graph & g) -> BigInt
    {
        check_injective_cap(h, g);
        if (h.order() > g.order())
            return 0;
        if (h.order() == 0)
            return 1;
        auto side = bipartition(h);
        if (! side)
            return injective_hom_count_backtracking(h, g);
        std::size_t zeros = static_cast<std::size_t>(std::count(side->begin(), side->end(), 0));
        int x_side = zeros <= h.order() - zeros ? 0 : 1;
        HostBits host(g);
        SplitState state(h, host, *side, x_side);
        return InjectiveSplit(state, host).run();
    }

    auto injective_hom_count_backtracking(const Graph & h, const Graph & g) -> BigInt
    {
        check_injective_cap(h, g);
        if (h.order() > g.order())
            return 0;
        return backtrack_count<u128>(h, g, true);
    }

    auto pair_collision_sum(const Graph & h, const Graph & g) -> BigInt
    {
        check_hom_cap(h);
        BigInt total = 0;
        for (std::size_t u = 0; u < h.order(); ++u)
            for (std::size_t v = u + 1; v < h.order(); ++v)
                if (! h.adjacent(static_cast<Vertex>(u), static_cast<Vertex>(v)))
                    total += hom_count(h, g, VertexSet{static_cast<Vertex>(u), static_cast<Vertex>(v)});
        return total;
    }

    auto sidorenko_check(const Graph & h, const Graph & g) -> SidorenkoResult
    {
        SidorenkoResult result;
        result.lhs = hom_count(h, g);
        Rational p = edge_density(g);
        result.rhs = pow(Rational(bigint_from_ulong(g.order())), h.order()) * pow(p, h.size());
        result.holds = Rational(result.lhs) >= result.rhs;
        return result;
    }

    auto check_reflection_inequality(const Graph & h, const Graph & g, const NiceTriple & t, VertexSet r) -> ReflectionInequality
    {
        check_hom_cap(h);
        ReflectionInequality result;
        result.psi_ab = psi_apply(h, t, r);
        result.psi_ba = psi_apply(h, swapped(t), r);
        result.hom_r = hom_count(h, g, r);
        result.hom_psi_ab = hom_count(h, g, result.psi_ab);
        result.hom_psi_ba = hom_count(h, g, result.psi_ba);
        result.hom_all = hom_count(h, g);
        BigInt lhs = result.hom_r * result.hom_r;
        result.holds_pair = lhs <= result.hom_psi_ab * result.hom_psi_ba;
        result.holds_weak = lhs <= result.hom_psi_ab * result.hom_all;
        return result;
    }

    auto check_final_inequality(const Graph & h, const Graph & g, const ReflectivityCertificate & cert) -> FinalInequality
    {
        check_hom_cap(h);
        auto report = verify_certificate(h, cert);
        if (! report.ok)
            throw InputError("invalid certificate: " + report.message);

        FinalInequality result;
        result.m = cert.m();
        result.s = cert.s();
        result.hom_side = hom_count(h, g, cert.side);
        result.hom_start = hom_count(h, g, cert.start);
        result.hom_all = hom_count(h, g);

        const BigInt & a = result.hom_start;
        const BigInt & b = result.hom_all;
        const BigInt & c = result.hom_side;
        if (a == 0) {
            result.holds = true;
            return result;
        }
        if (b == 0) {
            result.holds = false;
            return result;
        }

        // a^{2^j} / b^{2^j - 1} is bracketed by integer floor/ceil squaring;
        // the exact powers are only formed when the bracket is inconclusive.
        BigInt lo = a, hi = a;
        for (std::size_t j = 0; j < result.m; ++j) {
            BigInt l2 = lo * lo, h2 = hi * hi;
            mpz_fdiv_q(lo.get_mpz_t(), l2.get_mpz_t(), b.get_mpz_t());
            mpz_cdiv_q(hi.get_mpz_t(), h2.get_mpz_t(), b.get_mpz_t());
        }
        if (c >= hi)
            result.holds = true;
        else if (c < lo)
            result.holds = false;
        else {
            unsigned long s = 1ul << result.m;
            result.holds = c * pow(b, s - 1) >= pow(a, s);
        }
        return result;
    }

    auto exponent_spec(const Graph & h) -> ExponentSpec
    {
        auto side = bipartition(h);
        if (! side)
            throw InputError("exponent parameters need a bipartite pattern");
        long zeros = static_cast<long>(std::count(side->begin(), side->end(), 0));
        long v = static_cast<long>(h.order());
        return {v, static_cast<long>(h.size()), std::max(zeros, v - zeros)};
    }

    auto turan_exponent(const ExponentSpec & spec) -> Rational
    {
        if (spec.e <= spec.t)
            throw InputError("exponent undefined: e = " + std::to_string(spec.e) + " does not exceed t = " + std::to_string(spec.t));
        Rational result(BigInt(spec.v - spec.t - 1), BigInt(spec.e - spec.t));
        result.canonicalize();
        return 2 - result;
    }

    auto supersaturation_experiment(int d, std::size_t n, const Rational & p, std::uint64_t seed, std::size_t trials) -> SupersaturationReport
    {
        if (d != 3)
            throw CapabilityError("supersaturation experiments run only for d = 3, got d = " + std::to_string(d));
        if (n > 48)
            throw CapabilityError("supersaturation experiments are limited to n <= 48, got " + std::to_string(n));
        if (n == 0)
            throw InputError("host size must be positive");

        SupersaturationReport report;
        report.d = d;
        report.n = n;
        report.p = p;
        auto cube = gen_hypercube(3);
        for (std::size_t i = 0; i < trials; ++i) {
            SupersaturationTrial trial;
            trial.seed = seed + i;
            auto g = gen_random(n, p, trial.seed);
            trial.edges = g.size();
            trial.density = edge_density(g);
            trial.hom = hom_count(cube, g);
            trial.injective = injective_hom_count(cube, g);
            if (trial.hom != 0)
                trial.non_injective_fraction = Rational(trial.hom - trial.injective, trial.hom);
            trial.non_injective_fraction.canonicalize();
            if (trial.density != 0) {
                Rational scale = pow(Rational(bigint_from_ulong(n)), 8) * pow(trial.density, 12);
                trial.ratio = Rational(trial.injective) / scale;
            }
            auto mindeg = g.min_degree();
            if (mindeg != 0) {
                trial.almost_regularity = Rational(bigint_from_ulong(g.max_degree()), bigint_from_ulong(mindeg));
                trial.almost_regularity.canonicalize();
            }
            report.trials.push_back(std::move(trial));
        }
        return report;
    }
}

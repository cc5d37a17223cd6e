#include <cubehom/error.hpp>
#include <cubehom/rainbow.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <functional>

namespace cubehom
{
    namespace
    {
        void require_walk_weights(const Graph & g)
        {
            if (g.order() == 0)
                throw InputError("host graph has no vertices");
            if (g.min_degree() == 0)
                throw InputError("host graph has an isolated vertex; cycle weights are undefined");
        }

        void require_k(int k, int cap)
        {
            if (k < 1)
                throw InputError("k must be at least 1, got " + std::to_string(k));
            if (k > cap)
                throw CapabilityError("k is limited to " + std::to_string(cap) + ", got " + std::to_string(k));
        }

        void require_eps(const Rational & eps)
        {
            if (eps <= 0 || eps >= Rational(1, 2))
                throw InputError("epsilon must lie strictly between 0 and 1/2, got " + to_fraction_string(eps));
        }

        /// Integer walk weights: q(v) = L / d(v) with L the lcm of all degrees.
        struct Scaling
        {
            BigInt lcm = 1;
            std::vector<BigInt> q;

            explicit Scaling(const Graph & g)
            {
                for (std::size_t v = 0; v < g.order(); ++v) {
                    BigInt d = static_cast<unsigned long>(g.degree(static_cast<Vertex>(v)));
                    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), d.get_mpz_t());
                }
                q.reserve(g.order());
                for (std::size_t v = 0; v < g.order(); ++v)
                    q.push_back(lcm / static_cast<unsigned long>(g.degree(static_cast<Vertex>(v))));
            }
        };

        using Matrix = std::vector<BigInt>; // row-major n x n

        auto identity_matrix(std::size_t n) -> Matrix
        {
            Matrix m(n * n, 0);
            for (std::size_t i = 0; i < n; ++i)
                m[i * n + i] = 1;
            return m;
        }

        /// m * P where P[z][y] = q(z) for edges zy.
        auto times_p(const Graph & g, const Scaling & s, const Matrix & m) -> Matrix
        {
            const std::size_t n = g.order();
            Matrix next(n * n, 0);
            BigInt val;
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t z = 0; z < n; ++z) {
                    const BigInt & e = m[x * n + z];
                    if (sgn(e) == 0)
                        continue;
                    val = e * s.q[z];
                    for (Vertex y : g.neighbours(static_cast<Vertex>(z)))
                        next[x * n + static_cast<std::size_t>(y)] += val;
                }
            return next;
        }

        /// P^0 .. P^t
        auto powers(const Graph & g, const Scaling & s, int t) -> std::vector<Matrix>
        {
            std::vector<Matrix> result;
            result.push_back(identity_matrix(g.order()));
            for (int i = 1; i <= t; ++i)
                result.push_back(times_p(g, s, result.back()));
            return result;
        }

        auto scaled(const BigInt & numerator, const BigInt & lcm, int exponent) -> Rational
        {
            Rational r(numerator, pow(lcm, static_cast<unsigned long>(exponent)));
            r.canonicalize();
            return r;
        }

        auto trace_of_square(const Matrix & m, std::size_t n) -> BigInt
        {
            BigInt total = 0;
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = 0; y < n; ++y)
                    mpz_addmul(total.get_mpz_t(), m[x * n + y].get_mpz_t(), m[y * n + x].get_mpz_t());
            return total;
        }

        /// Directed edges grouped by colour.
        auto colour_classes(const Graph & g, const EdgeColouring & c) -> std::map<int, std::vector<Edge>>
        {
            std::map<int, std::vector<Edge>> classes;
            for (std::size_t u = 0; u < g.order(); ++u) {
                auto nb = g.neighbours(static_cast<Vertex>(u));
                for (std::size_t i = 0; i < nb.size(); ++i)
                    classes[c.colour_at(static_cast<Vertex>(u), i)].emplace_back(static_cast<Vertex>(u), nb[i]);
            }
            return classes;
        }

        void check_pattern_inputs(const Graph & g, const EdgeColouring & c, int k)
        {
            require_walk_weights(g);
            require_k(k, max_pattern_k);
            if (g.order() > max_pattern_order)
                throw CapabilityError("pattern evaluation is limited to " + std::to_string(max_pattern_order) + " vertices, got " + std::to_string(g.order()));
            if (! check_proper(g, c))
                throw InputError("edge colouring is not proper");
        }

        auto add_check(PatternChainReport & r, std::string name, Rational lhs, Rational rhs, bool conditional)
        {
            bool holds = lhs <= rhs;
            r.checks.push_back({std::move(name), std::move(lhs), std::move(rhs), holds, conditional});
        }

        /// Colours renumbered densely in increasing order.
        auto colour_index(const EdgeColouring & c) -> std::map<int, int>
        {
            std::map<int, int> index;
            for (auto & triple : c.triples())
                index.emplace(triple.second, 0);
            int next = 0;
            for (auto & entry : index)
                entry.second = next++;
            return index;
        }

        class CycleSearcher
        {
        public:
            CycleSearcher(const Graph & g, const EdgeColouring & c, std::size_t max_len, std::size_t budget, std::optional<Rational> eps) :
                g_(g), max_len_(max_len), budget_(budget), eps_(std::move(eps))
            {
                auto index = colour_index(c);
                colour_of_.resize(g.order());
                for (std::size_t u = 0; u < g.order(); ++u) {
                    auto nb = g.neighbours(static_cast<Vertex>(u));
                    for (std::size_t i = 0; i < nb.size(); ++i)
                        colour_of_[u].push_back(index.at(c.colour_at(static_cast<Vertex>(u), i)));
                }
                counts_.assign(index.size(), 0);
                on_path_.assign(g.order(), false);
                if (eps_) {
                    num_ = eps_->get_num();
                    den_ = eps_->get_den();
                }
            }

            auto run() -> CycleSearch
            {
                CycleSearch result;
                for (std::size_t s = 0; s < g_.order() && ! found_ && ! aborted_; ++s) {
                    root_ = static_cast<Vertex>(s);
                    path_.assign(1, root_);
                    on_path_[s] = true;
                    dfs(root_);
                    on_path_[s] = false;
                }
                result.nodes = nodes_;
                result.completed = ! aborted_;
                result.exhaustive = result.completed && max_len_ >= g_.order();
                if (found_)
                    result.cycle = cycle_;
                return result;
            }

        private:
            /// repeats r is acceptable for a cycle of length len
            auto acceptable(std::size_t repeats, std::size_t len) const -> bool
            {
                if (! eps_)
                    return repeats == 0;
                return BigInt(static_cast<unsigned long>(repeats)) * den_ < num_ * static_cast<unsigned long>(len);
            }

            auto hopeless(std::size_t repeats) const -> bool
            {
                if (! eps_)
                    return repeats > 0;
                return BigInt(static_cast<unsigned long>(repeats)) * den_ >= num_ * static_cast<unsigned long>(max_len_);
            }

            void dfs(Vertex v)
            {
                if (found_ || aborted_)
                    return;
                if (++nodes_ > budget_) {
                    aborted_ = true;
                    return;
                }
                auto nb = g_.neighbours(v);
                const auto & cols = colour_of_[static_cast<std::size_t>(v)];
                for (std::size_t i = 0; i < nb.size() && ! found_ && ! aborted_; ++i) {
                    Vertex w = nb[i];
                    int col = cols[i];
                    std::size_t rep = repeats_ + (counts_[static_cast<std::size_t>(col)] > 0 ? 1 : 0);
                    if (w == root_) {
                        if (path_.size() >= 3 && acceptable(rep, path_.size())) {
                            found_ = true;
                            cycle_ = path_;
                        }
                        continue;
                    }
                    if (w < root_ || on_path_[static_cast<std::size_t>(w)] || path_.size() >= max_len_ || hopeless(rep))
                        continue;
                    ++counts_[static_cast<std::size_t>(col)];
                    std::swap(repeats_, rep);
                    on_path_[static_cast<std::size_t>(w)] = true;
                    path_.push_back(w);
                    dfs(w);
                    path_.pop_back();
                    on_path_[static_cast<std::size_t>(w)] = false;
                    std::swap(repeats_, rep);
                    --counts_[static_cast<std::size_t>(col)];
                }
            }

            const Graph & g_;
            std::size_t max_len_;
            std::size_t budget_;
            std::optional<Rational> eps_;
            BigInt num_, den_;
            std::vector<std::vector<int>> colour_of_;
            std::vector<int> counts_;
            std::vector<bool> on_path_;
            std::vector<Vertex> path_;
            std::vector<Vertex> cycle_;
            Vertex root_ = 0;
            std::size_t repeats_ = 0;
            std::size_t nodes_ = 0;
            bool found_ = false;
            bool aborted_ = false;
        };
    }

    auto is_hom_cycle(const Graph & g, const HomCycle & cycle) -> bool
    {
        if (cycle.size() < 2)
            return false;
        for (Vertex v : cycle)
            if (v < 0 || static_cast<std::size_t>(v) >= g.order())
                return false;
        for (std::size_t i = 0; i < cycle.size(); ++i)
            if (! g.adjacent(cycle[i], cycle[(i + 1) % cycle.size()]))
                return false;
        return true;
    }

    auto cycle_weight(const Graph & g, const HomCycle & cycle) -> Rational
    {
        BigInt prod = 1;
        for (Vertex v : cycle)
            prod *= static_cast<unsigned long>(g.degree(v));
        Rational w(BigInt(1), prod);
        w.canonicalize();
        return w;
    }

    auto h2k_exact(const Graph & g, int k) -> Rational
    {
        require_walk_weights(g);
        require_k(k, max_exact_k);
        if (g.order() > max_exact_order)
            throw CapabilityError("exact evaluation is limited to " + std::to_string(max_exact_order) + " vertices, got " + std::to_string(g.order()));
        Scaling s(g);
        Matrix m = identity_matrix(g.order());
        for (int i = 0; i < k; ++i)
            m = times_p(g, s, m);
        return scaled(trace_of_square(m, g.order()), s.lcm, 2 * k);
    }

    auto normalized_adjacency(const Graph & g) -> std::vector<double>
    {
        require_walk_weights(g);
        const std::size_t n = g.order();
        std::vector<double> a(n * n, 0.0);
        for (auto [u, v] : g.edges()) {
            double w = 1.0 / std::sqrt(static_cast<double>(g.degree(u)) * static_cast<double>(g.degree(v)));
            a[static_cast<std::size_t>(u) * n + static_cast<std::size_t>(v)] = w;
            a[static_cast<std::size_t>(v) * n + static_cast<std::size_t>(u)] = w;
        }
        return a;
    }

    auto h2k_spectral(const Graph & g, int k) -> SpectralValue
    {
        require_walk_weights(g);
        require_k(k, max_exact_k);
        const auto n = static_cast<Eigen::Index>(g.order());
        auto dense = normalized_adjacency(g);
        Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> a(dense.data(), n, n);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("eigenvalue computation did not converge");
        double total = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            total += std::pow(solver.eigenvalues()[i], 2 * k);
        // Each eigenvalue is accurate to about 64 n eps (spectral norm 1); a
        // perturbation e of lambda in [-1, 1] moves lambda^{2k} by at most 2k e.
        double per_eigenvalue = 64.0 * static_cast<double>(n) * DBL_EPSILON;
        return {total, 2.0 * k * static_cast<double>(n) * per_eigenvalue};
    }

    auto pattern_gap(int k, int i, int j) -> int
    {
        if (k < 1 || i < 1 || j <= i || j > 2 * k)
            throw InputError("pattern indices must satisfy 1 <= i < j <= 2k, got i=" + std::to_string(i) + " j=" + std::to_string(j) + " k=" + std::to_string(k));
        return std::min(j - i, 2 * k - (j - i));
    }

    auto h2k_pattern_gaps(const Graph & g, const EdgeColouring & c, int k) -> std::vector<Rational>
    {
        check_pattern_inputs(g, c, k);
        const std::size_t n = g.order();
        Scaling s(g);
        auto pw = powers(g, s, 2 * k - 2);
        auto classes = colour_classes(g, c);

        std::vector<Rational> result;
        BigInt term;
        for (int gap = 1; gap <= k; ++gap) {
            const Matrix & front = pw[static_cast<std::size_t>(gap - 1)];
            const Matrix & back = pw[static_cast<std::size_t>(2 * k - gap - 1)];
            BigInt total = 0;
            // Closed walks x -> y ~~> a -> b ~~> x with c(xy) = c(ab) and the
            // two marked steps `gap` apart.
            for (auto & [col, edges] : classes) {
                (void) col;
                for (auto [x, y] : edges)
                    for (auto [a, b] : edges) {
                        const BigInt & f = front[static_cast<std::size_t>(y) * n + static_cast<std::size_t>(a)];
                        if (sgn(f) == 0)
                            continue;
                        const BigInt & r = back[static_cast<std::size_t>(b) * n + static_cast<std::size_t>(x)];
                        if (sgn(r) == 0)
                            continue;
                        term = f * r;
                        term *= s.q[static_cast<std::size_t>(a)];
                        term *= s.q[static_cast<std::size_t>(x)];
                        total += term;
                    }
            }
            result.push_back(scaled(total, s.lcm, 2 * k));
        }
        return result;
    }

    auto h2k_pattern(const Graph & g, const EdgeColouring & c, int k, int i, int j) -> Rational
    {
        int gap = pattern_gap(k, i, j);
        return h2k_pattern_gaps(g, c, k)[static_cast<std::size_t>(gap - 1)];
    }

    WalkTable::WalkTable(const Graph & g, const EdgeColouring & c, int k, int step) : g_(&g), k_(k), step_(step)
    {
        require_walk_weights(g);
        require_k(k, max_pattern_k);
        if (step < 1 || step > k)
            throw InputError("walk step must lie in 1..k, got " + std::to_string(step));
        const std::size_t n = g.order();
        for (std::size_t u0 = 0; u0 < n; ++u0) {
            // state: vertex -> (colour of the marked step or -1) -> weight
            std::vector<std::map<int, Rational>> cur(n);
            cur[u0][-1] = 1;
            for (int s = 1; s <= k; ++s) {
                std::vector<std::map<int, Rational>> next(n);
                for (std::size_t v = 0; v < n; ++v) {
                    if (cur[v].empty())
                        continue;
                    Rational factor = s == 1 ? Rational(1) : Rational(1, static_cast<unsigned long>(g.degree(static_cast<Vertex>(v))));
                    auto nb = g.neighbours(static_cast<Vertex>(v));
                    for (std::size_t i = 0; i < nb.size(); ++i)
                        for (auto & [col, w] : cur[v]) {
                            int key = s == step ? c.colour_at(static_cast<Vertex>(v), i) : col;
                            next[static_cast<std::size_t>(nb[i])][key] += w * factor;
                        }
                }
                cur = std::move(next);
            }
            for (std::size_t uk = 0; uk < n; ++uk)
                for (auto & [col, w] : cur[uk])
                    entries_[{static_cast<Vertex>(u0), static_cast<Vertex>(uk), col}] = w;
        }
    }

    auto WalkTable::at(Vertex u0, Vertex uk, int colour) const -> Rational
    {
        auto it = entries_.find({u0, uk, colour});
        return it == entries_.end() ? Rational(0) : it->second;
    }

    auto WalkTable::pair_with(const WalkTable & other) const -> Rational
    {
        if (other.g_ != g_ || other.k_ != k_)
            throw InputError("walk tables belong to different hosts or lengths");
        Rational total = 0;
        for (auto & [key, w] : entries_) {
            auto it = other.entries_.find(key);
            if (it == other.entries_.end())
                continue;
            auto [u0, uk, col] = key;
            (void) col;
            BigInt dd = static_cast<unsigned long>(g_->degree(u0) * g_->degree(uk));
            total += w * it->second / Rational(dd);
        }
        return total;
    }

    auto PatternChainReport::pattern(int i, int j) const -> Rational
    {
        return gaps.at(static_cast<std::size_t>(pattern_gap(k, i, j) - 1));
    }

    auto PatternChainReport::unconditional_ok() const -> bool
    {
        return std::all_of(checks.begin(), checks.end(), [](auto & c) { return c.conditional || c.holds; });
    }

    auto PatternChainReport::conditional_ok() const -> bool
    {
        return std::all_of(checks.begin(), checks.end(), [](auto & c) { return ! c.conditional || c.holds; });
    }

    auto check_pattern_chain(const Graph & g, const EdgeColouring & c, int k) -> PatternChainReport
    {
        PatternChainReport r;
        r.k = k;
        r.gaps = h2k_pattern_gaps(g, c, k);
        r.min_degree = g.min_degree();
        r.h2k = h2k_exact(g, k);
        Rational delta(BigInt(static_cast<unsigned long>(r.min_degree)));
        Rational n(BigInt(static_cast<unsigned long>(g.order())));

        add_check(r, "weighted_cycle_count", Rational(1), r.h2k, false);
        Rational max_pattern = *std::max_element(r.gaps.begin(), r.gaps.end());
        add_check(r, "pattern_le_total", max_pattern, r.h2k, false);
        const Rational & top = r.gaps[0]; // h(1, 2k)
        for (int l = 1; l <= k; ++l)
            add_check(r, "cycle_cs[" + std::to_string(l) + "]", r.pattern(l, 2 * k) * r.pattern(l, 2 * k), top * r.pattern(l, 2 * k + 1 - l), false);
        add_check(r, "extremal_pattern", max_pattern, top, false);

        if (k == 1)
            add_check(r, "h2_bound", r.h2k, n / delta, false);
        else {
            r.h2k_prev = h2k_exact(g, k - 1);
            add_check(r, "step_down", top, *r.h2k_prev / delta, false);
            Rational factor = Rational(BigInt(2 * k * k)) / delta;
            add_check(r, "one_step", r.h2k, factor * *r.h2k_prev, true);
        }
        Rational factor = Rational(BigInt(2 * k * k)) / delta;
        add_check(r, "corollary", r.h2k, pow(factor, static_cast<unsigned long>(k)) * n, true);
        return r;
    }

    auto check_variant_chain(const Graph & g, const EdgeColouring & c, int k, const Rational & eps) -> PatternChainReport
    {
        require_eps(eps);
        auto r = check_pattern_chain(g, c, k);
        Rational delta(BigInt(static_cast<unsigned long>(r.min_degree)));
        Rational n(BigInt(static_cast<unsigned long>(g.order())));
        Rational factor = Rational(BigInt(k)) / (eps * delta);
        if (k >= 2)
            add_check(r, "variant_one_step", r.h2k, factor * *r.h2k_prev, true);
        add_check(r, "variant_corollary", r.h2k, pow(factor, static_cast<unsigned long>(k)) * n, true);

        Rational pair_sum = 0;
        for (int gap = 1; gap <= k; ++gap)
            pair_sum += r.gaps[static_cast<std::size_t>(gap - 1)] * (gap < k ? 2 * k : k);
        add_check(r, "variant_counting_step", 2 * eps * k * r.h2k, pair_sum, true);
        return r;
    }

    auto distinct_colours(const Graph & g, const EdgeColouring & c, const std::vector<Vertex> & cycle) -> std::size_t
    {
        std::vector<int> cols;
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            Vertex u = cycle[i], v = cycle[(i + 1) % cycle.size()];
            if (! g.adjacent(u, v))
                throw InputError("cycle uses a non-edge " + std::to_string(u) + "-" + std::to_string(v));
            cols.push_back(c.colour(u, v));
        }
        std::sort(cols.begin(), cols.end());
        return static_cast<std::size_t>(std::unique(cols.begin(), cols.end()) - cols.begin());
    }

    auto is_simple_cycle(const Graph & g, const std::vector<Vertex> & cycle) -> bool
    {
        if (cycle.size() < 3 || ! is_hom_cycle(g, cycle))
            return false;
        auto sorted = cycle;
        std::sort(sorted.begin(), sorted.end());
        return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    }

    auto find_rainbow_cycle(const Graph & g, const EdgeColouring & c, std::size_t max_len, std::size_t budget) -> CycleSearch
    {
        auto result = CycleSearcher(g, c, max_len, budget, std::nullopt).run();
        if (result.cycle && (! is_simple_cycle(g, *result.cycle) || distinct_colours(g, c, *result.cycle) != result.cycle->size()))
            throw std::logic_error("rainbow search returned an invalid cycle");
        return result;
    }

    auto find_almost_rainbow(const Graph & g, const EdgeColouring & c, const Rational & eps, std::size_t max_len, std::size_t budget) -> CycleSearch
    {
        require_eps(eps);
        auto result = CycleSearcher(g, c, max_len, budget, eps).run();
        if (result.cycle) {
            auto len = result.cycle->size();
            bool ok = is_simple_cycle(g, *result.cycle) && Rational(BigInt(static_cast<unsigned long>(distinct_colours(g, c, *result.cycle)))) > (1 - eps) * Rational(BigInt(static_cast<unsigned long>(len)));
            if (! ok)
                throw std::logic_error("almost-rainbow search returned an invalid cycle");
        }
        return result;
    }

    auto decompose_hom_cycle(const HomCycle & cycle) -> std::vector<HomCycle>
    {
        for (std::size_t j = 1; j < cycle.size(); ++j)
            for (std::size_t i = 0; i < j; ++i)
                if (cycle[i] == cycle[j]) {
                    HomCycle inner(cycle.begin() + static_cast<std::ptrdiff_t>(i), cycle.begin() + static_cast<std::ptrdiff_t>(j));
                    HomCycle outer(cycle.begin(), cycle.begin() + static_cast<std::ptrdiff_t>(i) + 1);
                    outer.insert(outer.end(), cycle.begin() + static_cast<std::ptrdiff_t>(j) + 1, cycle.end());
                    auto result = decompose_hom_cycle(inner);
                    auto rest = decompose_hom_cycle(outer);
                    result.insert(result.end(), rest.begin(), rest.end());
                    return result;
                }
        return {cycle};
    }
}

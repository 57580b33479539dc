#pragma once

#include <srti/core.hpp>
#include <srti/knet.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

/* k-stability checking and the complete backtracking search for k-stable
 * matchings, plus a tiny exhaustive oracle used to validate the search. */

namespace srti
{
    struct budget
    {
        std::uint64_t max_nodes = 10'000'000;
        std::int64_t max_millis = 60'000;
    };

    struct solve_stats
    {
        std::uint64_t nodes = 0;
        std::int64_t elapsed_ms = 0;
    };

    enum class outcome { satisfiable, unsatisfiable, timeout };

    struct solve_result
    {
        outcome verdict = outcome::unsatisfiable;
        std::optional<matching> solution;
        solve_stats stats;
    };

    struct enumerate_result
    {
        std::vector<matching> matchings;
        bool complete = false;               /* search space fully exhausted */
        solve_stats stats;
    };

    /* either clean, or the list of pairs that block the matching */
    struct certificate
    {
        std::vector<agent_pair> blocking;

        [[nodiscard]] auto stable() const -> bool { return blocking.empty(); }
    };

    /* check a proposed matching against the k-extended lists.  throws on a
     * malformed matching (not total, not an involution, unknown agents), on a
     * matched pair that is not mutually acceptable at level k, and on a
     * matched pair either side declared unwanted. */
    inline auto verify_k_stable(const instance & inst, int k, const matching & m) -> certificate
    {
        for (auto & [ x, y ] : m.partner) {
            if (! inst.has_agent(x))
                throw std::invalid_argument{ "verify_k_stable: unknown agent '" + x + "'" };
            if (! inst.has_agent(y))
                throw std::invalid_argument{ "verify_k_stable: unknown partner '" + y + "'" };
        }
        for (auto & x : inst.agents)
            if (! m.partner.count(x))
                throw std::invalid_argument{ "verify_k_stable: matching misses agent '" + x + "'" };

        auto kx = k_extend(inst, k);
        for (auto & p : m.pairs()) {
            if (inst.unwanted_of(p.lo).count(p.hi) || inst.unwanted_of(p.hi).count(p.lo))
                throw std::invalid_argument{ "verify_k_stable: forbidden pair {" + p.lo + "," + p.hi + "}" };
            if (! kx.lists.at(p.lo).contains(p.hi) || ! kx.lists.at(p.hi).contains(p.lo))
                throw std::invalid_argument{ "verify_k_stable: invalid k-matching, {" + p.lo + "," + p.hi +
                        "} is not mutually acceptable" };
        }
        return certificate{ blocking_pairs(kx.lists, m) };
    }

    namespace detail
    {
        /* dense-index view of a lists map for the search hot path */
        struct search_space
        {
            std::vector<agent_id> ids;                      /* sorted */
            std::vector<std::vector<int>> rank;             /* -1 = unlisted */
            std::vector<std::vector<int>> mutual;           /* per agent, by (rank, index) */

            explicit search_space(const lists_map & lists)
            {
                for (auto & [ x, _ ] : lists)
                    ids.push_back(x);
                const int n = static_cast<int>(ids.size());
                auto index_of = [&] (const agent_id & x) -> int {
                    auto it = std::lower_bound(ids.begin(), ids.end(), x);
                    return it != ids.end() && *it == x ? static_cast<int>(it - ids.begin()) : -1;
                };

                rank.assign(n, std::vector<int>(n, -1));
                for (int i = 0 ; i < n ; ++i) {
                    const auto & tiers = lists.at(ids[i]).tiers;
                    for (std::size_t t = 0 ; t < tiers.size() ; ++t)
                        for (auto & y : tiers[t]) {
                            int j = index_of(y);
                            if (j >= 0)
                                rank[i][j] = static_cast<int>(t);
                        }
                }

                mutual.assign(n, {});
                for (int i = 0 ; i < n ; ++i) {
                    for (int j = 0 ; j < n ; ++j)
                        if (j != i && rank[i][j] >= 0 && rank[j][i] >= 0)
                            mutual[i].push_back(j);
                    std::sort(mutual[i].begin(), mutual[i].end(), [&] (int a, int b) {
                        if (rank[i][a] != rank[i][b])
                            return rank[i][a] < rank[i][b];
                        return a < b;
                    });
                }
            }
        };

        constexpr int unfixed = -2;
        constexpr int fixed_single = -1;

        struct search_driver
        {
            static constexpr int free_cap = std::numeric_limits<int>::max();

            const search_space & space;
            budget limits;
            std::chrono::steady_clock::time_point started;
            std::vector<int> state;                         /* unfixed / single / partner */
            std::vector<int> cap;                           /* worst partner rank still safe */
            std::vector<std::pair<int, int>> trail;         /* cap changes, for backtracking */
            int remaining;                                  /* how many agents are unfixed */
            std::uint64_t nodes = 0;
            bool out_of_budget = false;
            std::size_t wanted = 1;
            std::vector<matching> found;

            search_driver(const search_space & s, budget b, std::size_t want)
                : space(s), limits(b), started(std::chrono::steady_clock::now()),
                  state(s.ids.size(), unfixed), cap(s.ids.size(), free_cap),
                  remaining(static_cast<int>(s.ids.size())), wanted(want)
            {
            }

            auto elapsed_ms() const -> std::int64_t
            {
                return std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - started).count();
            }

            auto tick() -> bool
            {
                if (++nodes > limits.max_nodes)
                    out_of_budget = true;
                else if ((nodes & 1023) == 0 && elapsed_ms() > limits.max_millis)
                    out_of_budget = true;
                return ! out_of_budget;
            }

            /* fixing an agent u constrains every unfixed y that u strictly
             * gains: y must end up with a partner it likes at least as much
             * as u, and may not stay single, or {u, y} blocks.  caps record
             * the tightest such bound, the trail undoes them on backtrack. */
            auto impose(int y, int worst_rank) -> void
            {
                if (worst_rank < cap[y]) {
                    trail.emplace_back(y, cap[y]);
                    cap[y] = worst_rank;
                }
            }

            auto undo_to(std::size_t mark) -> void
            {
                while (trail.size() > mark) {
                    auto [ y, old ] = trail.back();
                    trail.pop_back();
                    cap[y] = old;
                }
            }

            auto fix_pair(int x, int z) -> void
            {
                state[x] = z;
                state[z] = x;
                remaining -= 2;
                for (int u : space.mutual[x]) {
                    if (space.rank[x][u] >= space.rank[x][z])
                        break;                              /* rank-sorted: nothing better left */
                    if (state[u] == unfixed)
                        impose(u, space.rank[u][x]);
                }
                for (int u : space.mutual[z]) {
                    if (space.rank[z][u] >= space.rank[z][x])
                        break;
                    if (state[u] == unfixed)
                        impose(u, space.rank[u][z]);
                }
            }

            auto fix_single(int x) -> void
            {
                state[x] = fixed_single;
                --remaining;
                for (int u : space.mutual[x])               /* a single gains anyone listed */
                    if (state[u] == unfixed)
                        impose(u, space.rank[u][x]);
            }

            /* x and z may still be matched to each other: both unfixed, and
             * the pair violates neither side's cap */
            [[nodiscard]] auto pairable(int x, int z) const -> bool
            {
                return state[z] == unfixed && space.rank[x][z] <= cap[x] && space.rank[z][x] <= cap[z];
            }

            auto record_leaf() -> bool
            {
                bool any_pair = false;
                for (std::size_t i = 0 ; i < state.size() ; ++i)
                    if (state[i] >= 0)
                        any_pair = true;
                if (! any_pair)
                    return false;                           /* nobody matched: not a solution */
                matching m;
                for (std::size_t i = 0 ; i < state.size() ; ++i)
                    m.partner[space.ids[i]] = state[i] >= 0 ? space.ids[state[i]] : space.ids[i];
                found.push_back(std::move(m));
                return found.size() >= wanted;
            }

            /* returns true when enough solutions are found or budget is gone.
             * branches on the unfixed agent with the fewest remaining options
             * (a capped agent cannot stay single), so forced moves are played
             * immediately and doomed branches fail while they are shallow. */
            auto dfs() -> bool
            {
                if (remaining == 0)
                    return record_leaf();

                int x = -1;
                int best = std::numeric_limits<int>::max();
                for (int w = 0 ; w < static_cast<int>(state.size()) && best > 1 ; ++w) {
                    if (state[w] != unfixed)
                        continue;
                    int options = cap[w] == free_cap ? 1 : 0;
                    for (int z : space.mutual[w])
                        if (pairable(w, z) && ++options >= best)
                            break;
                    if (options == 0)
                        return false;                       /* w cannot be placed: dead branch */
                    if (options < best) {
                        best = options;
                        x = w;
                    }
                }

                for (int z : space.mutual[x]) {
                    if (! pairable(x, z))
                        continue;
                    if (! tick())
                        return true;
                    auto mark = trail.size();
                    fix_pair(x, z);
                    if (dfs())
                        return true;
                    undo_to(mark);
                    state[x] = unfixed;
                    state[z] = unfixed;
                    remaining += 2;
                }

                if (cap[x] == free_cap) {
                    if (! tick())
                        return true;
                    auto mark = trail.size();
                    fix_single(x);
                    if (dfs())
                        return true;
                    undo_to(mark);
                    state[x] = unfixed;
                    ++remaining;
                }
                return false;
            }
        };

        inline auto pairs_less(const matching & a, const matching & b) -> bool
        {
            return a.pairs() < b.pairs();
        }
    }

    /* deterministic complete search over the k-extended lists.  agents are
     * processed most-constrained first; each branches over mutual partners in
     * rank order, then going single; a branch dies as soon as a decided pair
     * blocks it.  a matching that pairs nobody does not count as a solution. */
    inline auto find_k_stable(const instance & inst, int k, const budget & limits = {}) -> solve_result
    {
        auto kx = k_extend(inst, k);
        detail::search_space space{ kx.lists };
        detail::search_driver driver{ space, limits, 1 };
        driver.dfs();

        solve_result result;
        result.stats = { driver.nodes, driver.elapsed_ms() };
        if (! driver.found.empty()) {
            result.verdict = outcome::satisfiable;
            result.solution = driver.found.front();
        }
        else
            result.verdict = driver.out_of_budget ? outcome::timeout : outcome::unsatisfiable;
        return result;
    }

    /* all distinct k-stable matchings up to `limit`, canonically ordered by
     * their sorted pair lists.  `complete` reports whether the search space
     * was exhausted (false when the limit or the budget cut it short). */
    inline auto enumerate_k_stable(const instance & inst, int k, std::size_t limit,
            const budget & limits = {}) -> enumerate_result
    {
        enumerate_result result;
        if (limit == 0) {
            result.complete = false;
            return result;
        }
        auto kx = k_extend(inst, k);
        detail::search_space space{ kx.lists };
        detail::search_driver driver{ space, limits, limit };
        bool stopped = driver.dfs();       /* true: limit reached or budget gone */
        result.matchings = std::move(driver.found);
        std::sort(result.matchings.begin(), result.matchings.end(), detail::pairs_less);
        result.complete = ! stopped;
        result.stats = { driver.nodes, driver.elapsed_ms() };
        return result;
    }

    /* exhaustive reference: enumerate every partition of the agents into
     * mutually-acceptable pairs and singletons, keep the unblocked ones that
     * match at least one pair.  deliberately simple and deliberately slow;
     * guarded to small instances. */
    inline auto brute_force_oracle(const instance & inst, int k) -> std::vector<matching>
    {
        if (inst.agents.size() > 10)
            throw std::invalid_argument{ "brute_force_oracle: instance too large (n > 10)" };

        auto kx = k_extend(inst, k);
        const auto & ids = inst.agents;
        const int n = static_cast<int>(ids.size());

        std::vector<std::vector<bool>> mutual(n, std::vector<bool>(n, false));
        for (auto & p : mutual_pairs(kx.lists)) {
            auto i = std::lower_bound(ids.begin(), ids.end(), p.lo) - ids.begin();
            auto j = std::lower_bound(ids.begin(), ids.end(), p.hi) - ids.begin();
            mutual[i][j] = mutual[j][i] = true;
        }

        std::vector<int> assign(n, -1);
        std::vector<matching> out;

        auto emit = [&] {
            bool any_pair = false;
            for (int i = 0 ; i < n ; ++i)
                if (assign[i] != i)
                    any_pair = true;
            if (! any_pair)
                return;
            matching m;
            for (int i = 0 ; i < n ; ++i)
                m.partner[ids[i]] = ids[assign[i]];
            if (blocking_pairs(kx.lists, m).empty())
                out.push_back(std::move(m));
        };

        auto rec = [&] (auto && self, int from) -> void {
            int i = from;
            while (i < n && assign[i] >= 0)
                ++i;
            if (i == n) {
                emit();
                return;
            }
            assign[i] = i;                      /* single */
            self(self, i + 1);
            assign[i] = -1;
            for (int j = i + 1 ; j < n ; ++j)
                if (assign[j] < 0 && mutual[i][j]) {
                    assign[i] = j;
                    assign[j] = i;
                    self(self, i + 1);
                    assign[i] = assign[j] = -1;
                }
        };
        rec(rec, 0);

        std::sort(out.begin(), out.end(), detail::pairs_less);
        return out;
    }
}

#pragma once

#include <srti/core.hpp>
#include <srti/personalize.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <vector>

/* the acquaintance network: an undirected graph over agents built from who
 * mentions whom, and the machinery that extends preference lists with
 * candidates reachable through it. */

namespace srti
{
    struct accept_graph
    {
        std::vector<agent_id> vertices;              /* sorted */
        std::set<agent_pair> edges;
        std::vector<std::vector<int>> dist;          /* -1 = unreachable; indexed by vertex order */

        [[nodiscard]] auto index_of(const agent_id & x) const -> std::optional<std::size_t>
        {
            auto it = std::lower_bound(vertices.begin(), vertices.end(), x);
            if (it == vertices.end() || *it != x)
                return std::nullopt;
            return static_cast<std::size_t>(it - vertices.begin());
        }

        /* hop distance between two distinct agents, nullopt if disconnected */
        [[nodiscard]] auto distance(const agent_id & x, const agent_id & y) const -> std::optional<int>
        {
            auto ix = index_of(x), iy = index_of(y);
            if (! ix || ! iy)
                throw std::invalid_argument{ "accept_graph: unknown agent" };
            int d = dist[*ix][*iy];
            if (d < 0)
                return std::nullopt;
            return d;
        }
    };

    /* one edge per pair where at least one side states the other as
     * acceptable, unless either side declares the other unwanted.  a
     * one-sided mention suffices: someone who filed no list is still
     * reachable through whoever mentioned them. */
    inline auto build_accept_graph(const instance & inst) -> accept_graph
    {
        accept_graph g;
        g.vertices = inst.agents;

        auto rejected = [&] (const agent_id & x, const agent_id & y) {
            return inst.unwanted_of(x).count(y) || inst.unwanted_of(y).count(x);
        };

        for (auto & x : inst.agents)
            for (auto & t : inst.stated(x).tiers)
                for (auto & y : t)
                    if (inst.has_agent(y) && y != x && ! rejected(x, y))
                        g.edges.insert(agent_pair{ x, y });

        const std::size_t n = g.vertices.size();
        std::vector<std::vector<std::size_t>> adj(n);
        for (auto & e : g.edges) {
            auto i = *g.index_of(e.lo), j = *g.index_of(e.hi);
            adj[i].push_back(j);
            adj[j].push_back(i);
        }

        g.dist.assign(n, std::vector<int>(n, -1));
        for (std::size_t s = 0 ; s < n ; ++s) {
            auto & d = g.dist[s];
            d[s] = 0;
            std::deque<std::size_t> queue{ s };
            while (! queue.empty()) {
                auto u = queue.front();
                queue.pop_front();
                for (auto v : adj[u])
                    if (d[v] < 0) {
                        d[v] = d[u] + 1;
                        queue.push_back(v);
                    }
            }
        }
        return g;
    }

    /* all pairs at hop distance exactly k, canonically sorted */
    inline auto k_connected_pairs(const accept_graph & g, int k) -> std::vector<agent_pair>
    {
        if (k < 1)
            throw std::invalid_argument{ "k_connected_pairs: k must be at least 1" };
        std::vector<agent_pair> out;
        for (std::size_t i = 0 ; i < g.vertices.size() ; ++i)
            for (std::size_t j = i + 1 ; j < g.vertices.size() ; ++j)
                if (g.dist[i][j] == k)
                    out.emplace_back(g.vertices[i], g.vertices[j]);
        std::sort(out.begin(), out.end());
        return out;
    }

    /* split each tier of an inferred list into sub-tiers by ascending hop
     * distance from x; unreachable agents stay last as one sub-tier.  order
     * across tiers is preserved. */
    inline auto break_ties(const agent_id & x, const ranked_list & inferred, const accept_graph & g) -> ranked_list
    {
        ranked_list out;
        for (auto & t : inferred.tiers) {
            std::map<int, tier> by_dist;       /* -1 sorts first; emitted last below */
            for (auto & y : t) {
                auto d = g.distance(x, y);
                by_dist[d ? *d : -1].push_back(y);
            }
            for (auto & [ d, sub ] : by_dist)
                if (d >= 0) {
                    std::sort(sub.begin(), sub.end());
                    out.tiers.push_back(std::move(sub));
                }
            if (auto it = by_dist.find(-1) ; it != by_dist.end()) {
                std::sort(it->second.begin(), it->second.end());
                out.tiers.push_back(std::move(it->second));
            }
        }
        return out;
    }

    namespace detail
    {
        inline auto candidate_tiers_impl(const agent_id & x, const instance & inst,
                const accept_graph & g, int k, const std::set<agent_id> & inferred_entries) -> ranked_list
        {
            ranked_list out;
            if (k < 1)
                return out;
            auto ix = g.index_of(x);
            if (! ix)
                throw std::invalid_argument{ "candidate_tiers: unknown agent '" + x + "'" };
            const auto & stated = inst.stated(x);
            const auto & rejected = inst.unwanted_of(x);
            for (int d = 1 ; d <= k ; ++d) {
                tier t;
                for (std::size_t j = 0 ; j < g.vertices.size() ; ++j) {
                    const auto & y = g.vertices[j];
                    if (g.dist[*ix][j] != d || y == x)
                        continue;
                    if (stated.contains(y) || inferred_entries.count(y) || rejected.count(y))
                        continue;
                    t.push_back(y);
                }
                if (! t.empty())
                    out.tiers.push_back(std::move(t));   /* already lexicographic: vertices sorted */
            }
            return out;
        }
    }

    /* network candidates for x: one tier per hop distance d = 1..k holding
     * the agents exactly d away that x neither lists, infers, nor rejects.
     * empty tiers are skipped. */
    inline auto candidate_tiers(const agent_id & x, const instance & inst,
            const accept_graph & g, int k) -> ranked_list
    {
        auto inferred = infer_list(x, inst);
        std::set<agent_id> inferred_entries;
        for (auto & y : inferred.entries())
            inferred_entries.insert(y);
        return detail::candidate_tiers_impl(x, inst, g, k, inferred_entries);
    }

    enum class origin { stated, inferred, network };

    struct provenance
    {
        origin kind = origin::stated;
        int distance = 0;                    /* meaningful for network entries only */

        auto operator==(const provenance &) const -> bool = default;
    };

    struct k_extended_lists
    {
        int k = 0;
        lists_map lists;
        std::map<agent_id, std::map<agent_id, provenance>> origins;
    };

    /* the full extension: stated tiers, then inferred tiers (ties split by
     * network distance when k >= 1, or always with tie_break_at_zero), then
     * network tiers by distance.  the three segments are disjoint by
     * construction; overlap means a broken instance and throws. */
    inline auto k_extend(const instance & inst, int k, bool tie_break_at_zero = false) -> k_extended_lists
    {
        if (k < 0)
            throw std::invalid_argument{ "k_extend: negative k" };
        auto g = build_accept_graph(inst);
        k_extended_lists out;
        out.k = k;
        for (auto & x : inst.agents) {
            auto inferred = infer_list(x, inst);
            if (k >= 1 || tie_break_at_zero)
                inferred = break_ties(x, inferred, g);
            std::set<agent_id> inferred_entries;
            for (auto & y : inferred.entries())
                inferred_entries.insert(y);
            auto network = detail::candidate_tiers_impl(x, inst, g, k, inferred_entries);

            auto list = extend_list(inst.stated(x), inferred);
            auto & origin_row = out.origins[x];
            for (auto & y : inst.stated(x).entries())
                origin_row[y] = { origin::stated, 0 };
            for (auto & y : inferred_entries)
                origin_row[y] = { origin::inferred, 0 };
            for (auto & t : network.tiers)
                for (auto & y : t) {
                    if (list.contains(y))
                        throw std::invalid_argument{ "k_extend: '" + y + "' appears in two segments for '" + x + "'" };
                    origin_row[y] = { origin::network, *g.distance(x, y) };
                }
            list.tiers.insert(list.tiers.end(), network.tiers.begin(), network.tiers.end());
            out.lists[x] = std::move(list);
        }
        return out;
    }
}

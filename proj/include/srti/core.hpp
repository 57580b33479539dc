#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

/* core value types for roommate instances with tied, incomplete preference
 * lists, plus the stability primitives everything else builds on. */

namespace srti
{
    using agent_id = std::string;
    using tier = std::vector<agent_id>;

    /* a preference list as a sequence of tiers, best first; agents inside a
     * tier are mutually tied and kept in lexicographic order. */
    struct ranked_list
    {
        std::vector<tier> tiers;

        [[nodiscard]] auto empty() const -> bool { return tiers.empty(); }

        [[nodiscard]] auto contains(const agent_id & y) const -> bool
        {
            for (auto & t : tiers)
                if (std::find(t.begin(), t.end(), y) != t.end())
                    return true;
            return false;
        }

        /* 0-based tier index of y, or nullopt if unlisted */
        [[nodiscard]] auto rank_of(const agent_id & y) const -> std::optional<std::size_t>
        {
            for (std::size_t i = 0 ; i < tiers.size() ; ++i)
                if (std::find(tiers[i].begin(), tiers[i].end(), y) != tiers[i].end())
                    return i;
            return std::nullopt;
        }

        [[nodiscard]] auto entries() const -> std::vector<agent_id>
        {
            std::vector<agent_id> out;
            for (auto & t : tiers)
                out.insert(out.end(), t.begin(), t.end());
            return out;
        }

        [[nodiscard]] auto entry_count() const -> std::size_t
        {
            std::size_t n = 0;
            for (auto & t : tiers)
                n += t.size();
            return n;
        }

        auto operator==(const ranked_list &) const -> bool = default;
    };

    using lists_map = std::map<agent_id, ranked_list>;

    /* unordered pair of distinct agents, canonicalised lexicographically */
    struct agent_pair
    {
        agent_id lo, hi;

        agent_pair() = default;

        agent_pair(agent_id a, agent_id b)
        {
            if (a == b)
                throw std::invalid_argument{ "agent_pair: identical endpoints '" + a + "'" };
            if (b < a)
                std::swap(a, b);
            lo = std::move(a);
            hi = std::move(b);
        }

        auto operator<=>(const agent_pair &) const = default;
    };

    struct criterion
    {
        std::string name;
        std::vector<std::string> choices;   /* ordered, but only equality of indices matters */

        auto operator==(const criterion &) const -> bool = default;
    };

    /* an instance: agents, stated tiered lists, unwanted sets, and an
     * optional habit catalog with per-agent profiles and weights.  profile
     * entries are 1-based choice indices into the catalog's choice lists. */
    struct instance
    {
        std::vector<agent_id> agents;                        /* sorted, unique */
        lists_map preferences;                               /* one entry per agent */
        std::map<agent_id, std::set<agent_id>> unwanted;     /* sparse */
        std::vector<criterion> criteria;
        std::map<agent_id, std::vector<int>> profiles;       /* sparse: respondents only */
        std::map<agent_id, std::vector<int>> weights;        /* same keys as profiles */

        [[nodiscard]] auto has_agent(const agent_id & x) const -> bool
        {
            return std::binary_search(agents.begin(), agents.end(), x);
        }

        [[nodiscard]] auto stated(const agent_id & x) const -> const ranked_list &
        {
            static const ranked_list none;
            auto it = preferences.find(x);
            return it == preferences.end() ? none : it->second;
        }

        [[nodiscard]] auto unwanted_of(const agent_id & x) const -> const std::set<agent_id> &
        {
            static const std::set<agent_id> none;
            auto it = unwanted.find(x);
            return it == unwanted.end() ? none : it->second;
        }

        auto operator==(const instance &) const -> bool = default;
    };

    /* a matching as a total involution; partner(x) == x means single */
    struct matching
    {
        std::map<agent_id, agent_id> partner;

        [[nodiscard]] auto is_single(const agent_id & x) const -> bool
        {
            auto it = partner.find(x);
            return it == partner.end() || it->second == x;
        }

        [[nodiscard]] auto partner_of(const agent_id & x) const -> const agent_id &
        {
            auto it = partner.find(x);
            if (it == partner.end())
                throw std::invalid_argument{ "matching: unknown agent '" + x + "'" };
            return it->second;
        }

        /* matched pairs, canonically sorted */
        [[nodiscard]] auto pairs() const -> std::vector<agent_pair>
        {
            std::vector<agent_pair> out;
            for (auto & [ x, y ] : partner)
                if (x < y)
                    out.emplace_back(x, y);
            return out;
        }

        [[nodiscard]] auto singles() const -> std::vector<agent_id>
        {
            std::vector<agent_id> out;
            for (auto & [ x, y ] : partner)
                if (x == y)
                    out.push_back(x);
            return out;
        }

        auto operator<=>(const matching &) const = default;
    };

    struct violation
    {
        std::string kind;      /* stable machine-readable tag */
        std::string detail;    /* human-readable context */

        auto operator==(const violation &) const -> bool = default;
    };

    using validation_report = std::vector<violation>;

    /* structural validation: identifier sanity, tier shape, cross-references,
     * list/unwanted disjointness, and profile/catalog arity agreement. */
    inline auto validate_instance(const instance & inst) -> validation_report
    {
        validation_report report;
        auto bad = [&] (std::string kind, std::string detail) {
            report.push_back({ std::move(kind), std::move(detail) });
        };

        for (std::size_t i = 0 ; i < inst.agents.size() ; ++i) {
            if (inst.agents[i].empty())
                bad("empty_id", "agent with empty identifier");
            if (i > 0 && inst.agents[i] == inst.agents[i - 1])
                bad("duplicate_agent", "agent '" + inst.agents[i] + "' appears twice");
        }
        if (! std::is_sorted(inst.agents.begin(), inst.agents.end()))
            bad("unsorted_agents", "agent roster is not sorted");

        for (auto & [ x, list ] : inst.preferences) {
            if (! inst.has_agent(x)) {
                bad("unknown_agent", "preference list for unknown agent '" + x + "'");
                continue;
            }
            std::set<agent_id> seen;
            for (auto & t : list.tiers) {
                if (t.empty())
                    bad("empty_tier", "empty tier in list of '" + x + "'");
                for (auto & y : t) {
                    if (y == x)
                        bad("self_listed", "'" + x + "' lists itself");
                    else if (! inst.has_agent(y))
                        bad("unknown_agent", "unknown agent '" + y + "' in list of '" + x + "'");
                    if (! seen.insert(y).second)
                        bad("duplicate_entry", "'" + y + "' appears twice in list of '" + x + "'");
                }
            }
        }

        for (auto & [ x, rejected ] : inst.unwanted) {
            if (! inst.has_agent(x)) {
                bad("unknown_agent", "unwanted set for unknown agent '" + x + "'");
                continue;
            }
            for (auto & y : rejected) {
                if (y == x)
                    bad("self_unwanted", "'" + x + "' declares itself unwanted");
                else if (! inst.has_agent(y))
                    bad("unknown_agent", "unknown agent '" + y + "' in unwanted set of '" + x + "'");
                else if (inst.stated(x).contains(y))
                    bad("listed_and_unwanted", "'" + x + "' both lists and rejects '" + y + "'");
            }
        }

        for (auto & [ x, prof ] : inst.profiles) {
            if (! inst.has_agent(x)) {
                bad("unknown_agent", "profile for unknown agent '" + x + "'");
                continue;
            }
            if (inst.criteria.empty()) {
                bad("profile_without_catalog", "profile for '" + x + "' but no criteria catalog");
                continue;
            }
            if (prof.size() != inst.criteria.size())
                bad("profile_arity", "profile of '" + x + "' has " + std::to_string(prof.size()) +
                        " entries for " + std::to_string(inst.criteria.size()) + " criteria");
            else
                for (std::size_t i = 0 ; i < prof.size() ; ++i)
                    if (prof[i] < 1 || static_cast<std::size_t>(prof[i]) > inst.criteria[i].choices.size())
                        bad("choice_out_of_range", "profile of '" + x + "' picks choice " +
                                std::to_string(prof[i]) + " on criterion '" + inst.criteria[i].name + "'");
            if (! inst.weights.count(x))
                bad("profile_without_weights", "profile of '" + x + "' has no weight vector");
        }

        for (auto & [ x, w ] : inst.weights) {
            if (! inst.has_agent(x)) {
                bad("unknown_agent", "weights for unknown agent '" + x + "'");
                continue;
            }
            if (! inst.profiles.count(x))
                bad("weights_without_profile", "weight vector of '" + x + "' has no profile");
            if (w.size() != inst.criteria.size())
                bad("weight_arity", "weights of '" + x + "' have " + std::to_string(w.size()) +
                        " entries for " + std::to_string(inst.criteria.size()) + " criteria");
            for (auto v : w)
                if (v < 0)
                    bad("negative_weight", "negative weight for '" + x + "'");
        }

        for (auto & c : inst.criteria)
            if (c.choices.empty())
                bad("empty_choice_domain", "criterion '" + c.name + "' has no choices");

        return report;
    }

    /* union of the stated tiers of x */
    inline auto acceptable_set(const instance & inst, const agent_id & x) -> std::set<agent_id>
    {
        if (! inst.has_agent(x))
            throw std::invalid_argument{ "acceptable_set: unknown agent '" + x + "'" };
        std::set<agent_id> out;
        for (auto & t : inst.stated(x).tiers)
            out.insert(t.begin(), t.end());
        return out;
    }

    /* all unordered pairs {x,y} where each lists the other, canonically sorted */
    inline auto mutual_pairs(const lists_map & lists) -> std::vector<agent_pair>
    {
        std::vector<agent_pair> out;
        for (auto & [ x, list ] : lists)
            for (auto & t : list.tiers)
                for (auto & y : t)
                    if (x < y) {
                        auto it = lists.find(y);
                        if (it != lists.end() && it->second.contains(x))
                            out.emplace_back(x, y);
                    }
        std::sort(out.begin(), out.end());
        return out;
    }

    namespace detail
    {
        /* does x strictly prefer y to its current assignment?  a single agent
         * strictly prefers any listed agent; tied ranks never count. */
        inline auto strictly_prefers(const ranked_list & list_of_x, const agent_id & y,
                const agent_id & x, const matching & m) -> bool
        {
            auto rank_y = list_of_x.rank_of(y);
            if (! rank_y)
                return false;
            if (m.is_single(x))
                return true;
            auto rank_cur = list_of_x.rank_of(m.partner_of(x));
            if (! rank_cur)
                throw std::invalid_argument{ "matching pairs '" + x + "' outside its list" };
            return *rank_y < *rank_cur;
        }
    }

    /* all pairs blocking m under the given lists: mutually acceptable pairs
     * where both sides strictly gain.  m must be a total involution over the
     * list owners whose matched pairs are mutual. */
    inline auto blocking_pairs(const lists_map & lists, const matching & m) -> std::vector<agent_pair>
    {
        for (auto & [ x, y ] : m.partner) {
            if (x != y) {
                auto it = m.partner.find(y);
                if (it == m.partner.end() || it->second != x)
                    throw std::invalid_argument{ "matching is not an involution at '" + x + "'" };
            }
        }
        for (auto & [ x, _ ] : lists)
            if (! m.partner.count(x))
                throw std::invalid_argument{ "matching misses agent '" + x + "'" };

        std::vector<agent_pair> out;
        for (auto & p : mutual_pairs(lists)) {
            const auto & lx = lists.at(p.lo);
            const auto & ly = lists.at(p.hi);
            if (! m.is_single(p.lo) && m.partner_of(p.lo) == p.hi)
                continue;
            if (detail::strictly_prefers(lx, p.hi, p.lo, m) &&
                    detail::strictly_prefers(ly, p.lo, p.hi, m))
                out.push_back(p);
        }
        return out;
    }

    inline auto is_stable(const lists_map & lists, const matching & m) -> bool
    {
        return blocking_pairs(lists, m).empty();
    }
}

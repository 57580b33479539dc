#pragma once

#include <srti/core.hpp>

#include <algorithm>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

/* habit-profile personalization: rank unlisted agents by how well their
 * questionnaire answers match the owner's, weighted by how much the owner
 * cares about each criterion. */

namespace srti
{
    /* one level of an agent's sorted profile: every (choice, criterion)
     * answer the agent gave whose criterion it weighted exactly `weight`. */
    struct profile_level
    {
        int weight = 0;
        std::vector<std::pair<int, std::size_t>> entries;   /* (choice index, criterion index) */

        auto operator==(const profile_level &) const -> bool = default;
    };

    /* levels in strictly decreasing weight order; zero-weight criteria absent */
    struct sorted_profile_t
    {
        std::vector<profile_level> levels;

        auto operator==(const sorted_profile_t &) const -> bool = default;
    };

    inline auto sorted_profile(const agent_id & x, const instance & inst) -> sorted_profile_t
    {
        auto pit = inst.profiles.find(x);
        if (pit == inst.profiles.end())
            throw std::invalid_argument{ "sorted_profile: '" + x + "' has no profile" };
        auto wit = inst.weights.find(x);
        if (wit == inst.weights.end())
            throw std::invalid_argument{ "sorted_profile: '" + x + "' has no weights" };
        const auto & prof = pit->second;
        const auto & w = wit->second;
        if (prof.size() != inst.criteria.size() || w.size() != inst.criteria.size())
            throw std::invalid_argument{ "sorted_profile: arity mismatch for '" + x + "'" };

        std::map<int, profile_level, std::greater<>> by_weight;
        for (std::size_t i = 0 ; i < prof.size() ; ++i)
            if (w[i] > 0) {
                auto & level = by_weight[w[i]];
                level.weight = w[i];
                level.entries.emplace_back(prof[i], i);
            }

        sorted_profile_t out;
        for (auto & [ _, level ] : by_weight)
            out.levels.push_back(std::move(level));
        return out;
    }

    /* y qualifies as an inferred candidate for x: distinct, not already
     * listed, not rejected, and sharing at least one answer on a criterion x
     * gave positive weight.  agents without questionnaire data never qualify. */
    inline auto choice_acceptable(const agent_id & x, const agent_id & y, const instance & inst) -> bool
    {
        if (x == y)
            return false;
        auto fx = inst.profiles.find(x);
        auto fy = inst.profiles.find(y);
        auto wx = inst.weights.find(x);
        if (fx == inst.profiles.end() || fy == inst.profiles.end() || wx == inst.weights.end())
            return false;
        if (inst.stated(x).contains(y) || inst.unwanted_of(x).count(y))
            return false;
        if (fx->second.size() != inst.criteria.size() || fy->second.size() != inst.criteria.size() ||
                wx->second.size() != inst.criteria.size())
            return false;
        for (std::size_t i = 0 ; i < inst.criteria.size() ; ++i)
            if (wx->second[i] > 0 && fx->second[i] == fy->second[i])
                return true;
        return false;
    }

    namespace detail
    {
        /* candidates compare level by level: walk the owner's sorted profile
         * until a level where not both candidates match every answer, and
         * order there by how many answers each matches.  two candidates that
         * both fully match a level stay comparable on the next one; once the
         * full-match chain breaks, deeper levels never discriminate.  this
         * collapses to a two-part key: (number of leading fully matched
         * levels, match count on the following level), compared descending. */
        struct inference_key
        {
            std::size_t full_levels = 0;
            std::size_t next_count = 0;
            bool all_full = false;

            auto better_than(const inference_key & other) const -> bool
            {
                if (full_levels != other.full_levels)
                    return full_levels > other.full_levels;
                if (all_full != other.all_full)
                    return all_full;
                return next_count > other.next_count;
            }

            auto tied_with(const inference_key & other) const -> bool
            {
                return ! better_than(other) && ! other.better_than(*this);
            }
        };

        inline auto inference_key_for(const sorted_profile_t & sp,
                const std::vector<int> & candidate_profile) -> inference_key
        {
            inference_key key;
            for (auto & level : sp.levels) {
                std::size_t count = 0;
                for (auto & [ choice, crit ] : level.entries)
                    if (candidate_profile[crit] == choice)
                        ++count;
                if (count == level.entries.size())
                    ++key.full_levels;
                else {
                    key.next_count = count;
                    return key;
                }
            }
            key.all_full = true;
            return key;
        }
    }

    /* the inferred list of x: all choice-acceptable agents, tiered by match
     * quality against x's sorted profile, ties lexicographic inside a tier.
     * agents without questionnaire data infer nothing. */
    inline auto infer_list(const agent_id & x, const instance & inst) -> ranked_list
    {
        if (! inst.has_agent(x))
            throw std::invalid_argument{ "infer_list: unknown agent '" + x + "'" };
        if (! inst.profiles.count(x) || ! inst.weights.count(x))
            return {};

        auto sp = sorted_profile(x, inst);
        std::vector<std::pair<detail::inference_key, agent_id>> scored;
        for (auto & y : inst.agents)
            if (choice_acceptable(x, y, inst))
                scored.emplace_back(detail::inference_key_for(sp, inst.profiles.at(y)), y);

        std::stable_sort(scored.begin(), scored.end(), [] (const auto & a, const auto & b) {
            if (a.first.better_than(b.first))
                return true;
            if (b.first.better_than(a.first))
                return false;
            return a.second < b.second;
        });

        ranked_list out;
        for (std::size_t i = 0 ; i < scored.size() ; ) {
            tier t;
            std::size_t j = i;
            while (j < scored.size() && scored[j].first.tied_with(scored[i].first))
                t.push_back(scored[j++].second);
            out.tiers.push_back(std::move(t));
            i = j;
        }
        return out;
    }

    /* stated list first, inferred list appended below it; the two must not
     * share entries. */
    inline auto extend_list(const ranked_list & stated, const ranked_list & inferred) -> ranked_list
    {
        for (auto & t : inferred.tiers)
            for (auto & y : t)
                if (stated.contains(y))
                    throw std::invalid_argument{ "extend_list: '" + y + "' in both stated and inferred lists" };
        ranked_list out = stated;
        out.tiers.insert(out.tiers.end(), inferred.tiers.begin(), inferred.tiers.end());
        return out;
    }
}

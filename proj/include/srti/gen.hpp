#pragma once

#include <srti/core.hpp>

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

/* random instance generation and the population metrics used to classify
 * benchmark families.  everything here is deterministic per seed: the draw
 * order is part of the contract and documented on each operation. */

namespace srti
{
    /* deterministic stream: mt19937_64 with portable derived draws (the
     * standard distributions are implementation-defined, so we avoid them) */
    struct rng_stream
    {
        std::mt19937_64 eng;

        explicit rng_stream(std::uint64_t seed) : eng(seed) {}

        /* uniform double in [0,1), 53 bits */
        auto uniform01() -> double { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }

        /* unbiased integer in [0,n) by rejection */
        auto below(std::uint64_t n) -> std::uint64_t
        {
            if (n == 0)
                throw std::invalid_argument{ "rng_stream::below(0)" };
            const std::uint64_t threshold = (0 - n) % n;
            for (;;) {
                std::uint64_t r = eng();
                if (r >= threshold)
                    return r % n;
            }
        }

        template <typename T>
        auto shuffle(std::vector<T> & v) -> void
        {
            for (std::size_t i = v.size() ; i > 1 ; --i)
                std::swap(v[i - 1], v[below(i)]);
        }
    };

    /* batch convention: instance i of a batch uses seed ^ i */
    inline auto derive_seed(std::uint64_t base, std::uint64_t i) -> std::uint64_t
    {
        return base ^ i;
    }

    struct gen_spec
    {
        int n = 0;
        double p = 0.0;                      /* acceptability probability per unordered pair */
        std::uint64_t seed = 0;
        std::optional<std::size_t> truncate; /* keep only the first L choices */
        int criteria_count = 0;              /* 0 = no questionnaire */
        double response_rate = 0.0;
        std::uint64_t profile_seed = 0;
        int choices_per_criterion = 3;
        double unwanted_prob = 0.0;          /* stress option: random rejections */
    };

    namespace detail
    {
        inline auto agent_name(int index, int n) -> agent_id
        {
            int width = 1;
            for (int v = n ; v >= 10 ; v /= 10)
                ++width;
            auto digits = std::to_string(index);
            return "a" + std::string(width - digits.size(), '0') + digits;
        }
    }

    /* keep only the first L entries of every list.  defined for strict lists
     * only (a tier with a tie cannot be cut meaningfully). */
    inline auto truncate_lists(instance inst, std::size_t limit) -> instance
    {
        for (auto & [ x, list ] : inst.preferences) {
            for (auto & t : list.tiers)
                if (t.size() > 1)
                    throw std::invalid_argument{ "truncate_lists: list of '" + x + "' has ties" };
            if (list.tiers.size() > limit)
                list.tiers.resize(limit);
        }
        return inst;
    }

    /* attach a questionnaire: criteria crit1..critN, each with the same
     * number of choices, answered by a uniformly chosen floor(rate*n)-subset
     * of agents.  draws from profile_seed, in order: (1) one shuffle of the
     * sorted roster to pick respondents, then (2) per respondent in
     * lexicographic order, one choice per criterion (uniform over the
     * domain), then one weight per criterion (uniform over 0..criteria
     * count).  the instance must not already carry a questionnaire. */
    inline auto populate_profiles(instance inst, int criteria_count, double response_rate,
            std::uint64_t profile_seed, int choices_per_criterion = 3) -> instance
    {
        if (! inst.criteria.empty() || ! inst.profiles.empty())
            throw std::invalid_argument{ "populate_profiles: instance already has a questionnaire" };
        if (criteria_count < 0 || response_rate < 0.0 || response_rate > 1.0 || choices_per_criterion < 1)
            throw std::invalid_argument{ "populate_profiles: bad parameters" };
        if (criteria_count == 0)
            return inst;

        for (int i = 1 ; i <= criteria_count ; ++i) {
            criterion c;
            c.name = "crit" + std::to_string(i);
            for (int j = 1 ; j <= choices_per_criterion ; ++j)
                c.choices.push_back("opt" + std::to_string(j));
            inst.criteria.push_back(std::move(c));
        }

        rng_stream rng{ profile_seed };
        auto respondents = inst.agents;
        rng.shuffle(respondents);
        auto count = static_cast<std::size_t>(response_rate * static_cast<double>(inst.agents.size()));
        respondents.resize(std::min(count, respondents.size()));
        std::sort(respondents.begin(), respondents.end());

        for (auto & x : respondents) {
            std::vector<int> prof, w;
            for (int i = 0 ; i < criteria_count ; ++i)
                prof.push_back(1 + static_cast<int>(rng.below(choices_per_criterion)));
            for (int i = 0 ; i < criteria_count ; ++i)
                w.push_back(static_cast<int>(rng.below(criteria_count + 1)));
            inst.profiles[x] = std::move(prof);
            inst.weights[x] = std::move(w);
        }
        return inst;
    }

    /* random instance: symmetric acceptability with one uniform draw per
     * unordered pair in lexicographic order, then each agent's list as an
     * independent uniform permutation of its neighbours (strict singleton
     * tiers), shuffled per agent in lexicographic order from the same
     * stream.  then, in order: truncation, random rejections (one draw per
     * unordered pair in lexicographic order, plus a side draw on a hit; the
     * declarer drops any stated entry of the rejected agent), questionnaire
     * population from the separate profile seed. */
    inline auto gen_er_sri(const gen_spec & spec) -> instance
    {
        if (spec.n < 2)
            throw std::invalid_argument{ "gen_er_sri: need at least two agents" };
        if (spec.p < 0.0 || spec.p > 1.0 || spec.unwanted_prob < 0.0 || spec.unwanted_prob > 1.0)
            throw std::invalid_argument{ "gen_er_sri: probability out of range" };

        instance inst;
        for (int i = 1 ; i <= spec.n ; ++i)
            inst.agents.push_back(detail::agent_name(i, spec.n));

        rng_stream rng{ spec.seed };
        std::vector<std::vector<agent_id>> neighbours(spec.n);
        for (int i = 0 ; i < spec.n ; ++i)
            for (int j = i + 1 ; j < spec.n ; ++j)
                if (rng.uniform01() < spec.p) {
                    neighbours[i].push_back(inst.agents[j]);
                    neighbours[j].push_back(inst.agents[i]);
                }

        for (int i = 0 ; i < spec.n ; ++i) {
            auto perm = neighbours[i];           /* gathered in lexicographic order */
            rng.shuffle(perm);
            ranked_list list;
            for (auto & y : perm)
                list.tiers.push_back(tier{ y });
            inst.preferences[inst.agents[i]] = std::move(list);
        }

        if (spec.truncate)
            inst = truncate_lists(std::move(inst), *spec.truncate);

        if (spec.unwanted_prob > 0.0)
            for (int i = 0 ; i < spec.n ; ++i)
                for (int j = i + 1 ; j < spec.n ; ++j)
                    if (rng.uniform01() < spec.unwanted_prob) {
                        bool lo_declares = rng.below(2) == 0;
                        const auto & declarer = inst.agents[lo_declares ? i : j];
                        const auto & target = inst.agents[lo_declares ? j : i];
                        auto & list = inst.preferences[declarer];
                        for (auto & t : list.tiers)
                            std::erase(t, target);
                        std::erase_if(list.tiers, [] (const tier & t) { return t.empty(); });
                        inst.unwanted[declarer].insert(target);
                    }

        if (spec.criteria_count > 0)
            inst = populate_profiles(std::move(inst), spec.criteria_count, spec.response_rate,
                    spec.profile_seed, spec.choices_per_criterion);
        return inst;
    }

    /* stated entries over the n(n-1) possible directed entries */
    inline auto completeness_degree(const instance & inst) -> double
    {
        const auto n = inst.agents.size();
        if (n < 2)
            throw std::invalid_argument{ "completeness_degree: need at least two agents" };
        std::size_t entries = 0;
        for (auto & [ _, list ] : inst.preferences)
            entries += list.entry_count();
        return static_cast<double>(entries) / (static_cast<double>(n) * static_cast<double>(n - 1));
    }

    /* same ratio over an arbitrary lists map (used to measure extended lists) */
    inline auto list_completeness(const lists_map & lists, std::size_t n) -> double
    {
        if (n < 2)
            throw std::invalid_argument{ "list_completeness: need at least two agents" };
        std::size_t entries = 0;
        for (auto & [ _, list ] : lists)
            entries += list.entry_count();
        return static_cast<double>(entries) / (static_cast<double>(n) * static_cast<double>(n - 1));
    }

    /* fraction of directed list entries that are reciprocated.  lists with no
     * entries at all have no defined rate. */
    inline auto mutual_acceptability_rate(const lists_map & lists) -> double
    {
        std::size_t total = 0, reciprocated = 0;
        for (auto & [ x, list ] : lists)
            for (auto & t : list.tiers)
                for (auto & y : t) {
                    ++total;
                    auto it = lists.find(y);
                    if (it != lists.end() && it->second.contains(x))
                        ++reciprocated;
                }
        if (total == 0)
            throw std::invalid_argument{ "mutual_acceptability_rate: no entries" };
        return static_cast<double>(reciprocated) / static_cast<double>(total);
    }

    enum class ma_class { hma, lma };

    inline auto classify(double rate) -> ma_class
    {
        return rate >= 0.75 ? ma_class::hma : ma_class::lma;
    }

    inline auto to_string(ma_class c) -> std::string
    {
        return c == ma_class::hma ? "HMA" : "LMA";
    }

    /* benchmark presets: highly mutual instances use a size-specific sparse
     * acceptability probability; weakly mutual ones use dense 0.25.  both cut
     * lists to the first five choices. */
    inline auto hma_preset(int n, std::uint64_t seed) -> gen_spec
    {
        double p = 0.0;
        switch (n) {
            case 40: p = 0.075; break;
            case 60: p = 0.05; break;
            case 80: p = 0.0375; break;
            case 100: p = 0.03; break;
            case 150: p = 0.02; break;
            case 200: p = 0.015; break;
            default:
                throw std::invalid_argument{ "hma_preset: no preset for n=" + std::to_string(n) };
        }
        gen_spec spec;
        spec.n = n;
        spec.p = p;
        spec.seed = seed;
        spec.profile_seed = seed;
        spec.truncate = 5;
        return spec;
    }

    inline auto lma_preset(int n, std::uint64_t seed) -> gen_spec
    {
        if (n < 2)
            throw std::invalid_argument{ "lma_preset: need at least two agents" };
        gen_spec spec;
        spec.n = n;
        spec.p = 0.25;
        spec.seed = seed;
        spec.profile_seed = seed;
        spec.truncate = 5;
        return spec;
    }
}

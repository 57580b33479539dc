#pragma once

#include <srti/srti.hpp>

#include <initializer_list>
#include <string>
#include <vector>

namespace test
{
    inline auto fixture(const std::string & name) -> srti::instance
    {
        return srti::parse_instance(srti::read_file(std::string{ SRTI_FIXTURES } + "/" + name));
    }

    inline auto rl(std::initializer_list<srti::tier> tiers) -> srti::ranked_list
    {
        srti::ranked_list out;
        for (auto & t : tiers)
            out.tiers.push_back(t);
        return out;
    }

    /* build a matching from explicit pairs; everyone else in `agents` is single */
    inline auto match(const std::vector<srti::agent_id> & agents,
            std::initializer_list<std::pair<srti::agent_id, srti::agent_id>> pairs) -> srti::matching
    {
        srti::matching m;
        for (auto & x : agents)
            m.partner[x] = x;
        for (auto & [ x, y ] : pairs) {
            m.partner[x] = y;
            m.partner[y] = x;
        }
        return m;
    }
}

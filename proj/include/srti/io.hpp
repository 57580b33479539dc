#pragma once

#include <srti/core.hpp>
#include <srti/knet.hpp>

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

/* file formats: instances as JSON (strict about keys and types, lossless
 * round-trip), matchings as sorted two-column TSV. */

namespace srti
{
    struct io_error : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    namespace detail
    {
        inline auto check_id(const std::string & id, const char * where) -> void
        {
            if (id.empty())
                throw io_error{ std::string{ where } + ": empty identifier" };
            if (id.find('\t') != std::string::npos || id.find('\n') != std::string::npos)
                throw io_error{ std::string{ where } + ": identifier '" + id + "' contains tab or newline" };
        }

        inline auto as_string_array(const nlohmann::json & j, const char * where) -> std::vector<std::string>
        {
            if (! j.is_array())
                throw io_error{ std::string{ where } + ": expected an array" };
            std::vector<std::string> out;
            for (auto & v : j) {
                if (! v.is_string())
                    throw io_error{ std::string{ where } + ": expected strings" };
                out.push_back(v.get<std::string>());
            }
            return out;
        }

        inline auto as_int_array(const nlohmann::json & j, const char * where) -> std::vector<int>
        {
            if (! j.is_array())
                throw io_error{ std::string{ where } + ": expected an array" };
            std::vector<int> out;
            for (auto & v : j) {
                if (! v.is_number_integer())
                    throw io_error{ std::string{ where } + ": expected integers" };
                out.push_back(v.get<int>());
            }
            return out;
        }
    }

    /* parse an instance from JSON text.  known keys: agents, preferences,
     * unwanted, criteria, profiles, weights, and the optional provenance
     * block written by the extend command (type-checked, not retained).
     * anything else is rejected.  structural violations (dangling ids,
     * listed-and-unwanted overlaps, arity mismatches, ...) are errors too. */
    inline auto parse_instance(const std::string & text) -> instance
    {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        }
        catch (const nlohmann::json::parse_error & e) {
            throw io_error{ std::string{ "instance file: " } + e.what() };
        }
        if (! j.is_object())
            throw io_error{ "instance file: top level must be an object" };

        for (auto & [ key, _ ] : j.items())
            if (key != "agents" && key != "preferences" && key != "unwanted" && key != "criteria" &&
                    key != "profiles" && key != "weights" && key != "provenance")
                throw io_error{ "instance file: unknown key '" + key + "'" };
        if (! j.contains("agents") || ! j.contains("preferences"))
            throw io_error{ "instance file: 'agents' and 'preferences' are required" };

        instance inst;
        inst.agents = detail::as_string_array(j["agents"], "agents");
        for (auto & id : inst.agents)
            detail::check_id(id, "agents");
        std::sort(inst.agents.begin(), inst.agents.end());
        for (std::size_t i = 1 ; i < inst.agents.size() ; ++i)
            if (inst.agents[i] == inst.agents[i - 1])
                throw io_error{ "instance file: duplicate agent '" + inst.agents[i] + "'" };

        if (! j["preferences"].is_object())
            throw io_error{ "preferences: expected an object" };
        for (auto & [ x, tiers_json ] : j["preferences"].items()) {
            detail::check_id(x, "preferences");
            if (! tiers_json.is_array())
                throw io_error{ "preferences of '" + x + "': expected an array of tiers" };
            ranked_list list;
            for (auto & t : tiers_json) {
                auto entries = detail::as_string_array(t, "preference tier");
                for (auto & y : entries)
                    detail::check_id(y, "preference tier");
                std::sort(entries.begin(), entries.end());
                list.tiers.push_back(std::move(entries));
            }
            inst.preferences[x] = std::move(list);
        }
        for (auto & x : inst.agents)
            if (! inst.preferences.count(x))
                inst.preferences[x] = {};

        if (j.contains("unwanted")) {
            if (! j["unwanted"].is_object())
                throw io_error{ "unwanted: expected an object" };
            for (auto & [ x, arr ] : j["unwanted"].items()) {
                auto entries = detail::as_string_array(arr, "unwanted");
                if (! entries.empty())
                    inst.unwanted[x] = std::set<agent_id>(entries.begin(), entries.end());
            }
        }

        if (j.contains("criteria")) {
            if (! j["criteria"].is_array())
                throw io_error{ "criteria: expected an array" };
            for (auto & c : j["criteria"]) {
                if (! c.is_object() || ! c.contains("name") || ! c.contains("choices") ||
                        ! c["name"].is_string())
                    throw io_error{ "criteria: each entry needs a name and a choice list" };
                for (auto & [ key, _ ] : c.items())
                    if (key != "name" && key != "choices")
                        throw io_error{ "criteria: unknown key '" + key + "'" };
                inst.criteria.push_back({ c["name"].get<std::string>(),
                        detail::as_string_array(c["choices"], "criteria choices") });
            }
        }

        if (j.contains("profiles")) {
            if (! j["profiles"].is_object())
                throw io_error{ "profiles: expected an object" };
            for (auto & [ x, arr ] : j["profiles"].items())
                inst.profiles[x] = detail::as_int_array(arr, "profiles");
        }
        if (j.contains("weights")) {
            if (! j["weights"].is_object())
                throw io_error{ "weights: expected an object" };
            for (auto & [ x, arr ] : j["weights"].items())
                inst.weights[x] = detail::as_int_array(arr, "weights");
        }
        if (j.contains("provenance")) {
            if (! j["provenance"].is_object())
                throw io_error{ "provenance: expected an object" };
            for (auto & [ x, row ] : j["provenance"].items()) {
                if (! row.is_object())
                    throw io_error{ "provenance of '" + x + "': expected an object" };
                for (auto & [ y, tag ] : row.items())
                    if (! tag.is_string())
                        throw io_error{ "provenance of '" + x + "' / '" + y + "': expected a string" };
            }
        }

        auto report = validate_instance(inst);
        if (! report.empty()) {
            std::string msg = "instance file: invalid instance:";
            for (auto & v : report)
                msg += "\n  [" + v.kind + "] " + v.detail;
            throw io_error{ msg };
        }
        return inst;
    }

    namespace detail
    {
        inline auto instance_to_json(const instance & inst) -> nlohmann::json
        {
            nlohmann::json j;
            j["agents"] = inst.agents;
            j["preferences"] = nlohmann::json::object();
            for (auto & [ x, list ] : inst.preferences)
                j["preferences"][x] = list.tiers;
            if (! inst.unwanted.empty()) {
                j["unwanted"] = nlohmann::json::object();
                for (auto & [ x, rejected ] : inst.unwanted)
                    if (! rejected.empty())
                        j["unwanted"][x] = rejected;
            }
            if (! inst.criteria.empty()) {
                j["criteria"] = nlohmann::json::array();
                for (auto & c : inst.criteria)
                    j["criteria"].push_back({ { "name", c.name }, { "choices", c.choices } });
            }
            if (! inst.profiles.empty())
                j["profiles"] = inst.profiles;
            if (! inst.weights.empty())
                j["weights"] = inst.weights;
            return j;
        }
    }

    inline auto serialize_instance(const instance & inst) -> std::string
    {
        return detail::instance_to_json(inst).dump(2) + "\n";
    }

    /* an extended-lists file: a loadable instance whose preference lists are
     * the k-extended ones, annotated with where every entry came from */
    inline auto serialize_extended(const instance & inst, const k_extended_lists & kx) -> std::string
    {
        instance shell;
        shell.agents = inst.agents;
        shell.preferences = kx.lists;
        shell.unwanted = inst.unwanted;
        auto j = detail::instance_to_json(shell);
        j["provenance"] = nlohmann::json::object();
        for (auto & [ x, row ] : kx.origins) {
            auto & out_row = j["provenance"][x];
            out_row = nlohmann::json::object();
            for (auto & [ y, p ] : row)
                switch (p.kind) {
                    case origin::stated: out_row[y] = "stated"; break;
                    case origin::inferred: out_row[y] = "inferred"; break;
                    case origin::network: out_row[y] = "network:" + std::to_string(p.distance); break;
                }
        }
        return j.dump(2) + "\n";
    }

    /* matchings: one line per agent, sorted, '<id>\t<partner or ->' */
    inline auto serialize_matching(const matching & m) -> std::string
    {
        std::string out;
        for (auto & [ x, y ] : m.partner) {
            out += x;
            out += '\t';
            out += x == y ? "-" : y;
            out += '\n';
        }
        return out;
    }

    inline auto parse_matching(const std::string & text) -> matching
    {
        matching m;
        std::istringstream in{ text };
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty())
                continue;
            auto tab = line.find('\t');
            if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos)
                throw io_error{ "matching line " + std::to_string(line_no) + ": expected two tab-separated fields" };
            auto x = line.substr(0, tab);
            auto y = line.substr(tab + 1);
            if (x.empty() || y.empty())
                throw io_error{ "matching line " + std::to_string(line_no) + ": empty field" };
            if (m.partner.count(x))
                throw io_error{ "matching: agent '" + x + "' listed twice" };
            if (y == x)
                throw io_error{ "matching: '" + x + "' paired with itself (use '-' for single)" };
            m.partner[x] = y == "-" ? x : y;
        }
        for (auto & [ x, y ] : m.partner)
            if (x != y) {
                auto it = m.partner.find(y);
                if (it == m.partner.end())
                    throw io_error{ "matching: '" + x + "' paired with '" + y + "', which has no line" };
                if (it->second != x)
                    throw io_error{ "matching: '" + x + "' and '" + y + "' disagree" };
            }
        return m;
    }

    inline auto read_file(const std::string & path) -> std::string
    {
        std::ifstream in{ path, std::ios::binary };
        if (! in)
            throw io_error{ "cannot read '" + path + "'" };
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    }

    /* write via a temporary in the same directory, then rename into place */
    inline auto write_file_atomic(const std::string & path, const std::string & content) -> void
    {
        auto tmp = path + ".tmp";
        {
            std::ofstream out{ tmp, std::ios::binary | std::ios::trunc };
            if (! out)
                throw io_error{ "cannot write '" + tmp + "'" };
            out << content;
            if (! out.flush())
                throw io_error{ "short write to '" + tmp + "'" };
        }
        if (std::rename(tmp.c_str(), path.c_str()) != 0)
            throw io_error{ "cannot move '" + tmp + "' into place" };
    }
}

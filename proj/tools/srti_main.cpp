/* command line front end: generate / extend / solve / verify / bench.
 *
 * exit codes: 0 success (stable / satisfiable), 1 unsatisfiable or blocked,
 * 2 input or validation error, 3 budget exhausted. */

#include <srti/srti.hpp>

#include <CLI11.hpp>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace fs = std::filesystem;

namespace
{
    constexpr int exit_ok = 0;
    constexpr int exit_unsat = 1;
    constexpr int exit_input = 2;
    constexpr int exit_budget = 3;

    std::mutex * stderr_mutex = nullptr;

    auto format_rate(double v) -> std::string
    {
        char buffer[32];
        std::snprintf(buffer, sizeof(buffer), "%.6f", v);
        return buffer;
    }

    /* population metrics over the fully personalized (k=0-extended) lists,
     * so inferred entries count the same way stated ones do */
    struct metrics
    {
        double cd = 0.0;
        std::optional<double> map;
    };

    auto measure(const srti::instance & inst) -> metrics
    {
        auto lists = srti::k_extend(inst, 0).lists;
        metrics m;
        m.cd = srti::list_completeness(lists, inst.agents.size());
        std::size_t entries = 0;
        for (auto & [ _, list ] : lists)
            entries += list.entry_count();
        if (entries > 0)
            m.map = srti::mutual_acceptability_rate(lists);
        return m;
    }

    auto load_instance(const std::string & path) -> srti::instance
    {
        return srti::parse_instance(srti::read_file(path));
    }

    auto print_matchings(const std::vector<srti::matching> & matchings) -> void
    {
        bool first = true;
        for (auto & m : matchings) {
            if (! first)
                std::cout << "\n";
            first = false;
            std::cout << srti::serialize_matching(m);
        }
    }

    struct generate_options
    {
        int agents = 0;
        double edge_prob = 0.0;
        std::uint64_t seed = 0;
        std::string preset;
        std::size_t truncate = 0;
        int criteria = 0;
        double response = 0.0;
        std::uint64_t profile_seed = 0;
        int choices = 3;
        double unwanted_prob = 0.0;
        std::string out;
        bool have_edge_prob = false, have_truncate = false, have_profile_seed = false;
    };

    auto run_generate(const generate_options & opt) -> int
    {
        srti::gen_spec spec;
        if (! opt.preset.empty()) {
            spec = opt.preset == "hma" ? srti::hma_preset(opt.agents, opt.seed)
                                       : srti::lma_preset(opt.agents, opt.seed);
        }
        else {
            if (! opt.have_edge_prob)
                throw srti::io_error{ "generate: --edge-prob is required without --preset" };
            spec.n = opt.agents;
            spec.p = opt.edge_prob;
            spec.seed = opt.seed;
            if (opt.have_truncate)
                spec.truncate = opt.truncate;
        }
        spec.criteria_count = opt.criteria;
        spec.response_rate = opt.response;
        spec.profile_seed = opt.have_profile_seed ? opt.profile_seed : opt.seed;
        spec.choices_per_criterion = opt.choices;
        spec.unwanted_prob = opt.unwanted_prob;

        auto inst = srti::gen_er_sri(spec);
        srti::write_file_atomic(opt.out, srti::serialize_instance(inst));

        auto m = measure(inst);
        std::cout << "cd " << format_rate(m.cd) << "\n";
        std::cout << "map " << (m.map ? format_rate(*m.map) : "-") << "\n";
        std::cout << "class " << (m.map ? srti::to_string(srti::classify(*m.map)) : "-") << "\n";
        return exit_ok;
    }

    auto run_extend(const std::string & input, int k, const std::string & out) -> int
    {
        auto inst = load_instance(input);
        auto kx = srti::k_extend(inst, k);
        auto text = srti::serialize_extended(inst, kx);
        if (out.empty())
            std::cout << text;
        else
            srti::write_file_atomic(out, text);
        return exit_ok;
    }

    struct solve_options
    {
        std::string input;
        int k = 0;
        bool all = false;
        bool oracle = false;
        std::size_t limit = 1000000;
        srti::budget limits;
    };

    auto run_solve(const solve_options & opt) -> int
    {
        auto inst = load_instance(opt.input);

        if (opt.oracle) {
            auto matchings = srti::brute_force_oracle(inst, opt.k);
            if (matchings.size() > opt.limit)
                matchings.resize(opt.limit);
            print_matchings(matchings);
            return matchings.empty() ? exit_unsat : exit_ok;
        }

        if (opt.all) {
            auto result = srti::enumerate_k_stable(inst, opt.k, opt.limit, opt.limits);
            print_matchings(result.matchings);
            std::cerr << "nodes " << result.stats.nodes << "\nms " << result.stats.elapsed_ms << "\n";
            if (! result.matchings.empty())
                return exit_ok;
            return result.complete ? exit_unsat : exit_budget;
        }

        auto result = srti::find_k_stable(inst, opt.k, opt.limits);
        std::cerr << "nodes " << result.stats.nodes << "\nms " << result.stats.elapsed_ms << "\n";
        switch (result.verdict) {
            case srti::outcome::satisfiable:
                print_matchings({ *result.solution });
                return exit_ok;
            case srti::outcome::unsatisfiable:
                return exit_unsat;
            case srti::outcome::timeout:
                return exit_budget;
        }
        return exit_input;
    }

    auto run_verify(const std::string & input, int k, const std::string & matching_path) -> int
    {
        auto inst = load_instance(input);
        auto m = srti::parse_matching(srti::read_file(matching_path));
        auto cert = srti::verify_k_stable(inst, k, m);
        if (cert.stable()) {
            std::cout << "stable\n";
            return exit_ok;
        }
        for (auto & p : cert.blocking)
            std::cout << "block\t" << p.lo << "\t" << p.hi << "\n";
        return exit_unsat;
    }

    /* ---- bench ---- */

    struct bench_row
    {
        std::string instance;
        std::size_t n = 0;
        std::string cd = "-", map = "-", cls = "-";
        int k = 0;
        std::string outcome = "error";
        std::int64_t solve_ms = 0;
        std::uint64_t nodes = 0;
    };

    auto csv_quote(const std::string & s) -> std::string
    {
        if (s.find_first_of(",\"\n") == std::string::npos)
            return s;
        std::string out = "\"";
        for (char c : s) {
            if (c == '"')
                out += '"';
            out += c;
        }
        return out + "\"";
    }

    auto csv_fields(const std::string & line) -> std::vector<std::string>
    {
        std::vector<std::string> out;
        std::string cur;
        bool quoted = false;
        for (std::size_t i = 0 ; i < line.size() ; ++i) {
            char c = line[i];
            if (quoted) {
                if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                }
                else if (c == '"')
                    quoted = false;
                else
                    cur += c;
            }
            else if (c == '"')
                quoted = true;
            else if (c == ',') {
                out.push_back(cur);
                cur.clear();
            }
            else
                cur += c;
        }
        out.push_back(cur);
        return out;
    }

    auto row_to_csv(const bench_row & r) -> std::string
    {
        std::ostringstream out;
        out << csv_quote(r.instance) << ',' << r.n << ',' << r.cd << ',' << r.map << ','
            << r.cls << ',' << r.k << ',' << r.outcome << ',' << r.solve_ms << ',' << r.nodes;
        return out.str();
    }

    struct bench_options
    {
        std::string dir;
        std::vector<int> ks;
        std::string out;
        srti::budget limits;
        unsigned jobs = 0;
    };

    auto run_bench(const bench_options & opt) -> int
    {
        std::vector<std::string> files;
        for (auto & entry : fs::directory_iterator(opt.dir))
            if (entry.is_regular_file() && entry.path().extension() == ".json")
                files.push_back(entry.path().filename().string());
        std::sort(files.begin(), files.end());

        const std::string header = "instance,n,cd,map,class,k,outcome,solve_ms,nodes";
        if (files.empty()) {
            srti::write_file_atomic(opt.out, header + "\n");
            std::cerr << "bench: no instance files in '" << opt.dir << "'\n";
            return exit_input;
        }

        auto ks = opt.ks;
        std::sort(ks.begin(), ks.end());
        ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

        /* resume: keep rows whose (instance, k) we already have */
        std::map<std::pair<std::string, int>, std::string> done;
        if (fs::exists(opt.out)) {
            std::istringstream in{ srti::read_file(opt.out) };
            std::string line;
            bool first = true;
            while (std::getline(in, line)) {
                if (first) {
                    first = false;
                    continue;
                }
                if (line.empty())
                    continue;
                auto fields = csv_fields(line);
                if (fields.size() == 9)
                    done[{ fields[0], std::stoi(fields[5]) }] = line;
            }
        }

        struct task
        {
            std::string file;
            int k;
        };
        std::vector<task> tasks;
        for (auto & f : files)
            for (int k : ks)
                if (! done.count({ f, k }))
                    tasks.push_back({ f, k });

        std::vector<std::string> fresh(tasks.size());
        std::atomic<std::size_t> next{ 0 };
        std::atomic<std::size_t> failures{ 0 };

        auto worker = [&] {
            for (;;) {
                auto i = next.fetch_add(1);
                if (i >= tasks.size())
                    return;
                bench_row row;
                row.instance = tasks[i].file;
                row.k = tasks[i].k;
                try {
                    auto inst = load_instance((fs::path(opt.dir) / tasks[i].file).string());
                    row.n = inst.agents.size();
                    auto m = measure(inst);
                    row.cd = format_rate(m.cd);
                    if (m.map) {
                        row.map = format_rate(*m.map);
                        row.cls = srti::to_string(srti::classify(*m.map));
                    }
                    auto result = srti::find_k_stable(inst, tasks[i].k, opt.limits);
                    row.solve_ms = result.stats.elapsed_ms;
                    row.nodes = result.stats.nodes;
                    switch (result.verdict) {
                        case srti::outcome::satisfiable: row.outcome = "sat"; break;
                        case srti::outcome::unsatisfiable: row.outcome = "unsat"; break;
                        case srti::outcome::timeout: row.outcome = "timeout"; break;
                    }
                }
                catch (const std::exception & e) {
                    row.outcome = "error";
                    failures.fetch_add(1);
                    std::lock_guard<std::mutex> guard{ *stderr_mutex };
                    std::cerr << "bench: " << tasks[i].file << " k=" << tasks[i].k << ": " << e.what() << "\n";
                }
                fresh[i] = row_to_csv(row);
            }
        };

        unsigned jobs = opt.jobs > 0 ? opt.jobs : std::max(1u, std::thread::hardware_concurrency());
        jobs = std::min<unsigned>(jobs, std::max<std::size_t>(tasks.size(), 1));
        std::vector<std::thread> pool;
        for (unsigned t = 0 ; t < jobs ; ++t)
            pool.emplace_back(worker);
        for (auto & t : pool)
            t.join();

        for (std::size_t i = 0 ; i < tasks.size() ; ++i)
            done[{ tasks[i].file, tasks[i].k }] = fresh[i];

        std::string out_text = header + "\n";
        for (auto & [ _, line ] : done)
            out_text += line + "\n";
        srti::write_file_atomic(opt.out, out_text);

        bool all_failed = ! tasks.empty() && failures.load() == tasks.size();
        return all_failed ? exit_unsat : exit_ok;
    }
}

auto main(int argc, char ** argv) -> int
{
    std::mutex stderr_guard;
    stderr_mutex = &stderr_guard;

    CLI::App app{ "roommate matching with personalized and network-extended preference lists" };
    app.require_subcommand(1);

    generate_options gen_opt;
    auto * cmd_generate = app.add_subcommand("generate", "generate a random instance");
    cmd_generate->add_option("--agents,-n", gen_opt.agents, "number of agents")->required();
    auto * edge_opt = cmd_generate->add_option("--edge-prob", gen_opt.edge_prob,
            "acceptability probability per pair");
    cmd_generate->add_option("--seed", gen_opt.seed, "generator seed");
    auto * trunc_opt = cmd_generate->add_option("--truncate", gen_opt.truncate,
            "keep only the first L choices");
    auto * preset_opt = cmd_generate->add_option("--preset", gen_opt.preset,
            "named family: hma or lma (sets edge probability and truncation)")
            ->check(CLI::IsMember({ "hma", "lma" }));
    preset_opt->excludes(edge_opt);
    preset_opt->excludes(trunc_opt);
    cmd_generate->add_option("--criteria", gen_opt.criteria, "number of questionnaire criteria");
    cmd_generate->add_option("--response", gen_opt.response, "questionnaire response rate");
    auto * pseed_opt = cmd_generate->add_option("--profile-seed", gen_opt.profile_seed,
            "separate seed for the questionnaire (default: --seed)");
    cmd_generate->add_option("--choices", gen_opt.choices, "choices per criterion");
    cmd_generate->add_option("--unwanted-prob", gen_opt.unwanted_prob,
            "probability of a random rejection per pair");
    cmd_generate->add_option("--out", gen_opt.out, "output instance file")->required();

    std::string ext_input, ext_out;
    int ext_k = 0;
    auto * cmd_extend = app.add_subcommand("extend", "write the k-extended preference lists");
    cmd_extend->add_option("--input,-i", ext_input, "instance file")->required();
    cmd_extend->add_option("--k", ext_k, "network reach")->required()->check(CLI::NonNegativeNumber);
    cmd_extend->add_option("--out", ext_out, "output file (default: stdout)");

    solve_options solve_opt;
    std::int64_t solve_nodes = 10000000, solve_ms = 60000;
    auto * cmd_solve = app.add_subcommand("solve", "find or enumerate k-stable matchings");
    cmd_solve->add_option("--input,-i", solve_opt.input, "instance file")->required();
    cmd_solve->add_option("--k", solve_opt.k, "network reach")->required()->check(CLI::NonNegativeNumber);
    cmd_solve->add_flag("--all", solve_opt.all, "enumerate instead of stopping at the first");
    cmd_solve->add_option("--limit", solve_opt.limit, "cap for --all / --oracle output");
    cmd_solve->add_flag("--oracle", solve_opt.oracle, "use the exhaustive reference (n <= 10)");
    cmd_solve->add_option("--max-nodes", solve_nodes, "search node budget");
    cmd_solve->add_option("--max-ms", solve_ms, "search time budget in milliseconds");

    std::string ver_input, ver_matching;
    int ver_k = 0;
    auto * cmd_verify = app.add_subcommand("verify", "check a matching for k-stability");
    cmd_verify->add_option("--input,-i", ver_input, "instance file")->required();
    cmd_verify->add_option("--k", ver_k, "network reach")->required()->check(CLI::NonNegativeNumber);
    cmd_verify->add_option("--matching,-m", ver_matching, "matching file")->required();

    bench_options bench_opt;
    std::int64_t bench_nodes = 10000000, bench_ms = 60000;
    auto * cmd_bench = app.add_subcommand("bench", "solve a directory of instances into a CSV");
    cmd_bench->add_option("--dir", bench_opt.dir, "directory of instance files")->required();
    cmd_bench->add_option("--k", bench_opt.ks, "network reach values (repeatable)")->required();
    cmd_bench->add_option("--out", bench_opt.out, "output CSV (existing rows are kept)")->required();
    cmd_bench->add_option("--max-nodes", bench_nodes, "search node budget per solve");
    cmd_bench->add_option("--max-ms", bench_ms, "search time budget per solve in milliseconds");
    cmd_bench->add_option("--jobs", bench_opt.jobs, "worker threads (default: hardware)");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp & e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError & e) {
        app.exit(e);
        return exit_input;
    }

    try {
        if (app.got_subcommand(cmd_generate)) {
            gen_opt.have_edge_prob = edge_opt->count() > 0;
            gen_opt.have_truncate = trunc_opt->count() > 0;
            gen_opt.have_profile_seed = pseed_opt->count() > 0;
            return run_generate(gen_opt);
        }
        if (app.got_subcommand(cmd_extend))
            return run_extend(ext_input, ext_k, ext_out);
        if (app.got_subcommand(cmd_solve)) {
            solve_opt.limits.max_nodes = static_cast<std::uint64_t>(solve_nodes);
            solve_opt.limits.max_millis = solve_ms;
            return run_solve(solve_opt);
        }
        if (app.got_subcommand(cmd_verify))
            return run_verify(ver_input, ver_k, ver_matching);
        if (app.got_subcommand(cmd_bench)) {
            bench_opt.limits.max_nodes = static_cast<std::uint64_t>(bench_nodes);
            bench_opt.limits.max_millis = bench_ms;
            return run_bench(bench_opt);
        }
    }
    catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    }
    return exit_input;
}

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "pdsm/bench.hpp"
#include "pdsm/compound.hpp"
#include "pdsm/core.hpp"
#include "pdsm/elemental.hpp"
#include "pdsm/generator.hpp"
#include "pdsm/io.hpp"
#include "pdsm/stability.hpp"
#include "pdsm/trees.hpp"

namespace {

using nlohmann::ordered_json;

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// artifacts go to stdout unless -o names a file
void emit(const std::string& text, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + out);
    f << text;
}

pdsm::Profile parse_profile(const std::string& name) {
    const auto profile = pdsm::profile_from_name(name);
    if (!profile) throw pdsm::parse_error("unknown profile \"" + name + "\"");
    return *profile;
}

// "3:7" inclusive, "4,8,16", or both mixed
std::vector<int> parse_range(const std::string& text) {
    std::vector<int> values;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const size_t colon = part.find(':');
        try {
            if (colon == std::string::npos) {
                values.push_back(std::stoi(part));
            } else {
                const int lo = std::stoi(part.substr(0, colon));
                const int hi = std::stoi(part.substr(colon + 1));
                if (hi < lo) throw pdsm::parse_error("empty range \"" + part + "\"");
                for (int v = lo; v <= hi; ++v) values.push_back(v);
            }
        } catch (const std::invalid_argument&) {
            throw pdsm::parse_error("bad range entry \"" + part + "\"");
        } catch (const std::out_of_range&) {
            throw pdsm::parse_error("range entry \"" + part + "\" out of range");
        }
    }
    if (values.empty()) throw pdsm::parse_error("empty range \"" + text + "\"");
    return values;
}

std::string family_labels(const pdsm::Instance& inst, const pdsm::Family& f) {
    ordered_json row = ordered_json::array();
    for (int a = 0; a < f.parties(); ++a) row.push_back(inst.member_name(f.at(a)));
    return row.dump();
}

int cmd_solve(const std::string& instance_path, const std::string& algorithm,
              const std::string& plan_arg, const std::string& recipe_path,
              const std::string& strategy, const std::string& dump_reduced,
              const std::string& out) {
    const pdsm::Instance inst = pdsm::read_instance(slurp(instance_path));

    if (algorithm == "elemental") {
        pdsm::ElementalPlan plan = pdsm::path_plan(inst.parties());
        if (!plan_arg.empty())
            plan = plan_arg.rfind("prufer:", 0) == 0 ? pdsm::parse_plan_shorthand(plan_arg)
                                                     : pdsm::read_plan(slurp(plan_arg));
        const pdsm::ElementalRun run = pdsm::run_elemental(inst, plan);
        std::cerr << "rounds: " << run.total_rounds << "\n";
        emit(pdsm::write_matching(inst, run.matching), out);
        return 0;
    }

    pdsm::CompoundRecipe recipe;
    if (!recipe_path.empty()) {
        recipe = pdsm::read_recipe(slurp(recipe_path));
    } else {
        recipe = pdsm::default_recipe(inst.parties(),
                                      strategy == "path" ? pdsm::Strategy::path
                                                         : pdsm::Strategy::balanced_bisection);
    }
    const pdsm::CompoundRun run = pdsm::run_compound(inst, recipe);
    for (size_t k = 0; k < run.levels.size(); ++k) {
        const auto& lv = run.levels[k];
        std::cerr << "level " << k << ": " << lv.parties_before << " parties -> "
                  << lv.parties_after << ", rounds " << lv.rounds << ", ties broken "
                  << lv.ties_broken << "\n";
    }
    std::cerr << "final rounds: " << run.final_rounds << "\n";
    std::cerr << "total rounds: " << run.total_rounds << "\n";

    if (!dump_reduced.empty()) {
        ordered_json dump = ordered_json::array();
        const pdsm::Instance* base = &inst;
        for (const pdsm::ReducedInstance& red : run.reductions) {
            ordered_json entry;
            entry["instance"] = ordered_json::parse(pdsm::write_instance(red.derived));
            auto& prov = entry["provenance"] = ordered_json::object();
            for (size_t b = 0; b < red.provenance.size(); ++b) {
                for (size_t i = 0; i < red.provenance[b].size(); ++i) {
                    auto& members =
                        prov[red.derived.member_name({static_cast<int>(b), static_cast<int>(i)})] =
                            ordered_json::array();
                    for (pdsm::ElementRef x : red.provenance[b][i])
                        members.push_back(base->member_name(x));
                }
            }
            entry["ties_broken"] = red.ties_broken;
            dump.push_back(std::move(entry));
            base = &red.derived;
        }
        emit(dump.dump(2) + "\n", dump_reduced);
    }

    emit(pdsm::write_matching(inst, run.matching), out);
    return 0;
}

int cmd_verify(const std::string& instance_path, const std::string& matching_path,
               std::uint64_t max_candidates, int witness_cap, int jobs, std::uint64_t samples,
               std::uint64_t seed) {
    const pdsm::Instance inst = pdsm::read_instance(slurp(instance_path));
    const pdsm::Matching m = pdsm::read_matching(inst, slurp(matching_path));

    pdsm::BlockingReport rep;
    if (samples > 0) {
        rep = pdsm::verify_sample(inst, m, samples, seed, witness_cap);
        std::cerr << "sampled check, not a stability proof\n";
    } else {
        rep = pdsm::verify(inst, m, {max_candidates, witness_cap, jobs});
    }
    std::cout << (rep.stable ? "stable" : "unstable") << "\n";
    std::cout << "candidates_checked: " << rep.candidates_checked << "\n";
    for (const pdsm::Family& w : rep.witnesses)
        std::cout << "witness: " << family_labels(inst, w) << "\n";
    return rep.stable ? 0 : 3;
}

int cmd_enumerate(int p, int max_p, const std::string& out) {
    pdsm::TreeEnumerator trees(p, max_p);
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!out.empty() && out != "-") {
        file.open(out, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open " + out);
        os = &file;
    }
    while (const auto tree = trees.next()) {
        *os << pdsm::plan_shorthand(trees.sequence(), trees.orientation()) << '\t';
        for (size_t i = 0; i < tree->edges.size(); ++i) {
            if (i) *os << ',';
            *os << tree->edges[i].first << "->" << tree->edges[i].second;
        }
        *os << '\n';
    }
    return 0;
}

int cmd_bench(const std::string& p_range, const std::string& n_range, int seeds,
              const std::string& shape_name, const std::string& profile_name, int jobs,
              const std::string& out) {
    pdsm::BenchOptions opt;
    opt.ps = parse_range(p_range);
    opt.ns = parse_range(n_range);
    opt.seeds = seeds;
    opt.jobs = jobs;
    opt.profile = parse_profile(profile_name);
    if (shape_name == "path")
        opt.shape = pdsm::PlanShape::path;
    else if (shape_name == "star")
        opt.shape = pdsm::PlanShape::star;
    else
        opt.shape = pdsm::PlanShape::random_tree;

    const auto records = pdsm::run_bench(opt);

    std::ostringstream csv;
    csv << "p,n,seed,shape,rounds,bound,wall_ms\n";
    for (const auto& rec : records)
        csv << rec.p << ',' << rec.n << ',' << rec.seed << ','
            << pdsm::plan_shape_name(rec.shape) << ',' << rec.rounds << ',' << rec.bound << ','
            << rec.wall_ms << '\n';
    emit(csv.str(), out);

    // fit summaries; means over seeds at each grid point
    if (opt.ps.size() >= 2) {
        for (int n : opt.ns) {
            std::vector<double> xs, ys;
            for (int p : opt.ps) {
                xs.push_back(p - 1);
                ys.push_back(pdsm::mean_rounds(records, p, n));
            }
            const auto fit = pdsm::least_squares(xs, ys);
            std::cerr << "fit n=" << n << ": mean rounds = " << fit.slope << "*(p-1) + "
                      << fit.intercept << ", R^2 = " << fit.r2 << "\n";
        }
    }
    if (opt.ns.size() >= 2) {
        for (int p : opt.ps) {
            std::vector<double> xs, ys;
            for (int n : opt.ns) {
                xs.push_back(static_cast<double>(n) * n);
                ys.push_back(pdsm::mean_rounds(records, p, n));
            }
            const auto fit = pdsm::least_squares(xs, ys);
            std::cerr << "fit p=" << p << ": mean rounds = " << fit.slope << "*n^2 + "
                      << fit.intercept << ", R^2 = " << fit.r2 << "\n";
        }
        for (int p : opt.ps)
            for (size_t i = 0; i + 1 < opt.ns.size(); ++i)
                if (opt.ns[i + 1] == 2 * opt.ns[i])
                    std::cerr << "doubling p=" << p << ": n=" << opt.ns[i] << "->"
                              << opt.ns[i + 1] << " mean rounds ratio = "
                              << pdsm::mean_rounds(records, p, opt.ns[i + 1]) /
                                     pdsm::mean_rounds(records, p, opt.ns[i])
                              << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"p-party stable matching: solvers, stability oracle, benchmarks"};
    app.require_subcommand(1);
    std::function<int()> action;

    // gen
    auto* gen = app.add_subcommand("gen", "generate a seeded instance file");
    struct {
        int p = 3;
        int n = 4;
        std::uint64_t seed = 0;
        std::string profile = "uniform";
        std::string out;
    } g;
    gen->add_option("-p", g.p, "number of parties")->check(CLI::Range(2, 1'000'000));
    gen->add_option("-n", g.n, "members per party")->check(CLI::Range(1, 1'000'000));
    gen->add_option("--seed", g.seed, "random seed");
    gen->add_option("--profile", g.profile, "uniform | aligned | adversarial-ties")
        ->check(CLI::IsMember({"uniform", "aligned", "adversarial-ties", "adversarial"}));
    gen->add_option("-o,--output", g.out, "output file (default stdout)");
    gen->callback([&] {
        action = [&]() {
            emit(pdsm::write_instance(pdsm::generate({g.p, g.n, g.seed, parse_profile(g.profile)})),
                 g.out);
            return 0;
        };
    });

    // solve
    auto* solve = app.add_subcommand("solve", "run an elemental or compound algorithm");
    struct {
        std::string instance;
        std::string algorithm = "elemental";
        std::string plan;
        std::string recipe;
        std::string strategy = "balanced-bisection";
        std::string dump_reduced;
        std::string out;
    } s;
    solve->add_option("instance", s.instance, "instance file")->required();
    solve->add_option("--algorithm", s.algorithm, "elemental | compound")
        ->check(CLI::IsMember({"elemental", "compound"}));
    solve->add_option("--plan", s.plan,
                      "elemental plan: file or prufer:<seq>/orient:<mask> (default: path tree)");
    solve->add_option("--recipe", s.recipe, "compound recipe file");
    solve->add_option("--strategy", s.strategy,
                      "recipe synthesis when no --recipe is given")
        ->check(CLI::IsMember({"path", "balanced-bisection"}));
    solve->add_option("--dump-reduced", s.dump_reduced,
                      "write each level's reduced instance and provenance to this file");
    solve->add_option("-o,--output", s.out, "matching output file (default stdout)");
    solve->callback([&] {
        action = [&]() {
            return cmd_solve(s.instance, s.algorithm, s.plan, s.recipe, s.strategy,
                             s.dump_reduced, s.out);
        };
    });

    // verify
    auto* verify = app.add_subcommand("verify", "exhaustive stability check of a matching");
    struct {
        std::string instance;
        std::string matching;
        std::uint64_t max_candidates = pdsm::VerifyOptions{}.max_candidates;
        int witness_cap = pdsm::VerifyOptions{}.witness_cap;
        int jobs = 1;
        std::uint64_t samples = 0;
        std::uint64_t seed = 0;
    } v;
    verify->add_option("instance", v.instance, "instance file")->required();
    verify->add_option("matching", v.matching, "matching file")->required();
    verify->add_option("--max-candidates", v.max_candidates,
                       "guard on the n^p candidate space");
    verify->add_option("--witness-cap", v.witness_cap, "stop after this many witnesses");
    verify->add_option("--jobs", v.jobs, "worker threads")->check(CLI::Range(1, 4096));
    verify->add_option("--sample", v.samples,
                       "check this many random candidates instead of all n^p");
    verify->add_option("--seed", v.seed, "seed for --sample");
    verify->callback([&] {
        action = [&]() {
            return cmd_verify(v.instance, v.matching, v.max_candidates, v.witness_cap, v.jobs,
                              v.samples, v.seed);
        };
    });

    // enumerate
    auto* enumerate = app.add_subcommand("enumerate", "list every elemental plan for p parties");
    struct {
        int p = 3;
        int max_p = 0;
        std::string out;
    } e;
    enumerate->add_option("-p", e.p, "number of parties")->required()->check(CLI::Range(2, 64));
    enumerate->add_option("--max-p", e.max_p,
                          "enumeration guard (default 8; env PDSM_MAX_ENUM_P overrides)");
    enumerate->add_option("-o,--output", e.out, "output file (default stdout)");
    enumerate->callback([&] {
        action = [&]() {
            int guard = pdsm::kDefaultTreeEnumGuard;
            if (const char* env = std::getenv("PDSM_MAX_ENUM_P")) {
                try {
                    guard = std::stoi(env);
                } catch (const std::exception&) {
                    throw pdsm::parse_error("PDSM_MAX_ENUM_P is not an integer");
                }
            }
            if (e.max_p > 0) guard = e.max_p;
            return cmd_enumerate(e.p, guard, e.out);
        };
    });

    // count
    auto* count = app.add_subcommand("count", "print the number of elemental plans for p parties");
    struct {
        int p = 3;
    } c;
    count->add_option("-p", c.p, "number of parties")->required()->check(CLI::Range(2, 100000));
    count->callback([&] {
        action = [&]() {
            std::cout << pdsm::count_elemental(c.p).str() << "\n";
            return 0;
        };
    });

    // bench
    auto* bench = app.add_subcommand("bench", "elemental scaling benchmark (CSV to stdout)");
    struct {
        std::string p_range = "3:5";
        std::string n_range = "4,8,16";
        int seeds = 50;
        std::string shape = "path";
        std::string profile = "uniform";
        int jobs = 1;
        std::string out;
    } b;
    bench->add_option("--p-range", b.p_range, "party counts, e.g. 3:7 or 3,5,7");
    bench->add_option("--n-range", b.n_range, "party sizes, e.g. 4,8,16");
    bench->add_option("--seeds", b.seeds, "seeds per (p, n)")->check(CLI::Range(1, 1'000'000));
    bench->add_option("--plan-shape", b.shape, "path | star | random")
        ->check(CLI::IsMember({"path", "star", "random"}));
    bench->add_option("--profile", b.profile, "instance profile");
    bench->add_option("--jobs", b.jobs, "worker threads")->check(CLI::Range(1, 4096));
    bench->add_option("-o,--output", b.out, "CSV output file (default stdout)");
    bench->callback([&] {
        action = [&]() {
            return cmd_bench(b.p_range, b.n_range, b.seeds, b.shape, b.profile, b.jobs, b.out);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int rc = app.exit(err);
        return rc == 0 ? 0 : 1;
    }

    try {
        return action();
    } catch (const pdsm::structure_error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const std::runtime_error& err) {
        // parse, validation, guard and file errors are all input problems
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    } catch (const std::logic_error& err) {
        std::cerr << "internal error: " << err.what() << "\n";
        return 4;
    }
}

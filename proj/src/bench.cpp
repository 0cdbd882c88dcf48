#include "pdsm/bench.hpp"

#include <atomic>
#include <chrono>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include "pdsm/trees.hpp"

namespace pdsm {

std::string_view plan_shape_name(PlanShape shape) {
    switch (shape) {
        case PlanShape::path: return "path";
        case PlanShape::star: return "star";
        case PlanShape::random_tree: return "random";
    }
    throw std::invalid_argument("unknown plan shape");
}

namespace {

ElementalPlan plan_for(PlanShape shape, int p, int n, std::uint64_t seed) {
    switch (shape) {
        case PlanShape::path: return path_plan(p);
        case PlanShape::star: return star_plan(p);
        case PlanShape::random_tree: break;
    }
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(n), 0xb3u};
    std::mt19937_64 rng(seq);
    std::vector<int> prufer(std::max(0, p - 2));
    for (int& v : prufer) v = static_cast<int>(rng() % p);
    const std::uint64_t mask = rng() % (std::uint64_t{1} << (p - 1));
    return ElementalPlan{tree_from_label(p, prufer, mask)};
}

}  // namespace

std::vector<BenchRecord> run_bench(const BenchOptions& options) {
    if (options.ps.empty() || options.ns.empty() || options.seeds < 1)
        throw validation_error("bench: need at least one p, one n and one seed");

    std::vector<BenchRecord> records;
    for (int p : options.ps)
        for (int n : options.ns)
            for (int s = 0; s < options.seeds; ++s)
                records.push_back({p, n, static_cast<std::uint64_t>(s), options.shape, 0,
                                   (p - 1) * gs_round_bound(n), 0.0});

    auto one = [&](BenchRecord& rec) {
        const Instance inst =
            generate({rec.p, rec.n, rec.seed, options.profile});
        const ElementalPlan plan = plan_for(rec.shape, rec.p, rec.n, rec.seed);
        const auto t0 = std::chrono::steady_clock::now();
        const ElementalRun run = run_elemental(inst, plan);
        const auto t1 = std::chrono::steady_clock::now();
        rec.rounds = run.total_rounds;
        rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    };

    const int jobs = std::max(1, options.jobs);
    if (jobs == 1) {
        for (auto& rec : records) one(rec);
    } else {
        std::atomic<size_t> next{0};
        auto worker = [&] {
            for (;;) {
                const size_t i = next.fetch_add(1);
                if (i >= records.size()) return;
                one(records[i]);
            }
        };
        std::vector<std::thread> pool;
        const size_t width = std::min<size_t>(jobs, records.size());
        for (size_t t = 0; t < width; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (const auto& rec : records)
        if (rec.rounds > rec.bound)
            throw std::logic_error(
                "round bound violated: p=" + std::to_string(rec.p) + " n=" +
                std::to_string(rec.n) + " seed=" + std::to_string(rec.seed) + " rounds=" +
                std::to_string(rec.rounds) + " bound=" + std::to_string(rec.bound));
    return records;
}

LineFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("least_squares: need two or more (x, y) points");
    const double k = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = k * sxx - sx * sx;
    if (denom == 0) throw std::invalid_argument("least_squares: x values are all equal");
    LineFit fit;
    fit.slope = (k * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / k;
    double ss_res = 0, ss_tot = 0;
    const double mean_y = sy / k;
    for (size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (fit.slope * xs[i] + fit.intercept);
        ss_res += e * e;
        ss_tot += (ys[i] - mean_y) * (ys[i] - mean_y);
    }
    fit.r2 = ss_tot == 0 ? (ss_res == 0 ? 1.0 : 0.0) : 1.0 - ss_res / ss_tot;
    return fit;
}

double mean_rounds(const std::vector<BenchRecord>& records, int p, int n) {
    double sum = 0;
    int count = 0;
    for (const auto& rec : records)
        if (rec.p == p && rec.n == n) {
            sum += rec.rounds;
            ++count;
        }
    if (count == 0) throw std::invalid_argument("mean_rounds: no records for this (p, n)");
    return sum / count;
}

}  // namespace pdsm

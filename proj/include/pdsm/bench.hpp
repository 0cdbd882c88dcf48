#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "pdsm/elemental.hpp"
#include "pdsm/generator.hpp"

namespace pdsm {

enum class PlanShape { path, star, random_tree };

std::string_view plan_shape_name(PlanShape shape);

struct BenchRecord {
    int p = 0;
    int n = 0;
    std::uint64_t seed = 0;
    PlanShape shape = PlanShape::path;
    int rounds = 0;
    int bound = 0;  // (p-1)(n^2-2n+2)
    double wall_ms = 0.0;
};

struct BenchOptions {
    std::vector<int> ps;
    std::vector<int> ns;
    int seeds = 50;
    PlanShape shape = PlanShape::path;
    Profile profile = Profile::uniform;
    int jobs = 1;
};

// One elemental run per (p, n, seed), in that nesting order. Every record is
// checked against the round bound; a violation throws std::logic_error, it
// is never reported as data. random_tree draws a plan per record,
// deterministic in (p, n, seed).
std::vector<BenchRecord> run_bench(const BenchOptions& options);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

// Ordinary least squares of ys against xs.
LineFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys);

// Mean of rounds over the records with this exact (p, n).
double mean_rounds(const std::vector<BenchRecord>& records, int p, int n);

}  // namespace pdsm

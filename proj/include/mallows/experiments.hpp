#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mallows/core.hpp"
#include "mallows/experiment_config.hpp"

namespace mallows::experiments {

inline constexpr std::string_view kLibraryVersion = "0.1.0";

// Coverage verdict thresholds (repo constants, fixed from pilot runs).
inline constexpr double kCoverageSpreadTol = 0.02;
inline constexpr double kCoverageGapTol = 0.05;

struct Cell {
    std::string variant; // classic | normalized, or <variant>-direct / <variant>-deleted
    double param = 0.0;
    std::size_t m = 0;
    std::size_t n = 0;      // 0 for analytic cells
    std::size_t trials = 0; // 0 for analytic cells
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t seed = 0; // 0 for analytic cells
    std::optional<double> tie_rate; // winner experiments only
};

struct LimitLine {
    std::string variant;
    double param = 0.0;
    double value = 0.0;
};

struct CoverageRow {
    std::string variant;
    double param = 0.0;
    double last = 0.0;   // value at the largest m
    double spread = 0.0; // max - min over m >= largest m / 10
};

struct Verdict {
    std::string variant;
    std::string verdict; // covers | cannot-distinguish | undetermined
    double max_spread = 0.0;
    double min_gap = 0.0; // smallest difference between row limits
    double range = 0.0;   // largest difference between row limits
};

struct CurveResult {
    ExperimentConfig config;
    std::vector<Cell> cells;
    std::vector<LimitLine> limits;
    std::vector<CoverageRow> coverage;
    std::vector<Verdict> verdicts;
};

// Seed of trial t; the same for every cell of an experiment, so cells are
// compared on common random numbers.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial);

// Classic phi for a grid value under a concrete variant.
double resolve_phi(Variant variant, double param, std::size_t m);

// The normalized quantity g for a property at classic phi.
double property_value(Property property, double phi, std::size_t m);

// m -> infinity limit of the property under a variant at a grid value.
double property_limit(Property property, Variant variant, double param);

double statistic_value(Statistic statistic, const Profile& profile);

CurveResult run_swap_curve(const ExperimentConfig& cfg);
CurveResult run_property_curve(const ExperimentConfig& cfg);
CurveResult run_winner_prob(const ExperimentConfig& cfg, unsigned threads = 1);
CurveResult run_posdist_curve(const ExperimentConfig& cfg, unsigned threads = 1);
CurveResult run_deletion_compare(const ExperimentConfig& cfg, unsigned threads = 1);
CurveResult run_coverage_check(const ExperimentConfig& cfg);
CurveResult run_experiment(const ExperimentConfig& cfg, unsigned threads = 1);

// kind,variant,param,m,n,trials,mean,stderr,seed with 17 significant digits.
std::string curve_csv(const CurveResult& result);
std::string curve_svg(const CurveResult& result);
// Config echo, version, limits, tie rates and coverage verdicts.
nlohmann::json curve_metadata(const CurveResult& result);

// Writes <prefix>.csv, <prefix>.json and, if enabled, <prefix>.svg. Missing
// parent directories are created.
void emit_outputs(const CurveResult& result, const std::filesystem::path& prefix);

} // namespace mallows::experiments

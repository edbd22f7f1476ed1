#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

// Declarative experiment description, read from JSON:
//
//   {
//     "experiment": {"kind": "plurality-winner-prob", "variant": "both",
//                    "statistic": "max-plurality-score", "property": "top1"},
//     "grid":       {"params": [0.5], "m": [20, 50, 100, 200]},
//     "sampling":   {"n": 100, "trials": 200, "seed": 1, "m_max": 200},
//     "output":     {"prefix": "out/fig3d", "svg": true}
//   }
//
// Only "experiment.kind" and "grid.params" are required. "statistic" applies
// to deletion-compare, "property" to coverage-check. Unknown keys are errors.
namespace mallows::experiments {

enum class Kind {
    swap_curve,
    top1_curve,
    pos1_curve,
    beats_m_curve,
    plurality_winner_prob,
    borda_winner_prob,
    condorcet_winner_prob,
    posdist_curve,
    deletion_compare,
    coverage_check,
};

enum class Variant { classic, normalized, both };

enum class Statistic {
    max_plurality_score,
    plurality_winner_position,
    posdist_id,
    plurality_is_borda,
    plurality_is_condorcet,
};

enum class Property { top1, pos1, beats_m, swap };

std::string_view to_string(Kind kind);
std::string_view to_string(Variant variant);
std::string_view to_string(Statistic statistic);
std::string_view to_string(Property property);

Kind parse_kind(std::string_view text);
Variant parse_variant(std::string_view text);
Statistic parse_statistic(std::string_view text);
Property parse_property(std::string_view text);

bool is_monte_carlo(Kind kind);

inline constexpr std::size_t kDefaultTrials = 200;
inline constexpr std::size_t kDefaultN = 100;
inline constexpr std::size_t kDefaultMMax = 200;
inline const std::vector<std::size_t> kDefaultMGrid = {10, 20, 50, 100, 200};
inline const std::vector<std::size_t> kDefaultCoverageMGrid = {10, 100, 1000, 10000};

struct ExperimentConfig {
    Kind kind = Kind::swap_curve;
    Variant variant = Variant::both;
    std::vector<double> params;
    std::vector<std::size_t> m_grid = kDefaultMGrid;
    std::size_t n = kDefaultN;
    std::size_t trials = kDefaultTrials;
    std::uint64_t seed = 1;
    std::size_t m_max = kDefaultMMax;
    Statistic statistic = Statistic::max_plurality_score;
    Property property = Property::top1;
    std::string output_prefix = "experiment";
    bool svg = true;

    // Throws ConfigError naming the offending field.
    void validate() const;
    nlohmann::json to_json() const;
};

// Throws ConfigError on schema violations.
ExperimentConfig parse_experiment_config(const nlohmann::json& doc);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

} // namespace mallows::experiments

#include "mallows/experiment_config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <set>
#include <utility>

#include "mallows/errors.hpp"
#include "mallows/numeric.hpp"

namespace mallows::experiments {

namespace {

template <class E, std::size_t N>
using Names = std::array<std::pair<E, std::string_view>, N>;

constexpr Names<Kind, 10> kKindNames{{
    {Kind::swap_curve, "swap-curve"},
    {Kind::top1_curve, "top1-curve"},
    {Kind::pos1_curve, "pos1-curve"},
    {Kind::beats_m_curve, "beats-m-curve"},
    {Kind::plurality_winner_prob, "plurality-winner-prob"},
    {Kind::borda_winner_prob, "borda-winner-prob"},
    {Kind::condorcet_winner_prob, "condorcet-winner-prob"},
    {Kind::posdist_curve, "posdist-curve"},
    {Kind::deletion_compare, "deletion-compare"},
    {Kind::coverage_check, "coverage-check"},
}};

constexpr Names<Variant, 3> kVariantNames{{
    {Variant::classic, "classic"},
    {Variant::normalized, "normalized"},
    {Variant::both, "both"},
}};

constexpr Names<Statistic, 5> kStatisticNames{{
    {Statistic::max_plurality_score, "max-plurality-score"},
    {Statistic::plurality_winner_position, "plurality-winner-position"},
    {Statistic::posdist_id, "posdist-id"},
    {Statistic::plurality_is_borda, "plurality-is-borda"},
    {Statistic::plurality_is_condorcet, "plurality-is-condorcet"},
}};

constexpr Names<Property, 4> kPropertyNames{{
    {Property::top1, "top1"},
    {Property::pos1, "pos1"},
    {Property::beats_m, "beats-m"},
    {Property::swap, "swap"},
}};

template <class E, std::size_t N>
std::string_view name_of(const Names<E, N>& names, E value) {
    for (const auto& [e, s] : names) {
        if (e == value) return s;
    }
    return "?";
}

template <class E, std::size_t N>
E value_of(const Names<E, N>& names, std::string_view text, const char* what) {
    for (const auto& [e, s] : names) {
        if (s == text) return e;
    }
    std::string allowed;
    for (const auto& [e, s] : names) {
        if (!allowed.empty()) allowed += ", ";
        allowed += s;
    }
    throw ConfigError(std::string(what) + ": unknown value '" + std::string(text) + "' (expected one of " + allowed +
                      ")");
}

void reject_unknown(const nlohmann::json& section, const char* name, std::initializer_list<std::string_view> keys) {
    if (!section.is_object()) throw ConfigError(std::string(name) + ": must be an object");
    for (const auto& item : section.items()) {
        if (std::find(keys.begin(), keys.end(), item.key()) == keys.end()) {
            throw ConfigError(std::string(name) + "." + item.key() + ": unknown key");
        }
    }
}

std::string get_string(const nlohmann::json& v, const std::string& path) {
    if (!v.is_string()) throw ConfigError(path + ": must be a string");
    return v.get<std::string>();
}

std::uint64_t get_unsigned(const nlohmann::json& v, const std::string& path) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        throw ConfigError(path + ": must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

} // namespace

std::string_view to_string(Kind kind) { return name_of(kKindNames, kind); }
std::string_view to_string(Variant variant) { return name_of(kVariantNames, variant); }
std::string_view to_string(Statistic statistic) { return name_of(kStatisticNames, statistic); }
std::string_view to_string(Property property) { return name_of(kPropertyNames, property); }

Kind parse_kind(std::string_view text) { return value_of(kKindNames, text, "experiment.kind"); }
Variant parse_variant(std::string_view text) { return value_of(kVariantNames, text, "experiment.variant"); }
Statistic parse_statistic(std::string_view text) { return value_of(kStatisticNames, text, "experiment.statistic"); }
Property parse_property(std::string_view text) { return value_of(kPropertyNames, text, "experiment.property"); }

bool is_monte_carlo(Kind kind) {
    switch (kind) {
    case Kind::plurality_winner_prob:
    case Kind::borda_winner_prob:
    case Kind::condorcet_winner_prob:
    case Kind::posdist_curve:
    case Kind::deletion_compare:
        return true;
    default:
        return false;
    }
}

void ExperimentConfig::validate() const {
    if (params.empty()) throw ConfigError("grid.params: must not be empty");
    for (double p : params) {
        if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("grid.params: " + format_g17(p) + " is outside [0, 1]");
    }
    if (m_grid.empty()) throw ConfigError("grid.m: must not be empty");
    for (std::size_t m : m_grid) {
        if (m < 2) throw ConfigError("grid.m: " + std::to_string(m) + " is below 2");
    }
    if (std::set<std::size_t>(m_grid.begin(), m_grid.end()).size() != m_grid.size()) {
        throw ConfigError("grid.m: duplicate entries");
    }
    if (n < 1) throw ConfigError("sampling.n: must be at least 1");
    if (trials < 1) throw ConfigError("sampling.trials: must be at least 1");
    if (kind == Kind::deletion_compare) {
        const std::size_t largest = *std::max_element(m_grid.begin(), m_grid.end());
        if (m_max < largest) {
            throw ConfigError("sampling.m_max: " + std::to_string(m_max) + " is below the largest grid m " +
                              std::to_string(largest));
        }
    }
    if (output_prefix.empty()) throw ConfigError("output.prefix: must not be empty");
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json experiment = {{"kind", to_string(kind)}, {"variant", to_string(variant)}};
    if (kind == Kind::deletion_compare) experiment["statistic"] = to_string(statistic);
    if (kind == Kind::coverage_check) experiment["property"] = to_string(property);
    return {
        {"experiment", experiment},
        {"grid", {{"params", params}, {"m", m_grid}}},
        {"sampling", {{"n", n}, {"trials", trials}, {"seed", seed}, {"m_max", m_max}}},
        {"output", {{"prefix", output_prefix}, {"svg", svg}}},
    };
}

ExperimentConfig parse_experiment_config(const nlohmann::json& doc) {
    reject_unknown(doc, "config", {"experiment", "grid", "sampling", "output"});
    if (!doc.contains("experiment")) throw ConfigError("experiment: section is required");
    if (!doc.contains("grid")) throw ConfigError("grid: section is required");

    ExperimentConfig cfg;
    const auto& ex = doc["experiment"];
    reject_unknown(ex, "experiment", {"kind", "variant", "statistic", "property"});
    if (!ex.contains("kind")) throw ConfigError("experiment.kind: required");
    cfg.kind = parse_kind(get_string(ex["kind"], "experiment.kind"));
    if (ex.contains("variant")) cfg.variant = parse_variant(get_string(ex["variant"], "experiment.variant"));
    if (ex.contains("statistic")) {
        if (cfg.kind != Kind::deletion_compare) throw ConfigError("experiment.statistic: only for deletion-compare");
        cfg.statistic = parse_statistic(get_string(ex["statistic"], "experiment.statistic"));
    }
    if (ex.contains("property")) {
        if (cfg.kind != Kind::coverage_check) throw ConfigError("experiment.property: only for coverage-check");
        cfg.property = parse_property(get_string(ex["property"], "experiment.property"));
    }

    const auto& grid = doc["grid"];
    reject_unknown(grid, "grid", {"params", "m"});
    if (!grid.contains("params") || !grid["params"].is_array()) throw ConfigError("grid.params: required array");
    for (const auto& p : grid["params"]) {
        if (!p.is_number()) throw ConfigError("grid.params: entries must be numbers");
        cfg.params.push_back(p.get<double>());
    }
    if (cfg.kind == Kind::coverage_check) cfg.m_grid = kDefaultCoverageMGrid;
    if (grid.contains("m")) {
        if (!grid["m"].is_array()) throw ConfigError("grid.m: must be an array");
        cfg.m_grid.clear();
        for (const auto& m : grid["m"]) cfg.m_grid.push_back(get_unsigned(m, "grid.m"));
    }

    if (doc.contains("sampling")) {
        const auto& s = doc["sampling"];
        reject_unknown(s, "sampling", {"n", "trials", "seed", "m_max"});
        if (s.contains("n")) cfg.n = get_unsigned(s["n"], "sampling.n");
        if (s.contains("trials")) cfg.trials = get_unsigned(s["trials"], "sampling.trials");
        if (s.contains("seed")) cfg.seed = get_unsigned(s["seed"], "sampling.seed");
        if (s.contains("m_max")) cfg.m_max = get_unsigned(s["m_max"], "sampling.m_max");
    }
    if (doc.contains("output")) {
        const auto& o = doc["output"];
        reject_unknown(o, "output", {"prefix", "svg"});
        if (o.contains("prefix")) cfg.output_prefix = get_string(o["prefix"], "output.prefix");
        if (o.contains("svg")) {
            if (!o["svg"].is_boolean()) throw ConfigError("output.svg: must be true or false");
            cfg.svg = o["svg"].get<bool>();
        }
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return parse_experiment_config(doc);
}

} // namespace mallows::experiments

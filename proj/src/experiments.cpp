#include "mallows/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "mallows/analytic.hpp"
#include "mallows/errors.hpp"
#include "mallows/normalize.hpp"
#include "mallows/numeric.hpp"
#include "mallows/parallel.hpp"
#include "mallows/sampler.hpp"
#include "mallows/stats.hpp"
#include "mallows/svg.hpp"

namespace mallows::experiments {

namespace {

std::vector<Variant> concrete_variants(Variant v) {
    if (v == Variant::both) return {Variant::classic, Variant::normalized};
    return {v};
}

struct Summary {
    double mean = 0.0;
    double std_error = 0.0;
};

Summary summarize(const std::vector<double>& values) {
    CompensatedSum sum;
    for (double v : values) sum += v;
    const auto count = static_cast<double>(values.size());
    Summary out;
    out.mean = sum.value() / count;
    if (values.size() > 1) {
        CompensatedSum sq;
        for (double v : values) sq += (v - out.mean) * (v - out.mean);
        out.std_error = std::sqrt(sq.value() / (count - 1.0) / count);
    }
    return out;
}

Cell analytic_cell(Variant variant, double param, std::size_t m, double value) {
    Cell c;
    c.variant = std::string(to_string(variant));
    c.param = param;
    c.m = m;
    c.mean = value;
    return c;
}

Cell monte_carlo_cell(const ExperimentConfig& cfg, std::string variant, double param, std::size_t m,
                      const std::vector<double>& values) {
    const Summary s = summarize(values);
    Cell c;
    c.variant = std::move(variant);
    c.param = param;
    c.m = m;
    c.n = cfg.n;
    c.trials = values.size();
    c.mean = s.mean;
    c.std_error = s.std_error;
    c.seed = cfg.seed;
    return c;
}

Profile sample_at(double phi, std::size_t m, std::size_t n, std::uint64_t seed) {
    sampler::SamplerConfig sc;
    sc.dispersion = normalize::DispersionSpec::classic(phi);
    sc.m = m;
    sc.n = n;
    sc.seed = seed;
    return sampler::sample_profile(sc);
}

void require_kind(const ExperimentConfig& cfg, std::initializer_list<Kind> kinds, const char* who) {
    if (std::find(kinds.begin(), kinds.end(), cfg.kind) == kinds.end()) {
        throw ConfigError(std::string(who) + ": cannot run experiment kind " + std::string(to_string(cfg.kind)));
    }
    cfg.validate();
}

Property property_of(Kind kind) {
    switch (kind) {
    case Kind::top1_curve: return Property::top1;
    case Kind::pos1_curve: return Property::pos1;
    case Kind::beats_m_curve: return Property::beats_m;
    default: return Property::swap;
    }
}

void add_limits(CurveResult& out, Property property) {
    for (Variant v : concrete_variants(out.config.variant)) {
        for (double p : out.config.params) out.limits.push_back({std::string(to_string(v)), p, property_limit(property, v, p)});
    }
}

std::string y_label(const ExperimentConfig& cfg) {
    switch (cfg.kind) {
    case Kind::swap_curve: return "expected normalized swap distance";
    case Kind::top1_curve: return "normalized probability that c1 is ranked first";
    case Kind::pos1_curve: return "normalized expected position of c1";
    case Kind::beats_m_curve: return "normalized probability that c1 is ranked before cm";
    case Kind::plurality_winner_prob: return "fraction of profiles with c1 as Plurality winner";
    case Kind::borda_winner_prob: return "fraction of profiles with c1 as Borda winner";
    case Kind::condorcet_winner_prob: return "fraction of profiles with c1 as Condorcet winner";
    case Kind::posdist_curve: return "positionwise distance from ID";
    case Kind::deletion_compare:
        switch (cfg.statistic) {
        case Statistic::max_plurality_score: return "Plurality score of Plurality winner / n";
        case Statistic::plurality_winner_position: return "normalized average position of Plurality winner";
        case Statistic::posdist_id: return "positionwise distance from ID";
        case Statistic::plurality_is_borda: return "fraction where Plurality winner is Borda winner";
        case Statistic::plurality_is_condorcet: return "fraction where Plurality winner is Condorcet winner";
        }
        break;
    case Kind::coverage_check: return "g for property " + std::string(to_string(cfg.property));
    }
    return "value";
}

} // namespace

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) { return SplitMix64::stream_seed(seed, trial); }

double resolve_phi(Variant variant, double param, std::size_t m) {
    if (variant == Variant::both) throw DomainError("resolve_phi: variant must be classic or normalized");
    return variant == Variant::classic ? param : normalize::phi_from_normphi(param, m);
}

double property_value(Property property, double phi, std::size_t m) {
    switch (property) {
    case Property::top1: return analytic::g_top1(phi, m);
    case Property::pos1: return analytic::g_pos1(phi, m);
    case Property::beats_m: return analytic::g_1_beats_m(phi, m);
    case Property::swap: return analytic::g_swap(phi, m);
    }
    throw DomainError("property_value: unknown property");
}

double property_limit(Property property, Variant variant, double param) {
    if (variant == Variant::classic) {
        const bool uniform = param == 1.0;
        switch (property) {
        case Property::top1: return 1.0 - param;
        case Property::pos1: return uniform ? 1.0 : 0.0;
        case Property::beats_m: return uniform ? 0.0 : 1.0;
        case Property::swap: return uniform ? 1.0 : 0.0;
        }
    }
    // h_swap(0) is infinite; its limits are those of a degenerate model.
    const bool degenerate = param == 0.0;
    switch (property) {
    case Property::top1: return degenerate ? 1.0 : 0.0;
    case Property::pos1: return degenerate ? 0.0 : normalize::limit_pos1(param);
    case Property::beats_m: return degenerate ? 1.0 : normalize::limit_1_beats_m(param);
    case Property::swap: return param;
    }
    throw DomainError("property_limit: unknown property");
}

double statistic_value(Statistic statistic, const Profile& profile) {
    switch (statistic) {
    case Statistic::max_plurality_score:
    case Statistic::plurality_winner_position:
    case Statistic::plurality_is_borda:
    case Statistic::plurality_is_condorcet: {
        const stats::GroupStatistics s = stats::profile_statistics(profile);
        if (statistic == Statistic::max_plurality_score) return s.plurality_score;
        if (statistic == Statistic::plurality_winner_position) return s.winner_position;
        if (statistic == Statistic::plurality_is_borda) return s.plurality_is_borda;
        return s.plurality_is_condorcet;
    }
    case Statistic::posdist_id: return stats::positionwise_distance_from_id(profile);
    }
    throw DomainError("statistic_value: unknown statistic");
}

CurveResult run_swap_curve(const ExperimentConfig& cfg) {
    require_kind(cfg, {Kind::swap_curve}, "run_swap_curve");
    CurveResult out{cfg, {}, {}, {}, {}};
    for (Variant v : concrete_variants(cfg.variant)) {
        for (double p : cfg.params) {
            for (std::size_t m : cfg.m_grid) {
                // norm-phi is by definition the normalized swap distance.
                const double value = v == Variant::classic ? analytic::g_swap(p, m) : p;
                out.cells.push_back(analytic_cell(v, p, m, value));
            }
        }
    }
    add_limits(out, Property::swap);
    return out;
}

CurveResult run_property_curve(const ExperimentConfig& cfg) {
    require_kind(cfg, {Kind::top1_curve, Kind::pos1_curve, Kind::beats_m_curve}, "run_property_curve");
    const Property property = property_of(cfg.kind);
    CurveResult out{cfg, {}, {}, {}, {}};
    for (Variant v : concrete_variants(cfg.variant)) {
        for (double p : cfg.params) {
            for (std::size_t m : cfg.m_grid) {
                out.cells.push_back(analytic_cell(v, p, m, property_value(property, resolve_phi(v, p, m), m)));
            }
        }
    }
    add_limits(out, property);
    return out;
}

CurveResult run_winner_prob(const ExperimentConfig& cfg, unsigned threads) {
    require_kind(cfg, {Kind::plurality_winner_prob, Kind::borda_winner_prob, Kind::condorcet_winner_prob},
                 "run_winner_prob");
    CurveResult out{cfg, {}, {}, {}, {}};
    for (Variant v : concrete_variants(cfg.variant)) {
        for (double p : cfg.params) {
            for (std::size_t m : cfg.m_grid) {
                const double phi = resolve_phi(v, p, m);
                std::vector<double> hit(cfg.trials);
                std::vector<double> tie(cfg.trials);
                parallel_for(cfg.trials, threads, [&](std::size_t t) {
                    const Profile profile = sample_at(phi, m, cfg.n, trial_seed(cfg.seed, t));
                    if (cfg.kind == Kind::plurality_winner_prob) {
                        const stats::ScoreResult r = stats::plurality(profile);
                        hit[t] = r.winner == 0 ? 1.0 : 0.0;
                        tie[t] = r.tied ? 1.0 : 0.0;
                    } else if (cfg.kind == Kind::borda_winner_prob) {
                        const stats::ScoreResult r = stats::borda(profile);
                        hit[t] = r.winner == 0 ? 1.0 : 0.0;
                        tie[t] = r.tied ? 1.0 : 0.0;
                    } else {
                        const std::optional<AltId> w = stats::condorcet(profile);
                        hit[t] = w && *w == 0 ? 1.0 : 0.0;
                        tie[t] = w ? 0.0 : 1.0;
                    }
                });
                Cell c = monte_carlo_cell(cfg, std::string(to_string(v)), p, m, hit);
                c.tie_rate = summarize(tie).mean;
                out.cells.push_back(std::move(c));
            }
        }
    }
    return out;
}

CurveResult run_posdist_curve(const ExperimentConfig& cfg, unsigned threads) {
    require_kind(cfg, {Kind::posdist_curve}, "run_posdist_curve");
    CurveResult out{cfg, {}, {}, {}, {}};
    for (Variant v : concrete_variants(cfg.variant)) {
        for (double p : cfg.params) {
            for (std::size_t m : cfg.m_grid) {
                const double phi = resolve_phi(v, p, m);
                std::vector<double> values(cfg.trials);
                parallel_for(cfg.trials, threads, [&](std::size_t t) {
                    values[t] = stats::positionwise_distance_from_id(sample_at(phi, m, cfg.n, trial_seed(cfg.seed, t)));
                });
                out.cells.push_back(monte_carlo_cell(cfg, std::string(to_string(v)), p, m, values));
            }
        }
    }
    return out;
}

CurveResult run_deletion_compare(const ExperimentConfig& cfg, unsigned threads) {
    require_kind(cfg, {Kind::deletion_compare}, "run_deletion_compare");
    CurveResult out{cfg, {}, {}, {}, {}};
    const std::size_t cols = cfg.m_grid.size();
    for (Variant v : concrete_variants(cfg.variant)) {
        const std::string name(to_string(v));
        for (double p : cfg.params) {
            std::vector<double> phi_direct(cols);
            for (std::size_t k = 0; k < cols; ++k) phi_direct[k] = resolve_phi(v, p, cfg.m_grid[k]);
            const double phi_max = resolve_phi(v, p, cfg.m_max);

            // [k * trials + t]
            std::vector<double> direct(cols * cfg.trials);
            std::vector<double> deleted(cols * cfg.trials);
            parallel_for(cfg.trials, threads, [&](std::size_t t) {
                const std::uint64_t s = trial_seed(cfg.seed, t);
                const Profile big = sample_at(phi_max, cfg.m_max, cfg.n, s);
                for (std::size_t k = 0; k < cols; ++k) {
                    const std::size_t m = cfg.m_grid[k];
                    direct[k * cfg.trials + t] = statistic_value(cfg.statistic, sample_at(phi_direct[k], m, cfg.n, s));
                    SplitMix64 rng = SplitMix64::substream(s, m);
                    deleted[k * cfg.trials + t] = statistic_value(cfg.statistic, random_restriction(big, m, rng));
                }
            });
            for (std::size_t k = 0; k < cols; ++k) {
                const auto first = static_cast<std::ptrdiff_t>(k * cfg.trials);
                const auto last = first + static_cast<std::ptrdiff_t>(cfg.trials);
                out.cells.push_back(monte_carlo_cell(cfg, name + "-direct", p, cfg.m_grid[k],
                                                     {direct.begin() + first, direct.begin() + last}));
            }
            for (std::size_t k = 0; k < cols; ++k) {
                const auto first = static_cast<std::ptrdiff_t>(k * cfg.trials);
                const auto last = first + static_cast<std::ptrdiff_t>(cfg.trials);
                out.cells.push_back(monte_carlo_cell(cfg, name + "-deleted", p, cfg.m_grid[k],
                                                     {deleted.begin() + first, deleted.begin() + last}));
            }
        }
    }
    return out;
}

CurveResult run_coverage_check(const ExperimentConfig& cfg) {
    require_kind(cfg, {Kind::coverage_check}, "run_coverage_check");
    CurveResult out{cfg, {}, {}, {}, {}};
    const std::size_t largest = *std::max_element(cfg.m_grid.begin(), cfg.m_grid.end());
    for (Variant v : concrete_variants(cfg.variant)) {
        std::vector<CoverageRow> rows;
        for (double p : cfg.params) {
            CoverageRow row{std::string(to_string(v)), p, 0.0, 0.0};
            double lo = std::numeric_limits<double>::infinity();
            double hi = -lo;
            for (std::size_t m : cfg.m_grid) {
                const double value = v == Variant::normalized && cfg.property == Property::swap
                                         ? p
                                         : property_value(cfg.property, resolve_phi(v, p, m), m);
                out.cells.push_back(analytic_cell(v, p, m, value));
                if (m == largest) row.last = value;
                if (10 * m >= largest) {
                    lo = std::min(lo, value);
                    hi = std::max(hi, value);
                }
            }
            row.spread = hi - lo;
            out.coverage.push_back(row);
            if (p > 0.0 && p < 1.0) rows.push_back(row);
        }

        Verdict verdict{std::string(to_string(v)), "undetermined", 0.0, 0.0, 0.0};
        if (!rows.empty()) {
            double lo = rows.front().last;
            double hi = rows.front().last;
            double gap = std::numeric_limits<double>::infinity();
            for (std::size_t a = 0; a < rows.size(); ++a) {
                verdict.max_spread = std::max(verdict.max_spread, rows[a].spread);
                lo = std::min(lo, rows[a].last);
                hi = std::max(hi, rows[a].last);
                for (std::size_t b = a + 1; b < rows.size(); ++b) {
                    gap = std::min(gap, std::fabs(rows[a].last - rows[b].last));
                }
            }
            verdict.range = hi - lo;
            verdict.min_gap = rows.size() > 1 ? gap : 0.0;
            if (rows.size() > 1 && verdict.range < kCoverageGapTol) {
                verdict.verdict = "cannot-distinguish";
            } else if (verdict.max_spread <= kCoverageSpreadTol && (rows.size() == 1 || gap >= kCoverageGapTol)) {
                verdict.verdict = "covers";
            }
        }
        out.verdicts.push_back(verdict);
    }
    add_limits(out, cfg.property);
    return out;
}

CurveResult run_experiment(const ExperimentConfig& cfg, unsigned threads) {
    switch (cfg.kind) {
    case Kind::swap_curve: return run_swap_curve(cfg);
    case Kind::top1_curve:
    case Kind::pos1_curve:
    case Kind::beats_m_curve: return run_property_curve(cfg);
    case Kind::plurality_winner_prob:
    case Kind::borda_winner_prob:
    case Kind::condorcet_winner_prob: return run_winner_prob(cfg, threads);
    case Kind::posdist_curve: return run_posdist_curve(cfg, threads);
    case Kind::deletion_compare: return run_deletion_compare(cfg, threads);
    case Kind::coverage_check: return run_coverage_check(cfg);
    }
    throw ConfigError("run_experiment: unknown kind");
}

std::string curve_csv(const CurveResult& result) {
    std::ostringstream o;
    o << "kind,variant,param,m,n,trials,mean,stderr,seed\n";
    const std::string_view kind = to_string(result.config.kind);
    for (const Cell& c : result.cells) {
        o << kind << ',' << c.variant << ',' << format_g17(c.param) << ',' << c.m << ',' << c.n << ',' << c.trials
          << ',' << format_g17(c.mean) << ',' << format_g17(c.std_error) << ',' << c.seed << '\n';
    }
    return o.str();
}

std::string curve_svg(const CurveResult& result) {
    svg::Plot plot;
    plot.title = std::string(to_string(result.config.kind));
    plot.x_label = "number of alternatives m";
    plot.y_label = y_label(result.config);
    plot.log_x = result.config.kind == Kind::coverage_check;
    std::map<std::pair<std::string, double>, std::size_t> index;
    for (const Cell& c : result.cells) {
        auto [it, fresh] = index.emplace(std::make_pair(c.variant, c.param), plot.series.size());
        if (fresh) {
            svg::Series s;
            const bool classic = c.variant.rfind("classic", 0) == 0;
            s.label = c.variant + (classic ? " phi=" : " norm-phi=") + format_g17(c.param);
            if (result.config.kind == Kind::deletion_compare) {
                s.dashed = c.variant.find("-direct") != std::string::npos;
            } else {
                s.dashed = !classic;
            }
            plot.series.push_back(std::move(s));
        }
        plot.series[it->second].x.push_back(static_cast<double>(c.m));
        plot.series[it->second].y.push_back(c.mean);
    }
    return svg::render(plot);
}

nlohmann::json curve_metadata(const CurveResult& result) {
    nlohmann::json doc;
    doc["library_version"] = kLibraryVersion;
    doc["config"] = result.config.to_json();
    doc["rows"] = result.cells.size();
    nlohmann::json limits = nlohmann::json::array();
    for (const LimitLine& l : result.limits) {
        limits.push_back({{"variant", l.variant}, {"param", l.param}, {"limit", l.value}});
    }
    doc["limits"] = limits;
    nlohmann::json ties = nlohmann::json::array();
    for (const Cell& c : result.cells) {
        if (c.tie_rate) ties.push_back({{"variant", c.variant}, {"param", c.param}, {"m", c.m}, {"tie_rate", *c.tie_rate}});
    }
    if (!ties.empty()) doc["ties"] = ties;
    if (!result.coverage.empty()) {
        nlohmann::json rows = nlohmann::json::array();
        for (const CoverageRow& r : result.coverage) {
            rows.push_back({{"variant", r.variant}, {"param", r.param}, {"last", r.last}, {"spread", r.spread}});
        }
        doc["coverage"] = rows;
        nlohmann::json verdicts = nlohmann::json::array();
        for (const Verdict& v : result.verdicts) {
            verdicts.push_back({{"variant", v.variant},
                                {"verdict", v.verdict},
                                {"max_spread", v.max_spread},
                                {"min_gap", v.min_gap},
                                {"range", v.range}});
        }
        doc["verdicts"] = verdicts;
    }
    return doc;
}

void emit_outputs(const CurveResult& result, const std::filesystem::path& prefix) {
    if (prefix.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(prefix.parent_path(), ec);
        if (ec) throw IoError("cannot create " + prefix.parent_path().string() + ": " + ec.message());
    }
    auto write = [&](const std::string& suffix, const std::string& body) {
        const std::filesystem::path path = prefix.string() + suffix;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot write " + path.string());
        out << body;
        if (!out) throw IoError("error writing " + path.string());
    };
    write(".csv", curve_csv(result));
    write(".json", curve_metadata(result).dump(2) + "\n");
    if (result.config.svg) write(".svg", curve_svg(result));
}

} // namespace mallows::experiments

// Acceptance gates. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "mallows/analytic.hpp"
#include "mallows/errors.hpp"
#include "mallows/experiments.hpp"
#include "mallows/ingest.hpp"
#include "mallows/normalize.hpp"
#include "mallows/numeric.hpp"
#include "mallows/oracle.hpp"
#include "mallows/sampler.hpp"

using namespace mallows;
namespace fs = std::filesystem;
namespace ex = mallows::experiments;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Record {
    int id;
    std::string name;
    double limit_seconds;
    Outcome outcome;
    double seconds;
};

std::vector<Record> records;

// CSV outputs of sampling-based runs, replayed by the determinism check.
struct Replay {
    std::string name;
    std::string csv;
    std::function<std::string(unsigned)> rerun;
};
std::vector<Replay> replays;

unsigned hardware_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

void run(int id, const std::string& name, double limit_seconds, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > limit_seconds) {
        out.pass = false;
        out.detail += "; over time limit";
    }
    records.push_back({id, name, limit_seconds, out, seconds});
    std::printf("%s criterion %d: %s (%s; %.2f s of %.0f s)\n", out.pass ? "PASS" : "FAIL", id, name.c_str(),
                out.detail.c_str(), seconds, limit_seconds);
    std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

// 1 --------------------------------------------------------------------

Outcome oracle_equivalence() {
    double worst = 0;
    std::size_t checks = 0;
    for (std::size_t m = 2; m <= 6; ++m) {
        for (int k = 0; k <= 10; ++k) {
            const double phi = k / 10.0;
            const oracle::ExhaustiveTable table(phi, m);
            const Ranking centre = Ranking::identity(m);
            auto expect = [&](const std::function<double(const Ranking&)>& f) {
                CompensatedSum s;
                for (std::size_t r = 0; r < table.size(); ++r) s += table.weights()[r] * f(table.rankings()[r]);
                return s.value();
            };
            auto note = [&](double a, double b) {
                worst = std::max(worst, std::fabs(a - b));
                ++checks;
            };
            note(analytic::expected_swap_distance(phi, m),
                 expect([&](const Ranking& v) { return double(kendall_tau(centre, v)); }));
            for (std::size_t i = 1; i <= m; ++i) {
                note(analytic::pos1_pmf(i, phi, m),
                     expect([&](const Ranking& v) { return v.position_of(0) == i ? 1.0 : 0.0; }));
            }
            note(analytic::expected_position_c1(phi, m),
                 expect([](const Ranking& v) { return double(v.position_of(0)); }));
            for (std::size_t i = 1; i <= m; ++i) {
                for (std::size_t j = i + 1; j <= m; ++j) {
                    note(analytic::pairwise_beat_prob(i, j, phi), oracle::exact_pair_prob(phi, m, i, j));
                }
            }
        }
    }
    return {worst <= 1e-10, std::to_string(checks) + " values, max abs error " + fmt("%.3g", worst)};
}

// 2 --------------------------------------------------------------------

Outcome decomposition_agreement() {
    std::vector<double> phis;
    for (int k = 0; k <= 1000; ++k) phis.push_back(k / 1000.0 * (1.0 - 1e-6));
    for (double d : {1e-2, 1e-3, 1e-4, 1e-5, 2e-6, 1e-6}) phis.push_back(1.0 - d);
    double worst = 0;
    std::size_t checks = 0;
    for (std::size_t m = 1; m <= 500; ++m) {
        for (double phi : phis) {
            const double a = analytic::expected_swap_distance(phi, m);
            const double b = analytic::expected_swap_distance_closed_form(phi, m);
            const double scale = std::max(std::fabs(a), std::fabs(b));
            if (scale > 0) worst = std::max(worst, std::fabs(a - b) / scale);
            ++checks;
        }
    }
    return {worst <= 1e-10, std::to_string(checks) + " (phi, m) pairs, max rel error " + fmt("%.3g", worst)};
}

// 3 --------------------------------------------------------------------

Outcome conversion_round_trip() {
    double worst = 0;
    for (std::size_t m : {2u, 5u, 10u, 50u, 200u}) {
        for (int k = 0; k <= 20; ++k) {
            const double ell = k / 20.0;
            const double back = analytic::g_swap(normalize::phi_from_normphi(ell, m), m);
            worst = std::max(worst, std::fabs(back - ell));
        }
    }
    return {worst <= 1e-8, "105 points, max |g_swap(phi(l)) - l| " + fmt("%.3g", worst)};
}

// 4 --------------------------------------------------------------------

Outcome asymptotics() {
    const std::size_t m = 100000;
    double worst_h = 0;
    for (double ell : {0.2, 0.5, 0.8}) {
        const double phi = normalize::phi_from_normphi(ell, m);
        const double h = normalize::h_swap(ell);
        worst_h = std::max(worst_h, std::fabs((1.0 - phi) * m - h) / h);
    }
    double worst_r = 0;
    for (double L : {0.1, 1.0, 5.0, 20.0}) {
        const double q = 4.0 * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
                                   [L](double s) { return normalize::gamma_integrand(s, L); }, 0.0, 1.0, 15, 1e-15);
        worst_r = std::max(worst_r, std::fabs(normalize::r_of_L(L) - q));
    }
    return {worst_h < 1e-2 && worst_r <= 1e-9,
            "max rel error of (1-phi)m vs h " + fmt("%.3g", worst_h) + ", max |r - quadrature| " + fmt("%.3g", worst_r)};
}

// 5 --------------------------------------------------------------------

Outcome limit_functions() {
    const std::size_t m = 2000;
    double worst_pos = 0, worst_beat = 0;
    for (double ell : {0.25, 0.5, 0.75}) {
        const double phi = normalize::phi_from_normphi(ell, m);
        worst_pos = std::max(worst_pos, std::fabs(analytic::g_pos1(phi, m) - normalize::limit_pos1(ell)));
        worst_beat = std::max(worst_beat, std::fabs(analytic::g_1_beats_m(phi, m) - normalize::limit_1_beats_m(ell)));
    }
    // Undo the (m/(m-1))(p - 1/m) rescaling to recover P(c1 first), which
    // tends to 1 - phi.
    const std::size_t mt = 200;
    double worst_top = 0;
    for (double phi : {0.3, 0.5, 0.7}) {
        const double g = analytic::g_top1(phi, mt);
        const double p = g * (mt - 1.0) / mt + 1.0 / mt;
        worst_top = std::max(worst_top, std::fabs(p - (1.0 - phi)));
    }
    return {worst_pos < 1e-2 && worst_beat < 1e-2 && worst_top < 1e-3,
            "pos1 " + fmt("%.3g", worst_pos) + ", 1-beats-m " + fmt("%.3g", worst_beat) + ", classic top1 " +
                fmt("%.3g", worst_top)};
}

// 6 --------------------------------------------------------------------

std::vector<std::size_t> s4_counts(double phi, std::size_t samples, std::uint64_t seed) {
    std::vector<std::size_t> counts(24, 0);
    const sampler::InsertionTable table(phi, 4);
    SplitMix64 rng(seed);
    for (std::size_t s = 0; s < samples; ++s) ++counts[sampler::permutation_rank(sampler::rim_sample(table, rng).order())];
    return counts;
}

std::string counts_csv(double phi, const std::vector<std::size_t>& counts) {
    std::string out;
    for (std::size_t r = 0; r < counts.size(); ++r) out += format_g17(phi) + "," + std::to_string(r) + "," + std::to_string(counts[r]) + "\n";
    return out;
}

Outcome sampler_fidelity() {
    const std::size_t samples = 1000000;
    const double critical =
        boost::math::quantile(boost::math::complement(boost::math::chi_squared(23.0), 0.001));
    bool pass = true;
    std::string detail;
    for (double phi : {0.3, 0.7}) {
        const std::uint64_t seed = phi < 0.5 ? 301 : 701;
        const auto counts = s4_counts(phi, samples, seed);
        const oracle::ExhaustiveTable table(phi, 4);
        double stat = 0;
        for (std::size_t r = 0; r < 24; ++r) {
            const double e = table.weights()[r] * samples;
            stat += (counts[r] - e) * (counts[r] - e) / e;
        }
        pass = pass && stat < critical;
        detail += "chi2(phi=" + fmt("%.1f", phi) + ") " + fmt("%.2f", stat) + " < " + fmt("%.2f", critical) + ", ";
        replays.push_back({"sampler counts phi=" + fmt("%.1f", phi), counts_csv(phi, counts),
                           [phi, seed, samples](unsigned) { return counts_csv(phi, s4_counts(phi, samples, seed)); }});
    }
    const std::size_t n = 100000;
    const sampler::InsertionTable table(0.5, 10);
    SplitMix64 rng(510);
    const Ranking centre = Ranking::identity(10);
    double sum = 0, sq = 0;
    for (std::size_t s = 0; s < n; ++s) {
        const double k = static_cast<double>(kendall_tau(centre, sampler::rim_sample(table, rng)));
        sum += k;
        sq += k * k;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sq / n - mean * mean) / (n - 1));
    const double z = std::fabs(mean - 7.26769) / se;
    pass = pass && z <= 3;
    detail += "mean kappa " + fmt("%.5f", mean) + " (" + fmt("%.2f", z) + " SE from 7.26769)";
    return {pass, detail};
}

// 7 --------------------------------------------------------------------

const ex::Cell& cell(const ex::CurveResult& r, const std::string& variant, std::size_t m) {
    for (const ex::Cell& c : r.cells)
        if (c.variant == variant && c.m == m) return c;
    throw std::runtime_error("missing cell " + variant + " m=" + std::to_string(m));
}

ex::ExperimentConfig mc_config(ex::Kind kind, std::vector<std::size_t> grid) {
    ex::ExperimentConfig cfg;
    cfg.kind = kind;
    cfg.variant = ex::Variant::both;
    cfg.params = {0.5};
    cfg.m_grid = std::move(grid);
    cfg.n = 100;
    cfg.trials = 200;
    cfg.seed = 1;
    cfg.m_max = 200;
    return cfg;
}

ex::CurveResult replayed(const std::string& name, const ex::ExperimentConfig& cfg) {
    ex::CurveResult r = ex::run_experiment(cfg, hardware_threads());
    replays.push_back({name, ex::curve_csv(r), [cfg](unsigned t) { return ex::curve_csv(ex::run_experiment(cfg, t)); }});
    return r;
}

Outcome curve_patterns() {
    const std::vector<std::size_t> grid{20, 50, 100, 200};
    bool pass = true;
    std::string detail;

    // (a)
    {
        ex::ExperimentConfig cfg = mc_config(ex::Kind::swap_curve, {10, 20, 50, 100, 200});
        const ex::CurveResult r = ex::run_experiment(cfg);
        bool decreasing = true, flat = true;
        for (std::size_t k = 0; k < cfg.m_grid.size(); ++k) {
            if (k > 0) decreasing = decreasing && cell(r, "classic", cfg.m_grid[k]).mean < cell(r, "classic", cfg.m_grid[k - 1]).mean;
            flat = flat && cell(r, "normalized", cfg.m_grid[k]).mean == 0.5;
        }
        const bool ok = decreasing && flat;
        pass = pass && ok;
        detail += std::string("(a) ") + (ok ? "ok" : "fail") + " classic " + fmt("%.4f", cell(r, "classic", 10).mean) +
                  "->" + fmt("%.4f", cell(r, "classic", 200).mean) + ", normalized flat " + (flat ? "yes" : "no");
    }
    // (b)
    {
        const ex::CurveResult r = replayed("plurality-winner-prob", mc_config(ex::Kind::plurality_winner_prob, grid));
        double lo = 1, hi = 0;
        for (std::size_t m : grid) {
            lo = std::min(lo, cell(r, "classic", m).mean);
            hi = std::max(hi, cell(r, "classic", m).mean);
        }
        const double drop = cell(r, "normalized", 20).mean - cell(r, "normalized", 200).mean;
        const bool ok = hi - lo < 0.1 && drop > 0.1;
        pass = pass && ok;
        detail += std::string("; (b) ") + (ok ? "ok" : "fail") + " classic spread " + fmt("%.3f", hi - lo) +
                  ", normalized drop " + fmt("%.3f", drop);
    }
    // (c)
    {
        const ex::CurveResult r = replayed("posdist-curve", mc_config(ex::Kind::posdist_curve, grid));
        double lo = 1e9, hi = -1e9;
        bool decreasing = true;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            lo = std::min(lo, cell(r, "normalized", grid[k]).mean);
            hi = std::max(hi, cell(r, "normalized", grid[k]).mean);
            if (k > 0) decreasing = decreasing && cell(r, "classic", grid[k]).mean < cell(r, "classic", grid[k - 1]).mean;
        }
        const bool ok = hi - lo < 0.05 && decreasing;
        pass = pass && ok;
        detail += std::string("; (c) ") + (ok ? "ok" : "fail") + " normalized spread " + fmt("%.4f", hi - lo) +
                  ", classic decreasing " + (decreasing ? "yes" : "no");
    }
    // (d)
    {
        ex::ExperimentConfig cfg = mc_config(ex::Kind::deletion_compare, grid);
        cfg.statistic = ex::Statistic::max_plurality_score;
        const ex::CurveResult r = replayed("deletion-compare", cfg);
        double worst_z = 0;
        for (std::size_t m : grid) {
            const ex::Cell& a = cell(r, "normalized-direct", m);
            const ex::Cell& b = cell(r, "normalized-deleted", m);
            const double band = 3 * (a.std_error + b.std_error);
            const double z = band > 0 ? std::fabs(a.mean - b.mean) / band : (a.mean == b.mean ? 0.0 : 1e9);
            worst_z = std::max(worst_z, z);
        }
        const ex::Cell& a = cell(r, "classic-direct", 20);
        const ex::Cell& b = cell(r, "classic-deleted", 20);
        const double sep = std::fabs(a.mean - b.mean) / (3 * (a.std_error + b.std_error));
        const bool ok = worst_z <= 1 && sep > 1;
        pass = pass && ok;
        detail += std::string("; (d) ") + (ok ? "ok" : "fail") + " normalized max |diff|/3sigma " +
                  fmt("%.2f", worst_z) + ", classic m=20 |diff|/3sigma " + fmt("%.2f", sep);
    }
    return {pass, detail};
}

// 8 --------------------------------------------------------------------

// Profile file with one extra alternative that only some rankings list, so
// the cleaning step has something to remove.
void write_with_partial_alternative(const fs::path& path, const Profile& p) {
    const std::size_t m = p.num_alternatives();
    std::ofstream out(path);
    for (std::size_t a = 1; a <= m + 1; ++a) out << "alt " << a << " c" << a << "\n";
    for (std::size_t i = 0; i < p.num_rankings(); ++i) {
        std::vector<std::uint64_t> ids;
        for (AltId a : p[i].order()) ids.push_back(a + 1);
        if (i % 2 == 0) ids.insert(ids.begin() + static_cast<std::ptrdiff_t>(i % (m + 1)), m + 1);
        for (std::size_t k = 0; k < ids.size(); ++k) out << (k ? "," : "") << ids[k];
        out << "\n";
    }
    if (!out) throw IoError("cannot write " + path.string());
}

Profile sample(double ell, std::size_t m, std::size_t n, std::uint64_t seed) {
    sampler::SamplerConfig cfg;
    cfg.dispersion = normalize::DispersionSpec::normalized(ell);
    cfg.m = m;
    cfg.n = n;
    cfg.seed = seed;
    return sampler::sample_profile(cfg, hardware_threads());
}

Outcome ingest_pipeline() {
    const fs::path root = fs::path(MALLOWS_TEST_TMPDIR) / "acceptance";
    fs::remove_all(root);
    fs::create_directories(root / "scatter");
    fs::create_directories(root / "groups" / "small");
    fs::create_directories(root / "groups" / "large");

    std::vector<fs::path> paths;
    std::vector<std::string> labels;
    std::vector<std::size_t> ms;
    std::uint64_t seed = 800;
    for (std::size_t m = 20; m <= 200; m += 20) {
        for (int rep = 0; rep < 3; ++rep) {
            paths.push_back(root / "scatter" / ("m" + std::to_string(m) + "_" + std::to_string(rep) + ".txt"));
            write_with_partial_alternative(paths.back(), sample(0.5, m, 100, seed++));
            labels.push_back("l=0.5");
            ms.push_back(m);
        }
    }
    const auto points = ingest::dataset_scatter(paths, labels, hardware_threads());
    double lo = 1e9, hi = -1e9;
    bool cleaned = true;
    for (std::size_t k = 0; k < points.size(); ++k) {
        cleaned = cleaned && points[k].m == ms[k] && points[k].n == 100;
        lo = std::min(lo, points[k].distance);
        hi = std::max(hi, points[k].distance);
    }
    auto scatter_csv = [paths, labels](unsigned t) {
        std::ostringstream s;
        ingest::write_scatter_csv(s, ingest::dataset_scatter(paths, labels, t));
        return s.str();
    };
    {
        std::ostringstream s;
        ingest::write_scatter_csv(s, points);
        replays.push_back({"dataset scatter", s.str(), scatter_csv});
    }

    for (int i = 0; i < 20; ++i) {
        write_with_partial_alternative(root / "groups" / "small" / ("p" + std::to_string(i) + ".txt"),
                                       sample(0.05, 125, 100, 9000 + i));
        write_with_partial_alternative(root / "groups" / "large" / ("p" + std::to_string(i) + ".txt"),
                                       sample(0.05, 245, 100, 9500 + i));
    }
    std::ofstream(root / "groups" / "manifest.json")
        << R"({"groups": [{"label": "m=125", "files": ["small/*.txt"]}, {"label": "m=245", "files": ["large/*.txt"]}]})";
    const auto rows = ingest::group_report(ingest::load_group_manifest(root / "groups" / "manifest.json"),
                                           hardware_threads());
    const double pos_diff = std::fabs(rows[0].statistics.winner_position - rows[1].statistics.winner_position);
    const double score_diff = std::fabs(rows[0].statistics.plurality_score - rows[1].statistics.plurality_score);

    const bool pass = cleaned && hi - lo < 0.1 && pos_diff < 0.01 && score_diff > 0.05;
    return {pass, std::to_string(points.size()) + " files, cleaned " + (cleaned ? "yes" : "no") + ", scatter spread " +
                      fmt("%.4f", hi - lo) + "; groups: position diff " + fmt("%.4f", pos_diff) + ", score diff " +
                      fmt("%.4f", score_diff)};
}

// 9 --------------------------------------------------------------------

Outcome determinism() {
    bool pass = !replays.empty();
    std::string mismatches;
    for (const Replay& r : replays) {
        for (unsigned t : {1u, 4u}) {
            if (r.rerun(t) != r.csv) {
                pass = false;
                mismatches += " " + r.name + "@" + std::to_string(t);
            }
        }
    }
    return {pass, std::to_string(replays.size()) + " sampling outputs rerun at 1 and 4 threads" +
                      (mismatches.empty() ? ", all byte-identical" : ", mismatch:" + mismatches)};
}

} // namespace

int main() {
    run(1, "oracle equivalence", 10, oracle_equivalence);
    run(2, "expected swap distance evaluation paths", 5, decomposition_agreement);
    run(3, "conversion round trip", 5, conversion_round_trip);
    run(4, "asymptotics", 30, asymptotics);
    run(5, "limit functions", 10, limit_functions);
    run(6, "sampler fidelity", 60, sampler_fidelity);
    run(7, "curve patterns", 600, curve_patterns);
    run(8, "ingest pipeline", 300, ingest_pipeline);
    run(9, "determinism", 1800, determinism);
    const auto failed = std::count_if(records.begin(), records.end(), [](const Record& r) { return !r.outcome.pass; });
    std::printf("%zu/%zu criteria passed\n", records.size() - static_cast<std::size_t>(failed), records.size());
    return failed == 0 ? 0 : 1;
}

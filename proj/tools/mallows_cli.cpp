#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mallows/analytic.hpp"
#include "mallows/errors.hpp"
#include "mallows/experiments.hpp"
#include "mallows/ingest.hpp"
#include "mallows/normalize.hpp"
#include "mallows/numeric.hpp"
#include "mallows/sampler.hpp"
#include "mallows/stats.hpp"

namespace {

using namespace mallows;

struct SampleArgs {
    std::string model = "classic";
    double param = 0.0;
    std::size_t m = 0;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::string out;
    unsigned threads = 1;
};

int run_sample(const SampleArgs& a) {
    sampler::SamplerConfig cfg;
    cfg.dispersion = a.model == "classic" ? normalize::DispersionSpec::classic(a.param)
                                          : normalize::DispersionSpec::normalized(a.param);
    cfg.m = a.m;
    cfg.n = a.n;
    cfg.seed = a.seed;
    const Profile profile = sampler::sample_profile(cfg, a.threads);
    if (a.out.empty() || a.out == "-") {
        ingest::write_profile(std::cout, profile);
    } else {
        ingest::write_profile(std::filesystem::path(a.out), profile);
    }
    return 0;
}

int run_convert(const std::string& from, double value, std::size_t m) {
    const double out = from == "phi" ? normalize::normphi_from_phi(value, m) : normalize::phi_from_normphi(value, m);
    std::printf("%s\n", format_g17(out).c_str());
    return 0;
}

int run_stats(const std::string& in, bool json, bool complete) {
    const ingest::ParsedProfile parsed = ingest::parse_profile(std::filesystem::path(in));
    if (!parsed.complete() && !complete) {
        throw DomainError(in + ": profile has incomplete rankings; rerun with --complete to restrict to the "
                               "alternatives ranked everywhere");
    }
    const Profile profile = complete ? ingest::complete_by_intersection(parsed) : parsed.to_profile();
    const auto alts = profile.alternatives();
    const stats::WinnerReport report = stats::winner_report(profile);
    const stats::FrequencyMatrix freq = stats::frequency_matrix(profile);
    const std::size_t m = profile.num_alternatives();
    const bool has_distance = m >= 2;
    const double distance = has_distance ? stats::positionwise_distance_from_id(freq) : 0.0;

    if (json) {
        nlohmann::json doc;
        doc["m"] = m;
        doc["n"] = profile.num_rankings();
        doc["plurality_winner"] = alts[report.plurality_winner].id;
        doc["plurality_score"] = report.plurality_score;
        doc["plurality_tied"] = report.plurality_tied;
        doc["borda_winner"] = alts[report.borda_winner].id;
        doc["borda_tied"] = report.borda_tied;
        doc["condorcet_winner"] =
            report.condorcet_winner ? nlohmann::json(alts[*report.condorcet_winner].id) : nlohmann::json(nullptr);
        doc["positionwise_distance_from_id"] = has_distance ? nlohmann::json(distance) : nlohmann::json(nullptr);
        nlohmann::json matrix = nlohmann::json::array();
        for (std::size_t p = 1; p <= m; ++p) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t c = 0; c < m; ++c) row.push_back(freq(p, static_cast<AltId>(c)));
            matrix.push_back(row);
        }
        doc["alternatives"] = nlohmann::json::array();
        for (const Alternative& a : alts) doc["alternatives"].push_back({{"id", a.id}, {"name", a.name}});
        doc["frequency_matrix"] = matrix;
        std::cout << doc.dump(2) << '\n';
        return 0;
    }

    std::cout << "m," << m << "\nn," << profile.num_rankings() << '\n';
    std::cout << "plurality_winner," << alts[report.plurality_winner].id << '\n';
    std::cout << "plurality_score," << report.plurality_score << '\n';
    std::cout << "borda_winner," << alts[report.borda_winner].id << '\n';
    std::cout << "condorcet_winner,";
    if (report.condorcet_winner) std::cout << alts[*report.condorcet_winner].id;
    std::cout << "\npositionwise_distance_from_id,";
    if (has_distance) std::cout << format_g17(distance);
    std::cout << "\n\nposition";
    for (const Alternative& a : alts) std::cout << ',' << a.id;
    std::cout << '\n';
    for (std::size_t p = 1; p <= m; ++p) {
        std::cout << p;
        for (std::size_t c = 0; c < m; ++c) std::cout << ',' << format_g17(freq(p, static_cast<AltId>(c)));
        std::cout << '\n';
    }
    return 0;
}

int run_experiment(const std::string& config, unsigned threads, const std::string& out) {
    experiments::ExperimentConfig cfg = experiments::load_experiment_config(config);
    if (!out.empty()) cfg.output_prefix = out;
    const experiments::CurveResult result = experiments::run_experiment(cfg, threads);
    experiments::emit_outputs(result, cfg.output_prefix);
    std::cerr << "wrote " << cfg.output_prefix << ".csv (" << result.cells.size() << " rows)\n";
    for (const experiments::Verdict& v : result.verdicts) std::cerr << v.variant << ": " << v.verdict << '\n';
    return 0;
}

void write_text(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << body;
}

int run_analyze(const std::string& pattern, const std::string& label_from, const std::string& groups,
                const std::string& out, unsigned threads) {
    if (!groups.empty()) {
        const auto rows = ingest::group_report(ingest::load_group_manifest(groups), threads);
        if (out.empty() || out == "-") {
            ingest::write_group_report_csv(std::cout, rows);
        } else {
            std::ofstream file(out.ends_with(".csv") ? out : out + ".csv");
            if (!file) throw IoError("cannot write " + out);
            ingest::write_group_report_csv(file, rows);
        }
        return 0;
    }
    const auto paths = ingest::expand_glob(pattern);
    const ingest::LabelFrom from = label_from == "dir" ? ingest::LabelFrom::dir : ingest::LabelFrom::filename;
    std::vector<std::string> labels;
    for (const auto& p : paths) labels.push_back(ingest::label_for(p, from));
    const auto points = ingest::dataset_scatter(paths, labels, threads);
    std::ostringstream csv;
    ingest::write_scatter_csv(csv, points);
    write_text(out + ".csv", csv.str());
    write_text(out + ".svg", ingest::scatter_svg(points));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Classic and normalized Mallows models: sampling, conversion, statistics, experiments"};
    app.require_subcommand(1);

    SampleArgs sample;
    auto* cmd_sample = app.add_subcommand("sample", "Sample a profile and write it as a ranking file");
    cmd_sample->add_option("--model", sample.model, "classic or normalized")
        ->check(CLI::IsMember({"classic", "normalized"}))
        ->required();
    cmd_sample->add_option("--param", sample.param, "phi or norm-phi in [0, 1]")->required()->check(CLI::Range(0.0, 1.0));
    cmd_sample->add_option("--m", sample.m, "number of alternatives")->required()->check(CLI::PositiveNumber);
    cmd_sample->add_option("--n", sample.n, "number of rankings")->required()->check(CLI::PositiveNumber);
    cmd_sample->add_option("--seed", sample.seed, "64-bit seed")->required();
    cmd_sample->add_option("--out", sample.out, "output file ('-' for stdout)");
    cmd_sample->add_option("--threads", sample.threads, "worker threads")->check(CLI::PositiveNumber);

    std::string convert_from;
    double convert_value = 0.0;
    std::size_t convert_m = 0;
    auto* cmd_convert = app.add_subcommand("convert", "Convert between phi and norm-phi");
    cmd_convert->add_option("--from", convert_from, "phi or normphi")
        ->check(CLI::IsMember({"phi", "normphi"}))
        ->required();
    cmd_convert->add_option("--value", convert_value, "value in [0, 1]")->required();
    cmd_convert->add_option("--m", convert_m, "number of alternatives (>= 2)")->required();

    std::string stats_in;
    bool stats_json = false;
    bool stats_complete = false;
    auto* cmd_stats = app.add_subcommand("stats", "Winners, frequency matrix and positionwise distance of a file");
    cmd_stats->add_option("--in", stats_in, "ranking file")->required();
    cmd_stats->add_flag("--json", stats_json, "print JSON");
    cmd_stats->add_flag("--complete", stats_complete, "restrict to alternatives present in every ranking");

    std::string exp_config;
    std::string exp_out;
    unsigned exp_threads = 1;
    auto* cmd_exp = app.add_subcommand("experiment", "Run a config-driven experiment");
    cmd_exp->add_option("--config", exp_config, "JSON config file")->required();
    cmd_exp->add_option("--threads", exp_threads, "worker threads")->check(CLI::PositiveNumber);
    cmd_exp->add_option("--out", exp_out, "override output.prefix");

    std::string an_glob;
    std::string an_label = "filename";
    std::string an_groups;
    std::string an_out;
    unsigned an_threads = 1;
    auto* cmd_an = app.add_subcommand("analyze", "Scatter or group report over ranking files");
    auto* opt_glob = cmd_an->add_option("--glob", an_glob, "file pattern");
    cmd_an->add_option("--label-from", an_label, "filename or dir")->check(CLI::IsMember({"filename", "dir"}));
    auto* opt_groups = cmd_an->add_option("--groups", an_groups, "JSON group manifest");
    cmd_an->add_option("--out", an_out, "output prefix (scatter) or CSV file (groups)");
    cmd_an->add_option("--threads", an_threads, "worker threads")->check(CLI::PositiveNumber);
    opt_glob->excludes(opt_groups);
    opt_groups->excludes(opt_glob);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_sample) return run_sample(sample);
        if (*cmd_convert) return run_convert(convert_from, convert_value, convert_m);
        if (*cmd_stats) return run_stats(stats_in, stats_json, stats_complete);
        if (*cmd_exp) return run_experiment(exp_config, exp_threads, exp_out);
        if (*cmd_an) {
            if (an_glob.empty() == an_groups.empty()) throw ConfigError("analyze: give exactly one of --glob, --groups");
            if (!an_glob.empty() && an_out.empty()) throw ConfigError("analyze --glob: --out is required");
            return run_analyze(an_glob, an_label, an_groups, an_out, an_threads);
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

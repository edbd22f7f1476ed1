#include "mallows/ingest.hpp"

#include <glob.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "mallows/errors.hpp"
#include "mallows/numeric.hpp"
#include "mallows/parallel.hpp"
#include "mallows/svg.hpp"

namespace mallows::ingest {

namespace {

std::string_view trim(std::string_view s) {
    const auto not_space = [](char c) { return c != ' ' && c != '\t' && c != '\r' && c != '\n'; };
    while (!s.empty() && !not_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && !not_space(s.back())) s.remove_suffix(1);
    return s;
}

// Positive decimal integer, nothing else.
bool parse_positive(std::string_view text, std::uint64_t& out) {
    text = trim(text);
    if (text.empty()) return false;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc() && ptr == text.data() + text.size() && out > 0;
}

bool is_alt_line(std::string_view line) {
    return line.size() >= 3 && line.substr(0, 3) == "alt" && (line.size() == 3 || line[3] == ' ' || line[3] == '\t');
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

Profile load_completed(const std::filesystem::path& path) { return complete_by_intersection(parse_profile(path)); }

} // namespace

bool ParsedProfile::complete() const {
    return std::none_of(rankings.begin(), rankings.end(), [](const ParsedRanking& r) { return r.incomplete; });
}

Profile ParsedProfile::to_profile() const {
    std::vector<Ranking> out;
    out.reserve(rankings.size());
    for (const ParsedRanking& r : rankings) {
        if (r.incomplete) {
            throw DomainError(source + ":" + std::to_string(r.line) + ": ranking is incomplete");
        }
        out.emplace_back(r.order);
    }
    return Profile(alternatives, std::move(out));
}

ParsedProfile parse_profile(std::istream& in, const std::string& source) {
    ParsedProfile out;
    out.source = source;
    std::map<std::uint64_t, std::string> declared;
    std::map<std::uint64_t, AltId> index;
    bool in_body = false;

    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;

        if (is_alt_line(line)) {
            if (in_body) throw ParseError(source, line_no, "alt declaration after the first ranking");
            const std::string_view rest = trim(line.substr(3));
            const std::size_t cut = rest.find_first_of(" \t");
            std::uint64_t id = 0;
            if (!parse_positive(rest.substr(0, cut), id)) {
                throw ParseError(source, line_no, "alternative id must be a positive integer");
            }
            const std::string name(cut == std::string_view::npos ? std::string_view{} : trim(rest.substr(cut)));
            if (!declared.emplace(id, name).second) {
                throw ParseError(source, line_no, "alternative " + std::to_string(id) + " declared twice");
            }
            continue;
        }

        if (!in_body) {
            in_body = true;
            for (const auto& [id, name] : declared) {
                index.emplace(id, static_cast<AltId>(out.alternatives.size()));
                out.alternatives.push_back({id, name});
            }
        }

        std::string_view body = line;
        std::uint64_t multiplicity = 1;
        if (const std::size_t colon = body.find(':'); colon != std::string_view::npos) {
            if (!parse_positive(body.substr(0, colon), multiplicity)) {
                throw ParseError(source, line_no, "multiplicity must be a positive integer");
            }
            body = body.substr(colon + 1);
        }
        if (trim(body).empty()) throw ParseError(source, line_no, "empty ranking");

        ParsedRanking ranking;
        ranking.line = line_no;
        std::vector<bool> seen(out.alternatives.size(), false);
        while (true) {
            const std::size_t comma = body.find(',');
            std::uint64_t id = 0;
            if (!parse_positive(body.substr(0, comma), id)) {
                throw ParseError(source, line_no, "expected a positive integer id, got '" +
                                                      std::string(trim(body.substr(0, comma))) + "'");
            }
            const auto it = index.find(id);
            if (it == index.end()) throw ParseError(source, line_no, "unknown alternative " + std::to_string(id));
            if (seen[it->second]) throw ParseError(source, line_no, "alternative " + std::to_string(id) + " repeated");
            seen[it->second] = true;
            ranking.order.push_back(it->second);
            if (comma == std::string_view::npos) break;
            body = body.substr(comma + 1);
        }
        ranking.incomplete = ranking.order.size() < out.alternatives.size();
        for (std::uint64_t k = 0; k < multiplicity; ++k) out.rankings.push_back(ranking);
    }
    if (out.rankings.empty()) throw ParseError(source, line_no, "no rankings");
    return out;
}

ParsedProfile parse_profile(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    return parse_profile(in, path.string());
}

void write_profile(std::ostream& out, const Profile& profile) {
    const auto alts = profile.alternatives();
    std::vector<std::size_t> by_id(alts.size());
    for (std::size_t a = 0; a < alts.size(); ++a) by_id[a] = a;
    std::sort(by_id.begin(), by_id.end(), [&](std::size_t a, std::size_t b) { return alts[a].id < alts[b].id; });
    for (std::size_t a : by_id) {
        out << "alt " << alts[a].id;
        if (!alts[a].name.empty()) out << ' ' << alts[a].name;
        out << '\n';
    }
    for (const Ranking& v : profile.rankings()) {
        const auto order = v.order();
        for (std::size_t p = 0; p < order.size(); ++p) {
            if (p) out << ',';
            out << alts[order[p]].id;
        }
        out << '\n';
    }
}

void write_profile(const std::filesystem::path& path, const Profile& profile) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    write_profile(out, profile);
    if (!out) throw IoError("error writing " + path.string());
}

Profile complete_by_intersection(const ParsedProfile& parsed) {
    const std::size_t m = parsed.alternatives.size();
    std::vector<std::size_t> present(m, 0);
    for (const ParsedRanking& r : parsed.rankings) {
        for (AltId a : r.order) ++present[a];
    }
    std::vector<AltId> remap(m, static_cast<AltId>(-1));
    std::vector<Alternative> kept;
    for (std::size_t a = 0; a < m; ++a) {
        if (present[a] == parsed.rankings.size()) {
            remap[a] = static_cast<AltId>(kept.size());
            kept.push_back(parsed.alternatives[a]);
        }
    }
    if (kept.empty()) throw DomainError(parsed.source + ": no alternative appears in every ranking");

    std::vector<Ranking> rankings;
    rankings.reserve(parsed.rankings.size());
    for (const ParsedRanking& r : parsed.rankings) {
        std::vector<AltId> order;
        order.reserve(kept.size());
        for (AltId a : r.order) {
            if (remap[a] != static_cast<AltId>(-1)) order.push_back(remap[a]);
        }
        rankings.emplace_back(std::move(order));
    }
    return Profile(std::move(kept), std::move(rankings));
}

std::vector<std::filesystem::path> expand_glob(const std::string& pattern) {
    glob_t g{};
    const int rc = ::glob(pattern.c_str(), 0, nullptr, &g);
    std::vector<std::filesystem::path> out;
    if (rc == 0) {
        for (std::size_t i = 0; i < g.gl_pathc; ++i) out.emplace_back(g.gl_pathv[i]);
    }
    globfree(&g);
    if (rc == GLOB_NOMATCH || (rc == 0 && out.empty())) throw IoError("no files match " + pattern);
    if (rc != 0) throw IoError("glob failed for " + pattern);
    std::sort(out.begin(), out.end());
    return out;
}

std::string label_for(const std::filesystem::path& path, LabelFrom from) {
    if (from == LabelFrom::filename) return path.stem().string();
    const std::filesystem::path parent = path.parent_path();
    return parent.empty() ? std::string(".") : parent.filename().string();
}

std::vector<ScatterPoint> dataset_scatter(const std::vector<std::filesystem::path>& paths,
                                          const std::vector<std::string>& labels, unsigned threads) {
    if (paths.size() != labels.size()) throw DomainError("dataset_scatter: one label per path required");
    std::vector<ScatterPoint> out(paths.size());
    parallel_for(paths.size(), threads, [&](std::size_t i) {
        const Profile p = load_completed(paths[i]);
        ScatterPoint& pt = out[i];
        pt.path = paths[i].string();
        pt.label = labels[i];
        pt.m = p.num_alternatives();
        pt.n = p.num_rankings();
        pt.distance = stats::positionwise_distance_from_id(p);
    });
    return out;
}

void write_scatter_csv(std::ostream& out, const std::vector<ScatterPoint>& points) {
    out << "m,n,distance,label\n";
    for (const ScatterPoint& p : points) {
        out << p.m << ',' << p.n << ',' << format_g17(p.distance) << ',' << csv_field(p.label) << '\n';
    }
}

std::string scatter_svg(const std::vector<ScatterPoint>& points) {
    svg::Plot plot;
    plot.title = "Positionwise distance from ID";
    plot.x_label = "number of alternatives m";
    plot.y_label = "normalized positionwise distance";
    std::map<std::string, std::size_t> series_of;
    for (const ScatterPoint& p : points) {
        auto [it, fresh] = series_of.emplace(p.label, plot.series.size());
        if (fresh) {
            plot.series.push_back({});
            plot.series.back().label = p.label;
            plot.series.back().points = true;
        }
        plot.series[it->second].x.push_back(static_cast<double>(p.m));
        plot.series[it->second].y.push_back(p.distance);
    }
    return svg::render(plot);
}

std::vector<GroupSpec> load_group_manifest(const std::filesystem::path& manifest) {
    std::ifstream in(manifest);
    if (!in) throw IoError("cannot open " + manifest.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(manifest.string() + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("groups") || !doc["groups"].is_array() || doc["groups"].empty()) {
        throw ConfigError(manifest.string() + ": expected a non-empty \"groups\" array");
    }
    const std::filesystem::path base = manifest.parent_path();
    std::vector<GroupSpec> out;
    for (const auto& g : doc["groups"]) {
        if (!g.is_object() || !g.contains("label") || !g["label"].is_string()) {
            throw ConfigError(manifest.string() + ": every group needs a string \"label\"");
        }
        if (!g.contains("files") || !g["files"].is_array() || g["files"].empty()) {
            throw ConfigError(manifest.string() + ": group " + g["label"].get<std::string>() +
                              " needs a non-empty \"files\" array");
        }
        GroupSpec spec;
        spec.label = g["label"].get<std::string>();
        for (const auto& f : g["files"]) {
            if (!f.is_string()) throw ConfigError(manifest.string() + ": file patterns must be strings");
            std::filesystem::path pattern = f.get<std::string>();
            if (pattern.is_relative() && !base.empty()) pattern = base / pattern;
            for (auto& p : expand_glob(pattern.string())) spec.files.push_back(std::move(p));
        }
        out.push_back(std::move(spec));
    }
    return out;
}

std::vector<GroupRow> group_report(const std::vector<GroupSpec>& groups, unsigned threads) {
    if (groups.empty()) throw DomainError("group_report: no groups");
    std::vector<GroupRow> out;
    for (const GroupSpec& g : groups) {
        if (g.files.empty()) throw DomainError("group_report: group " + g.label + " is empty");
        std::vector<std::optional<Profile>> loaded(g.files.size());
        parallel_for(g.files.size(), threads, [&](std::size_t i) { loaded[i].emplace(load_completed(g.files[i])); });
        std::vector<Profile> profiles;
        profiles.reserve(loaded.size());
        for (auto& p : loaded) profiles.push_back(std::move(*p));
        out.push_back({g.label, stats::group_statistics(profiles)});
    }
    return out;
}

void write_group_report_csv(std::ostream& out, const std::vector<GroupRow>& rows) {
    out << "property";
    for (const GroupRow& r : rows) out << ',' << csv_field(r.label);
    out << '\n';
    auto row = [&](const char* name, auto get) {
        out << name;
        for (const GroupRow& r : rows) out << ',' << get(r.statistics);
        out << '\n';
    };
    row("profiles", [](const stats::GroupStatistics& s) { return std::to_string(s.profiles); });
    row("Plurality score of Plurality winner",
        [](const stats::GroupStatistics& s) { return format_g17(s.plurality_score); });
    row("Average position of Plurality winner",
        [](const stats::GroupStatistics& s) { return format_g17(s.winner_position); });
    row("Plurality winner is Borda winner",
        [](const stats::GroupStatistics& s) { return format_g17(s.plurality_is_borda); });
    row("Plurality winner is Condorcet winner",
        [](const stats::GroupStatistics& s) { return format_g17(s.plurality_is_condorcet); });
}

} // namespace mallows::ingest

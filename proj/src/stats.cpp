#include "mallows/stats.hpp"

#include <cmath>
#include <string>

#include "mallows/assignment.hpp"
#include "mallows/errors.hpp"
#include "mallows/kernels.hpp"
#include "mallows/numeric.hpp"

namespace mallows::stats {

namespace {

ScoreResult argmax(std::vector<std::uint64_t> scores) {
    ScoreResult out;
    out.scores = std::move(scores);
    for (std::size_t a = 1; a < out.scores.size(); ++a) {
        if (out.scores[a] > out.scores[out.winner]) out.winner = static_cast<AltId>(a);
    }
    for (std::size_t a = 0; a < out.scores.size(); ++a) {
        if (a != out.winner && out.scores[a] == out.scores[out.winner]) {
            out.tied = true;
            break;
        }
    }
    return out;
}

void check_distribution(std::span<const double> x, const char* name) {
    CompensatedSum sum;
    for (double v : x) {
        if (!(v >= 0.0)) throw DomainError(std::string("column_emd: ") + name + " has a negative or NaN entry");
        sum += v;
    }
    if (std::fabs(sum.value() - 1.0) > 1e-9) {
        throw DomainError(std::string("column_emd: ") + name + " sums to " + format_g17(sum.value()) +
                          ", expected 1");
    }
}

} // namespace

ScoreResult plurality(const Profile& profile) {
    std::vector<std::uint64_t> scores(profile.num_alternatives(), 0);
    for (const Ranking& v : profile.rankings()) ++scores[v.at(1)];
    return argmax(std::move(scores));
}

ScoreResult borda(const Profile& profile) {
    const std::size_t m = profile.num_alternatives();
    std::vector<std::uint64_t> scores(m, 0);
    for (const Ranking& v : profile.rankings()) {
        const auto order = v.order();
        for (std::size_t p = 0; p < m; ++p) scores[order[p]] += m - 1 - p;
    }
    return argmax(std::move(scores));
}

std::vector<std::uint32_t> pairwise_wins(const Profile& profile) {
    const std::size_t m = profile.num_alternatives();
    const kernels::KernelTable& k = kernels::active();
    std::vector<std::int32_t> wins(m * m, 0);
    std::vector<std::int32_t> pos(m);
    for (const Ranking& v : profile.rankings()) {
        const auto p0 = v.positions0();
        for (std::size_t a = 0; a < m; ++a) pos[a] = static_cast<std::int32_t>(p0[a]);
        for (std::size_t a = 0; a < m; ++a) {
            k.tally_beats(pos, pos[a], std::span<std::int32_t>(wins.data() + a * m, m));
        }
    }
    return {wins.begin(), wins.end()};
}

std::optional<AltId> condorcet(const Profile& profile) {
    const std::size_t m = profile.num_alternatives();
    const std::uint64_t n = profile.num_rankings();
    const std::vector<std::uint32_t> wins = pairwise_wins(profile);
    for (std::size_t a = 0; a < m; ++a) {
        bool beats_all = true;
        for (std::size_t b = 0; b < m && beats_all; ++b) {
            if (b != a && 2 * static_cast<std::uint64_t>(wins[a * m + b]) <= n) beats_all = false;
        }
        if (beats_all) return static_cast<AltId>(a);
    }
    return std::nullopt;
}

WinnerReport winner_report(const Profile& profile) {
    const ScoreResult p = plurality(profile);
    const ScoreResult b = borda(profile);
    WinnerReport out;
    out.plurality_winner = p.winner;
    out.plurality_score = p.scores[p.winner];
    out.plurality_tied = p.tied;
    out.borda_winner = b.winner;
    out.borda_tied = b.tied;
    out.condorcet_winner = condorcet(profile);
    return out;
}

FrequencyMatrix frequency_matrix(const Profile& profile) {
    const std::size_t m = profile.num_alternatives();
    std::vector<std::uint64_t> counts(m * m, 0);
    for (const Ranking& v : profile.rankings()) {
        const auto p0 = v.positions0();
        for (std::size_t a = 0; a < m; ++a) ++counts[a * m + p0[a]];
    }
    FrequencyMatrix out(m);
    const auto n = static_cast<double>(profile.num_rankings());
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t p = 1; p <= m; ++p) {
            out(p, static_cast<AltId>(a)) = static_cast<double>(counts[a * m + p - 1]) / n;
        }
    }
    return out;
}

double column_emd(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DomainError("column_emd: distributions differ in length");
    check_distribution(a, "a");
    check_distribution(b, "b");
    const std::size_t m = a.size();
    if (m < 2) return 0.0;
    std::vector<double> cdf_a(m - 1);
    std::vector<double> cdf_b(m - 1);
    double ca = 0.0;
    double cb = 0.0;
    for (std::size_t k = 0; k + 1 < m; ++k) {
        ca += a[k];
        cb += b[k];
        cdf_a[k] = ca;
        cdf_b[k] = cb;
    }
    return kernels::active().abs_diff_sum(cdf_a, cdf_b);
}

std::vector<double> identity_cost_matrix(const FrequencyMatrix& freq) {
    const std::size_t m = freq.size();
    std::vector<double> cost(m * m, 0.0);
    // With F the CDF of column c and S(t) = F(1) + ... + F(t), the EMD to a
    // unit mass at p is S(p-1) + (m - p) - (S(m-1) - S(p-1)).
    std::vector<double> s(m, 0.0);
    for (std::size_t c = 0; c < m; ++c) {
        const auto col = freq.column(static_cast<AltId>(c));
        double cdf = 0.0;
        for (std::size_t t = 1; t < m; ++t) {
            cdf += col[t - 1];
            s[t] = s[t - 1] + cdf;
        }
        for (std::size_t p = 1; p <= m; ++p) {
            const double below = s[p - 1];
            const double above = static_cast<double>(m - p) - (s[m - 1] - s[p - 1]);
            cost[c * m + p - 1] = below + above;
        }
    }
    return cost;
}

double positionwise_distance_from_id(const FrequencyMatrix& freq) {
    const std::size_t m = freq.size();
    if (m < 2) throw DomainError("positionwise_distance_from_id: m=" + std::to_string(m) + " must be at least 2");
    const AssignmentResult best = solve_assignment(identity_cost_matrix(freq), m);
    const double md = static_cast<double>(m);
    return best.cost / ((md * md - 1.0) / 3.0);
}

double positionwise_distance_from_id(const Profile& profile) {
    return positionwise_distance_from_id(frequency_matrix(profile));
}

double average_position(const Profile& profile, AltId alt) {
    std::uint64_t total = 0;
    for (const Ranking& v : profile.rankings()) total += v.position_of(alt);
    return static_cast<double>(total) / static_cast<double>(profile.num_rankings());
}

GroupStatistics profile_statistics(const Profile& profile) {
    const WinnerReport report = winner_report(profile);
    const std::size_t m = profile.num_alternatives();
    GroupStatistics out;
    out.profiles = 1;
    out.plurality_score =
        static_cast<double>(report.plurality_score) / static_cast<double>(profile.num_rankings());
    out.winner_position =
        m < 2 ? 0.0 : (average_position(profile, report.plurality_winner) - 1.0) / static_cast<double>(m - 1);
    out.plurality_is_borda = report.plurality_winner == report.borda_winner ? 1.0 : 0.0;
    out.plurality_is_condorcet =
        report.condorcet_winner && *report.condorcet_winner == report.plurality_winner ? 1.0 : 0.0;
    return out;
}

GroupStatistics group_statistics(std::span<const Profile> profiles) {
    if (profiles.empty()) throw DomainError("group_statistics: empty profile list");
    CompensatedSum score, position, borda_match, condorcet_match;
    for (const Profile& p : profiles) {
        const GroupStatistics one = profile_statistics(p);
        score += one.plurality_score;
        position += one.winner_position;
        borda_match += one.plurality_is_borda;
        condorcet_match += one.plurality_is_condorcet;
    }
    const auto count = static_cast<double>(profiles.size());
    GroupStatistics out;
    out.profiles = profiles.size();
    out.plurality_score = score.value() / count;
    out.winner_position = position.value() / count;
    out.plurality_is_borda = borda_match.value() / count;
    out.plurality_is_condorcet = condorcet_match.value() / count;
    return out;
}

} // namespace mallows::stats

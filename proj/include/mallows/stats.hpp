#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mallows/core.hpp"

namespace mallows::stats {

struct ScoreResult {
    AltId winner = 0;                 // argmax, smallest id on ties
    std::vector<std::uint64_t> scores; // indexed by AltId
    bool tied = false;                // more than one alternative at the maximum
};

// First-place counts.
ScoreResult plurality(const Profile& profile);

// m - i points for position i.
ScoreResult borda(const Profile& profile);

// wins[a * m + b] = number of rankings placing a before b.
std::vector<std::uint32_t> pairwise_wins(const Profile& profile);

// The alternative beating every other one in strictly more than n/2
// rankings, if any.
std::optional<AltId> condorcet(const Profile& profile);

struct WinnerReport {
    AltId plurality_winner = 0;
    std::uint64_t plurality_score = 0;
    bool plurality_tied = false;
    AltId borda_winner = 0;
    bool borda_tied = false;
    std::optional<AltId> condorcet_winner;
};

WinnerReport winner_report(const Profile& profile);

// m x m; entry (i, c) is the fraction of rankings with alternative c at
// 1-based position i. Stored column by column.
class FrequencyMatrix {
  public:
    explicit FrequencyMatrix(std::size_t m) : m_(m), data_(m * m, 0.0) {}

    std::size_t size() const noexcept { return m_; }
    double operator()(std::size_t position, AltId alt) const { return data_[alt * m_ + position - 1]; }
    double& operator()(std::size_t position, AltId alt) { return data_[alt * m_ + position - 1]; }

    // Distribution of alternative c over positions 1..m.
    std::span<const double> column(AltId alt) const { return {data_.data() + alt * m_, m_}; }

  private:
    std::size_t m_;
    std::vector<double> data_;
};

FrequencyMatrix frequency_matrix(const Profile& profile);

// 1-D earth mover's distance with ground distance |i - j|, as
// sum_{k<m} |CDF_a(k) - CDF_b(k)|. Both inputs must sum to 1 within 1e-9.
double column_emd(std::span<const double> a, std::span<const double> b);

// cost[c * m + (p - 1)] = EMD between column c and a unit mass at position p.
std::vector<double> identity_cost_matrix(const FrequencyMatrix& freq);

// Minimum over column-to-position bijections of the summed EMD, divided by
// (m^2 - 1) / 3 so that unanimous profiles give 0 and the uniform matrix 1.
// Not capped at 1. Throws DomainError for m < 2.
double positionwise_distance_from_id(const FrequencyMatrix& freq);
double positionwise_distance_from_id(const Profile& profile);

// Average 1-based position of `alt` across the profile's rankings.
double average_position(const Profile& profile, AltId alt);

struct GroupStatistics {
    std::size_t profiles = 0;
    double plurality_score = 0.0;        // winner's score / n
    double winner_position = 0.0;        // (average position - 1) / (m - 1)
    double plurality_is_borda = 0.0;     // fraction of profiles
    double plurality_is_condorcet = 0.0; // no Condorcet winner counts as a mismatch
};

// Per-profile values of the GroupStatistics fields.
GroupStatistics profile_statistics(const Profile& profile);

// Averages over the list. Throws DomainError for an empty list.
GroupStatistics group_statistics(std::span<const Profile> profiles);

} // namespace mallows::stats

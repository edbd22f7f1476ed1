#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mallows/core.hpp"

// Brute force over all m! rankings. Ground truth for the closed forms in
// analytic and for small assignment problems.
namespace mallows::oracle {

inline constexpr std::size_t kMaxEnumerationM = 8;
inline constexpr std::size_t kMaxAssignmentM = 6;

// Every ranking of S_m in lexicographic order (std::next_permutation from the
// identity) with its Mallows weight phi^kappa / Z. Z is the compensated sum of
// the unnormalized weights, not the product formula.
class ExhaustiveTable {
  public:
    // Throws CapacityError for m > 8, DomainError for m < 1 or phi outside [0, 1].
    ExhaustiveTable(double phi, std::size_t m);

    std::size_t size() const noexcept { return rankings_.size(); }
    std::size_t m() const noexcept { return m_; }
    std::span<const Ranking> rankings() const noexcept { return rankings_; }
    std::span<const double> weights() const noexcept { return weights_; }
    std::span<const std::uint64_t> distances() const noexcept { return distances_; }

  private:
    std::size_t m_;
    std::vector<Ranking> rankings_;
    std::vector<double> weights_;
    std::vector<std::uint64_t> distances_;
};

// Counts discordant pairs one by one, O(m^2).
std::uint64_t brute_force_kendall_tau(const Ranking& u, const Ranking& v);

double exact_expectation(double phi, std::size_t m, const std::function<double(const Ranking&)>& statistic);

// P(c_i before c_j), 1 <= i < j <= m.
double exact_pair_prob(double phi, std::size_t m, std::size_t i, std::size_t j);

// Minimum over all bijections of sum_r cost[r * m + sigma(r)]; m <= 6.
double exact_assignment_min(std::span<const double> cost, std::size_t m);

// Total 1-D transport cost between two distributions on positions 1..m,
// computed by the greedy north-west-corner plan (optimal on a line).
double greedy_transport(std::span<const double> a, std::span<const double> b);

} // namespace mallows::oracle

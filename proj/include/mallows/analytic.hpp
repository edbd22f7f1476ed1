#pragma once

#include <cstddef>

#include "mallows/core.hpp"

// Closed-form quantities of the Mallows model M(phi, m, v*). All functions
// treat 0^0 as 1 so that phi = 0 degenerates to the point mass on v*, and all
// have explicit phi = 1 (uniform) branches.
namespace mallows::analytic {

// Below this threshold the geometric-quotient closed forms are used; at and
// above it (and at phi = 1) the equivalent finite sums are evaluated instead.
inline constexpr double kNearOneThreshold = 1.0 - 1e-6;

struct MallowsParams {
    MallowsParams(double phi, std::size_t m);
    MallowsParams(double phi, CentralOrder central);

    double phi;
    std::size_t m;
    CentralOrder central;
};

// Z(phi, m) = prod_{k=1}^{m} sum_{j=0}^{k-1} phi^j, by direct summation.
// Overflows to +inf for large m near phi = 1 (Z(1, m) = m!).
double normalization_constant(double phi, std::size_t m);
double log_normalization_constant(double phi, std::size_t m);

// phi^{kappa(v*, v)} / Z(phi, m).
double mallows_pmf(const Ranking& v, const MallowsParams& params);

// E[kappa(v, v*)] as the insertion decomposition sum_k (T(phi, k) - 1), where
// T(phi, k) is the mean of the truncated geometric law on [1, k]. Finite and
// exact on all of [0, 1].
double expected_swap_distance(double phi, std::size_t m);

// The geometric-quotient formula m phi/(1-phi) - sum_i i phi^i/(1-phi^i).
// Only defined for phi in [0, 1); kept as an independent second route.
double expected_swap_distance_closed_form(double phi, std::size_t m);

// 4 E[kappa] / (m(m-1)); requires m >= 2.
double g_swap(double phi, std::size_t m);

// P[pos(v, c1) = i] for 1 <= i <= m.
double pos1_pmf(std::size_t i, double phi, std::size_t m);

// Normalized probability that c1 is ranked first: 1 at phi = 0, 0 at phi = 1.
double g_top1(double phi, std::size_t m);

// E[pos(v, c1)], in [1, m].
double expected_position_c1(double phi, std::size_t m);

// 2 (E[pos(v, c1)] - 1) / (m - 1): 0 at phi = 0, 1 at phi = 1.
double g_pos1(double phi, std::size_t m);

// P[c_i ranked before c_j] for 1 <= i < j; depends only on j - i.
double pairwise_beat_prob(std::size_t i, std::size_t j, double phi);

// 2 P[c_1 before c_m] - 1.
double g_1_beats_m(double phi, std::size_t m);

namespace detail {
// T(phi, k) - 1 = sum_{j=1}^{k} (j-1) phi^{j-1} / sum_{j=1}^{k} phi^{j-1},
// accumulated without cancellation.
double truncated_geometric_excess(double phi, std::size_t k);
// sum_{j=0}^{k-1} phi^j
double power_sum(double phi, std::size_t k);
// Both evaluation routes of pairwise_beat_prob, exposed for overlap tests.
double pairwise_beat_prob_closed(std::size_t k, double phi);
double pairwise_beat_prob_sum(std::size_t k, double phi);
void check_phi(double phi, const char* who);
} // namespace detail

} // namespace mallows::analytic

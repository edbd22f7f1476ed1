#include "mallows/analytic.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mallows/errors.hpp"
#include "mallows/numeric.hpp"

namespace mallows::analytic {

namespace detail {

void check_phi(double phi, const char* who) {
    if (!(phi >= 0.0 && phi <= 1.0)) {
        throw DomainError(std::string(who) + ": phi=" + format_g17(phi) + " outside [0, 1]");
    }
}

double power_sum(double phi, std::size_t k) {
    CompensatedSum sum;
    double p = 1.0;
    for (std::size_t j = 0; j < k; ++j) {
        sum += p;
        p *= phi;
    }
    return sum.value();
}

double truncated_geometric_excess(double phi, std::size_t k) {
    CompensatedSum weights;
    CompensatedSum weighted;
    double p = 1.0;
    for (std::size_t j = 0; j < k; ++j) {
        weights += p;
        weighted += static_cast<double>(j) * p;
        p *= phi;
    }
    return weighted.value() / weights.value();
}

double pairwise_beat_prob_closed(std::size_t k, double phi) {
    // 1/(1-phi^k) * (1 - (1-phi)(k-1) phi^{k-1} / (1-phi^{k-1}))
    const double log_phi = std::log(phi);
    const double kd = static_cast<double>(k);
    const double one_minus_phi_k = -std::expm1(kd * log_phi);
    const double one_minus_phi_km1 = -std::expm1((kd - 1.0) * log_phi);
    const double phi_km1 = std::exp((kd - 1.0) * log_phi);
    return (1.0 - (1.0 - phi) * (kd - 1.0) * phi_km1 / one_minus_phi_km1) / one_minus_phi_k;
}

double pairwise_beat_prob_sum(std::size_t k, double phi) {
    // sum_{t=0}^{k-2} (t+1) phi^t / (A_{k-1} A_k) with A_n = sum_{j<n} phi^j
    CompensatedSum numerator;
    CompensatedSum a_km1;
    double p = 1.0;
    for (std::size_t t = 0; t + 1 < k; ++t) {
        numerator += static_cast<double>(t + 1) * p;
        a_km1 += p;
        p *= phi;
    }
    const double a_k = a_km1.value() + p;
    return numerator.value() / (a_km1.value() * a_k);
}

} // namespace detail

using detail::check_phi;

namespace {

// 1 / expm1(y) - 1 / y for y > 0.
double excess_reciprocal_expm1(double y) {
    if (y < 0.1) {
        const double y2 = y * y;
        return -0.5 + y * (1.0 / 12 - y2 * (1.0 / 720 - y2 * (1.0 / 30240 - y2 * (1.0 / 1209600))));
    }
    return 1.0 / std::expm1(y) - 1.0 / y;
}

void check_m_at_least(std::size_t m, std::size_t lo, const char* who) {
    if (m < lo) {
        throw DomainError(std::string(who) + ": m=" + std::to_string(m) + " must be at least " +
                          std::to_string(lo));
    }
}

} // namespace

MallowsParams::MallowsParams(double phi_, std::size_t m_)
    : MallowsParams(phi_, CentralOrder::lexicographic(m_)) {}

MallowsParams::MallowsParams(double phi_, CentralOrder central_)
    : phi(phi_), m(central_.size()), central(std::move(central_)) {
    check_phi(phi, "MallowsParams");
    check_m_at_least(m, 1, "MallowsParams");
}

double normalization_constant(double phi, std::size_t m) {
    check_phi(phi, "normalization_constant");
    double z = 1.0;
    CompensatedSum row;
    double p = 1.0;
    for (std::size_t k = 1; k <= m; ++k) {
        row += p; // row = sum_{j=0}^{k-1} phi^j
        p *= phi;
        z *= row.value();
    }
    return z;
}

double log_normalization_constant(double phi, std::size_t m) {
    check_phi(phi, "log_normalization_constant");
    CompensatedSum log_z;
    CompensatedSum row;
    double p = 1.0;
    for (std::size_t k = 1; k <= m; ++k) {
        row += p;
        p *= phi;
        log_z += std::log(row.value());
    }
    return log_z.value();
}

double mallows_pmf(const Ranking& v, const MallowsParams& params) {
    if (v.size() != params.m) {
        throw DomainError("mallows_pmf: ranking over " + std::to_string(v.size()) +
                          " alternatives, model has m=" + std::to_string(params.m));
    }
    const auto distance = kendall_tau(params.central.ranking(), v);
    if (params.phi == 0.0) return distance == 0 ? 1.0 : 0.0;
    const double z = normalization_constant(params.phi, params.m);
    if (std::isfinite(z)) {
        return std::pow(params.phi, static_cast<double>(distance)) / z;
    }
    return std::exp(static_cast<double>(distance) * std::log(params.phi) -
                    log_normalization_constant(params.phi, params.m));
}

double expected_swap_distance(double phi, std::size_t m) {
    check_phi(phi, "expected_swap_distance");
    // Running sums over the insertion steps k = 1..m:
    //   weights_k  = sum_{j=1}^{k} phi^{j-1}
    //   weighted_k = sum_{j=1}^{k} (j-1) phi^{j-1}
    // and E = sum_k weighted_k / weights_k.
    CompensatedSum total;
    CompensatedSum weights;
    CompensatedSum weighted;
    double p = 1.0;
    for (std::size_t k = 1; k <= m; ++k) {
        weights += p;
        weighted += static_cast<double>(k - 1) * p;
        p *= phi;
        total += weighted.value() / weights.value();
    }
    return total.value();
}

double expected_swap_distance_closed_form(double phi, std::size_t m) {
    if (!(phi >= 0.0 && phi < 1.0)) {
        throw DomainError("expected_swap_distance_closed_form: phi=" + format_g17(phi) +
                          " outside [0, 1)");
    }
    if (phi == 0.0) return 0.0;
    // With x = -log phi, phi^i / (1 - phi^i) = 1 / expm1(i x). Writing
    // 1 / expm1(y) = 1 / y + f(y) lets the 1/x parts of m phi/(1 - phi) and of
    // the sum cancel exactly, leaving m f(x) - sum_i i f(i x).
    const double x = -std::log1p(phi - 1.0);
    CompensatedSum total;
    total += static_cast<double>(m) * excess_reciprocal_expm1(x);
    for (std::size_t i = 1; i <= m; ++i) {
        const double id = static_cast<double>(i);
        total += -id * excess_reciprocal_expm1(id * x);
    }
    return total.value();
}

double g_swap(double phi, std::size_t m) {
    check_m_at_least(m, 2, "g_swap");
    const double md = static_cast<double>(m);
    return 4.0 * expected_swap_distance(phi, m) / (md * (md - 1.0));
}

double pos1_pmf(std::size_t i, double phi, std::size_t m) {
    check_phi(phi, "pos1_pmf");
    if (i < 1 || i > m) {
        throw DomainError("pos1_pmf: position " + std::to_string(i) + " outside [1, " + std::to_string(m) + "]");
    }
    if (phi == 0.0) return i == 1 ? 1.0 : 0.0;
    return std::pow(phi, static_cast<double>(i - 1)) / detail::power_sum(phi, m);
}

double g_top1(double phi, std::size_t m) {
    check_phi(phi, "g_top1");
    check_m_at_least(m, 2, "g_top1");
    const double md = static_cast<double>(m);
    return md / (md - 1.0) * (1.0 / detail::power_sum(phi, m) - 1.0 / md);
}

double expected_position_c1(double phi, std::size_t m) {
    check_phi(phi, "expected_position_c1");
    check_m_at_least(m, 1, "expected_position_c1");
    return 1.0 + detail::truncated_geometric_excess(phi, m);
}

double g_pos1(double phi, std::size_t m) {
    check_phi(phi, "g_pos1");
    check_m_at_least(m, 2, "g_pos1");
    return 2.0 * detail::truncated_geometric_excess(phi, m) / static_cast<double>(m - 1);
}

double pairwise_beat_prob(std::size_t i, std::size_t j, double phi) {
    check_phi(phi, "pairwise_beat_prob");
    if (i < 1 || i >= j) {
        throw DomainError("pairwise_beat_prob: need 1 <= i < j, got i=" + std::to_string(i) +
                          ", j=" + std::to_string(j));
    }
    if (phi == 0.0) return 1.0;
    if (phi == 1.0) return 0.5;
    const std::size_t k = j - i + 1;
    if (phi < kNearOneThreshold) return detail::pairwise_beat_prob_closed(k, phi);
    return detail::pairwise_beat_prob_sum(k, phi);
}

double g_1_beats_m(double phi, std::size_t m) {
    check_m_at_least(m, 2, "g_1_beats_m");
    return 2.0 * pairwise_beat_prob(1, m, phi) - 1.0;
}

} // namespace mallows::analytic

#include "mallows/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "mallows/analytic.hpp"
#include "mallows/errors.hpp"
#include "mallows/numeric.hpp"

namespace mallows::oracle {

ExhaustiveTable::ExhaustiveTable(double phi, std::size_t m) : m_(m) {
    analytic::detail::check_phi(phi, "ExhaustiveTable");
    if (m < 1) throw DomainError("ExhaustiveTable: m must be at least 1");
    if (m > kMaxEnumerationM) {
        throw CapacityError("ExhaustiveTable: m=" + std::to_string(m) + " exceeds " +
                            std::to_string(kMaxEnumerationM));
    }
    const Ranking centre = Ranking::identity(m);
    std::vector<AltId> order(m);
    std::iota(order.begin(), order.end(), AltId{0});
    CompensatedSum total;
    do {
        Ranking v(order);
        const std::uint64_t kappa = brute_force_kendall_tau(centre, v);
        const double w = std::pow(phi, static_cast<double>(kappa));
        rankings_.push_back(std::move(v));
        distances_.push_back(kappa);
        weights_.push_back(w);
        total += w;
    } while (std::next_permutation(order.begin(), order.end()));
    const double z = total.value();
    for (double& w : weights_) w /= z;
}

std::uint64_t brute_force_kendall_tau(const Ranking& u, const Ranking& v) {
    if (u.size() != v.size()) throw DomainError("brute_force_kendall_tau: rankings differ in size");
    const auto pu = u.positions0();
    const auto pv = v.positions0();
    std::uint64_t count = 0;
    for (std::size_t a = 0; a < u.size(); ++a) {
        for (std::size_t b = a + 1; b < u.size(); ++b) {
            if ((pu[a] < pu[b]) != (pv[a] < pv[b])) ++count;
        }
    }
    return count;
}

double exact_expectation(double phi, std::size_t m, const std::function<double(const Ranking&)>& statistic) {
    const ExhaustiveTable table(phi, m);
    CompensatedSum sum;
    for (std::size_t r = 0; r < table.size(); ++r) sum += table.weights()[r] * statistic(table.rankings()[r]);
    return sum.value();
}

double exact_pair_prob(double phi, std::size_t m, std::size_t i, std::size_t j) {
    if (!(i >= 1 && i < j && j <= m)) {
        throw DomainError("exact_pair_prob: need 1 <= i < j <= m, got i=" + std::to_string(i) +
                          " j=" + std::to_string(j) + " m=" + std::to_string(m));
    }
    const auto a = static_cast<AltId>(i - 1);
    const auto b = static_cast<AltId>(j - 1);
    return exact_expectation(phi, m, [a, b](const Ranking& v) {
        return v.positions0()[a] < v.positions0()[b] ? 1.0 : 0.0;
    });
}

double exact_assignment_min(std::span<const double> cost, std::size_t m) {
    if (m > kMaxAssignmentM) {
        throw CapacityError("exact_assignment_min: m=" + std::to_string(m) + " exceeds " +
                            std::to_string(kMaxAssignmentM));
    }
    if (cost.size() != m * m) throw DomainError("exact_assignment_min: cost matrix is not m x m");
    if (m == 0) return 0.0;
    std::vector<std::size_t> sigma(m);
    std::iota(sigma.begin(), sigma.end(), std::size_t{0});
    double best = std::numeric_limits<double>::infinity();
    do {
        double total = 0.0;
        for (std::size_t r = 0; r < m; ++r) total += cost[r * m + sigma[r]];
        best = std::min(best, total);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return best;
}

double greedy_transport(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DomainError("greedy_transport: size mismatch");
    std::vector<double> supply(a.begin(), a.end());
    std::vector<double> demand(b.begin(), b.end());
    std::size_t i = 0;
    std::size_t j = 0;
    double cost = 0.0;
    while (i < supply.size() && j < demand.size()) {
        const double moved = std::min(supply[i], demand[j]);
        cost += moved * std::fabs(static_cast<double>(i) - static_cast<double>(j));
        supply[i] -= moved;
        demand[j] -= moved;
        if (supply[i] <= 0.0) ++i;
        if (demand[j] <= 0.0) ++j;
    }
    return cost;
}

} // namespace mallows::oracle

#include "mallows/assignment.hpp"

#include <algorithm>
#include <limits>

#include "mallows/errors.hpp"
#include "mallows/numeric.hpp"

namespace mallows {

AssignmentResult solve_assignment(std::span<const double> cost, std::size_t n, const kernels::KernelTable& k) {
    if (cost.size() != n * n) throw DomainError("solve_assignment: cost matrix is not n x n");
    AssignmentResult out;
    if (n == 0) return out;

    constexpr double kInf = std::numeric_limits<double>::infinity();
    // Index 0 of the column arrays is a virtual column holding the row being
    // inserted; real columns are 1..n. Rows are 1-based likewise.
    std::vector<double> u(n + 1, 0.0);
    std::vector<double> v(n + 1, 0.0);
    std::vector<std::size_t> p(n + 1, 0);
    std::vector<std::int64_t> way(n + 1, 0);
    std::vector<double> min_slack(n + 1);
    std::vector<std::uint8_t> used(n + 1);

    const std::span<double> v_cols(v.data() + 1, n);
    const std::span<double> slack_cols(min_slack.data() + 1, n);
    const std::span<std::uint8_t> used_cols(used.data() + 1, n);
    const std::span<std::int64_t> way_cols(way.data() + 1, n);

    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::fill(min_slack.begin(), min_slack.end(), kInf);
        std::fill(used.begin(), used.end(), std::uint8_t{0});
        do {
            used[j0] = 1;
            const std::size_t i0 = p[j0];
            const kernels::ScanResult best =
                k.assignment_scan(cost.subspan((i0 - 1) * n, n), u[i0], v_cols, used_cols, slack_cols, way_cols,
                                  static_cast<std::int64_t>(j0));
            if (best.column == kernels::kNoColumn) {
                throw NumericError("solve_assignment: no augmenting column (non-finite costs?)");
            }
            const double delta = best.delta;
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) u[p[j]] += delta;
            }
            v[0] -= delta;
            k.assignment_shift(used_cols, v_cols, slack_cols, delta);
            j0 = best.column + 1;
        } while (p[j0] != 0);
        do {
            const auto j1 = static_cast<std::size_t>(way[j0]);
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    out.column_of_row.assign(n, 0);
    for (std::size_t j = 1; j <= n; ++j) out.column_of_row[p[j] - 1] = j - 1;
    CompensatedSum total;
    for (std::size_t r = 0; r < n; ++r) total += cost[r * n + out.column_of_row[r]];
    out.cost = total.value();
    return out;
}

} // namespace mallows

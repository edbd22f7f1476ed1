#include <cmath>
#include <limits>

#include "mallows/kernels.hpp"

namespace mallows::kernels {

namespace {

ScanResult scan_scalar(std::span<const double> row, double row_potential, std::span<const double> col_potential,
                       std::span<const std::uint8_t> used, std::span<double> min_slack,
                       std::span<std::int64_t> way, std::int64_t from_column) {
    ScanResult best{std::numeric_limits<double>::infinity(), kNoColumn};
    const std::size_t n = row.size();
    for (std::size_t j = 0; j < n; ++j) {
        if (used[j]) continue;
        const double cur = (row[j] - row_potential) - col_potential[j];
        if (cur < min_slack[j]) {
            min_slack[j] = cur;
            way[j] = from_column;
        }
        if (min_slack[j] < best.delta) {
            best.delta = min_slack[j];
            best.column = j;
        }
    }
    return best;
}

void shift_scalar(std::span<const std::uint8_t> used, std::span<double> col_potential, std::span<double> min_slack,
                  double delta) {
    const std::size_t n = used.size();
    for (std::size_t j = 0; j < n; ++j) {
        if (used[j]) {
            col_potential[j] -= delta;
        } else {
            min_slack[j] -= delta;
        }
    }
}

void tally_scalar(std::span<const std::int32_t> positions, std::int32_t pivot, std::span<std::int32_t> row) {
    const std::size_t n = positions.size();
    for (std::size_t b = 0; b < n; ++b) row[b] += positions[b] > pivot ? 1 : 0;
}

double abs_diff_sum_scalar(std::span<const double> a, std::span<const double> b) {
    double partial[4] = {0.0, 0.0, 0.0, 0.0};
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) partial[i % 4] += std::fabs(a[i] - b[i]);
    return (partial[0] + partial[1]) + (partial[2] + partial[3]);
}

constexpr KernelTable kScalar{
    "scalar", scan_scalar, shift_scalar, tally_scalar, abs_diff_sum_scalar,
};

} // namespace

const KernelTable& scalar_kernels() { return kScalar; }

} // namespace mallows::kernels

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

// Data-parallel inner loops, with a scalar reference implementation and
// ISA-specific variants chosen once at runtime. Every variant must return
// bit-identical results to the scalar reference; reductions therefore follow
// a fixed lane order (see abs_diff_sum).
namespace mallows::kernels {

inline constexpr std::size_t kNoColumn = static_cast<std::size_t>(-1);

struct ScanResult {
    double delta;
    std::size_t column; // kNoColumn if every column is used
};

struct KernelTable {
    std::string_view name;

    // One relaxation sweep of the shortest-augmenting-path assignment solver
    // over n columns. For every unused column j:
    //   cur = (row[j] - row_potential) - col_potential[j]
    //   if cur < min_slack[j]: min_slack[j] = cur, way[j] = from_column
    // and returns the smallest min_slack over unused columns (first index on
    // ties).
    ScanResult (*assignment_scan)(std::span<const double> row, double row_potential,
                                  std::span<const double> col_potential, std::span<const std::uint8_t> used,
                                  std::span<double> min_slack, std::span<std::int64_t> way,
                                  std::int64_t from_column);

    // Dual update after a sweep: used columns get col_potential -= delta,
    // unused ones min_slack -= delta.
    void (*assignment_shift)(std::span<const std::uint8_t> used, std::span<double> col_potential,
                             std::span<double> min_slack, double delta);

    // row[b] += (positions[b] > pivot) for every b.
    void (*tally_beats)(std::span<const std::int32_t> positions, std::int32_t pivot,
                        std::span<std::int32_t> row);

    // sum_i |a[i] - b[i]|, accumulated in four interleaved partial sums
    // (element i goes to partial i % 4) combined as (p0 + p1) + (p2 + p3).
    double (*abs_diff_sum)(std::span<const double> a, std::span<const double> b);
};

const KernelTable& scalar_kernels();

// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2.
const KernelTable* avx2_kernels();

// Kernels used by the library. AVX2 when available, unless the environment
// variable MALLOWS_KERNELS is set to "scalar".
const KernelTable& active();

// All variants usable on this machine, scalar first.
std::vector<const KernelTable*> available();

} // namespace mallows::kernels

// Compiled with -mavx2 (and without -mfma); only reached after a runtime
// CPUID check in dispatch.cpp.
#include <immintrin.h>

#include <cmath>
#include <cstring>
#include <limits>

#include "mallows/kernels.hpp"

namespace mallows::kernels {

namespace {

// Lanes whose used-byte is zero, as an all-ones double mask.
inline __m256d free_mask(const std::uint8_t* used) {
    std::int32_t bytes;
    std::memcpy(&bytes, used, sizeof bytes);
    const __m256i used64 = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(bytes));
    return _mm256_castsi256_pd(_mm256_cmpeq_epi64(used64, _mm256_setzero_si256()));
}

ScanResult scan_avx2(std::span<const double> row, double row_potential, std::span<const double> col_potential,
                     std::span<const std::uint8_t> used, std::span<double> min_slack, std::span<std::int64_t> way,
                     std::int64_t from_column) {
    const std::size_t n = row.size();
    const std::size_t n4 = n & ~std::size_t{3};
    constexpr double kInf = std::numeric_limits<double>::infinity();

    const __m256d rp = _mm256_set1_pd(row_potential);
    const __m256d from = _mm256_castsi256_pd(_mm256_set1_epi64x(from_column));
    const __m256i four = _mm256_set1_epi64x(4);
    __m256i idx = _mm256_setr_epi64x(0, 1, 2, 3);
    __m256d best_val = _mm256_set1_pd(kInf);
    __m256d best_idx = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));

    for (std::size_t j = 0; j < n4; j += 4) {
        const __m256d free = free_mask(used.data() + j);
        const __m256d cur = _mm256_sub_pd(_mm256_sub_pd(_mm256_loadu_pd(row.data() + j), rp),
                                          _mm256_loadu_pd(col_potential.data() + j));
        __m256d slack = _mm256_loadu_pd(min_slack.data() + j);
        const __m256d improve = _mm256_and_pd(_mm256_cmp_pd(cur, slack, _CMP_LT_OQ), free);
        slack = _mm256_blendv_pd(slack, cur, improve);
        _mm256_storeu_pd(min_slack.data() + j, slack);

        auto* way_ptr = reinterpret_cast<__m256i*>(way.data() + j);
        const __m256d w = _mm256_castsi256_pd(_mm256_loadu_si256(way_ptr));
        _mm256_storeu_si256(way_ptr, _mm256_castpd_si256(_mm256_blendv_pd(w, from, improve)));

        const __m256d better = _mm256_and_pd(_mm256_cmp_pd(slack, best_val, _CMP_LT_OQ), free);
        best_val = _mm256_blendv_pd(best_val, slack, better);
        best_idx = _mm256_blendv_pd(best_idx, _mm256_castsi256_pd(idx), better);
        idx = _mm256_add_epi64(idx, four);
    }

    alignas(32) double lane_val[4];
    alignas(32) std::int64_t lane_idx[4];
    _mm256_store_pd(lane_val, best_val);
    _mm256_store_si256(reinterpret_cast<__m256i*>(lane_idx), _mm256_castpd_si256(best_idx));

    ScanResult best{kInf, kNoColumn};
    for (int l = 0; l < 4; ++l) {
        if (lane_idx[l] < 0) continue;
        const auto j = static_cast<std::size_t>(lane_idx[l]);
        if (lane_val[l] < best.delta || (lane_val[l] == best.delta && j < best.column)) {
            best.delta = lane_val[l];
            best.column = j;
        }
    }
    for (std::size_t j = n4; j < n; ++j) {
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

void shift_avx2(std::span<const std::uint8_t> used, std::span<double> col_potential, std::span<double> min_slack,
                double delta) {
    const std::size_t n = used.size();
    const std::size_t n4 = n & ~std::size_t{3};
    const __m256d d = _mm256_set1_pd(delta);
    for (std::size_t j = 0; j < n4; j += 4) {
        const __m256d free = free_mask(used.data() + j);
        const __m256d v = _mm256_loadu_pd(col_potential.data() + j);
        const __m256d s = _mm256_loadu_pd(min_slack.data() + j);
        _mm256_storeu_pd(col_potential.data() + j, _mm256_blendv_pd(_mm256_sub_pd(v, d), v, free));
        _mm256_storeu_pd(min_slack.data() + j, _mm256_blendv_pd(s, _mm256_sub_pd(s, d), free));
    }
    for (std::size_t j = n4; j < n; ++j) {
        if (used[j]) {
            col_potential[j] -= delta;
        } else {
            min_slack[j] -= delta;
        }
    }
}

void tally_avx2(std::span<const std::int32_t> positions, std::int32_t pivot, std::span<std::int32_t> row) {
    const std::size_t n = positions.size();
    const std::size_t n8 = n & ~std::size_t{7};
    const __m256i p = _mm256_set1_epi32(pivot);
    for (std::size_t b = 0; b < n8; b += 8) {
        const __m256i pos = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(positions.data() + b));
        auto* out = reinterpret_cast<__m256i*>(row.data() + b);
        // cmpgt yields -1 in matching lanes.
        _mm256_storeu_si256(out, _mm256_sub_epi32(_mm256_loadu_si256(out), _mm256_cmpgt_epi32(pos, p)));
    }
    for (std::size_t b = n8; b < n; ++b) row[b] += positions[b] > pivot ? 1 : 0;
}

double abs_diff_sum_avx2(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    const std::size_t n4 = n & ~std::size_t{3};
    const __m256d sign = _mm256_set1_pd(-0.0);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < n4; i += 4) {
        const __m256d diff = _mm256_sub_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i));
        acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign, diff));
    }
    alignas(32) double partial[4];
    _mm256_store_pd(partial, acc);
    for (std::size_t i = n4; i < n; ++i) partial[i % 4] += std::fabs(a[i] - b[i]);
    return (partial[0] + partial[1]) + (partial[2] + partial[3]);
}

constexpr KernelTable kAvx2{
    "avx2", scan_avx2, shift_avx2, tally_avx2, abs_diff_sum_avx2,
};

} // namespace

const KernelTable& avx2_kernel_table() { return kAvx2; }

} // namespace mallows::kernels

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <random>

#include "mallows/kernels.hpp"

using namespace mallows::kernels;

namespace {

std::uint64_t bits(double x) { return std::bit_cast<std::uint64_t>(x); }

const KernelTable* simd() { return avx2_kernels(); }

std::vector<std::size_t> sizes() { return {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 64, 101}; }

} // namespace

TEST(Kernels, ScalarListedFirst) {
    const auto all = available();
    ASSERT_FALSE(all.empty());
    EXPECT_EQ(all.front(), &scalar_kernels());
    EXPECT_EQ(scalar_kernels().name, "scalar");
}

TEST(Kernels, ScalarScanPicksFirstMinimum) {
    const std::vector<double> row{3, 1, 1, 5};
    const std::vector<double> col(4, 0.0);
    const std::vector<std::uint8_t> used{0, 0, 0, 0};
    std::vector<double> slack(4, std::numeric_limits<double>::infinity());
    std::vector<std::int64_t> way(4, 0);
    const ScanResult r = scalar_kernels().assignment_scan(row, 0.0, col, used, slack, way, 7);
    EXPECT_EQ(r.column, 1u);
    EXPECT_EQ(r.delta, 1.0);
    for (auto w : way) EXPECT_EQ(w, 7);

    const std::vector<std::uint8_t> all_used{1, 1, 1, 1};
    EXPECT_EQ(scalar_kernels().assignment_scan(row, 0.0, col, all_used, slack, way, 7).column, kNoColumn);
}

TEST(Kernels, ScanMatchesScalar) {
    if (simd() == nullptr) GTEST_SKIP() << "AVX2 unavailable";
    std::mt19937_64 gen(1);
    std::uniform_int_distribution<int> small(0, 4); // coarse values to force ties
    std::uniform_real_distribution<double> real(-3, 3);
    std::bernoulli_distribution coin(0.3);
    for (std::size_t n : sizes()) {
        for (int rep = 0; rep < 50; ++rep) {
            const bool coarse = rep % 2 == 0;
            std::vector<double> row(n), col(n), slack(n);
            std::vector<std::uint8_t> used(n);
            std::vector<std::int64_t> way(n);
            for (std::size_t j = 0; j < n; ++j) {
                row[j] = coarse ? small(gen) : real(gen);
                col[j] = coarse ? small(gen) : real(gen);
                slack[j] = coin(gen) ? std::numeric_limits<double>::infinity() : (coarse ? small(gen) : real(gen));
                used[j] = coin(gen) ? 1 : 0;
                way[j] = static_cast<std::int64_t>(gen() % 100);
            }
            const double rp = coarse ? 1.0 : real(gen);
            auto slack_b = slack;
            auto way_b = way;
            const ScanResult a = scalar_kernels().assignment_scan(row, rp, col, used, slack, way, 42);
            const ScanResult b = simd()->assignment_scan(row, rp, col, used, slack_b, way_b, 42);
            ASSERT_EQ(a.column, b.column) << "n=" << n << " rep=" << rep;
            ASSERT_EQ(bits(a.delta), bits(b.delta));
            for (std::size_t j = 0; j < n; ++j) {
                ASSERT_EQ(bits(slack[j]), bits(slack_b[j]));
                ASSERT_EQ(way[j], way_b[j]);
            }
        }
    }
}

TEST(Kernels, ShiftMatchesScalar) {
    if (simd() == nullptr) GTEST_SKIP() << "AVX2 unavailable";
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> real(-10, 10);
    for (std::size_t n : sizes()) {
        std::vector<std::uint8_t> used(n);
        std::vector<double> col(n), slack(n);
        for (std::size_t j = 0; j < n; ++j) {
            used[j] = gen() % 2;
            col[j] = real(gen);
            slack[j] = real(gen);
        }
        auto col_b = col;
        auto slack_b = slack;
        const double delta = real(gen);
        scalar_kernels().assignment_shift(used, col, slack, delta);
        simd()->assignment_shift(used, col_b, slack_b, delta);
        for (std::size_t j = 0; j < n; ++j) {
            ASSERT_EQ(bits(col[j]), bits(col_b[j]));
            ASSERT_EQ(bits(slack[j]), bits(slack_b[j]));
        }
    }
}

TEST(Kernels, TallyMatchesScalar) {
    std::mt19937_64 gen(3);
    for (const KernelTable* k : available()) {
        for (std::size_t n : sizes()) {
            std::vector<std::int32_t> pos(n), expected(n), row(n);
            for (std::size_t b = 0; b < n; ++b) {
                pos[b] = static_cast<std::int32_t>(gen() % 12);
                expected[b] = row[b] = static_cast<std::int32_t>(gen() % 5);
                if (pos[b] > 6) ++expected[b];
            }
            k->tally_beats(pos, 6, row);
            EXPECT_EQ(row, expected) << k->name << " n=" << n;
        }
    }
}

TEST(Kernels, AbsDiffSumMatchesScalar) {
    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> real(-1, 1);
    for (std::size_t n : sizes()) {
        std::vector<double> a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = real(gen) * std::pow(10.0, static_cast<int>(gen() % 7) - 3);
            b[i] = real(gen);
        }
        const double ref = scalar_kernels().abs_diff_sum(a, b);
        for (const KernelTable* k : available()) {
            EXPECT_EQ(bits(ref), bits(k->abs_diff_sum(a, b))) << k->name << " n=" << n;
        }
    }
    const std::vector<double> x{1, 2, 3}, y{0, 4, 3};
    EXPECT_EQ(scalar_kernels().abs_diff_sum(x, y), 3.0);
}

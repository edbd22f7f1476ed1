#include "mallows/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mallows/analytic.hpp"
#include "mallows/errors.hpp"
#include "mallows/oracle.hpp"
#include "mallows/parallel.hpp"

namespace mallows::sampler {

InsertionTable::InsertionTable(double phi, std::size_t m) : phi_(phi), prefix_(m + 1, 0.0) {
    analytic::detail::check_phi(phi, "InsertionTable");
    double power = 1.0;
    for (std::size_t j = 1; j <= m; ++j) {
        prefix_[j] = prefix_[j - 1] + power;
        power *= phi;
    }
}

std::size_t InsertionTable::draw_displacement(std::size_t k, double u) const {
    const double target = u * prefix_[k];
    const auto first = prefix_.begin() + 1;
    const auto hit = std::upper_bound(first, first + static_cast<std::ptrdiff_t>(k), target);
    const auto d = static_cast<std::size_t>(hit - first);
    return std::min(d, k - 1);
}

Ranking rim_sample(const InsertionTable& table, SplitMix64& rng) {
    const std::size_t m = table.size();
    std::vector<AltId> order;
    order.reserve(m);
    for (std::size_t k = 1; k <= m; ++k) {
        const std::size_t d = table.draw_displacement(k, rng.uniform01());
        order.insert(order.begin() + static_cast<std::ptrdiff_t>(k - 1 - d), static_cast<AltId>(k - 1));
    }
    return Ranking(std::move(order));
}

Ranking rim_sample(double phi, std::size_t m, SplitMix64& rng) {
    return rim_sample(InsertionTable(phi, m), rng);
}

Profile sample_profile(const SamplerConfig& cfg, unsigned threads) {
    if (cfg.m < 1) throw DomainError("sample_profile: m must be at least 1");
    if (cfg.n < 1) throw DomainError("sample_profile: n must be at least 1");
    if (cfg.central && cfg.central->size() != cfg.m) {
        throw DomainError("sample_profile: central order has " + std::to_string(cfg.central->size()) +
                          " alternatives, expected " + std::to_string(cfg.m));
    }
    const InsertionTable table(cfg.dispersion.resolve_phi(cfg.m), cfg.m);

    std::vector<Ranking> rankings(cfg.n);
    parallel_for(cfg.n, threads, [&](std::size_t i) {
        SplitMix64 rng = SplitMix64::substream(cfg.seed, i);
        Ranking v = rim_sample(table, rng);
        if (cfg.central) {
            const auto centre = cfg.central->ranking().order();
            std::vector<AltId> mapped(cfg.m);
            for (std::size_t p = 0; p < cfg.m; ++p) mapped[p] = centre[v.order()[p]];
            v = Ranking(std::move(mapped));
        }
        rankings[i] = std::move(v);
    });
    return Profile::with_default_alternatives(std::move(rankings));
}

std::size_t permutation_rank(std::span<const AltId> order) {
    const std::size_t m = order.size();
    std::size_t rank = 0;
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t smaller_after = 0;
        for (std::size_t j = i + 1; j < m; ++j) smaller_after += order[j] < order[i] ? 1 : 0;
        rank = rank * (m - i) + smaller_after;
    }
    return rank;
}

double PmfCheck::worst_ratio() const {
    double worst = 0.0;
    for (std::size_t r = 0; r < pmf.size(); ++r) {
        const double diff = std::fabs(empirical[r] - pmf[r]);
        if (diff == 0.0) continue;
        const double bound = 4.0 * std::sqrt(pmf[r] * (1.0 - pmf[r]) / static_cast<double>(samples));
        if (bound == 0.0) return std::numeric_limits<double>::infinity();
        worst = std::max(worst, diff / bound);
    }
    return worst;
}

PmfCheck sample_pmf_check(double phi, std::size_t m, std::size_t samples, std::uint64_t seed) {
    if (m > 5) throw CapacityError("sample_pmf_check: m=" + std::to_string(m) + " exceeds 5");
    if (m < 1) throw DomainError("sample_pmf_check: m must be at least 1");
    if (samples < 1) throw DomainError("sample_pmf_check: samples must be at least 1");

    const oracle::ExhaustiveTable exact(phi, m);
    PmfCheck out;
    out.samples = samples;
    out.pmf.assign(exact.size(), 0.0);
    for (std::size_t r = 0; r < exact.size(); ++r) {
        out.pmf[permutation_rank(exact.rankings()[r].order())] = exact.weights()[r];
    }

    std::vector<std::uint64_t> counts(exact.size(), 0);
    const InsertionTable table(phi, m);
    SplitMix64 rng(seed);
    for (std::size_t s = 0; s < samples; ++s) ++counts[permutation_rank(rim_sample(table, rng).order())];
    out.empirical.resize(counts.size());
    for (std::size_t r = 0; r < counts.size(); ++r) {
        out.empirical[r] = static_cast<double>(counts[r]) / static_cast<double>(samples);
    }
    return out;
}

} // namespace mallows::sampler

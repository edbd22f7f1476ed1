#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "mallows/core.hpp"
#include "mallows/normalize.hpp"
#include "mallows/rng.hpp"

namespace mallows::sampler {

struct SamplerConfig {
    normalize::DispersionSpec dispersion = normalize::DispersionSpec::classic(1.0);
    std::size_t m = 1;
    std::size_t n = 1;
    std::uint64_t seed = 0;
    std::optional<CentralOrder> central; // lexicographic when empty
};

// Prefix sums A_j = sum_{t<j} phi^t for j = 0..m, shared by every insertion
// step of every ranking drawn with the same (phi, m).
class InsertionTable {
  public:
    InsertionTable(double phi, std::size_t m);

    double phi() const noexcept { return phi_; }
    std::size_t size() const noexcept { return prefix_.size() - 1; }

    // Displacement d in [0, k) from the bottom of a k-element ranking, with
    // P(d) = phi^d / A_k, by inverse CDF on the prefix sums.
    std::size_t draw_displacement(std::size_t k, double u) const;

  private:
    double phi_;
    std::vector<double> prefix_;
};

// Repeated Insertion Model over the lexicographic central order: c1, ..., cm
// are inserted in turn, c_k at 1-based position j in [1, k] with probability
// phi^{k-j} / sum_{i<k} phi^i. One uniform draw per step.
Ranking rim_sample(double phi, std::size_t m, SplitMix64& rng);
Ranking rim_sample(const InsertionTable& table, SplitMix64& rng);

// Ranking i is drawn from SplitMix64::substream(cfg.seed, i), so the profile
// does not depend on `threads`.
Profile sample_profile(const SamplerConfig& cfg, unsigned threads = 1);

// Rank of `order` among all permutations of 0..m-1 in lexicographic order.
std::size_t permutation_rank(std::span<const AltId> order);

struct PmfCheck {
    std::size_t samples = 0;
    std::vector<double> empirical; // indexed by permutation_rank
    std::vector<double> pmf;       // exact Mallows probabilities, same order

    // max over rankings of |empirical - pmf| / (4 sqrt(pmf (1 - pmf) / samples)),
    // with 0/0 read as 0 and x/0 as +inf. The check passes when this is <= 1.
    double worst_ratio() const;
};

// Empirical frequencies of rim_sample over S_m. Throws CapacityError for m > 5.
PmfCheck sample_pmf_check(double phi, std::size_t m, std::size_t samples, std::uint64_t seed);

} // namespace mallows::sampler

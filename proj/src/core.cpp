#include "mallows/core.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "mallows/errors.hpp"

namespace mallows {

namespace {

constexpr std::uint32_t kUnset = 0xffffffffu;

std::uint64_t merge_count(std::vector<std::uint32_t>& seq, std::vector<std::uint32_t>& scratch,
                          std::size_t lo, std::size_t hi) {
    if (hi - lo < 2) return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::uint64_t inversions = merge_count(seq, scratch, lo, mid) + merge_count(seq, scratch, mid, hi);
    std::size_t i = lo;
    std::size_t j = mid;
    std::size_t out = lo;
    while (i < mid && j < hi) {
        if (seq[j] < seq[i]) {
            inversions += mid - i;
            scratch[out++] = seq[j++];
        } else {
            scratch[out++] = seq[i++];
        }
    }
    while (i < mid) scratch[out++] = seq[i++];
    while (j < hi) scratch[out++] = seq[j++];
    std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo),
              scratch.begin() + static_cast<std::ptrdiff_t>(hi),
              seq.begin() + static_cast<std::ptrdiff_t>(lo));
    return inversions;
}

} // namespace

Ranking::Ranking(std::vector<AltId> order) : order_(std::move(order)), pos_(order_.size(), kUnset) {
    const std::size_t m = order_.size();
    for (std::size_t i = 0; i < m; ++i) {
        const AltId a = order_[i];
        if (a >= m) {
            throw DomainError("ranking: alternative id " + std::to_string(a) + " out of range for m=" +
                              std::to_string(m));
        }
        if (pos_[a] != kUnset) {
            throw DomainError("ranking: alternative id " + std::to_string(a) + " appears twice");
        }
        pos_[a] = static_cast<std::uint32_t>(i);
    }
}

Ranking Ranking::identity(std::size_t m) {
    std::vector<AltId> order(m);
    std::iota(order.begin(), order.end(), AltId{0});
    return Ranking(std::move(order));
}

AltId Ranking::at(std::size_t position) const {
    if (position < 1 || position > order_.size()) {
        throw DomainError("ranking: position " + std::to_string(position) + " out of range");
    }
    return order_[position - 1];
}

std::size_t Ranking::position_of(AltId alt) const {
    if (alt >= pos_.size()) {
        throw DomainError("ranking: alternative id " + std::to_string(alt) + " out of range");
    }
    return static_cast<std::size_t>(pos_[alt]) + 1;
}

Profile::Profile(std::vector<Alternative> alternatives, std::vector<Ranking> rankings)
    : alternatives_(std::move(alternatives)), rankings_(std::move(rankings)) {
    if (alternatives_.empty()) throw DomainError("profile: needs at least one alternative");
    if (rankings_.empty()) throw DomainError("profile: needs at least one ranking");
    for (const Ranking& r : rankings_) {
        if (r.size() != alternatives_.size()) {
            throw DomainError("profile: ranking over " + std::to_string(r.size()) +
                              " alternatives, profile declares " + std::to_string(alternatives_.size()));
        }
    }
}

std::vector<Alternative> Profile::default_alternatives(std::size_t m) {
    std::vector<Alternative> alts;
    alts.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        alts.push_back({i + 1, "c" + std::to_string(i + 1)});
    }
    return alts;
}

Profile Profile::with_default_alternatives(std::vector<Ranking> rankings) {
    if (rankings.empty()) throw DomainError("profile: needs at least one ranking");
    const std::size_t m = rankings.front().size();
    return Profile(default_alternatives(m), std::move(rankings));
}

std::uint64_t kendall_tau(const Ranking& u, const Ranking& v) {
    if (u.size() != v.size()) {
        throw DomainError("kendall_tau: rankings over different alternative sets (m=" +
                          std::to_string(u.size()) + " vs m=" + std::to_string(v.size()) + ")");
    }
    // Positions in v of u's order; inversions of that sequence are the
    // discordant pairs.
    const auto pv = v.positions0();
    std::vector<std::uint32_t> seq(u.size());
    const auto order = u.order();
    for (std::size_t i = 0; i < seq.size(); ++i) seq[i] = pv[order[i]];
    std::vector<std::uint32_t> scratch(seq.size());
    return merge_count(seq, scratch, 0, seq.size());
}

Profile restrict_profile(const Profile& profile, std::span<const AltId> keep) {
    const std::size_t m = profile.num_alternatives();
    if (keep.empty()) throw DomainError("restrict_profile: empty keep set");

    std::vector<std::uint32_t> remap(m, kUnset);
    for (AltId a : keep) {
        if (a >= m) throw DomainError("restrict_profile: unknown alternative id " + std::to_string(a));
        remap[a] = 0;
    }
    std::vector<Alternative> alts;
    std::uint32_t next = 0;
    for (std::size_t a = 0; a < m; ++a) {
        if (remap[a] == kUnset) continue;
        remap[a] = next++;
        alts.push_back(profile.alternatives()[a]);
    }

    std::vector<Ranking> rankings;
    rankings.reserve(profile.num_rankings());
    for (const Ranking& r : profile.rankings()) {
        std::vector<AltId> order;
        order.reserve(next);
        for (AltId a : r.order()) {
            if (remap[a] != kUnset) order.push_back(remap[a]);
        }
        rankings.emplace_back(std::move(order));
    }
    return Profile(std::move(alts), std::move(rankings));
}

Profile random_restriction(const Profile& profile, std::size_t m_target, SplitMix64& rng) {
    const std::size_t m = profile.num_alternatives();
    if (m_target < 1 || m_target > m) {
        throw DomainError("random_restriction: m_target=" + std::to_string(m_target) + " outside [1, " +
                          std::to_string(m) + "]");
    }
    // Partial Fisher-Yates: the first m_target slots form a uniform subset.
    std::vector<AltId> ids(m);
    std::iota(ids.begin(), ids.end(), AltId{0});
    for (std::size_t i = 0; i < m_target; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.uniform_below(m - i));
        std::swap(ids[i], ids[j]);
    }
    ids.resize(m_target);
    return restrict_profile(profile, ids);
}

} // namespace mallows

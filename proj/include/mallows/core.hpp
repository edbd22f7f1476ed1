#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mallows/rng.hpp"

namespace mallows {

// Dense alternative index in [0, m). Display names and external ids live in
// Profile::alternatives().
using AltId = std::uint32_t;

// A strict total order over alternatives {0, ..., m-1}, best first.
//
// Positions in the public interface are 1-based: at(1) is the top choice and
// position_of(a) is in [1, m].
class Ranking {
  public:
    Ranking() = default;

    // Throws DomainError unless `order` is a permutation of 0..m-1.
    explicit Ranking(std::vector<AltId> order);

    static Ranking identity(std::size_t m);

    std::size_t size() const noexcept { return order_.size(); }
    std::span<const AltId> order() const noexcept { return order_; }

    AltId at(std::size_t position) const;
    std::size_t position_of(AltId alt) const;

    // 0-based position of each alternative, indexed by AltId.
    std::span<const std::uint32_t> positions0() const noexcept { return pos_; }

    bool operator==(const Ranking& other) const noexcept { return order_ == other.order_; }

  private:
    std::vector<AltId> order_;
    std::vector<std::uint32_t> pos_;
};

// The central order v* of a Mallows model. Lexicographic (c1 > c2 > ... > cm)
// unless stated otherwise.
class CentralOrder {
  public:
    explicit CentralOrder(Ranking order) : order_(std::move(order)) {}

    static CentralOrder lexicographic(std::size_t m) { return CentralOrder(Ranking::identity(m)); }

    const Ranking& ranking() const noexcept { return order_; }
    std::size_t size() const noexcept { return order_.size(); }

  private:
    Ranking order_;
};

struct Alternative {
    std::uint64_t id = 0; // external id, e.g. from a ranking file
    std::string name;

    bool operator==(const Alternative&) const = default;
};

// n >= 1 rankings over a shared set of m >= 1 alternatives.
class Profile {
  public:
    Profile(std::vector<Alternative> alternatives, std::vector<Ranking> rankings);

    // Alternatives get external ids 1..m and names c1..cm.
    static Profile with_default_alternatives(std::vector<Ranking> rankings);
    static std::vector<Alternative> default_alternatives(std::size_t m);

    std::size_t num_alternatives() const noexcept { return alternatives_.size(); }
    std::size_t num_rankings() const noexcept { return rankings_.size(); }

    std::span<const Alternative> alternatives() const noexcept { return alternatives_; }
    std::span<const Ranking> rankings() const noexcept { return rankings_; }
    const Ranking& operator[](std::size_t i) const { return rankings_.at(i); }

    bool operator==(const Profile& other) const noexcept {
        return alternatives_ == other.alternatives_ && rankings_ == other.rankings_;
    }

  private:
    std::vector<Alternative> alternatives_;
    std::vector<Ranking> rankings_;
};

// Swap (Kendall tau) distance: number of pairs ordered differently by u and v.
// O(m log m) merge count. Throws DomainError if the sizes differ.
std::uint64_t kendall_tau(const Ranking& u, const Ranking& v);

// Keeps only the alternatives in `keep`, preserving their relative order in
// every ranking. Kept alternatives are re-indexed densely in ascending order of
// their old ids. Throws DomainError for an empty set or an unknown id.
Profile restrict_profile(const Profile& profile, std::span<const AltId> keep);

// Restricts to a uniformly random subset of size m_target, drawn once and
// applied to every ranking.
Profile random_restriction(const Profile& profile, std::size_t m_target, SplitMix64& rng);

} // namespace mallows

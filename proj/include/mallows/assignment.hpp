#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mallows/kernels.hpp"

namespace mallows {

struct AssignmentResult {
    double cost = 0.0;
    std::vector<std::size_t> column_of_row;
};

// Minimum-cost perfect matching on a square n x n cost matrix (row-major),
// by the O(n^3) shortest augmenting path method with dual potentials. The
// inner column sweeps go through `kernels`; every kernel variant yields the
// same matching and cost.
AssignmentResult solve_assignment(std::span<const double> cost, std::size_t n,
                                  const kernels::KernelTable& kernels = kernels::active());

} // namespace mallows

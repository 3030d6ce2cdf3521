#pragma once

#include <cstddef>
#include <vector>

namespace socnet::detail {

/// Minimum-cost rectangular assignment (Hungarian method with potentials,
/// O(r^2 c)). `cost` is row-major rows x cols. Returns, for every row, the
/// assigned column or -1 when rows outnumber columns.
std::vector<long> min_cost_assignment(const std::vector<double>& cost, std::size_t rows, std::size_t cols);

}  // namespace socnet::detail

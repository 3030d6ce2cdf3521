#include "assignment.hpp"

#include <limits>

namespace socnet::detail {

namespace {

// Requires n <= m. Returns row -> column.
std::vector<long> solve(const std::vector<double>& a, std::size_t n, std::size_t m) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    // 1-based arrays; index 0 is the virtual source column
    std::vector<double> u(n + 1, 0.0);
    std::vector<double> v(m + 1, 0.0);
    std::vector<std::size_t> p(m + 1, 0);
    std::vector<std::size_t> way(m + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(m + 1, inf);
        std::vector<bool> used(m + 1, false);
        do {
            used[j0] = true;
            const std::size_t i0 = p[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= m; ++j) {
                if (used[j]) {
                    continue;
                }
                const double cur = a[(i0 - 1) * m + (j - 1)] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= m; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<long> row_to_col(n, -1);
    for (std::size_t j = 1; j <= m; ++j) {
        if (p[j] != 0) {
            row_to_col[p[j] - 1] = static_cast<long>(j - 1);
        }
    }
    return row_to_col;
}

}  // namespace

std::vector<long> min_cost_assignment(const std::vector<double>& cost, std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) {
        return std::vector<long>(rows, -1);
    }
    if (rows <= cols) {
        return solve(cost, rows, cols);
    }
    std::vector<double> t(cols * rows);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            t[c * rows + r] = cost[r * cols + c];
        }
    }
    const auto col_to_row = solve(t, cols, rows);
    std::vector<long> out(rows, -1);
    for (std::size_t c = 0; c < cols; ++c) {
        out[static_cast<std::size_t>(col_to_row[c])] = static_cast<long>(c);
    }
    return out;
}

}  // namespace socnet::detail

#pragma once

#include <limits>
#include <vector>

#include "deid/errors.hpp"

namespace deid {

/// Result of a maximum-weight one-to-one assignment.  `match[i]` is the
/// column assigned to row i, or -1 when the row is left unmatched (possible
/// only on rectangular inputs).
struct Assignment {
    std::vector<int> match;
    double total = 0.0;
};

/// Maximum-weight bipartite assignment via the Hungarian algorithm with
/// potentials, O(k^3).  Rectangular matrices are implicitly zero-padded to
/// square, so leaving a row or column unmatched costs nothing.  Entries must
/// be non-negative.
inline Assignment max_assignment(const std::vector<std::vector<double>>& weight) {
    const std::size_t rows = weight.size();
    const std::size_t cols = rows ? weight[0].size() : 0;
    for (const auto& row : weight) {
        if (row.size() != cols) throw integrity_error("assignment matrix is ragged");
        for (double w : row) {
            if (w < 0.0) throw integrity_error("assignment weights must be non-negative");
        }
    }
    Assignment result;
    result.match.assign(rows, -1);
    if (rows == 0 || cols == 0) return result;

    const std::size_t n = std::max(rows, cols);
    const double INF = std::numeric_limits<double>::infinity();
    // Minimize negated weights on the zero-padded square matrix.
    const auto cost = [&](std::size_t i, std::size_t j) -> double {
        return (i < rows && j < cols) ? -weight[i][j] : 0.0;
    };

    // Standard potential-based implementation, 1-indexed with column 0 as
    // the virtual source.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(n + 1, INF);
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            const std::size_t i0 = p[j0];
            double delta = INF;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
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

    for (std::size_t j = 1; j <= n; ++j) {
        const std::size_t i = p[j];
        if (i >= 1 && i <= rows && j <= cols) {
            result.match[i - 1] = static_cast<int>(j - 1);
            result.total += weight[i - 1][j - 1];
        }
    }
    return result;
}

} // namespace deid

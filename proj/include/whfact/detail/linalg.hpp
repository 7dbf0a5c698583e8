// SPDX-License-Identifier: MIT
#pragma once

#include <cmath>
#include <complex>

#include <Eigen/Dense>

namespace whfact::detail {

// Parlett-Reinsch style balancing by powers of two. The diagonal is included
// in the norms, which is harmless for companion-type matrices.
template <typename Matrix>
void balance_matrix(Matrix& a) {
    const Eigen::Index n = a.rows();
    constexpr double gamma = 0.95;
    bool changed = true;
    int sweeps = 0;
    while (changed && sweeps++ < 100) {
        changed = false;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double row_norm = a.row(i).cwiseAbs().sum();
            const double col_norm = a.col(i).cwiseAbs().sum();
            if (row_norm == 0.0 || col_norm == 0.0) continue;
            int exponent = 0;
            std::frexp(row_norm / col_norm, &exponent);
            exponent /= 2;
            if (exponent == 0) continue;
            const double scaled_col = std::ldexp(col_norm, exponent);
            const double scaled_row = std::ldexp(row_norm, -exponent);
            if (scaled_col + scaled_row < gamma * (col_norm + row_norm)) {
                changed = true;
                a.row(i) *= std::ldexp(1.0, -exponent);
                a.col(i) *= std::ldexp(1.0, exponent);
            }
        }
    }
}

}  // namespace whfact::detail

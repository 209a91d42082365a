#ifndef NOVIKOV_SMITH_HPP
#define NOVIKOV_SMITH_HPP

#include "novikov/matrix.hpp"

namespace novikov {

/// Smith normal form of an integer matrix: U * M * V = diag(divisors)
/// with U, V unimodular and d1 | d2 | ... nonnegative.
struct SmithResult {
    std::vector<Int> divisors;
    std::vector<std::vector<Int>> U;
    std::vector<std::vector<Int>> V;
    int rows = 0;
    int cols = 0;

    int rank() const { return static_cast<int>(divisors.size()); }

    bool all_units() const {
        for (const Int& d : divisors)
            if (d != 1) return false;
        return true;
    }
};

namespace smithdetail {

using Grid = std::vector<std::vector<Int>>;

inline Grid identity_grid(int n) {
    Grid g(n, std::vector<Int>(n, 0));
    for (int i = 0; i < n; ++i) g[i][i] = 1;
    return g;
}

inline void add_row(Grid& m, int dst, int src, const Int& f) {
    for (size_t c = 0; c < m[dst].size(); ++c) m[dst][c] += f * m[src][c];
}

inline void add_col(Grid& m, int dst, int src, const Int& f) {
    for (size_t r = 0; r < m.size(); ++r) m[r][dst] += f * m[r][src];
}

inline void swap_cols(Grid& m, int a, int b) {
    for (size_t r = 0; r < m.size(); ++r) std::swap(m[r][a], m[r][b]);
}

inline void negate_row(Grid& m, int r) {
    for (size_t c = 0; c < m[r].size(); ++c) m[r][c] = -m[r][c];
}

} // namespace smithdetail

inline SmithResult smith_normal_form(std::vector<std::vector<Int>> m, int rows, int cols) {
    using namespace smithdetail;
    SmithResult out;
    out.rows = rows;
    out.cols = cols;
    out.U = identity_grid(rows);
    out.V = identity_grid(cols);
    const int steps = std::min(rows, cols);
    for (int t = 0; t < steps; ++t) {
        // pivot: smallest nonzero absolute value in the trailing block
        int pi = -1, pj = -1;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j) {
                if (m[i][j] == 0) continue;
                if (pi < 0 || abs(m[i][j]) < abs(m[pi][pj])) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;
        if (pi != t) {
            std::swap(m[pi], m[t]);
            std::swap(out.U[pi], out.U[t]);
        }
        if (pj != t) {
            swap_cols(m, pj, t);
            swap_cols(out.V, pj, t);
        }
        bool again = true;
        while (again) {
            again = false;
            // clear column t
            for (int i = t + 1; i < rows; ++i) {
                if (m[i][t] == 0) continue;
                Int q = m[i][t] / m[t][t];
                if (q != 0) {
                    add_row(m, i, t, -q);
                    add_row(out.U, i, t, -q);
                }
                if (m[i][t] != 0) {
                    // remainder strictly smaller: make it the pivot
                    std::swap(m[i], m[t]);
                    std::swap(out.U[i], out.U[t]);
                    again = true;
                }
            }
            if (again) continue;
            // clear row t
            for (int j = t + 1; j < cols; ++j) {
                if (m[t][j] == 0) continue;
                Int q = m[t][j] / m[t][t];
                if (q != 0) {
                    add_col(m, j, t, -q);
                    add_col(out.V, j, t, -q);
                }
                if (m[t][j] != 0) {
                    swap_cols(m, j, t);
                    swap_cols(out.V, j, t);
                    again = true;
                }
            }
            if (again) continue;
            // force divisibility of the trailing block by the pivot
            for (int i = t + 1; i < rows && !again; ++i)
                for (int j = t + 1; j < cols && !again; ++j)
                    if (m[i][j] % m[t][t] != 0) {
                        add_row(m, t, i, 1);
                        add_row(out.U, t, i, 1);
                        again = true;
                    }
        }
        if (m[t][t] < 0) {
            negate_row(m, t);
            negate_row(out.U, t);
        }
    }
    for (int t = 0; t < steps; ++t)
        if (m[t][t] != 0) out.divisors.push_back(m[t][t]);
    return out;
}

inline SmithResult smith_normal_form(const RingMatrix<GroundElement>& m) {
    std::vector<std::vector<Int>> g(m.rows(), std::vector<Int>(m.cols()));
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) g[r][c] = m.at(r, c).integer_value();
    return smith_normal_form(std::move(g), m.rows(), m.cols());
}

inline RingMatrix<GroundElement> grid_to_matrix(const std::vector<std::vector<Int>>& g, int rows,
                                                int cols, const RingPtr& ring) {
    RingMatrix<GroundElement> m(rows, cols, GroundElement::zero(ring));
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            m.at(r, c) = GroundElement::from_rational(ring, Rational(g[r][c]));
    return m;
}

} // namespace novikov

#endif

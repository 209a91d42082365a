#ifndef NOVIKOV_LINALG_HPP
#define NOVIKOV_LINALG_HPP

#include "novikov/matrix.hpp"

namespace novikov {

template <typename T>
struct Rref {
    RingMatrix<T> reduced;   ///< U * M in reduced row echelon form
    RingMatrix<T> transform; ///< invertible U
    std::vector<int> pivot_columns;
};

/// Gauss-Jordan over a field carrier (Q-valued GroundElement or
/// RationalFunction).
template <typename T>
Rref<T> rref_with_transform(const RingMatrix<T>& m) {
    Rref<T> out{m, RingMatrix<T>::identity(m.rows(), m.proto()), {}};
    RingMatrix<T>& a = out.reduced;
    RingMatrix<T>& u = out.transform;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int piv = -1;
        for (int r = row; r < m.rows(); ++r)
            if (!a.at(r, col).is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != row) {
            for (int c = 0; c < a.cols(); ++c) std::swap(a.at(piv, c), a.at(row, c));
            for (int c = 0; c < u.cols(); ++c) std::swap(u.at(piv, c), u.at(row, c));
        }
        const T inv = a.at(row, col).inverse();
        for (int c = 0; c < a.cols(); ++c) a.at(row, c) = inv * a.at(row, c);
        for (int c = 0; c < u.cols(); ++c) u.at(row, c) = inv * u.at(row, c);
        for (int r = 0; r < m.rows(); ++r) {
            if (r == row || a.at(r, col).is_zero()) continue;
            const T f = a.at(r, col);
            for (int c = 0; c < a.cols(); ++c) a.at(r, c) = a.at(r, c) - f * a.at(row, c);
            for (int c = 0; c < u.cols(); ++c) u.at(r, c) = u.at(r, c) - f * u.at(row, c);
        }
        out.pivot_columns.push_back(col);
        ++row;
    }
    return out;
}

template <typename T>
int rank(const RingMatrix<T>& m) {
    return static_cast<int>(rref_with_transform(m).pivot_columns.size());
}

/// Inverse over a field carrier; throws when singular.
template <typename T>
RingMatrix<T> field_inverse(const RingMatrix<T>& m) {
    if (m.rows() != m.cols()) throw error("inverting a non-square matrix");
    Rref<T> r = rref_with_transform(m);
    if (static_cast<int>(r.pivot_columns.size()) != m.rows())
        throw error("matrix is singular over the field");
    return r.transform;
}

/// Adjugate over a commutative carrier (no division).
template <typename T>
RingMatrix<T> adjugate(const RingMatrix<T>& m) {
    if (m.rows() != m.cols()) throw error("adjugate of a non-square matrix");
    const int n = m.rows();
    RingMatrix<T> adj(n, n, m.proto());
    if (n == 0) return adj;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            RingMatrix<T> minor(n - 1, n - 1, m.proto());
            for (int i = 0, im = 0; i < n; ++i) {
                if (i == r) continue;
                for (int k = 0, km = 0; k < n; ++k) {
                    if (k == c) continue;
                    minor.at(im, km) = m.at(i, k);
                    ++km;
                }
                ++im;
            }
            T d = determinant(minor);
            adj.at(c, r) = ((r + c) & 1) ? -d : d;
        }
    return adj;
}

/// Whether a square GroundElement matrix is invertible over its declared
/// ring: det = ±1 over Z, det != 0 over Q, det = ±monomial over a group
/// ring.
inline bool ground_invertible(const RingMatrix<GroundElement>& m) {
    if (m.rows() != m.cols()) return false;
    const GroundElement d = determinant(m);
    return m.proto().ring()->is_field() ? !d.is_zero() : d.is_unit();
}

/// Exact inverse of a GroundElement matrix over Z, Q, or a group ring.
inline RingMatrix<GroundElement> ground_matrix_inverse(const RingMatrix<GroundElement>& m) {
    if (m.rows() != m.cols()) throw error("inverting a non-square matrix");
    if (m.proto().ring()->is_field()) return field_inverse(m);
    const GroundElement d = determinant(m);
    if (!d.is_unit())
        throw error("matrix is not invertible over its ground ring (determinant not a unit)");
    return adjugate(m).scaled_right(d.unit_inverse());
}

inline RingMatrix<TwistedElement> to_twisted_matrix(const RingMatrix<GroundElement>& m,
                                                    int z_power = 0) {
    const RingPtr& ring = m.proto().ring();
    return m.map_to(TwistedElement::zero(ring), [&](const GroundElement& a) {
        return TwistedElement::z_power(ring, z_power, a);
    });
}

inline RingMatrix<NovikovSeries> to_series_matrix(const RingMatrix<GroundElement>& m,
                                                  int z_power = 0) {
    const RingPtr& ring = m.proto().ring();
    return m.map_to(NovikovSeries::zero(ring), [&](const GroundElement& a) {
        return NovikovSeries::from_ground(a).shift(z_power);
    });
}

inline RingMatrix<NovikovSeries> twisted_to_series_matrix(const RingMatrix<TwistedElement>& m,
                                                          int order = kExactOrder) {
    const RingPtr& ring = m.proto().ring();
    return m.map_to(NovikovSeries::zero(ring), [&](const TwistedElement& a) {
        return NovikovSeries::from_twisted(a, order);
    });
}

inline RingMatrix<RationalFunction> to_ratfun_matrix(const RingMatrix<GroundElement>& m,
                                                     int z_power = 0) {
    const RingPtr& ring = m.proto().ring();
    return m.map_to(RationalFunction::zero(ring), [&](const GroundElement& a) {
        return RationalFunction::from_twisted(TwistedElement::z_power(ring, z_power, a));
    });
}

inline RingMatrix<RationalFunction> twisted_to_ratfun_matrix(const RingMatrix<TwistedElement>& m) {
    const RingPtr& ring = m.proto().ring();
    return m.map_to(RationalFunction::zero(ring),
                    [&](const TwistedElement& a) { return RationalFunction::from_twisted(a); });
}

/// Coefficient of z^j of a series matrix, as a matrix over A.
inline RingMatrix<GroundElement> coefficient_matrix(const RingMatrix<NovikovSeries>& m, int j) {
    const RingPtr& ring = m.proto().ring();
    return m.map_to(GroundElement::zero(ring),
                    [&](const NovikovSeries& s) { return s.coefficient(j); });
}

inline RingMatrix<GroundElement> coefficient_matrix(const RingMatrix<TwistedElement>& m, int j) {
    const RingPtr& ring = m.proto().ring();
    return m.map_to(GroundElement::zero(ring),
                    [&](const TwistedElement& s) { return s.coefficient(j); });
}

/// (1 - z h)^{-1} modulo z^{order+1} by the twisted geometric series:
/// sum_j z^j alpha^{j-1}(h) ... alpha(h) h.
inline RingMatrix<NovikovSeries> geometric_inverse(const RingMatrix<GroundElement>& h, int order) {
    if (h.rows() != h.cols()) throw error("geometric inverse of a non-square matrix");
    const RingPtr& ring = h.proto().ring();
    const int n = h.rows();
    RingMatrix<NovikovSeries> out(n, n, NovikovSeries::zero(ring, order));
    RingMatrix<GroundElement> power = RingMatrix<GroundElement>::identity(n, h.proto());
    for (int j = 0; j <= order; ++j) {
        if (j > 0) power = apply_alpha(power, 1) * h;
        if (power.is_zero()) break;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                out.at(r, c) = out.at(r, c) + NovikovSeries::from_ground(power.at(r, c)).shift(j);
    }
    return out;
}

/// Inverse of a series matrix with invertible augmentation, modulo
/// z^{order+1}.
inline RingMatrix<NovikovSeries> series_matrix_inverse(const RingMatrix<NovikovSeries>& m,
                                                       int order) {
    if (m.rows() != m.cols()) throw error("inverting a non-square matrix");
    const RingPtr& ring = m.proto().ring();
    const int n = m.rows();
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (!m.at(r, c).is_zero() && m.at(r, c).valuation_bound() < 0)
                throw error("series matrix inverse: negative z-powers present");
    std::vector<RingMatrix<GroundElement>> mj;
    for (int j = 0; j <= order; ++j) mj.push_back(coefficient_matrix(m, j));
    RingMatrix<GroundElement> n0 = ground_matrix_inverse(mj[0]);
    std::vector<RingMatrix<GroundElement>> nj{n0};
    for (int j = 1; j <= order; ++j) {
        RingMatrix<GroundElement> acc(n, n, GroundElement::zero(ring));
        for (int k = 0; k < j; ++k) acc = acc + apply_alpha(mj[j - k], k) * nj[k];
        nj.push_back(-(apply_alpha(n0, j) * acc));
    }
    RingMatrix<NovikovSeries> out(n, n, NovikovSeries::zero(ring, order));
    for (int j = 0; j <= order; ++j)
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                if (!nj[j].at(r, c).is_zero())
                    out.at(r, c) = out.at(r, c) + NovikovSeries::from_ground(nj[j].at(r, c)).shift(j);
    return out;
}

} // namespace novikov

#endif

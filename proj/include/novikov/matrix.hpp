#ifndef NOVIKOV_MATRIX_HPP
#define NOVIKOV_MATRIX_HPP

#include <functional>
#include <vector>

#include "novikov/ratfun.hpp"

namespace novikov {

inline GroundElement zero_like(const GroundElement& a) { return GroundElement::zero(a.ring()); }
inline GroundElement one_like(const GroundElement& a) { return GroundElement::one(a.ring()); }
inline TwistedElement zero_like(const TwistedElement& a) { return TwistedElement::zero(a.ring()); }
inline TwistedElement one_like(const TwistedElement& a) { return TwistedElement::one(a.ring()); }
inline NovikovSeries zero_like(const NovikovSeries& a) {
    return NovikovSeries::zero(a.ring(), a.order());
}
inline NovikovSeries one_like(const NovikovSeries& a) { return NovikovSeries::one(a.ring()); }
inline RationalFunction zero_like(const RationalFunction& a) { return RationalFunction::zero(a.ring()); }
inline RationalFunction one_like(const RationalFunction& a) { return RationalFunction::one(a.ring()); }

/// Dense rectangular matrix over one of the ring element types.  A zero
/// prototype is kept so that empty matrices still know their ring.
template <typename T>
class RingMatrix {
public:
    RingMatrix() = default;

    RingMatrix(int rows, int cols, const T& zero)
        : rows_(rows), cols_(cols), zero_(zero_like(zero)), e_(static_cast<size_t>(rows) * cols, zero_) {}

    static RingMatrix zeros(int rows, int cols, const T& proto) {
        return RingMatrix(rows, cols, proto);
    }

    static RingMatrix identity(int n, const T& proto) {
        RingMatrix m(n, n, proto);
        const T one = one_like(proto);
        for (int i = 0; i < n; ++i) m.at(i, i) = one;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const T& proto() const { return zero_; }

    T& at(int r, int c) { return e_[static_cast<size_t>(r) * cols_ + c]; }
    const T& at(int r, int c) const { return e_[static_cast<size_t>(r) * cols_ + c]; }

    bool is_zero() const {
        for (const T& x : e_)
            if (!x.is_zero()) return false;
        return true;
    }

    bool is_identity() const {
        if (rows_ != cols_) return false;
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) {
                if (r == c ? !at(r, c).is_one() : !at(r, c).is_zero()) return false;
            }
        return true;
    }

    RingMatrix operator-() const {
        RingMatrix m = *this;
        for (T& x : m.e_) x = -x;
        return m;
    }

    RingMatrix operator+(const RingMatrix& o) const {
        check_shape(o, rows_, cols_);
        RingMatrix m = *this;
        for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = m.e_[i] + o.e_[i];
        return m;
    }

    RingMatrix operator-(const RingMatrix& o) const {
        check_shape(o, rows_, cols_);
        RingMatrix m = *this;
        for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = m.e_[i] - o.e_[i];
        return m;
    }

    RingMatrix operator*(const RingMatrix& o) const {
        if (cols_ != o.rows_) throw error("matrix product shape mismatch");
        RingMatrix m(rows_, o.cols_, zero_);
        for (int r = 0; r < rows_; ++r)
            for (int k = 0; k < cols_; ++k) {
                const T& a = at(r, k);
                if (a.is_zero()) continue;
                for (int c = 0; c < o.cols_; ++c) {
                    if (o.at(k, c).is_zero()) continue;
                    m.at(r, c) = m.at(r, c) + a * o.at(k, c);
                }
            }
        return m;
    }

    RingMatrix scaled_left(const T& s) const {
        RingMatrix m = *this;
        for (T& x : m.e_) x = s * x;
        return m;
    }

    RingMatrix scaled_right(const T& s) const {
        RingMatrix m = *this;
        for (T& x : m.e_) x = x * s;
        return m;
    }

    bool operator==(const RingMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) return false;
        for (size_t i = 0; i < e_.size(); ++i)
            if (!(e_[i] == o.e_[i])) return false;
        return true;
    }
    bool operator!=(const RingMatrix& o) const { return !(*this == o); }

    template <typename F>
    RingMatrix map(F&& f) const {
        RingMatrix m = *this;
        for (T& x : m.e_) x = f(x);
        return m;
    }

    template <typename U, typename F>
    RingMatrix<U> map_to(const U& proto, F&& f) const {
        RingMatrix<U> m(rows_, cols_, proto);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) m.at(r, c) = f(at(r, c));
        return m;
    }

    RingMatrix submatrix(int r0, int c0, int nrows, int ncols) const {
        RingMatrix m(nrows, ncols, zero_);
        for (int r = 0; r < nrows; ++r)
            for (int c = 0; c < ncols; ++c) m.at(r, c) = at(r0 + r, c0 + c);
        return m;
    }

    /// [A | B]
    static RingMatrix hstack(const RingMatrix& a, const RingMatrix& b) {
        if (a.rows_ != b.rows_) throw error("hstack row mismatch");
        RingMatrix m(a.rows_, a.cols_ + b.cols_, a.zero_);
        for (int r = 0; r < a.rows_; ++r) {
            for (int c = 0; c < a.cols_; ++c) m.at(r, c) = a.at(r, c);
            for (int c = 0; c < b.cols_; ++c) m.at(r, a.cols_ + c) = b.at(r, c);
        }
        return m;
    }

    /// [A; B]
    static RingMatrix vstack(const RingMatrix& a, const RingMatrix& b) {
        if (a.cols_ != b.cols_) throw error("vstack column mismatch");
        RingMatrix m(a.rows_ + b.rows_, a.cols_, a.zero_);
        for (int r = 0; r < a.rows_; ++r)
            for (int c = 0; c < a.cols_; ++c) m.at(r, c) = a.at(r, c);
        for (int r = 0; r < b.rows_; ++r)
            for (int c = 0; c < b.cols_; ++c) m.at(a.rows_ + r, c) = b.at(r, c);
        return m;
    }

    /// [[A, B], [C, D]]
    static RingMatrix block2x2(const RingMatrix& a, const RingMatrix& b, const RingMatrix& c,
                               const RingMatrix& d) {
        return vstack(hstack(a, b), hstack(c, d));
    }

private:
    static void check_shape(const RingMatrix& o, int rows, int cols) {
        if (o.rows_ != rows || o.cols_ != cols) throw error("matrix shape mismatch");
    }

    int rows_ = 0;
    int cols_ = 0;
    T zero_;
    std::vector<T> e_;
};

template <typename T>
RingMatrix<T> apply_alpha(const RingMatrix<T>& m, int k) {
    return m.map([k](const T& x) { return x.apply_alpha(k); });
}

/// Exact determinant of a square matrix over a commutative ring, by
/// Laplace expansion over column subsets (no division needed).  Twisted
/// carriers are rejected; Dieudonne determinants are out of scope.
template <typename T>
T determinant(const RingMatrix<T>& m) {
    if (m.rows() != m.cols()) throw error("determinant of a non-square matrix");
    const int n = m.rows();
    const T zero = zero_like(m.proto());
    if constexpr (std::is_same_v<T, TwistedElement> || std::is_same_v<T, NovikovSeries>) {
        if (m.proto().ring()->twisted())
            throw unsupported_ring_error("determinant over a twisted ring is not defined here");
    }
    if (n == 0) return one_like(m.proto());
    if (n > 20) throw error("determinant: matrix too large for subset expansion");
    // minors[S] = det of rows {0..popcount(S)-1} and column set S
    std::vector<T> cur(1, one_like(m.proto()));
    std::vector<uint32_t> sets(1, 0u);
    for (int r = 0; r < n; ++r) {
        std::vector<T> next;
        std::vector<uint32_t> nsets;
        // enumerate supersets by adding one column to each set of size r
        std::vector<int> index(1u << n, -1);
        for (size_t s = 0; s < sets.size(); ++s) {
            const uint32_t set = sets[s];
            if (cur[s].is_zero()) continue;
            int parity = 0;
            for (int c = 0; c < n; ++c) {
                if (set & (1u << c)) {
                    ++parity;
                    continue;
                }
                if (m.at(r, c).is_zero()) continue;
                T term = cur[s] * m.at(r, c);
                if ((parity + r) & 1) term = -term;
                const uint32_t nset = set | (1u << c);
                if (index[nset] < 0) {
                    index[nset] = static_cast<int>(next.size());
                    next.push_back(std::move(term));
                    nsets.push_back(nset);
                } else {
                    next[index[nset]] = next[index[nset]] + term;
                }
            }
        }
        cur = std::move(next);
        sets = std::move(nsets);
        if (cur.empty()) return zero;
    }
    for (size_t s = 0; s < sets.size(); ++s)
        if (sets[s] == (n >= 32 ? ~0u : ((1u << n) - 1))) return cur[s];
    return zero;
}

/// hold entrywise congruence of two series matrices mod z^{order+1}
inline bool congruent(const RingMatrix<NovikovSeries>& a, const RingMatrix<NovikovSeries>& b,
                      int order) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c)
            if (!a.at(r, c).congruent(b.at(r, c), order)) return false;
    return true;
}

/// Equality as used by chain-level identity checks: strict for exact
/// carriers, entrywise congruence to the shared known order for series.
template <typename T>
bool chain_equal(const RingMatrix<T>& a, const RingMatrix<T>& b) {
    return a == b;
}

inline bool chain_equal(const RingMatrix<NovikovSeries>& a, const RingMatrix<NovikovSeries>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c)
            if (!a.at(r, c).congruent(b.at(r, c))) return false;
    return true;
}

} // namespace novikov

#endif

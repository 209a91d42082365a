#ifndef NOVIKOV_COMPLEX_HPP
#define NOVIKOV_COMPLEX_HPP

#include <optional>
#include <string>

#include "novikov/linalg.hpp"

namespace novikov {

/// Bounded based chain complex over a ring element type T.  Degrees run
/// over [0, top]; d(i) maps degree i to degree i-1 and d o d = 0 is
/// checked at construction.
template <typename T>
class BasedComplex {
public:
    BasedComplex() = default;

    BasedComplex(std::vector<int> ranks, std::vector<RingMatrix<T>> diffs, T proto,
                 std::vector<std::vector<std::string>> labels = {})
        : ranks_(std::move(ranks)),
          d_(std::move(diffs)),
          labels_(std::move(labels)),
          proto_(zero_like(proto)) {
        if (ranks_.empty()) throw error("complex needs at least degree 0");
        for (int r : ranks_)
            if (r < 0) throw error("negative rank");
        if (d_.size() != ranks_.size())
            throw error("need one differential slot per degree (slot 0 unused)");
        for (int i = 1; i <= top_degree(); ++i)
            if (d_[i].rows() != ranks_[i - 1] || d_[i].cols() != ranks_[i])
                throw error("differential in degree " + std::to_string(i) +
                            " has the wrong shape");
        if (!labels_.empty()) {
            if (labels_.size() != ranks_.size()) throw error("label table has the wrong size");
            for (size_t i = 0; i < labels_.size(); ++i)
                if (static_cast<int>(labels_[i].size()) != ranks_[i])
                    throw error("label row has the wrong size");
        }
        for (int i = 1; i < top_degree(); ++i)
            if (!(d(i) * d(i + 1)).is_zero())
                throw error("d*d != 0 between degrees " + std::to_string(i + 1) + " and " +
                            std::to_string(i - 1));
    }

    /// Construction without the d*d = 0 check, for raw input data whose
    /// violations are to be reported by a validator instead of thrown.
    /// Shapes are still enforced.
    static BasedComplex unchecked(std::vector<int> ranks, std::vector<RingMatrix<T>> diffs,
                                  T proto, std::vector<std::vector<std::string>> labels = {}) {
        BasedComplex c;
        c.ranks_ = std::move(ranks);
        c.d_ = std::move(diffs);
        c.labels_ = std::move(labels);
        c.proto_ = zero_like(proto);
        if (c.ranks_.empty()) throw error("complex needs at least degree 0");
        if (c.d_.size() != c.ranks_.size())
            throw error("need one differential slot per degree (slot 0 unused)");
        for (int i = 1; i <= c.top_degree(); ++i)
            if (c.d_[i].rows() != c.ranks_[i - 1] || c.d_[i].cols() != c.ranks_[i])
                throw error("differential in degree " + std::to_string(i) +
                            " has the wrong shape");
        return c;
    }

    /// Complex with all differentials zero.
    static BasedComplex zero_complex(std::vector<int> ranks, const T& proto) {
        std::vector<RingMatrix<T>> diffs;
        diffs.emplace_back(0, ranks.empty() ? 0 : ranks[0], proto);
        for (size_t i = 1; i < ranks.size(); ++i)
            diffs.emplace_back(ranks[i - 1], ranks[i], proto);
        return BasedComplex(std::move(ranks), std::move(diffs), proto);
    }

    int top_degree() const { return static_cast<int>(ranks_.size()) - 1; }

    int rank(int i) const {
        return (i < 0 || i > top_degree()) ? 0 : ranks_[i];
    }

    const std::vector<int>& ranks() const { return ranks_; }

    /// d_i : C_i -> C_{i-1}; zero-shaped outside the degree range.
    RingMatrix<T> d(int i) const {
        if (i >= 1 && i <= top_degree()) return d_[i];
        return RingMatrix<T>(rank(i - 1), rank(i), proto_);
    }

    const T& proto() const { return proto_; }

    bool has_labels() const { return !labels_.empty(); }
    const std::vector<std::vector<std::string>>& labels() const { return labels_; }

    std::vector<std::string> labels_at(int i) const {
        if (labels_.empty() || i < 0 || i > top_degree()) return {};
        return labels_[i];
    }

    int total_rank() const {
        int n = 0;
        for (int r : ranks_) n += r;
        return n;
    }

    bool operator==(const BasedComplex& o) const {
        if (ranks_ != o.ranks_) return false;
        for (int i = 1; i <= top_degree(); ++i)
            if (d(i) != o.d(i)) return false;
        return true;
    }
    bool operator!=(const BasedComplex& o) const { return !(*this == o); }

    /// Entrywise conversion to another carrier (e.g. A -> Q(z)).
    template <typename U, typename F>
    BasedComplex<U> map_to(const U& proto, F&& f) const {
        std::vector<RingMatrix<U>> diffs;
        diffs.emplace_back(0, rank(0), proto);
        for (int i = 1; i <= top_degree(); ++i) diffs.push_back(f(d(i)));
        return BasedComplex<U>(ranks_, std::move(diffs), proto, labels_);
    }

private:
    std::vector<int> ranks_;
    std::vector<RingMatrix<T>> d_;
    std::vector<std::vector<std::string>> labels_;
    T proto_;
};

/// Degreewise map of based complexes with d phi = phi d checked at
/// construction.
template <typename T>
class ChainMap {
public:
    ChainMap() = default;

    ChainMap(BasedComplex<T> source, BasedComplex<T> target, std::vector<RingMatrix<T>> mats)
        : source_(std::move(source)), target_(std::move(target)), mats_(std::move(mats)) {
        if (static_cast<int>(mats_.size()) != source_.top_degree() + 1)
            throw error("chain map needs one matrix per source degree");
        for (int i = 0; i <= source_.top_degree(); ++i)
            if (mats_[i].rows() != target_.rank(i) || mats_[i].cols() != source_.rank(i))
                throw error("chain map matrix in degree " + std::to_string(i) +
                            " has the wrong shape");
        const int top = std::max(source_.top_degree(), target_.top_degree());
        for (int i = 1; i <= top + 1; ++i)
            if (!chain_equal(target_.d(i) * mat(i), mat(i - 1) * source_.d(i)))
                throw error("not a chain map: square fails at degree " + std::to_string(i));
    }

    static ChainMap zero(const BasedComplex<T>& source, const BasedComplex<T>& target) {
        std::vector<RingMatrix<T>> mats;
        for (int i = 0; i <= source.top_degree(); ++i)
            mats.emplace_back(target.rank(i), source.rank(i), source.proto());
        return ChainMap(source, target, std::move(mats));
    }

    static ChainMap identity(const BasedComplex<T>& c) {
        std::vector<RingMatrix<T>> mats;
        for (int i = 0; i <= c.top_degree(); ++i)
            mats.push_back(RingMatrix<T>::identity(c.rank(i), c.proto()));
        return ChainMap(c, c, std::move(mats));
    }

    const BasedComplex<T>& source() const { return source_; }
    const BasedComplex<T>& target() const { return target_; }

    RingMatrix<T> mat(int i) const {
        if (i >= 0 && i <= source_.top_degree()) return mats_[i];
        return RingMatrix<T>(target_.rank(i), source_.rank(i), source_.proto());
    }

    ChainMap compose(const ChainMap& inner) const {
        // (*this) o inner
        std::vector<RingMatrix<T>> mats;
        for (int i = 0; i <= inner.source().top_degree(); ++i) mats.push_back(mat(i) * inner.mat(i));
        return ChainMap(inner.source(), target_, std::move(mats));
    }

    bool operator==(const ChainMap& o) const {
        if (source_ != o.source_ || target_ != o.target_) return false;
        const int top = std::max(source_.top_degree(), o.source_.top_degree());
        for (int i = 0; i <= top; ++i)
            if (mat(i) != o.mat(i)) return false;
        return true;
    }
    bool operator!=(const ChainMap& o) const { return !(*this == o); }

private:
    BasedComplex<T> source_;
    BasedComplex<T> target_;
    std::vector<RingMatrix<T>> mats_;
};

/// theta : phi ~ phi' with phi' - phi = d theta + theta d checked at
/// construction.  theta_i maps source degree i to target degree i+1.
template <typename T>
class ChainHomotopy {
public:
    ChainHomotopy(ChainMap<T> from, ChainMap<T> to, std::vector<RingMatrix<T>> theta_mats)
        : from_(std::move(from)), to_(std::move(to)), theta_(std::move(theta_mats)) {
        if (from_.source() != to_.source() || from_.target() != to_.target())
            throw error("chain homotopy endpoints must share source and target");
        const BasedComplex<T>& src = from_.source();
        const BasedComplex<T>& tgt = from_.target();
        if (static_cast<int>(theta_.size()) != src.top_degree() + 1)
            throw error("homotopy needs one matrix per source degree");
        for (int i = 0; i <= src.top_degree(); ++i)
            if (theta_[i].rows() != tgt.rank(i + 1) || theta_[i].cols() != src.rank(i))
                throw error("homotopy matrix in degree " + std::to_string(i) +
                            " has the wrong shape");
        const int top = std::max(src.top_degree(), tgt.top_degree());
        for (int i = 0; i <= top; ++i) {
            RingMatrix<T> lhs = to_.mat(i) - from_.mat(i);
            RingMatrix<T> rhs = tgt.d(i + 1) * theta(i) + theta(i - 1) * src.d(i);
            if (!chain_equal(lhs, rhs))
                throw error("not a chain homotopy: identity fails at degree " +
                            std::to_string(i));
        }
    }

    const ChainMap<T>& from() const { return from_; }
    const ChainMap<T>& to() const { return to_; }

    RingMatrix<T> theta(int i) const {
        const BasedComplex<T>& src = from_.source();
        const BasedComplex<T>& tgt = from_.target();
        if (i >= 0 && i <= src.top_degree()) return theta_[i];
        return RingMatrix<T>(tgt.rank(i + 1), src.rank(i), src.proto());
    }

private:
    ChainMap<T> from_;
    ChainMap<T> to_;
    std::vector<RingMatrix<T>> theta_;
};

namespace lin {

/// Ring-appropriate invertibility of a square matrix: det = ±1 over Z,
/// det != 0 over Q and Q(z), unit augmentation for twisted carriers.
inline bool invertible(const RingMatrix<GroundElement>& m) { return ground_invertible(m); }

inline bool invertible(const RingMatrix<RationalFunction>& m) {
    return m.rows() == m.cols() && rank(m) == m.rows();
}

inline bool invertible(const RingMatrix<NovikovSeries>& m) {
    if (m.rows() != m.cols()) return false;
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            if (!m.at(r, c).is_zero() && m.at(r, c).valuation_bound() < 0) return false;
    return ground_invertible(coefficient_matrix(m, 0));
}

inline bool invertible(const RingMatrix<TwistedElement>& m) {
    if (m.rows() != m.cols()) return false;
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            if (m.at(r, c).has_negative_powers()) return false;
    return ground_invertible(coefficient_matrix(m, 0));
}

inline RingMatrix<GroundElement> invert(const RingMatrix<GroundElement>& m, int) {
    return ground_matrix_inverse(m);
}

inline RingMatrix<RationalFunction> invert(const RingMatrix<RationalFunction>& m, int) {
    return field_inverse(m);
}

inline RingMatrix<NovikovSeries> invert(const RingMatrix<NovikovSeries>& m, int order) {
    return series_matrix_inverse(m, order);
}

} // namespace lin

/// psi : phi ~ phi', an isotopy: phi' = (1 + d psi + psi d) phi with every
/// operator 1 + d psi + psi d invertible over the declared ring.
template <typename T>
class ChainIsotopy {
public:
    ChainIsotopy(ChainMap<T> from, ChainMap<T> to, std::vector<RingMatrix<T>> psi_mats)
        : from_(std::move(from)), to_(std::move(to)), psi_(std::move(psi_mats)) {
        if (from_.source() != to_.source() || from_.target() != to_.target())
            throw error("chain isotopy endpoints must share source and target");
        const BasedComplex<T>& e = from_.target();
        if (static_cast<int>(psi_.size()) != e.top_degree() + 1)
            throw error("isotopy needs one matrix per carrier degree");
        for (int i = 0; i <= e.top_degree(); ++i)
            if (psi_[i].rows() != e.rank(i + 1) || psi_[i].cols() != e.rank(i))
                throw error("isotopy matrix in degree " + std::to_string(i) +
                            " has the wrong shape");
        for (int i = 0; i <= std::max(e.top_degree(), from_.source().top_degree()); ++i) {
            if (!chain_equal(operator_at(i) * from_.mat(i), to_.mat(i)))
                throw isotopy_error("phi' != (1 + d psi + psi d) phi at degree " +
                                    std::to_string(i));
            if (!lin::invertible(operator_at(i)))
                throw isotopy_error("1 + d psi + psi d is not invertible at degree " +
                                    std::to_string(i));
        }
    }

    const ChainMap<T>& from() const { return from_; }
    const ChainMap<T>& to() const { return to_; }
    const BasedComplex<T>& carrier() const { return from_.target(); }

    RingMatrix<T> psi(int i) const {
        const BasedComplex<T>& e = carrier();
        if (i >= 0 && i <= e.top_degree()) return psi_[i];
        return RingMatrix<T>(e.rank(i + 1), e.rank(i), e.proto());
    }

    /// 1 + d_E psi + psi d_E in degree i.
    RingMatrix<T> operator_at(int i) const {
        const BasedComplex<T>& e = carrier();
        return RingMatrix<T>::identity(e.rank(i), e.proto()) + e.d(i + 1) * psi(i) +
               psi(i - 1) * e.d(i);
    }

private:
    ChainMap<T> from_;
    ChainMap<T> to_;
    std::vector<RingMatrix<T>> psi_;
};

} // namespace novikov

#endif

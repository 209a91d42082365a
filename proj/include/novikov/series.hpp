#ifndef NOVIKOV_SERIES_HPP
#define NOVIKOV_SERIES_HPP

#include <algorithm>
#include <map>

#include "novikov/twisted.hpp"

namespace novikov {

/// Truncation order standing for "known to all orders" (exact values such
/// as embedded polynomials and empty sums).
inline constexpr int kExactOrder = 1 << 24;

/// Element of the Novikov completion A_alpha((z)) known modulo z^{K+1}.
///
/// The coefficient map never stores zeros or powers above K.  Mixed-order
/// arithmetic records the order to which the result is actually
/// determined: sums truncate to the minimum, products sharpen by the
/// factor valuations.
class NovikovSeries {
public:
    NovikovSeries() = default;

    NovikovSeries(RingPtr ring, int order) : ring_(std::move(ring)), order_(order) {}

    static NovikovSeries zero(RingPtr ring, int order = kExactOrder) {
        return NovikovSeries(std::move(ring), order);
    }

    static NovikovSeries one(RingPtr ring, int order = kExactOrder) {
        NovikovSeries s(std::move(ring), order);
        s.set(0, GroundElement::one(s.ring_));
        return s;
    }

    static NovikovSeries from_ground(GroundElement a, int order = kExactOrder) {
        NovikovSeries s(a.ring(), order);
        s.set(0, std::move(a));
        return s;
    }

    /// Embed a Laurent polynomial, truncating to the given order.
    static NovikovSeries from_twisted(const TwistedElement& p, int order = kExactOrder) {
        NovikovSeries s(p.ring(), order);
        for (const auto& [j, a] : p.coefficients()) s.set(j, a);
        return s;
    }

    const RingPtr& ring() const { return ring_; }
    int order() const { return order_; }
    const std::map<int, GroundElement>& coefficients() const { return coeff_; }

    bool is_zero() const { return coeff_.empty(); }

    bool is_one() const {
        return coeff_.size() == 1 && coeff_.begin()->first == 0 &&
               coeff_.begin()->second.is_one();
    }

    GroundElement coefficient(int j) const {
        auto it = coeff_.find(j);
        return it == coeff_.end() ? GroundElement::zero(ring_) : it->second;
    }

    /// Valuation used for order bookkeeping: order+1 when no coefficient
    /// is known to be nonzero.
    int valuation_bound() const { return coeff_.empty() ? order_ + 1 : coeff_.begin()->first; }

    NovikovSeries truncated(int order) const {
        NovikovSeries s(ring_, std::min(order, order_));
        for (const auto& [j, a] : coeff_) {
            if (j > s.order_) break;
            s.coeff_[j] = a;
        }
        return s;
    }

    NovikovSeries operator-() const {
        NovikovSeries s(ring_, order_);
        for (const auto& [j, a] : coeff_) s.coeff_[j] = -a;
        return s;
    }

    NovikovSeries operator+(const NovikovSeries& o) const {
        require_same_ring(ring_, o.ring_);
        NovikovSeries s(ring_, std::min(order_, o.order_));
        for (const auto& [j, a] : coeff_) s.add(j, a);
        for (const auto& [j, a] : o.coeff_) s.add(j, a);
        return s;
    }

    NovikovSeries operator-(const NovikovSeries& o) const { return *this + (-o); }

    NovikovSeries operator*(const NovikovSeries& o) const {
        require_same_ring(ring_, o.ring_);
        // p known mod z^{K1+1} with val v1, q mod z^{K2+1} with val v2:
        // the product is determined mod z^{min(K1+v2, K2+v1)+1}.
        long k1 = static_cast<long>(order_) + o.valuation_bound();
        long k2 = static_cast<long>(o.order_) + valuation_bound();
        int ord = static_cast<int>(std::min({k1, k2, static_cast<long>(kExactOrder)}));
        NovikovSeries s(ring_, ord);
        for (const auto& [i, a] : coeff_)
            for (const auto& [j, b] : o.coeff_) {
                if (i + j > ord) continue;
                s.add(i + j, a.apply_alpha(j) * b);
            }
        return s;
    }

    NovikovSeries& operator+=(const NovikovSeries& o) { return *this = *this + o; }
    NovikovSeries& operator-=(const NovikovSeries& o) { return *this = *this - o; }
    NovikovSeries& operator*=(const NovikovSeries& o) { return *this = *this * o; }

    /// Structural equality: same order and same stored coefficients.
    bool operator==(const NovikovSeries& o) const {
        require_same_ring(ring_, o.ring_);
        return order_ == o.order_ && coeff_ == o.coeff_;
    }
    bool operator!=(const NovikovSeries& o) const { return !(*this == o); }

    /// Agreement modulo z^{order+1}, defaulting to the shared known order.
    bool congruent(const NovikovSeries& o, int order = -1) const {
        require_same_ring(ring_, o.ring_);
        if (order < 0) order = std::min(order_, o.order_);
        if (order > std::min(order_, o.order_))
            throw error("congruence requested beyond the known order");
        auto a = coeff_.begin();
        auto b = o.coeff_.begin();
        while (a != coeff_.end() || b != o.coeff_.end()) {
            int ja = a == coeff_.end() ? order + 1 : a->first;
            int jb = b == o.coeff_.end() ? order + 1 : b->first;
            if (std::min(ja, jb) > order) break;
            if (ja != jb) return false;
            if (a->second != b->second) return false;
            ++a, ++b;
        }
        return true;
    }

    NovikovSeries apply_alpha(int k) const {
        NovikovSeries s(ring_, order_);
        for (const auto& [j, a] : coeff_) s.coeff_[j] = a.apply_alpha(k);
        return s;
    }

    NovikovSeries shift(int k) const {
        NovikovSeries s(ring_, order_ >= kExactOrder ? order_ : order_ + k);
        for (const auto& [j, a] : coeff_) s.coeff_[j + k] = a;
        return s;
    }

    /// Inverse in A_alpha((z)); requires the lowest coefficient to be a
    /// unit of A.  For input of valuation v known mod z^{K+1} the result
    /// is determined mod z^{K-2v+1}.
    NovikovSeries inverse() const {
        if (coeff_.empty()) throw error("inverting the zero series");
        const int v = coeff_.begin()->first;
        const GroundElement& lead = coeff_.begin()->second;
        if (!lead.is_unit())
            throw expansion_error("lowest series coefficient is not a unit of the ground ring");
        GroundElement lead_inv = lead.unit_inverse();
        if (order_ >= kExactOrder) {
            if (coeff_.size() > 1)
                throw error("exact inverse of a non-monomial series is infinite; truncate first");
            NovikovSeries r(ring_, kExactOrder);
            r.coeff_[-v] = lead_inv.apply_alpha(-v);
            return r;
        }
        // solve sum_k alpha^k(a_{m-k}) b_k = [m == 0] for b, lowest index
        // k = -v first
        NovikovSeries r(ring_, order_ - 2 * v);
        std::map<int, GroundElement> b;
        b[-v] = lead_inv.apply_alpha(-v);
        if (-v <= r.order_ && !b[-v].is_zero()) r.coeff_[-v] = b[-v];
        for (int m = 1; m - v <= r.order_; ++m) {
            GroundElement acc = GroundElement::zero(ring_);
            for (const auto& [k, bk] : b) {
                int j = m - k;
                if (j <= v) continue;
                auto it = coeff_.find(j);
                if (it != coeff_.end()) acc += it->second.apply_alpha(k) * bk;
            }
            if (!acc.is_zero()) {
                GroundElement bm = -(lead_inv.apply_alpha(m - v) * acc);
                r.coeff_[m - v] = bm;
                b[m - v] = std::move(bm);
            }
        }
        return r;
    }

private:
    void set(int j, GroundElement a) {
        if (a.is_zero() || j > order_) return;
        coeff_[j] = std::move(a);
    }

    void add(int j, const GroundElement& a) {
        if (a.is_zero() || j > order_) return;
        auto it = coeff_.find(j);
        if (it == coeff_.end()) {
            coeff_[j] = a;
        } else {
            it->second += a;
            if (it->second.is_zero()) coeff_.erase(it);
        }
    }

    RingPtr ring_;
    int order_ = kExactOrder;
    std::map<int, GroundElement> coeff_;
};

} // namespace novikov

#endif

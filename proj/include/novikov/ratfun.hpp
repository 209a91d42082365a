#ifndef NOVIKOV_RATFUN_HPP
#define NOVIKOV_RATFUN_HPP

#include <map>
#include <utility>

#include "novikov/series.hpp"
#include "novikov/twisted.hpp"

namespace novikov {

namespace detail {

// Dense scalar polynomial helpers used by the canonical form.  A "poly"
// is a map z-power -> Rational with no zero entries.
using ScalarPoly = std::map<int, Rational>;

inline ScalarPoly poly_from_twisted(const TwistedElement& p) {
    ScalarPoly out;
    for (const auto& [j, a] : p.coefficients()) out[j] = a.rational_value();
    return out;
}

inline TwistedElement poly_to_twisted(const RingPtr& ring, const ScalarPoly& p) {
    TwistedElement out(ring);
    for (const auto& [j, c] : p)
        out += TwistedElement::z_power(ring, j, GroundElement::from_rational(ring, c));
    return out;
}

inline ScalarPoly poly_mul(const ScalarPoly& a, const ScalarPoly& b) {
    ScalarPoly out;
    for (const auto& [i, ca] : a)
        for (const auto& [j, cb] : b) {
            Rational& slot = out[i + j];
            slot += ca * cb;
            if (slot == 0) out.erase(i + j);
        }
    return out;
}

inline ScalarPoly poly_scale(const ScalarPoly& a, const Rational& s) {
    ScalarPoly out;
    if (s == 0) return out;
    for (const auto& [i, c] : a) out[i] = c * s;
    return out;
}

inline ScalarPoly poly_shift(const ScalarPoly& a, int k) {
    ScalarPoly out;
    for (const auto& [i, c] : a) out[i + k] = c;
    return out;
}

inline ScalarPoly poly_sub(const ScalarPoly& a, const ScalarPoly& b) {
    ScalarPoly out = a;
    for (const auto& [i, c] : b) {
        Rational& slot = out[i];
        slot -= c;
        if (slot == 0) out.erase(i);
    }
    return out;
}

/// Remainder of a by b, both genuine polynomials (valuation >= 0), b != 0.
inline ScalarPoly poly_rem(ScalarPoly a, const ScalarPoly& b) {
    const int db = b.rbegin()->first;
    const Rational lb = b.rbegin()->second;
    while (!a.empty() && a.rbegin()->first >= db) {
        const int da = a.rbegin()->first;
        const Rational q = a.rbegin()->second / lb;
        a = poly_sub(a, poly_shift(poly_scale(b, q), da - db));
    }
    return a;
}

/// Exact quotient a / b; throws if the division is not exact.
inline ScalarPoly poly_div_exact(ScalarPoly a, const ScalarPoly& b) {
    ScalarPoly q;
    const int db = b.rbegin()->first;
    const Rational lb = b.rbegin()->second;
    while (!a.empty()) {
        const int da = a.rbegin()->first;
        if (da < db) throw error("polynomial division is not exact");
        const Rational c = a.rbegin()->second / lb;
        q[da - db] = c;
        a = poly_sub(a, poly_shift(poly_scale(b, c), da - db));
    }
    return q;
}

/// Monic gcd in Q[z] of two genuine polynomials.
inline ScalarPoly poly_gcd(ScalarPoly a, ScalarPoly b) {
    while (!b.empty()) {
        ScalarPoly r = poly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.empty()) return a;
    return poly_scale(a, Rational(1) / a.rbegin()->second);
}

} // namespace detail

/// Element of the exact fraction field Q(z), carried as num/den over a
/// commutative untwisted base ring (Z or Q).  The canonical reduced form
/// keeps the denominator a genuine polynomial with nonzero constant term
/// (all z-units pushed into the numerator); over a Z base both parts are
/// integral with coprime contents and the lowest denominator coefficient
/// positive, over a Q base the denominator is monic.
class RationalFunction {
public:
    RationalFunction() = default;

    explicit RationalFunction(RingPtr ring)
        : ring_(check_ring(std::move(ring))),
          num_(TwistedElement::zero(ring_)),
          den_(TwistedElement::one(ring_)) {}

    RationalFunction(TwistedElement num, TwistedElement den)
        : ring_(check_ring(num.ring())), num_(std::move(num)), den_(std::move(den)) {
        require_same_ring(num_.ring(), den_.ring());
        if (den_.is_zero()) throw error("rational function with zero denominator");
        canonicalize();
    }

    static RationalFunction zero(RingPtr ring) { return RationalFunction(std::move(ring)); }

    static RationalFunction one(RingPtr ring) {
        RationalFunction r(std::move(ring));
        r.num_ = TwistedElement::one(r.ring_);
        return r;
    }

    static RationalFunction from_twisted(TwistedElement p) {
        RationalFunction r(p.ring());
        r.num_ = std::move(p);
        return r;
    }

    static RationalFunction from_ground(const GroundElement& a) {
        return from_twisted(TwistedElement::from_ground(a));
    }

    const RingPtr& ring() const { return ring_; }
    const TwistedElement& numerator() const { return num_; }
    const TwistedElement& denominator() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }

    RationalFunction operator-() const {
        RationalFunction r = *this;
        r.num_ = -r.num_;
        return r;
    }

    RationalFunction operator+(const RationalFunction& o) const {
        require_same_ring(ring_, o.ring_);
        return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }

    RationalFunction operator-(const RationalFunction& o) const { return *this + (-o); }

    RationalFunction operator*(const RationalFunction& o) const {
        require_same_ring(ring_, o.ring_);
        return RationalFunction(num_ * o.num_, den_ * o.den_);
    }

    RationalFunction inverse() const {
        if (is_zero()) throw error("division by zero rational function");
        return RationalFunction(den_, num_);
    }

    RationalFunction operator/(const RationalFunction& o) const { return *this * o.inverse(); }

    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

    bool operator==(const RationalFunction& o) const {
        require_same_ring(ring_, o.ring_);
        return num_ == o.num_ && den_ == o.den_;
    }
    bool operator!=(const RationalFunction& o) const { return !(*this == o); }

    /// Series expansion modulo z^{K+1}.  Requires the lowest denominator
    /// coefficient to be a unit of the base ring.
    NovikovSeries expand(int order) const {
        const Rational d0 = den_.coefficient(0).rational_value();
        if (ring_->kind() == RingKind::Integers && d0 != 1 && d0 != -1)
            throw expansion_error("denominator constant term " + d0.str() +
                                  " is not a unit of Z; no series expansion");
        const int vn = num_.is_zero() ? 0 : num_.valuation();
        const int extra = vn < 0 ? -vn : 0;
        NovikovSeries den_series = NovikovSeries::from_twisted(den_, order + extra).inverse();
        return (NovikovSeries::from_twisted(num_) * den_series).truncated(order);
    }

private:
    static RingPtr check_ring(RingPtr ring) {
        if (ring->kind() == RingKind::GroupRing || ring->twisted())
            throw unsupported_ring_error(
                "rational functions are defined only over Z or Q with identity alpha");
        return ring;
    }

    void canonicalize() {
        using namespace detail;
        if (num_.is_zero()) {
            den_ = TwistedElement::one(ring_);
            return;
        }
        ScalarPoly n = poly_from_twisted(num_);
        ScalarPoly d = poly_from_twisted(den_);
        // push all z-units of the denominator into the numerator
        const int vd = d.begin()->first;
        if (vd != 0) {
            d = poly_shift(d, -vd);
            n = poly_shift(n, -vd);
        }
        const int vn = n.begin()->first;
        ScalarPoly np = vn < 0 ? poly_shift(n, -vn) : n;
        ScalarPoly g = poly_gcd(np, d);
        if (!g.empty() && (g.size() > 1 || g.begin()->first != 0)) {
            np = poly_div_exact(np, g);
            d = poly_div_exact(d, g);
        }
        n = vn < 0 ? poly_shift(np, vn) : np;
        if (ring_->kind() == RingKind::Rationals) {
            const Rational lead = d.rbegin()->second;
            n = poly_scale(n, Rational(1) / lead);
            d = poly_scale(d, Rational(1) / lead);
        } else {
            // scale the pair to coprime integral contents, lowest
            // denominator coefficient positive
            Int l = 1;
            for (const auto& [i, c] : n) l = l / gcd(l, den(c)) * den(c);
            for (const auto& [i, c] : d) l = l / gcd(l, den(c)) * den(c);
            n = poly_scale(n, Rational(l));
            d = poly_scale(d, Rational(l));
            Int content = 0;
            for (const auto& [i, c] : n) content = gcd(content, num(c));
            for (const auto& [i, c] : d) content = gcd(content, num(c));
            if (content > 1) {
                n = poly_scale(n, Rational(1, content));
                d = poly_scale(d, Rational(1, content));
            }
            if (d.begin()->second < 0) {
                n = poly_scale(n, -1);
                d = poly_scale(d, -1);
            }
        }
        num_ = poly_to_twisted(ring_, n);
        den_ = poly_to_twisted(ring_, d);
    }

    RingPtr ring_;
    TwistedElement num_;
    TwistedElement den_;
};

/// ratfun_to_series of the interface: expansion modulo z^{K+1}.
inline NovikovSeries ratfun_to_series(const RationalFunction& r, int order) {
    return r.expand(order);
}

} // namespace novikov

#endif

#ifndef NOVIKOV_TWISTED_HPP
#define NOVIKOV_TWISTED_HPP

#include <map>

#include "novikov/ground.hpp"

namespace novikov {

/// Element of the alpha-twisted Laurent extension A_alpha[z,z^-1], kept in
/// the normal form sum_j z^j a_j with the coefficients to the right of the
/// z-powers.  Multiplication uses (z^i a)(z^j b) = z^{i+j} alpha^j(a) b.
class TwistedElement {
public:
    TwistedElement() = default;
    explicit TwistedElement(RingPtr ring) : ring_(std::move(ring)) {}

    static TwistedElement zero(RingPtr ring) { return TwistedElement(std::move(ring)); }

    static TwistedElement one(RingPtr ring) {
        return from_ground(GroundElement::one(std::move(ring)));
    }

    static TwistedElement from_ground(GroundElement a) {
        TwistedElement p(a.ring());
        if (!a.is_zero()) p.coeff_[0] = std::move(a);
        return p;
    }

    static TwistedElement z_power(RingPtr ring, int j, GroundElement a) {
        TwistedElement p(std::move(ring));
        if (!a.is_zero()) p.coeff_[j] = std::move(a);
        return p;
    }

    static TwistedElement z(RingPtr ring) {
        auto a = GroundElement::one(ring);
        return z_power(std::move(ring), 1, std::move(a));
    }

    const RingPtr& ring() const { return ring_; }
    const std::map<int, GroundElement>& coefficients() const { return coeff_; }

    bool is_zero() const { return coeff_.empty(); }
    bool is_one() const { return coeff_.size() == 1 && coeff_.begin()->first == 0 && coeff_.begin()->second.is_one(); }

    /// Lowest z-power with nonzero coefficient; only valid when nonzero.
    int valuation() const {
        if (coeff_.empty()) throw error("valuation of zero");
        return coeff_.begin()->first;
    }

    int degree() const {
        if (coeff_.empty()) throw error("degree of zero");
        return coeff_.rbegin()->first;
    }

    GroundElement coefficient(int j) const {
        auto it = coeff_.find(j);
        return it == coeff_.end() ? GroundElement::zero(ring_) : it->second;
    }

    /// The z -> 0 augmentation; rejects genuine Laurent tails.
    GroundElement augmentation() const {
        if (!coeff_.empty() && coeff_.begin()->first < 0)
            throw error("augmentation undefined: negative z-powers present");
        return coefficient(0);
    }

    bool has_negative_powers() const { return !coeff_.empty() && coeff_.begin()->first < 0; }

    TwistedElement operator-() const {
        TwistedElement r(ring_);
        for (const auto& [j, a] : coeff_) r.coeff_[j] = -a;
        return r;
    }

    TwistedElement operator+(const TwistedElement& o) const {
        require_same_ring(ring_, o.ring_);
        TwistedElement r = *this;
        for (const auto& [j, a] : o.coeff_) r.add_term(j, a);
        return r;
    }

    TwistedElement operator-(const TwistedElement& o) const { return *this + (-o); }

    TwistedElement operator*(const TwistedElement& o) const {
        require_same_ring(ring_, o.ring_);
        TwistedElement r(ring_);
        for (const auto& [i, a] : coeff_)
            for (const auto& [j, b] : o.coeff_) r.add_term(i + j, a.apply_alpha(j) * b);
        return r;
    }

    TwistedElement& operator+=(const TwistedElement& o) { return *this = *this + o; }
    TwistedElement& operator-=(const TwistedElement& o) { return *this = *this - o; }
    TwistedElement& operator*=(const TwistedElement& o) { return *this = *this * o; }

    bool operator==(const TwistedElement& o) const {
        require_same_ring(ring_, o.ring_);
        return coeff_ == o.coeff_;
    }
    bool operator!=(const TwistedElement& o) const { return !(*this == o); }

    /// Entrywise alpha^k on all coefficients (z-powers untouched).
    TwistedElement apply_alpha(int k) const {
        TwistedElement r(ring_);
        for (const auto& [j, a] : coeff_) r.coeff_[j] = a.apply_alpha(k);
        return r;
    }

    /// Multiply by z^k on the left: z^k * (z^j a) = z^{j+k} a.
    TwistedElement shift(int k) const {
        TwistedElement r(ring_);
        for (const auto& [j, a] : coeff_) r.coeff_[j + k] = a;
        return r;
    }

    /// Units of A_alpha[z,z^-1] are z^j * (unit of A).
    bool is_unit() const {
        return coeff_.size() == 1 && coeff_.begin()->second.is_unit();
    }

    TwistedElement unit_inverse() const {
        if (!is_unit()) throw error("twisted element is not a unit");
        const auto& [j, a] = *coeff_.begin();
        // (z^j a)^{-1} = z^{-j} alpha^{-j}(a^{-1})
        return z_power(ring_, -j, a.unit_inverse().apply_alpha(-j));
    }

private:
    void add_term(int j, const GroundElement& a) {
        if (a.is_zero()) return;
        auto it = coeff_.find(j);
        if (it == coeff_.end()) {
            coeff_[j] = a;
        } else {
            it->second += a;
            if (it->second.is_zero()) coeff_.erase(it);
        }
    }

    RingPtr ring_;
    std::map<int, GroundElement> coeff_;
};

} // namespace novikov

#endif

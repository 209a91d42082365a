#ifndef NOVIKOV_GROUND_HPP
#define NOVIKOV_GROUND_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "novikov/errors.hpp"
#include "novikov/numeric.hpp"

namespace novikov {

/// Exponent vector of a Laurent monomial u1^e1 * ... * un^en.
using Monomial = std::vector<int>;

enum class RingKind { Integers, Rationals, GroupRing };

/// Coefficient ring A together with an automorphism alpha.
///
/// A is one of Z, Q, or the Laurent group ring Z[u1^±,...,un^±] of a free
/// abelian group.  alpha is given on generators by signed monomials
/// alpha(u_i) = sign_i * u^{E e_i}; the exponent matrix E must be
/// unimodular so that alpha is invertible.  For Z and Q alpha is the
/// identity.
class GroundRing {
public:
    static std::shared_ptr<const GroundRing> integers() {
        return std::shared_ptr<const GroundRing>(new GroundRing(RingKind::Integers, 0, {}, {}));
    }

    static std::shared_ptr<const GroundRing> rationals() {
        return std::shared_ptr<const GroundRing>(new GroundRing(RingKind::Rationals, 0, {}, {}));
    }

    /// Group ring with identity automorphism.
    static std::shared_ptr<const GroundRing> group_ring(int n) {
        std::vector<Monomial> exps(n, Monomial(n, 0));
        for (int i = 0; i < n; ++i) exps[i][i] = 1;
        return group_ring(n, exps, std::vector<int>(n, 1));
    }

    /// Group ring with alpha(u_i) = signs[i] * u^{exps[i]}.
    static std::shared_ptr<const GroundRing> group_ring(int n, std::vector<Monomial> exps,
                                                        std::vector<int> signs) {
        if (n < 0 || static_cast<int>(exps.size()) != n || static_cast<int>(signs.size()) != n)
            throw error("group_ring: need one exponent vector and one sign per generator");
        for (const auto& e : exps)
            if (static_cast<int>(e.size()) != n)
                throw error("group_ring: exponent vector of wrong length");
        for (int s : signs)
            if (s != 1 && s != -1) throw error("group_ring: signs must be +1 or -1");
        return std::shared_ptr<const GroundRing>(
            new GroundRing(RingKind::GroupRing, n, std::move(exps), std::move(signs)));
    }

    RingKind kind() const { return kind_; }
    int generators() const { return n_; }
    bool is_field() const { return kind_ == RingKind::Rationals; }

    /// True when alpha is not the identity.
    bool twisted() const { return twisted_; }

    const std::vector<Monomial>& alpha_exponents() const { return alpha_exp_; }
    const std::vector<int>& alpha_signs() const { return alpha_sign_; }

    /// alpha^j of a monomial; j may be negative.  Returns the image
    /// exponent vector and multiplies *sign by the sign picked up.
    Monomial alpha_pow_monomial(const Monomial& e, int j, int* sign) const {
        Monomial cur = e;
        const bool fwd = j >= 0;
        for (int step = 0; step < (fwd ? j : -j); ++step)
            cur = apply_once(cur, fwd ? alpha_exp_ : inv_exp_, fwd ? alpha_sign_ : inv_sign_, sign);
        return cur;
    }

    bool same_as(const GroundRing& o) const {
        return kind_ == o.kind_ && n_ == o.n_ && alpha_exp_ == o.alpha_exp_ &&
               alpha_sign_ == o.alpha_sign_;
    }

private:
    GroundRing(RingKind kind, int n, std::vector<Monomial> exps, std::vector<int> signs)
        : kind_(kind), n_(n), alpha_exp_(std::move(exps)), alpha_sign_(std::move(signs)) {
        if (kind_ != RingKind::GroupRing) return;
        // E must be unimodular over Z; the inverse automorphism is read off
        // the integer inverse matrix, with signs solved from alpha(alpha^-1(u)) = u.
        Int det = exp_det();
        if (det != 1 && det != -1)
            throw error("group_ring: exponent matrix is not unimodular, alpha not invertible");
        inv_exp_.assign(n_, Monomial(n_, 0));
        std::vector<std::vector<Int>> adj = exp_adjugate();
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < n_; ++k) {
                Int v = adj[i][k] * det; // det in {±1}, so adj/det = adj*det
                inv_exp_[i][k] = static_cast<int>(v);
            }
        inv_sign_.assign(n_, 1);
        for (int i = 0; i < n_; ++i) {
            int s = 1;
            for (int k = 0; k < n_; ++k)
                if (alpha_sign_[k] == -1 && (inv_exp_[i][k] & 1)) s = -s;
            inv_sign_[i] = s; // so that alpha(inv(u_i)) carries sign +1
        }
        twisted_ = false;
        for (int i = 0; i < n_ && !twisted_; ++i) {
            if (alpha_sign_[i] != 1) twisted_ = true;
            for (int k = 0; k < n_; ++k)
                if (alpha_exp_[i][k] != (i == k ? 1 : 0)) twisted_ = true;
        }
        // sanity: alpha followed by its inverse fixes every generator
        for (int i = 0; i < n_; ++i) {
            int s = 1;
            Monomial e(n_, 0);
            e[i] = 1;
            Monomial img = apply_once(apply_once(e, alpha_exp_, alpha_sign_, &s), inv_exp_,
                                      inv_sign_, &s);
            if (s != 1 || img != e)
                throw error("group_ring: declared inverse does not invert alpha");
        }
    }

    static Monomial apply_once(const Monomial& e, const std::vector<Monomial>& exps,
                               const std::vector<int>& signs, int* sign) {
        const int n = static_cast<int>(e.size());
        Monomial out(n, 0);
        for (int i = 0; i < n; ++i) {
            if (e[i] == 0) continue;
            if (signs[i] == -1 && (e[i] & 1)) *sign = -*sign;
            for (int k = 0; k < n; ++k) out[k] += e[i] * exps[i][k];
        }
        return out;
    }

    Int exp_det() const {
        // Laplace expansion; n stays tiny.
        std::vector<std::vector<Int>> m(n_, std::vector<Int>(n_));
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < n_; ++k) m[i][k] = alpha_exp_[i][k];
        return int_det(m);
    }

    static Int int_det(std::vector<std::vector<Int>> m) {
        const int n = static_cast<int>(m.size());
        if (n == 0) return 1;
        // fraction-free Gaussian elimination (Bareiss)
        Int sign = 1, prev = 1;
        for (int k = 0; k < n - 1; ++k) {
            int piv = -1;
            for (int r = k; r < n; ++r)
                if (m[r][k] != 0) { piv = r; break; }
            if (piv < 0) return 0;
            if (piv != k) { std::swap(m[piv], m[k]); sign = -sign; }
            for (int r = k + 1; r < n; ++r)
                for (int c = k + 1; c < n; ++c)
                    m[r][c] = (m[r][c] * m[k][k] - m[r][k] * m[k][c]) / prev;
            prev = m[k][k];
        }
        return sign * m[n - 1][n - 1];
    }

    std::vector<std::vector<Int>> exp_adjugate() const {
        std::vector<std::vector<Int>> adj(n_, std::vector<Int>(n_));
        for (int r = 0; r < n_; ++r)
            for (int c = 0; c < n_; ++c) {
                std::vector<std::vector<Int>> minor;
                for (int i = 0; i < n_; ++i) {
                    if (i == c) continue;
                    std::vector<Int> row;
                    for (int k = 0; k < n_; ++k)
                        if (k != r) row.push_back(alpha_exp_[i][k]);
                    minor.push_back(std::move(row));
                }
                Int d = int_det(minor);
                adj[r][c] = ((r + c) & 1) ? -d : d;
            }
        return adj;
    }

    RingKind kind_;
    int n_;
    std::vector<Monomial> alpha_exp_;
    std::vector<int> alpha_sign_;
    std::vector<Monomial> inv_exp_;
    std::vector<int> inv_sign_;
    bool twisted_ = false;
};

using RingPtr = std::shared_ptr<const GroundRing>;

inline void require_same_ring(const RingPtr& a, const RingPtr& b) {
    if (a == b) return;
    if (!a || !b || !a->same_as(*b)) throw ring_mismatch_error("operands over different ground rings");
}

/// Element of the coefficient ring A: a finite sum of monomials with
/// arbitrary-precision coefficients.  For Z and Q the monomial is empty.
class GroundElement {
public:
    GroundElement() = default;

    explicit GroundElement(RingPtr ring) : ring_(std::move(ring)) {}

    static GroundElement zero(RingPtr ring) { return GroundElement(std::move(ring)); }

    static GroundElement one(RingPtr ring) { return from_rational(std::move(ring), 1); }

    static GroundElement from_rational(RingPtr ring, Rational v) {
        GroundElement e(std::move(ring));
        if (v != 0) e.terms_[Monomial(e.ring_->generators(), 0)] = std::move(v);
        return e;
    }

    static GroundElement monomial(RingPtr ring, Monomial m, Rational coeff = 1) {
        GroundElement e(std::move(ring));
        if (static_cast<int>(m.size()) != e.ring_->generators())
            throw error("monomial exponent vector has wrong length");
        if (coeff != 0) e.terms_[std::move(m)] = std::move(coeff);
        return e;
    }

    const RingPtr& ring() const { return ring_; }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }

    bool is_one() const {
        return terms_.size() == 1 && terms_.begin()->second == 1 &&
               is_trivial(terms_.begin()->first);
    }

    /// The coefficient of the trivial monomial (the "constant term").
    Rational constant_coefficient() const {
        auto it = terms_.find(Monomial(ring_->generators(), 0));
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// For Z-valued contexts: the value as an integer.
    Int integer_value() const {
        if (terms_.empty()) return 0;
        if (terms_.size() != 1 || !is_trivial(terms_.begin()->first) ||
            !is_integer(terms_.begin()->second))
            throw error("element is not a plain integer");
        return num(terms_.begin()->second);
    }

    Rational rational_value() const {
        if (terms_.empty()) return 0;
        if (terms_.size() != 1 || !is_trivial(terms_.begin()->first))
            throw error("element is not a plain scalar");
        return terms_.begin()->second;
    }

    GroundElement operator-() const {
        GroundElement r(ring_);
        for (const auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }

    GroundElement operator+(const GroundElement& o) const {
        require_same_ring(ring_, o.ring_);
        GroundElement r = *this;
        for (const auto& [m, c] : o.terms_) {
            auto it = r.terms_.find(m);
            if (it == r.terms_.end()) {
                r.terms_[m] = c;
            } else {
                it->second += c;
                if (it->second == 0) r.terms_.erase(it);
            }
        }
        return r;
    }

    GroundElement operator-(const GroundElement& o) const { return *this + (-o); }

    GroundElement operator*(const GroundElement& o) const {
        require_same_ring(ring_, o.ring_);
        GroundElement r(ring_);
        const int n = ring_->generators();
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : o.terms_) {
                Monomial m(n);
                for (int i = 0; i < n; ++i) m[i] = ma[i] + mb[i];
                Rational c = ca * cb;
                auto it = r.terms_.find(m);
                if (it == r.terms_.end()) {
                    if (c != 0) r.terms_[std::move(m)] = std::move(c);
                } else {
                    it->second += c;
                    if (it->second == 0) r.terms_.erase(it);
                }
            }
        return r;
    }

    GroundElement& operator+=(const GroundElement& o) { return *this = *this + o; }
    GroundElement& operator-=(const GroundElement& o) { return *this = *this - o; }
    GroundElement& operator*=(const GroundElement& o) { return *this = *this * o; }

    bool operator==(const GroundElement& o) const {
        require_same_ring(ring_, o.ring_);
        return terms_ == o.terms_;
    }
    bool operator!=(const GroundElement& o) const { return !(*this == o); }

    /// Entrywise application of alpha^j (j may be negative).
    GroundElement apply_alpha(int j) const {
        if (j == 0 || !ring_->twisted()) return *this;
        GroundElement r(ring_);
        for (const auto& [m, c] : terms_) {
            int sign = 1;
            Monomial img = ring_->alpha_pow_monomial(m, j, &sign);
            Rational v = sign == 1 ? c : -c;
            auto it = r.terms_.find(img);
            if (it == r.terms_.end()) r.terms_[std::move(img)] = std::move(v);
            else {
                it->second += v;
                if (it->second == 0) r.terms_.erase(it);
            }
        }
        return r;
    }

    /// Unit test in the declared ring: ±1 over Z, any nonzero over Q,
    /// ±(monomial) over a group ring.
    bool is_unit() const {
        if (terms_.empty()) return false;
        switch (ring_->kind()) {
            case RingKind::Rationals:
                return true;
            case RingKind::Integers:
                return terms_.size() == 1 && is_trivial(terms_.begin()->first) &&
                       (terms_.begin()->second == 1 || terms_.begin()->second == -1);
            case RingKind::GroupRing:
                return terms_.size() == 1 &&
                       (terms_.begin()->second == 1 || terms_.begin()->second == -1);
        }
        return false;
    }

    GroundElement unit_inverse() const {
        if (!is_unit()) throw error("element is not a unit in its ring");
        const auto& [m, c] = *terms_.begin();
        if (ring_->kind() == RingKind::Rationals)
            return from_rational(ring_, Rational(1) / c);
        Monomial inv(m.size());
        for (size_t i = 0; i < m.size(); ++i) inv[i] = -m[i];
        return monomial(ring_, std::move(inv), c); // c = ±1, self-inverse
    }

    /// Field inverse; only over Q.
    GroundElement inverse() const {
        if (ring_->kind() != RingKind::Rationals)
            throw unsupported_ring_error("field inverse needs coefficient ring Q");
        if (is_zero()) throw error("division by zero");
        return from_rational(ring_, Rational(1) / terms_.begin()->second);
    }

    GroundElement operator/(const GroundElement& o) const { return *this * o.inverse(); }

private:
    static bool is_trivial(const Monomial& m) {
        for (int e : m)
            if (e != 0) return false;
        return true;
    }

    RingPtr ring_;
    std::map<Monomial, Rational> terms_;
};

} // namespace novikov

#endif

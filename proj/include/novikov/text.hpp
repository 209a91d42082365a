#ifndef NOVIKOV_TEXT_HPP
#define NOVIKOV_TEXT_HPP

#include <cctype>
#include <sstream>
#include <string>

#include "novikov/matrix.hpp"

namespace novikov {

// ---------------------------------------------------------------------------
// rendering
//
// Canonical text forms: ascending z-powers, explicit O(z^{K+1}) tail for
// truncated series, group-ring monomials as u1^2*u2^-1.  Scalar coefficient
// rings print the coefficient first (3*z); group rings keep the normal form
// order z^j*(a).
// ---------------------------------------------------------------------------

namespace textdetail {

inline std::string render_rational(const Rational& q) { return q.str(); }

inline std::string render_monomial(const Monomial& m) {
    std::string out;
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += "u" + std::to_string(i + 1);
        if (m[i] != 1) out += "^" + std::to_string(m[i]);
    }
    return out;
}

struct Term {
    bool negative = false;
    std::string body;
};

inline std::string join_terms(const std::vector<Term>& terms) {
    if (terms.empty()) return "0";
    std::string out;
    for (size_t i = 0; i < terms.size(); ++i) {
        if (i == 0) {
            if (terms[i].negative) out += "-";
        } else {
            out += terms[i].negative ? " - " : " + ";
        }
        out += terms[i].body;
    }
    return out;
}

inline std::vector<Term> ground_terms(const GroundElement& a) {
    std::vector<Term> ts;
    for (const auto& [m, c] : a.terms()) {
        Term t;
        Rational mag = c;
        if (c < 0) {
            t.negative = true;
            mag = -c;
        }
        std::string mono = render_monomial(m);
        if (mono.empty()) {
            t.body = render_rational(mag);
        } else if (mag == 1) {
            t.body = mono;
        } else {
            t.body = render_rational(mag) + "*" + mono;
        }
        ts.push_back(std::move(t));
    }
    return ts;
}

inline std::string z_factor(int j) {
    if (j == 1) return "z";
    return "z^" + std::to_string(j);
}

/// One term z^j * a of a twisted polynomial or series.
inline Term twisted_term(int j, const GroundElement& a) {
    const bool scalar_ring = a.ring()->kind() != RingKind::GroupRing;
    std::vector<Term> gts = ground_terms(a);
    if (j == 0) {
        if (gts.size() == 1) return gts[0];
        Term t;
        t.body = "(" + join_terms(gts) + ")";
        return t;
    }
    if (gts.size() == 1) {
        Term t;
        t.negative = gts[0].negative;
        if (gts[0].body == "1") {
            t.body = z_factor(j);
        } else if (scalar_ring) {
            t.body = gts[0].body + "*" + z_factor(j);
        } else {
            t.body = z_factor(j) + "*" + gts[0].body;
        }
        return t;
    }
    Term t;
    t.body = z_factor(j) + "*(" + join_terms(gts) + ")";
    return t;
}

} // namespace textdetail

inline std::string render(const GroundElement& a) {
    return textdetail::join_terms(textdetail::ground_terms(a));
}

inline std::string render(const TwistedElement& p) {
    std::vector<textdetail::Term> ts;
    for (const auto& [j, a] : p.coefficients()) ts.push_back(textdetail::twisted_term(j, a));
    return textdetail::join_terms(ts);
}

inline std::string render(const NovikovSeries& s) {
    std::vector<textdetail::Term> ts;
    for (const auto& [j, a] : s.coefficients()) ts.push_back(textdetail::twisted_term(j, a));
    if (s.order() >= kExactOrder) return textdetail::join_terms(ts);
    std::string tail = "O(z^" + std::to_string(s.order() + 1) + ")";
    if (ts.empty()) return tail;
    return textdetail::join_terms(ts) + " + " + tail;
}

inline std::string render(const RationalFunction& r) {
    if (r.is_polynomial()) return render(r.numerator());
    return "(" + render(r.numerator()) + ")/(" + render(r.denominator()) + ")";
}

template <typename T>
std::string render(const RingMatrix<T>& m) {
    std::string out = "[";
    for (int r = 0; r < m.rows(); ++r) {
        if (r) out += ", ";
        out += "[";
        for (int c = 0; c < m.cols(); ++c) {
            if (c) out += ", ";
            out += render(m.at(r, c));
        }
        out += "]";
    }
    return out + "]";
}

// ---------------------------------------------------------------------------
// parsing
// ---------------------------------------------------------------------------

namespace textdetail {

/// Recursive-descent parser for the element grammar.  Accepts both
/// coefficient-first (3*z) and normal-form (z*3) factor orders; products
/// are evaluated left to right with the twisted multiplication, so either
/// order parses to the same normal form.
class ElementParser {
public:
    ElementParser(RingPtr ring, const std::string& text) : ring_(std::move(ring)), s_(text) {}

    /// Parses a full twisted polynomial, plus an optional O(z^k) tail.
    /// Returns the element and the truncation order (kExactOrder if no
    /// tail is present).
    std::pair<TwistedElement, int> parse_sum_with_tail() {
        auto [value, order] = sum(true);
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return {value, order};
    }

private:
    std::pair<TwistedElement, int> sum(bool allow_tail) {
        TwistedElement acc = TwistedElement::zero(ring_);
        int order = kExactOrder;
        bool first = true;
        while (true) {
            skip_ws();
            bool neg = false;
            if (first) {
                if (peek() == '-') {
                    neg = true;
                    ++pos_;
                } else if (peek() == '+') {
                    ++pos_;
                }
            } else {
                if (peek() == '+') {
                    ++pos_;
                } else if (peek() == '-') {
                    neg = true;
                    ++pos_;
                } else {
                    break;
                }
            }
            skip_ws();
            if (allow_tail && peek() == 'O') {
                if (neg) fail("O(...) tail cannot be subtracted");
                order = parse_tail();
                break;
            }
            TwistedElement t = product();
            acc = neg ? acc - t : acc + t;
            first = false;
        }
        if (first && order >= kExactOrder) {
            // empty sum: allow a single "0"
        }
        return {acc, order};
    }

    TwistedElement product() {
        TwistedElement acc = factor();
        while (true) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                acc = acc * factor();
            } else {
                break;
            }
        }
        return acc;
    }

    TwistedElement factor() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            auto [val, order] = sum(false);
            (void)order;
            skip_ws();
            expect(')');
            return val;
        }
        if (c == 'z') {
            ++pos_;
            int e = exponent();
            return TwistedElement::z_power(ring_, e, GroundElement::one(ring_));
        }
        if (c == 'u') {
            ++pos_;
            int idx = integer_literal();
            if (idx < 1 || idx > ring_->generators())
                fail("generator u" + std::to_string(idx) + " out of range");
            int e = exponent();
            Monomial m(ring_->generators(), 0);
            m[idx - 1] = e;
            return TwistedElement::from_ground(GroundElement::monomial(ring_, std::move(m)));
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Int n = bigint_literal();
            Rational q(n);
            skip_ws();
            if (peek() == '/') {
                size_t save = pos_;
                ++pos_;
                skip_ws();
                if (std::isdigit(static_cast<unsigned char>(peek()))) {
                    Int d = bigint_literal();
                    if (d == 0) fail("zero denominator in coefficient");
                    q = Rational(n, d);
                } else {
                    pos_ = save; // the '/' belongs to an outer construct
                }
            }
            if (ring_->kind() != RingKind::Rationals && !is_integer(q))
                fail("non-integral coefficient over an integral ground ring");
            return TwistedElement::from_ground(GroundElement::from_rational(ring_, q));
        }
        fail("expected a factor");
        return TwistedElement::zero(ring_); // unreachable
    }

    int parse_tail() {
        // at 'O'
        ++pos_;
        expect('(');
        skip_ws();
        expect('z');
        skip_ws();
        expect('^');
        skip_ws();
        int k = integer_literal();
        skip_ws();
        expect(')');
        return k - 1;
    }

    int exponent() {
        skip_ws();
        if (peek() != '^') return 1;
        ++pos_;
        skip_ws();
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos_;
        }
        int v = integer_literal();
        return neg ? -v : v;
    }

    int integer_literal() {
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an integer");
        long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            if (v > (1L << 30)) fail("integer literal too large for an exponent/index");
            ++pos_;
        }
        return static_cast<int>(v);
    }

    Int bigint_literal() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer");
        return Int(s_.substr(start, pos_ - start));
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw parse_error("parse error at position " + std::to_string(pos_) + ": " + msg +
                          " in \"" + s_ + "\"");
    }

    RingPtr ring_;
    const std::string& s_;
    size_t pos_ = 0;
};

} // namespace textdetail

inline TwistedElement parse_twisted(const RingPtr& ring, const std::string& text) {
    auto [value, order] = textdetail::ElementParser(ring, text).parse_sum_with_tail();
    if (order < kExactOrder) throw parse_error("unexpected O(...) tail in a polynomial: " + text);
    return value;
}

inline GroundElement parse_ground(const RingPtr& ring, const std::string& text) {
    TwistedElement p = parse_twisted(ring, text);
    for (const auto& [j, a] : p.coefficients())
        if (j != 0) throw parse_error("z-powers not allowed in a ground ring element: " + text);
    return p.coefficient(0);
}

inline NovikovSeries parse_series(const RingPtr& ring, const std::string& text) {
    auto [value, order] = textdetail::ElementParser(ring, text).parse_sum_with_tail();
    return NovikovSeries::from_twisted(value, order);
}

inline RationalFunction parse_ratfun(const RingPtr& ring, const std::string& text) {
    // either "expr" or "(expr)/(expr)"
    size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip();
    if (pos < text.size() && text[pos] == '(') {
        int depth = 0;
        size_t close = std::string::npos;
        for (size_t i = pos; i < text.size(); ++i) {
            if (text[i] == '(') ++depth;
            if (text[i] == ')' && --depth == 0) {
                close = i;
                break;
            }
        }
        if (close != std::string::npos) {
            size_t after = close + 1;
            while (after < text.size() && std::isspace(static_cast<unsigned char>(text[after])))
                ++after;
            if (after < text.size() && text[after] == '/') {
                std::string num = text.substr(pos + 1, close - pos - 1);
                std::string rest = text.substr(after + 1);
                size_t a = 0;
                while (a < rest.size() && std::isspace(static_cast<unsigned char>(rest[a]))) ++a;
                if (a >= rest.size() || rest[a] != '(')
                    throw parse_error("expected parenthesized denominator: " + text);
                size_t b = rest.find_last_of(')');
                if (b == std::string::npos || b <= a)
                    throw parse_error("unbalanced denominator parentheses: " + text);
                std::string den = rest.substr(a + 1, b - a - 1);
                return RationalFunction(parse_twisted(ring, num), parse_twisted(ring, den));
            }
        }
    }
    return RationalFunction::from_twisted(parse_twisted(ring, text));
}

} // namespace novikov

#endif

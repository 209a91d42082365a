#ifndef NOVIKOV_DOMAIN_HPP
#define NOVIKOV_DOMAIN_HPP

#include <sstream>

#include "novikov/complex.hpp"

namespace novikov {

/// One violated identity of the chain-condition validation.
struct ValidationIssue {
    std::string identity;
    int degree = 0;
    int row = 0;
    int col = 0;

    std::string to_string() const {
        std::ostringstream os;
        os << identity << " fails in degree " << degree << " at entry (" << row << ", " << col
           << ")";
        return os.str();
    }
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;

    bool ok() const { return issues.empty(); }

    std::string to_string() const {
        if (issues.empty()) return "ok";
        std::ostringstream os;
        for (const auto& i : issues) os << i.to_string() << "\n";
        return os.str();
    }
};

namespace domaindetail {

inline void report_nonzero(ValidationReport& rep, const RingMatrix<GroundElement>& m,
                           const std::string& identity, int degree) {
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            if (!m.at(r, c).is_zero()) rep.issues.push_back({identity, degree, r, c});
}

} // namespace domaindetail

/// Fundamental-domain chain data: boundary complex D, interior complex F,
/// birth maps c_i : F_i -> D_{i-1}, and the crossing chain approximation
/// with survival component h_D,i : alpha-D_i -> D_i and death component
/// h_F,i : alpha-D_i -> F_i.  The crossing matrices are stored so that
/// z*h is a chain map over the twisted extension.
struct FundamentalDomain {
    RingPtr ring;
    BasedComplex<GroundElement> D;
    BasedComplex<GroundElement> F;
    std::vector<RingMatrix<GroundElement>> c;
    std::vector<RingMatrix<GroundElement>> h_D;
    std::vector<RingMatrix<GroundElement>> h_F;
    bool gradient_like = false;

    FundamentalDomain() = default;

    FundamentalDomain(RingPtr ring_, BasedComplex<GroundElement> D_, BasedComplex<GroundElement> F_,
                      std::vector<RingMatrix<GroundElement>> c_,
                      std::vector<RingMatrix<GroundElement>> hD_,
                      std::vector<RingMatrix<GroundElement>> hF_, bool gradient_like_ = false)
        : ring(std::move(ring_)),
          D(std::move(D_)),
          F(std::move(F_)),
          c(std::move(c_)),
          h_D(std::move(hD_)),
          h_F(std::move(hF_)),
          gradient_like(gradient_like_) {
        if (static_cast<int>(c.size()) > F.top_degree() + 1)
            throw error("too many birth matrices");
        for (size_t i = 0; i < c.size(); ++i)
            if (c[i].rows() != D.rank(static_cast<int>(i) - 1) ||
                c[i].cols() != F.rank(static_cast<int>(i)))
                throw error("birth matrix c in degree " + std::to_string(i) +
                            " has the wrong shape");
        if (static_cast<int>(h_D.size()) > D.top_degree() + 1 ||
            static_cast<int>(h_F.size()) > D.top_degree() + 1)
            throw error("too many crossing matrices");
        for (size_t i = 0; i < h_D.size(); ++i)
            if (h_D[i].rows() != D.rank(static_cast<int>(i)) ||
                h_D[i].cols() != D.rank(static_cast<int>(i)))
                throw error("survival matrix h_D in degree " + std::to_string(i) +
                            " has the wrong shape");
        for (size_t i = 0; i < h_F.size(); ++i)
            if (h_F[i].rows() != F.rank(static_cast<int>(i)) ||
                h_F[i].cols() != D.rank(static_cast<int>(i)))
                throw error("death matrix h_F in degree " + std::to_string(i) +
                            " has the wrong shape");
    }

    RingMatrix<GroundElement> c_at(int i) const {
        if (i >= 0 && i < static_cast<int>(c.size())) return c[i];
        return RingMatrix<GroundElement>(D.rank(i - 1), F.rank(i), proto());
    }

    RingMatrix<GroundElement> h_D_at(int i) const {
        if (i >= 0 && i < static_cast<int>(h_D.size())) return h_D[i];
        return RingMatrix<GroundElement>(D.rank(i), D.rank(i), proto());
    }

    RingMatrix<GroundElement> h_F_at(int i) const {
        if (i >= 0 && i < static_cast<int>(h_F.size())) return h_F[i];
        return RingMatrix<GroundElement>(F.rank(i), D.rank(i), proto());
    }

    GroundElement proto() const { return GroundElement::zero(ring); }

    int top_degree() const { return std::max(D.top_degree(), F.top_degree()); }

    /// Ambient complex E with d_E = [[d_D, c], [0, d_F]].  Uses the
    /// unchecked constructor so invalid data can still be reported.
    BasedComplex<GroundElement> ambient() const {
        const int top = top_degree();
        std::vector<int> ranks(top + 1);
        for (int i = 0; i <= top; ++i) ranks[i] = D.rank(i) + F.rank(i);
        std::vector<RingMatrix<GroundElement>> diffs;
        diffs.emplace_back(0, ranks[0], proto());
        for (int i = 1; i <= top; ++i)
            diffs.push_back(RingMatrix<GroundElement>::block2x2(
                D.d(i), c_at(i), RingMatrix<GroundElement>(F.rank(i - 1), D.rank(i), proto()),
                F.d(i)));
        std::vector<std::vector<std::string>> labels;
        if (D.has_labels() && F.has_labels()) {
            labels.resize(top + 1);
            for (int i = 0; i <= top; ++i) {
                labels[i] = D.labels_at(i);
                for (const std::string& s : F.labels_at(i)) labels[i].push_back(s);
            }
        }
        return BasedComplex<GroundElement>::unchecked(std::move(ranks), std::move(diffs), proto(),
                                                      std::move(labels));
    }
};

/// Chain-condition validation; violations are data, not errors.
inline ValidationReport validate(const FundamentalDomain& fd) {
    using domaindetail::report_nonzero;
    ValidationReport rep;
    for (int i = 1; i < fd.D.top_degree(); ++i)
        report_nonzero(rep, fd.D.d(i) * fd.D.d(i + 1), "d_D*d_D", i + 1);
    for (int i = 1; i < fd.F.top_degree(); ++i)
        report_nonzero(rep, fd.F.d(i) * fd.F.d(i + 1), "d_F*d_F", i + 1);
    const int top = fd.top_degree();
    for (int i = 0; i <= top + 1; ++i)
        report_nonzero(rep, fd.D.d(i - 1) * fd.c_at(i) + fd.c_at(i - 1) * fd.F.d(i),
                       "d_D*c + c*d_F", i);
    for (int i = 0; i <= fd.D.top_degree() + 1; ++i) {
        report_nonzero(rep,
                       apply_alpha(fd.D.d(i), 1) * fd.h_D_at(i) +
                           apply_alpha(fd.c_at(i), 1) * fd.h_F_at(i) -
                           fd.h_D_at(i - 1) * fd.D.d(i),
                       "alpha(d_D)*h_D + alpha(c)*h_F - h_D*d_D", i);
        report_nonzero(rep, apply_alpha(fd.F.d(i), 1) * fd.h_F_at(i) - fd.h_F_at(i - 1) * fd.D.d(i),
                       "alpha(d_F)*h_F - h_F*d_D", i);
    }
    return rep;
}

/// The domain with crossing approximation h + alpha(d_E) k + k d_D, the
/// other endpoint of the chain homotopy k.
inline FundamentalDomain apply_homotopy(const FundamentalDomain& fd,
                                        const std::vector<RingMatrix<GroundElement>>& k_D,
                                        const std::vector<RingMatrix<GroundElement>>& k_F) {
    auto kD_at = [&](int i) -> RingMatrix<GroundElement> {
        if (i >= 0 && i < static_cast<int>(k_D.size())) return k_D[i];
        return RingMatrix<GroundElement>(fd.D.rank(i + 1), fd.D.rank(i), fd.proto());
    };
    auto kF_at = [&](int i) -> RingMatrix<GroundElement> {
        if (i >= 0 && i < static_cast<int>(k_F.size())) return k_F[i];
        return RingMatrix<GroundElement>(fd.F.rank(i + 1), fd.D.rank(i), fd.proto());
    };
    std::vector<RingMatrix<GroundElement>> hD, hF;
    for (int i = 0; i <= fd.D.top_degree(); ++i) {
        hD.push_back(fd.h_D_at(i) + apply_alpha(fd.D.d(i + 1), 1) * kD_at(i) +
                     apply_alpha(fd.c_at(i + 1), 1) * kF_at(i) + kD_at(i - 1) * fd.D.d(i));
        hF.push_back(fd.h_F_at(i) + apply_alpha(fd.F.d(i + 1), 1) * kF_at(i) +
                     kF_at(i - 1) * fd.D.d(i));
    }
    return FundamentalDomain(fd.ring, fd.D, fd.F, fd.c, std::move(hD), std::move(hF),
                             fd.gradient_like);
}

/// A single real-valued cobordism piece with distinct boundary complexes
/// (flow enters at `right`, exits at `left`); the Def-2.3-style untwisted
/// chain data.
struct CobordismPiece {
    RingPtr ring;
    BasedComplex<GroundElement> left;
    BasedComplex<GroundElement> right;
    BasedComplex<GroundElement> F;
    std::vector<RingMatrix<GroundElement>> c;   ///< c_i : F_i -> left_{i-1}
    std::vector<RingMatrix<GroundElement>> h_D; ///< right_i -> left_i
    std::vector<RingMatrix<GroundElement>> h_F; ///< right_i -> F_i

    GroundElement proto() const { return GroundElement::zero(ring); }

    int top_degree() const {
        return std::max({left.top_degree(), right.top_degree(), F.top_degree()});
    }

    RingMatrix<GroundElement> c_at(int i) const {
        if (i >= 0 && i < static_cast<int>(c.size())) return c[i];
        return RingMatrix<GroundElement>(left.rank(i - 1), F.rank(i), proto());
    }
    RingMatrix<GroundElement> h_D_at(int i) const {
        if (i >= 0 && i < static_cast<int>(h_D.size())) return h_D[i];
        return RingMatrix<GroundElement>(left.rank(i), right.rank(i), proto());
    }
    RingMatrix<GroundElement> h_F_at(int i) const {
        if (i >= 0 && i < static_cast<int>(h_F.size())) return h_F[i];
        return RingMatrix<GroundElement>(F.rank(i), right.rank(i), proto());
    }
};

inline ValidationReport validate(const CobordismPiece& p) {
    using domaindetail::report_nonzero;
    ValidationReport rep;
    for (int i = 1; i < p.left.top_degree(); ++i)
        report_nonzero(rep, p.left.d(i) * p.left.d(i + 1), "d_left*d_left", i + 1);
    for (int i = 1; i < p.right.top_degree(); ++i)
        report_nonzero(rep, p.right.d(i) * p.right.d(i + 1), "d_right*d_right", i + 1);
    for (int i = 1; i < p.F.top_degree(); ++i)
        report_nonzero(rep, p.F.d(i) * p.F.d(i + 1), "d_F*d_F", i + 1);
    const int top = p.top_degree();
    for (int i = 0; i <= top + 1; ++i) {
        report_nonzero(rep, p.left.d(i - 1) * p.c_at(i) + p.c_at(i - 1) * p.F.d(i),
                       "d_D*c + c*d_F", i);
        report_nonzero(rep,
                       p.left.d(i) * p.h_D_at(i) + p.c_at(i) * p.h_F_at(i) -
                           p.h_D_at(i - 1) * p.right.d(i),
                       "d_D*h_D + c*h_F - h_D*d_D'", i);
        report_nonzero(rep, p.F.d(i) * p.h_F_at(i) - p.h_F_at(i - 1) * p.right.d(i),
                       "d_F*h_F - h_F*d_D'", i);
    }
    return rep;
}

/// Fundamental domain viewed as a piece between D and its z^{-1}-translate
/// (differential alpha^{-1}(d_D), crossing matrices alpha^{-1}(h)).
inline CobordismPiece to_piece(const FundamentalDomain& fd) {
    CobordismPiece p;
    p.ring = fd.ring;
    p.left = fd.D;
    p.right = fd.D.map_to(fd.proto(), [](const RingMatrix<GroundElement>& m) {
        return apply_alpha(m, -1);
    });
    p.F = fd.F;
    p.c = fd.c;
    for (const auto& m : fd.h_D) p.h_D.push_back(apply_alpha(m, -1));
    for (const auto& m : fd.h_F) p.h_F.push_back(apply_alpha(m, -1));
    return p;
}

/// Close a piece up into a fundamental domain; the right boundary must be
/// the z^{-1}-translate of the left one.
inline FundamentalDomain close_up(const CobordismPiece& p, bool gradient_like = false) {
    const BasedComplex<GroundElement> expected = p.left.map_to(
        p.proto(), [](const RingMatrix<GroundElement>& m) { return apply_alpha(m, -1); });
    if (p.right.ranks() != expected.ranks())
        throw shape_error("cannot close up: boundary ranks differ");
    for (int i = 1; i <= expected.top_degree(); ++i)
        if (p.right.d(i) != expected.d(i))
            throw shape_error(
                "cannot close up: right boundary is not the twisted translate of the left");
    std::vector<RingMatrix<GroundElement>> hD, hF;
    for (const auto& m : p.h_D) hD.push_back(apply_alpha(m, 1));
    for (const auto& m : p.h_F) hF.push_back(apply_alpha(m, 1));
    return FundamentalDomain(p.ring, p.left, p.F, p.c, std::move(hD), std::move(hF),
                             gradient_like);
}

/// Glue two adjacent cobordisms (flow runs right-to-left, `a` on the left).
inline CobordismPiece glue(const CobordismPiece& a, const CobordismPiece& b) {
    if (a.right.ranks() != b.left.ranks()) throw glue_error("boundary ranks do not match");
    for (int i = 1; i <= a.right.top_degree(); ++i)
        if (a.right.d(i) != b.left.d(i))
            throw glue_error("boundary differentials do not match at degree " + std::to_string(i));
    CobordismPiece out;
    out.ring = a.ring;
    out.left = a.left;
    out.right = b.right;
    const int top = std::max({a.F.top_degree(), b.F.top_degree(), a.top_degree(), b.top_degree()});
    // F = F' + F'' with d_F = [[d_F', h'_F c''], [0, d_F'']]
    std::vector<int> ranks(top + 1);
    for (int i = 0; i <= top; ++i) ranks[i] = a.F.rank(i) + b.F.rank(i);
    std::vector<RingMatrix<GroundElement>> diffs;
    diffs.emplace_back(0, ranks[0], a.proto());
    for (int i = 1; i <= top; ++i)
        diffs.push_back(RingMatrix<GroundElement>::block2x2(
            a.F.d(i), a.h_F_at(i - 1) * b.c_at(i),
            RingMatrix<GroundElement>(b.F.rank(i - 1), a.F.rank(i), a.proto()), b.F.d(i)));
    std::vector<std::vector<std::string>> labels;
    if (a.F.has_labels() && b.F.has_labels()) {
        labels.resize(top + 1);
        for (int i = 0; i <= top; ++i) {
            labels[i] = a.F.labels_at(i);
            for (const std::string& s : b.F.labels_at(i)) labels[i].push_back(s);
        }
    }
    out.F = BasedComplex<GroundElement>::unchecked(std::move(ranks), std::move(diffs), a.proto(),
                                                   std::move(labels));
    for (int i = 0; i <= top; ++i) {
        out.c.push_back(
            RingMatrix<GroundElement>::hstack(a.c_at(i), a.h_D_at(i - 1) * b.c_at(i)));
        out.h_D.push_back(a.h_D_at(i) * b.h_D_at(i));
        out.h_F.push_back(
            RingMatrix<GroundElement>::vstack(a.h_F_at(i) * b.h_D_at(i), b.h_F_at(i)));
    }
    return out;
}

/// Strict associativity of the glue formulas.
inline bool glue_assoc_check(const CobordismPiece& a, const CobordismPiece& b,
                             const CobordismPiece& c) {
    CobordismPiece lhs = glue(glue(a, b), c);
    CobordismPiece rhs = glue(a, glue(b, c));
    if (lhs.F != rhs.F) return false;
    const int top = lhs.top_degree();
    for (int i = 0; i <= top; ++i) {
        if (lhs.c_at(i) != rhs.c_at(i)) return false;
        if (lhs.h_D_at(i) != rhs.h_D_at(i)) return false;
        if (lhs.h_F_at(i) != rhs.h_F_at(i)) return false;
    }
    return true;
}

/// Result of an algebraic handle exchange: the fundamental domains on
/// either side of the moved cut and the basis-to-z^delta-basis map
/// between the two deformed complexes, as a matrix family over the
/// twisted extension.
struct ExchangeResult {
    FundamentalDomain fd;       ///< cut at the left boundary of `plus`
    FundamentalDomain fd_prime; ///< cut at the shared middle boundary
    std::vector<RingMatrix<TwistedElement>> iso; ///< Fhat_i -> Fhat'_i
};

/// Handle exchange across a changed cut.  `plus` runs D -> D', `minus`
/// runs D' -> D'' where D'' must be the z^{-1}-translate of D.  The first
/// output glues plus+minus and closes up at D; the second glues
/// minus+(shifted plus) and closes up at D'.
inline ExchangeResult exchange(const CobordismPiece& plus, const CobordismPiece& minus,
                               bool gradient_like = false) {
    ExchangeResult out;
    out.fd = close_up(glue(plus, minus), gradient_like);
    CobordismPiece shifted;
    shifted.ring = plus.ring;
    auto shift_complex = [&](const BasedComplex<GroundElement>& c) {
        return c.map_to(plus.proto(),
                        [](const RingMatrix<GroundElement>& m) { return apply_alpha(m, -1); });
    };
    shifted.left = shift_complex(plus.left);
    shifted.right = shift_complex(plus.right);
    shifted.F = shift_complex(plus.F);
    for (const auto& m : plus.c) shifted.c.push_back(apply_alpha(m, -1));
    for (const auto& m : plus.h_D) shifted.h_D.push_back(apply_alpha(m, -1));
    for (const auto& m : plus.h_F) shifted.h_F.push_back(apply_alpha(m, -1));
    try {
        out.fd_prime = close_up(glue(minus, shifted), gradient_like);
    } catch (const glue_error& e) {
        throw shape_error(std::string("exchange: minus does not end at the translate of plus's "
                                      "start: ") +
                          e.what());
    }
    // Fhat basis (F+, F-) maps to Fhat' basis (F-, F+) by x+ |-> z x+,
    // x- |-> x-.
    const RingPtr& ring = plus.ring;
    const int top = std::max(out.fd.top_degree(), out.fd_prime.top_degree());
    for (int i = 0; i <= top; ++i) {
        const int np = plus.F.rank(i), nm = minus.F.rank(i);
        RingMatrix<TwistedElement> m(nm + np, np + nm, TwistedElement::zero(ring));
        for (int r = 0; r < nm; ++r) m.at(r, np + r) = TwistedElement::one(ring);
        for (int r = 0; r < np; ++r) m.at(nm + r, r) = TwistedElement::z(ring);
        out.iso.push_back(std::move(m));
    }
    return out;
}

/// Finite window of the infinite union: k+1 copies of F with the
/// upper-triangular band differential, copy p standing for the
/// z^{-p}-translate.  The block in column p on the m-th superdiagonal is
/// alpha^{-p}(C_m) with C_0 = d_F and C_m = alpha^{m-1}(h_F) alpha^{m-2}(h_D)
/// ... h_D c.
inline BasedComplex<GroundElement> truncated_union(const FundamentalDomain& fd, int k) {
    if (k < 0) throw error("truncated_union needs k >= 0");
    const int top = fd.F.top_degree();
    std::vector<int> ranks(top + 1);
    for (int i = 0; i <= top; ++i) ranks[i] = (k + 1) * fd.F.rank(i);
    std::vector<RingMatrix<GroundElement>> diffs;
    diffs.emplace_back(0, ranks[0], fd.proto());
    for (int i = 1; i <= top; ++i) {
        // C_m : F_i -> F_{i-1}
        std::vector<RingMatrix<GroundElement>> cm;
        cm.push_back(fd.F.d(i));
        RingMatrix<GroundElement> survived =
            RingMatrix<GroundElement>::identity(fd.D.rank(i - 1), fd.proto());
        for (int m = 1; m <= k; ++m) {
            // survived = alpha^{m-2}(h_D) ... h_D after m-1 factors
            RingMatrix<GroundElement> block =
                apply_alpha(fd.h_F_at(i - 1), m - 1) * survived * fd.c_at(i);
            cm.push_back(std::move(block));
            survived = apply_alpha(survived, 1) * fd.h_D_at(i - 1);
        }
        RingMatrix<GroundElement> band(ranks[i - 1], ranks[i], fd.proto());
        const int nr = fd.F.rank(i - 1), nc = fd.F.rank(i);
        for (int p = 0; p <= k; ++p)
            for (int m = 0; m <= p; ++m) {
                RingMatrix<GroundElement> block = apply_alpha(cm[m], -p);
                for (int r = 0; r < nr; ++r)
                    for (int cidx = 0; cidx < nc; ++cidx)
                        band.at((p - m) * nr + r, p * nc + cidx) = block.at(r, cidx);
            }
        diffs.push_back(std::move(band));
    }
    return BasedComplex<GroundElement>(std::move(ranks), std::move(diffs), fd.proto());
}

} // namespace novikov

#endif

#ifndef NOVIKOV_GENERATOR_HPP
#define NOVIKOV_GENERATOR_HPP

#include "novikov/scenario.hpp"

namespace novikov {

/// Deterministic splitmix64 stream; avoids std::uniform_int_distribution
/// so that the same seed gives the same bytes on every platform.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [lo, hi].
    int uniform(int lo, int hi) {
        if (hi < lo) throw error("empty range");
        return lo + static_cast<int>(next() % static_cast<uint64_t>(hi - lo + 1));
    }

    bool coin(int num = 1, int den = 2) { return uniform(0, den - 1) < num; }

    Rng fork() { return Rng(next()); }

private:
    uint64_t state_;
};

struct GeneratorParams {
    uint64_t seed = 0;
    int max_degree = 3;   ///< top degree of D and F, at most 5
    int max_rank = 3;     ///< per-degree rank bound, at most 4
    int entry_bound = 2;  ///< absolute coefficient bound, at most 3
    int homotopy_richness = 2;
    RingPtr ring = GroundRing::integers();

    void check() const {
        if (max_degree < 0 || max_degree > 5) throw error("max_degree must be in [0, 5]");
        if (max_rank < 0 || max_rank > 4) throw error("max_rank must be in [0, 4]");
        if (entry_bound < 0 || entry_bound > 3) throw error("entry_bound must be in [0, 3]");
    }
};

namespace gendetail {

inline GroundElement random_coefficient(Rng& rng, const RingPtr& ring, int bound,
                                        bool allow_zero = true) {
    int lo = allow_zero ? -bound : 1;
    int v = rng.uniform(lo, bound);
    if (!allow_zero && rng.coin()) v = -v;
    if (v == 0) return GroundElement::zero(ring);
    if (ring->kind() != RingKind::GroupRing) return GroundElement::from_rational(ring, v);
    Monomial m(ring->generators(), 0);
    for (int i = 0; i < ring->generators(); ++i) m[i] = rng.uniform(-1, 1);
    return GroundElement::monomial(ring, std::move(m), v);
}

inline RingMatrix<GroundElement> random_matrix(Rng& rng, const RingPtr& ring, int rows, int cols,
                                               int bound, int density_den = 2) {
    RingMatrix<GroundElement> m(rows, cols, GroundElement::zero(ring));
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (rng.coin(1, density_den)) m.at(r, c) = random_coefficient(rng, ring, bound);
    return m;
}

/// Bound on the largest coefficient magnitude appearing anywhere.
inline bool within_bound(const RingMatrix<GroundElement>& m, int bound) {
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            for (const auto& [mono, coeff] : m.at(r, c).terms()) {
                Rational a = coeff < 0 ? -coeff : coeff;
                if (a > bound) return false;
            }
    return true;
}

/// Random signed permutation matrix (unimodular, entry-bound friendly).
inline RingMatrix<GroundElement> signed_permutation(Rng& rng, const RingPtr& ring, int n) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.uniform(0, i)]);
    RingMatrix<GroundElement> p(n, n, GroundElement::zero(ring));
    for (int k = 0; k < n; ++k)
        p.at(perm[k], k) = GroundElement::from_rational(ring, rng.coin() ? 1 : -1);
    return p;
}

/// Random complex built from elementary arrows and conjugated by signed
/// permutations.  Generators are marked upper/lower and arrows only run
/// from upper generators in degree i to lower generators in degree i-1,
/// so d*d = 0 holds by construction.
inline BasedComplex<GroundElement> random_complex(Rng& rng, const RingPtr& ring, int top,
                                                  int max_rank, int bound) {
    std::vector<int> ranks(top + 1);
    for (int i = 0; i <= top; ++i) ranks[i] = rng.uniform(0, max_rank);
    std::vector<std::vector<bool>> upper(top + 1);
    for (int i = 0; i <= top; ++i) {
        upper[i].resize(ranks[i]);
        for (int k = 0; k < ranks[i]; ++k) upper[i][k] = rng.coin();
    }
    std::vector<RingMatrix<GroundElement>> conj;
    for (int i = 0; i <= top; ++i) conj.push_back(signed_permutation(rng, ring, ranks[i]));
    std::vector<RingMatrix<GroundElement>> diffs;
    diffs.emplace_back(0, ranks[0], GroundElement::zero(ring));
    for (int i = 1; i <= top; ++i) {
        RingMatrix<GroundElement> d(ranks[i - 1], ranks[i], GroundElement::zero(ring));
        for (int c = 0; c < ranks[i]; ++c) {
            if (!upper[i][c]) continue;
            for (int r = 0; r < ranks[i - 1]; ++r) {
                if (upper[i - 1][r]) continue;
                if (rng.coin(1, 3)) d.at(r, c) = random_coefficient(rng, ring, bound);
            }
        }
        diffs.push_back(conj[i - 1] * d * ground_matrix_inverse(conj[i]));
    }
    return BasedComplex<GroundElement>(std::move(ranks), std::move(diffs),
                                       GroundElement::zero(ring));
}

/// Random chain endomorphism e : alpha-D -> D in the stored convention:
/// alpha(d) e = e d.  Always includes twisted null-homotopic parts and a
/// scalar part whenever alpha fixes the differential entrywise.
inline std::vector<RingMatrix<GroundElement>> random_twisted_endo(
    Rng& rng, const BasedComplex<GroundElement>& D, const RingPtr& ring, int bound) {
    const int top = D.top_degree();
    bool alpha_fixes = true;
    for (int i = 1; i <= top && alpha_fixes; ++i)
        if (apply_alpha(D.d(i), 1) != D.d(i)) alpha_fixes = false;
    std::vector<RingMatrix<GroundElement>> n;
    for (int i = 0; i <= top; ++i)
        n.push_back(random_matrix(rng, ring, D.rank(i + 1), D.rank(i), bound));
    auto n_at = [&](int i) -> RingMatrix<GroundElement> {
        if (i >= 0 && i <= top) return n[i];
        return RingMatrix<GroundElement>(D.rank(i + 1), D.rank(i), GroundElement::zero(ring));
    };
    GroundElement mu = GroundElement::zero(ring);
    if (alpha_fixes) mu = GroundElement::from_rational(ring, rng.uniform(-bound, bound));
    std::vector<RingMatrix<GroundElement>> e;
    for (int i = 0; i <= top; ++i) {
        RingMatrix<GroundElement> m =
            apply_alpha(D.d(i + 1), 1) * n_at(i) + n_at(i - 1) * D.d(i);
        if (!mu.is_zero())
            m = m + RingMatrix<GroundElement>::identity(D.rank(i), D.proto()).scaled_left(mu);
        e.push_back(std::move(m));
    }
    return e;
}

} // namespace gendetail

/// Deterministic random fundamental domain.  E is assembled from
/// elementary arrows and conjugated by a block-upper-triangular unimodular
/// basis change preserving the D-subcomplex; h is a sum of g-factored
/// chain endomorphisms of D and twisted null-homotopic crossings, so the
/// chain conditions hold by construction.  Scenarios exceeding the entry
/// bound are rejected and regenerated from a derived seed.
inline Scenario gen_random(const GeneratorParams& params) {
    using namespace gendetail;
    params.check();
    for (int attempt = 0;; ++attempt) {
        Rng rng(params.seed * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull * attempt + 1);
        const RingPtr& ring = params.ring;
        const GroundElement zero = GroundElement::zero(ring);
        const int top = rng.uniform(0, params.max_degree);
        BasedComplex<GroundElement> D = random_complex(rng, ring, top, params.max_rank,
                                                       params.entry_bound);
        BasedComplex<GroundElement> F0 = random_complex(rng, ring, top, params.max_rank,
                                                        params.entry_bound);
        // birth map via c = d_D w - w d_F, a chain-level boundary
        std::vector<RingMatrix<GroundElement>> w;
        for (int i = 0; i <= top; ++i)
            w.push_back(random_matrix(rng, ring, D.rank(i), F0.rank(i), params.entry_bound));
        auto w_at = [&](int i) -> RingMatrix<GroundElement> {
            if (i >= 0 && i <= top) return w[i];
            return RingMatrix<GroundElement>(D.rank(i), F0.rank(i), zero);
        };
        std::vector<RingMatrix<GroundElement>> c;
        for (int i = 0; i <= top; ++i)
            c.push_back(D.d(i) * w_at(i) - w_at(i - 1) * F0.d(i));
        auto c_at = [&](int i) -> RingMatrix<GroundElement> {
            if (i >= 0 && i <= top) return c[i];
            return RingMatrix<GroundElement>(D.rank(i - 1), F0.rank(i), zero);
        };
        // crossing approximation h = (g e) + alpha(d_E) m + m d_D
        std::vector<RingMatrix<GroundElement>> hD, hF;
        {
            std::vector<RingMatrix<GroundElement>> e =
                random_twisted_endo(rng, D, ring, params.entry_bound);
            std::vector<RingMatrix<GroundElement>> mD, mF;
            for (int i = 0; i <= top; ++i) {
                mD.push_back(random_matrix(rng, ring, D.rank(i + 1), D.rank(i),
                                           params.entry_bound, 3));
                mF.push_back(random_matrix(rng, ring, F0.rank(i + 1), D.rank(i),
                                           params.entry_bound, 3));
            }
            auto mD_at = [&](int i) -> RingMatrix<GroundElement> {
                if (i >= 0 && i <= top) return mD[i];
                return RingMatrix<GroundElement>(D.rank(i + 1), D.rank(i), zero);
            };
            auto mF_at = [&](int i) -> RingMatrix<GroundElement> {
                if (i >= 0 && i <= top) return mF[i];
                return RingMatrix<GroundElement>(F0.rank(i + 1), D.rank(i), zero);
            };
            for (int i = 0; i <= top; ++i) {
                // blockwise alpha(d_E) m + m d_D with m = [mD; mF]
                RingMatrix<GroundElement> nullD = apply_alpha(D.d(i + 1), 1) * mD_at(i) +
                                                  apply_alpha(c_at(i + 1), 1) * mF_at(i) +
                                                  mD_at(i - 1) * D.d(i);
                RingMatrix<GroundElement> nullF =
                    apply_alpha(F0.d(i + 1), 1) * mF_at(i) + mF_at(i - 1) * D.d(i);
                hD.push_back(e[i] + nullD);
                hF.push_back(nullF);
            }
        }
        FundamentalDomain fd(ring, D, F0, std::move(c), std::move(hD), std::move(hF));
        bool ok = within_bound(fd.D.d(0), params.entry_bound);
        for (int i = 1; i <= top && ok; ++i)
            ok = within_bound(fd.D.d(i), params.entry_bound) &&
                 within_bound(fd.F.d(i), params.entry_bound);
        for (int i = 0; i <= top && ok; ++i)
            ok = within_bound(fd.c_at(i), params.entry_bound) &&
                 within_bound(fd.h_D_at(i), params.entry_bound) &&
                 within_bound(fd.h_F_at(i), params.entry_bound);
        if (!ok && attempt < 64) continue;
        Scenario s;
        s.ring = ring;
        s.name = "random-" + std::to_string(params.seed);
        s.domain = std::move(fd);
        return s;
    }
}

/// Random chain of cobordism pieces over a shared boundary complex B, so
/// any two consecutive pieces glue and any pair feeds a handle exchange.
/// Over a twisted ring B is taken with zero differential so that closing
/// up at either cut stays well defined.
inline Scenario gen_random_pieces(const GeneratorParams& params, int count) {
    using namespace gendetail;
    params.check();
    for (int attempt = 0;; ++attempt) {
        Rng rng(params.seed * 0x9e3779b97f4a7c15ull + 0x6a09e667f3bcc909ull * attempt + 3);
        const RingPtr& ring = params.ring;
        const GroundElement zero = GroundElement::zero(ring);
        const int top = rng.uniform(0, params.max_degree);
        BasedComplex<GroundElement> B =
            ring->twisted()
                ? BasedComplex<GroundElement>::zero_complex(
                      [&] {
                          std::vector<int> r(top + 1);
                          for (int i = 0; i <= top; ++i) r[i] = rng.uniform(0, params.max_rank);
                          return r;
                      }(),
                      zero)
                : random_complex(rng, ring, top, params.max_rank, params.entry_bound);
        Scenario s;
        s.ring = ring;
        s.name = "random-pieces-" + std::to_string(params.seed);
        bool ok = true;
        for (int p = 0; p < count && ok; ++p) {
            CobordismPiece piece;
            piece.ring = ring;
            piece.left = B;
            piece.right = B;
            piece.F = random_complex(rng, ring, top, params.max_rank, params.entry_bound);
            std::vector<RingMatrix<GroundElement>> w;
            for (int i = 0; i <= top; ++i)
                w.push_back(random_matrix(rng, ring, B.rank(i), piece.F.rank(i),
                                          params.entry_bound));
            auto w_at = [&](int i) -> RingMatrix<GroundElement> {
                if (i >= 0 && i <= top) return w[i];
                return RingMatrix<GroundElement>(B.rank(i), piece.F.rank(i), zero);
            };
            for (int i = 0; i <= top; ++i)
                piece.c.push_back(B.d(i) * w_at(i) - w_at(i - 1) * piece.F.d(i));
            auto c_at = [&](int i) -> RingMatrix<GroundElement> {
                if (i >= 0 && i <= top) return piece.c[i];
                return RingMatrix<GroundElement>(B.rank(i - 1), piece.F.rank(i), zero);
            };
            // untwisted chain endomorphism of B plus a null-homotopic part
            std::vector<RingMatrix<GroundElement>> n, mD, mF;
            for (int i = 0; i <= top; ++i) {
                n.push_back(random_matrix(rng, ring, B.rank(i + 1), B.rank(i),
                                          params.entry_bound, 3));
                mD.push_back(random_matrix(rng, ring, B.rank(i + 1), B.rank(i),
                                           params.entry_bound, 3));
                mF.push_back(random_matrix(rng, ring, piece.F.rank(i + 1), B.rank(i),
                                           params.entry_bound, 3));
            }
            auto pad = [&](const std::vector<RingMatrix<GroundElement>>& v, int i, int rows,
                           int cols) -> RingMatrix<GroundElement> {
                if (i >= 0 && i <= top) return v[i];
                return RingMatrix<GroundElement>(rows, cols, zero);
            };
            GroundElement mu = GroundElement::from_rational(
                ring, rng.uniform(-params.entry_bound, params.entry_bound));
            for (int i = 0; i <= top; ++i) {
                RingMatrix<GroundElement> e =
                    B.d(i + 1) * pad(n, i, B.rank(i + 1), B.rank(i)) +
                    pad(n, i - 1, B.rank(i), B.rank(i - 1)) * B.d(i);
                if (!mu.is_zero())
                    e = e + RingMatrix<GroundElement>::identity(B.rank(i), zero).scaled_left(mu);
                RingMatrix<GroundElement> nullD =
                    B.d(i + 1) * pad(mD, i, B.rank(i + 1), B.rank(i)) +
                    c_at(i + 1) * pad(mF, i, piece.F.rank(i + 1), B.rank(i)) +
                    pad(mD, i - 1, B.rank(i), B.rank(i - 1)) * B.d(i);
                RingMatrix<GroundElement> nullF =
                    piece.F.d(i + 1) * pad(mF, i, piece.F.rank(i + 1), B.rank(i)) +
                    pad(mF, i - 1, piece.F.rank(i), B.rank(i - 1)) * B.d(i);
                piece.h_D.push_back(e + nullD);
                piece.h_F.push_back(nullF);
            }
            for (int i = 0; i <= top && ok; ++i)
                ok = within_bound(piece.c_at(i), params.entry_bound) &&
                     within_bound(piece.h_D_at(i), params.entry_bound) &&
                     within_bound(piece.h_F_at(i), params.entry_bound);
            s.pieces.push_back(std::move(piece));
        }
        if (!ok && attempt < 64) continue;
        return s;
    }
}

/// Attach a random chain homotopy k to a scenario holding a domain; the
/// other endpoint is recovered with apply_homotopy.
inline void attach_random_homotopy(Scenario& s, uint64_t seed, int bound) {
    if (!s.domain) throw error("homotopy needs a domain");
    using namespace gendetail;
    Rng rng(seed ^ 0x5851f42d4c957f2dull);
    const FundamentalDomain& fd = *s.domain;
    s.k_D.clear();
    s.k_F.clear();
    for (int i = 0; i <= fd.D.top_degree(); ++i) {
        s.k_D.push_back(random_matrix(rng, fd.ring, fd.D.rank(i + 1), fd.D.rank(i), bound));
        s.k_F.push_back(random_matrix(rng, fd.ring, fd.F.rank(i + 1), fd.D.rank(i), bound));
    }
    s.has_homotopy = true;
}

} // namespace novikov

#endif

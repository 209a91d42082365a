#ifndef NOVIKOV_CONE_HPP
#define NOVIKOV_CONE_HPP

#include "novikov/complex.hpp"
#include "novikov/smith.hpp"

namespace novikov {

/// Algebraic mapping cone of phi : D -> E, with cone_i = E_i + D_{i-1}
/// and differential [[d_E, (-1)^i phi], [0, d_D]].  Basis labels are
/// concatenated, E part first.
template <typename T>
BasedComplex<T> mapping_cone(const ChainMap<T>& phi) {
    const BasedComplex<T>& d = phi.source();
    const BasedComplex<T>& e = phi.target();
    const int top = std::max(e.top_degree(), d.top_degree() + 1);
    std::vector<int> ranks(top + 1);
    for (int i = 0; i <= top; ++i) ranks[i] = e.rank(i) + d.rank(i - 1);
    std::vector<RingMatrix<T>> diffs;
    diffs.emplace_back(0, ranks[0], e.proto());
    for (int i = 1; i <= top; ++i) {
        RingMatrix<T> f = phi.mat(i - 1);
        if (i & 1) f = -f;
        diffs.push_back(RingMatrix<T>::block2x2(
            e.d(i), f, RingMatrix<T>(d.rank(i - 2), e.rank(i), e.proto()), d.d(i - 1)));
    }
    std::vector<std::vector<std::string>> labels;
    if (e.has_labels() && d.has_labels()) {
        labels.resize(top + 1);
        for (int i = 0; i <= top; ++i) {
            labels[i] = e.labels_at(i);
            for (const std::string& s : d.labels_at(i - 1)) labels[i].push_back(s);
        }
    }
    return BasedComplex<T>(std::move(ranks), std::move(diffs), e.proto(), std::move(labels));
}

/// Degreewise direct-sum system extending an embedding phi_i : D_i -> E_i:
/// a retraction e (e phi = 1), the cokernel projection pi (pi phi = 0) and
/// a section sigma (pi sigma = 1, e sigma = 0, phi e + sigma pi = 1).
template <typename T>
struct SplitDegree {
    RingMatrix<T> e;
    RingMatrix<T> pi;
    RingMatrix<T> sigma;
};

namespace conedetail {

template <typename T>
SplitDegree<T> split_degree_field(const RingMatrix<T>& phi, int degree) {
    const int m = phi.rows(), n = phi.cols();
    Rref<T> r = rref_with_transform(phi);
    if (static_cast<int>(r.pivot_columns.size()) != n)
        throw embedding_error("chain map is not split injective in degree " +
                              std::to_string(degree));
    RingMatrix<T> uinv = field_inverse(r.transform);
    SplitDegree<T> s{r.transform.submatrix(0, 0, n, m), r.transform.submatrix(n, 0, m - n, m),
                     uinv.submatrix(0, n, m, m - n)};
    return s;
}

inline SplitDegree<GroundElement> split_degree_integers(const RingMatrix<GroundElement>& phi,
                                                        int degree) {
    const int m = phi.rows(), n = phi.cols();
    SmithResult snf = smith_normal_form(phi);
    if (snf.rank() != n || !snf.all_units())
        throw embedding_error("chain map is not split injective over Z in degree " +
                              std::to_string(degree) + " (cokernel not free)");
    const RingPtr& ring = phi.proto().ring();
    RingMatrix<GroundElement> u = grid_to_matrix(snf.U, m, m, ring);
    RingMatrix<GroundElement> v = grid_to_matrix(snf.V, n, n, ring);
    RingMatrix<GroundElement> uinv = ground_matrix_inverse(u);
    SplitDegree<GroundElement> s{v * u.submatrix(0, 0, n, m), u.submatrix(n, 0, m - n, m),
                                 uinv.submatrix(0, n, m, m - n)};
    return s;
}

} // namespace conedetail

template <typename T>
SplitDegree<T> split_degree(const RingMatrix<T>& phi, int degree) {
    if constexpr (std::is_same_v<T, GroundElement>) {
        switch (phi.proto().ring()->kind()) {
            case RingKind::Rationals:
                return conedetail::split_degree_field(phi, degree);
            case RingKind::Integers:
                return conedetail::split_degree_integers(phi, degree);
            case RingKind::GroupRing:
                throw unsupported_ring_error("splittings over group rings are not implemented");
        }
        throw unsupported_ring_error("unknown ring kind");
    } else if constexpr (std::is_same_v<T, RationalFunction>) {
        return conedetail::split_degree_field(phi, degree);
    } else {
        throw unsupported_ring_error(
            "general splittings need an exact carrier; use the block form over series");
    }
}

/// A cokernel of an embedding presented by projection/section matrices
/// relative to the ambient complex E.
template <typename T>
struct CokerPresentation {
    BasedComplex<T> complex;            ///< the cokernel complex
    std::vector<RingMatrix<T>> pi;      ///< pi_i : E_i -> coker_i
    std::vector<RingMatrix<T>> sigma;   ///< sigma_i : coker_i -> E_i, pi sigma = 1

    RingMatrix<T> projection(int i) const {
        if (i >= 0 && i < static_cast<int>(pi.size())) return pi[i];
        return RingMatrix<T>(complex.rank(i), 0, complex.proto());
    }

    RingMatrix<T> section(int i) const {
        if (i >= 0 && i < static_cast<int>(sigma.size())) return sigma[i];
        return RingMatrix<T>(0, complex.rank(i), complex.proto());
    }
};

/// Cokernel of an embedding via degreewise splitting (exact carriers).
template <typename T>
CokerPresentation<T> cokernel(const ChainMap<T>& phi) {
    const BasedComplex<T>& d = phi.source();
    const BasedComplex<T>& e = phi.target();
    const int top = e.top_degree();
    std::vector<SplitDegree<T>> split;
    for (int i = 0; i <= top; ++i) split.push_back(split_degree(phi.mat(i), i));
    std::vector<int> ranks(top + 1);
    for (int i = 0; i <= top; ++i) ranks[i] = e.rank(i) - d.rank(i);
    std::vector<RingMatrix<T>> diffs;
    diffs.emplace_back(0, ranks[0], e.proto());
    for (int i = 1; i <= top; ++i) diffs.push_back(split[i - 1].pi * e.d(i) * split[i].sigma);
    CokerPresentation<T> out{BasedComplex<T>(std::move(ranks), std::move(diffs), e.proto()), {}, {}};
    for (int i = 0; i <= top; ++i) {
        out.pi.push_back(split[i].pi);
        out.sigma.push_back(split[i].sigma);
    }
    return out;
}

/// Natural projection p : cone(phi) -> coker(phi), (x, y) |-> [x].
template <typename T>
ChainMap<T> cone_projection(const ChainMap<T>& phi, const BasedComplex<T>& cone,
                            const CokerPresentation<T>& coker) {
    const BasedComplex<T>& d = phi.source();
    std::vector<RingMatrix<T>> mats;
    for (int i = 0; i <= cone.top_degree(); ++i)
        mats.push_back(RingMatrix<T>::hstack(
            coker.projection(i),
            RingMatrix<T>(coker.complex.rank(i), d.rank(i - 1), cone.proto())));
    return ChainMap<T>(cone, coker.complex, std::move(mats));
}

template <typename T>
struct ConeProjection {
    BasedComplex<T> cone;
    CokerPresentation<T> coker;
    ChainMap<T> p;
};

template <typename T>
ConeProjection<T> cone_projection(const ChainMap<T>& phi) {
    BasedComplex<T> cone = mapping_cone(phi);
    CokerPresentation<T> coker = cokernel(phi);
    ChainMap<T> p = cone_projection(phi, cone, coker);
    return {std::move(cone), std::move(coker), std::move(p)};
}

/// Embedding in the block form: E_i = D_i + F_i with upper triangular
/// d_E = [[d_D, c], [0, d_F]] and phi = [phi_D; phi_F] with phi_D
/// invertible.
template <typename T>
struct BlockEmbedding {
    BasedComplex<T> D;
    BasedComplex<T> F;
    std::vector<RingMatrix<T>> c;     ///< c_i : F_i -> D_{i-1}
    std::vector<RingMatrix<T>> phiD;  ///< phi_D,i : D_i -> D_i
    std::vector<RingMatrix<T>> phiF;  ///< phi_F,i : D_i -> F_i

    RingMatrix<T> c_at(int i) const {
        if (i >= 0 && i < static_cast<int>(c.size())) return c[i];
        return RingMatrix<T>(D.rank(i - 1), F.rank(i), D.proto());
    }
    RingMatrix<T> phiD_at(int i) const {
        if (i >= 0 && i < static_cast<int>(phiD.size())) return phiD[i];
        return RingMatrix<T>(D.rank(i), D.rank(i), D.proto());
    }
    RingMatrix<T> phiF_at(int i) const {
        if (i >= 0 && i < static_cast<int>(phiF.size())) return phiF[i];
        return RingMatrix<T>(F.rank(i), D.rank(i), D.proto());
    }

    BasedComplex<T> ambient() const {
        const int top = std::max(D.top_degree(), F.top_degree());
        std::vector<int> ranks(top + 1);
        for (int i = 0; i <= top; ++i) ranks[i] = D.rank(i) + F.rank(i);
        std::vector<RingMatrix<T>> diffs;
        diffs.emplace_back(0, ranks[0], D.proto());
        for (int i = 1; i <= top; ++i)
            diffs.push_back(RingMatrix<T>::block2x2(
                D.d(i), c_at(i), RingMatrix<T>(F.rank(i - 1), D.rank(i), D.proto()), F.d(i)));
        return BasedComplex<T>(std::move(ranks), std::move(diffs), D.proto());
    }

    ChainMap<T> phi() const {
        BasedComplex<T> e = ambient();
        std::vector<RingMatrix<T>> mats;
        for (int i = 0; i <= D.top_degree(); ++i)
            mats.push_back(RingMatrix<T>::vstack(phiD_at(i), phiF_at(i)));
        return ChainMap<T>(D, e, std::move(mats));
    }
};

/// Deformed complex F^ with d = d_F - phi_F (phi_D)^{-1} c, together with
/// its identification with coker(phi) relative to the ambient complex:
/// pi = [-phi_F (phi_D)^{-1} | 1], sigma = [0; 1].
template <typename T>
CokerPresentation<T> cokernel_block(const BlockEmbedding<T>& b, int series_order = -1) {
    const int top = std::max(b.D.top_degree(), b.F.top_degree());
    std::vector<RingMatrix<T>> phiD_inv;
    for (int i = 0; i <= top; ++i) {
        try {
            phiD_inv.push_back(lin::invert(b.phiD_at(i), series_order));
        } catch (const novikov::error& err) {
            throw error("phi_D is not invertible in degree " + std::to_string(i) + ": " +
                        err.what());
        }
    }
    std::vector<int> ranks(b.F.ranks());
    ranks.resize(top + 1, 0);
    std::vector<RingMatrix<T>> diffs;
    diffs.emplace_back(0, b.F.rank(0), b.F.proto());
    for (int i = 1; i <= top; ++i)
        diffs.push_back(b.F.d(i) - b.phiF_at(i - 1) * phiD_inv[i - 1] * b.c_at(i));
    CokerPresentation<T> out{
        BasedComplex<T>(std::move(ranks), std::move(diffs), b.F.proto(), b.F.labels()), {}, {}};
    for (int i = 0; i <= top; ++i) {
        RingMatrix<T> left = -(b.phiF_at(i) * phiD_inv[i]);
        out.pi.push_back(
            RingMatrix<T>::hstack(left, RingMatrix<T>::identity(b.F.rank(i), b.F.proto())));
        out.sigma.push_back(RingMatrix<T>::vstack(
            RingMatrix<T>(b.D.rank(i), b.F.rank(i), b.F.proto()),
            RingMatrix<T>::identity(b.F.rank(i), b.F.proto())));
    }
    return out;
}

/// Isomorphism of mapping cones determined by a chain homotopy
/// theta : phi ~ phi', I = [[1, (-1)^{i-1} theta], [0, 1]].
template <typename T>
struct ConeIso {
    BasedComplex<T> cone_from;
    BasedComplex<T> cone_to;
    ChainMap<T> fwd;
    ChainMap<T> inv;
};

template <typename T>
ConeIso<T> iso_from_homotopy(const ChainHomotopy<T>& h) {
    const ChainMap<T>& phi = h.from();
    const ChainMap<T>& phi2 = h.to();
    BasedComplex<T> ca = mapping_cone(phi);
    BasedComplex<T> cb = mapping_cone(phi2);
    const BasedComplex<T>& d = phi.source();
    const BasedComplex<T>& e = phi.target();
    auto block = [&](int i, bool negate) {
        RingMatrix<T> th = h.theta(i - 1); // D_{i-1} -> E_i
        if (negate) th = -th;
        if (!(i & 1)) th = -th; // sign (-1)^{i-1}
        return RingMatrix<T>::block2x2(RingMatrix<T>::identity(e.rank(i), e.proto()), th,
                                       RingMatrix<T>(d.rank(i - 1), e.rank(i), e.proto()),
                                       RingMatrix<T>::identity(d.rank(i - 1), d.proto()));
    };
    std::vector<RingMatrix<T>> fwd, inv;
    for (int i = 0; i <= ca.top_degree(); ++i) {
        fwd.push_back(block(i, false));
        inv.push_back(block(i, true));
    }
    try {
        ChainMap<T> f(ca, cb, std::move(fwd));
        ChainMap<T> g(cb, ca, std::move(inv));
        return {std::move(ca), std::move(cb), std::move(f), std::move(g)};
    } catch (const novikov::error& err) {
        throw internal_check_error(std::string("cone isomorphism identity failed: ") + err.what());
    }
}

/// Inverse isotopy psi^- = -(1 + d psi + psi d)^{-1} psi.
template <typename T>
ChainIsotopy<T> isotopy_inverse(const ChainIsotopy<T>& iso, int series_order = -1) {
    const BasedComplex<T>& e = iso.carrier();
    std::vector<RingMatrix<T>> psi;
    for (int i = 0; i <= e.top_degree(); ++i) {
        RingMatrix<T> op;
        try {
            op = lin::invert(iso.operator_at(i + 1), series_order);
        } catch (const novikov::error& err) {
            throw isotopy_error(std::string("isotopy operator is not invertible: ") + err.what());
        }
        psi.push_back(-(op * iso.psi(i)));
    }
    return ChainIsotopy<T>(iso.to(), iso.from(), std::move(psi));
}

/// Composite isotopy psi'' = psi + psi' (1 + d psi + psi d), from
/// phi ~ phi' and phi' ~ phi''.
template <typename T>
ChainIsotopy<T> isotopy_compose(const ChainIsotopy<T>& first, const ChainIsotopy<T>& second) {
    if (first.to() != second.from()) throw error("isotopies do not chain");
    const BasedComplex<T>& e = first.carrier();
    std::vector<RingMatrix<T>> psi;
    for (int i = 0; i <= e.top_degree(); ++i)
        psi.push_back(first.psi(i) + second.psi(i) * first.operator_at(i));
    return ChainIsotopy<T>(first.from(), second.to(), std::move(psi));
}

/// Data of Prop-style cokernel invariance: the cone isomorphism q, the
/// induced cokernel isomorphism r, and the homotopy s with
/// r p - p' q = d s + s d.
template <typename T>
struct IsotopyCokerIso {
    ConeIso<T> q;
    CokerPresentation<T> coker_from;
    CokerPresentation<T> coker_to;
    ChainMap<T> r;
    std::vector<RingMatrix<T>> s;
};

template <typename T>
IsotopyCokerIso<T> iso_from_isotopy(const ChainIsotopy<T>& iso) {
    const ChainMap<T>& phi = iso.from();
    const ChainMap<T>& phi2 = iso.to();
    const BasedComplex<T>& e = iso.carrier();
    // theta = psi phi is the underlying homotopy
    std::vector<RingMatrix<T>> theta;
    for (int i = 0; i <= phi.source().top_degree(); ++i) theta.push_back(iso.psi(i) * phi.mat(i));
    ChainHomotopy<T> h(phi, phi2, std::move(theta));
    ConeIso<T> q = iso_from_homotopy(h);
    CokerPresentation<T> ca = cokernel(phi);
    CokerPresentation<T> cb = cokernel(phi2);
    std::vector<RingMatrix<T>> rmats;
    for (int i = 0; i <= ca.complex.top_degree(); ++i)
        rmats.push_back(cb.projection(i) * iso.operator_at(i) * ca.section(i));
    ChainMap<T> r;
    try {
        r = ChainMap<T>(ca.complex, cb.complex, std::move(rmats));
    } catch (const novikov::error& err) {
        throw internal_check_error(std::string("induced cokernel map is not a chain map: ") +
                                   err.what());
    }
    // s(x, y) = [psi x]
    std::vector<RingMatrix<T>> s;
    ChainMap<T> p = cone_projection(phi, q.cone_from, ca);
    ChainMap<T> p2 = cone_projection(phi2, q.cone_to, cb);
    for (int i = 0; i <= q.cone_from.top_degree(); ++i) {
        RingMatrix<T> left = cb.projection(i + 1) * iso.psi(i);
        s.push_back(RingMatrix<T>::hstack(
            left, RingMatrix<T>(cb.complex.rank(i + 1), phi.source().rank(i - 1), e.proto())));
    }
    // r p - p' q = d s + s d, degreewise
    for (int i = 0; i <= q.cone_from.top_degree(); ++i) {
        RingMatrix<T> lhs = r.mat(i) * p.mat(i) - p2.mat(i) * q.fwd.mat(i);
        RingMatrix<T> si = i < static_cast<int>(s.size())
                               ? s[i]
                               : RingMatrix<T>(cb.complex.rank(i + 1), q.cone_from.rank(i), e.proto());
        RingMatrix<T> sprev = i >= 1 ? s[i - 1]
                                     : RingMatrix<T>(cb.complex.rank(i), q.cone_from.rank(i - 1),
                                                     e.proto());
        RingMatrix<T> rhs = cb.complex.d(i + 1) * si + sprev * q.cone_from.d(i);
        if (!chain_equal(lhs, rhs))
            throw internal_check_error("rp - p'q = ds + sd fails at degree " + std::to_string(i));
    }
    return {std::move(q), std::move(ca), std::move(cb), std::move(r), std::move(s)};
}

/// Inverse chain equivalences between cone(phi) and coker(phi) built from
/// a supplied degreewise retraction e (e phi = 1): p = [j 0],
/// g = [k; (-1)^{i-1} c] with c = e d_E k, and the homotopy h with
/// p g = 1 and g p - 1 = d h + h d.
template <typename T>
struct ConeCokerEquivalence {
    BasedComplex<T> cone;
    CokerPresentation<T> coker;
    ChainMap<T> p;
    ChainMap<T> g;
    std::vector<RingMatrix<T>> h;
};

template <typename T>
ConeCokerEquivalence<T> cone_coker_equivalence(const ChainMap<T>& phi,
                                               const std::vector<RingMatrix<T>>& e_mats) {
    const BasedComplex<T>& dd = phi.source();
    const BasedComplex<T>& ee = phi.target();
    const int top = ee.top_degree();
    // validate the splitting, then complete it to a direct sum system
    std::vector<RingMatrix<T>> j(top + 1, RingMatrix<T>(0, 0, ee.proto())),
        k(top + 1, RingMatrix<T>(0, 0, ee.proto()));
    std::vector<RingMatrix<T>> e(top + 1, RingMatrix<T>(0, 0, ee.proto()));
    for (int i = 0; i <= top; ++i) {
        RingMatrix<T> ei = i < static_cast<int>(e_mats.size())
                               ? e_mats[i]
                               : RingMatrix<T>(dd.rank(i), ee.rank(i), ee.proto());
        if (ei.rows() != dd.rank(i) || ei.cols() != ee.rank(i))
            throw error("splitting matrix in degree " + std::to_string(i) + " has wrong shape");
        if (ei * phi.mat(i) != RingMatrix<T>::identity(dd.rank(i), ee.proto()))
            throw error("supplied splitting is not a splitting (e phi != 1) in degree " +
                        std::to_string(i));
        // P = 1 - phi e is idempotent with image coker(phi)
        RingMatrix<T> p_proj =
            RingMatrix<T>::identity(ee.rank(i), ee.proto()) - phi.mat(i) * ei;
        SplitDegree<T> sd = split_degree(phi.mat(i), i);
        // complete: k = basis of im(P) from the canonical splitting,
        // j = the matching projection: take sigma from the canonical
        // system and correct it onto im(P): k' = P sigma, j' = pi.
        // pi (P sigma) = pi sigma - (pi phi) e sigma = 1.
        k[i] = p_proj * sd.sigma;
        j[i] = sd.pi;
        e[i] = ei;
    }
    std::vector<int> ranks(top + 1);
    for (int i = 0; i <= top; ++i) ranks[i] = ee.rank(i) - dd.rank(i);
    std::vector<RingMatrix<T>> fd;
    fd.emplace_back(0, ranks[0], ee.proto());
    for (int i = 1; i <= top; ++i) fd.push_back(j[i - 1] * ee.d(i) * k[i]);
    BasedComplex<T> coker_complex(ranks, std::move(fd), ee.proto());
    BasedComplex<T> cone = mapping_cone(phi);
    std::vector<RingMatrix<T>> pmats, gmats, hmats;
    for (int i = 0; i <= cone.top_degree(); ++i) {
        RingMatrix<T> ji = i <= top ? j[i] : RingMatrix<T>(0, ee.rank(i), ee.proto());
        pmats.push_back(RingMatrix<T>::hstack(
            ji, RingMatrix<T>(coker_complex.rank(i), dd.rank(i - 1), ee.proto())));
        RingMatrix<T> ei = i <= top ? e[i] : RingMatrix<T>(dd.rank(i), ee.rank(i), ee.proto());
        if (i & 1) ei = -ei; // sign (-1)^i
        hmats.push_back(RingMatrix<T>::block2x2(
            RingMatrix<T>(ee.rank(i + 1), ee.rank(i), ee.proto()),
            RingMatrix<T>(ee.rank(i + 1), dd.rank(i - 1), ee.proto()), ei,
            RingMatrix<T>(dd.rank(i), dd.rank(i - 1), ee.proto())));
    }
    for (int i = 0; i <= coker_complex.top_degree(); ++i) {
        RingMatrix<T> ei_prev = (i - 1 >= 0 && i - 1 <= top)
                                    ? e[i - 1]
                                    : RingMatrix<T>(dd.rank(i - 1), ee.rank(i - 1), ee.proto());
        RingMatrix<T> ci = ei_prev * ee.d(i) * k[i]; // F_i -> D_{i-1}
        if (!(i & 1)) ci = -ci;                      // sign (-1)^{i-1}
        gmats.push_back(RingMatrix<T>::vstack(k[i], ci));
    }
    ConeCokerEquivalence<T> out{std::move(cone), CokerPresentation<T>{coker_complex, j, k},
                                ChainMap<T>(), ChainMap<T>(), std::move(hmats)};
    try {
        out.p = ChainMap<T>(out.cone, coker_complex, std::move(pmats));
        out.g = ChainMap<T>(coker_complex, out.cone, std::move(gmats));
    } catch (const novikov::error& err) {
        throw internal_check_error(std::string("cone/coker equivalence maps: ") + err.what());
    }
    // p g = 1 and g p - 1 = d h + h d
    for (int i = 0; i <= out.cone.top_degree(); ++i) {
        if (out.p.mat(i) * out.g.mat(i) !=
            RingMatrix<T>::identity(coker_complex.rank(i), ee.proto()))
            throw internal_check_error("p g != 1 at degree " + std::to_string(i));
        RingMatrix<T> lhs = out.g.mat(i) * out.p.mat(i) -
                            RingMatrix<T>::identity(out.cone.rank(i), ee.proto());
        RingMatrix<T> hi = out.h[i];
        RingMatrix<T> hprev = i >= 1 ? out.h[i - 1]
                                     : RingMatrix<T>(out.cone.rank(i), out.cone.rank(i - 1),
                                                     ee.proto());
        RingMatrix<T> rhs = out.cone.d(i + 1) * hi + hprev * out.cone.d(i);
        if (!chain_equal(lhs, rhs))
            throw internal_check_error("g p - 1 = d h + h d fails at degree " + std::to_string(i));
    }
    return out;
}

} // namespace novikov

#endif

#include <catch2/catch_amalgamated.hpp>

#include "novikov/generator.hpp"
#include "novikov/homology.hpp"
#include "novikov/text.hpp"
#include "oracles.hpp"

using namespace novikov;

namespace {

GroundElement ge(const RingPtr& r, long v) { return GroundElement::from_rational(r, v); }

RingMatrix<GroundElement> mat(const RingPtr& r, int rows, int cols,
                              std::initializer_list<long> vals) {
    RingMatrix<GroundElement> m(rows, cols, GroundElement::zero(r));
    auto it = vals.begin();
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = ge(r, *it++);
    return m;
}

/// The complex 0 -> Z -> 0 concentrated in degree 0.
BasedComplex<GroundElement> point(const RingPtr& r) {
    return BasedComplex<GroundElement>::zero_complex({1}, GroundElement::zero(r));
}

/// The complex Z -> Z with differential d in degrees 1 -> 0.
BasedComplex<GroundElement> interval(const RingPtr& r, long d) {
    std::vector<RingMatrix<GroundElement>> diffs;
    diffs.emplace_back(0, 1, GroundElement::zero(r));
    diffs.push_back(mat(r, 1, 1, {d}));
    return BasedComplex<GroundElement>({1, 1}, diffs, GroundElement::zero(r));
}

ChainMap<GroundElement> scalar_map(const BasedComplex<GroundElement>& c, long v) {
    std::vector<RingMatrix<GroundElement>> mats;
    for (int i = 0; i <= c.top_degree(); ++i) {
        RingMatrix<GroundElement> m(c.rank(i), c.rank(i), c.proto());
        for (int k = 0; k < c.rank(i); ++k) m.at(k, k) = ge(c.proto().ring(), v);
        mats.push_back(std::move(m));
    }
    return ChainMap<GroundElement>(c, c, std::move(mats));
}

} // namespace

TEST_CASE("complex construction enforces d*d = 0") {
    auto Z = GroundRing::integers();
    std::vector<RingMatrix<GroundElement>> diffs;
    diffs.emplace_back(0, 1, GroundElement::zero(Z));
    diffs.push_back(mat(Z, 1, 1, {1}));
    diffs.push_back(mat(Z, 1, 1, {1}));
    REQUIRE_THROWS_AS(BasedComplex<GroundElement>({1, 1, 1}, diffs, GroundElement::zero(Z)),
                      error);
    REQUIRE_NOTHROW(BasedComplex<GroundElement>::unchecked({1, 1, 1}, diffs,
                                                           GroundElement::zero(Z)));
}

TEST_CASE("mapping cone of the identity is acyclic with differential -1") {
    auto Z = GroundRing::integers();
    BasedComplex<GroundElement> pt = point(Z);
    ChainMap<GroundElement> id = ChainMap<GroundElement>::identity(pt);
    BasedComplex<GroundElement> cone = mapping_cone(id);
    REQUIRE(cone.ranks() == std::vector<int>{1, 1});
    REQUIRE(cone.d(1).at(0, 0) == ge(Z, -1));
    // homology vanishes in all degrees (Smith oracle)
    IntegralHomology h0 = integral_homology(cone, 0);
    IntegralHomology h1 = integral_homology(cone, 1);
    REQUIRE(h0.free_rank == 0);
    REQUIRE(h0.torsion.empty());
    REQUIRE(h1.free_rank == 0);
    REQUIRE(h1.torsion.empty());
}

TEST_CASE("mapping cone of zero and of multiplication by 2") {
    auto Z = GroundRing::integers();
    BasedComplex<GroundElement> pt = point(Z);
    ChainMap<GroundElement> zero = ChainMap<GroundElement>::zero(pt, pt);
    BasedComplex<GroundElement> cone0 = mapping_cone(zero);
    REQUIRE(cone0.ranks() == std::vector<int>{1, 1});
    REQUIRE(cone0.d(1).is_zero());

    ChainMap<GroundElement> two = scalar_map(pt, 2);
    BasedComplex<GroundElement> cone2 = mapping_cone(two);
    REQUIRE(cone2.d(1).at(0, 0) == ge(Z, -2));
    IntegralHomology h0 = integral_homology(cone2, 0);
    REQUIRE(h0.free_rank == 0);
    REQUIRE(h0.torsion == std::vector<Int>{2});
}

TEST_CASE("cone projection onto the cokernel") {
    auto Z = GroundRing::integers();
    BasedComplex<GroundElement> d = point(Z);
    BasedComplex<GroundElement> e =
        BasedComplex<GroundElement>::zero_complex({2}, GroundElement::zero(Z));
    // phi = [1; 0]
    std::vector<RingMatrix<GroundElement>> mats{mat(Z, 2, 1, {1, 0})};
    ChainMap<GroundElement> phi(d, e, mats);
    ConeProjection<GroundElement> cp = cone_projection(phi);
    REQUIRE(cp.coker.complex.ranks() == std::vector<int>{1});
    REQUIRE(cp.p.mat(0) == mat(Z, 1, 2, {0, 1}));

    // phi = (2) is not split injective over Z
    ChainMap<GroundElement> two = scalar_map(d, 2);
    REQUIRE_THROWS_AS(cone_projection(two), embedding_error);

    // block phi with phi_D = 1 - 3z over the fraction field: the
    // projection is well defined and the cokernel has the rank of F
    auto Zr = GroundRing::integers();
    const RationalFunction rzero = RationalFunction::zero(Zr);
    TwistedElement phiD = TwistedElement::one(Zr) - TwistedElement::z_power(Zr, 1, ge(Zr, 3));
    BasedComplex<RationalFunction> dr =
        BasedComplex<RationalFunction>::zero_complex({1}, rzero);
    BasedComplex<RationalFunction> er =
        BasedComplex<RationalFunction>::zero_complex({2}, rzero);
    std::vector<RingMatrix<RationalFunction>> pm;
    RingMatrix<RationalFunction> pmat(2, 1, rzero);
    pmat.at(0, 0) = RationalFunction::from_twisted(phiD);
    pmat.at(1, 0) = RationalFunction::from_twisted(TwistedElement::z_power(Zr, 1, ge(Zr, -5)));
    pm.push_back(pmat);
    ChainMap<RationalFunction> phir(dr, er, pm);
    ConeProjection<RationalFunction> cpr = cone_projection(phir);
    REQUIRE(cpr.coker.complex.ranks() == std::vector<int>{1});
    REQUIRE(rank(cpr.p.mat(0)) == 1);
}

TEST_CASE("cokernel of a block embedding") {
    auto Z = GroundRing::integers();
    const RationalFunction rzero = RationalFunction::zero(Z);
    // phi_F = 0 leaves F undeformed
    BlockEmbedding<RationalFunction> b;
    b.D = BasedComplex<RationalFunction>::zero_complex({1}, rzero);
    b.F = BasedComplex<RationalFunction>::zero_complex({1, 1}, rzero);
    std::vector<RingMatrix<RationalFunction>> fdiffs;
    fdiffs.emplace_back(0, 1, rzero);
    RingMatrix<RationalFunction> f1(1, 1, rzero);
    f1.at(0, 0) = RationalFunction::from_twisted(TwistedElement::from_ground(ge(Z, 2)));
    fdiffs.push_back(f1);
    b.F = BasedComplex<RationalFunction>({1, 1}, fdiffs, rzero);
    b.c = {RingMatrix<RationalFunction>(0, 1, rzero), RingMatrix<RationalFunction>(1, 1, rzero)};
    b.c[1].at(0, 0) = RationalFunction::one(Z);
    b.phiD = {RingMatrix<RationalFunction>::identity(1, rzero)};
    b.phiF = {RingMatrix<RationalFunction>(1, 1, rzero)};
    CokerPresentation<RationalFunction> pres = cokernel_block(b);
    REQUIRE(pres.complex.d(1) == b.F.d(1));

    // D = 0 leaves F unchanged as well
    BlockEmbedding<RationalFunction> b0 = b;
    b0.D = BasedComplex<RationalFunction>::zero_complex({0}, rzero);
    b0.c = {RingMatrix<RationalFunction>(0, 1, rzero), RingMatrix<RationalFunction>(0, 1, rzero)};
    b0.phiD = {RingMatrix<RationalFunction>(0, 0, rzero)};
    b0.phiF = {RingMatrix<RationalFunction>(1, 0, rzero)};
    CokerPresentation<RationalFunction> pres0 = cokernel_block(b0);
    REQUIRE(pres0.complex.d(1) == b.F.d(1));

    // the worked example: d = 2 + 5z/(1-3z) = (2 - z)/(1 - 3z)
    BlockEmbedding<RationalFunction> b1 = b;
    b1.phiD = {[&] {
        RingMatrix<RationalFunction> m(1, 1, rzero);
        m.at(0, 0) = parse_ratfun(Z, "1 - 3*z");
        return m;
    }()};
    b1.phiF = {[&] {
        RingMatrix<RationalFunction> m(1, 1, rzero);
        m.at(0, 0) = RationalFunction::from_twisted(TwistedElement::z_power(Z, 1, ge(Z, -5)));
        return m;
    }()};
    CokerPresentation<RationalFunction> pres1 = cokernel_block(b1);
    REQUIRE(render(pres1.complex.d(1).at(0, 0)) == "(2 - z)/(1 - 3*z)");
    // non-invertible phi_D names the degree
    BlockEmbedding<RationalFunction> bbad = b;
    bbad.phiD = {RingMatrix<RationalFunction>(1, 1, rzero)};
    try {
        cokernel_block(bbad);
        FAIL("expected an error");
    } catch (const error& e) {
        REQUIRE(std::string(e.what()).find("degree 0") != std::string::npos);
    }
}

TEST_CASE("cone isomorphism from a chain homotopy") {
    auto Z = GroundRing::integers();
    BasedComplex<GroundElement> e = interval(Z, 1);
    ChainMap<GroundElement> id = ChainMap<GroundElement>::identity(e);

    // theta = 0 gives the identity
    std::vector<RingMatrix<GroundElement>> theta0{
        RingMatrix<GroundElement>(1, 1, GroundElement::zero(Z)),
        RingMatrix<GroundElement>(0, 1, GroundElement::zero(Z))};
    ChainHomotopy<GroundElement> h0(id, id, theta0);
    ConeIso<GroundElement> i0 = iso_from_homotopy(h0);
    for (int i = 0; i <= i0.cone_from.top_degree(); ++i)
        REQUIRE(i0.fwd.mat(i).is_identity());

    // theta = (1) in the one available slot
    std::vector<RingMatrix<GroundElement>> theta{mat(Z, 1, 1, {1}),
                                                 RingMatrix<GroundElement>(0, 1,
                                                                           GroundElement::zero(Z))};
    // phi' = phi + d theta + theta d
    std::vector<RingMatrix<GroundElement>> phi2{mat(Z, 1, 1, {2}), mat(Z, 1, 1, {2})};
    ChainMap<GroundElement> fprime(e, e, phi2);
    ChainHomotopy<GroundElement> h(id, fprime, theta);
    ConeIso<GroundElement> iso = iso_from_homotopy(h);
    // I d = d' I by direct multiplication
    for (int i = 1; i <= iso.cone_from.top_degree(); ++i)
        REQUIRE(iso.fwd.mat(i - 1) * iso.cone_from.d(i) == iso.cone_to.d(i) * iso.fwd.mat(i));
    REQUIRE_FALSE(iso.fwd.mat(1).is_identity());
    // explicit inverse
    for (int i = 0; i <= iso.cone_from.top_degree(); ++i)
        REQUIRE((iso.inv.mat(i) * iso.fwd.mat(i)).is_identity());
}

TEST_CASE("random homotopies give cone isomorphisms over Q") {
    auto Q = GroundRing::rationals();
    Rng rng(5150);
    int done = 0;
    for (uint64_t seed = 0; done < 100; ++seed) {
        GeneratorParams gp;
        gp.seed = seed;
        gp.ring = Q;
        Scenario s = gen_random(gp);
        const FundamentalDomain& fd = *s.domain;
        BasedComplex<GroundElement> d = fd.D;
        BasedComplex<GroundElement> e(fd.ambient().ranks(),
                                      [&] {
                                          std::vector<RingMatrix<GroundElement>> v;
                                          v.emplace_back(0, fd.ambient().rank(0), fd.proto());
                                          for (int i = 1; i <= fd.ambient().top_degree(); ++i)
                                              v.push_back(fd.ambient().d(i));
                                          return v;
                                      }(),
                                      fd.proto());
        if (d.total_rank() == 0 || e.total_rank() == 0) continue;
        std::vector<RingMatrix<GroundElement>> gmats;
        for (int i = 0; i <= d.top_degree(); ++i) {
            RingMatrix<GroundElement> m(e.rank(i), d.rank(i), fd.proto());
            for (int k = 0; k < d.rank(i); ++k) m.at(k, k) = GroundElement::one(Q);
            gmats.push_back(std::move(m));
        }
        ChainMap<GroundElement> g(d, e, gmats);
        std::vector<RingMatrix<GroundElement>> theta;
        for (int i = 0; i <= d.top_degree(); ++i)
            theta.push_back(gendetail::random_matrix(rng, Q, e.rank(i + 1), d.rank(i), 2));
        auto theta_at = [&](int i) -> RingMatrix<GroundElement> {
            if (i >= 0 && i <= d.top_degree()) return theta[i];
            return RingMatrix<GroundElement>(e.rank(i + 1), d.rank(i), fd.proto());
        };
        std::vector<RingMatrix<GroundElement>> phi2;
        for (int i = 0; i <= d.top_degree(); ++i)
            phi2.push_back(g.mat(i) + e.d(i + 1) * theta_at(i) + theta_at(i - 1) * d.d(i));
        ChainMap<GroundElement> gp2(d, e, phi2);
        ChainHomotopy<GroundElement> h(g, gp2, theta);
        REQUIRE_NOTHROW(iso_from_homotopy(h));
        ++done;
    }
}

TEST_CASE("isotopy inverse and composition laws") {
    auto Z = GroundRing::integers();
    BasedComplex<GroundElement> e = interval(Z, 1);
    ChainMap<GroundElement> id = ChainMap<GroundElement>::identity(e);

    // psi = 0: inverse 0, compose(0, psi') = psi'
    std::vector<RingMatrix<GroundElement>> zero_psi{
        RingMatrix<GroundElement>(1, 1, GroundElement::zero(Z)),
        RingMatrix<GroundElement>(0, 1, GroundElement::zero(Z))};
    ChainIsotopy<GroundElement> triv(id, id, zero_psi);
    ChainIsotopy<GroundElement> trivinv = isotopy_inverse(triv);
    REQUIRE(trivinv.psi(0).is_zero());

    // scalar example over Q: psi = (a), psi' = (b)
    auto Q = GroundRing::rationals();
    BasedComplex<GroundElement> eq = interval(Q, 1);
    ChainMap<GroundElement> idq = ChainMap<GroundElement>::identity(eq);
    auto scalar_isotopy = [&](long a, const ChainMap<GroundElement>& from) {
        std::vector<RingMatrix<GroundElement>> psi{
            mat(Q, 1, 1, {a}), RingMatrix<GroundElement>(0, 1, GroundElement::zero(Q))};
        // endpoint: (1 + d psi + psi d) from
        std::vector<RingMatrix<GroundElement>> to;
        for (int i = 0; i <= eq.top_degree(); ++i) {
            RingMatrix<GroundElement> op =
                RingMatrix<GroundElement>::identity(eq.rank(i), GroundElement::zero(Q));
            op.at(0, 0) = ge(Q, 1 + a);
            to.push_back(op * from.mat(i));
        }
        return ChainIsotopy<GroundElement>(from, ChainMap<GroundElement>(eq, eq, to), psi);
    };
    const long a = 2, b = 5;
    ChainIsotopy<GroundElement> ia = scalar_isotopy(a, idq);
    ChainIsotopy<GroundElement> ib = scalar_isotopy(b, ia.to());
    ChainIsotopy<GroundElement> comp = isotopy_compose(ia, ib);
    // psi'' = a + b(1 + a), operator (1 + b)(1 + a), by direct substitution
    REQUIRE(comp.psi(0).at(0, 0) == ge(Q, a + b * (1 + a)));
    for (int i = 0; i <= 1; ++i)
        REQUIRE(comp.operator_at(i).at(0, 0) == ge(Q, (1 + b) * (1 + a)));

    // psi = (-2): operator -1, inverse isotopy -(-1)(-2) = -2
    ChainIsotopy<GroundElement> im2 = scalar_isotopy(-2, idq);
    REQUIRE(im2.operator_at(0).at(0, 0) == ge(Q, -1));
    ChainIsotopy<GroundElement> im2inv = isotopy_inverse(im2);
    REQUIRE(im2inv.psi(0).at(0, 0) == ge(Q, -2));

    // compose with the inverse gives the identity operator
    ChainIsotopy<GroundElement> round = isotopy_compose(im2, im2inv);
    for (int i = 0; i <= eq.top_degree(); ++i) REQUIRE(round.operator_at(i).is_identity());

    // non-invertible operator over Z is rejected
    auto make_bad = [&] {
        std::vector<RingMatrix<GroundElement>> psi{
            mat(Z, 1, 1, {1}), RingMatrix<GroundElement>(0, 1, GroundElement::zero(Z))};
        std::vector<RingMatrix<GroundElement>> to{mat(Z, 1, 1, {2}), mat(Z, 1, 1, {2})};
        return ChainIsotopy<GroundElement>(id, ChainMap<GroundElement>(e, e, to), psi);
    };
    REQUIRE_THROWS_AS(make_bad(), isotopy_error);
}

TEST_CASE("isotopies induce cokernel isomorphisms") {
    auto Q = GroundRing::rationals();
    Rng rng(31337);
    int done = 0;
    for (uint64_t seed = 0; done < 100; ++seed) {
        GeneratorParams gp;
        gp.seed = seed + 500;
        gp.ring = Q;
        Scenario s = gen_random(gp);
        const FundamentalDomain& fd = *s.domain;
        BasedComplex<GroundElement> d = fd.D;
        BasedComplex<GroundElement> e(fd.ambient().ranks(),
                                      [&] {
                                          std::vector<RingMatrix<GroundElement>> v;
                                          v.emplace_back(0, fd.ambient().rank(0), fd.proto());
                                          for (int i = 1; i <= fd.ambient().top_degree(); ++i)
                                              v.push_back(fd.ambient().d(i));
                                          return v;
                                      }(),
                                      fd.proto());
        if (d.total_rank() == 0) continue;
        std::vector<RingMatrix<GroundElement>> gmats;
        for (int i = 0; i <= d.top_degree(); ++i) {
            RingMatrix<GroundElement> m(e.rank(i), d.rank(i), fd.proto());
            for (int k = 0; k < d.rank(i); ++k) m.at(k, k) = GroundElement::one(Q);
            gmats.push_back(std::move(m));
        }
        ChainMap<GroundElement> g(d, e, gmats);
        bool built = false;
        for (int tries = 0; tries < 8 && !built; ++tries) {
            std::vector<RingMatrix<GroundElement>> psi;
            for (int i = 0; i <= e.top_degree(); ++i)
                psi.push_back(gendetail::random_matrix(rng, Q, e.rank(i + 1), e.rank(i), 2));
            auto psi_at = [&](int i) -> RingMatrix<GroundElement> {
                if (i >= 0 && i <= e.top_degree()) return psi[i];
                return RingMatrix<GroundElement>(e.rank(i + 1), e.rank(i), fd.proto());
            };
            bool invertible = true;
            for (int i = 0; i <= e.top_degree() && invertible; ++i) {
                RingMatrix<GroundElement> op =
                    RingMatrix<GroundElement>::identity(e.rank(i), fd.proto()) +
                    e.d(i + 1) * psi_at(i) + psi_at(i - 1) * e.d(i);
                invertible = ground_invertible(op);
            }
            if (!invertible) continue;
            std::vector<RingMatrix<GroundElement>> phi2;
            for (int i = 0; i <= d.top_degree(); ++i) {
                RingMatrix<GroundElement> op =
                    RingMatrix<GroundElement>::identity(e.rank(i), fd.proto()) +
                    e.d(i + 1) * psi_at(i) + psi_at(i - 1) * e.d(i);
                phi2.push_back(op * g.mat(i));
            }
            ChainMap<GroundElement> g2(d, e, phi2);
            ChainIsotopy<GroundElement> iso(g, g2, psi);
            // psi = 0 special case verified separately; here the full data
            IsotopyCokerIso<GroundElement> out = iso_from_isotopy(iso);
            REQUIRE(out.r.source().ranks() == out.r.target().ranks());
            built = true;
        }
        if (built) ++done;
    }
}

TEST_CASE("iso_from_isotopy with psi = 0 is the identity") {
    auto Q = GroundRing::rationals();
    BasedComplex<GroundElement> d = point(Q);
    BasedComplex<GroundElement> e =
        BasedComplex<GroundElement>::zero_complex({2}, GroundElement::zero(Q));
    std::vector<RingMatrix<GroundElement>> mats{mat(Q, 2, 1, {1, 0})};
    ChainMap<GroundElement> phi(d, e, mats);
    std::vector<RingMatrix<GroundElement>> psi{RingMatrix<GroundElement>(0, 2,
                                                                         GroundElement::zero(Q))};
    ChainIsotopy<GroundElement> iso(phi, phi, psi);
    IsotopyCokerIso<GroundElement> out = iso_from_isotopy(iso);
    REQUIRE(out.r.mat(0).is_identity());
    for (const auto& s : out.s) REQUIRE(s.is_zero());
    for (int i = 0; i <= out.q.cone_from.top_degree(); ++i)
        REQUIRE(out.q.fwd.mat(i).is_identity());
}

TEST_CASE("cone/cokernel inverse equivalences from a splitting") {
    auto Z = GroundRing::integers();
    // phi = [1; 0] with e = [1 0]
    BasedComplex<GroundElement> d = point(Z);
    BasedComplex<GroundElement> e2 =
        BasedComplex<GroundElement>::zero_complex({2}, GroundElement::zero(Z));
    std::vector<RingMatrix<GroundElement>> mats{mat(Z, 2, 1, {1, 0})};
    ChainMap<GroundElement> phi(d, e2, mats);
    ConeCokerEquivalence<GroundElement> eq =
        cone_coker_equivalence(phi, {mat(Z, 1, 2, {1, 0})});
    REQUIRE(eq.p.mat(0).rows() == 1);
    REQUIRE((eq.p.mat(0) * eq.g.mat(0)).is_identity());

    // a bad splitting is rejected
    REQUIRE_THROWS_AS(cone_coker_equivalence(phi, {mat(Z, 1, 2, {0, 1})}), error);

    // D = 0: p is an isomorphism with inverse g, h = 0
    BasedComplex<GroundElement> d0 =
        BasedComplex<GroundElement>::zero_complex({0}, GroundElement::zero(Z));
    std::vector<RingMatrix<GroundElement>> zmats{
        RingMatrix<GroundElement>(2, 0, GroundElement::zero(Z))};
    ChainMap<GroundElement> phi0(d0, e2, zmats);
    ConeCokerEquivalence<GroundElement> eq0 = cone_coker_equivalence(
        phi0, {RingMatrix<GroundElement>(0, 2, GroundElement::zero(Z))});
    REQUIRE((eq0.p.mat(0) * eq0.g.mat(0)).is_identity());
    REQUIRE((eq0.g.mat(0) * eq0.p.mat(0)).is_identity());
    for (const auto& h : eq0.h) REQUIRE(h.is_zero());
}

TEST_CASE("random split injections over Q satisfy the equivalence identities") {
    auto Q = GroundRing::rationals();
    Rng rng(8080);
    int done = 0;
    for (uint64_t seed = 0; done < 100; ++seed) {
        GeneratorParams gp;
        gp.seed = seed + 900;
        gp.ring = Q;
        gp.max_rank = 4;
        Scenario s = gen_random(gp);
        const FundamentalDomain& fd = *s.domain;
        BasedComplex<GroundElement> d = fd.D;
        BasedComplex<GroundElement> e(fd.ambient().ranks(),
                                      [&] {
                                          std::vector<RingMatrix<GroundElement>> v;
                                          v.emplace_back(0, fd.ambient().rank(0), fd.proto());
                                          for (int i = 1; i <= fd.ambient().top_degree(); ++i)
                                              v.push_back(fd.ambient().d(i));
                                          return v;
                                      }(),
                                      fd.proto());
        if (d.total_rank() == 0) continue;
        std::vector<RingMatrix<GroundElement>> gmats, emats;
        for (int i = 0; i <= d.top_degree(); ++i) {
            RingMatrix<GroundElement> m(e.rank(i), d.rank(i), fd.proto());
            for (int k = 0; k < d.rank(i); ++k) m.at(k, k) = GroundElement::one(Q);
            gmats.push_back(std::move(m));
        }
        for (int i = 0; i <= e.top_degree(); ++i) {
            RingMatrix<GroundElement> m(d.rank(i), e.rank(i), fd.proto());
            for (int k = 0; k < d.rank(i); ++k) m.at(k, k) = GroundElement::one(Q);
            for (int k = 0; k < d.rank(i); ++k)
                for (int c = d.rank(i); c < e.rank(i); ++c)
                    if (rng.coin(1, 3)) m.at(k, c) = gendetail::random_coefficient(rng, Q, 2);
            emats.push_back(std::move(m));
        }
        ChainMap<GroundElement> g(d, e, gmats);
        // the equivalence construction verifies pg = 1 and gp - 1 = dh + hd
        REQUIRE_NOTHROW(cone_coker_equivalence(g, emats));
        ++done;
    }
}

#ifndef NOVIKOV_SELFTEST_HPP
#define NOVIKOV_SELFTEST_HPP

#include <mutex>
#include <thread>

#include "novikov/generator.hpp"
#include "novikov/novikov.hpp"

namespace novikov::selftest {

struct SuiteOutcome {
    std::string name;
    int passed = 0;
    int failed = 0;
    std::vector<std::string> messages;

    void merge(const SuiteOutcome& o) {
        passed += o.passed;
        failed += o.failed;
        for (const auto& m : o.messages)
            if (messages.size() < 20) messages.push_back(m);
    }
};

namespace detail {

inline TwistedElement random_twisted(Rng& rng, const RingPtr& ring, int bound) {
    TwistedElement p(ring);
    const int terms = rng.uniform(0, 3);
    for (int t = 0; t < terms; ++t) {
        GroundElement a = gendetail::random_coefficient(rng, ring, bound);
        p += TwistedElement::z_power(ring, rng.uniform(-2, 3), a);
    }
    return p;
}

inline RationalFunction random_ratfun(Rng& rng, const RingPtr& ring, int bound) {
    TwistedElement num = random_twisted(rng, ring, bound);
    TwistedElement den(ring);
    do {
        den = random_twisted(rng, ring, bound);
    } while (den.is_zero());
    return RationalFunction(num, den);
}

inline std::vector<RingPtr> axiom_rings() {
    return {GroundRing::integers(), GroundRing::rationals(),
            GroundRing::group_ring(1, {{-1}}, {1}),
            GroundRing::group_ring(2, {{0, 1}, {1, 0}}, {1, -1})};
}

} // namespace detail

/// Ring axioms and the twist law on random twisted Laurent polynomials.
inline SuiteOutcome suite_ring_axioms(uint64_t seed) {
    SuiteOutcome out{"ring-axioms"};
    Rng rng(seed);
    for (const RingPtr& ring : detail::axiom_rings()) {
        for (int rep = 0; rep < 4; ++rep) {
            TwistedElement p = detail::random_twisted(rng, ring, 3);
            TwistedElement q = detail::random_twisted(rng, ring, 3);
            TwistedElement r = detail::random_twisted(rng, ring, 3);
            TwistedElement one = TwistedElement::one(ring);
            bool ok = ((p * q) * r == p * (q * r)) && (p * (q + r) == p * q + p * r) &&
                      ((p + q) * r == p * r + q * r) && (p * one == p) && (one * p == p);
            GroundElement a = gendetail::random_coefficient(rng, ring, 3);
            TwistedElement az = TwistedElement::from_ground(a) * TwistedElement::z(ring);
            TwistedElement za =
                TwistedElement::z(ring) * TwistedElement::from_ground(a.apply_alpha(1));
            ok = ok && (az == za);
            if (ok) {
                ++out.passed;
            } else {
                ++out.failed;
                out.messages.push_back("ring axiom failed, seed " + std::to_string(seed));
            }
        }
    }
    return out;
}

/// (1 - z h)^{-1} (1 - z h) = 1 mod z^{K+1}, and exact/truncated
/// arithmetic commuting for rational functions.
inline SuiteOutcome suite_series(uint64_t seed) {
    SuiteOutcome out{"series"};
    Rng rng(seed);
    const int order = 6;
    for (const RingPtr& ring :
         {GroundRing::integers(), GroundRing::group_ring(1, {{-1}}, {1})}) {
        const int n = rng.uniform(1, 3);
        RingMatrix<GroundElement> h =
            gendetail::random_matrix(rng, ring, n, n, 2);
        RingMatrix<NovikovSeries> inv = geometric_inverse(h, order);
        RingMatrix<NovikovSeries> one_minus =
            RingMatrix<NovikovSeries>::identity(n, NovikovSeries::zero(ring, order)) -
            to_series_matrix(h, 1);
        RingMatrix<NovikovSeries> prod = inv * one_minus;
        bool ok = congruent(prod, RingMatrix<NovikovSeries>::identity(
                                      n, NovikovSeries::zero(ring, order)),
                            order);
        RingMatrix<NovikovSeries> prod2 = one_minus * inv;
        ok = ok && congruent(prod2, RingMatrix<NovikovSeries>::identity(
                                        n, NovikovSeries::zero(ring, order)),
                             order);
        if (ok) ++out.passed;
        else {
            ++out.failed;
            out.messages.push_back("geometric inverse failed, seed " + std::to_string(seed));
        }
    }
    const RingPtr Q = GroundRing::rationals();
    RationalFunction r1 = detail::random_ratfun(rng, Q, 2);
    RationalFunction r2 = detail::random_ratfun(rng, Q, 2);
    // expansion margins to keep the product known mod z^6 despite
    // negative numerator valuations
    const int v1 = r1.is_zero() ? 0 : std::min(0, r1.numerator().valuation());
    const int v2 = r2.is_zero() ? 0 : std::min(0, r2.numerator().valuation());
    bool ok = (r1 + r2).expand(5).congruent(r1.expand(5) + r2.expand(5), 5) &&
              (r1 * r2).expand(5).congruent(
                  (r1.expand(5 - v2) * r2.expand(5 - v1)).truncated(5), 5);
    if (ok) ++out.passed;
    else {
        ++out.failed;
        out.messages.push_back("ratfun/series arithmetic mismatch, seed " + std::to_string(seed));
    }
    return out;
}

/// det(AB) = det(A) det(B) on random compatible pairs.
inline SuiteOutcome suite_determinant(uint64_t seed) {
    SuiteOutcome out{"determinant"};
    Rng rng(seed);
    for (const RingPtr& ring : {GroundRing::integers(), GroundRing::group_ring(1)}) {
        const int n = rng.uniform(1, 3);
        RingMatrix<GroundElement> a = gendetail::random_matrix(rng, ring, n, n, 2);
        RingMatrix<GroundElement> b = gendetail::random_matrix(rng, ring, n, n, 2);
        if (determinant(a * b) == determinant(a) * determinant(b)) ++out.passed;
        else {
            ++out.failed;
            out.messages.push_back("det multiplicativity failed, seed " + std::to_string(seed));
        }
    }
    return out;
}

/// Cone isomorphisms from homotopies, isotopy group laws, and the
/// cone/cokernel equivalences over Q.
inline SuiteOutcome suite_chain(uint64_t seed) {
    SuiteOutcome out{"chain-calculus"};
    Rng rng(seed);
    const RingPtr Q = GroundRing::rationals();
    GeneratorParams gp;
    gp.seed = seed;
    gp.ring = Q;
    gp.max_degree = 3;
    gp.max_rank = 3;
    Scenario s = gen_random(gp);
    const FundamentalDomain& fd = *s.domain;
    const BasedComplex<GroundElement>& D = fd.D;
    BasedComplex<GroundElement> E = BasedComplex<GroundElement>(
        fd.ambient().ranks(),
        [&] {
            std::vector<RingMatrix<GroundElement>> v;
            v.emplace_back(0, fd.ambient().rank(0), fd.proto());
            for (int i = 1; i <= fd.ambient().top_degree(); ++i) v.push_back(fd.ambient().d(i));
            return v;
        }(),
        fd.proto());
    // phi = g : D -> E and a random homotopy
    std::vector<RingMatrix<GroundElement>> gmats;
    for (int i = 0; i <= D.top_degree(); ++i) {
        RingMatrix<GroundElement> m(E.rank(i), D.rank(i), fd.proto());
        for (int k = 0; k < D.rank(i); ++k) m.at(k, k) = GroundElement::one(Q);
        gmats.push_back(std::move(m));
    }
    try {
        ChainMap<GroundElement> g(D, E, gmats);
        std::vector<RingMatrix<GroundElement>> theta;
        for (int i = 0; i <= D.top_degree(); ++i)
            theta.push_back(gendetail::random_matrix(rng, Q, E.rank(i + 1), D.rank(i), 2));
        // phi' = phi + d theta + theta d
        std::vector<RingMatrix<GroundElement>> phi2;
        auto theta_at = [&](int i) -> RingMatrix<GroundElement> {
            if (i >= 0 && i <= D.top_degree()) return theta[i];
            return RingMatrix<GroundElement>(E.rank(i + 1), D.rank(i), fd.proto());
        };
        for (int i = 0; i <= D.top_degree(); ++i)
            phi2.push_back(g.mat(i) + E.d(i + 1) * theta_at(i) + theta_at(i - 1) * D.d(i));
        ChainMap<GroundElement> gprime(D, E, phi2);
        ChainHomotopy<GroundElement> h(g, gprime, theta);
        iso_from_homotopy(h);
        ++out.passed;
        // isotopy: random psi with invertible operators (retry a few times)
        for (int tries = 0; tries < 5; ++tries) {
            std::vector<RingMatrix<GroundElement>> psi;
            for (int i = 0; i <= E.top_degree(); ++i)
                psi.push_back(gendetail::random_matrix(rng, Q, E.rank(i + 1), E.rank(i), 2));
            bool invertible = true;
            auto psi_at = [&](int i) -> RingMatrix<GroundElement> {
                if (i >= 0 && i <= E.top_degree()) return psi[i];
                return RingMatrix<GroundElement>(E.rank(i + 1), E.rank(i), fd.proto());
            };
            std::vector<RingMatrix<GroundElement>> phi3;
            for (int i = 0; i <= E.top_degree() && invertible; ++i) {
                RingMatrix<GroundElement> op =
                    RingMatrix<GroundElement>::identity(E.rank(i), fd.proto()) +
                    E.d(i + 1) * psi_at(i) + psi_at(i - 1) * E.d(i);
                invertible = ground_invertible(op);
            }
            if (!invertible) continue;
            for (int i = 0; i <= D.top_degree(); ++i) {
                RingMatrix<GroundElement> op =
                    RingMatrix<GroundElement>::identity(E.rank(i), fd.proto()) +
                    E.d(i + 1) * psi_at(i) + psi_at(i - 1) * E.d(i);
                phi3.push_back(op * g.mat(i));
            }
            ChainMap<GroundElement> gpp(D, E, phi3);
            ChainIsotopy<GroundElement> iso(g, gpp, psi);
            iso_from_isotopy(iso);
            ChainIsotopy<GroundElement> inv = isotopy_inverse(iso);
            ChainIsotopy<GroundElement> comp = isotopy_compose(iso, inv);
            for (int i = 0; i <= E.top_degree(); ++i)
                if (!comp.operator_at(i).is_identity())
                    throw internal_check_error("isotopy group law failed");
            ++out.passed;
            break;
        }
        // cone/coker equivalence with a nontrivial retraction e = [1 | u]
        std::vector<RingMatrix<GroundElement>> emats;
        for (int i = 0; i <= E.top_degree(); ++i) {
            RingMatrix<GroundElement> m(D.rank(i), E.rank(i), fd.proto());
            for (int k = 0; k < D.rank(i); ++k) m.at(k, k) = GroundElement::one(Q);
            for (int k = 0; k < D.rank(i); ++k)
                for (int c2 = D.rank(i); c2 < E.rank(i); ++c2)
                    if (rng.coin(1, 3))
                        m.at(k, c2) = gendetail::random_coefficient(rng, Q, 2);
            emats.push_back(std::move(m));
        }
        cone_coker_equivalence(g, emats);
        ++out.passed;
    } catch (const std::exception& e) {
        ++out.failed;
        out.messages.push_back(std::string("chain calculus, seed ") + std::to_string(seed) +
                               ": " + e.what());
    }
    return out;
}

/// Validation, glueing, associativity, exchange and tower compatibility
/// of random fundamental-domain data.
inline SuiteOutcome suite_domain(uint64_t seed) {
    SuiteOutcome out{"fund-domain"};
    GeneratorParams gp;
    gp.seed = seed;
    try {
        Scenario s = gen_random(gp);
        if (!validate(*s.domain).ok()) throw internal_check_error("generated domain invalid");
        ++out.passed;
        Scenario ps = gen_random_pieces(gp, 3);
        for (const auto& p : ps.pieces)
            if (!validate(p).ok()) throw internal_check_error("generated piece invalid");
        if (!validate(glue(ps.pieces[0], ps.pieces[1])).ok())
            throw internal_check_error("glued piece invalid");
        if (!glue_assoc_check(ps.pieces[0], ps.pieces[1], ps.pieces[2]))
            throw internal_check_error("glue associativity failed");
        ++out.passed;
        ExchangeResult ex = exchange(ps.pieces[0], ps.pieces[1]);
        if (!validate(ex.fd).ok() || !validate(ex.fd_prime).ok())
            throw internal_check_error("exchange output invalid");
        ++out.passed;
        // tower compatibility of windows
        const FundamentalDomain& fd = *s.domain;
        BasedComplex<GroundElement> w2 = truncated_union(fd, 2);
        BasedComplex<GroundElement> w1 = truncated_union(fd, 1);
        for (int i = 1; i <= fd.F.top_degree(); ++i)
            if (w2.d(i).submatrix(0, 0, w1.rank(i - 1), w1.rank(i)) != w1.d(i))
                throw internal_check_error("window restriction failed");
        ++out.passed;
    } catch (const std::exception& e) {
        ++out.failed;
        out.messages.push_back(std::string("fund-domain, seed ") + std::to_string(seed) + ": " +
                               e.what());
    }
    return out;
}

/// Deformed differential consistency, the cokernel cross-path, homology
/// comparison, invariance and the exchange intertwining.
inline SuiteOutcome suite_novikov(uint64_t seed) {
    SuiteOutcome out{"novikov-core"};
    GeneratorParams gp;
    gp.seed = seed;
    const int order = 5;
    try {
        Scenario s = gen_random(gp);
        const FundamentalDomain& fd = *s.domain;
        NovikovResult nr = deformed_differential(fd, order);
        ++out.passed; // internal checks: d^2 = 0 both forms, route agreement
        CokernelTheoremData ck = cokernel_theorem_data(fd, order);
        for (int i = 1; i <= nr.exact->top_degree(); ++i)
            if (ck.coker.complex.d(i) != nr.exact->d(i))
                throw internal_check_error("cokernel path differs from deformed path");
        if (!compare_cone_coker(ck.phi))
            throw internal_check_error("cone/cokernel homology comparison failed");
        if (novikov_betti(fd) != betti(ck.coker.complex))
            throw internal_check_error("novikov_betti mismatch");
        ++out.passed;
        attach_random_homotopy(s, seed * 31 + 7, 2);
        FundamentalDomain fd2 = apply_homotopy(fd, s.k_D, s.k_F);
        invariance_iso(fd, fd2, s.k_D, s.k_F, order);
        ++out.passed; // internal checks: intertwining and det product
        TowerReport tower = tower_check(fd, 4);
        if (!tower.ok()) throw internal_check_error("tower check failed: " + tower.to_string());
        ++out.passed;
        // exchange intertwining mod z^{order+1}
        Scenario ps = gen_random_pieces(gp, 2);
        ExchangeResult ex = exchange(ps.pieces[0], ps.pieces[1]);
        NovikovResult na = deformed_differential(ex.fd, order);
        NovikovResult nb = deformed_differential(ex.fd_prime, order);
        for (int i = 1; i <= na.series.top_degree(); ++i) {
            RingMatrix<NovikovSeries> iso_i = twisted_to_series_matrix(ex.iso[i], order);
            RingMatrix<NovikovSeries> iso_prev = twisted_to_series_matrix(ex.iso[i - 1], order);
            RingMatrix<NovikovSeries> lhs = iso_prev * na.series.d(i);
            RingMatrix<NovikovSeries> rhs = nb.series.d(i) * iso_i;
            if (!congruent(lhs, rhs, order))
                throw internal_check_error("exchange iso does not intertwine at degree " +
                                           std::to_string(i));
        }
        ++out.passed;
    } catch (const std::exception& e) {
        ++out.failed;
        out.messages.push_back(std::string("novikov-core, seed ") + std::to_string(seed) + ": " +
                               e.what());
    }
    return out;
}

/// Serialization round trip on generated scenarios.
inline SuiteOutcome suite_roundtrip(uint64_t seed) {
    SuiteOutcome out{"scenario-roundtrip"};
    GeneratorParams gp;
    gp.seed = seed;
    try {
        Scenario s = gen_random(gp);
        std::string text = scenario_text(s);
        Scenario back = parse_scenario_text(text);
        if (scenario_text(back) != text)
            throw internal_check_error("serialize(parse(x)) differs from x");
        ++out.passed;
    } catch (const std::exception& e) {
        ++out.failed;
        out.messages.push_back(std::string("roundtrip, seed ") + std::to_string(seed) + ": " +
                               e.what());
    }
    return out;
}

inline std::vector<SuiteOutcome> run_seed(uint64_t seed) {
    return {suite_ring_axioms(seed), suite_series(seed),   suite_determinant(seed),
            suite_chain(seed),       suite_domain(seed),   suite_novikov(seed),
            suite_roundtrip(seed)};
}

/// Fan seeds over worker threads with per-seed determinism and ordered
/// aggregation.
inline std::vector<SuiteOutcome> run_campaign(int seeds, uint64_t base_seed, int workers = 0) {
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;
    workers = std::min(workers, std::max(1, seeds));
    std::vector<std::vector<SuiteOutcome>> per_seed(seeds);
    std::vector<std::thread> pool;
    std::mutex next_mutex;
    int next = 0;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            while (true) {
                int idx;
                {
                    std::lock_guard<std::mutex> lock(next_mutex);
                    if (next >= seeds) return;
                    idx = next++;
                }
                per_seed[idx] = run_seed(base_seed + static_cast<uint64_t>(idx));
            }
        });
    for (auto& t : pool) t.join();
    std::vector<SuiteOutcome> total;
    for (const auto& seed_result : per_seed) {
        if (total.empty()) {
            total = seed_result;
            continue;
        }
        for (size_t i = 0; i < seed_result.size(); ++i) total[i].merge(seed_result[i]);
    }
    return total;
}

} // namespace novikov::selftest

#endif

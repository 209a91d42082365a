// Acceptance suite: the eight release criteria, one pass/fail line each.
// Everything is exact equality; randomized corpora are seeded and fixed.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "novikov/generator.hpp"
#include "novikov/novikov.hpp"
#include "novikov/selftest.hpp"
#include "novikov/text.hpp"
#include "oracles.hpp"

using namespace novikov;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& name, const std::function<void()>& body) {
    auto start = std::chrono::steady_clock::now();
    std::string failure;
    try {
        body();
    } catch (const std::exception& e) {
        failure = e.what();
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    if (failure.empty()) {
        std::printf("[PASS] %d. %s (%.1f s)\n", number, name.c_str(), ms / 1000.0);
    } else {
        std::printf("[FAIL] %d. %s (%.1f s): %s\n", number, name.c_str(), ms / 1000.0,
                    failure.c_str());
        ++g_failures;
    }
    std::fflush(stdout);
}

void check(bool ok, const std::string& what) {
    if (!ok) throw std::runtime_error(what);
}

std::string fixture(const std::string& name) {
    return std::string(NOVIKOV_SCENARIO_DIR) + "/" + name;
}

GeneratorParams corpus_params(uint64_t seed) {
    GeneratorParams gp;
    gp.seed = seed;
    gp.max_degree = 4;
    gp.max_rank = 4;
    gp.entry_bound = 3;
    gp.ring = GroundRing::integers();
    return gp;
}

struct CliResult {
    int exit_code = -1;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    CliResult r;
    std::string cmd = std::string(NOVIKOV_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("cannot launch the CLI");
    char buf[4096];
    while (size_t n = fread(buf, 1, sizeof buf, pipe)) r.output.append(buf, n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

FundamentalDomain e1_domain() {
    return *parse_scenario_file(fixture("e1.json")).domain;
}

} // namespace

int main() {
    const int order = 8; // all series identities mod z^9

    criterion(1, "deformed differential squares to zero on 1000 scenarios", [&] {
        auto start = std::chrono::steady_clock::now();
        for (uint64_t seed = 0; seed < 1000; ++seed) {
            Scenario s = gen_random(corpus_params(seed));
            NovikovResult nr = deformed_differential(*s.domain, order);
            // d^2 = 0 exactly over Q(z)
            for (int i = 1; i < nr.exact->top_degree(); ++i)
                check((nr.exact->d(i) * nr.exact->d(i + 1)).is_zero(),
                      "exact d^2 != 0, seed " + std::to_string(seed));
            // and modulo z^9 over series
            for (int i = 1; i < nr.series.top_degree(); ++i) {
                RingMatrix<NovikovSeries> sq = nr.series.d(i) * nr.series.d(i + 1);
                RingMatrix<NovikovSeries> zero(sq.rows(), sq.cols(),
                                               NovikovSeries::zero(s.ring, order));
                check(congruent(sq, zero, order), "series d^2 != 0 mod z^9, seed " +
                                                      std::to_string(seed));
            }
        }
        auto secs = std::chrono::duration_cast<std::chrono::seconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
        check(secs < 120, "runtime " + std::to_string(secs) + " s exceeds the 120 s target");
    });

    criterion(2, "cokernel path equals the deformed path; cone and cokernel homology agree", [&] {
        for (uint64_t seed = 0; seed < 1000; ++seed) {
            Scenario s = gen_random(corpus_params(seed));
            NovikovResult nr = deformed_differential(*s.domain, order);
            CokernelTheoremData ck = cokernel_theorem_data(*s.domain, order);
            for (int i = 1; i <= nr.exact->top_degree(); ++i)
                check(ck.coker.complex.d(i) == nr.exact->d(i),
                      "cokernel path differs, seed " + std::to_string(seed));
            check(compare_cone_coker(ck.phi),
                  "cone/cokernel homology mismatch, seed " + std::to_string(seed));
        }
    });

    criterion(3, "invariance isomorphism intertwines with trivial determinant product", [&] {
        for (uint64_t seed = 0; seed < 300; ++seed) {
            Scenario s = gen_random(corpus_params(seed + 50000));
            attach_random_homotopy(s, seed * 101 + 13, 3);
            FundamentalDomain fd2 = apply_homotopy(*s.domain, s.k_D, s.k_F);
            // invariance_iso verifies r d = d' r exactly over Q(z) and the
            // alternating determinant product internally
            InvarianceIso iso = invariance_iso(*s.domain, fd2, s.k_D, s.k_F, order);
            check(iso.det_product_is_one, "determinant product != 1, seed " +
                                              std::to_string(seed));
        }
    });

    criterion(4, "torsion Witt vectors match the independent determinant oracle", [&] {
        Scenario circle = parse_scenario_file(fixture("circle.json"));
        WittVector w = torsion_witt(*circle.domain, 8);
        oracles::Poly all_ones;
        for (int j = 0; j <= 8; ++j) all_ones[j] = 1;
        check(oracles::to_poly(w.series()) == all_ones, "circle torsion is not 1 + z + ... + z^8");

        FundamentalDomain no_h = *circle.domain;
        no_h.h_D = {RingMatrix<GroundElement>(1, 1, GroundElement::zero(circle.ring))};
        check(oracles::to_poly(torsion_witt(no_h, 8).series()) == oracles::poly({{0, 1}}),
              "torsion with h_D = 0 is not 1");

        for (uint64_t seed = 0; seed < 300; ++seed) {
            Scenario s = gen_random(corpus_params(seed + 90000));
            const FundamentalDomain& fd = *s.domain;
            oracles::Poly expected = oracles::poly({{0, 1}});
            for (int i = 0; i <= fd.D.top_degree(); ++i) {
                RingMatrix<TwistedElement> m =
                    RingMatrix<TwistedElement>::identity(fd.D.rank(i),
                                                         TwistedElement::zero(fd.ring)) -
                    to_twisted_matrix(fd.h_D_at(i), 1);
                oracles::Poly det = oracles::to_poly(oracles::permutation_determinant(m));
                expected = (i & 1) ? oracles::truncate(oracles::pmul(expected, det), order)
                                   : oracles::long_division(expected, det, order);
            }
            check(oracles::to_poly(torsion_witt(fd, order).series()) == expected,
                  "torsion oracle mismatch, seed " + std::to_string(seed));
        }
    });

    criterion(5, "truncation windows reproduce the deformed differential (kmax = 6)", [&] {
        for (const char* name : {"circle.json", "e1.json", "torus-projection.json"}) {
            Scenario s = parse_scenario_file(fixture(name));
            TowerReport rep = tower_check(*s.domain, 6);
            check(rep.ok(), std::string(name) + ": " + rep.to_string());
        }
        for (uint64_t seed = 0; seed < 300; ++seed) {
            Scenario s = gen_random(corpus_params(seed + 130000));
            TowerReport rep = tower_check(*s.domain, 6);
            check(rep.ok(), "tower mismatch, seed " + std::to_string(seed));
        }
    });

    criterion(6, "glue associativity, exchange intertwining, and the glued fixture blocks", [&] {
        for (uint64_t seed = 0; seed < 300; ++seed) {
            GeneratorParams gp = corpus_params(seed + 170000);
            Scenario s = gen_random_pieces(gp, 3);
            check(glue_assoc_check(s.pieces[0], s.pieces[1], s.pieces[2]),
                  "glue associativity failed, seed " + std::to_string(seed));
        }
        for (uint64_t seed = 0; seed < 300; ++seed) {
            GeneratorParams gp = corpus_params(seed + 210000);
            Scenario s = gen_random_pieces(gp, 2);
            ExchangeResult ex = exchange(s.pieces[0], s.pieces[1]);
            check(validate(ex.fd).ok() && validate(ex.fd_prime).ok(),
                  "exchange output invalid, seed " + std::to_string(seed));
            NovikovResult na = deformed_differential(ex.fd, order);
            NovikovResult nb = deformed_differential(ex.fd_prime, order);
            for (int i = 1; i <= na.series.top_degree(); ++i) {
                RingMatrix<NovikovSeries> lhs =
                    twisted_to_series_matrix(ex.iso[i - 1], order) * na.series.d(i);
                RingMatrix<NovikovSeries> rhs =
                    nb.series.d(i) * twisted_to_series_matrix(ex.iso[i], order);
                check(congruent(lhs, rhs, order),
                      "exchange iso does not intertwine mod z^9, seed " + std::to_string(seed));
            }
        }
        Scenario dg = parse_scenario_file(fixture("double-glue.json"));
        CobordismPiece g = glue(dg.pieces[0], dg.pieces[1]);
        auto Z = dg.ring;
        auto ge = [&](long v) { return GroundElement::from_rational(Z, v); };
        RingMatrix<GroundElement> dF(2, 2, GroundElement::zero(Z));
        dF.at(0, 0) = ge(2);
        dF.at(0, 1) = ge(5);
        dF.at(1, 1) = ge(2);
        check(g.F.d(1) == dF, "glued d_F differs from [[2,5],[0,2]]");
        RingMatrix<GroundElement> c(1, 2, GroundElement::zero(Z));
        c.at(0, 0) = ge(1);
        c.at(0, 1) = ge(3);
        check(g.c_at(1) == c, "glued c differs from (1, 3)");
        check(g.h_D_at(0).at(0, 0) == ge(9), "glued h_D differs from 9");
        RingMatrix<GroundElement> hF(2, 1, GroundElement::zero(Z));
        hF.at(0, 0) = ge(15);
        hF.at(1, 0) = ge(5);
        check(g.h_F_at(0) == hF, "glued h_F differs from (15; 5)");
    });

    criterion(7, "twisted ring sanity: (z u)^2 = z^2 and the rewrite oracle", [&] {
        auto R = GroundRing::group_ring(1, {{-1}}, {1});
        auto u = GroundElement::monomial(R, {1});
        TwistedElement zu = TwistedElement::z_power(R, 1, u);
        check((zu * zu) == TwistedElement::z_power(R, 2, GroundElement::one(R)),
              "(z u)^2 != z^2");
        const int tw_order = 5; // identities mod z^6
        GeneratorParams gp;
        gp.ring = R;
        for (uint64_t seed = 0; seed < 100; ++seed) {
            gp.seed = seed;
            Scenario s = gen_random(gp);
            const FundamentalDomain& fd = *s.domain;
            NovikovResult nr = deformed_differential(fd, tw_order);
            for (int i = 1; i <= nr.series.top_degree(); ++i) {
                // independent term-rewriting evaluation of
                // d_F + z h_F (1 + z h_D + ... ) c
                const int nd = fd.D.rank(i - 1);
                const int nfr = fd.F.rank(i - 1), nfc = fd.F.rank(i);
                oracles::RewriteMatrix hf = oracles::rewrite_matrix(fd.h_F_at(i - 1), 1);
                oracles::RewriteMatrix hd = oracles::rewrite_matrix(fd.h_D_at(i - 1), 1);
                oracles::RewriteMatrix cmat = oracles::rewrite_matrix(fd.c_at(i), 0);
                oracles::RewriteMatrix geom =
                    oracles::rewrite_matrix(RingMatrix<GroundElement>::identity(
                                                fd.D.rank(i - 1), fd.proto()),
                                            0);
                oracles::RewriteMatrix power = geom;
                for (int j = 1; j <= tw_order; ++j) {
                    power = oracles::rewrite_matmul(R, power, hd, nd, nd, nd);
                    geom = oracles::rewrite_matadd(geom, power);
                }
                oracles::RewriteMatrix total = oracles::rewrite_matmul(
                    R, oracles::rewrite_matmul(R, hf, geom, nfr, nd, nd), cmat, nfr, nd, nfc);
                total = oracles::rewrite_matadd(total,
                                                oracles::rewrite_matrix(fd.F.d(i), 0));
                for (int m = 0; m <= tw_order; ++m) {
                    RingMatrix<GroundElement> got = coefficient_matrix(nr.series.d(i), m);
                    for (int r = 0; r < got.rows(); ++r)
                        for (int cc = 0; cc < got.cols(); ++cc)
                            check(got.at(r, cc) ==
                                      oracles::rewrite_coefficient(R, total[r][cc], m),
                                  "twisted coefficient mismatch, seed " + std::to_string(seed));
                }
            }
        }
    });

    criterion(8, "fixture ledger: the worked example and the pinned CLI output", [&] {
        FundamentalDomain fd = e1_domain();
        NovikovResult nr = deformed_differential(fd, order);
        check(render(nr.exact->d(1).at(0, 0)) == "(2 - z)/(1 - 3*z)", "exact form differs");
        oracles::Poly series = oracles::to_poly(nr.series.d(1).at(0, 0));
        oracles::Poly expected = oracles::long_division(oracles::poly({{0, 2}, {1, -1}}),
                                                        oracles::poly({{0, 1}, {1, -3}}), order);
        check(series == expected, "series form differs from the long-division oracle");
        check(series[0] == 2 && series[1] == 5 && series[2] == 15 && series[3] == 45,
              "series prefix is not 2 + 5z + 15z^2 + 45z^3");
        check(novikov_betti(fd).ranks == std::vector<int>{0, 0}, "Betti numbers are not (0, 0)");
        oracles::Poly torsion_expected = oracles::long_division(
            oracles::poly({{0, 1}}), oracles::poly({{0, 1}, {1, -3}}), order);
        check(oracles::to_poly(torsion_witt(fd, order).series()) == torsion_expected,
              "torsion differs from the expansion of 1/(1 - 3z)");

        // pinned CLI surface
        CliResult nov = run_cli("novikov --order 3 " + fixture("e1.json"));
        check(nov.exit_code == 0, "novikov CLI exited " + std::to_string(nov.exit_code));
        check(nov.output.find("d: 2 + 5*z + 15*z^2 + 45*z^3 + O(z^4)") != std::string::npos,
              "CLI series line missing: " + nov.output);
        check(nov.output.find("exact: (2 - z)/(1 - 3*z)") != std::string::npos,
              "CLI exact line missing: " + nov.output);
        CliResult tor = run_cli("torsion --order 4 " + fixture("circle.json"));
        check(tor.exit_code == 0, "torsion CLI exited " + std::to_string(tor.exit_code));
        check(tor.output.find("1 + z + z^2 + z^3 + z^4 + O(z^5)") != std::string::npos,
              "CLI torsion line missing: " + tor.output);
        CliResult val = run_cli("validate " + fixture("e1.json"));
        check(val.exit_code == 0 && val.output.empty(),
              "validate CLI should exit 0 with an empty report");
    });

    if (g_failures == 0) {
        std::printf("acceptance: all 8 criteria pass\n");
        return 0;
    }
    std::printf("acceptance: %d criteria FAILED\n", g_failures);
    return 1;
}

// Command-line surface for the scenario format: validation, the deformed
// complex and its invariants, glueing, handle exchange, random scenario
// generation and the property-test campaign.

#include <iostream>

#include <CLI11.hpp>

#include "novikov/selftest.hpp"
#include "novikov/text.hpp"

using namespace novikov;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

struct Options {
    std::string file;
    std::string out;
    std::string format = "text";
    int order = 8;
    int kmax = 6;
    uint64_t seed = 0;
    int seeds = 100;
    int workers = 0;
    int max_degree = 3;
    int max_rank = 3;
    int entry_bound = 2;
    std::string ring = "Z";
    int pieces = 0;
    bool with_homotopy = false;
};

RingPtr parse_ring_option(const std::string& text) {
    if (text == "Z") return GroundRing::integers();
    if (text == "Q") return GroundRing::rationals();
    if (text.rfind("group:", 0) == 0) {
        std::string rest = text.substr(6);
        bool invert = false;
        auto colon = rest.find(':');
        if (colon != std::string::npos) {
            invert = rest.substr(colon + 1) == "invert";
            rest = rest.substr(0, colon);
        }
        int n = std::stoi(rest);
        if (!invert) return GroundRing::group_ring(n);
        std::vector<Monomial> exps(n, Monomial(n, 0));
        for (int i = 0; i < n; ++i) exps[i][i] = -1;
        return GroundRing::group_ring(n, std::move(exps), std::vector<int>(n, 1));
    }
    throw CLI::ValidationError("--ring", "expected Z, Q, group:<n> or group:<n>:invert");
}

Scenario load(const Options& opt) { return parse_scenario_file(opt.file); }

const FundamentalDomain& require_domain(const Scenario& s) {
    if (!s.domain) throw validation_error("scenario file carries no fundamental domain");
    return *s.domain;
}

void require_valid(const FundamentalDomain& fd) {
    ValidationReport rep = validate(fd);
    if (!rep.ok()) throw validation_error("validation failed:\n" + rep.to_string());
}

template <typename T>
Json matrix_to_json(const RingMatrix<T>& m) {
    Json rows = Json::array();
    for (int r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(render(m.at(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <typename T>
void print_complex(std::ostream& os, const std::string& label, const BasedComplex<T>& c) {
    os << label << " ranks:";
    for (int i = 0; i <= c.top_degree(); ++i) os << " " << c.rank(i);
    os << "\n";
    for (int i = 1; i <= c.top_degree(); ++i)
        if (c.rank(i) > 0 && c.rank(i - 1) > 0)
            os << label << " d[" << i << "]: " << render(c.d(i)) << "\n";
}

int cmd_validate(const Options& opt) {
    Scenario s = load(opt);
    bool ok = true;
    std::string report;
    if (s.domain) {
        ValidationReport rep = validate(*s.domain);
        ok = rep.ok();
        report = rep.to_string();
    }
    for (size_t i = 0; i < s.pieces.size(); ++i) {
        ValidationReport rep = validate(s.pieces[i]);
        if (!rep.ok()) {
            ok = false;
            report += "piece " + std::to_string(i) + ":\n" + rep.to_string();
        }
    }
    if (!s.domain && s.pieces.empty()) {
        std::cerr << "scenario holds neither a domain nor pieces\n";
        return kExitValidation;
    }
    if (opt.format == "json") {
        Json j{{"ok", ok}, {"report", report}};
        std::cout << j.dump(2) << "\n";
    } else if (!ok) {
        std::cout << report;
    }
    return ok ? kExitOk : kExitValidation;
}

int cmd_novikov(const Options& opt) {
    Scenario s = load(opt);
    const FundamentalDomain& fd = require_domain(s);
    require_valid(fd);
    NovikovResult nr = deformed_differential(fd, opt.order);
    if (opt.format == "json") {
        Json j;
        j["name"] = s.name;
        j["order"] = opt.order;
        j["ranks"] = nr.series.ranks();
        Json d = Json::array();
        for (int i = 1; i <= nr.series.top_degree(); ++i) d.push_back(matrix_to_json(nr.series.d(i)));
        j["series"] = std::move(d);
        if (nr.exact) {
            Json e = Json::array();
            for (int i = 1; i <= nr.exact->top_degree(); ++i)
                e.push_back(matrix_to_json(nr.exact->d(i)));
            j["exact"] = std::move(e);
        }
        if (nr.torsion) j["torsion"] = render(nr.torsion->series());
        if (nr.betti) j["betti"] = nr.betti->ranks;
        std::cout << j.dump(2) << "\n";
        return kExitOk;
    }
    if (!s.name.empty()) std::cout << "scenario: " << s.name << "\n";
    int nontrivial = 0;
    for (int i = 1; i <= nr.series.top_degree(); ++i)
        if (nr.series.rank(i) > 0 && nr.series.rank(i - 1) > 0) ++nontrivial;
    for (int i = 1; i <= nr.series.top_degree(); ++i) {
        if (nr.series.rank(i) == 0 || nr.series.rank(i - 1) == 0) continue;
        const bool single = nontrivial == 1 && nr.series.rank(i) == 1 && nr.series.rank(i - 1) == 1;
        if (single) {
            std::cout << "d: " << render(nr.series.d(i).at(0, 0)) << "\n";
            if (nr.exact) std::cout << "exact: " << render(nr.exact->d(i).at(0, 0)) << "\n";
        } else {
            std::cout << "d[" << i << "]: " << render(nr.series.d(i)) << "\n";
            if (nr.exact) std::cout << "exact[" << i << "]: " << render(nr.exact->d(i)) << "\n";
        }
    }
    if (nr.torsion) std::cout << "torsion: " << render(nr.torsion->series()) << "\n";
    if (nr.betti) {
        std::cout << "betti:";
        for (int r : nr.betti->ranks) std::cout << " " << r;
        std::cout << "\n";
    }
    if (fd.gradient_like)
        std::cout << "note: series coefficients are geometric flow-line counts "
                     "(gradient-like chain approximation)\n";
    return kExitOk;
}

int cmd_cone(const Options& opt) {
    Scenario s = load(opt);
    const FundamentalDomain& fd = require_domain(s);
    require_valid(fd);
    if (has_exact_carrier(fd.ring)) {
        CokernelTheoremData ck = cokernel_theorem_data(fd, opt.order);
        if (opt.format == "json") {
            Json j;
            j["ranks"] = ck.cone.ranks();
            Json d = Json::array();
            for (int i = 1; i <= ck.cone.top_degree(); ++i) d.push_back(matrix_to_json(ck.cone.d(i)));
            j["differentials"] = std::move(d);
            std::cout << j.dump(2) << "\n";
        } else {
            print_complex(std::cout, "cone", ck.cone);
        }
    } else {
        CokernelTheoremSeriesData ck = cokernel_theorem_series_data(fd, opt.order);
        if (opt.format == "json") {
            Json j;
            j["ranks"] = ck.cone.ranks();
            Json d = Json::array();
            for (int i = 1; i <= ck.cone.top_degree(); ++i) d.push_back(matrix_to_json(ck.cone.d(i)));
            j["differentials"] = std::move(d);
            std::cout << j.dump(2) << "\n";
        } else {
            print_complex(std::cout, "cone", ck.cone);
        }
    }
    return kExitOk;
}

int cmd_cokernel(const Options& opt) {
    Scenario s = load(opt);
    const FundamentalDomain& fd = require_domain(s);
    require_valid(fd);
    if (has_exact_carrier(fd.ring)) {
        CokernelTheoremData ck = cokernel_theorem_data(fd, opt.order);
        if (opt.format == "json") {
            Json j;
            j["ranks"] = ck.coker.complex.ranks();
            Json d = Json::array();
            for (int i = 1; i <= ck.coker.complex.top_degree(); ++i)
                d.push_back(matrix_to_json(ck.coker.complex.d(i)));
            j["differentials"] = std::move(d);
            j["torsion"] = render(ck.torsion_of_p.series());
            std::cout << j.dump(2) << "\n";
        } else {
            print_complex(std::cout, "cokernel", ck.coker.complex);
            std::cout << "torsion: " << render(ck.torsion_of_p.series()) << "\n";
        }
    } else {
        CokernelTheoremSeriesData ck = cokernel_theorem_series_data(fd, opt.order);
        if (opt.format == "json") {
            Json j;
            j["ranks"] = ck.coker.complex.ranks();
            Json d = Json::array();
            for (int i = 1; i <= ck.coker.complex.top_degree(); ++i)
                d.push_back(matrix_to_json(ck.coker.complex.d(i)));
            j["differentials"] = std::move(d);
            std::cout << j.dump(2) << "\n";
        } else {
            print_complex(std::cout, "cokernel", ck.coker.complex);
        }
    }
    return kExitOk;
}

int cmd_torsion(const Options& opt) {
    Scenario s = load(opt);
    const FundamentalDomain& fd = require_domain(s);
    require_valid(fd);
    WittVector w = torsion_witt(fd, opt.order);
    if (opt.format == "json") {
        std::cout << Json{{"torsion", render(w.series())}}.dump(2) << "\n";
    } else {
        std::cout << render(w.series()) << "\n";
    }
    return kExitOk;
}

int cmd_betti(const Options& opt) {
    Scenario s = load(opt);
    const FundamentalDomain& fd = require_domain(s);
    require_valid(fd);
    BettiTable t = novikov_betti(fd);
    if (opt.format == "json") {
        std::cout << Json{{"betti", t.ranks}}.dump(2) << "\n";
    } else {
        for (size_t i = 0; i < t.ranks.size(); ++i)
            std::cout << (i ? " " : "") << t.ranks[i];
        std::cout << "\n";
    }
    return kExitOk;
}

int cmd_glue(const Options& opt) {
    Scenario s = load(opt);
    if (s.pieces.size() < 2) throw validation_error("glue needs at least two pieces");
    for (size_t i = 0; i < s.pieces.size(); ++i) {
        ValidationReport rep = validate(s.pieces[i]);
        if (!rep.ok())
            throw validation_error("piece " + std::to_string(i) + " invalid:\n" + rep.to_string());
    }
    CobordismPiece glued = s.pieces[0];
    for (size_t i = 1; i < s.pieces.size(); ++i) glued = glue(glued, s.pieces[i]);
    ValidationReport rep = validate(glued);
    if (!rep.ok()) throw internal_check_error("glued piece invalid:\n" + rep.to_string());
    if (!opt.out.empty()) {
        Scenario out;
        out.ring = s.ring;
        out.name = s.name.empty() ? "glued" : s.name + "-glued";
        out.pieces.push_back(glued);
        write_scenario_file(out, opt.out);
    }
    if (opt.format == "json") {
        Json j;
        j["F_ranks"] = glued.F.ranks();
        Json d = Json::array(), c = Json::array(), hd = Json::array(), hf = Json::array();
        for (int i = 1; i <= glued.F.top_degree(); ++i) d.push_back(matrix_to_json(glued.F.d(i)));
        for (int i = 0; i <= glued.F.top_degree(); ++i) c.push_back(matrix_to_json(glued.c_at(i)));
        for (int i = 0; i <= glued.right.top_degree(); ++i) {
            hd.push_back(matrix_to_json(glued.h_D_at(i)));
            hf.push_back(matrix_to_json(glued.h_F_at(i)));
        }
        j["d_F"] = std::move(d);
        j["c"] = std::move(c);
        j["h_D"] = std::move(hd);
        j["h_F"] = std::move(hf);
        std::cout << j.dump(2) << "\n";
    } else {
        print_complex(std::cout, "F", glued.F);
        for (int i = 0; i <= glued.F.top_degree(); ++i)
            if (glued.c_at(i).rows() && glued.c_at(i).cols())
                std::cout << "c[" << i << "]: " << render(glued.c_at(i)) << "\n";
        for (int i = 0; i <= glued.right.top_degree(); ++i) {
            if (glued.h_D_at(i).rows() && glued.h_D_at(i).cols())
                std::cout << "h_D[" << i << "]: " << render(glued.h_D_at(i)) << "\n";
            if (glued.h_F_at(i).rows() && glued.h_F_at(i).cols())
                std::cout << "h_F[" << i << "]: " << render(glued.h_F_at(i)) << "\n";
        }
    }
    return kExitOk;
}

int cmd_exchange(const Options& opt) {
    Scenario s = load(opt);
    if (s.pieces.size() != 2) throw validation_error("exchange needs exactly two pieces");
    for (size_t i = 0; i < s.pieces.size(); ++i) {
        ValidationReport rep = validate(s.pieces[i]);
        if (!rep.ok())
            throw validation_error("piece " + std::to_string(i) + " invalid:\n" + rep.to_string());
    }
    ExchangeResult ex = exchange(s.pieces[0], s.pieces[1]);
    ValidationReport ra = validate(ex.fd), rb = validate(ex.fd_prime);
    if (!ra.ok() || !rb.ok())
        throw internal_check_error("exchange output invalid:\n" + ra.to_string() + rb.to_string());
    NovikovResult na = deformed_differential(ex.fd, opt.order);
    NovikovResult nb = deformed_differential(ex.fd_prime, opt.order);
    for (int i = 1; i <= na.series.top_degree(); ++i) {
        RingMatrix<NovikovSeries> lhs =
            twisted_to_series_matrix(ex.iso[i - 1], opt.order) * na.series.d(i);
        RingMatrix<NovikovSeries> rhs =
            nb.series.d(i) * twisted_to_series_matrix(ex.iso[i], opt.order);
        if (!congruent(lhs, rhs, opt.order))
            throw internal_check_error("exchange isomorphism fails to intertwine at degree " +
                                       std::to_string(i));
    }
    if (!opt.out.empty()) {
        Scenario out;
        out.ring = s.ring;
        out.name = s.name.empty() ? "exchanged" : s.name + "-exchanged";
        out.domain = ex.fd_prime;
        write_scenario_file(out, opt.out);
    }
    if (opt.format == "json") {
        Json j;
        j["fd_F_ranks"] = ex.fd.F.ranks();
        j["fd_prime_F_ranks"] = ex.fd_prime.F.ranks();
        Json iso = Json::array();
        for (const auto& m : ex.iso) iso.push_back(matrix_to_json(m));
        j["iso"] = std::move(iso);
        j["intertwines"] = true;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "exchange ok; the basis map intertwines the deformed differentials mod z^"
                  << opt.order + 1 << "\n";
        for (size_t i = 0; i < ex.iso.size(); ++i)
            if (ex.iso[i].rows() && ex.iso[i].cols())
                std::cout << "iso[" << i << "]: " << render(ex.iso[i]) << "\n";
    }
    return kExitOk;
}

int cmd_tower(const Options& opt) {
    Scenario s = load(opt);
    const FundamentalDomain& fd = require_domain(s);
    require_valid(fd);
    TowerReport rep = tower_check(fd, opt.kmax);
    if (opt.format == "json") {
        std::cout << Json{{"ok", rep.ok()}, {"report", rep.to_string()}}.dump(2) << "\n";
    } else {
        std::cout << (rep.ok() ? "tower ok\n" : rep.to_string());
    }
    return rep.ok() ? kExitOk : kExitInternal;
}

int cmd_invariance(const Options& opt) {
    Scenario s = load(opt);
    const FundamentalDomain& fd = require_domain(s);
    require_valid(fd);
    if (!s.has_homotopy) throw validation_error("invariance needs a homotopy in the scenario");
    FundamentalDomain fd2 = apply_homotopy(fd, s.k_D, s.k_F);
    InvarianceIso iso = invariance_iso(fd, fd2, s.k_D, s.k_F, opt.order);
    if (opt.format == "json") {
        Json j;
        Json r = Json::array();
        for (const auto& m : iso.r_series) r.push_back(matrix_to_json(m));
        j["r_series"] = std::move(r);
        if (iso.r_exact) {
            Json re = Json::array();
            for (int i = 0; i <= iso.r_exact->source().top_degree(); ++i)
                re.push_back(matrix_to_json(iso.r_exact->mat(i)));
            j["r_exact"] = std::move(re);
        }
        j["det_product_is_one"] = iso.det_product_is_one;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "invariance ok: r intertwines the deformed differentials\n";
        for (size_t i = 0; i < iso.r_series.size(); ++i)
            if (iso.r_series[i].rows() && iso.r_series[i].cols())
                std::cout << "r[" << i << "]: " << render(iso.r_series[i]) << "\n";
        if (iso.r_exact)
            std::cout << "alternating determinant product of 1 + d psi + psi d: "
                      << (iso.det_product_is_one ? "1" : "NOT 1") << "\n";
    }
    return kExitOk;
}

int cmd_gen(const Options& opt) {
    GeneratorParams gp;
    gp.seed = opt.seed;
    gp.max_degree = opt.max_degree;
    gp.max_rank = opt.max_rank;
    gp.entry_bound = opt.entry_bound;
    gp.ring = parse_ring_option(opt.ring);
    Scenario s = opt.pieces > 0 ? gen_random_pieces(gp, opt.pieces) : gen_random(gp);
    if (opt.with_homotopy && s.domain) attach_random_homotopy(s, opt.seed + 1, gp.entry_bound);
    if (opt.out.empty()) {
        std::cout << scenario_text(s);
    } else {
        write_scenario_file(s, opt.out);
    }
    return kExitOk;
}

int cmd_campaign(const Options& opt) {
    auto results = selftest::run_campaign(opt.seeds, opt.seed, opt.workers);
    bool ok = true;
    int passed = 0, failed = 0;
    for (const auto& suite : results) {
        std::cout << suite.name << ": " << suite.passed << " passed, " << suite.failed
                  << " failed\n";
        for (const auto& m : suite.messages) std::cout << "  " << m << "\n";
        passed += suite.passed;
        failed += suite.failed;
        ok = ok && suite.failed == 0;
    }
    std::cout << "total: " << passed << " passed, " << failed << " failed\n";
    return ok ? kExitOk : kExitInternal;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Novikov-complex computations on fundamental-domain chain data"};
    app.require_subcommand(1);
    Options opt;

    auto add_file = [&](CLI::App* cmd) {
        cmd->add_option("file", opt.file, "scenario file")->required();
        cmd->add_option("--format", opt.format, "output format: text|json")
            ->check(CLI::IsMember({"text", "json"}));
    };

    CLI::App* validate_cmd = app.add_subcommand("validate", "check the chain conditions");
    add_file(validate_cmd);

    CLI::App* novikov_cmd = app.add_subcommand("novikov", "deformed differential, both forms");
    add_file(novikov_cmd);
    novikov_cmd->add_option("--order", opt.order, "series truncation order K");

    CLI::App* cone_cmd = app.add_subcommand("cone", "mapping cone of g - z h");
    add_file(cone_cmd);
    cone_cmd->add_option("--order", opt.order, "series truncation order K");

    CLI::App* coker_cmd = app.add_subcommand("cokernel", "cokernel of g - z h");
    add_file(coker_cmd);
    coker_cmd->add_option("--order", opt.order, "series truncation order K");

    CLI::App* torsion_cmd = app.add_subcommand("torsion", "torsion Witt vector");
    add_file(torsion_cmd);
    torsion_cmd->add_option("--order", opt.order, "series truncation order K");

    CLI::App* betti_cmd = app.add_subcommand("betti", "Novikov Betti numbers over Q(z)");
    add_file(betti_cmd);

    CLI::App* glue_cmd = app.add_subcommand("glue", "glue the pieces of a scenario");
    add_file(glue_cmd);
    glue_cmd->add_option("--out", opt.out, "write the glued piece to a file");

    CLI::App* exchange_cmd = app.add_subcommand("exchange", "handle exchange across a cut");
    add_file(exchange_cmd);
    exchange_cmd->add_option("--order", opt.order, "series truncation order K");
    exchange_cmd->add_option("--out", opt.out, "write the exchanged scenario to a file");

    CLI::App* tower_cmd = app.add_subcommand("tower", "truncation tower consistency");
    add_file(tower_cmd);
    tower_cmd->add_option("--kmax", opt.kmax, "largest window size");

    CLI::App* inv_cmd = app.add_subcommand("invariance", "isomorphism from a homotopy of h's");
    add_file(inv_cmd);
    inv_cmd->add_option("--order", opt.order, "series truncation order K");

    CLI::App* gen_cmd = app.add_subcommand("gen", "deterministic random scenario");
    gen_cmd->add_option("--seed", opt.seed, "generator seed");
    gen_cmd->add_option("--out", opt.out, "output file (stdout if omitted)");
    gen_cmd->add_option("--max-degree", opt.max_degree, "top degree (<= 5)");
    gen_cmd->add_option("--max-rank", opt.max_rank, "per-degree rank bound (<= 4)");
    gen_cmd->add_option("--entry-bound", opt.entry_bound, "coefficient bound (<= 3)");
    gen_cmd->add_option("--ring", opt.ring, "Z | Q | group:<n> | group:<n>:invert");
    gen_cmd->add_option("--pieces", opt.pieces, "emit a chain of cobordism pieces instead");
    gen_cmd->add_flag("--with-homotopy", opt.with_homotopy, "attach a random homotopy");
    gen_cmd->add_option("--format", opt.format, "output format: text|json")
        ->check(CLI::IsMember({"text", "json"}));

    CLI::App* campaign_cmd = app.add_subcommand("campaign", "run the property-test campaign");
    campaign_cmd->add_option("--seeds", opt.seeds, "number of seeds");
    campaign_cmd->add_option("--seed", opt.seed, "base seed");
    campaign_cmd->add_option("--workers", opt.workers, "worker threads (0 = hardware)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (validate_cmd->parsed()) return cmd_validate(opt);
        if (novikov_cmd->parsed()) return cmd_novikov(opt);
        if (cone_cmd->parsed()) return cmd_cone(opt);
        if (coker_cmd->parsed()) return cmd_cokernel(opt);
        if (torsion_cmd->parsed()) return cmd_torsion(opt);
        if (betti_cmd->parsed()) return cmd_betti(opt);
        if (glue_cmd->parsed()) return cmd_glue(opt);
        if (exchange_cmd->parsed()) return cmd_exchange(opt);
        if (tower_cmd->parsed()) return cmd_tower(opt);
        if (inv_cmd->parsed()) return cmd_invariance(opt);
        if (gen_cmd->parsed()) return cmd_gen(opt);
        if (campaign_cmd->parsed()) return cmd_campaign(opt);
    } catch (const internal_check_error& e) {
        std::cerr << "internal invariant breach: " << e.what() << "\n";
        return kExitInternal;
    } catch (const novikov::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}

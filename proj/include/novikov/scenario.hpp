#ifndef NOVIKOV_SCENARIO_HPP
#define NOVIKOV_SCENARIO_HPP

#include <fstream>
#include <optional>

#include <json.hpp>

#include "novikov/domain.hpp"
#include "novikov/text.hpp"

namespace novikov {

using Json = nlohmann::ordered_json;

/// In-memory form of a scenario file: a ring, optionally a fundamental
/// domain, optionally a list of cobordism pieces, optionally a homotopy
/// between crossing approximations.
struct Scenario {
    std::string name;
    std::string description;
    RingPtr ring;
    std::optional<FundamentalDomain> domain;
    std::vector<CobordismPiece> pieces;
    std::vector<RingMatrix<GroundElement>> k_D; ///< optional homotopy, survival part
    std::vector<RingMatrix<GroundElement>> k_F; ///< optional homotopy, death part
    bool has_homotopy = false;
    bool gradient_like = false;
};

namespace iodetail {

[[noreturn]] inline void fail(const std::string& where, const std::string& what) {
    throw parse_error("scenario error at " + where + ": " + what);
}

inline const Json& field(const Json& j, const std::string& key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) fail(where, "missing field \"" + key + "\"");
    return *it;
}

inline RingPtr parse_ring(const Json& j, const std::string& where) {
    std::string kind = field(j, "kind", where).get<std::string>();
    if (kind == "Z") return GroundRing::integers();
    if (kind == "Q") return GroundRing::rationals();
    if (kind != "group") fail(where, "ring kind must be \"Z\", \"Q\" or \"group\"");
    int n = field(j, "generators", where).get<int>();
    if (!j.contains("alpha")) return GroundRing::group_ring(n);
    const Json& a = j.at("alpha");
    std::vector<Monomial> exps;
    for (const auto& row : field(a, "exponents", where + ".alpha"))
        exps.push_back(row.get<Monomial>());
    std::vector<int> signs = field(a, "signs", where + ".alpha").get<std::vector<int>>();
    try {
        return GroundRing::group_ring(n, std::move(exps), std::move(signs));
    } catch (const novikov::error& e) {
        fail(where + ".alpha", e.what());
    }
}

inline RingMatrix<GroundElement> parse_matrix(const Json& j, int rows, int cols,
                                              const RingPtr& ring, const std::string& where) {
    RingMatrix<GroundElement> m(rows, cols, GroundElement::zero(ring));
    if (!j.is_array()) fail(where, "matrix must be an array of rows");
    if (static_cast<int>(j.size()) != rows)
        fail(where, "expected " + std::to_string(rows) + " rows, found " +
                        std::to_string(j.size()));
    for (int r = 0; r < rows; ++r) {
        const Json& row = j.at(r);
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            fail(where + "[" + std::to_string(r) + "]",
                 "expected " + std::to_string(cols) + " entries");
        for (int c = 0; c < cols; ++c) {
            try {
                m.at(r, c) = parse_ground(ring, row.at(c).get<std::string>());
            } catch (const novikov::error& e) {
                fail(where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]", e.what());
            }
        }
    }
    return m;
}

inline Json matrix_json(const RingMatrix<GroundElement>& m) {
    Json rows = Json::array();
    for (int r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(render(m.at(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline BasedComplex<GroundElement> parse_complex(const Json& j, const RingPtr& ring,
                                                 const std::string& where) {
    std::vector<int> ranks = field(j, "ranks", where).get<std::vector<int>>();
    if (ranks.empty()) fail(where, "ranks must cover degree 0");
    const Json& diffs = field(j, "differentials", where);
    if (static_cast<int>(diffs.size()) != static_cast<int>(ranks.size()) - 1)
        fail(where + ".differentials",
             "expected one matrix per source degree 1.." + std::to_string(ranks.size() - 1));
    std::vector<RingMatrix<GroundElement>> d;
    d.emplace_back(0, ranks[0], GroundElement::zero(ring));
    for (size_t i = 1; i < ranks.size(); ++i)
        d.push_back(parse_matrix(diffs.at(i - 1), ranks[i - 1], ranks[i], ring,
                                 where + ".differentials[" + std::to_string(i - 1) + "]"));
    std::vector<std::vector<std::string>> labels;
    if (j.contains("labels")) {
        labels = j.at("labels").get<std::vector<std::vector<std::string>>>();
        if (labels.size() != ranks.size()) fail(where + ".labels", "wrong number of degrees");
    }
    return BasedComplex<GroundElement>::unchecked(std::move(ranks), std::move(d),
                                                  GroundElement::zero(ring), std::move(labels));
}

inline Json complex_json(const BasedComplex<GroundElement>& c) {
    Json j;
    j["ranks"] = c.ranks();
    Json diffs = Json::array();
    for (int i = 1; i <= c.top_degree(); ++i) diffs.push_back(matrix_json(c.d(i)));
    j["differentials"] = std::move(diffs);
    if (c.has_labels()) j["labels"] = c.labels();
    return j;
}

inline std::vector<RingMatrix<GroundElement>> parse_matrix_family(
    const Json& j, const RingPtr& ring, const std::string& where, int count,
    const std::function<std::pair<int, int>(int)>& shape) {
    if (static_cast<int>(j.size()) != count)
        fail(where, "expected " + std::to_string(count) + " matrices");
    std::vector<RingMatrix<GroundElement>> out;
    for (int i = 0; i < count; ++i) {
        auto [r, c] = shape(i);
        out.push_back(parse_matrix(j.at(i), r, c, ring, where + "[" + std::to_string(i) + "]"));
    }
    return out;
}

} // namespace iodetail

inline Scenario parse_scenario_json(const Json& j) {
    using namespace iodetail;
    Scenario s;
    if (!j.contains("schema") || j.at("schema").get<int>() != 1)
        fail("$", "unsupported or missing schema version (expected 1)");
    s.name = j.value("name", "");
    s.description = j.value("description", "");
    s.ring = parse_ring(field(j, "ring", "$"), "$.ring");
    if (j.contains("flags")) s.gradient_like = j.at("flags").value("gradient_like", false);
    if (j.contains("D") || j.contains("F")) {
        BasedComplex<GroundElement> D = parse_complex(field(j, "D", "$"), s.ring, "$.D");
        BasedComplex<GroundElement> F = parse_complex(field(j, "F", "$"), s.ring, "$.F");
        auto c = parse_matrix_family(field(j, "c", "$"), s.ring, "$.c", F.top_degree() + 1,
                                     [&](int i) {
                                         return std::pair<int, int>(D.rank(i - 1), F.rank(i));
                                     });
        auto hD = parse_matrix_family(field(j, "h_D", "$"), s.ring, "$.h_D", D.top_degree() + 1,
                                      [&](int i) {
                                          return std::pair<int, int>(D.rank(i), D.rank(i));
                                      });
        auto hF = parse_matrix_family(field(j, "h_F", "$"), s.ring, "$.h_F", D.top_degree() + 1,
                                      [&](int i) {
                                          return std::pair<int, int>(F.rank(i), D.rank(i));
                                      });
        try {
            s.domain = FundamentalDomain(s.ring, std::move(D), std::move(F), std::move(c),
                                         std::move(hD), std::move(hF), s.gradient_like);
        } catch (const novikov::error& e) {
            fail("$", e.what());
        }
    }
    if (j.contains("pieces")) {
        int idx = 0;
        for (const Json& pj : j.at("pieces")) {
            const std::string where = "$.pieces[" + std::to_string(idx) + "]";
            CobordismPiece p;
            p.ring = s.ring;
            p.left = parse_complex(field(pj, "left", where), s.ring, where + ".left");
            p.right = parse_complex(field(pj, "right", where), s.ring, where + ".right");
            p.F = parse_complex(field(pj, "F", where), s.ring, where + ".F");
            p.c = parse_matrix_family(field(pj, "c", where), s.ring, where + ".c",
                                      p.F.top_degree() + 1, [&](int i) {
                                          return std::pair<int, int>(p.left.rank(i - 1),
                                                                     p.F.rank(i));
                                      });
            const int htop = p.right.top_degree() + 1;
            p.h_D = parse_matrix_family(field(pj, "h_D", where), s.ring, where + ".h_D", htop,
                                        [&](int i) {
                                            return std::pair<int, int>(p.left.rank(i),
                                                                       p.right.rank(i));
                                        });
            p.h_F = parse_matrix_family(field(pj, "h_F", where), s.ring, where + ".h_F", htop,
                                        [&](int i) {
                                            return std::pair<int, int>(p.F.rank(i),
                                                                       p.right.rank(i));
                                        });
            s.pieces.push_back(std::move(p));
            ++idx;
        }
    }
    if (j.contains("homotopy")) {
        if (!s.domain) fail("$.homotopy", "a homotopy needs a fundamental domain");
        const Json& h = j.at("homotopy");
        const auto& D = s.domain->D;
        const auto& F = s.domain->F;
        s.k_D = parse_matrix_family(field(h, "k_D", "$.homotopy"), s.ring, "$.homotopy.k_D",
                                    D.top_degree() + 1, [&](int i) {
                                        return std::pair<int, int>(D.rank(i + 1), D.rank(i));
                                    });
        s.k_F = parse_matrix_family(field(h, "k_F", "$.homotopy"), s.ring, "$.homotopy.k_F",
                                    D.top_degree() + 1, [&](int i) {
                                        return std::pair<int, int>(F.rank(i + 1), D.rank(i));
                                    });
        s.has_homotopy = true;
    }
    return s;
}

inline Json serialize_scenario(const Scenario& s) {
    using namespace iodetail;
    Json j;
    j["schema"] = 1;
    if (!s.name.empty()) j["name"] = s.name;
    if (!s.description.empty()) j["description"] = s.description;
    Json ring;
    switch (s.ring->kind()) {
        case RingKind::Integers:
            ring["kind"] = "Z";
            break;
        case RingKind::Rationals:
            ring["kind"] = "Q";
            break;
        case RingKind::GroupRing: {
            ring["kind"] = "group";
            ring["generators"] = s.ring->generators();
            Json alpha;
            alpha["exponents"] = s.ring->alpha_exponents();
            alpha["signs"] = s.ring->alpha_signs();
            ring["alpha"] = std::move(alpha);
            break;
        }
    }
    j["ring"] = std::move(ring);
    if (s.domain) {
        const FundamentalDomain& fd = *s.domain;
        j["D"] = complex_json(fd.D);
        j["F"] = complex_json(fd.F);
        Json c = Json::array(), hD = Json::array(), hF = Json::array();
        for (int i = 0; i <= fd.F.top_degree(); ++i) c.push_back(matrix_json(fd.c_at(i)));
        for (int i = 0; i <= fd.D.top_degree(); ++i) {
            hD.push_back(matrix_json(fd.h_D_at(i)));
            hF.push_back(matrix_json(fd.h_F_at(i)));
        }
        j["c"] = std::move(c);
        j["h_D"] = std::move(hD);
        j["h_F"] = std::move(hF);
    }
    if (!s.pieces.empty()) {
        Json pieces = Json::array();
        for (const CobordismPiece& p : s.pieces) {
            Json pj;
            pj["left"] = complex_json(p.left);
            pj["right"] = complex_json(p.right);
            pj["F"] = complex_json(p.F);
            Json c = Json::array(), hD = Json::array(), hF = Json::array();
            for (int i = 0; i <= p.F.top_degree(); ++i) c.push_back(matrix_json(p.c_at(i)));
            for (int i = 0; i <= p.right.top_degree(); ++i) {
                hD.push_back(matrix_json(p.h_D_at(i)));
                hF.push_back(matrix_json(p.h_F_at(i)));
            }
            pj["c"] = std::move(c);
            pj["h_D"] = std::move(hD);
            pj["h_F"] = std::move(hF);
            pieces.push_back(std::move(pj));
        }
        j["pieces"] = std::move(pieces);
    }
    if (s.has_homotopy && s.domain) {
        Json h;
        Json kD = Json::array(), kF = Json::array();
        for (const auto& m : s.k_D) kD.push_back(matrix_json(m));
        for (const auto& m : s.k_F) kF.push_back(matrix_json(m));
        h["k_D"] = std::move(kD);
        h["k_F"] = std::move(kF);
        j["homotopy"] = std::move(h);
    }
    if (s.gradient_like) j["flags"] = Json{{"gradient_like", true}};
    return j;
}

inline Scenario parse_scenario_text(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("malformed JSON: ") + e.what());
    }
    return parse_scenario_json(j);
}

inline Scenario parse_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open scenario file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_scenario_text(text);
}

inline std::string scenario_text(const Scenario& s) { return serialize_scenario(s).dump(2) + "\n"; }

inline void write_scenario_file(const Scenario& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw error("cannot write scenario file: " + path);
    out << scenario_text(s);
}

} // namespace novikov

#endif

#pragma once

// JSON schemas for every domain object. Rationals travel as strings "p/q"
// (or "p"); integers as JSON numbers when they fit 64 bits, as strings
// otherwise. No floats anywhere.

#include <json.hpp>

#include <string>
#include <vector>

#include "quiversi/bounds.hpp"
#include "quiversi/families.hpp"
#include "quiversi/quiver.hpp"
#include "quiversi/schofield.hpp"
#include "quiversi/stability.hpp"
#include "quiversi/version.hpp"

namespace quiversi {

using json = nlohmann::json;

inline json int_to_json(const Int& x) {
    if (fits_int64(x)) return json(static_cast<std::int64_t>(x.get_si()));
    return json(x.get_str());
}

inline json rat_to_json(const Rat& x) { return json(to_string(x)); }

inline Int json_to_int(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Int(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) {
        Rat r = parse_rational(j.get<std::string>(), where);
        if (r.get_den() != 1) throw SchemaError("expected an integer", where);
        return r.get_num();
    }
    throw SchemaError("expected an integer (number or string)", where);
}

inline Rat json_to_rat(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Rat(Int(static_cast<long>(j.get<std::int64_t>())));
    if (j.is_string()) return parse_rational(j.get<std::string>(), where);
    throw SchemaError("expected a rational (string \"p/q\" or integer)", where);
}

// ---- quiver ---------------------------------------------------------------

inline Quiver parse_quiver(const json& j, const std::string& where = "") {
    if (!j.is_object()) throw SchemaError("quiver must be an object", where);
    if (!j.contains("vertices") || !j["vertices"].is_array())
        throw SchemaError("missing \"vertices\" array", where + "/vertices");
    if (!j.contains("arrows") || !j["arrows"].is_array())
        throw SchemaError("missing \"arrows\" array", where + "/arrows");
    std::vector<std::string> vertices;
    for (std::size_t i = 0; i < j["vertices"].size(); ++i) {
        const json& v = j["vertices"][i];
        if (!v.is_string())
            throw SchemaError("vertex id must be a string", where + "/vertices/" + std::to_string(i));
        vertices.push_back(v.get<std::string>());
    }
    std::vector<Arrow> arrows;
    for (std::size_t i = 0; i < j["arrows"].size(); ++i) {
        const json& a = j["arrows"][i];
        const std::string ap = where + "/arrows/" + std::to_string(i);
        if (!a.is_object()) throw SchemaError("arrow must be an object", ap);
        for (const char* field : {"id", "tail", "head"})
            if (!a.contains(field) || !a[field].is_string())
                throw SchemaError(std::string("arrow needs string field \"") + field + "\"",
                                  ap + "/" + field);
        arrows.push_back({a["id"].get<std::string>(), a["tail"].get<std::string>(),
                          a["head"].get<std::string>()});
    }
    return Quiver(std::move(vertices), std::move(arrows));
}

inline json quiver_to_json(const Quiver& q) {
    json arrows = json::array();
    for (const Arrow& a : q.arrows())
        arrows.push_back({{"id", a.id}, {"tail", a.tail}, {"head", a.head}});
    return json{{"vertices", q.vertices()}, {"arrows", arrows}};
}

// ---- vertex maps ----------------------------------------------------------

namespace detail {

inline std::vector<Int> parse_vertex_values(const json& j, const Quiver& q,
                                            const std::string& where) {
    if (!j.is_object()) throw SchemaError("expected an object keyed by vertex id", where);
    std::vector<Int> values;
    values.reserve(q.vertex_count());
    for (const std::string& v : q.vertices()) {
        if (!j.contains(v)) throw SchemaError("missing vertex \"" + v + "\"", where);
        values.push_back(json_to_int(j[v], where + "/" + v));
    }
    if (j.size() != q.vertex_count())
        for (auto it = j.begin(); it != j.end(); ++it)
            if (!q.has_vertex(it.key()))
                throw SchemaError("unknown vertex \"" + it.key() + "\"", where + "/" + it.key());
    return values;
}

}  // namespace detail

inline DimVector parse_dim_vector(const json& j, const Quiver& q, const std::string& where = "") {
    return DimVector(q.vertices(), detail::parse_vertex_values(j, q, where));
}

inline Weight parse_weight(const json& j, const Quiver& q, const std::string& where = "") {
    return Weight(q.vertices(), detail::parse_vertex_values(j, q, where));
}

template <bool N>
inline json vertex_map_to_json(const quiversi::detail::VertexMap<N>& m) {
    json out = json::object();
    for (std::size_t i = 0; i < m.size(); ++i) out[m.vertex(i)] = int_to_json(m.value(i));
    return out;
}

// ---- representations ------------------------------------------------------

inline Representation parse_representation(const json& j, const std::string& where = "") {
    if (!j.is_object()) throw SchemaError("representation must be an object", where);
    if (!j.contains("quiver")) throw SchemaError("missing \"quiver\"", where + "/quiver");
    Quiver q = parse_quiver(j["quiver"], where + "/quiver");
    if (!j.contains("dim")) throw SchemaError("missing \"dim\"", where + "/dim");
    DimVector dim = parse_dim_vector(j["dim"], q, where + "/dim");
    if (!j.contains("maps") || !j["maps"].is_object())
        throw SchemaError("missing \"maps\" object", where + "/maps");

    std::map<std::string, RationalMatrix> maps;
    for (const Arrow& a : q.arrows()) {
        const std::string mp = where + "/maps/" + a.id;
        if (!j["maps"].contains(a.id)) throw ShapeError("missing matrix for arrow '" + a.id + "'");
        const json& mj = j["maps"][a.id];
        if (!mj.is_array()) throw SchemaError("matrix must be an array of rows", mp);
        const auto rows = static_cast<std::size_t>(dim.at(a.head).get_ui());
        const auto cols = static_cast<std::size_t>(dim.at(a.tail).get_ui());
        if (mj.size() != rows)
            throw ShapeError("matrix for arrow '" + a.id + "' must have " + std::to_string(rows) +
                             " rows");
        std::vector<Rat> entries;
        entries.reserve(rows * cols);
        for (std::size_t r = 0; r < rows; ++r) {
            if (!mj[r].is_array() || mj[r].size() != cols)
                throw ShapeError("matrix for arrow '" + a.id + "' must have " +
                                 std::to_string(cols) + " columns in every row");
            for (std::size_t c = 0; c < cols; ++c)
                entries.push_back(json_to_rat(mj[r][c], mp + "/" + std::to_string(r) + "/" +
                                                            std::to_string(c)));
        }
        maps.emplace(a.id, RationalMatrix(rows, cols, std::move(entries)));
    }
    for (auto it = j["maps"].begin(); it != j["maps"].end(); ++it) {
        bool known = false;
        for (const Arrow& a : q.arrows()) known = known || a.id == it.key();
        if (!known) throw SchemaError("maps mention unknown arrow \"" + it.key() + "\"",
                                      where + "/maps/" + it.key());
    }
    return Representation(std::move(q), std::move(dim), std::move(maps));
}

inline json matrix_to_json(const RationalMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j2 = 0; j2 < m.cols(); ++j2) row.push_back(to_string(m.at(i, j2)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json representation_to_json(const Representation& rep) {
    json maps = json::object();
    for (const auto& [id, m] : rep.maps()) maps[id] = matrix_to_json(m);
    return json{{"quiver", quiver_to_json(rep.quiver())},
                {"dim", vertex_map_to_json(rep.dim())},
                {"maps", maps}};
}

// ---- pencils and verdicts -------------------------------------------------

inline json linear_matrix_to_json(const LinearMatrix& m) {
    auto slots = [](const std::vector<Slot>& ss) {
        json out = json::array();
        for (const Slot& s : ss)
            out.push_back({{"vertex", s.vertex},
                           {"copy", s.copy},
                           {"offset", s.offset},
                           {"dim", s.dim}});
        return out;
    };
    json blocks = json::array();
    for (std::size_t r = 0; r < m.row_slots().size(); ++r)
        for (std::size_t c = 0; c < m.col_slots().size(); ++c) {
            const auto& entries = m.block(r, c);
            if (entries.empty()) continue;
            json list = json::array();
            for (const BlockEntry& e : entries)
                list.push_back({{"indet", e.indet}, {"path", e.path.arrows}});
            blocks.push_back({{"row_slot", r}, {"col_slot", c}, {"entries", std::move(list)}});
        }
    return json{{"size", m.size()},
                {"indeterminates", m.indet_count()},
                {"row_slots", slots(m.row_slots())},
                {"col_slots", slots(m.col_slots())},
                {"blocks", std::move(blocks)}};
}

inline json pencil_to_json(const InstantiatedPencil& p) {
    json terms = json::array();
    for (const PencilTerm& t : p.terms()) {
        json entries = json::array();
        for (const auto& [r, c, v] : t.entries)
            entries.push_back(json::array({json(r), json(c), json(to_string(v))}));
        terms.push_back({{"indet", t.indet},
                         {"path_length", t.path_length},
                         {"entries", std::move(entries)}});
    }
    return json{{"size", p.size()}, {"terms", std::move(terms)}};
}

inline json verdict_to_json(const Verdict& v, bool null_cone = false) {
    json out{{"decision", to_string(v.decision)},
             {"trials", v.trials},
             {"trials_used", v.trials_used},
             {"seed", v.seed},
             {"failure_probability_bound", rat_to_json(v.failure_probability_bound)},
             {"exact", v.exact}};
    if (null_cone) out["weights_tested"] = v.weights_tested;
    if (v.certificate) {
        json t = json::array();
        for (const Int& x : v.certificate->t) t.push_back(int_to_json(x));
        out["certificate"] = json{{"weight", vertex_map_to_json(v.certificate->sigma)},
                                  {"d", int_to_json(v.certificate->d)},
                                  {"t", std::move(t)},
                                  {"det", rat_to_json(v.certificate->det_value)}};
    } else {
        out["certificate"] = nullptr;
    }
    return out;
}

inline json bounds_to_json(const BoundsReport& r) {
    json out{{"degenerate", r.degenerate},
             {"n", r.n},
             {"l1", int_to_json(r.l1)},
             {"l2sq", int_to_json(r.l2sq)}};
    auto put = [&out](const char* name, const Rat& value) {
        out[name] = rat_to_json(value);
        out[std::string(name) + "_ceil"] = int_to_json(ceil_to_int(value));
    };
    put("null_cone_weight_bound", r.null_cone_weight_bound);
    put("gamma_bound", r.gamma_bound);
    put("r_cap", r.r_cap);
    put("main_bound", r.main_bound);
    put("independent_bound", r.independent_bound);
    out["dim_rep"] = int_to_json(r.dim_rep);
    out["r_used"] = int_to_json(r.r_used);
    return out;
}

inline json ray_weight_to_json(const RayWeightResult& r, const DimVector& alpha) {
    json out{{"weight", vertex_map_to_json(r.weight)},
             {"rank_ok", r.rank_ok},
             {"coordinate_bound", rat_to_json(r.coordinate_bound)},
             {"sigma_norm_bound", rat_to_json(r.sigma_norm_bound)}};
    if (r.rank_ok && weight_apply(r.weight, alpha) == 0) {
        out["alpha_orthogonal"] = true;
        out["sigma_norm"] = int_to_json(sigma_norm(r.weight, alpha));
    } else {
        out["alpha_orthogonal"] = false;
        out["sigma_norm"] = nullptr;
    }
    return out;
}

inline json qn_report_to_json(const QnReport& r) {
    json checks = json::array();
    for (const QnCheck& c : r.checks)
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    return json{{"checks", std::move(checks)},
                {"all_passed", r.all_passed},
                {"semistable_checked", r.semistable_checked}};
}

inline json qn_bundle_to_json(const QnBundle& b) {
    json factors = json::array();
    for (const DimVector& f : b.factor_dims) factors.push_back(vertex_map_to_json(f));
    return json{{"quiver", quiver_to_json(b.quiver)},
                {"alpha", vertex_map_to_json(b.alpha)},
                {"rep", representation_to_json(b.rep)},
                {"factor_dims", std::move(factors)},
                {"expected_weight", vertex_map_to_json(b.expected_weight)},
                {"expected_norm", int_to_json(b.expected_norm)}};
}

/// Wrap a payload as a top-level CLI document.
inline json document(json payload) {
    payload["schema"] = kSchemaVersion;
    return payload;
}

}  // namespace quiversi

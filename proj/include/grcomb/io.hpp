#pragma once

// group-spec v1 files: JSON descriptions of a group model, either as an
// essentially-unramified preset or as a raw pinned root datum.

#include "grcomb/model.hpp"

#include <json.hpp>

#include <fstream>

namespace grcomb {

/// Malformed input file or vector syntax; the CLI maps this to exit code 2.
class SchemaError : public std::runtime_error {
public:
    explicit SchemaError(const std::string& message) : std::runtime_error(message) {}
};

namespace iodetail {

using nlohmann::json;

inline Vec parse_vec(const json& j, std::size_t expect = 0) {
    if (!j.is_array()) throw SchemaError("expected an integer array");
    Vec v;
    for (const auto& x : j) {
        if (!x.is_number_integer()) throw SchemaError("expected integer entries");
        v.push_back(x.get<Int>());
    }
    if (expect && v.size() != expect) throw SchemaError("vector of wrong length");
    return v;
}

inline Mat parse_mat(const json& j, std::size_t n) {
    if (!j.is_array() || j.size() != n) throw SchemaError("expected a row-major square matrix");
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        Vec row = parse_vec(j[i], n);
        for (std::size_t k = 0; k < n; ++k) m(i, k) = row[k];
    }
    return m;
}

inline CartanType parse_cartan(const std::string& s) {
    if (s == "A") return CartanType::A;
    if (s == "B") return CartanType::B;
    if (s == "C") return CartanType::C;
    if (s == "D") return CartanType::D;
    if (s == "G") return CartanType::G;
    throw SchemaError("unknown cartan_type '" + s + "'");
}

inline Isogeny parse_isogeny(const std::string& s) {
    if (s == "simply-connected") return Isogeny::SimplyConnected;
    if (s == "adjoint") return Isogeny::Adjoint;
    if (s == "GL") return Isogeny::GL;
    throw SchemaError("unknown isogeny '" + s + "'");
}

}  // namespace iodetail

inline GroupModel parse_group_spec(const nlohmann::json& doc) {
    using iodetail::parse_mat;
    using iodetail::parse_vec;
    if (!doc.is_object()) throw SchemaError("group spec must be a JSON object");
    if (doc.value("schema", "") != std::string("group-spec v1"))
        throw SchemaError("missing or unsupported schema tag; expected \"group-spec v1\"");
    std::string label = doc.value("label", "");

    if (doc.contains("preset")) {
        const auto& p = doc["preset"];
        if (!p.contains("factors") || !p["factors"].is_array() || p["factors"].empty())
            throw SchemaError("preset needs a nonempty factors array");
        EssUnramDescriptor desc;
        for (const auto& f : p["factors"]) {
            EssUnramFactor fac;
            fac.type = iodetail::parse_cartan(f.value("cartan_type", ""));
            if (!f.contains("rank") || !f["rank"].is_number_integer())
                throw SchemaError("factor needs an integer rank");
            fac.n = f["rank"].get<int>();
            fac.isogeny = iodetail::parse_isogeny(f.value("isogeny", ""));
            fac.e = f.value("e", 1);
            fac.f = f.value("f", 1);
            if (f.contains("diagram_aut"))
                for (const auto& x : f["diagram_aut"]) fac.diagram_aut.push_back(x.get<std::size_t>());
            desc.factors.push_back(fac);
        }
        return build_from_descriptor(desc, label);
    }

    if (doc.contains("raw")) {
        const auto& r = doc["raw"];
        if (!r.contains("rank")) throw SchemaError("raw spec needs a rank");
        std::size_t n = r["rank"].get<std::size_t>();
        RootDatum rd;
        rd.rank = n;
        for (const auto& v : r.at("roots")) rd.roots.push_back(parse_vec(v, n));
        for (const auto& v : r.at("coroots")) rd.coroots.push_back(parse_vec(v, n));
        for (const auto& x : r.at("simple_indices")) rd.simple.push_back(x.get<std::size_t>());
        GaloisAction act;
        if (r.contains("inertia_gens"))
            for (const auto& g : r["inertia_gens"]) act.inertia_gens.push_back(parse_mat(g, n));
        act.frobenius = r.contains("frobenius") ? parse_mat(r["frobenius"], n) : Mat::identity(n);
        bool has_two_rho = r.contains("two_rho");
        Vec given_two_rho = has_two_rho ? parse_vec(r["two_rho"], n) : Vec();
        rd = finalize(rd);
        if (has_two_rho) rd.two_rho = given_two_rho;  // kept as given; validate reports mismatches
        return build_group_model(std::move(rd), std::move(act), std::move(label));
    }
    throw SchemaError("group spec needs either a preset or a raw block");
}

inline GroupModel load_group_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open group file " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError("invalid JSON in " + path + ": " + e.what());
    }
    try {
        return parse_group_spec(doc);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError("bad group spec in " + path + ": " + e.what());
    }
}

inline nlohmann::ordered_json json_vec(const Vec& v) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (Int x : v) a.push_back(x);
    return a;
}

inline nlohmann::ordered_json json_mat(const Mat& m) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (std::size_t j = 0; j < m.cols; ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

inline std::string rat_string(const Rat& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline nlohmann::ordered_json json_qvec(const QVec& v) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const Rat& x : v) a.push_back(rat_string(x));
    return a;
}

/// Summary block used by `group validate`: ranks, residual order, and the
/// coordinates of the folded lattice (projection and section), so folded
/// inputs on the command line are unambiguous.
inline nlohmann::ordered_json model_summary(const GroupModel& m) {
    nlohmann::ordered_json s;
    s["label"] = m.label;
    s["rank"] = m.datum.rank;
    s["num_roots"] = m.datum.roots.size();
    s["residual_order"] = m.residual_order;
    s["coinvariant_free_rank"] = m.inertia_q.group.free_rank;
    nlohmann::ordered_json tor = nlohmann::ordered_json::array();
    for (Int d : m.inertia_q.group.torsion) tor.push_back(d);
    s["coinvariant_torsion"] = tor;
    s["coinvariant_projection"] = json_mat(m.inertia_q.projection);
    s["coinvariant_section"] = json_mat(m.inertia_q.section);
    s["pi1_free_rank"] = m.pi1_q.group.free_rank;
    nlohmann::ordered_json p1 = nlohmann::ordered_json::array();
    for (Int d : m.pi1_q.group.torsion) p1.push_back(d);
    s["pi1_torsion"] = p1;
    return s;
}

}  // namespace grcomb

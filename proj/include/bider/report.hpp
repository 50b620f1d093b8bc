#pragma once

#include "bider/applications.hpp"
#include "bider/extension.hpp"

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace bider {

using Json = nlohmann::ordered_json;

inline Json algebra_json(const AlgebraSpec& g) {
    Json j;
    j["name"] = g.name();
    j["family"] = family_key(g.family);
    if (g.has_parameters()) {
        j["a"] = to_string(g.a);
        j["b"] = to_string(g.b);
    }
    return j;
}

inline Json window_json(const Window& w) { return {{"N", w.N}, {"M", w.M}}; }

/// One object per basis vector: coordinate label -> coefficient.
inline Json basis_json(const SubspaceBasis& s) {
    Json arr = Json::array();
    for (const auto& r : s.rows()) {
        Json v = Json::object();
        for (const auto& e : r) v[s.labels()[e.col]] = to_string(e.value);
        arr.push_back(std::move(v));
    }
    return arr;
}

inline Json solve_json(const SolveReport& r, bool with_basis) {
    Json j;
    j["kind"] = r.kind;
    j["algebra"] = algebra_json(r.algebra);
    j["delta"] = to_string(r.delta);
    j["degree"] = r.degree;
    j["window"] = window_json(r.window);
    j["unknowns"] = r.unknown_count;
    j["constraints"] = r.constraint_count;
    j["raw_dimension"] = r.raw_dimension;
    j["core_dimension"] = r.core.dimension();
    if (with_basis) j["core_basis"] = basis_json(r.core);
    return j;
}

inline Json verdict_json(const DegreeVerdict& d, bool with_basis) {
    Json j;
    j["degree"] = d.degree;
    j["verdict"] = verdict_name(d.verdict);
    j["raw_dimension"] = d.report.raw_dimension;
    j["core_dimension"] = d.report.core.dimension();
    j["expected_core_dimension"] = d.expected_core_dimension;
    j["expected"] = d.expected_entries;
    j["missing"] = d.missing_entries;
    j["unknowns"] = d.report.unknown_count;
    j["constraints"] = d.report.constraint_count;
    if (!d.warning.empty()) j["warning"] = d.warning;
    if (with_basis) j["core_basis"] = basis_json(d.report.core);
    return j;
}

inline Json verdicts_json(const std::string& kind, const AlgebraSpec& g, const Scalar& delta,
                          const std::vector<DegreeVerdict>& v, bool with_basis) {
    Json j;
    j["kind"] = kind;
    j["algebra"] = algebra_json(g);
    j["delta"] = to_string(delta);
    j["verdict"] = verdict_name(worst(v));
    j["degrees"] = Json::array();
    for (const auto& d : v) j["degrees"].push_back(verdict_json(d, with_basis));
    return j;
}

inline Json commuting_json(const CommutingMapReport& r, Verdict v, bool with_basis) {
    Json j;
    j["algebra"] = algebra_json(r.algebra);
    j["window"] = window_json(r.window);
    j["verdict"] = verdict_name(v);
    j["raw_dimension"] = r.raw_dimension;
    j["core_dimension"] = r.core.dimension();
    j["expected_core_dimension"] = r.expected_core.dimension();
    j["matched"] = r.matched;
    j["central_valued_core_dimension"] = r.central_valued_core_dimension;
    j["core_dimension_mod_center"] = r.core_dimension_mod_center;
    if (with_basis) j["core_basis"] = basis_json(r.core);
    return j;
}

inline Json violation_json(const AxiomViolation& v) {
    Json j;
    j["axiom"] = v.axiom;
    j["triple"] = {to_string(v.triple[0]), to_string(v.triple[1]), to_string(v.triple[2])};
    j["lhs"] = to_string(v.lhs);
    j["rhs"] = to_string(v.rhs);
    j["difference"] = to_string(v.difference());
    return j;
}

inline Json axiom_json(const AxiomReport& r) {
    Json j;
    j["pass"] = r.pass;
    j["triples_checked"] = r.triples_checked;
    if (r.violation) j["violation"] = violation_json(*r.violation);
    return j;
}

inline Json candidate_json(const CandidateSpace& c, bool with_basis) {
    Json j;
    j["algebra"] = algebra_json(c.algebra);
    j["delta"] = to_string(c.delta);
    j["total_core_dimension"] = c.total_dimension();
    j["matches_catalog"] = c.matches();
    j["degrees"] = Json::array();
    for (const auto& d : c.degrees) {
        Json e{{"degree", d.degree}, {"core_dimension", d.core.dimension()},
               {"expected_core_dimension", d.expected_core.dimension()}, {"matches", d.matches}};
        if (with_basis) e["core_basis"] = basis_json(d.core);
        j["degrees"].push_back(std::move(e));
    }
    return j;
}

inline Json post_lie_filter_json(const PostLieFilter& f) {
    Json j;
    j["candidates"] = f.candidates;
    j["quadratic_term_vanishes"] = f.quadratic_term_vanishes;
    j["surviving_dimension"] = f.surviving_dimension;
    j["surviving"] = Json::array();
    for (const auto& combo : f.surviving) {
        Json c = Json::object();
        for (const auto& [name, v] : combo) c[name] = to_string(v);
        j["surviving"].push_back(std::move(c));
    }
    return j;
}

inline Json lift_json(const LiftResult& r) {
    Json j;
    j["extension"] = algebra_json(r.extension);
    j["degree"] = r.degree;
    j["feasible"] = r.feasible;
    if (r.feasible) {
        j["correction_dimension"] = r.corrections.dimension();
        Json lift = Json::object();
        for (const auto& [uv, val] : r.lift.table)
            if (r.context->window.in_core(uv.first) && r.context->window.in_core(uv.second))
                lift["(" + to_string(uv.first) + "," + to_string(uv.second) + ")"] = to_string(val);
        j["lift_on_core"] = std::move(lift);
    }
    return j;
}

inline Json tp_outcome_json(const TransposedPoissonCase& c, const TransposedPoissonOutcome& o, Verdict v) {
    Json j;
    j["case"] = c.id;
    j["algebra"] = algebra_json(c.algebra);
    j["delta"] = to_string(c.delta);
    j["verdict"] = verdict_name(v);
    j["sample"] = c.sample.name;
    j["at_delta"] = axiom_json(o.at_delta);
    j["other_deltas"] = Json::array();
    for (const auto& [d, r] : o.at_others) j["other_deltas"].push_back({{"delta", to_string(d)}, {"pass", r.pass}});
    if (c.witness) j["witness"] = {{"product", c.witness->name}, {"result", axiom_json(*o.witness_at_delta)}};
    j["candidate_space"] = candidate_json(o.space, false);
    j["family_matches"] = o.family_match();
    return j;
}

/// Catalog listing: name, kind, formula, applicability, degree, classification.
inline Json catalog_json() {
    Json arr = Json::array();
    for (const auto& e : catalog())
        arr.push_back({{"name", e.name},
                       {"kind", kind_name(e.kind)},
                       {"formula", e.formula},
                       {"applicability", e.applicability},
                       {"degree", e.fixed_degree ? std::to_string(*e.fixed_degree) : std::string("n")},
                       {"classification", e.classification}});
    return arr;
}

// ---------------------------------------------------------------------------
// Markdown

namespace detail {

inline std::string md_cell(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
    if (v.is_null()) return "";
    if (v.is_array()) {
        std::string s;
        for (const auto& x : v) s += (s.empty() ? "" : ", ") + md_cell(x);
        return s;
    }
    if (v.is_object() && v.contains("name")) return v["name"].get<std::string>();
    return v.dump();
}

inline void md_table(std::ostringstream& os, const Json& rows, const std::vector<std::string>& cols) {
    os << "|";
    for (const auto& c : cols) os << " " << c << " |";
    os << "\n|";
    for (std::size_t i = 0; i < cols.size(); ++i) os << "---|";
    os << "\n";
    for (const auto& r : rows) {
        os << "|";
        for (const auto& c : cols) os << " " << (r.contains(c) ? md_cell(r[c]) : "") << " |";
        os << "\n";
    }
    os << "\n";
}

/// Flattens nested objects into dotted columns; arrays of objects and bases are left out.
inline void md_flatten(const Json& obj, const std::string& prefix, Json& row) {
    for (const auto& [k, v] : obj.items()) {
        if (k == "core_basis" || k == "lift_on_core" || k == "window" || k == "kind") continue;
        const std::string key = prefix.empty() ? k : prefix + "." + k;
        if (v.is_object() && v.contains("name") && v.contains("family"))
            row[key] = v["name"];
        else if (v.is_object())
            md_flatten(v, key, row);
        else if (v.is_array() && !v.empty() && v[0].is_object())
            continue;
        else
            row[key] = v;
    }
}

}  // namespace detail

inline std::string catalog_markdown() {
    std::ostringstream os;
    os << "# Catalog\n\n";
    detail::md_table(os, catalog_json(), {"name", "kind", "formula", "applicability", "degree", "classification"});
    return os.str();
}

/// Markdown rendering of a sweep or single-command report.
inline std::string to_markdown(const Json& report) {
    std::ostringstream os;
    os << "# " << report.value("title", std::string("report")) << "\n\n";
    if (report.contains("window"))
        os << "Window N=" << report["window"]["N"] << ", M=" << report["window"]["M"] << "\n\n";
    if (report.contains("verdict")) os << "Overall verdict: **" << report["verdict"].get<std::string>() << "**\n\n";
    for (const auto& [key, section] : report.items()) {
        if (!section.is_array() || section.empty() || !section[0].is_object()) continue;
        os << "## " << key << "\n\n";
        Json rows = Json::array();
        for (const auto& item : section) {
            const bool per_degree = item.contains("degrees") && item["degrees"].is_array() && item.contains("kind");
            if (!per_degree) {
                Json r = Json::object();
                detail::md_flatten(item, "", r);
                rows.push_back(std::move(r));
                continue;
            }
            for (const auto& d : item["degrees"]) {
                Json r = Json::object();
                r["algebra"] = item["algebra"]["name"];
                r["delta"] = item["delta"];
                detail::md_flatten(d, "", r);
                rows.push_back(std::move(r));
            }
        }
        std::vector<std::string> cols;
        for (const auto& r : rows)
            for (const auto& [k, v] : r.items())
                if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
        detail::md_table(os, rows, cols);
    }
    return os.str();
}

}  // namespace bider

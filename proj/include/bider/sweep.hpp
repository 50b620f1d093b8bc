#pragma once

#include "bider/report.hpp"

#include <fstream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace bider {

/// Malformed sweep file or command-line configuration.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline Scalar json_scalar(const Json& v) {
    try {
        if (v.is_number_integer()) return Scalar(v.get<long>());
        if (v.is_string()) return parse_scalar(v.get<std::string>());
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    throw ConfigError("expected a rational given as \"p/q\": " + v.dump());
}

/// Algebra from {"family", "a", "b"}; parameters must already be normalised to [0, 1).
inline AlgebraSpec algebra_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("family")) throw ConfigError("algebra needs a family: " + j.dump());
    Family f;
    try {
        f = parse_family(j["family"].get<std::string>());
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    if (f == Family::Witt) return AlgebraSpec::witt();
    if (f == Family::Virasoro) return AlgebraSpec::virasoro();
    const Scalar a = j.contains("a") ? json_scalar(j["a"]) : Scalar(0);
    const Scalar b = j.contains("b") ? json_scalar(j["b"]) : Scalar(0);
    if (normalize_a(a) != a) throw ConfigError("parameter a = " + to_string(a) + " is not normalised to [0, 1)");
    return f == Family::W ? AlgebraSpec::w(a, b) : AlgebraSpec::wtilde(a, b);
}

inline std::vector<Scalar> deltas_from_json(const Json& j) {
    std::vector<Scalar> out;
    if (j.is_array())
        for (const auto& d : j) out.push_back(json_scalar(d));
    else
        out.push_back(json_scalar(j));
    return out;
}

inline Verdict worse(Verdict a, Verdict b) { return severity(b) > severity(a) ? b : a; }

/// Runs the requested sections of a sweep file and assembles a report in file order.
class SweepRunner {
public:
    explicit SweepRunner(Json config) : cfg_(std::move(config)) {
        const int N = cfg_.value("window", 12), M = cfg_.value("margin", 4);
        try {
            w_ = Window(N, M);
        } catch (const std::exception& e) {
            throw ConfigError(e.what());
        }
        if (cfg_.contains("degrees")) {
            const auto& d = cfg_["degrees"];
            if (!d.is_array() || d.size() != 2) throw ConfigError("degrees must be [lo, hi]");
            for (int n = d[0].get<int>(); n <= d[1].get<int>(); ++n) degrees_.push_back(n);
        } else {
            for (int n = -w_.core_radius(); n <= w_.core_radius(); ++n) degrees_.push_back(n);
        }
        for (const int n : degrees_)
            if (std::abs(n) > w_.core_radius())
                throw ConfigError("degree " + std::to_string(n) + " outside the certified range |n| <= " +
                                  std::to_string(w_.core_radius()));
    }

    static SweepRunner from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open sweep file " + path);
        try {
            return SweepRunner(Json::parse(in));
        } catch (const Json::exception& e) {
            throw ConfigError(std::string("sweep file: ") + e.what());
        }
    }

    const Window& window() const { return w_; }
    Verdict verdict() const { return verdict_; }

    /// Sections: derivations, biderivations, commuting, postlie, tpoisson, lift.
    Json run(const std::set<std::string>& sections, const std::string& title) {
        Json out;
        out["title"] = title;
        out["window"] = window_json(w_);
        out["degrees"] = {degrees_.front(), degrees_.back()};
        out["verdict"] = "confirmed";
        verdict_ = Verdict::Confirmed;
        for (const auto* key : {"derivations", "biderivations", "commuting", "postlie", "tpoisson", "lift"}) {
            if (!sections.count(key) || !cfg_.contains(key)) continue;
            Json items = Json::array();
            for (const auto& item : cfg_[key]) run_item(key, item, items);
            out[key] = std::move(items);
        }
        out["verdict"] = verdict_name(verdict_);
        return out;
    }

private:
    void run_item(const std::string& key, const Json& item, Json& items) {
        if (key == "derivations" || key == "biderivations") {
            const auto g = algebra_from_json(item);
            for (const auto& d : deltas_from_json(item.at("delta"))) {
                const auto v = key == "derivations" ? verify_derivations(g, d, degrees_, w_) : verify_case(g, d, degrees_, w_);
                note(worst(v));
                items.push_back(verdicts_json(key == "derivations" ? "derivation" : "biderivation", g, d, v, false));
            }
            return;
        }
        if (key == "commuting") {
            const auto g = algebra_from_json(item);
            const auto r = commuting_maps(g, w_);
            const Verdict v = r.matches_catalog ? Verdict::Confirmed : Verdict::Mismatch;
            note(v);
            items.push_back(commuting_json(r, v, false));
            return;
        }
        if (key == "postlie") {
            const auto g = algebra_from_json(item);
            const auto sym = symmetric_biderivations(g, 1, w_);
            const auto filt = post_lie_filter(g, w_);
            bool ok = sym.matches() && filt.quadratic_term_vanishes &&
                      filt.surviving_dimension == stated_post_lie_dimension(g);
            Json j;
            j["algebra"] = algebra_json(g);
            j["symmetric_dimension"] = sym.total_dimension();
            j["symmetric_matches_catalog"] = sym.matches();
            j["filter"] = post_lie_filter_json(filt);
            j["stated_dimension"] = stated_post_lie_dimension(g);
            j["checks"] = Json::array();
            if (item.contains("lambda"))
                for (const auto& abc : item["lambda"]) {
                    const auto p = lambda_product(json_scalar(abc.at(0)), json_scalar(abc.at(1)), json_scalar(abc.at(2)));
                    const auto r = post_lie_check(g, p, w_);
                    ok = ok && r.pass;
                    j["checks"].push_back({{"product", p.name}, {"result", axiom_json(r)}});
                }
            const Verdict v = ok ? Verdict::Confirmed : Verdict::Mismatch;
            note(v);
            j["verdict"] = verdict_name(v);
            items.push_back(std::move(j));
            return;
        }
        if (key == "tpoisson") {
            const int id = item.get<int>();
            for (const auto& c : transposed_poisson_cases()) {
                if (c.id != id) continue;
                const auto o = run_transposed_poisson_case(c, w_);
                const Verdict v = o.passes_at_delta() && o.fails_elsewhere() && o.family_match() ? Verdict::Confirmed
                                                                                                : Verdict::Mismatch;
                note(v);
                items.push_back(tp_outcome_json(c, o, v));
                return;
            }
            throw ConfigError("unknown transposed Poisson case " + std::to_string(id));
        }
        // lift
        const auto base = algebra_from_json(item.at("base"));
        const auto ext = algebra_from_json(item.at("ext"));
        const auto delta = json_scalar(item.at("delta"));
        const int n = item.value("degree", 0);
        const std::string entry = item.at("entry").get<std::string>();
        HomBilinearMap f{n, {}};
        if (entry != "0") f = restrict_bilinear(catalog_entry(entry), WindowAlgebra(base, w_), n);
        const auto r = lift_check(base, f, ext, delta, w_);
        bool ok = !item.contains("expect") || r.feasible == (item["expect"].get<std::string>() == "feasible");
        Json j;
        j["base"] = algebra_json(base);
        j["entry"] = entry;
        j["delta"] = to_string(delta);
        if (item.contains("expect")) j["expect"] = item["expect"];
        j["result"] = lift_json(r);
        if (item.contains("lift_entry")) {
            const auto le = item["lift_entry"].get<std::string>();
            const bool is = r.is_lift(restrict_bilinear(catalog_entry(le), *r.context, n));
            j["lift_entry"] = le;
            j["lift_entry_matches"] = is;
            ok = ok && is;
        }
        const Verdict v = ok ? Verdict::Confirmed : Verdict::Mismatch;
        note(v);
        j["verdict"] = verdict_name(v);
        items.push_back(std::move(j));
    }

    void note(Verdict v) { verdict_ = worse(verdict_, v); }

    Json cfg_;
    Window w_;
    std::vector<int> degrees_;
    Verdict verdict_ = Verdict::Confirmed;
};

}  // namespace bider

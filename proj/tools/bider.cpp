// Command-line front end for the δ-(bi)derivation solver and its applications.

#include "bider/bider.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <string>

namespace {

using namespace bider;

constexpr int kUsage = 64;

struct Config {
    std::string family = "witt";
    std::string a = "0", b = "0";
    std::vector<std::string> deltas{"1"};
    std::optional<int> degree;
    std::string degrees;
    int window = 12;
    int margin = 4;
    std::string format = "json";
    std::string out;
    std::string sweep;
    std::vector<std::string> args;
    std::string entry;
    std::vector<std::string> lambda;
    int tp_case = 0;
};

int exit_code(Verdict v) {
    switch (v) {
        case Verdict::Mismatch: return 1;
        case Verdict::Inconclusive: return 2;
        default: return 0;
    }
}

Json algebra_config(const Config& c) {
    Json j{{"family", c.family}};
    if (c.family == "w" || c.family == "wtilde") {
        j["a"] = c.a;
        j["b"] = c.b;
    }
    return j;
}

std::pair<int, int> degree_range(const Config& c, const Window& w) {
    if (c.degree) return {*c.degree, *c.degree};
    if (c.degrees.empty()) return {-w.core_radius(), w.core_radius()};
    static const std::regex re(R"(^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$)");
    std::smatch m;
    if (!std::regex_match(c.degrees, m, re)) throw ConfigError("degrees must look like lo..hi, got " + c.degrees);
    return {std::stoi(m[1]), std::stoi(m[2])};
}

Json base_config(const Config& c) {
    Json j{{"window", c.window}, {"margin", c.margin}};
    Window w;
    try {
        w = Window(c.window, c.margin);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    const auto [lo, hi] = degree_range(c, w);
    j["degrees"] = {lo, hi};
    return j;
}

void write_text(const Config& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + c.out);
    f << text;
}

void emit(const Config& c, const Json& report) {
    write_text(c, c.format == "md" ? to_markdown(report) : report.dump(2) + "\n");
}

Json load_sweep(const Config& c) {
    std::ifstream in(c.sweep);
    if (!in) throw ConfigError("cannot open sweep file " + c.sweep);
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("sweep file: ") + e.what());
    }
}

int run_sections(const Config& c, Json cfg, const std::set<std::string>& sections, const std::string& title) {
    SweepRunner runner(std::move(cfg));
    const Json report = runner.run(sections, title);
    emit(c, report);
    return exit_code(runner.verdict());
}

int cmd_bracket(const Config& c) {
    if (c.args.size() != 2) throw ConfigError("bracket takes two basis vectors, e.g. L[2] L[-2]");
    const auto g = algebra_from_json(algebra_config(c));
    BasisVector u, v;
    try {
        u = parse_basis_vector(c.args[0]);
        v = parse_basis_vector(c.args[1]);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    if (!g.admissible(u) || !g.admissible(v)) throw ConfigError("basis vector not in " + g.name());
    std::cout << to_string(bracket(g, u, v)) << "\n";
    return 0;
}

int cmd_jacobi(const Config& c) {
    const auto g = algebra_from_json(algebra_config(c));
    Window w;
    try {
        w = Window(c.window, 0);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    const auto r = jacobi_check(g, w);
    Json j{{"title", "jacobi"}, {"algebra", algebra_json(g)}, {"N", c.window}, {"pass", r.pass},
           {"triples_checked", r.triples_checked}};
    if (!r.pass) {
        j["violation"] = {to_string((*r.first_violation)[0]), to_string((*r.first_violation)[1]),
                          to_string((*r.first_violation)[2])};
        j["residual"] = to_string(r.residual);
    }
    emit(c, j);
    return r.pass ? 0 : 1;
}

int cmd_solve(const Config& c, bool bilinear) {
    if (c.deltas.size() != 1) throw ConfigError("give a single --delta");
    const auto g = algebra_from_json(algebra_config(c));
    const auto cfg = base_config(c);
    const Window w(c.window, c.margin);
    std::vector<int> degrees;
    for (int n = cfg["degrees"][0].get<int>(); n <= cfg["degrees"][1].get<int>(); ++n) {
        if (std::abs(n) > w.core_radius())
            throw ConfigError("degree " + std::to_string(n) + " outside the certified range");
        degrees.push_back(n);
    }
    const Scalar d = json_scalar(c.deltas[0]);
    const auto v = bilinear ? verify_case(g, d, degrees, w) : verify_derivations(g, d, degrees, w);
    Json report{{"title", bilinear ? "biderivations" : "derivations"}, {"window", window_json(w)}};
    report["verdict"] = verdict_name(worst(v));
    report[bilinear ? "biderivations" : "derivations"] =
        Json::array({verdicts_json(bilinear ? "biderivation" : "derivation", g, d, v, true)});
    emit(c, report);
    return exit_code(worst(v));
}

int cmd_classify(const Config& c) {
    Json cfg = c.sweep.empty() ? base_config(c) : load_sweep(c);
    if (c.sweep.empty()) {
        Json item = algebra_config(c);
        item["delta"] = c.deltas;
        cfg["biderivations"] = Json::array({item});
    }
    return run_sections(c, std::move(cfg), {"derivations", "biderivations"}, "classification");
}

int cmd_app(const Config& c, const std::string& section) {
    Json cfg = c.sweep.empty() ? base_config(c) : load_sweep(c);
    if (c.sweep.empty()) {
        if (section == "tpoisson") {
            cfg["tpoisson"] = Json::array({c.tp_case});
        } else if (section == "lift") {
            const auto base = algebra_from_json(algebra_config(c));
            const auto ext = base.family == Family::Witt ? AlgebraSpec::virasoro()
                             : base.family == Family::W  ? AlgebraSpec::wtilde(base.a, base.b)
                                                         : throw ConfigError("lift needs --family witt or w");
            if (c.entry.empty()) throw ConfigError("lift needs --entry");
            if (c.deltas.size() != 1) throw ConfigError("give a single --delta");
            Json item{{"base", algebra_config(c)}, {"ext", algebra_json(ext)}, {"entry", c.entry},
                      {"degree", c.degree.value_or(0)}, {"delta", c.deltas[0]}};
            cfg["lift"] = Json::array({item});
        } else {
            Json item = algebra_config(c);
            if (!c.lambda.empty()) {
                if (c.lambda.size() % 3 != 0) throw ConfigError("--lambda takes a,b,c triples");
                Json l = Json::array();
                for (std::size_t i = 0; i < c.lambda.size(); i += 3)
                    l.push_back({c.lambda[i], c.lambda[i + 1], c.lambda[i + 2]});
                item["lambda"] = l;
            }
            cfg[section] = Json::array({item});
        }
    }
    return run_sections(c, std::move(cfg), {section}, section);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact δ-derivation and δ-biderivation solver for Witt-type Lie algebras"};
    app.require_subcommand(1);
    Config c;

    auto common = [&](CLI::App* s, bool solve) {
        s->add_option("--family", c.family, "witt | virasoro | w | wtilde")
            ->check(CLI::IsMember({"witt", "virasoro", "w", "wtilde"}));
        s->add_option("--a", c.a, "parameter a as p/q");
        s->add_option("--b", c.b, "parameter b as p/q");
        if (!solve) return;
        s->add_option("--delta", c.deltas, "δ as p/q (repeatable)");
        s->add_option("--degree", c.degree, "single degree");
        s->add_option("--degrees", c.degrees, "degree range lo..hi");
        s->add_option("--window", c.window, "window radius N");
        s->add_option("--margin", c.margin, "core margin M");
        s->add_option("--format", c.format, "json | md")->check(CLI::IsMember({"json", "md"}));
        s->add_option("--out", c.out, "output file");
        s->add_option("--sweep", c.sweep, "sweep file");
    };

    auto* br = app.add_subcommand("bracket", "bracket of two basis vectors");
    common(br, false);
    br->add_option("vectors", c.args, "e.g. L[2] I[-1] C0")->expected(2);
    auto* ja = app.add_subcommand("jacobi", "Jacobi identity on a window");
    common(ja, false);
    ja->add_option("--window", c.window, "window radius N");
    ja->add_option("--format", c.format)->check(CLI::IsMember({"json", "md"}));
    ja->add_option("--out", c.out);
    auto* de = app.add_subcommand("derive", "δ-derivations of one degree range");
    auto* bi = app.add_subcommand("bider", "δ-biderivations of one degree range");
    auto* cl = app.add_subcommand("classify", "classification sweep");
    auto* co = app.add_subcommand("commuting", "commuting linear maps");
    auto* pl = app.add_subcommand("postlie", "commutative post-Lie structures");
    auto* tp = app.add_subcommand("tpoisson", "transposed δ-Poisson cases");
    auto* li = app.add_subcommand("lift", "lift a biderivation to the central extension");
    for (auto* s : {de, bi, cl, co, pl, tp, li}) common(s, true);
    pl->add_option("--lambda", c.lambda, "a b c coefficients of the Λ product (repeatable triples)");
    tp->add_option("--case", c.tp_case, "case number 1..7")->check(CLI::Range(1, 7));
    li->add_option("--entry", c.entry, "catalog entry name, or 0 for the zero map");
    auto* ca = app.add_subcommand("catalog", "list the catalog of named maps");
    ca->add_option("--format", c.format)->check(CLI::IsMember({"json", "md"}));
    ca->add_option("--out", c.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*br) return cmd_bracket(c);
        if (*ja) return cmd_jacobi(c);
        if (*de) return cmd_solve(c, false);
        if (*bi) return cmd_solve(c, true);
        if (*cl) return cmd_classify(c);
        if (*co) return cmd_app(c, "commuting");
        if (*pl) return cmd_app(c, "postlie");
        if (*tp) {
            if (c.sweep.empty() && c.tp_case == 0) throw ConfigError("tpoisson needs --case or --sweep");
            return cmd_app(c, "tpoisson");
        }
        if (*li) return cmd_app(c, "lift");
        if (*ca) {
            write_text(c, c.format == "md" ? catalog_markdown() : catalog_json().dump(2) + "\n");
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

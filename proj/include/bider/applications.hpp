#pragma once

#include "bider/catalog.hpp"

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace bider {

// ---------------------------------------------------------------------------
// Symmetric and skew parts of a biderivation space

/// span{f + f^T} for f in the raw space.
inline SubspaceBasis symmetric_part(const SolveReport& rep, int sign = +1) {
    const auto perm = rep.bilinear_coords->transpose_permutation();
    std::vector<SparseRow> out;
    for (const auto& r : rep.raw.rows()) out.push_back(axpy(r, Scalar(sign), permute(r, perm)));
    return SubspaceBasis(rep.raw.labels(), out);
}

inline SubspaceBasis skew_part(const SolveReport& rep) { return symmetric_part(rep, -1); }

// ---------------------------------------------------------------------------
// Commuting linear maps

struct CommutingMapReport {
    AlgebraSpec algebra;
    Window window;
    std::size_t raw_dimension = 0;
    SubspaceBasis raw;
    SubspaceBasis core;
    SubspaceBasis expected_core;        // span of the catalog maps
    std::vector<std::string> matched;   // catalog names whose restriction solves the system
    bool matches_catalog = false;       // core == expected_core
    std::size_t central_valued_core_dimension = 0;  // maps with values in the center
    std::size_t core_dimension_mod_center = 0;      // core dimension after dividing those out
    std::shared_ptr<const WindowAlgebra> context;
    std::shared_ptr<const LinearCoords> coords;
};

/// Solves [phi(u), v] = [u, phi(v)] over window pairs u <= v, one degree of phi at a
/// time; an equation is emitted when phi(u), phi(v) and the bracket all stay in the window.
inline CommutingMapReport commuting_maps(const AlgebraSpec& g, const Window& w) {
    auto A = std::make_shared<WindowAlgebra>(g, w);
    const auto& wb = A->basis;
    const auto& bt = A->table;
    const int N = w.N;
    std::vector<int> degrees;
    for (int d = -2 * N - 1; d <= 2 * N + 1; ++d) degrees.push_back(d);
    auto all = std::make_shared<LinearCoords>(*A, degrees);
    std::vector<SparseRow> solutions;
    for (const int d : degrees) {
        const LinearCoords C(*A, d);
        if (C.size() == 0) continue;
        std::vector<SparseRow> rows;
        detail::RowSink sink(rows);
        for (std::size_t u = 0; u < A->size(); ++u) {
            if (std::abs(wb.degree(u) + d) > N) continue;
            for (std::size_t v = u; v < A->size(); ++v) {
                if (std::abs(wb.degree(v) + d) > N || std::abs(wb.degree(u) + wb.degree(v) + d) > N) continue;
                for (const auto t : wb.of_degree(wb.degree(u) + d))
                    for (const auto& [x, s] : bt(t, v)) sink.add(x, C.index(u, t), s);
                for (const auto t : wb.of_degree(wb.degree(v) + d))
                    for (const auto& [x, s] : bt(u, t)) sink.add(x, C.index(v, t), -s);
                sink.flush();
            }
        }
        for (const auto& k : certified_reduce(rows, C.size()).kernel) {
            std::vector<Entry> e;
            for (const auto& x : k) e.push_back({all->index(C[x.col].first, C[x.col].second), x.value});
            solutions.push_back(make_row(std::move(e)));
        }
    }
    CommutingMapReport rep;
    rep.algebra = g;
    rep.window = w;
    rep.raw = SubspaceBasis(all->labels(), solutions);
    rep.raw_dimension = rep.raw.dimension();
    const auto core_idx = all->core_indices();
    rep.core = project_indices(rep.raw, core_idx);

    std::vector<SparseRow> expected;
    RrefReducer red(rep.raw.rows(), rep.raw.ambient_dimension());
    for (const auto& e : catalog()) {
        if (e.kind != EntryKind::LinearMap || !e.exists_on(g)) continue;
        auto v = all->vectorize(restrict_linear(e, *A, 0));
        if (red.in_span(v)) rep.matched.push_back(e.name);
        expected.push_back(std::move(v));
    }
    rep.expected_core = project_indices(SubspaceBasis(all->labels(), expected), core_idx);
    rep.matches_catalog = span_equal(rep.core, rep.expected_core);

    std::set<std::size_t> central;
    for (const auto& z : center_basis(g, w))
        if (z.terms().size() == 1) central.insert(wb.index_of(z.terms().begin()->first));
    std::vector<std::size_t> noncentral_target, central_target;
    for (const auto i : core_idx) ((central.count((*all)[i].second) ? central_target : noncentral_target)).push_back(i);
    rep.core_dimension_mod_center = project_indices(rep.raw, noncentral_target).dimension();
    rep.central_valued_core_dimension = rep.core.dimension() - rep.core_dimension_mod_center;
    rep.context = A;
    rep.coords = all;
    return rep;
}

// ---------------------------------------------------------------------------
// Bilinear products

/// A product given by its values on basis pairs.
struct BilinearProduct {
    std::string name;
    std::function<Element(const BasisVector&, const BasisVector&)> value;

    Element operator()(const Element& x, const Element& y) const {
        Element out;
        for (const auto& [u, cu] : x.terms())
            for (const auto& [v, cv] : y.terms()) out += (cu * cv) * value(u, v);
        return out;
    }
};

inline BilinearProduct zero_product() {
    return {"0", [](const BasisVector&, const BasisVector&) { return Element{}; }};
}

using Coefficients = std::map<int, Scalar>;

inline std::string coefficient_text(const std::string& sym, const Coefficients& c) {
    std::string s;
    for (const auto& [n, v] : c) s += (s.empty() ? "" : ",") + sym + "_" + std::to_string(n) + "=" + to_string(v);
    return s;
}

/// sum_n c_n f_n for a catalog biderivation family f_n, evaluated by its formula.
inline BilinearProduct catalog_product(const std::string& entry, const AlgebraSpec& g, const Coefficients& c) {
    const auto& e = catalog_entry(entry);
    if (e.kind != EntryKind::Biderivation) throw std::invalid_argument(entry + " is not a bilinear entry");
    if (!e.exists_on(g)) throw std::invalid_argument(entry + " is not defined on " + g.name());
    return {entry + "(" + coefficient_text("c", c) + ")", [entry, g, c](const BasisVector& u, const BasisVector& v) {
                Element out;
                for (const auto& [n, k] : c) out += k * entry_value(entry, g, n, u, v);
                return out;
            }};
}

/// L_i o L_j = sum lambda_n L_{n+i+j} on the Witt algebra (and its lift to Virasoro, zero on C0).
inline BilinearProduct witt_product(const Coefficients& lambda) {
    return {"witt-product(" + coefficient_text("lambda", lambda) + ")",
            [lambda](const BasisVector& u, const BasisVector& v) {
                Element e;
                if (u.kind != BasisVector::Kind::L || v.kind != BasisVector::Kind::L) return e;
                for (const auto& [n, c] : lambda) e.add(BasisVector::L(n + u.index + v.index), c);
                return e;
            }};
}

/// L_i o L_j = sum lambda_n I_{n+i+j}, weighted by (a+n+i+j) when `weighted`; zero elsewhere.
inline BilinearProduct w_current_product(const AlgebraSpec& g, const Coefficients& lambda, bool weighted) {
    const Scalar a = g.a;
    return {std::string(weighted ? "weighted-" : "") + "current-product(" + coefficient_text("lambda", lambda) + ")",
            [lambda, weighted, a](const BasisVector& u, const BasisVector& v) {
                Element e;
                if (u.kind != BasisVector::Kind::L || v.kind != BasisVector::Kind::L) return e;
                for (const auto& [n, c] : lambda) {
                    const int k = n + u.index + v.index;
                    e.add(BasisVector::I(k), weighted ? c * (a + k) : c);
                }
                return e;
            }};
}

/// L_i o L_j = sum lambda_n L_{n+i+j} + sum mu_n I_{n+i+j}, L_i o I_j = I_j o L_i = sum lambda_n I_{n+i+j}.
inline BilinearProduct w_minus_one_product(const Coefficients& lambda, const Coefficients& mu) {
    return {"b=-1-product(" + coefficient_text("lambda", lambda) + ";" + coefficient_text("mu", mu) + ")",
            [lambda, mu](const BasisVector& u, const BasisVector& v) {
                using K = BasisVector::Kind;
                Element e;
                if (u.is_central() || v.is_central() || (u.kind == K::I && v.kind == K::I)) return e;
                const int s = u.index + v.index;
                if (u.kind == K::L && v.kind == K::L) {
                    for (const auto& [n, c] : lambda) e.add(BasisVector::L(n + s), c);
                    for (const auto& [n, c] : mu) e.add(BasisVector::I(n + s), c);
                } else {
                    for (const auto& [n, c] : lambda) e.add(BasisVector::I(n + s), c);
                }
                return e;
            }};
}

/// (lambda I_0 + x) o (mu I_0 + y) = lambda mu (a C0 + b C1^1 + c C2^1) for x, y in the derived algebra.
inline BilinearProduct lambda_product(const Scalar& a, const Scalar& b, const Scalar& c) {
    Element v;
    v.add(BasisVector::central(CentralTag::C0), a);
    v.add(BasisVector::central(CentralTag::C1_1), b);
    v.add(BasisVector::central(CentralTag::C2_1), c);
    return {"Lambda(" + to_string(a) + "," + to_string(b) + "," + to_string(c) + ")",
            [v](const BasisVector& x, const BasisVector& y) {
                return (x == BasisVector::I(0) && y == BasisVector::I(0)) ? v : Element{};
            }};
}

// ---------------------------------------------------------------------------
// Axiom checks on window triples

struct AxiomViolation {
    std::string axiom;
    std::array<BasisVector, 3> triple;
    Element lhs;
    Element rhs;
    Element difference() const { return lhs - rhs; }
};

struct AxiomReport {
    bool pass = true;
    std::size_t triples_checked = 0;
    std::optional<AxiomViolation> violation;
};

namespace detail {

inline bool inside(const AlgebraSpec& g, const Window& w, const Element& e) {
    for (const auto& [v, c] : e.terms())
        if (!g.admissible(v) || (!v.is_central() && std::abs(v.index) > w.N)) return false;
    return true;
}

inline void require_symmetric(const BilinearProduct& p, const WindowBasis& wb) {
    for (std::size_t i = 0; i < wb.size(); ++i)
        for (std::size_t j = i + 1; j < wb.size(); ++j)
            if (p.value(wb[i], wb[j]) != p.value(wb[j], wb[i]))
                throw std::invalid_argument("product " + p.name + " is not symmetric at (" + to_string(wb[i]) + "," +
                                            to_string(wb[j]) + ")");
}

/// Runs `check(x, y, z)` over window triples in lexicographic order; `check` returns
/// nullopt when the triple is outside the emission rule or passes.
template <class Check>
AxiomReport scan_triples(const WindowBasis& wb, Check&& check) {
    AxiomReport rep;
    for (const auto& x : wb.vectors())
        for (const auto& y : wb.vectors())
            for (const auto& z : wb.vectors()) {
                bool counted = false;
                auto v = check(x, y, z, counted);
                if (counted) ++rep.triples_checked;
                if (v) {
                    rep.pass = false;
                    rep.violation = std::move(v);
                    return rep;
                }
            }
    return rep;
}

}  // namespace detail

/// Both sides of the two commutative post-Lie axioms at one triple.
inline std::array<AxiomViolation, 2> post_lie_sides(const AlgebraSpec& g, const BilinearProduct& p,
                                                    const BasisVector& x, const BasisVector& y,
                                                    const BasisVector& z) {
    const Element X(x), Y(y), Z(z);
    AxiomViolation first{"[x,y]oz = xo(yoz) - yo(xoz)", {x, y, z}, p(bracket(g, X, Y), Z), p(X, p(Y, Z)) - p(Y, p(X, Z))};
    AxiomViolation second{"xo[y,z] = [xoy,z] + [y,xoz]", {x, y, z}, p(X, bracket(g, Y, Z)),
                          bracket(g, p(X, Y), Z) + bracket(g, Y, p(X, Z))};
    return {first, second};
}

/// Commutative post-Lie axioms on every window triple whose intermediate values stay
/// in the window; reports the lexicographically first violation.
inline AxiomReport post_lie_check(const AlgebraSpec& g, const BilinearProduct& p, const Window& w) {
    const WindowBasis wb(g, w.N);
    detail::require_symmetric(p, wb);
    return detail::scan_triples(wb, [&](const BasisVector& x, const BasisVector& y, const BasisVector& z,
                                        bool& counted) -> std::optional<AxiomViolation> {
        const Element X(x), Y(y), Z(z);
        const Element xy = bracket(g, X, Y), yz = bracket(g, Y, Z);
        const Element py = p(Y, Z), px = p(X, Z), pxy = p(X, Y);
        if (!detail::inside(g, w, xy) || !detail::inside(g, w, yz) || !detail::inside(g, w, py) ||
            !detail::inside(g, w, px) || !detail::inside(g, w, pxy))
            return std::nullopt;
        const Element l1 = p(xy, Z), r1 = p(X, py) - p(Y, px);
        const Element l2 = p(X, yz), r2 = bracket(g, pxy, Z) + bracket(g, Y, px);
        for (const auto* e : {&l1, &r1, &l2, &r2})
            if (!detail::inside(g, w, *e)) return std::nullopt;
        counted = true;
        if (l1 != r1) return AxiomViolation{"[x,y]oz = xo(yoz) - yo(xoz)", {x, y, z}, l1, r1};
        if (l2 != r2) return AxiomViolation{"xo[y,z] = [xoy,z] + [y,xoz]", {x, y, z}, l2, r2};
        return std::nullopt;
    });
}

/// Commutativity, associativity and δ z o [x,y] = [z o x, y] + [x, z o y] on window triples.
inline AxiomReport transposed_poisson_check(const AlgebraSpec& g, const BilinearProduct& p, const Scalar& delta,
                                            const Window& w) {
    if (delta == 0) throw std::invalid_argument("transposed Poisson check needs delta != 0");
    const WindowBasis wb(g, w.N);
    for (std::size_t i = 0; i < wb.size(); ++i)
        for (std::size_t j = i + 1; j < wb.size(); ++j) {
            const Element l = p.value(wb[i], wb[j]), r = p.value(wb[j], wb[i]);
            if (l != r) {
                AxiomReport rep;
                rep.pass = false;
                rep.violation = AxiomViolation{"xoy = yox", {wb[i], wb[j], wb[j]}, l, r};
                return rep;
            }
        }
    return detail::scan_triples(wb, [&](const BasisVector& x, const BasisVector& y, const BasisVector& z,
                                        bool& counted) -> std::optional<AxiomViolation> {
        const Element X(x), Y(y), Z(z);
        const Element xy = bracket(g, X, Y), pxy = p(X, Y), pyz = p(Y, Z), pzx = p(Z, X), pzy = p(Z, Y);
        for (const auto* e : {&xy, &pxy, &pyz, &pzx, &pzy})
            if (!detail::inside(g, w, *e)) return std::nullopt;
        const Element la = p(pxy, Z), ra = p(X, pyz);
        const Element lc = delta * p(Z, xy), rc = bracket(g, pzx, Y) + bracket(g, X, pzy);
        for (const auto* e : {&la, &ra, &lc, &rc})
            if (!detail::inside(g, w, *e)) return std::nullopt;
        counted = true;
        if (la != ra) return AxiomViolation{"(xoy)oz = xo(yoz)", {x, y, z}, la, ra};
        if (lc != rc) return AxiomViolation{"delta zo[x,y] = [zox,y] + [x,zoy]", {x, y, z}, lc, rc};
        return std::nullopt;
    });
}

// ---------------------------------------------------------------------------
// Candidate spaces

struct DegreeSpace {
    int degree = 0;
    SubspaceBasis core;
    SubspaceBasis expected_core;
    bool matches = false;
};

struct CandidateSpace {
    AlgebraSpec algebra;
    Scalar delta;
    Window window;
    std::vector<DegreeSpace> degrees;
    std::size_t total_dimension() const {
        std::size_t s = 0;
        for (const auto& d : degrees) s += d.core.dimension();
        return s;
    }
    bool matches() const {
        for (const auto& d : degrees)
            if (!d.matches) return false;
        return true;
    }
};

/// Symmetric parts of the δ-biderivation spaces over the certified degrees, with the
/// symmetric part of the catalog span alongside.
inline CandidateSpace symmetric_biderivations(const AlgebraSpec& g, const Scalar& delta, const Window& w) {
    CandidateSpace out{g, delta, w, {}};
    Solver s(g, w, delta);
    for (int n = -w.core_radius(); n <= w.core_radius(); ++n) {
        const auto rep = s.biderivations(n);
        const auto perm = rep.bilinear_coords->transpose_permutation();
        std::vector<SparseRow> exp;
        for (const auto& nv : catalog_biderivations(*rep.bilinear_coords, delta))
            exp.push_back(axpy(nv.vector, Scalar(1), permute(nv.vector, perm)));
        DegreeSpace ds;
        ds.degree = n;
        ds.core = project_indices(symmetric_part(rep), rep.core_indices);
        ds.expected_core = project_indices(SubspaceBasis(rep.raw.labels(), exp), rep.core_indices);
        ds.matches = span_equal(ds.core, ds.expected_core);
        out.degrees.push_back(std::move(ds));
    }
    return out;
}

/// Candidate products of transposed δ-Poisson structures: symmetric 1/δ-biderivations.
inline CandidateSpace transposed_poisson_space(const AlgebraSpec& g, const Scalar& delta, const Window& w) {
    if (delta == 0) throw std::invalid_argument("transposed Poisson space needs delta != 0");
    auto cs = symmetric_biderivations(g, Scalar(1) / delta, w);
    cs.delta = delta;
    return cs;
}

// ---------------------------------------------------------------------------
// Post-Lie filtering on the symmetric biderivation catalog

struct PostLieFilter {
    AlgebraSpec algebra;
    std::vector<std::string> candidates;   // symmetric catalog entries over the certified degrees
    bool quadratic_term_vanishes = false;  // f(x, f'(y,z)) = 0 for all candidates f, f'
    std::size_t surviving_dimension = 0;   // solutions of f([x,y],z) = 0 within the span
    std::vector<std::vector<std::pair<std::string, Scalar>>> surviving;
};

/// On the span of the symmetric δ=1 catalog entries the quadratic post-Lie term
/// vanishes, so the first axiom reduces to the linear condition f([x,y],z) = 0.
/// The second axiom is the biderivation identity itself.
inline PostLieFilter post_lie_filter(const AlgebraSpec& g, const Window& w) {
    PostLieFilter out;
    out.algebra = g;
    const WindowAlgebra A(g, w);
    std::vector<HomBilinearMap> maps;
    for (const auto& e : catalog()) {
        if (e.kind != EntryKind::Biderivation || !e.exists_on(g) || !e.applies(g, 1)) continue;
        for (int n = -w.core_radius(); n <= w.core_radius(); ++n) {
            if (!e.has_degree(n)) continue;
            auto f = restrict_bilinear(e, A, n);
            if (f.transposed().table != f.table) continue;
            out.candidates.push_back(e.per_n() ? e.name.substr(0, e.name.size() - 1) + std::to_string(n) : e.name);
            maps.push_back(std::move(f));
        }
    }
    std::set<BasisVector> image;
    for (const auto& f : maps)
        for (const auto& [k, v] : f.table)
            for (const auto& [t, c] : v.terms()) image.insert(t);
    out.quadratic_term_vanishes = true;
    for (const auto& f : maps)
        for (const auto& s : image)
            for (const auto& x : A.basis.vectors())
                if (!f(x, s).is_zero() || !f(s, x).is_zero()) out.quadratic_term_vanishes = false;

    std::vector<SparseRow> rows;
    const auto& wb = A.basis;
    for (std::size_t x = 0; x < wb.size(); ++x)
        for (std::size_t y = 0; y < wb.size(); ++y) {
            if (!A.table.defined(x, y)) continue;
            const auto& xy = A.table(x, y);
            if (xy.empty()) continue;
            for (std::size_t z = 0; z < wb.size(); ++z) {
                std::map<BasisVector, std::vector<Entry>> comp;
                for (std::size_t k = 0; k < maps.size(); ++k) {
                    const int n = maps[k].degree;
                    if (std::abs(wb.degree(x) + wb.degree(y) + wb.degree(z) + n) > w.N) continue;
                    for (const auto& [u, s] : xy) {
                        const Element val = maps[k](wb[u], wb[z]);
                        for (const auto& [t, c] : val.terms()) comp[t].push_back({k, s * c});
                    }
                }
                for (auto& [t, e] : comp) {
                    auto r = make_row(std::move(e));
                    if (!r.empty()) rows.push_back(std::move(r));
                }
            }
        }
    const auto red = certified_reduce(rows, maps.size());
    out.surviving_dimension = red.kernel.size();
    for (const auto& k : red.kernel) {
        std::vector<std::pair<std::string, Scalar>> combo;
        for (const auto& e : k) combo.emplace_back(out.candidates[e.col], e.value);
        out.surviving.push_back(std::move(combo));
    }
    return out;
}

}  // namespace bider

namespace bider {

/// Window restriction of a product to the pairs with |deg u + deg v + n| <= N.
inline HomBilinearMap restrict_product(const BilinearProduct& p, const WindowAlgebra& A, int n) {
    HomBilinearMap f{n, {}};
    for (const auto& u : A.basis.vectors())
        for (const auto& v : A.basis.vectors())
            if (std::abs(u.degree() + v.degree() + n) <= A.N()) f.set(u, v, p.value(u, v));
    return f;
}

/// One stated family of transposed δ-Poisson structures: a sample product, the
/// δ at which it is claimed, and the degree-n spanning products of the family.
struct TransposedPoissonCase {
    int id = 0;
    AlgebraSpec algebra;
    Scalar delta;
    BilinearProduct sample;
    std::optional<BilinearProduct> witness;  // nontrivial product expected to fail at delta
    std::function<std::vector<BilinearProduct>(int)> family;
};

inline std::vector<Scalar> sampled_deltas() {
    return {Scalar(1), Scalar(1, 2), Scalar(2), Scalar(3), Scalar(1, 3), Scalar(7, 5)};
}

/// The seven cases at sampled parameters.
inline std::vector<TransposedPoissonCase> transposed_poisson_cases() {
    using AS = AlgebraSpec;
    std::vector<TransposedPoissonCase> out;
    out.push_back({1, AS::witt(), 2, witt_product({{0, 1}}), std::nullopt,
                   [](int n) { return std::vector{witt_product({{n, 1}})}; }});
    const auto w0 = AS::w(Scalar(1, 2), 0);
    out.push_back({2, w0, 1, w_current_product(w0, {{0, 1}, {2, 3}}, false), std::nullopt,
                   [w0](int n) { return std::vector{w_current_product(w0, {{n, 1}}, false)}; }});
    const auto w1 = AS::w(0, 1);
    out.push_back({3, w1, 1, w_current_product(w1, {{0, 1}, {-1, 2}}, true), std::nullopt,
                   [w1](int n) { return std::vector{w_current_product(w1, {{n, 1}}, true)}; }});
    out.push_back({4, AS::w(Scalar(1, 3), -1), 2, w_minus_one_product({{0, 1}}, {{1, 2}}), std::nullopt,
                   [](int n) { return std::vector{w_minus_one_product({{n, 1}}, {}), w_minus_one_product({}, {{n, 1}})}; }});
    out.push_back({5, AS::wtilde(Scalar(1, 3), -1), 2, w_minus_one_product({}, {{1, 2}}), std::nullopt,
                   [](int n) { return std::vector{w_minus_one_product({}, {{n, 1}})}; }});
    out.push_back({6, AS::wtilde(0, 1), 2, lambda_product(1, 0, 0), std::nullopt, [](int n) {
                       if (n != 0) return std::vector<BilinearProduct>{};
                       return std::vector{lambda_product(1, 0, 0), lambda_product(0, 1, 0), lambda_product(0, 0, 1)};
                   }});
    out.push_back({7, AS::virasoro(), 2, zero_product(), witt_product({{0, 1}}),
                   [](int) { return std::vector<BilinearProduct>{}; }});
    return out;
}

struct TransposedPoissonOutcome {
    int id = 0;
    AxiomReport at_delta;           // sample at the stated δ
    std::vector<std::pair<Scalar, AxiomReport>> at_others;  // sample at every other sampled δ
    std::optional<AxiomReport> witness_at_delta;
    CandidateSpace space;           // symmetric 1/δ-biderivations
    std::vector<bool> family_matches;  // per certified degree: space == family span on the core
    bool passes_at_delta() const { return at_delta.pass; }
    bool fails_elsewhere() const {
        if (witness_at_delta) return !witness_at_delta->pass;
        for (const auto& [d, r] : at_others)
            if (!r.pass) return true;
        return false;
    }
    bool family_match() const {
        for (bool b : family_matches)
            if (!b) return false;
        return true;
    }
};

inline TransposedPoissonOutcome run_transposed_poisson_case(const TransposedPoissonCase& c, const Window& w) {
    TransposedPoissonOutcome out;
    out.id = c.id;
    out.at_delta = transposed_poisson_check(c.algebra, c.sample, c.delta, w);
    for (const auto& d : sampled_deltas())
        if (d != c.delta) out.at_others.emplace_back(d, transposed_poisson_check(c.algebra, c.sample, d, w));
    if (c.witness) out.witness_at_delta = transposed_poisson_check(c.algebra, *c.witness, c.delta, w);
    out.space = transposed_poisson_space(c.algebra, c.delta, w);
    const WindowAlgebra A(c.algebra, w);
    for (const auto& d : out.space.degrees) {
        const BilinearCoords C(A, d.degree);
        std::vector<SparseRow> rows;
        for (const auto& p : c.family(d.degree)) rows.push_back(C.vectorize(restrict_product(p, A, d.degree)));
        const auto fam = project_indices(SubspaceBasis(C.labels(), rows), C.core_indices());
        out.family_matches.push_back(span_equal(d.core, fam));
    }
    return out;
}

/// Dimension of the space of commutative post-Lie structures found in the
/// symmetric δ=1 biderivation span: the Λ family on W~(0,1), none elsewhere.
inline std::size_t stated_post_lie_dimension(const AlgebraSpec& g) {
    return g.family == Family::Wtilde && g.a == 0 && g.b == 1 ? 3 : 0;
}

}  // namespace bider

#pragma once

#include "bider/solver.hpp"

#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bider {

enum class EntryKind { Derivation, Biderivation, LinearMap };

inline std::string kind_name(EntryKind k) {
    switch (k) {
        case EntryKind::Derivation: return "derivation";
        case EntryKind::Biderivation: return "biderivation";
        case EntryKind::LinearMap: return "linear-map";
    }
    return "?";
}

/// A named map with its formula. Per-n entries take the degree as parameter; fixed
/// entries only exist in `fixed_degree`.
struct CatalogEntry {
    std::string name;
    EntryKind kind;
    std::string formula;
    std::string applicability;
    std::string classification;
    std::optional<int> fixed_degree;
    std::function<bool(const AlgebraSpec&)> exists_on;
    std::function<bool(const AlgebraSpec&, const Scalar& delta)> applies;
    std::function<Element(const AlgebraSpec&, int n, const BasisVector&, const BasisVector&)> bilinear;
    std::function<Element(const AlgebraSpec&, int n, const BasisVector&)> linear;

    bool per_n() const { return !fixed_degree.has_value(); }
    bool has_degree(int n) const { return !fixed_degree || *fixed_degree == n; }
};

namespace detail {

using K = BasisVector::Kind;
inline bool is_L(const BasisVector& v) { return v.kind == K::L; }
inline bool is_I(const BasisVector& v) { return v.kind == K::I; }
inline bool fam(const AlgebraSpec& g, Family f) { return g.family == f; }
inline bool params(const AlgebraSpec& g, const Scalar& a, const Scalar& b) { return g.a == a && g.b == b; }
inline const Scalar half(1, 2);

inline std::vector<CatalogEntry> build_catalog() {
    std::vector<CatalogEntry> c;
    auto bider = [&](std::string name, std::string formula, std::string appl, std::string cls, std::optional<int> deg,
                     std::function<bool(const AlgebraSpec&)> on, std::function<bool(const AlgebraSpec&, const Scalar&)> ap,
                     std::function<Element(const AlgebraSpec&, int, const BasisVector&, const BasisVector&)> f) {
        c.push_back({std::move(name), EntryKind::Biderivation, std::move(formula), std::move(appl), std::move(cls), deg,
                     std::move(on), std::move(ap), std::move(f), {}});
    };
    auto linear = [&](EntryKind kind, std::string name, std::string formula, std::string appl, std::string cls,
                      std::optional<int> deg, std::function<bool(const AlgebraSpec&)> on,
                      std::function<bool(const AlgebraSpec&, const Scalar&)> ap,
                      std::function<Element(const AlgebraSpec&, int, const BasisVector&)> f) {
        c.push_back({std::move(name), kind, std::move(formula), std::move(appl), std::move(cls), deg, std::move(on),
                     std::move(ap), {}, std::move(f)});
    };

    // δ-biderivations
    bider("pi", "pi(x,y) = [x,y]", "Witt or W(a,b), delta = 1", "biderivations", 0,
          [](const AlgebraSpec& g) { return fam(g, Family::Witt) || fam(g, Family::W); },
          [](const AlgebraSpec&, const Scalar& d) { return d == 1; },
          [](const AlgebraSpec& g, int, const BasisVector& u, const BasisVector& v) { return bracket(g, u, v); });
    bider("pi~", "pi~(x,y) = [x,y]", "Virasoro or W~(a,b), delta = 1", "biderivations", 0,
          [](const AlgebraSpec& g) { return g.has_virasoro_center(); },
          [](const AlgebraSpec&, const Scalar& d) { return d == 1; },
          [](const AlgebraSpec& g, int, const BasisVector& u, const BasisVector& v) { return bracket(g, u, v); });
    bider("theta_n", "theta_n(L_i,L_j) = L_{n+i+j}", "Witt, delta = 1/2", "biderivations", std::nullopt,
          [](const AlgebraSpec& g) { return fam(g, Family::Witt); },
          [](const AlgebraSpec&, const Scalar& d) { return d == half; },
          [](const AlgebraSpec&, int n, const BasisVector& u, const BasisVector& v) {
              return Element(BasisVector::L(n + u.index + v.index));
          });
    bider("psi0_n", "psi0_n(L_i,L_j) = I_{i+j+n}, zero elsewhere", "W(a,0), delta = 1", "biderivations", std::nullopt,
          [](const AlgebraSpec& g) { return fam(g, Family::W) && g.b == 0; },
          [](const AlgebraSpec&, const Scalar& d) { return d == 1; },
          [](const AlgebraSpec&, int n, const BasisVector& u, const BasisVector& v) {
              if (!is_L(u) || !is_L(v)) return Element{};
              return Element(BasisVector::I(u.index + v.index + n));
          });
    bider("psi1_n", "psi1_n(L_i,L_j) = (a+i+j+n) I_{i+j+n}, zero elsewhere", "W(a,1), delta = 1", "biderivations",
          std::nullopt, [](const AlgebraSpec& g) { return fam(g, Family::W) && g.b == 1; },
          [](const AlgebraSpec&, const Scalar& d) { return d == 1; },
          [](const AlgebraSpec& g, int n, const BasisVector& u, const BasisVector& v) {
              if (!is_L(u) || !is_L(v)) return Element{};
              const int k = u.index + v.index + n;
              return Element(BasisVector::I(k), g.a + k);
          });
    bider("Theta", "Theta(L_i,L_j) = (i-j) I_{i+j}, zero elsewhere", "W(0,-1), delta = 1", "biderivations", 0,
          [](const AlgebraSpec& g) { return fam(g, Family::W) && params(g, 0, -1); },
          [](const AlgebraSpec&, const Scalar& d) { return d == 1; },
          [](const AlgebraSpec&, int, const BasisVector& u, const BasisVector& v) {
              if (!is_L(u) || !is_L(v)) return Element{};
              return Element(BasisVector::I(u.index + v.index), Scalar(u.index - v.index));
          });
    bider("Phi_n", "Phi_n(L_i,L_j) = L_{n+i+j}, Phi_n(L_i,I_j) = Phi_n(I_i,L_j) = I_{n+i+j}, Phi_n(I,I) = 0",
          "W(a,-1), delta = 1/2", "biderivations", std::nullopt,
          [](const AlgebraSpec& g) { return fam(g, Family::W) && g.b == -1; },
          [](const AlgebraSpec&, const Scalar& d) { return d == half; },
          [](const AlgebraSpec&, int n, const BasisVector& u, const BasisVector& v) {
              const int k = n + u.index + v.index;
              if (is_L(u) && is_L(v)) return Element(BasisVector::L(k));
              if (is_I(u) && is_I(v)) return Element{};
              return Element(BasisVector::I(k));
          });
    bider("Psi_n", "Psi_n(L_i,L_j) = I_{n+i+j}, zero elsewhere", "W(a,-1), delta = 1/2", "biderivations", std::nullopt,
          [](const AlgebraSpec& g) { return fam(g, Family::W) && g.b == -1; },
          [](const AlgebraSpec&, const Scalar& d) { return d == half; },
          [](const AlgebraSpec&, int n, const BasisVector& u, const BasisVector& v) {
              if (!is_L(u) || !is_L(v)) return Element{};
              return Element(BasisVector::I(n + u.index + v.index));
          });
    bider("Theta~", "Theta~(L_i,L_j) = (i-j) I_{i+j} + (i^3-i)/12 C1^-1 delta_{i+j,0}, zero elsewhere",
          "W~(0,-1), delta = 1", "biderivations", 0,
          [](const AlgebraSpec& g) { return fam(g, Family::Wtilde) && params(g, 0, -1); },
          [](const AlgebraSpec&, const Scalar& d) { return d == 1; },
          [](const AlgebraSpec&, int, const BasisVector& u, const BasisVector& v) {
              if (!is_L(u) || !is_L(v)) return Element{};
              Element e(BasisVector::I(u.index + v.index), Scalar(u.index - v.index));
              if (u.index + v.index == 0) {
                  const Scalar i(u.index);
                  e.add(BasisVector::central(CentralTag::C1_neg1), (i * i * i - i) / 12);
              }
              return e;
          });
    bider("Psi~_n", "Psi~_n(L_i,L_j) = I_{n+i+j}, zero elsewhere", "W~(a,-1) with 0 < a < 1, delta = 1/2",
          "biderivations", std::nullopt,
          [](const AlgebraSpec& g) { return fam(g, Family::Wtilde) && g.b == -1; },
          [](const AlgebraSpec& g, const Scalar& d) { return d == half && g.a > 0 && g.a < 1; },
          [](const AlgebraSpec&, int n, const BasisVector& u, const BasisVector& v) {
              if (!is_L(u) || !is_L(v)) return Element{};
              return Element(BasisVector::I(n + u.index + v.index));
          });
    const std::array<std::pair<const char*, CentralTag>, 3> abc{
        {{"A", CentralTag::C0}, {"B", CentralTag::C1_1}, {"C", CentralTag::C2_1}}};
    for (const auto& [nm, tag] : abc) {
        const CentralTag tg = tag;
        bider(nm, std::string(nm) + "(I_0,I_0) = " + std::string(central_name(tg)) + ", zero elsewhere",
              "W~(0,1), every delta", "biderivations", 0,
              [](const AlgebraSpec& g) { return fam(g, Family::Wtilde) && params(g, 0, 1); },
              [](const AlgebraSpec&, const Scalar&) { return true; },
              [tg](const AlgebraSpec&, int, const BasisVector& u, const BasisVector& v) {
                  if (u == BasisVector::I(0) && v == BasisVector::I(0)) return Element(BasisVector::central(tg));
                  return Element{};
              });
    }

    // δ-derivations of degree j
    const auto witt_or_w = [](const AlgebraSpec& g) { return fam(g, Family::Witt) || fam(g, Family::W); };
    linear(EntryKind::Derivation, "ad_L_j", "ad L_j(x) = [L_j, x]", "Witt or W(a,b), delta = 1", "derivations",
           std::nullopt, witt_or_w, [](const AlgebraSpec&, const Scalar& d) { return d == 1; },
           [](const AlgebraSpec& g, int j, const BasisVector& u) { return bracket(g, BasisVector::L(j), u); });
    linear(EntryKind::Derivation, "ad_I_j", "ad I_j(x) = [I_j, x]", "W(a,b), delta = 1", "derivations", std::nullopt,
           [](const AlgebraSpec& g) { return fam(g, Family::W); },
           [](const AlgebraSpec&, const Scalar& d) { return d == 1; },
           [](const AlgebraSpec& g, int j, const BasisVector& u) { return bracket(g, BasisVector::I(j), u); });
    linear(EntryKind::Derivation, "phi_j", "phi_j(L_i) = L_{i+j}, phi_j(I_i) = I_{i+j}",
           "Witt, or W(a,-1), delta = 1/2; phi_0 on every W(a,b)", "derivations", std::nullopt, witt_or_w,
           [](const AlgebraSpec&, const Scalar& d) { return d == half; },
           [](const AlgebraSpec&, int j, const BasisVector& u) {
               return Element(is_L(u) ? BasisVector::L(u.index + j) : BasisVector::I(u.index + j));
           });
    linear(EntryKind::Derivation, "psi_j", "psi_j(L_i) = I_{i+j}, psi_j(I_i) = 0", "W(a,-1), delta = 1/2",
           "derivations", std::nullopt, [](const AlgebraSpec& g) { return fam(g, Family::W) && g.b == -1; },
           [](const AlgebraSpec&, const Scalar& d) { return d == half; },
           [](const AlgebraSpec&, int j, const BasisVector& u) {
               return is_L(u) ? Element(BasisVector::I(u.index + j)) : Element{};
           });
    linear(EntryKind::Derivation, "D1", "D1(L_i) = 0, D1(I_i) = I_i", "W(a,b), delta = 1", "derivations", 0,
           [](const AlgebraSpec& g) { return fam(g, Family::W); },
           [](const AlgebraSpec&, const Scalar& d) { return d == 1; },
           [](const AlgebraSpec&, int, const BasisVector& u) { return is_I(u) ? Element(u) : Element{}; });
    for (int k = 0; k <= 2; ++k)
        linear(EntryKind::Derivation, "D2^" + std::to_string(k),
               "D2^" + std::to_string(k) + "(L_i) = i^" + std::to_string(k + 1) + " I_i, D2^" + std::to_string(k) +
                   "(I_i) = 0",
               "W(0," + std::to_string(k) + "), delta = 1", "derivations", 0,
               [k](const AlgebraSpec& g) { return fam(g, Family::W) && params(g, 0, k); },
               [](const AlgebraSpec&, const Scalar& d) { return d == 1; },
               [k](const AlgebraSpec&, int, const BasisVector& u) {
                   if (!is_L(u)) return Element{};
                   mpz_class p;
                   mpz_pow_ui(p.get_mpz_t(), mpz_class(u.index).get_mpz_t(), static_cast<unsigned long>(k + 1));
                   return Element(BasisVector::I(u.index), Scalar(p));
               });
    linear(EntryKind::Derivation, "D3", "D3(L_i) = I_i, D3(I_i) = 0", "W(0,0), delta = 1", "derivations", 0,
           [](const AlgebraSpec& g) { return fam(g, Family::W) && params(g, 0, 0); },
           [](const AlgebraSpec&, const Scalar& d) { return d == 1; },
           [](const AlgebraSpec&, int, const BasisVector& u) {
               return is_L(u) ? Element(BasisVector::I(u.index)) : Element{};
           });

    // commuting linear maps
    linear(EntryKind::LinearMap, "id", "id(x) = x", "every algebra", "commuting maps", 0,
           [](const AlgebraSpec&) { return true; }, [](const AlgebraSpec&, const Scalar&) { return true; },
           [](const AlgebraSpec&, int, const BasisVector& u) { return Element(u); });
    linear(EntryKind::LinearMap, "Theta_1", "Theta_1(L_i) = I_i, Theta_1(I_i) = 0", "W(0,-1)", "commuting maps", 0,
           [](const AlgebraSpec& g) { return fam(g, Family::W) && params(g, 0, -1); },
           [](const AlgebraSpec&, const Scalar&) { return true; },
           [](const AlgebraSpec&, int, const BasisVector& u) {
               return is_L(u) ? Element(BasisVector::I(u.index)) : Element{};
           });
    linear(EntryKind::LinearMap, "Theta~_1", "Theta~_1(L_i) = I_i, zero on I_i and on the center", "W~(0,-1)",
           "commuting maps", 0, [](const AlgebraSpec& g) { return fam(g, Family::Wtilde) && params(g, 0, -1); },
           [](const AlgebraSpec&, const Scalar&) { return true; },
           [](const AlgebraSpec&, int, const BasisVector& u) {
               return is_L(u) ? Element(BasisVector::I(u.index)) : Element{};
           });
    return c;
}

}  // namespace detail

inline const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> c = detail::build_catalog();
    return c;
}

inline const CatalogEntry& catalog_entry(std::string_view name) {
    for (const auto& e : catalog())
        if (e.name == name) return e;
    throw std::invalid_argument("unknown catalog entry '" + std::string(name) + "'");
}

/// Whether a derivation entry belongs to the classification at this degree. The
/// degree-dependent cases: ad I_j vanishes identically when it is zero on the window,
/// and on W(a,b) with b != -1 only phi_0 is a 1/2-derivation.
inline bool derivation_applies(const CatalogEntry& e, const AlgebraSpec& g, const Scalar& delta, int j) {
    if (!e.exists_on(g) || !e.applies(g, delta) || !e.has_degree(j)) return false;
    if (e.name == "phi_j" && g.family == Family::W && g.b != -1) return j == 0;
    return true;
}

/// Value of a biderivation entry on a pair of basis vectors.
inline Element entry_value(const std::string& name, const AlgebraSpec& g, int n, const BasisVector& u,
                           const BasisVector& v) {
    const auto& e = catalog_entry(name);
    if (e.kind != EntryKind::Biderivation) throw std::invalid_argument(name + " is not a bilinear map");
    if (!e.exists_on(g)) throw std::invalid_argument(name + " is not defined on " + g.name());
    if (!g.admissible(u) || !g.admissible(v)) throw std::invalid_argument("input not admissible in " + g.name());
    if (!e.has_degree(n)) throw std::invalid_argument(name + " only exists in degree " + std::to_string(*e.fixed_degree));
    if (u.is_central() || v.is_central()) return {};
    return e.bilinear(g, n, u, v);
}

/// Value of a linear entry (derivation or commuting map) on a basis vector.
inline Element entry_image(const std::string& name, const AlgebraSpec& g, int j, const BasisVector& u) {
    const auto& e = catalog_entry(name);
    if (e.kind == EntryKind::Biderivation) throw std::invalid_argument(name + " is not a linear map");
    if (!e.exists_on(g)) throw std::invalid_argument(name + " is not defined on " + g.name());
    if (!g.admissible(u)) throw std::invalid_argument("input not admissible in " + g.name());
    if (e.name == "id") return Element(u);
    if (u.is_central()) return {};
    return e.linear(g, j, u);
}

/// Window restriction of a biderivation entry of degree n.
inline HomBilinearMap restrict_bilinear(const CatalogEntry& e, const WindowAlgebra& A, int n) {
    HomBilinearMap f{n, {}};
    for (const auto& u : A.basis.vectors())
        for (const auto& v : A.basis.vectors()) {
            if (std::abs(u.degree() + v.degree() + n) > A.N()) continue;
            f.set(u, v, entry_value(e.name, A.algebra, n, u, v));
        }
    return f;
}

/// Window restriction of a linear entry of degree j.
inline HomLinearMap restrict_linear(const CatalogEntry& e, const WindowAlgebra& A, int j) {
    HomLinearMap f{j, {}};
    for (const auto& u : A.basis.vectors()) {
        if (std::abs(u.degree() + j) > A.N()) continue;
        auto img = entry_image(e.name, A.algebra, j, u);
        if (!img.is_zero()) f.images[u] = std::move(img);
    }
    return f;
}

struct NamedVector {
    std::string name;
    SparseRow vector;
};

/// Applicable biderivation entries of degree n, in solver coordinates.
inline std::vector<NamedVector> catalog_biderivations(const BilinearCoords& C, const Scalar& delta) {
    const auto& A = C.algebra();
    const int n = C.degree();
    std::vector<NamedVector> out;
    for (const auto& e : catalog()) {
        if (e.kind != EntryKind::Biderivation || !e.exists_on(A.algebra) || !e.applies(A.algebra, delta) ||
            !e.has_degree(n))
            continue;
        std::string nm = e.per_n() ? e.name.substr(0, e.name.size() - 1) + std::to_string(n) : e.name;
        out.push_back({std::move(nm), C.vectorize(restrict_bilinear(e, A, n))});
    }
    return out;
}

/// Applicable derivation entries of degree j, in solver coordinates.
inline std::vector<NamedVector> catalog_derivations(const WindowAlgebra& A, const LinearCoords& C, const Scalar& delta,
                                                    int j) {
    std::vector<NamedVector> out;
    for (const auto& e : catalog()) {
        if (e.kind != EntryKind::Derivation || !derivation_applies(e, A.algebra, delta, j)) continue;
        std::string nm = e.per_n() ? e.name.substr(0, e.name.size() - 1) + std::to_string(j) : e.name;
        out.push_back({std::move(nm), C.vectorize(restrict_linear(e, A, j))});
    }
    return out;
}

/// Whether the catalog has a classification for δ-derivations of this family.
inline bool derivations_classified(const AlgebraSpec& g) {
    return g.family == Family::Witt || g.family == Family::W;
}

inline std::vector<SparseRow> vectors_of(const std::vector<NamedVector>& v) {
    std::vector<SparseRow> out;
    for (const auto& x : v) out.push_back(x.vector);
    return out;
}

/// Canonical basis of the span of the applicable entries of degree n, in solver coordinates.
inline SubspaceBasis expected_space(const AlgebraSpec& g, const Scalar& delta, int degree, const Window& w) {
    require_certified_degree(degree, w);
    const WindowAlgebra A(g, w);
    const BilinearCoords C(A, degree);
    return SubspaceBasis(C.labels(), vectors_of(catalog_biderivations(C, delta)));
}

// ---------------------------------------------------------------------------

enum class Verdict { Confirmed, Inconclusive, Mismatch, Skipped };

inline std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Confirmed: return "confirmed";
        case Verdict::Inconclusive: return "inconclusive";
        case Verdict::Mismatch: return "mismatch";
        case Verdict::Skipped: return "skipped";
    }
    return "?";
}

/// Higher is worse: mismatch > inconclusive > confirmed, skipped counts as confirmed.
inline int severity(Verdict v) {
    switch (v) {
        case Verdict::Mismatch: return 2;
        case Verdict::Inconclusive: return 1;
        default: return 0;
    }
}

struct DegreeVerdict {
    int degree = 0;
    Verdict verdict = Verdict::Confirmed;
    std::string warning;
    std::vector<std::string> expected_entries;
    std::vector<std::string> missing_entries;  // catalog entries outside the raw space
    std::size_t expected_core_dimension = 0;
    SolveReport report;
};

namespace detail {

inline DegreeVerdict judge(SolveReport rep, const std::vector<NamedVector>& expected, bool classified) {
    DegreeVerdict dv;
    dv.degree = rep.degree;
    if (rep.delta == 0) {
        dv.verdict = Verdict::Skipped;
        dv.warning = "delta = 0: classification comparison skipped";
    } else if (!classified) {
        dv.verdict = Verdict::Skipped;
        dv.warning = "no catalog classification for " + rep.algebra.name();
    } else {
        RrefReducer red(rep.raw.rows(), rep.raw.ambient_dimension());
        for (const auto& nv : expected) {
            dv.expected_entries.push_back(nv.name);
            if (!red.in_span(nv.vector)) dv.missing_entries.push_back(nv.name);
        }
        const SubspaceBasis exp_core =
            project_indices(SubspaceBasis(rep.raw.labels(), vectors_of(expected)), rep.core_indices);
        dv.expected_core_dimension = exp_core.dimension();
        if (!dv.missing_entries.empty())
            dv.verdict = Verdict::Mismatch;
        else if (span_equal(rep.core, exp_core))
            dv.verdict = Verdict::Confirmed;
        else
            dv.verdict = Verdict::Inconclusive;
    }
    dv.report = std::move(rep);
    return dv;
}

}  // namespace detail

/// Biderivation classification check, degree by degree.
inline std::vector<DegreeVerdict> verify_case(const AlgebraSpec& g, const Scalar& delta, const std::vector<int>& degrees,
                                              const Window& w) {
    for (const int n : degrees) require_certified_degree(n, w);
    Solver s(g, w, delta);
    std::vector<DegreeVerdict> out;
    for (const int n : degrees) {
        auto rep = s.biderivations(n);
        const auto expected = catalog_biderivations(*rep.bilinear_coords, delta);
        out.push_back(detail::judge(std::move(rep), expected, true));
    }
    return out;
}

/// δ-derivation classification check, degree by degree.
inline std::vector<DegreeVerdict> verify_derivations(const AlgebraSpec& g, const Scalar& delta,
                                                     const std::vector<int>& degrees, const Window& w) {
    for (const int n : degrees) require_certified_degree(n, w);
    Solver s(g, w, delta);
    std::vector<DegreeVerdict> out;
    for (const int j : degrees) {
        auto rep = s.derivations(j);
        const auto expected = catalog_derivations(*rep.context, *rep.linear_coords, delta, j);
        out.push_back(detail::judge(std::move(rep), expected, derivations_classified(g)));
    }
    return out;
}

inline Verdict worst(const std::vector<DegreeVerdict>& v) {
    Verdict w = Verdict::Confirmed;
    for (const auto& d : v)
        if (severity(d.verdict) > severity(w)) w = d.verdict;
    return w;
}

}  // namespace bider

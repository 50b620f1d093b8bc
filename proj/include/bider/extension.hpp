#pragma once

#include "bider/solver.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace bider {

/// Induced map on the quotient by the central generators: central inputs are
/// dropped and central components of values are discarded.
inline HomBilinearMap quotient_induce(const AlgebraSpec& g, const HomBilinearMap& f) {
    if (!g.quotient()) throw std::invalid_argument(g.name() + " has no central quotient");
    HomBilinearMap out{f.degree, {}};
    for (const auto& [uv, val] : f.table) {
        if (uv.first.is_central() || uv.second.is_central()) continue;
        Element e;
        for (const auto& [t, c] : val.terms())
            if (!t.is_central()) e.add(t, c);
        out.set(uv.first, uv.second, std::move(e));
    }
    return out;
}

/// Biderivations whose values are purely central, as a subspace of the raw space.
inline SubspaceBasis central_valued_part(const SolveReport& rep) {
    const auto& C = *rep.bilinear_coords;
    const auto& wb = C.algebra().basis;
    std::vector<SparseRow> proj;
    for (const auto& r : rep.raw.rows()) {
        SparseRow p;
        for (const auto& e : r)
            if (!wb[C[e.col].t].is_central()) p.push_back(e);
        proj.push_back(std::move(p));
    }
    std::vector<SparseRow> tr;  // transpose: one row per non-central coordinate
    std::map<std::size_t, std::vector<Entry>> byc;
    for (std::size_t k = 0; k < proj.size(); ++k)
        for (const auto& e : proj[k]) byc[e.col].push_back({k, e.value});
    for (auto& [c, e] : byc) tr.push_back(make_row(std::move(e)));
    std::vector<SparseRow> out;
    for (const auto& k : certified_reduce(tr, proj.size()).kernel) {
        SparseRow acc;
        for (const auto& e : k) acc = axpy(acc, e.value, rep.raw.rows()[e.col]);
        out.push_back(std::move(acc));
    }
    return SubspaceBasis(rep.raw.labels(), out);
}

struct CenterInteraction {
    bool values_central = true;         // f(α, y), f(y, α) lie in the center
    bool vanish_on_derived = true;      // and vanish when y is a bracket
    std::string first_failure;
};

/// For every raw solution, central α and core y: f(α,y), f(y,α) are central, and
/// zero when y lies in the derived span.
inline CenterInteraction center_interaction(const SolveReport& rep) {
    CenterInteraction out;
    if (!rep.bilinear_coords || rep.delta == 0) return out;
    const auto& A = *rep.context;
    const auto& g = A.algebra;
    std::set<BasisVector> center;
    for (const auto& z : center_basis(g, A.window)) {
        if (z.terms().size() != 1) throw std::logic_error("center basis is not a set of basis vectors");
        center.insert(z.terms().begin()->first);
    }
    std::vector<BasisVector> derived, core;
    for (const auto& y : A.basis.vectors()) {
        if (!A.window.in_core(y)) continue;
        core.push_back(y);
        if (derived_membership(g, A.window, Element(y))) derived.push_back(y);
    }
    const auto maps = rep.raw_maps();
    for (const auto& f : maps)
        for (const auto& al : A.basis.vectors()) {
            if (!al.is_central()) continue;
            for (const auto& y : core) {
                for (const auto& val : {f(al, y), f(y, al)}) {
                    for (const auto& [t, c] : val.terms())
                        if (!center.count(t) && out.values_central) {
                            out.values_central = false;
                            out.first_failure = "f(" + to_string(al) + "," + to_string(y) + ") = " + to_string(val);
                        }
                    if (!val.is_zero() && std::find(derived.begin(), derived.end(), y) != derived.end() &&
                        out.vanish_on_derived) {
                        out.vanish_on_derived = false;
                        if (out.first_failure.empty())
                            out.first_failure = "f(" + to_string(al) + "," + to_string(y) + ") = " + to_string(val);
                    }
                }
            }
        }
    return out;
}

struct LiftResult {
    bool feasible = false;
    AlgebraSpec extension;
    int degree = 0;
    HomBilinearMap lift;                     // preimage plus one central correction
    SubspaceBasis corrections;               // central-valued biderivations of the extension
    std::shared_ptr<const WindowAlgebra> context;
    std::shared_ptr<const BilinearCoords> coords;

    /// Whether g is a lift, that is g - lift is a central biderivation.
    bool is_lift(const HomBilinearMap& g) const {
        if (!feasible) return false;
        return corrections.contains(axpy(coords->vectorize(g), Scalar(-1), coords->vectorize(lift)));
    }
};

/// Searches for f~ = f + h on the central extension, with h central-valued and of
/// the same degree, satisfying both biderivation equations on the window.
inline LiftResult lift_check(const AlgebraSpec& base, const HomBilinearMap& f, const AlgebraSpec& ext,
                             const Scalar& delta, const Window& w) {
    const auto q = ext.quotient();
    if (!q || !(*q == base)) throw std::invalid_argument(ext.name() + " is not a central extension of " + base.name());
    for (const auto& [uv, val] : f.table) {
        if (!base.admissible(uv.first) || !base.admissible(uv.second))
            throw std::invalid_argument("map input not in " + base.name());
        for (const auto& [t, c] : val.terms())
            if (!base.admissible(t)) throw std::invalid_argument("map value not in " + base.name());
    }
    auto A = std::make_shared<WindowAlgebra>(ext, w);
    const int n = f.degree;
    auto C = std::make_shared<BilinearCoords>(*A, n);
    const auto& wb = A->basis;
    const SparseRow fixed = C->vectorize(f);
    std::vector<Scalar> fval(C->size());
    for (const auto& e : fixed) fval[e.col] = e.value;
    std::vector<std::size_t> unknown(C->size(), static_cast<std::size_t>(-1));
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < C->size(); ++i)
        if (wb[(*C)[i].t].is_central()) {
            unknown[i] = cols.size();
            cols.push_back(i);
        }
    const std::size_t k = cols.size();

    std::vector<SparseRow> full;
    detail::RowSink sink(full);
    const int N = w.N;
    for (std::size_t x = 0; x < A->size(); ++x)
        for (std::size_t y = 0; y < A->size(); ++y)
            for (std::size_t z = 0; z < A->size(); ++z) {
                const int dx = wb.degree(x), dy = wb.degree(y), dz = wb.degree(z);
                if (detail::emitted_first(dx, dy, dz, n, N)) detail::append_first(*A, *C, delta, x, y, z, n, sink);
                if (detail::emitted_second(dx, dy, dz, n, N)) detail::append_second(*A, *C, delta, x, y, z, n, sink);
            }
    std::vector<SparseRow> aug, hom;
    for (const auto& r : full) {
        std::vector<Entry> e;
        Scalar rhs = 0;
        for (const auto& x : r) {
            if (unknown[x.col] != static_cast<std::size_t>(-1))
                e.push_back({unknown[x.col], x.value});
            else
                rhs += x.value * fval[x.col];
        }
        auto h = make_row(e);
        if (!is_zero(rhs)) e.push_back({k, rhs});
        auto a = make_row(std::move(e));
        if (!a.empty()) aug.push_back(std::move(a));
        if (!h.empty()) hom.push_back(std::move(h));
    }

    LiftResult out;
    out.extension = ext;
    out.degree = n;
    out.context = A;
    out.coords = C;
    const auto red = certified_reduce(aug, k + 1, false);
    for (const auto& r : red.rref)
        if (r.front().col == k) return out;
    out.feasible = true;
    SparseRow lift = fixed;
    for (const auto& r : red.rref)
        if (r.back().col == k) lift = axpy(lift, -r.back().value, SparseRow{{cols[r.front().col], Scalar(1)}});
    out.lift = C->materialize(lift);
    out.lift.degree = n;
    std::vector<SparseRow> corr;
    for (const auto& v : certified_reduce(hom, k).kernel) {
        SparseRow m;
        for (const auto& e : v) m.push_back({cols[e.col], e.value});
        corr.push_back(make_row(std::move(m)));
    }
    out.corrections = SubspaceBasis(C->labels(), corr);
    return out;
}

}  // namespace bider

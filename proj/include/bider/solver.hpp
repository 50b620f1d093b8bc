#pragma once

#include "bider/maps.hpp"

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bider {

/// Window δ-derivation system of one degree d: unknowns are the coordinates (u, t)
/// of g(u) for every u with |deg u + d| <= N; one equation per pair x < y such that
/// [x,y], g(x), g(y) and g([x,y]) all stay in the window.
struct DerivationSystem {
    int degree = 0;
    LinearCoords coords;
    std::size_t equations = 0;
    ReducedSystem red;
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> kernel_by_coord;

    DerivationSystem(const WindowAlgebra& A, const Scalar& delta, int d) : degree(d), coords(A, d) {
        const auto& wb = A.basis;
        const auto& bt = A.table;
        const int N = A.N();
        auto in = [N](int k) { return std::abs(k) <= N; };
        std::vector<SparseRow> rows;
        std::map<std::size_t, std::vector<Entry>> comp;
        for (std::size_t x = 0; x < A.size(); ++x) {
            const int dx = wb.degree(x);
            if (!in(dx + d)) continue;
            for (std::size_t y = x + 1; y < A.size(); ++y) {
                const int dy = wb.degree(y);
                if (!in(dx + dy) || !in(dy + d) || !in(dx + dy + d)) continue;
                ++equations;
                comp.clear();
                for (const auto t : wb.of_degree(dx + d))
                    for (const auto& [w, s] : bt(t, y)) comp[w].push_back({coords.index(x, t), delta * s});
                for (const auto t : wb.of_degree(dy + d))
                    for (const auto& [w, s] : bt(x, t)) comp[w].push_back({coords.index(y, t), delta * s});
                for (const auto& [u, s] : bt(x, y))
                    for (const auto t : wb.of_degree(wb.degree(u) + d)) comp[t].push_back({coords.index(u, t), -s});
                for (auto& [w, e] : comp) {
                    auto r = make_row(std::move(e));
                    if (!r.empty()) rows.push_back(std::move(r));
                }
            }
        }
        red = certified_reduce(rows, coords.size());
        kernel_by_coord.resize(coords.size());
        for (std::size_t k = 0; k < red.kernel.size(); ++k)
            for (const auto& e : red.kernel[k]) kernel_by_coord[e.col].emplace_back(k, e.value);
    }
};

/// Result of one homogeneous solve.
struct SolveReport {
    std::string kind;  // "derivation", "biderivation" or "full-biderivation"
    AlgebraSpec algebra;
    Scalar delta;
    int degree = 0;
    Window window;
    std::size_t raw_dimension = 0;
    std::size_t constraint_count = 0;
    std::size_t unknown_count = 0;
    SubspaceBasis raw;   // canonical basis in solver coordinates
    SubspaceBasis core;  // projection onto core coordinates
    std::vector<std::size_t> core_indices;

    std::shared_ptr<const WindowAlgebra> context;
    std::shared_ptr<const LinearCoords> linear_coords;
    std::shared_ptr<const BilinearCoords> bilinear_coords;

    std::vector<HomBilinearMap> raw_maps() const {
        std::vector<HomBilinearMap> out;
        for (const auto& r : raw.rows()) out.push_back(bilinear_coords->materialize(r));
        return out;
    }
    std::vector<HomLinearMap> raw_linear_maps() const {
        std::vector<HomLinearMap> out;
        for (const auto& r : raw.rows()) out.push_back(linear_coords->materialize(r, degree));
        return out;
    }
};

inline void require_certified_degree(int degree, const Window& w) {
    if (std::abs(degree) > w.core_radius())
        throw std::out_of_range("degree " + std::to_string(degree) + " outside the certified range |n| <= " +
                                std::to_string(w.core_radius()));
}

/// Solves δ-derivation and δ-biderivation systems for one algebra, window and δ,
/// caching the per-degree derivation systems that every biderivation solve reuses.
class Solver {
public:
    Solver(AlgebraSpec g, Window w, Scalar delta)
        : A_(std::make_shared<WindowAlgebra>(std::move(g), w)), delta_(std::move(delta)) {}

    const WindowAlgebra& context() const { return *A_; }
    const Scalar& delta() const { return delta_; }

    const DerivationSystem& system(int d) {
        auto it = cache_.find(d);
        if (it == cache_.end()) it = cache_.emplace(d, std::make_unique<DerivationSystem>(*A_, delta_, d)).first;
        return *it->second;
    }

    SolveReport derivations(int d) {
        const auto& D = system(d);
        auto coords = std::make_shared<LinearCoords>(*A_, d);
        SolveReport rep = base("derivation", d);
        rep.constraint_count = D.equations;
        rep.unknown_count = coords->size();
        rep.raw = SubspaceBasis::from_canonical(coords->labels(), D.red.kernel);
        rep.core_indices = coords->core_indices();
        rep.linear_coords = std::move(coords);
        return finish(std::move(rep));
    }

    /// Homogeneous degree-n biderivations. Each column restriction f(., z) is
    /// parametrised by the kernel of its derivation system, then every row
    /// restriction f(x, .) is forced into the kernel of its own system.
    SolveReport biderivations(int n) {
        const auto& wb = A_->basis;
        const std::size_t B = A_->size();
        std::vector<const DerivationSystem*> col(B);
        std::vector<std::size_t> poff(B + 1, 0);
        std::size_t equations = 0;
        for (std::size_t z = 0; z < B; ++z) {
            col[z] = &system(wb.degree(z) + n);
            poff[z + 1] = poff[z] + col[z]->red.kernel.size();
            equations += col[z]->equations;
        }
        std::vector<SparseRow> rows;
        for (std::size_t x = 0; x < B; ++x) {
            const auto& Dx = system(wb.degree(x) + n);
            equations += Dx.equations;
            for (const auto& r : Dx.red.rref) {
                std::vector<Entry> acc;
                for (const auto& e : r) {
                    const auto [v, t] = Dx.coords[e.col];
                    const auto* Dv = col[v];
                    const auto cj = Dv->coords.index(x, t);
                    for (const auto& [k, kv] : Dv->kernel_by_coord[cj]) acc.push_back({poff[v] + k, e.value * kv});
                }
                auto row = make_row(std::move(acc));
                if (!row.empty()) rows.push_back(std::move(row));
            }
        }
        const auto params = certified_reduce(rows, poff[B]);

        auto coords = std::make_shared<BilinearCoords>(*A_, n);
        std::vector<SparseRow> fvecs;
        for (const auto& kv : params.kernel) {
            std::vector<Entry> acc;
            for (const auto& e : kv) {
                const std::size_t z = static_cast<std::size_t>(std::upper_bound(poff.begin(), poff.end(), e.col) - poff.begin()) - 1;
                const auto& K = col[z]->red.kernel[e.col - poff[z]];
                for (const auto& ke : K) {
                    const auto [x, t] = col[z]->coords[ke.col];
                    acc.push_back({coords->index(x, z, t), e.value * ke.value});
                }
            }
            fvecs.push_back(make_row(std::move(acc)));
        }
        SolveReport rep = base("biderivation", n);
        rep.constraint_count = equations;
        rep.unknown_count = coords->size();
        rep.raw = SubspaceBasis(coords->labels(), fvecs);
        rep.core_indices = coords->core_indices();
        rep.bilinear_coords = std::move(coords);
        return finish(std::move(rep));
    }

private:
    SolveReport base(std::string kind, int degree) const {
        SolveReport rep;
        rep.kind = std::move(kind);
        rep.algebra = A_->algebra;
        rep.delta = delta_;
        rep.degree = degree;
        rep.window = A_->window;
        rep.context = A_;
        return rep;
    }
    static SolveReport finish(SolveReport rep) {
        rep.raw_dimension = rep.raw.dimension();
        rep.core = project_indices(rep.raw, rep.core_indices);
        return rep;
    }

    std::shared_ptr<WindowAlgebra> A_;
    Scalar delta_;
    std::map<int, std::unique_ptr<DerivationSystem>> cache_;
};

inline SolveReport derivation_space(const AlgebraSpec& g, const Scalar& delta, int degree, const Window& w) {
    require_certified_degree(degree, w);
    return Solver(g, w, delta).derivations(degree);
}

inline SolveReport biderivation_space(const AlgebraSpec& g, const Scalar& delta, int degree, const Window& w) {
    require_certified_degree(degree, w);
    return Solver(g, w, delta).biderivations(degree);
}

// ---------------------------------------------------------------------------
// Direct assembly over all degrees at once, used to test the gradation.

namespace detail {

inline bool in_window(int k, int N) { return std::abs(k) <= N; }

/// δ[x,f(y,z)] + δ[f(x,z),y] = f([x,y],z) is emitted on the degree-n component iff
/// [x,y], f(y,z), f(x,z) and f([x,y],z) all stay in the window.
inline bool emitted_first(int dx, int dy, int dz, int n, int N) {
    return in_window(dx + dy, N) && in_window(dy + dz + n, N) && in_window(dx + dz + n, N) &&
           in_window(dx + dy + dz + n, N);
}

/// δ[f(x,y),z] + δ[y,f(x,z)] = f(x,[y,z]), mirrored rule.
inline bool emitted_second(int dx, int dy, int dz, int n, int N) {
    return in_window(dy + dz, N) && in_window(dx + dy + n, N) && in_window(dx + dz + n, N) &&
           in_window(dx + dy + dz + n, N);
}

class RowSink {
public:
    explicit RowSink(std::vector<SparseRow>& rows) : rows_(rows) {}
    void add(std::size_t component, std::size_t col, Scalar v) { comp_[component].push_back({col, std::move(v)}); }
    void flush() {
        for (auto& [w, e] : comp_) {
            auto r = make_row(std::move(e));
            if (!r.empty()) rows_.push_back(std::move(r));
        }
        comp_.clear();
    }

private:
    std::vector<SparseRow>& rows_;
    std::map<std::size_t, std::vector<Entry>> comp_;
};

inline void append_first(const WindowAlgebra& A, const BilinearCoords& C, const Scalar& delta, std::size_t x,
                         std::size_t y, std::size_t z, int n, RowSink& sink) {
    const auto& wb = A.basis;
    const auto& bt = A.table;
    for (const auto t : wb.of_degree(wb.degree(y) + wb.degree(z) + n))
        for (const auto& [w, s] : bt(x, t)) sink.add(w, C.index(y, z, t), delta * s);
    for (const auto t : wb.of_degree(wb.degree(x) + wb.degree(z) + n))
        for (const auto& [w, s] : bt(t, y)) sink.add(w, C.index(x, z, t), delta * s);
    for (const auto& [u, s] : bt(x, y))
        for (const auto t : wb.of_degree(wb.degree(u) + wb.degree(z) + n)) sink.add(t, C.index(u, z, t), -s);
    sink.flush();
}

inline void append_second(const WindowAlgebra& A, const BilinearCoords& C, const Scalar& delta, std::size_t x,
                          std::size_t y, std::size_t z, int n, RowSink& sink) {
    const auto& wb = A.basis;
    const auto& bt = A.table;
    for (const auto t : wb.of_degree(wb.degree(x) + wb.degree(y) + n))
        for (const auto& [w, s] : bt(t, z)) sink.add(w, C.index(x, y, t), delta * s);
    for (const auto t : wb.of_degree(wb.degree(x) + wb.degree(z) + n))
        for (const auto& [w, s] : bt(y, t)) sink.add(w, C.index(x, z, t), delta * s);
    for (const auto& [u, s] : bt(y, z))
        for (const auto t : wb.of_degree(wb.degree(x) + wb.degree(u) + n)) sink.add(t, C.index(x, u, t), -s);
    sink.flush();
}

}  // namespace detail

/// Biderivations without the homogeneity restriction: unknowns f(u,v) are arbitrary
/// window elements, and each triple contributes one equation per output degree
/// under the same emission rule as the homogeneous solve.
inline SolveReport full_window_biderivations(const AlgebraSpec& g, const Scalar& delta, const Window& w) {
    auto A = std::make_shared<WindowAlgebra>(g, w);
    auto coords = std::make_shared<BilinearCoords>(BilinearCoords::full(*A));
    const auto& wb = A->basis;
    const int N = w.N;
    std::vector<SparseRow> rows;
    detail::RowSink sink(rows);
    std::size_t equations = 0;
    for (std::size_t x = 0; x < A->size(); ++x)
        for (std::size_t y = 0; y < A->size(); ++y)
            for (std::size_t z = 0; z < A->size(); ++z) {
                const int dx = wb.degree(x), dy = wb.degree(y), dz = wb.degree(z);
                for (int n = -3 * N - 1; n <= 3 * N + 1; ++n) {
                    if (detail::emitted_first(dx, dy, dz, n, N)) {
                        ++equations;
                        detail::append_first(*A, *coords, delta, x, y, z, n, sink);
                    }
                    if (detail::emitted_second(dx, dy, dz, n, N)) {
                        ++equations;
                        detail::append_second(*A, *coords, delta, x, y, z, n, sink);
                    }
                }
            }
    const auto red = certified_reduce(rows, coords->size());
    SolveReport rep;
    rep.kind = "full-biderivation";
    rep.algebra = g;
    rep.delta = delta;
    rep.window = w;
    rep.constraint_count = equations;
    rep.unknown_count = coords->size();
    rep.raw = SubspaceBasis::from_canonical(coords->labels(), red.kernel);
    rep.raw_dimension = rep.raw.dimension();
    rep.core_indices = coords->core_indices();
    rep.core = project_indices(rep.raw, rep.core_indices);
    rep.context = A;
    rep.bilinear_coords = std::move(coords);
    return rep;
}

}  // namespace bider

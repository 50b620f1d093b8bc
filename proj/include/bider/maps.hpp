#pragma once

#include "bider/algebra.hpp"

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace bider {

/// Linear map given by images of basis vectors; missing entries are zero.
struct HomLinearMap {
    int degree = 0;
    std::map<BasisVector, Element> images;

    Element operator()(const BasisVector& u) const {
        auto it = images.find(u);
        return it == images.end() ? Element{} : it->second;
    }
    Element operator()(const Element& x) const {
        Element out;
        for (const auto& [u, c] : x.terms()) out += c * (*this)(u);
        return out;
    }
};

/// Bilinear map given by values on basis pairs; missing entries are zero.
struct HomBilinearMap {
    int degree = 0;
    std::map<std::pair<BasisVector, BasisVector>, Element> table;

    Element operator()(const BasisVector& u, const BasisVector& v) const {
        auto it = table.find({u, v});
        return it == table.end() ? Element{} : it->second;
    }
    Element operator()(const Element& x, const Element& y) const {
        Element out;
        for (const auto& [u, cu] : x.terms())
            for (const auto& [v, cv] : y.terms()) out += (cu * cv) * (*this)(u, v);
        return out;
    }
    void set(const BasisVector& u, const BasisVector& v, Element e) {
        if (e.is_zero())
            table.erase({u, v});
        else
            table[{u, v}] = std::move(e);
    }
    HomBilinearMap transposed() const {
        HomBilinearMap t{degree, {}};
        for (const auto& [k, e] : table) t.table[{k.second, k.first}] = e;
        return t;
    }
    bool is_zero() const { return table.empty(); }
};

/// Shared context for one algebra on one window.
struct WindowAlgebra {
    AlgebraSpec algebra;
    Window window;
    WindowBasis basis;
    BracketTable table;

    WindowAlgebra(AlgebraSpec g, Window w) : algebra(std::move(g)), window(w), basis(algebra, w.N), table(algebra, basis) {}

    std::size_t size() const { return basis.size(); }
    int N() const { return window.N; }
    bool in_core(std::size_t i) const { return window.in_core(basis[i]); }
};

/// Coordinates (u, t) of linear maps on the window: the coefficient of t in phi(u).
/// Coordinates are ordered lexicographically by (u, t).
class LinearCoords {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    /// All (u, t) with deg t = deg u + d.
    LinearCoords(const WindowAlgebra& A, int d) : A_(&A), index_(A.size() * A.size(), npos) {
        for (std::size_t u = 0; u < A.size(); ++u)
            for (const auto t : A.basis.of_degree(A.basis.degree(u) + d)) add(u, t);
    }

    /// Union over a set of degrees, still in (u, t) order.
    LinearCoords(const WindowAlgebra& A, const std::vector<int>& degrees) : A_(&A), index_(A.size() * A.size(), npos) {
        for (std::size_t u = 0; u < A.size(); ++u)
            for (std::size_t t = 0; t < A.size(); ++t)
                if (std::find(degrees.begin(), degrees.end(), A.basis.degree(t) - A.basis.degree(u)) != degrees.end())
                    add(u, t);
    }

    std::size_t size() const { return coords_.size(); }
    const std::pair<std::size_t, std::size_t>& operator[](std::size_t i) const { return coords_[i]; }
    std::size_t index(std::size_t u, std::size_t t) const { return index_[u * A_->size() + t]; }

    std::vector<std::string> labels() const {
        std::vector<std::string> out;
        out.reserve(coords_.size());
        for (const auto& [u, t] : coords_) out.push_back(to_string(A_->basis[u]) + "->" + to_string(A_->basis[t]));
        return out;
    }
    std::vector<std::size_t> core_indices() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < coords_.size(); ++i)
            if (A_->in_core(coords_[i].first) && A_->in_core(coords_[i].second)) out.push_back(i);
        return out;
    }

    SparseRow vectorize(const HomLinearMap& f) const {
        std::vector<Entry> e;
        for (const auto& [u, img] : f.images) {
            const auto ui = A_->basis.index_of(u);
            if (ui == WindowBasis::npos) continue;
            for (const auto& [t, c] : img.terms()) {
                const auto ti = A_->basis.index_of(t);
                const auto k = ti == WindowBasis::npos ? npos : index(ui, ti);
                if (k == npos) throw std::invalid_argument("linear map value outside the coordinate space");
                e.push_back({k, c});
            }
        }
        return make_row(std::move(e));
    }
    HomLinearMap materialize(const SparseRow& r, int degree = 0) const {
        HomLinearMap f{degree, {}};
        for (const auto& e : r) f.images[A_->basis[coords_[e.col].first]].add(A_->basis[coords_[e.col].second], e.value);
        return f;
    }

private:
    void add(std::size_t u, std::size_t t) {
        index_[u * A_->size() + t] = coords_.size();
        coords_.emplace_back(u, t);
    }
    const WindowAlgebra* A_;
    std::vector<std::pair<std::size_t, std::size_t>> coords_;
    std::vector<std::size_t> index_;
};

struct BilinearCoord {
    std::size_t u, v, t;
};

/// Coordinates (u, v, t) of bilinear maps on the window: the coefficient of t in f(u, v).
/// Ordered lexicographically by (u, v, t).
class BilinearCoords {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    /// Homogeneous degree n: every (u, v) with |deg u + deg v + n| <= N.
    BilinearCoords(const WindowAlgebra& A, int n) : A_(&A), homogeneous_(true), degree_(n) {
        const std::size_t B = A.size();
        index_.assign(B * B * B, npos);
        for (std::size_t u = 0; u < B; ++u)
            for (std::size_t v = 0; v < B; ++v)
                for (const auto t : A.basis.of_degree(A.basis.degree(u) + A.basis.degree(v) + n)) add(u, v, t);
    }

    /// All degrees at once.
    static BilinearCoords full(const WindowAlgebra& A) { return BilinearCoords(A); }

    bool homogeneous() const { return homogeneous_; }
    int degree() const { return degree_; }
    std::size_t size() const { return coords_.size(); }
    const BilinearCoord& operator[](std::size_t i) const { return coords_[i]; }
    std::size_t index(std::size_t u, std::size_t v, std::size_t t) const {
        const std::size_t B = A_->size();
        return index_[(u * B + v) * B + t];
    }
    const WindowAlgebra& algebra() const { return *A_; }

    std::string label(std::size_t i) const {
        const auto& c = coords_[i];
        return "(" + to_string(A_->basis[c.u]) + "," + to_string(A_->basis[c.v]) + ")->" + to_string(A_->basis[c.t]);
    }
    std::vector<std::string> labels() const {
        std::vector<std::string> out;
        out.reserve(coords_.size());
        for (std::size_t i = 0; i < coords_.size(); ++i) out.push_back(label(i));
        return out;
    }
    std::vector<std::size_t> core_indices() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            const auto& c = coords_[i];
            if (A_->in_core(c.u) && A_->in_core(c.v) && A_->in_core(c.t)) out.push_back(i);
        }
        return out;
    }
    std::vector<std::string> core_labels() const {
        std::vector<std::string> out;
        for (const auto i : core_indices()) out.push_back(label(i));
        return out;
    }

    /// Coordinates of a map; inputs outside the window are ignored, values outside
    /// the coordinate space are an error.
    SparseRow vectorize(const HomBilinearMap& f) const {
        std::vector<Entry> e;
        for (const auto& [uv, val] : f.table) {
            const auto ui = A_->basis.index_of(uv.first);
            const auto vi = A_->basis.index_of(uv.second);
            if (ui == WindowBasis::npos || vi == WindowBasis::npos) continue;
            if (homogeneous_ && std::abs(A_->basis.degree(ui) + A_->basis.degree(vi) + degree_) > A_->N()) continue;
            for (const auto& [t, c] : val.terms()) {
                const auto ti = A_->basis.index_of(t);
                const auto k = ti == WindowBasis::npos ? npos : index(ui, vi, ti);
                if (k == npos)
                    throw std::invalid_argument("bilinear map value " + to_string(t) + " outside the coordinate space");
                e.push_back({k, c});
            }
        }
        return make_row(std::move(e));
    }

    HomBilinearMap materialize(const SparseRow& r) const {
        HomBilinearMap f{degree_, {}};
        for (const auto& e : r) {
            const auto& c = coords_[e.col];
            f.table[{A_->basis[c.u], A_->basis[c.v]}].add(A_->basis[c.t], e.value);
        }
        std::erase_if(f.table, [](const auto& kv) { return kv.second.is_zero(); });
        return f;
    }

    /// Coordinate permutation induced by f(u, v) -> f(v, u).
    std::vector<std::size_t> transpose_permutation() const {
        std::vector<std::size_t> p(coords_.size());
        for (std::size_t i = 0; i < coords_.size(); ++i) p[i] = index(coords_[i].v, coords_[i].u, coords_[i].t);
        return p;
    }

private:
    explicit BilinearCoords(const WindowAlgebra& A) : A_(&A), homogeneous_(false), degree_(0) {
        const std::size_t B = A.size();
        index_.assign(B * B * B, npos);
        for (std::size_t u = 0; u < B; ++u)
            for (std::size_t v = 0; v < B; ++v)
                for (std::size_t t = 0; t < B; ++t) add(u, v, t);
    }
    void add(std::size_t u, std::size_t v, std::size_t t) {
        const std::size_t B = A_->size();
        index_[(u * B + v) * B + t] = coords_.size();
        coords_.push_back({u, v, t});
    }

    const WindowAlgebra* A_;
    bool homogeneous_;
    int degree_;
    std::vector<BilinearCoord> coords_;
    std::vector<std::size_t> index_;
};

inline SparseRow permute(const SparseRow& r, const std::vector<std::size_t>& perm) {
    std::vector<Entry> e;
    e.reserve(r.size());
    for (const auto& x : r) e.push_back({perm[x.col], x.value});
    return make_row(std::move(e));
}

}  // namespace bider

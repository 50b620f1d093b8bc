#pragma once

#include "bider/echelon.hpp"
#include "bider/scalar.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace bider {

// ---------------------------------------------------------------------------
// Sparse row helpers

inline SparseRow make_row(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) { return x.col < y.col; });
    SparseRow out;
    for (auto& e : entries) {
        if (!out.empty() && out.back().col == e.col)
            out.back().value += e.value;
        else
            out.push_back(std::move(e));
    }
    std::erase_if(out, [](const Entry& e) { return is_zero(e.value); });
    return out;
}

inline SparseRow dense_to_row(const std::vector<Scalar>& dense) {
    SparseRow r;
    for (std::size_t i = 0; i < dense.size(); ++i)
        if (!is_zero(dense[i])) r.push_back({i, dense[i]});
    return r;
}

inline Scalar dot(const SparseRow& x, const SparseRow& y) {
    Scalar s = 0;
    std::size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
        if (x[i].col < y[j].col)
            ++i;
        else if (y[j].col < x[i].col)
            ++j;
        else
            s += x[i++].value * y[j++].value;
    }
    return s;
}

/// a + f*b
inline SparseRow axpy(const SparseRow& a, const Scalar& f, const SparseRow& b) {
    SparseRow out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].col < b[j].col)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].col < a[i].col) {
            Scalar v = f * b[j].value;
            if (!is_zero(v)) out.push_back({b[j].col, std::move(v)});
            ++j;
        } else {
            Scalar v = a[i].value + f * b[j].value;
            if (!is_zero(v)) out.push_back({a[i].col, std::move(v)});
            ++i;
            ++j;
        }
    }
    return out;
}

/// Canonical RREF of the span of `rows` over `cols` columns.
inline std::vector<SparseRow> rref_rows(const std::vector<SparseRow>& rows, std::size_t cols) {
    Echelon<RationalField> ech(cols);
    for (const auto& r : rows) ech.insert(r);
    return ech.rref();
}

/// Reduction against a fixed RREF. Reusable scratch space makes repeated
/// membership tests cheap.
class RrefReducer {
public:
    RrefReducer(const std::vector<SparseRow>& rref, std::size_t cols)
        : rref_(&rref), pivot_(cols, npos), acc_(cols), mark_(cols, 0) {
        for (std::size_t i = 0; i < rref.size(); ++i) pivot_[rref[i].front().col] = i;
    }

    SparseRow remainder(const SparseRow& row) {
        touched_.clear();
        for (const auto& e : row) touch(e.col) += e.value;
        for (const auto& e : row) {
            const auto pi = pivot_[e.col];
            if (pi == npos) continue;
            const Scalar f = acc_[e.col];
            if (is_zero(f)) continue;
            for (const auto& pe : (*rref_)[pi]) touch(pe.col) -= f * pe.value;
        }
        std::sort(touched_.begin(), touched_.end());
        SparseRow out;
        for (const auto c : touched_) {
            if (!is_zero(acc_[c])) out.push_back({c, acc_[c]});
            acc_[c] = 0;
            mark_[c] = 0;
        }
        return out;
    }

    bool in_span(const SparseRow& row) { return remainder(row).empty(); }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    Scalar& touch(std::size_t c) {
        if (!mark_[c]) {
            mark_[c] = 1;
            touched_.push_back(c);
        }
        return acc_[c];
    }
    const std::vector<SparseRow>* rref_;
    std::vector<std::size_t> pivot_;
    std::vector<Scalar> acc_;
    std::vector<char> mark_;
    std::vector<std::size_t> touched_;
};

inline SparseRow reduce_by_rref(const SparseRow& row, const std::vector<SparseRow>& rref, std::size_t cols) {
    return RrefReducer(rref, cols).remainder(row);
}

inline std::vector<std::size_t> pivot_index_of(const std::vector<SparseRow>& rref, std::size_t cols) {
    std::vector<std::size_t> idx(cols, static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < rref.size(); ++i) idx[rref[i].front().col] = i;
    return idx;
}

/// Canonical basis of {v : R v = 0} for R in RREF.
inline std::vector<SparseRow> kernel_of_rref(const std::vector<SparseRow>& rref, std::size_t cols) {
    const auto pidx = pivot_index_of(rref, cols);
    // column f (free) -> list of (pivot col, coefficient R[r][f])
    std::vector<std::vector<Entry>> by_free(cols);
    for (const auto& r : rref)
        for (std::size_t k = 1; k < r.size(); ++k) by_free[r[k].col].push_back({r.front().col, -r[k].value});
    std::vector<SparseRow> vecs;
    for (std::size_t f = 0; f < cols; ++f) {
        if (pidx[f] != static_cast<std::size_t>(-1)) continue;
        std::vector<Entry> v = by_free[f];
        v.push_back({f, Scalar(1)});
        vecs.push_back(make_row(std::move(v)));
    }
    return rref_rows(vecs, cols);
}

// ---------------------------------------------------------------------------
// Certified exact nullspace for large, heavily redundant systems.
//
// Rows are first filtered modulo 2^61-1 to pick a maximal independent subset,
// which is then row-reduced exactly. Every remaining row is checked exactly
// against the resulting RREF; any row outside its span is added and the
// reduction repeated. The output is therefore the exact rational RREF of the
// full system regardless of the prime.

struct ReducedSystem {
    std::size_t cols = 0;
    std::vector<SparseRow> rref;
    std::vector<SparseRow> kernel;
    std::size_t rank() const { return rref.size(); }
};

inline ReducedSystem certified_reduce(const std::vector<SparseRow>& rows, std::size_t cols,
                                      bool want_kernel = true) {
    using MF = MersenneField;
    Echelon<MF> mod(cols);
    std::vector<char> selected(rows.size(), 0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        Echelon<MF>::Row mr;
        mr.reserve(rows[i].size());
        bool ok = true;
        for (const auto& e : rows[i]) {
            auto v = MF::from(e.value);
            if (!v) {
                ok = false;
                break;
            }
            if (*v) mr.push_back({e.col, *v});
        }
        if (!ok) {
            selected[i] = 1;
            continue;
        }
        if (mod.insert(mr)) selected[i] = 1;
    }
    Echelon<RationalField> exact(cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (selected[i]) exact.insert(rows[i]);
    ReducedSystem out;
    out.cols = cols;
    for (;;) {
        out.rref = exact.rref();
        RrefReducer red(out.rref, cols);
        bool grew = false;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (selected[i]) continue;
            if (!red.in_span(rows[i])) {
                selected[i] = 1;
                exact.insert(rows[i]);
                grew = true;
            }
        }
        if (!grew) break;
    }
    if (want_kernel) out.kernel = kernel_of_rref(out.rref, cols);
    return out;
}

// ---------------------------------------------------------------------------
// Labelled sparse matrix

class SparseMatrix {
public:
    SparseMatrix() = default;

    /// Builds from (row, col, value) triplets. Zero values are dropped; a repeated
    /// (row, col) pair or a repeated label is an error.
    SparseMatrix(std::vector<std::string> row_labels, std::vector<std::string> col_labels,
                 const std::vector<std::tuple<std::size_t, std::size_t, Scalar>>& entries)
        : row_labels_(std::move(row_labels)), col_labels_(std::move(col_labels)), rows_(row_labels_.size()) {
        check_unique(row_labels_, "row");
        check_unique(col_labels_, "column");
        std::map<std::pair<std::size_t, std::size_t>, Scalar> seen;
        for (const auto& [r, c, v] : entries) {
            if (r >= rows_.size() || c >= col_labels_.size()) throw std::out_of_range("matrix entry out of range");
            if (!seen.emplace(std::make_pair(r, c), v).second) throw std::invalid_argument("duplicate matrix entry");
        }
        for (auto& [rc, v] : seen)
            if (!is_zero(v)) rows_[rc.first].push_back({rc.second, v});
    }

    /// Unlabelled convenience constructor from a dense table; labels are "r<i>" / "c<j>".
    static SparseMatrix from_dense(const std::vector<std::vector<Scalar>>& dense, std::size_t cols) {
        std::vector<std::string> rl, cl;
        for (std::size_t i = 0; i < dense.size(); ++i) rl.push_back("r" + std::to_string(i));
        for (std::size_t j = 0; j < cols; ++j) cl.push_back("c" + std::to_string(j));
        std::vector<std::tuple<std::size_t, std::size_t, Scalar>> e;
        for (std::size_t i = 0; i < dense.size(); ++i)
            for (std::size_t j = 0; j < dense[i].size(); ++j) e.emplace_back(i, j, dense[i][j]);
        return SparseMatrix(std::move(rl), std::move(cl), e);
    }

    static SparseMatrix from_rows(std::vector<std::string> row_labels, std::vector<std::string> col_labels,
                                  std::vector<SparseRow> rows) {
        SparseMatrix m;
        m.row_labels_ = std::move(row_labels);
        m.col_labels_ = std::move(col_labels);
        m.rows_ = std::move(rows);
        check_unique(m.row_labels_, "row");
        check_unique(m.col_labels_, "column");
        return m;
    }

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return col_labels_.size(); }
    const std::vector<SparseRow>& row_data() const { return rows_; }
    const std::vector<std::string>& row_labels() const { return row_labels_; }
    const std::vector<std::string>& col_labels() const { return col_labels_; }

    Scalar at(std::size_t r, std::size_t c) const {
        for (const auto& e : rows_.at(r))
            if (e.col == c) return e.value;
        return 0;
    }

private:
    static void check_unique(const std::vector<std::string>& labels, const char* axis) {
        std::unordered_set<std::string> s;
        for (const auto& l : labels)
            if (!s.insert(l).second) throw std::invalid_argument(std::string("duplicate ") + axis + " label '" + l + "'");
    }

    std::vector<std::string> row_labels_;
    std::vector<std::string> col_labels_;
    std::vector<SparseRow> rows_;
};

/// Canonical reduced row echelon form. Rows are labelled by their pivot column.
inline SparseMatrix rref(const SparseMatrix& m) {
    auto rows = certified_reduce(m.row_data(), m.cols(), false).rref;
    std::vector<std::string> labels;
    for (const auto& r : rows) labels.push_back("pivot:" + m.col_labels()[r.front().col]);
    return SparseMatrix::from_rows(std::move(labels), m.col_labels(), std::move(rows));
}

// ---------------------------------------------------------------------------
// Subspaces of a labelled coordinate space, kept in canonical RREF.

class SubspaceBasis {
public:
    SubspaceBasis() = default;
    SubspaceBasis(std::vector<std::string> labels, const std::vector<SparseRow>& spanning)
        : labels_(std::move(labels)), rows_(rref_rows(spanning, labels_.size())) {}

    static SubspaceBasis from_canonical(std::vector<std::string> labels, std::vector<SparseRow> rows) {
        SubspaceBasis b;
        b.labels_ = std::move(labels);
        b.rows_ = std::move(rows);
        return b;
    }

    std::size_t ambient_dimension() const { return labels_.size(); }
    std::size_t dimension() const { return rows_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<SparseRow>& rows() const { return rows_; }

    bool contains(const SparseRow& v) const {
        return reduce_by_rref(v, rows_, labels_.size()).empty();
    }

    std::size_t label_index(const std::string& label) const {
        for (std::size_t i = 0; i < labels_.size(); ++i)
            if (labels_[i] == label) return i;
        throw std::invalid_argument("unknown label '" + label + "'");
    }

private:
    std::vector<std::string> labels_;
    std::vector<SparseRow> rows_;
};

inline SubspaceBasis nullspace(const SparseMatrix& m) {
    auto red = certified_reduce(m.row_data(), m.cols(), true);
    return SubspaceBasis::from_canonical(m.col_labels(), std::move(red.kernel));
}

inline void require_same_ambient(const SubspaceBasis& u, const SubspaceBasis& v) {
    if (u.labels() != v.labels()) throw std::invalid_argument("subspaces live in different coordinate spaces");
}

inline bool span_equal(const SubspaceBasis& u, const SubspaceBasis& v) {
    require_same_ambient(u, v);
    if (u.dimension() != v.dimension()) return false;
    for (std::size_t i = 0; i < u.dimension(); ++i) {
        const auto& x = u.rows()[i];
        const auto& y = v.rows()[i];
        if (x.size() != y.size()) return false;
        for (std::size_t k = 0; k < x.size(); ++k)
            if (x[k].col != y[k].col || x[k].value != y[k].value) return false;
    }
    return true;
}

inline SubspaceBasis subspace_sum(const SubspaceBasis& u, const SubspaceBasis& v) {
    require_same_ambient(u, v);
    std::vector<SparseRow> all = u.rows();
    all.insert(all.end(), v.rows().begin(), v.rows().end());
    return SubspaceBasis(u.labels(), all);
}

inline std::size_t intersection_dimension(const SubspaceBasis& u, const SubspaceBasis& v) {
    return u.dimension() + v.dimension() - subspace_sum(u, v).dimension();
}

/// Projection onto the coordinates in `kept` (indices into u's labels, any order);
/// the result keeps u's coordinate order.
inline SubspaceBasis project_indices(const SubspaceBasis& u, std::vector<std::size_t> kept) {
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    std::vector<std::size_t> remap(u.ambient_dimension(), static_cast<std::size_t>(-1));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < kept.size(); ++i) {
        if (kept[i] >= u.ambient_dimension()) throw std::out_of_range("projection index out of range");
        remap[kept[i]] = i;
        labels.push_back(u.labels()[kept[i]]);
    }
    std::vector<SparseRow> rows;
    for (const auto& r : u.rows()) {
        SparseRow p;
        for (const auto& e : r)
            if (remap[e.col] != static_cast<std::size_t>(-1)) p.push_back({remap[e.col], e.value});
        rows.push_back(std::move(p));
    }
    return SubspaceBasis(std::move(labels), rows);
}

inline SubspaceBasis project(const SubspaceBasis& u, const std::vector<std::string>& kept_labels) {
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < u.labels().size(); ++i) index.emplace(u.labels()[i], i);
    std::vector<std::size_t> kept;
    for (const auto& l : kept_labels) {
        auto it = index.find(l);
        if (it == index.end()) throw std::invalid_argument("unknown label '" + l + "'");
        kept.push_back(it->second);
    }
    return project_indices(u, std::move(kept));
}

}  // namespace bider

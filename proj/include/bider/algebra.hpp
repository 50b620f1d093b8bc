#pragma once

#include "bider/basis.hpp"
#include "bider/linalg.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bider {

enum class Family { Witt, Virasoro, W, Wtilde };

inline std::string family_key(Family f) {
    switch (f) {
        case Family::Witt: return "witt";
        case Family::Virasoro: return "virasoro";
        case Family::W: return "w";
        case Family::Wtilde: return "wtilde";
    }
    return "?";
}

inline Family parse_family(std::string_view s) {
    if (s == "witt") return Family::Witt;
    if (s == "virasoro") return Family::Virasoro;
    if (s == "w") return Family::W;
    if (s == "wtilde") return Family::Wtilde;
    throw std::invalid_argument("unknown family '" + std::string(s) + "'");
}

/// Family tag plus the parameters (a, b); a and b are ignored for Witt and Virasoro.
struct AlgebraSpec {
    Family family = Family::Witt;
    Scalar a = 0;
    Scalar b = 0;

    static AlgebraSpec witt() { return {Family::Witt, 0, 0}; }
    static AlgebraSpec virasoro() { return {Family::Virasoro, 0, 0}; }
    static AlgebraSpec w(Scalar a, Scalar b) { return {Family::W, std::move(a), std::move(b)}; }
    static AlgebraSpec wtilde(Scalar a, Scalar b) { return {Family::Wtilde, std::move(a), std::move(b)}; }

    bool has_I() const { return family == Family::W || family == Family::Wtilde; }
    bool has_parameters() const { return has_I(); }
    bool has_virasoro_center() const { return family == Family::Virasoro || family == Family::Wtilde; }

    /// Central generators actually produced by the bracket at these parameters.
    std::vector<CentralTag> central_tags() const {
        std::vector<CentralTag> out;
        if (family == Family::Virasoro) out.push_back(CentralTag::C0);
        if (family != Family::Wtilde) return out;
        out.push_back(CentralTag::C0);
        const Scalar half(1, 2);
        if (a == 0 && b == 0) out.insert(out.end(), {CentralTag::C1_0, CentralTag::C2_0});
        if (a == 0 && b == 1) out.insert(out.end(), {CentralTag::C1_1, CentralTag::C2_1});
        if (a == 0 && b == -1) out.push_back(CentralTag::C1_neg1);
        if (a == half && b == 0) out.push_back(CentralTag::C2_half0);
        std::sort(out.begin(), out.end());
        return out;
    }

    bool admissible(const BasisVector& v) const {
        switch (v.kind) {
            case BasisVector::Kind::L: return true;
            case BasisVector::Kind::I: return has_I();
            case BasisVector::Kind::Central: {
                const auto tags = central_tags();
                return std::find(tags.begin(), tags.end(), v.tag()) != tags.end();
            }
        }
        return false;
    }

    /// The quotient by the central generators: Virasoro -> Witt, W~(a,b) -> W(a,b).
    std::optional<AlgebraSpec> quotient() const {
        if (family == Family::Virasoro) return witt();
        if (family == Family::Wtilde) return w(a, b);
        return std::nullopt;
    }

    /// Perfect unless (a,b) = (0,1) in the W families.
    bool perfect() const { return !(has_I() && a == 0 && b == 1); }

    std::string name() const {
        switch (family) {
            case Family::Witt: return "Witt";
            case Family::Virasoro: return "Virasoro";
            case Family::W: return "W(" + to_string(a) + "," + to_string(b) + ")";
            case Family::Wtilde: return "Wtilde(" + to_string(a) + "," + to_string(b) + ")";
        }
        return "?";
    }

    friend bool operator==(const AlgebraSpec& x, const AlgebraSpec& y) {
        if (x.family != y.family) return false;
        return !x.has_parameters() || (x.a == y.a && x.b == y.b);
    }
};

/// a - floor(a), the representative in [0, 1).
inline Scalar normalize_a(const Scalar& a) { return a - Scalar(floor_of(a)); }

namespace detail {

inline Element bracket_L_I(const AlgebraSpec& g, int m, int n) {
    Element e(BasisVector::I(m + n), -(g.a + n + g.b * m));
    if (g.family == Family::Wtilde && g.a == 0 && m + n == 0) {
        const Scalar ms(m);
        if (g.b == 0) e.add(BasisVector::central(CentralTag::C1_0), ms * ms + ms);
        if (g.b == 1) {
            e.add(BasisVector::central(CentralTag::C1_1), ms);
            e.add(BasisVector::central(CentralTag::C2_1), 1);
        }
        if (g.b == -1) e.add(BasisVector::central(CentralTag::C1_neg1), (ms * ms * ms - ms) / 12);
    }
    return e;
}

}  // namespace detail

/// Bracket of two basis vectors.
inline Element bracket(const AlgebraSpec& g, const BasisVector& u, const BasisVector& v) {
    if (!g.admissible(u) || !g.admissible(v))
        throw std::invalid_argument("basis vector not admissible in " + g.name() + ": " +
                                    (g.admissible(u) ? to_string(v) : to_string(u)));
    using K = BasisVector::Kind;
    if (u.is_central() || v.is_central()) return {};
    const int m = u.index, n = v.index;
    if (u.kind == K::L && v.kind == K::L) {
        Element e(BasisVector::L(m + n), Scalar(m - n));
        if (g.has_virasoro_center() && m + n == 0) {
            const Scalar ms(m);
            e.add(BasisVector::central(CentralTag::C0), (ms * ms * ms - ms) / 12);
        }
        return e;
    }
    if (u.kind == K::L) return detail::bracket_L_I(g, m, n);
    if (v.kind == K::L) return -detail::bracket_L_I(g, n, m);
    Element e;
    if (g.family == Family::Wtilde && g.b == 0) {
        if (g.a == 0 && m + n == 0) e.add(BasisVector::central(CentralTag::C2_0), m);
        if (g.a == Scalar(1, 2) && m + n + 1 == 0) e.add(BasisVector::central(CentralTag::C2_half0), 2 * m + 1);
    }
    return e;
}

/// Bilinear extension of a basis bracket to elements.
template <class BasisBracket>
Element bracket_elements(BasisBracket&& br, const Element& x, const Element& y) {
    Element out;
    for (const auto& [u, cu] : x.terms())
        for (const auto& [v, cv] : y.terms()) {
            Element t = br(u, v);
            t *= cu * cv;
            out += t;
        }
    return out;
}

inline Element bracket(const AlgebraSpec& g, const Element& x, const Element& y) {
    return bracket_elements([&](const BasisVector& u, const BasisVector& v) { return bracket(g, u, v); }, x, y);
}

// ---------------------------------------------------------------------------

/// Truncation [-N, N] with core sub-window [-N+M, N-M].
struct Window {
    int N = 12;
    int M = 4;

    Window() = default;
    Window(int n, int m = 4) : N(n), M(m) {
        if (M < 0 || N <= M) throw std::invalid_argument("window needs N > M >= 0");
    }

    int core_radius() const { return N - M; }
    bool in_window(int degree) const { return std::abs(degree) <= N; }
    bool in_core(const BasisVector& v) const { return v.is_central() || std::abs(v.index) <= N - M; }
};

/// Window basis of an algebra in canonical order, with per-degree lookup.
class WindowBasis {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    WindowBasis(const AlgebraSpec& g, int N) : N_(N) {
        for (int n = -N; n <= N; ++n) basis_.push_back(BasisVector::L(n));
        if (g.has_I())
            for (int n = -N; n <= N; ++n) basis_.push_back(BasisVector::I(n));
        for (auto t : g.central_tags()) basis_.push_back(BasisVector::central(t));
        by_degree_.resize(2 * N + 1);
        pos_in_degree_.resize(basis_.size());
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            auto& slot = by_degree_[basis_[i].degree() + N];
            pos_in_degree_[i] = slot.size();
            slot.push_back(i);
        }
    }

    int N() const { return N_; }
    std::size_t size() const { return basis_.size(); }
    const std::vector<BasisVector>& vectors() const { return basis_; }
    const BasisVector& operator[](std::size_t i) const { return basis_[i]; }
    int degree(std::size_t i) const { return basis_[i].degree(); }

    /// Indices of the basis vectors of degree d (empty outside the window).
    const std::vector<std::size_t>& of_degree(int d) const {
        static const std::vector<std::size_t> none;
        if (std::abs(d) > N_) return none;
        return by_degree_[d + N_];
    }
    std::size_t pos_in_degree(std::size_t i) const { return pos_in_degree_[i]; }

    std::size_t index_of(const BasisVector& v) const {
        auto it = std::lower_bound(basis_.begin(), basis_.end(), v);
        return (it != basis_.end() && *it == v) ? static_cast<std::size_t>(it - basis_.begin()) : npos;
    }

private:
    int N_;
    std::vector<BasisVector> basis_;
    std::vector<std::vector<std::size_t>> by_degree_;
    std::vector<std::size_t> pos_in_degree_;
};

/// Sparse element over window basis indices.
using IndexedElement = std::vector<std::pair<std::size_t, Scalar>>;

/// Brackets of all window basis pairs whose result degree lies in the window.
class BracketTable {
public:
    BracketTable(const AlgebraSpec& g, const WindowBasis& wb) : n_(wb.size()), table_(n_ * n_), ok_(n_ * n_, 0) {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) {
                if (std::abs(wb.degree(i) + wb.degree(j)) > wb.N()) continue;
                ok_[i * n_ + j] = 1;
                const Element e = bracket(g, wb[i], wb[j]);
                for (const auto& [v, c] : e.terms()) {
                    const auto k = wb.index_of(v);
                    if (k == WindowBasis::npos) throw std::logic_error("bracket left the window basis");
                    table_[i * n_ + j].emplace_back(k, c);
                }
            }
    }

    bool defined(std::size_t i, std::size_t j) const { return ok_[i * n_ + j]; }
    const IndexedElement& operator()(std::size_t i, std::size_t j) const { return table_[i * n_ + j]; }

private:
    std::size_t n_;
    std::vector<IndexedElement> table_;
    std::vector<char> ok_;
};

// ---------------------------------------------------------------------------

struct JacobiReport {
    bool pass = true;
    std::size_t triples_checked = 0;
    std::optional<std::array<BasisVector, 3>> first_violation;
    Element residual;
};

/// Jacobi identity on all window triples whose pairwise and triple degree sums stay
/// within [-N, N]. `br` is any basis bracket, which lets tests feed corrupted tables.
template <class BasisBracket>
JacobiReport jacobi_check(const std::vector<BasisVector>& basis, int N, BasisBracket&& br) {
    JacobiReport rep;
    auto in = [N](int d) { return std::abs(d) <= N; };
    for (const auto& x : basis)
        for (const auto& y : basis) {
            if (!in(x.degree() + y.degree())) continue;
            for (const auto& z : basis) {
                if (!in(y.degree() + z.degree()) || !in(x.degree() + z.degree()) ||
                    !in(x.degree() + y.degree() + z.degree()))
                    continue;
                ++rep.triples_checked;
                Element s = bracket_elements(br, br(x, y), Element(z));
                s += bracket_elements(br, br(y, z), Element(x));
                s += bracket_elements(br, br(z, x), Element(y));
                if (!s.is_zero()) {
                    rep.pass = false;
                    rep.first_violation = std::array<BasisVector, 3>{x, y, z};
                    rep.residual = s;
                    return rep;
                }
            }
        }
    return rep;
}

inline JacobiReport jacobi_check(const AlgebraSpec& g, const Window& w) {
    const WindowBasis wb(g, w.N);
    return jacobi_check(wb.vectors(), w.N, [&](const BasisVector& u, const BasisVector& v) { return bracket(g, u, v); });
}

namespace detail {

inline Element element_from_row(const WindowBasis& wb, const std::vector<std::size_t>& idx, const SparseRow& r) {
    Element e;
    for (const auto& en : r) e.add(wb[idx[en.col]], en.value);
    return e;
}

}  // namespace detail

/// Exact annihilator of the bracket inside the window, degree by degree.
inline std::vector<Element> center_basis(const AlgebraSpec& g, const Window& w) {
    const WindowBasis wb(g, w.N);
    const BracketTable bt(g, wb);
    std::vector<Element> out;
    for (int k = -w.N; k <= w.N; ++k) {
        const auto& idx = wb.of_degree(k);
        if (idx.empty()) continue;
        std::vector<SparseRow> rows;
        for (std::size_t y = 0; y < wb.size(); ++y) {
            if (std::abs(k + wb.degree(y)) > w.N) continue;
            std::map<std::size_t, std::vector<Entry>> comp;
            for (std::size_t c = 0; c < idx.size(); ++c)
                for (const auto& [t, s] : bt(idx[c], y)) comp[t].push_back({c, s});
            for (auto& [t, e] : comp) rows.push_back(make_row(std::move(e)));
        }
        for (const auto& v : certified_reduce(rows, idx.size()).kernel)
            out.push_back(detail::element_from_row(wb, idx, v));
    }
    return out;
}

/// Whether x lies in the span of the brackets of window basis pairs.
inline bool derived_membership(const AlgebraSpec& g, const Window& w, const Element& x) {
    for (const auto& [v, c] : x.terms()) {
        if (!g.admissible(v)) throw std::invalid_argument("basis vector not admissible: " + to_string(v));
        if (!w.in_core(v)) throw std::invalid_argument("support outside the core window: " + to_string(v));
    }
    const WindowBasis wb(g, w.N);
    const BracketTable bt(g, wb);
    std::map<int, Element> parts;
    for (const auto& [v, c] : x.terms()) parts[v.degree()].add(v, c);
    for (const auto& [k, part] : parts) {
        const auto& idx = wb.of_degree(k);
        std::vector<SparseRow> spanning;
        for (std::size_t i = 0; i < wb.size(); ++i)
            for (std::size_t j = i + 1; j < wb.size(); ++j) {
                if (wb.degree(i) + wb.degree(j) != k || !bt.defined(i, j)) continue;
                std::vector<Entry> e;
                for (const auto& [t, s] : bt(i, j)) e.push_back({wb.pos_in_degree(t), s});
                spanning.push_back(make_row(std::move(e)));
            }
        std::vector<Entry> target;
        for (const auto& [v, c] : part.terms()) target.push_back({wb.pos_in_degree(wb.index_of(v)), c});
        const auto rr = rref_rows(spanning, idx.size());
        if (!reduce_by_rref(make_row(std::move(target)), rr, idx.size()).empty()) return false;
    }
    return true;
}

}  // namespace bider

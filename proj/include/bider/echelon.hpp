#pragma once

#include "bider/scalar.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <vector>

namespace bider {

template <class T>
struct BasicEntry {
    std::size_t col;
    T value;
    friend bool operator==(const BasicEntry&, const BasicEntry&) = default;
};

/// Sparse row: entries sorted by column, no zero values.
using Entry = BasicEntry<Scalar>;
using SparseRow = std::vector<Entry>;

// ---------------------------------------------------------------------------
// Fields. Echelon<Field> needs: value_type, zero(), is_zero, sub_mul (a -= f*b),
// normalise a row by its leading entry.

struct RationalField {
    using value_type = Scalar;
    static value_type zero() { return Scalar(0); }
    static bool is_zero(const value_type& v) { return sgn(v) == 0; }
    static void sub_mul(value_type& acc, const value_type& f, const value_type& b) { acc -= f * b; }
    static value_type inverse(const value_type& v) { return Scalar(1) / v; }
    static value_type mul(const value_type& a, const value_type& b) { return a * b; }
};

/// Arithmetic modulo the Mersenne prime 2^61 - 1.
struct MersenneField {
    using value_type = std::uint64_t;
    static constexpr std::uint64_t P = (std::uint64_t{1} << 61) - 1;

    static value_type zero() { return 0; }
    static bool is_zero(value_type v) { return v == 0; }
    static value_type reduce(unsigned __int128 z) {
        std::uint64_t r = static_cast<std::uint64_t>(z & P) + static_cast<std::uint64_t>(z >> 61);
        if (r >= P) r -= P;
        return r;
    }
    static value_type mul(value_type a, value_type b) {
        return reduce(static_cast<unsigned __int128>(a) * b);
    }
    static value_type add(value_type a, value_type b) {
        std::uint64_t r = a + b;
        return r >= P ? r - P : r;
    }
    static value_type sub(value_type a, value_type b) { return a >= b ? a - b : a + P - b; }
    static void sub_mul(value_type& acc, value_type f, value_type b) { acc = sub(acc, mul(f, b)); }
    static value_type pow(value_type a, std::uint64_t e) {
        value_type r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    static value_type inverse(value_type a) { return pow(a, P - 2); }

    /// Image of a rational; empty when the denominator vanishes mod P.
    static std::optional<value_type> from(const Scalar& s) {
        const std::uint64_t den = mpz_fdiv_ui(s.get_den_mpz_t(), P);
        if (den == 0) return std::nullopt;
        const std::uint64_t num = mpz_fdiv_ui(s.get_num_mpz_t(), P);
        return mul(num, inverse(den));
    }
};

// ---------------------------------------------------------------------------

/// Incremental row echelon form over a field. Stored rows have leading
/// coefficient 1; `rref()` back-substitutes to the reduced form.
template <class Field>
class Echelon {
public:
    using T = typename Field::value_type;
    using Row = std::vector<BasicEntry<T>>;

    explicit Echelon(std::size_t cols)
        : cols_(cols), pivot_row_(cols, npos), acc_(cols, Field::zero()), mark_(cols, 0) {}

    std::size_t cols() const { return cols_; }
    std::size_t rank() const { return rows_.size(); }

    /// Reduces `row` against the stored pivots and keeps the remainder as a new
    /// pivot row when it is nonzero. Returns true iff the rank grew.
    bool insert(const Row& row) {
        Row rem = reduce(row);
        if (rem.empty()) return false;
        const T inv = Field::inverse(rem.front().value);
        for (auto& e : rem) e.value = Field::mul(e.value, inv);
        pivot_row_[rem.front().col] = rows_.size();
        rows_.push_back(std::move(rem));
        return true;
    }

    /// Remainder of `row` modulo the stored rows (zero in every pivot column).
    Row reduce(const Row& row) {
        std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> heap;
        for (const auto& e : row) {
            acc_[e.col] = e.value;
            mark_[e.col] = 1;
            heap.push(e.col);
        }
        Row out;
        while (!heap.empty()) {
            const std::size_t c = heap.top();
            heap.pop();
            mark_[c] = 0;
            if (Field::is_zero(acc_[c])) continue;
            const std::size_t pr = pivot_row_[c];
            if (pr == npos) {
                out.push_back({c, acc_[c]});
                acc_[c] = Field::zero();
                continue;
            }
            const T f = acc_[c];
            acc_[c] = Field::zero();
            const Row& p = rows_[pr];
            for (std::size_t k = 1; k < p.size(); ++k) {
                const auto col = p[k].col;
                Field::sub_mul(acc_[col], f, p[k].value);
                if (!mark_[col]) {
                    mark_[col] = 1;
                    heap.push(col);
                }
            }
        }
        return out;
    }

    /// Canonical reduced row echelon form, rows ordered by pivot column.
    std::vector<Row> rref() const {
        std::vector<std::size_t> order(rows_.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t x, std::size_t y) { return rows_[x].front().col > rows_[y].front().col; });
        std::vector<std::size_t> reduced_of(cols_, npos);
        std::vector<Row> done;
        done.reserve(rows_.size());
        std::vector<T> acc(cols_, Field::zero());
        std::vector<std::size_t> touched;
        for (const std::size_t ri : order) {
            const Row& r = rows_[ri];
            touched.clear();
            for (const auto& e : r) {
                acc[e.col] = e.value;
                touched.push_back(e.col);
            }
            for (std::size_t k = 1; k < r.size(); ++k) {
                const auto c = r[k].col;
                const std::size_t di = reduced_of[c];
                if (di == npos) continue;
                const T f = acc[c];
                if (Field::is_zero(f)) continue;
                for (const auto& e : done[di]) {
                    if (Field::is_zero(acc[e.col])) touched.push_back(e.col);
                    Field::sub_mul(acc[e.col], f, e.value);
                }
            }
            std::sort(touched.begin(), touched.end());
            touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
            Row out;
            for (const auto c : touched) {
                if (!Field::is_zero(acc[c])) out.push_back({c, acc[c]});
                acc[c] = Field::zero();
            }
            reduced_of[r.front().col] = done.size();
            done.push_back(std::move(out));
        }
        std::sort(done.begin(), done.end(),
                  [](const Row& x, const Row& y) { return x.front().col < y.front().col; });
        return done;
    }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t cols_;
    std::vector<Row> rows_;
    std::vector<std::size_t> pivot_row_;
    std::vector<T> acc_;
    std::vector<char> mark_;
};

}  // namespace bider

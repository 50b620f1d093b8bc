#pragma once

#include "bider/scalar.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bider {

enum class CentralTag : std::uint8_t { C0, C1_0, C1_1, C2_1, C1_neg1, C2_0, C2_half0 };

inline constexpr std::array<CentralTag, 7> all_central_tags{
    CentralTag::C0,      CentralTag::C1_0, CentralTag::C1_1,    CentralTag::C2_1,
    CentralTag::C1_neg1, CentralTag::C2_0, CentralTag::C2_half0};

inline std::string_view central_name(CentralTag t) {
    switch (t) {
        case CentralTag::C0: return "C0";
        case CentralTag::C1_0: return "C1^0";
        case CentralTag::C1_1: return "C1^1";
        case CentralTag::C2_1: return "C2^1";
        case CentralTag::C1_neg1: return "C1^-1";
        case CentralTag::C2_0: return "C2^0";
        case CentralTag::C2_half0: return "C2^{1/2,0}";
    }
    return "?";
}

/// One basis vector: L[n], I[n] or a central generator. Ordered by
/// (kind, index) with L < I < central and centrals in tag order.
struct BasisVector {
    enum class Kind : std::uint8_t { L, I, Central };

    Kind kind = Kind::L;
    int index = 0;  // the central tag for Kind::Central

    static constexpr BasisVector L(int n) { return {Kind::L, n}; }
    static constexpr BasisVector I(int n) { return {Kind::I, n}; }
    static constexpr BasisVector central(CentralTag t) { return {Kind::Central, static_cast<int>(t)}; }

    bool is_central() const { return kind == Kind::Central; }
    CentralTag tag() const { return static_cast<CentralTag>(index); }

    /// Grading degree; C2^{1/2,0} sits in degree -1, every other central in 0.
    int degree() const {
        if (kind != Kind::Central) return index;
        return tag() == CentralTag::C2_half0 ? -1 : 0;
    }

    auto operator<=>(const BasisVector&) const = default;
};

inline std::string to_string(const BasisVector& v) {
    switch (v.kind) {
        case BasisVector::Kind::L: return "L[" + std::to_string(v.index) + "]";
        case BasisVector::Kind::I: return "I[" + std::to_string(v.index) + "]";
        case BasisVector::Kind::Central: return std::string(central_name(v.tag()));
    }
    return "?";
}

inline BasisVector parse_basis_vector(std::string_view s) {
    for (auto t : all_central_tags)
        if (s == central_name(t)) return BasisVector::central(t);
    if (s.size() >= 4 && (s[0] == 'L' || s[0] == 'I') && s[1] == '[' && s.back() == ']') {
        const std::string inner(s.substr(2, s.size() - 3));
        std::size_t used = 0;
        int n = 0;
        try {
            n = std::stoi(inner, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == inner.size() && used > 0) return s[0] == 'L' ? BasisVector::L(n) : BasisVector::I(n);
    }
    throw std::invalid_argument("not a basis vector: '" + std::string(s) + "'");
}

/// Finite linear combination of basis vectors; zero coefficients are never stored.
class Element {
public:
    using Terms = std::map<BasisVector, Scalar>;

    Element() = default;
    Element(BasisVector v, Scalar c = 1) { add(v, c); }

    const Terms& terms() const& { return terms_; }
    Terms terms() && { return std::move(terms_); }
    bool is_zero() const { return terms_.empty(); }

    Scalar coefficient(const BasisVector& v) const {
        auto it = terms_.find(v);
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    Element& add(const BasisVector& v, const Scalar& c) {
        if (bider::is_zero(c)) return *this;
        auto [it, fresh] = terms_.try_emplace(v, c);
        if (!fresh) {
            it->second += c;
            if (bider::is_zero(it->second)) terms_.erase(it);
        }
        return *this;
    }

    Element& operator+=(const Element& o) {
        for (const auto& [v, c] : o.terms_) add(v, c);
        return *this;
    }
    Element& operator-=(const Element& o) {
        for (const auto& [v, c] : o.terms_) add(v, -c);
        return *this;
    }
    Element& operator*=(const Scalar& s) {
        if (bider::is_zero(s)) {
            terms_.clear();
            return *this;
        }
        for (auto& [v, c] : terms_) c *= s;
        return *this;
    }

    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator*(const Scalar& s, Element a) { return a *= s; }
    friend Element operator-(Element a) { return a *= Scalar(-1); }
    friend bool operator==(const Element&, const Element&) = default;

    /// Common degree of all terms; empty for zero or mixed elements.
    std::optional<int> homogeneous_degree() const {
        std::optional<int> d;
        for (const auto& [v, c] : terms_) {
            if (d && *d != v.degree()) return std::nullopt;
            d = v.degree();
        }
        return d;
    }

private:
    Terms terms_;
};

/// Stable text form, e.g. "4·L[0] + 1/2·C0"; "0" for the zero element.
inline std::string to_string(const Element& e) {
    if (e.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [v, c] : e.terms()) {
        const bool neg = sgn(c) < 0;
        const Scalar mag = neg ? Scalar(-c) : c;
        if (first)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        if (mag != 1) out += to_string(mag) + "·";
        out += to_string(v);
        first = false;
    }
    return out;
}

}  // namespace bider

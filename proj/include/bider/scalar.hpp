#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace bider {

/// Exact rational scalar. GMP keeps mpq_class values canonical: gcd(num, den) = 1,
/// den > 0, zero stored as 0/1.
using Scalar = mpq_class;

inline bool is_zero(const Scalar& s) { return sgn(s) == 0; }

/// Parses "p", "-p", "p/q" exactly. Floats and empty strings are rejected.
inline Scalar parse_scalar(std::string_view text) {
    auto digits_only = [](std::string_view s) {
        if (s.empty()) return false;
        std::size_t i = (s.front() == '-' || s.front() == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    const auto slash = text.find('/');
    const auto num = text.substr(0, slash);
    if (!digits_only(num)) throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
    mpz_class n(std::string(num.front() == '+' ? num.substr(1) : num), 10);
    mpz_class d = 1;
    if (slash != std::string_view::npos) {
        const auto den = text.substr(slash + 1);
        if (!digits_only(den) || den.front() == '-' || den.front() == '+')
            throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
        d = mpz_class(std::string(den), 10);
        if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    }
    Scalar q(n, d);
    q.canonicalize();
    return q;
}

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Scalar& s) {
    if (s.get_den() == 1) return s.get_num().get_str();
    return s.get_num().get_str() + "/" + s.get_den().get_str();
}

inline mpz_class floor_of(const Scalar& s) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
    return q;
}

}  // namespace bider

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dgl {

using Rational = mpq_class;
using Integer = mpz_class;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string to_string(const Rational& q)
{
    return q.get_str();
}

// Accepts "a", "-a", "a/b".
Rational parse_rational(const std::string& s);

inline double to_double(const Rational& q) { return q.get_d(); }

template <class S>
inline bool is_zero(const S& s) { return s == 0; }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline int sign_pow(long e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace dgl

#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace bott {

using Rational = mpq_class;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Accepts "p", "p/q", "-p/q"; result is canonical.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& x);

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline Rational inv(const Rational& x) {
    if (is_zero(x)) throw std::domain_error("division by zero");
    return Rational(1) / x;
}

}  // namespace bott

#pragma once
#include <gmpxx.h>

#include <string>

#include "momcbe/errors.hpp"

namespace momcbe {

using rational = mpq_class;

inline double to_double(const rational& r) { return r.get_d(); }

inline std::string rational_str(const rational& r) { return r.get_str(); }

// Accepts "p", "-p", "p/q", and decimal literals like "2.5" (all exact).
inline rational parse_rational(const std::string& text) {
  if (text.empty()) throw contract_error("parse_rational: empty string");
  const auto dot = text.find('.');
  try {
    if (dot == std::string::npos) {
      rational r;
      if (r.set_str(text, 10) != 0) throw contract_error("parse_rational: bad literal '" + text + "'");
      if (r.get_den() == 0) throw contract_error("parse_rational: zero denominator in '" + text + "'");
      r.canonicalize();
      return r;
    }
    const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const size_t frac_len = text.size() - dot - 1;
    if (digits.empty() || frac_len == 0) throw contract_error("parse_rational: bad literal '" + text + "'");
    mpz_class num(digits, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(frac_len));
    rational r(num, den);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw contract_error("parse_rational: bad literal '" + text + "'");
  }
}

// Rising factorial t(t+1)...(t+m-1); empty product for m == 0.
inline rational pochhammer(const rational& t, long m) {
  if (m < 0) throw contract_error("pochhammer: negative length");
  rational acc(1);
  rational factor(t);
  for (long i = 0; i < m; ++i) {
    acc *= factor;
    factor += 1;
  }
  return acc;
}

// Gamma(x + a) / Gamma(x) for integer a; exact because the offset is an integer.
inline rational gamma_ratio(const rational& x, long a) {
  if (a >= 0) return pochhammer(x, a);
  rational denom = pochhammer(x - rational(-a), -a);
  if (denom == 0) throw contract_error("gamma_ratio: pole in denominator");
  return rational(1) / denom;
}

}  // namespace momcbe

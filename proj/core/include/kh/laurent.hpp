#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "kh/ring.hpp"

namespace kh {

// Laurent polynomial in q with integer coefficients; exponent bounds tight.
class LaurentPolynomial {
public:
  LaurentPolynomial() = default;
  static LaurentPolynomial monomial(std::int64_t coeff, int exp);
  static LaurentPolynomial q_plus_qinv();  // q + q^-1

  void add_term(int exp, std::int64_t coeff);
  LaurentPolynomial operator+(const LaurentPolynomial& o) const;
  LaurentPolynomial operator-(const LaurentPolynomial& o) const;
  LaurentPolynomial operator*(const LaurentPolynomial& o) const;
  LaurentPolynomial pow(int k) const;
  bool operator==(const LaurentPolynomial&) const = default;

  bool is_zero() const { return terms_.empty(); }
  int min_exp() const;
  int max_exp() const;
  const std::map<int, std::int64_t>& terms() const { return terms_; }

  // substitute q -> q^-1
  LaurentPolynomial invert_variable() const;

  // rendered as sorted `coeff q^exp` terms, e.g. "q^1 + q^3 + q^5 - q^9"
  std::string to_string() const;

private:
  std::map<int, std::int64_t> terms_;  // exp -> coeff, no zero coeffs
};

}  // namespace kh

#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "field.hpp"

namespace fqdirs {

// Dense univariate polynomial over one field; coeffs[i] multiplies X^i and
// the representation is always trimmed, so the leading coefficient of a
// nonzero polynomial is nonzero and the zero polynomial has no coefficients.
struct Poly {
  std::vector<Fq> coeffs;

  int deg() const { return int(coeffs.size()) - 1; }  // -1 for the zero poly
  bool is_zero() const { return coeffs.empty(); }
  bool is_constant() const { return coeffs.size() <= 1; }
  Fq coeff(size_t i) const { return i < coeffs.size() ? coeffs[i] : Fq{0, 0}; }

  friend bool operator==(const Poly&, const Poly&) = default;
};

Poly poly_zero();
Poly poly_const(const FieldCtx& F, Fq c);
Poly poly_x(const FieldCtx& F);
// X^e literally; intended for small e (oracles and cross-checks).
Poly x_power(const FieldCtx& F, uint64_t e);
// Trims and validates that every coefficient lies in F.
Poly poly_from_coeffs(const FieldCtx& F, std::vector<Fq> cs);

bool poly_is_monic(const FieldCtx& F, const Poly& a);

Poly poly_add(const FieldCtx& F, const Poly& a, const Poly& b);
Poly poly_sub(const FieldCtx& F, const Poly& a, const Poly& b);
Poly poly_neg(const FieldCtx& F, const Poly& a);
Poly poly_mul(const FieldCtx& F, const Poly& a, const Poly& b);
Poly poly_pow(const FieldCtx& F, Poly a, uint64_t e);
Fq poly_eval(const FieldCtx& F, const Poly& f, Fq x);

// Division with remainder; den must be nonzero. num = quot*den + rem with
// deg rem < deg den.
std::pair<Poly, Poly> poly_divrem(const FieldCtx& F, const Poly& num, const Poly& den);

Poly poly_mulmod(const FieldCtx& F, const Poly& a, const Poly& b, const Poly& mod);

// X^q mod R by square-and-multiply, never materializing X^q. R must be
// monic of degree >= 1.
Poly xq_mod(const FieldCtx& F, const Poly& R);

// Largest power of p dividing every exponent that carries a nonzero
// coefficient; the constant term imposes no constraint. f must be
// nonconstant.
uint64_t p_power_support(const Poly& f, uint32_t p);

// Inverse of g -> g^m for a p-power m >= 1: exponents divide by m and
// coefficients take m-th roots (Frobenius is bijective). Requires every
// nonzero-coefficient exponent of f to be divisible by m.
Poly pth_root(const FieldCtx& F, const Poly& f, uint64_t m);

// Text form: space-separated coefficients from exponent 0 upward, each in
// element text form. The zero polynomial reads and prints as "0".
Poly parse_poly(const FieldCtx& F, std::string_view text);
std::string format_poly(const FieldCtx& F, const Poly& f);
// Display form such as "X^4+2X^2" with parenthesized extension
// coefficients, for log lines only.
std::string format_poly_human(const FieldCtx& F, const Poly& f);

}  // namespace fqdirs

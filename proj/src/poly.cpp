#include "poly.hpp"

#include <sstream>

namespace fqdirs {

namespace {

void trim(Poly& f) {
  while (!f.coeffs.empty() && f.coeffs.back() == Fq{0, 0}) f.coeffs.pop_back();
}

}  // namespace

Poly poly_zero() { return Poly{}; }

Poly poly_const(const FieldCtx& F, Fq c) {
  F.check(c);
  Poly f;
  if (!F.is_zero(c)) f.coeffs = {c};
  return f;
}

Poly poly_x(const FieldCtx& F) { return Poly{{F.zero(), F.one()}}; }

Poly x_power(const FieldCtx& F, uint64_t e) {
  Poly f;
  f.coeffs.assign(e + 1, F.zero());
  f.coeffs[e] = F.one();
  return f;
}

Poly poly_from_coeffs(const FieldCtx& F, std::vector<Fq> cs) {
  for (Fq c : cs) F.check(c);
  Poly f{std::move(cs)};
  trim(f);
  return f;
}

bool poly_is_monic(const FieldCtx& F, const Poly& a) {
  return !a.is_zero() && a.coeffs.back() == F.one();
}

Poly poly_add(const FieldCtx& F, const Poly& a, const Poly& b) {
  Poly r;
  r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), F.zero());
  for (size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = F.add(a.coeff(i), b.coeff(i));
  trim(r);
  return r;
}

Poly poly_sub(const FieldCtx& F, const Poly& a, const Poly& b) {
  Poly r;
  r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), F.zero());
  for (size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = F.sub(a.coeff(i), b.coeff(i));
  trim(r);
  return r;
}

Poly poly_neg(const FieldCtx& F, const Poly& a) {
  Poly r = a;
  for (Fq& c : r.coeffs) c = F.neg(c);
  return r;
}

Poly poly_mul(const FieldCtx& F, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return poly_zero();
  Poly r;
  r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, F.zero());
  for (size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i] == Fq{0, 0}) continue;
    for (size_t j = 0; j < b.coeffs.size(); ++j) {
      r.coeffs[i + j] = F.add(r.coeffs[i + j], F.mul(a.coeffs[i], b.coeffs[j]));
    }
  }
  trim(r);
  return r;
}

Poly poly_pow(const FieldCtx& F, Poly a, uint64_t e) {
  Poly r = poly_const(F, F.one());
  while (e) {
    if (e & 1) r = poly_mul(F, r, a);
    a = poly_mul(F, a, a);
    e >>= 1;
  }
  return r;
}

Fq poly_eval(const FieldCtx& F, const Poly& f, Fq x) {
  Fq acc = F.zero();
  for (size_t i = f.coeffs.size(); i-- > 0;) acc = F.add(F.mul(acc, x), f.coeffs[i]);
  return acc;
}

std::pair<Poly, Poly> poly_divrem(const FieldCtx& F, const Poly& num, const Poly& den) {
  if (den.is_zero()) throw domain_error("polynomial division by zero");
  if (num.deg() < den.deg()) return {poly_zero(), num};
  Fq lead_inv = F.inv(den.coeffs.back());
  Poly rem = num;
  Poly quot;
  quot.coeffs.assign(size_t(num.deg() - den.deg()) + 1, F.zero());
  for (int d = num.deg(); d >= den.deg(); --d) {
    Fq c = rem.coeff(size_t(d));
    if (c == Fq{0, 0}) continue;
    Fq qc = F.mul(c, lead_inv);
    size_t shift = size_t(d - den.deg());
    quot.coeffs[shift] = qc;
    for (size_t i = 0; i < den.coeffs.size(); ++i) {
      rem.coeffs[shift + i] = F.sub(rem.coeffs[shift + i], F.mul(qc, den.coeffs[i]));
    }
  }
  trim(quot);
  trim(rem);
  return {quot, rem};
}

Poly poly_mulmod(const FieldCtx& F, const Poly& a, const Poly& b, const Poly& mod) {
  return poly_divrem(F, poly_mul(F, a, b), mod).second;
}

Poly xq_mod(const FieldCtx& F, const Poly& R) {
  if (R.deg() < 1) throw domain_error("modulus must have degree at least 1");
  if (!poly_is_monic(F, R)) throw domain_error("modulus must be monic");
  Poly base = poly_divrem(F, poly_x(F), R).second;
  Poly r = poly_divrem(F, poly_const(F, F.one()), R).second;
  uint64_t e = F.q();
  while (e) {
    if (e & 1) r = poly_mulmod(F, r, base, R);
    base = poly_mulmod(F, base, base, R);
    e >>= 1;
  }
  return r;
}

uint64_t p_power_support(const Poly& f, uint32_t p) {
  if (f.is_constant()) throw domain_error("support power of a constant polynomial");
  uint32_t vmin = UINT32_MAX;
  for (size_t e = 1; e < f.coeffs.size(); ++e) {
    if (f.coeffs[e] == Fq{0, 0}) continue;
    uint32_t v = 0;
    for (uint64_t r = e; r % p == 0; r /= p) ++v;
    vmin = std::min(vmin, v);
    if (vmin == 0) break;
  }
  uint64_t s = 1;
  for (uint32_t i = 0; i < vmin; ++i) s *= p;
  return s;
}

Poly pth_root(const FieldCtx& F, const Poly& f, uint64_t m) {
  uint32_t v = 0;
  for (uint64_t r = m; r > 1; r /= F.p()) {
    if (r % F.p() != 0) throw domain_error("root order must be a power of p");
    ++v;
  }
  if (m == 0) throw domain_error("root order must be a power of p");
  if (f.is_zero()) return poly_zero();
  Poly g;
  g.coeffs.assign(size_t(f.deg()) / m + 1, F.zero());
  for (size_t e = 0; e < f.coeffs.size(); ++e) {
    if (f.coeffs[e] == Fq{0, 0}) continue;
    if (e % m != 0) throw domain_error("polynomial exponents are not divisible by the root order");
    Fq c = f.coeffs[e];
    // One p-th root is frobenius^(k-1); repeat once per factor of p in m.
    for (uint32_t step = 0; step < v; ++step) {
      for (uint32_t j = 0; j + 1 < F.k(); ++j) c = F.frobenius(c);
    }
    g.coeffs[e / m] = c;
  }
  trim(g);
  return g;
}

Poly parse_poly(const FieldCtx& F, std::string_view text) {
  std::vector<Fq> cs;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) cs.push_back(F.parse_element(tok));
  if (cs.empty()) throw parse_error("empty polynomial text");
  return poly_from_coeffs(F, std::move(cs));
}

std::string format_poly(const FieldCtx& F, const Poly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (size_t i = 0; i < f.coeffs.size(); ++i) {
    if (i) out += ' ';
    out += F.format_element(f.coeffs[i]);
  }
  return out;
}

std::string format_poly_human(const FieldCtx& F, const Poly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (size_t i = f.coeffs.size(); i-- > 0;) {
    Fq c = f.coeffs[i];
    if (c == Fq{0, 0}) continue;
    if (!out.empty()) out += '+';
    bool unit = (c == F.one());
    if (i == 0 || !unit) {
      std::string ce = F.format_element(c);
      out += (c.c1 != 0 && i > 0) ? "(" + ce + ")" : ce;
    }
    if (i == 1) out += 'X';
    if (i > 1) out += "X^" + std::to_string(i);
  }
  return out;
}

}  // namespace fqdirs

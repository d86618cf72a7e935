#include "field.hpp"

#include <cctype>

namespace fqdirs {

namespace {

bool is_odd_prime(uint32_t p) {
  if (p < 3 || p % 2 == 0) return false;
  for (uint32_t d = 3; uint64_t(d) * d <= p; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

uint64_t pow_mod(uint64_t b, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

// Least n >= 2 with n^((p-1)/2) != 1 mod p.
uint32_t least_nonresidue(uint32_t p) {
  for (uint32_t n = 2; n < p; ++n) {
    if (pow_mod(n, (p - 1) / 2, p) != 1) return n;
  }
  throw domain_error("no quadratic non-residue found");
}

}  // namespace

FieldCtx::FieldCtx(uint32_t p, uint32_t k) : p_(p), k_(k) {
  if (!is_odd_prime(p)) throw domain_error("characteristic must be an odd prime");
  if (k != 1 && k != 2) throw domain_error("extension degree must be 1 or 2");
  n_ = (k == 2) ? least_nonresidue(p) : 0;
  q_ = (k == 2) ? uint64_t(p) * p : p;
}

Fq FieldCtx::make(uint64_t c0, uint64_t c1) const {
  Fq x{uint32_t(c0 % p_), uint32_t(c1 % p_)};
  if (k_ == 1 && x.c1 != 0) throw domain_error("w-coordinate in a prime-field context");
  return x;
}

Fq FieldCtx::from_index(uint64_t i) const {
  if (i >= q_) throw domain_error("element index out of range");
  return Fq{uint32_t(i % p_), uint32_t(i / p_)};
}

Fq FieldCtx::add(Fq a, Fq b) const {
  return Fq{uint32_t((a.c0 + b.c0) % p_), uint32_t((a.c1 + b.c1) % p_)};
}

Fq FieldCtx::sub(Fq a, Fq b) const {
  return Fq{uint32_t((a.c0 + p_ - b.c0) % p_), uint32_t((a.c1 + p_ - b.c1) % p_)};
}

Fq FieldCtx::neg(Fq a) const {
  return Fq{uint32_t((p_ - a.c0) % p_), uint32_t((p_ - a.c1) % p_)};
}

Fq FieldCtx::mul(Fq a, Fq b) const {
  uint64_t a0 = a.c0, a1 = a.c1, b0 = b.c0, b1 = b.c1;
  uint64_t c0 = (a0 * b0 + a1 * b1 % p_ * n_) % p_;
  uint64_t c1 = (a0 * b1 + a1 * b0) % p_;
  return Fq{uint32_t(c0), uint32_t(c1)};
}

Fq FieldCtx::inv(Fq a) const {
  if (is_zero(a)) throw domain_error("division by zero");
  if (a.c1 == 0) return Fq{uint32_t(pow_mod(a.c0, p_ - 2, p_)), 0};
  // (c0 + c1 w)(c0 - c1 w) = c0^2 - n c1^2, a nonzero prime-field norm.
  uint64_t norm = (uint64_t(a.c0) * a.c0 + uint64_t(p_) * p_ -
                   uint64_t(a.c1) * a.c1 % p_ * n_ % p_) %
                  p_;
  uint64_t ninv = pow_mod(norm, p_ - 2, p_);
  return Fq{uint32_t(a.c0 * ninv % p_), uint32_t((p_ - a.c1) * ninv % p_)};
}

Fq FieldCtx::div(Fq a, Fq b) const { return mul(a, inv(b)); }

Fq FieldCtx::pow(Fq a, uint64_t e) const {
  Fq r = one();
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Fq FieldCtx::frobenius(Fq a) const {
  if (k_ == 1) return a;
  // w^p = n^((p-1)/2) w = -w because n is a non-residue.
  return Fq{a.c0, uint32_t((p_ - a.c1) % p_)};
}

Subfield FieldCtx::generated_subfield(std::span<const Fq> xs) const {
  uint32_t m = 1;
  for (Fq x : xs) {
    check(x);
    if (frobenius(x) != x) m = 2;
  }
  return Subfield{p_, m};
}

bool FieldCtx::subfield_contains(const Subfield& s, Fq x) const {
  if (s.p != p_) throw domain_error("subfield of a different field");
  return s.m == 2 || x.c1 == 0;
}

std::vector<Fq> FieldCtx::subfield_elements(const Subfield& s) const {
  if (s.p != p_) throw domain_error("subfield of a different field");
  if (s.m == 2 && k_ != 2) throw domain_error("subfield larger than the field");
  std::vector<Fq> out;
  uint64_t count = s.order();
  out.reserve(count);
  for (uint64_t i = 0; i < count; ++i) out.push_back(from_index(i));
  return out;
}

std::vector<Fq> FieldCtx::all_elements() const {
  std::vector<Fq> out;
  out.reserve(q_);
  for (uint64_t i = 0; i < q_; ++i) out.push_back(from_index(i));
  return out;
}

Fq FieldCtx::parse_element(std::string_view text) const {
  size_t b = 0, e = text.size();
  while (b < e && std::isspace(uint8_t(text[b]))) ++b;
  while (e > b && std::isspace(uint8_t(text[e - 1]))) --e;
  text = text.substr(b, e - b);
  if (text.empty()) throw parse_error("empty element text");

  auto take_int = [&](size_t& i) -> uint64_t {
    size_t start = i;
    uint64_t v = 0;
    while (i < text.size() && std::isdigit(uint8_t(text[i]))) {
      v = v * 10 + uint64_t(text[i] - '0');
      if (v > (uint64_t(1) << 40)) throw parse_error("coordinate too large");
      ++i;
    }
    if (i == start) throw parse_error("expected a digit in element text");
    return v;
  };

  size_t i = 0;
  uint64_t c0 = take_int(i);
  uint64_t c1 = 0;
  if (i < text.size()) {
    if (text[i] != '+') throw parse_error("malformed element text");
    ++i;
    c1 = take_int(i);
    if (i >= text.size() || text[i] != 'w') throw parse_error("malformed element text");
    ++i;
  }
  if (i != text.size()) throw parse_error("malformed element text");
  if (c1 % p_ != 0 && k_ == 1) throw parse_error("w-coordinate in a prime-field context");
  return make(c0, c1);
}

std::string FieldCtx::format_element(Fq x) const {
  if (x.c1 == 0) return std::to_string(x.c0);
  return std::to_string(x.c0) + "+" + std::to_string(x.c1) + "w";
}

void FieldCtx::check(Fq x) const {
  if (x.c0 >= p_ || x.c1 >= p_ || (k_ == 1 && x.c1 != 0)) {
    throw domain_error("element does not belong to this field");
  }
}

}  // namespace fqdirs

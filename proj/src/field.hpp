#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fqdirs {

// Malformed textual input: element, point, polynomial or set syntax.
struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A mathematical precondition was violated (division by zero, set too
// small, slope not determined, non-monic modulus, ...).
struct domain_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One element of F_p (k=1) or F_{p^2} (k=2), stored as c0 + c1*w with both
// coordinates reduced mod p. Equality is coordinate-wise; the ordering is
// the value order c0 + c1*p used for canonical set layouts.
struct Fq {
  uint32_t c0 = 0;
  uint32_t c1 = 0;

  friend constexpr bool operator==(const Fq&, const Fq&) = default;
  friend constexpr bool operator<(const Fq& a, const Fq& b) {
    return a.c1 != b.c1 ? a.c1 < b.c1 : a.c0 < b.c0;
  }
};

// Subfield of F_{p^k} of order p^m.
struct Subfield {
  uint32_t p = 0;
  uint32_t m = 1;

  uint64_t order() const { return m == 1 ? p : uint64_t(p) * p; }
  friend bool operator==(const Subfield&, const Subfield&) = default;
};

// Arithmetic context for F_p or F_{p^2}. For k=2 the extension is built as
// F_p[w]/(w^2 - n) with n the least quadratic non-residue mod p, so the
// context is canonical for a given (p, k). Elements are plain values; every
// operation takes the context explicitly. Immutable after construction.
class FieldCtx {
 public:
  // p must be an odd prime, k either 1 or 2.
  FieldCtx(uint32_t p, uint32_t k);

  uint32_t p() const { return p_; }
  uint32_t k() const { return k_; }
  uint64_t q() const { return q_; }
  // Reduction constant n with w^2 = n; zero when k == 1.
  uint32_t nonresidue() const { return n_; }

  Fq zero() const { return {0, 0}; }
  Fq one() const { return {1, 0}; }
  // Coordinates are reduced mod p; a nonzero w-coordinate needs k == 2.
  Fq make(uint64_t c0, uint64_t c1 = 0) const;

  uint64_t index(Fq x) const { return uint64_t(x.c1) * p_ + x.c0; }
  Fq from_index(uint64_t i) const;

  Fq add(Fq a, Fq b) const;
  Fq sub(Fq a, Fq b) const;
  Fq neg(Fq a) const;
  Fq mul(Fq a, Fq b) const;
  Fq inv(Fq a) const;
  Fq div(Fq a, Fq b) const;
  Fq pow(Fq a, uint64_t e) const;
  // x -> x^p. For k=2 this is the coordinate conjugation c0 - c1*w.
  Fq frobenius(Fq a) const;

  bool is_zero(Fq a) const { return a.c0 == 0 && a.c1 == 0; }
  // True iff x^p = x, equivalently the w-coordinate vanishes.
  bool in_prime_field(Fq a) const { return a.c1 == 0; }

  // Smallest subfield containing every element of xs; the empty span
  // generates the prime field.
  Subfield generated_subfield(std::span<const Fq> xs) const;
  bool subfield_contains(const Subfield& s, Fq x) const;
  std::vector<Fq> subfield_elements(const Subfield& s) const;

  // All q elements in index order.
  std::vector<Fq> all_elements() const;

  // Text forms "c0" and "c0+c1w"; integer coordinates are reduced mod p.
  Fq parse_element(std::string_view text) const;
  std::string format_element(Fq x) const;

  // Throws domain_error unless x is a reduced element of this field.
  void check(Fq x) const;

 private:
  uint32_t p_ = 0;
  uint32_t k_ = 0;
  uint32_t n_ = 0;
  uint64_t q_ = 0;
};

}  // namespace fqdirs

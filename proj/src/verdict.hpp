#pragma once

#include <cstdint>
#include <numeric>
#include <string>

namespace fqdirs {

// Checker outcome. NotApplicable: a hypothesis of the statement fails, so
// there is nothing to test. NotTriggered: the statement applies but its
// trigger condition never fired for this input.
enum class Status { Pass, Fail, NotApplicable, NotTriggered };

constexpr const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "Pass";
    case Status::Fail: return "Fail";
    case Status::NotApplicable: return "NotApplicable";
    case Status::NotTriggered: return "NotTriggered";
  }
  return "?";
}

// Exact fraction with a positive denominator, reduced. All bound
// comparisons cross-multiply in integers; no floating point anywhere.
struct Rational {
  int64_t num = 0;
  int64_t den = 1;

  static Rational make(int64_t n, int64_t d) {
    if (d == 0) return {0, 1};
    if (d < 0) { n = -n; d = -d; }
    int64_t g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    return {n, d};
  }

  friend bool operator==(const Rational&, const Rational&) = default;

  // this <= v for an integer v.
  bool leq_int(int64_t v) const { return num <= v * den; }
  // v <= this.
  bool geq_int(int64_t v) const { return v * den <= num; }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

}  // namespace fqdirs

#include "additive.hpp"

#include <algorithm>

#include "rng.hpp"

namespace fqdirs {

namespace {

std::vector<Fq> collect(const FieldCtx& F, const std::vector<char>& seen) {
  std::vector<Fq> out;
  for (uint64_t i = 0; i < seen.size(); ++i) {
    if (seen[i]) out.push_back(F.from_index(i));
  }
  return out;
}

std::string u128_str(unsigned __int128 v) {
  if (v == 0) return "0";
  std::string out;
  while (v) {
    out.insert(out.begin(), char('0' + int(v % 10)));
    v /= 10;
  }
  return out;
}

}  // namespace

std::vector<Fq> sumset(const FieldCtx& F, const std::vector<Fq>& X, const std::vector<Fq>& Y) {
  if (X.empty() || Y.empty()) throw domain_error("sumset of an empty set");
  std::vector<char> seen(F.q(), 0);
  for (Fq x : X) {
    for (Fq y : Y) seen[F.index(F.add(x, y))] = 1;
  }
  return collect(F, seen);
}

std::vector<Fq> dilate_sum(const FieldCtx& F, const std::vector<Fq>& X1, Fq r,
                           const std::vector<Fq>& X2, int sign) {
  if (X1.empty() || X2.empty()) throw domain_error("dilate sum of an empty set");
  if (sign != 1 && sign != -1) throw domain_error("sign must be +1 or -1");
  std::vector<char> seen(F.q(), 0);
  for (Fq x1 : X1) {
    for (Fq x2 : X2) {
      Fq t = F.mul(r, x2);
      seen[F.index(sign == 1 ? F.add(x1, t) : F.sub(x1, t))] = 1;
    }
  }
  return collect(F, seen);
}

DilateVerdict check_dilate_product(const FieldCtx& F, const SubsetA& X, Fq r,
                                   const PairPolicy& policy) {
  if (X.size() == 0) throw domain_error("empty set");
  DilateVerdict v;
  // Singletons have no difference ratios, so every r is admissible there.
  if (X.size() >= 2) {
    std::vector<Fq> dirs = product_directions(F, X);
    if (std::binary_search(dirs.begin(), dirs.end(), r)) {
      v.status = Status::NotApplicable;
      return v;
    }
  }
  v.status = Status::Pass;
  size_t n = X.size();

  auto pick = [&](uint64_t mask) {
    std::vector<Fq> out;
    for (size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) out.push_back(X.elems[i]);
    }
    return out;
  };
  auto check_pair = [&](uint64_t m1, uint64_t m2) {
    std::vector<Fq> X1 = pick(m1), X2 = pick(m2);
    for (int sign : {1, -1}) {
      ++v.pairs_checked;
      uint64_t got = dilate_sum(F, X1, r, X2, sign).size();
      if (got != uint64_t(X1.size()) * X2.size()) {
        v.status = Status::Fail;
        if (v.violations.size() < 8) {
          v.violations.push_back("|X1" + std::string(sign == 1 ? "+" : "-") + "rX2|=" +
                                 std::to_string(got) + " != " +
                                 std::to_string(X1.size() * X2.size()) + " for masks " +
                                 std::to_string(m1) + "," + std::to_string(m2));
        }
      }
    }
  };

  uint64_t full = (n >= 64) ? UINT64_MAX : ((uint64_t(1) << n) - 1);
  if (n <= policy.exhaustive_max) {
    for (uint64_t m1 = 1; m1 <= full; ++m1) {
      for (uint64_t m2 = 1; m2 <= full; ++m2) check_pair(m1, m2);
    }
  } else {
    v.exhaustive = false;
    CounterRng rng(policy.seed, 0xD17A7E);
    for (uint64_t i = 0; i < policy.samples; ++i) {
      uint64_t m1 = rng.next() & full;
      uint64_t m2 = rng.next() & full;
      if (!m1) m1 = 1;
      if (!m2) m2 = 1;
      check_pair(m1, m2);
    }
  }
  return v;
}

GrowthVerdict check_plunnecke(const FieldCtx& F, const SubsetA& X,
                              const std::vector<SubsetA>& Bs) {
  if (X.size() == 0) throw domain_error("empty base set");
  if (Bs.empty()) throw domain_error("no summand sets");
  std::vector<Fq> acc = Bs[0].elems;
  if (acc.empty()) throw domain_error("empty summand set");
  unsigned __int128 rhs = 1;
  for (const SubsetA& B : Bs) {
    if (B.size() == 0) throw domain_error("empty summand set");
    rhs *= sumset(F, X.elems, B.elems).size();
  }
  for (size_t i = 1; i < Bs.size(); ++i) acc = sumset(F, acc, Bs[i].elems);
  unsigned __int128 lhs = acc.size();
  for (size_t i = 1; i < Bs.size(); ++i) lhs *= X.size();
  GrowthVerdict v;
  v.lhs = u128_str(lhs);
  v.rhs = u128_str(rhs);
  v.status = (lhs <= rhs) ? Status::Pass : Status::Fail;
  return v;
}

ClosureFlags closure_flags(const FieldCtx& F, const SubsetA& A) {
  std::vector<Fq> dirs = product_directions(F, A);
  std::vector<char> member(F.q(), 0);
  for (Fq d : dirs) member[F.index(d)] = 1;
  ClosureFlags flags;
  for (Fq a : A.elems) {
    for (Fq d : dirs) {
      if (!member[F.index(F.mul(a, d))]) {
        flags.mult_closed = false;
        if (flags.mult_violations.size() < 8) {
          flags.mult_violations.push_back("a=" + F.format_element(a) +
                                          " d=" + F.format_element(d));
        }
      }
    }
  }
  for (Fq d : dirs) {
    if (!member[F.index(F.add(F.one(), d))]) {
      flags.shift_closed = false;
      if (flags.shift_violations.size() < 8) {
        flags.shift_violations.push_back("d=" + F.format_element(d));
      }
    }
  }
  return flags;
}

SubfieldVerdict check_subfield_closure(const FieldCtx& F, const SubsetA& A) {
  ClosureFlags flags = closure_flags(F, A);
  SubfieldVerdict v;
  v.hypothesis = flags.mult_closed && flags.shift_closed;
  if (!v.hypothesis) {
    v.status = Status::NotApplicable;
    return v;
  }
  std::vector<Fq> dirs = product_directions(F, A);
  Subfield sf = F.generated_subfield(A.elems);
  std::vector<Fq> elems = F.subfield_elements(sf);
  v.subfield_order = sf.order();
  v.num_directions = dirs.size();
  v.status = (dirs == elems) ? Status::Pass : Status::Fail;
  return v;
}

}  // namespace fqdirs

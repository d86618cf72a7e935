#pragma once

#include <cstdint>
#include <vector>

#include "geometry.hpp"
#include "verdict.hpp"

namespace fqdirs {

// X + Y = {x + y}; both sets must be nonempty.
std::vector<Fq> sumset(const FieldCtx& F, const std::vector<Fq>& X, const std::vector<Fq>& Y);

// X1 + r*X2 or X1 - r*X2 depending on sign (+1 / -1).
std::vector<Fq> dilate_sum(const FieldCtx& F, const std::vector<Fq>& X1, Fq r,
                           const std::vector<Fq>& X2, int sign);

// Exhaustive-or-sampled policy for the subset-pair enumeration below.
struct PairPolicy {
  uint32_t exhaustive_max = 6;   // all nonempty pairs when |X| <= this
  uint64_t samples = 512;        // sampled pairs otherwise
  uint64_t seed = 0;
};

// Cardinality identity for undetermined ratios: when r is not a ratio of
// differences of X, |X1 ± r*X2| = |X1|*|X2| for every pair of nonempty
// subsets X1, X2 of X. Ratios r in D(X) come back NotApplicable.
struct DilateVerdict {
  Status status = Status::NotApplicable;
  uint64_t pairs_checked = 0;
  bool exhaustive = true;
  std::vector<std::string> violations;
};
DilateVerdict check_dilate_product(const FieldCtx& F, const SubsetA& X, Fq r,
                                   const PairPolicy& policy);

// Sum-product growth inequality, exact in integers:
//   |B1+...+Bk| * |X|^(k-1) <= prod_i |X + Bi|.
struct GrowthVerdict {
  Status status = Status::Pass;
  std::string lhs;  // decimal strings; values can exceed 64 bits
  std::string rhs;
};
GrowthVerdict check_plunnecke(const FieldCtx& F, const SubsetA& X,
                              const std::vector<SubsetA>& Bs);

// Closure data of D(A): whether A*D(A) and 1+D(A) stay inside D(A), with
// witnesses for the first few violations.
struct ClosureFlags {
  bool mult_closed = true;
  bool shift_closed = true;
  std::vector<std::string> mult_violations;
  std::vector<std::string> shift_violations;
};
ClosureFlags closure_flags(const FieldCtx& F, const SubsetA& A);

// When both closure conditions hold, D(A) must be exactly the subfield
// generated by A; otherwise the hypothesis fails and the check is
// NotApplicable.
struct SubfieldVerdict {
  Status status = Status::NotApplicable;
  bool hypothesis = false;
  uint64_t subfield_order = 0;
  uint64_t num_directions = 0;
};
SubfieldVerdict check_subfield_closure(const FieldCtx& F, const SubsetA& A);

}  // namespace fqdirs

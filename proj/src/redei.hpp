#pragma once

#include <optional>
#include <vector>

#include "geometry.hpp"
#include "poly.hpp"
#include "verdict.hpp"

namespace fqdirs {

// Algebraic multiplicity t(y). Ordinarily a power of p extracted from the
// support of H; when H degenerates to a constant (the point set determines
// only that one direction) the convention value is q, kept behind a tag so
// it is never mistaken for a computed power.
struct AlgMult {
  bool is_q = false;
  uint64_t value = 1;  // the p-power, or q when is_q

  friend bool operator==(const AlgMult&, const AlgMult&) = default;
  std::string str() const { return is_q ? "q" : std::to_string(value); }
};

// Everything attached to one determined affine direction y of a point set:
// R(X,y) = prod (X - (a*y - b)) over the points, the unique H and Q with
// R*Q = X^q + H, deg H < |U|, deg Q = q - |U|, the geometric multiplicity
// s(y) from line counts, the algebraic multiplicity t(y) from the support
// of H, and the root witness f with f^t = H when t is a computed power.
struct DirectionProfile {
  Fq y;
  Poly R;
  Poly H;
  Poly Q;
  uint64_t s = 1;
  AlgMult t;
  std::optional<Poly> witness;
};

// Profile of a whole point set over its determined affine directions, with
// the minima that feed the direction-count bounds. Vertical is reported
// but never enters s, t, or num_affine.
struct ProfileSummary {
  std::vector<DirectionProfile> dirs;
  bool vertical = false;
  uint64_t set_size = 0;
  uint64_t s_min = 1;   // meaningful when !dirs.empty()
  AlgMult t_min;        // is_q iff every direction degenerated
};

// Monic, degree |U|; the multiplicity of each root z equals the number of
// points on the slope-y line with parameter z. Requires 1 <= |U| <= q.
Poly redei_poly(const FieldCtx& F, const PointSet& U, Fq y);

struct HQ {
  Poly H;
  Poly Q;
};
// H = -(X^q mod R_y) via modular exponentiation and Q = the quotient of
// X^q by R_y, so that R*Q = X^q + H identically.
HQ h_and_q(const FieldCtx& F, const PointSet& U, Fq y);

struct AlgMultResult {
  AlgMult t;
  std::optional<Poly> witness;
};
// t(y) from the support of H, with the p-power root of H as witness; y
// must be determined by U.
AlgMultResult t_of_direction(const FieldCtx& F, const PointSet& U, Fq y);

// Full data for one determined direction; y must be determined by U.
DirectionProfile direction_profile(const FieldCtx& F, const PointSet& U, Fq y);

// Profiles for every determined affine direction. Requires 2 <= |U| <= q.
ProfileSummary profile(const FieldCtx& F, const PointSet& U);

// Consistency and support checks over a computed summary: the division
// identity, degree accounting, root multiplicities against line counts,
// support powers of R (exactly s), H and Q (divisible by s), witness
// properties, and s <= t per direction. Violations are reported as data.
struct SupportVerdict {
  Status status = Status::Pass;
  std::vector<std::string> violations;
};
SupportVerdict verify_profile(const FieldCtx& F, const PointSet& U, const ProfileSummary& ps);

// s <= t across the summary (per direction), separated out so reports can
// count it on its own.
struct OrderVerdict {
  Status status = Status::Pass;
  std::vector<std::string> violations;
};
OrderVerdict check_s_le_t(const FieldCtx& F, const ProfileSummary& ps);

// Two-branch direction-count bound for a point set of size at most q:
//   1 = s <= t < q:  (|U|-1)/(t+1) + 1 <= |D| <= q
//   1 < s <= t < q:  (|U|-1)/(t+1) + 1 <= |D| <= (|U|-1)/(s-1) - 1
// |D| counts determined affine directions. Sets determining at most one
// direction fall outside both branches (t carries the q convention) and
// come back NotApplicable.
struct BoundsVerdict {
  Status status = Status::NotApplicable;
  std::string branch;  // "no_affine", "single_direction", "s_eq_1", "s_gt_1"
  uint64_t set_size = 0;
  uint64_t num_directions = 0;
  uint64_t s = 0;
  uint64_t t = 0;  // the computed power; unset on NotApplicable
  Rational lower;
  Rational upper;
  bool lower_ok = false;
  bool upper_ok = false;
};
BoundsVerdict check_direction_bounds(const FieldCtx& F, const ProfileSummary& ps);
BoundsVerdict check_direction_bounds(const FieldCtx& F, const PointSet& U);

// Large-dilate collapse criterion for Cartesian squares over F_{p^2}: for
// A with |A| < p and a determined ratio y of A, |y*A - A| > p forces
// s(y) = t(y) = 1 on U = A x A. Smaller dilates come back NotTriggered.
struct CollapseVerdict {
  Status status = Status::NotTriggered;
  Fq slope;
  uint64_t dilate_size = 0;
  uint64_t s = 0;
  AlgMult t;
};
CollapseVerdict check_multiplicity_collapse(const FieldCtx& F, const SubsetA& A, Fq y);

}  // namespace fqdirs

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "field.hpp"

namespace fqdirs {

// Point of the affine plane over the context field.
struct Point {
  Fq x;
  Fq y;

  friend constexpr bool operator==(const Point&, const Point&) = default;
  friend constexpr bool operator<(const Point& a, const Point& b) {
    return a.x == b.x ? a.y < b.y : a.x < b.x;
  }
};

// Subset of the field, kept sorted in value order without duplicates.
struct SubsetA {
  std::vector<Fq> elems;

  size_t size() const { return elems.size(); }
  friend bool operator==(const SubsetA&, const SubsetA&) = default;
};

// Planar point set, kept sorted without duplicates.
struct PointSet {
  std::vector<Point> pts;

  size_t size() const { return pts.size(); }
  friend bool operator==(const PointSet&, const PointSet&) = default;
};

// Directions split into affine slopes and the vertical direction, which is
// a tag rather than a field element.
struct DirectionSet {
  std::vector<Fq> affine;  // sorted in value order
  bool vertical = false;

  size_t total() const { return affine.size() + (vertical ? 1 : 0); }
};

// Outcome of the prime-coset test; c and d are meaningful only on success
// and satisfy A subset of c*F_p + d with c = a1-a0, d = a0.
struct CosetCheck {
  bool is_coset = false;
  Fq c;
  Fq d;
};

SubsetA make_subset(const FieldCtx& F, std::vector<Fq> elems);
PointSet make_pointset(const FieldCtx& F, std::vector<Point> pts);
// The Cartesian product A x A as a point set.
PointSet grid(const FieldCtx& F, const SubsetA& A);

// Direction set D(A) of A x A: all (a1-a2)/(a3-a4) with a3 != a4. Computed
// through the difference set; |A| >= 2 required.
std::vector<Fq> product_directions(const FieldCtx& F, const SubsetA& A);
// Reference enumeration by the literal four-fold loop; used as an oracle
// against the difference-set route.
std::vector<Fq> product_directions_naive(const FieldCtx& F, const SubsetA& A);

// Directions determined by pairs of distinct points; |U| >= 2 required.
DirectionSet pointset_directions(const FieldCtx& F, const PointSet& U);

// For the slope-y line family {(x, y*x - z)}: how many points of U lie on
// the line with intercept parameter z, for each z that meets U. Sorted by
// the value order of z.
std::vector<std::pair<Fq, uint32_t>> line_counts(const FieldCtx& F, const PointSet& U, Fq y);

// Largest power of p dividing every nonzero line count of direction y.
// y must be determined by U (some line of slope y holds >= 2 points).
uint64_t s_of_direction(const FieldCtx& F, const PointSet& U, Fq y);

// (A - a0) / (a1 - a0); a0 and a1 must be distinct members of A. The image
// always contains 0 and 1 and leaves D(A) unchanged.
SubsetA normalize_set(const FieldCtx& F, const SubsetA& A, Fq a0, Fq a1);

// Whether A lies inside an affine image c*F_p + d of the prime field,
// decided through the first two members; |A| >= 2 required.
CosetCheck is_affine_prime_coset(const FieldCtx& F, const SubsetA& A);
// Same test normalized through an explicit pair (for the independence
// property).
CosetCheck coset_check_with_pair(const FieldCtx& F, const SubsetA& A, Fq a0, Fq a1);

// Set text "0,1,1+1w"; point text "(x;y)".
SubsetA parse_subset_csv(const FieldCtx& F, std::string_view text);
std::string format_subset_csv(const FieldCtx& F, const SubsetA& A);
Point parse_point(const FieldCtx& F, std::string_view text);
std::string format_point(const FieldCtx& F, const Point& pt);

}  // namespace fqdirs

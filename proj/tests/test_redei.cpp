#include "doctest.h"
#include "harness.hpp"
#include "redei.hpp"

using namespace fqdirs;

namespace {

template <class Fn>
void each_subset(const FieldCtx& F, uint32_t n, Fn&& fn) {
  std::vector<uint32_t> idx(n);
  for (uint32_t i = 0; i < n; ++i) idx[i] = i;
  do {
    std::vector<Fq> elems;
    for (uint32_t e : idx) elems.push_back(F.from_index(e));
    fn(make_subset(F, std::move(elems)));
  } while (colex_next(idx, uint32_t(F.q())));
}

}  // namespace

TEST_CASE("worked profile of {0,1} x {0,1} in F_9 at slope 1") {
  FieldCtx F(3, 2);
  PointSet U = grid(F, parse_subset_csv(F, "0,1"));
  DirectionProfile d = direction_profile(F, U, F.one());

  CHECK(format_poly(F, d.R) == "0 0 2 0 1");
  CHECK(format_poly(F, d.H) == "0 0 0 2");
  CHECK(format_poly(F, d.Q) == "0 1 0 1 0 1");
  CHECK(d.Q.deg() == 5);
  CHECK(d.s == 1);
  CHECK(d.t == AlgMult{false, 3});
  REQUIRE(d.witness.has_value());
  CHECK(format_poly(F, *d.witness) == "0 2");

  // The witness cubes back to H.
  CHECK(poly_pow(F, *d.witness, 3) == d.H);
  // R vanishes exactly on the line parameters, with the right multiplicity.
  CHECK(poly_eval(F, d.R, F.make(0)) == F.zero());
  CHECK(poly_eval(F, d.R, F.make(1)) == F.zero());
  CHECK(poly_eval(F, d.R, F.make(2)) == F.zero());
}

TEST_CASE("prime-field grid in F_9 is the tight case") {
  FieldCtx F(3, 2);
  PointSet U = grid(F, parse_subset_csv(F, "0,1,2"));
  ProfileSummary ps = profile(F, U);
  REQUIRE(ps.dirs.size() == 3);
  // Two grid points share each column, so the vertical direction is
  // determined alongside the three affine ones.
  CHECK(ps.vertical);
  CHECK(ps.s_min == 3);
  CHECK(ps.t_min == AlgMult{false, 3});
  for (const DirectionProfile& d : ps.dirs) {
    CHECK(d.s == 3);
    CHECK(d.t == AlgMult{false, 3});
    CHECK(d.Q.deg() == 0);
  }
  // R(X, 1) = (X^3 - X)^3 = X^9 + 2X^3.
  CHECK(format_poly(F, ps.dirs[1].R) == "0 0 0 2 0 0 0 0 0 1");

  BoundsVerdict b = check_direction_bounds(F, ps);
  CHECK(b.status == Status::Pass);
  CHECK(b.branch == "s_gt_1");
  CHECK(b.lower == Rational{3, 1});
  CHECK(b.upper == Rational{3, 1});
  CHECK(b.num_directions == 3);

  CHECK(verify_profile(F, U, ps).status == Status::Pass);
  CHECK(check_s_le_t(F, ps).status == Status::Pass);
}

TEST_CASE("single points and degenerate directions") {
  FieldCtx F(3, 2);
  PointSet one = make_pointset(F, {{F.zero(), F.zero()}});
  HQ hq = h_and_q(F, one, F.zero());
  CHECK(hq.H.is_zero());
  CHECK(hq.Q == x_power(F, 8));

  // Two points on a horizontal line: slope 0 is the only direction, H
  // degenerates, t takes the q convention, and the bounds step aside.
  PointSet flat = make_pointset(F, {{F.zero(), F.zero()}, {F.one(), F.zero()}});
  ProfileSummary ps = profile(F, flat);
  REQUIRE(ps.dirs.size() == 1);
  CHECK(ps.dirs[0].y == F.zero());
  CHECK(ps.dirs[0].s == 1);
  CHECK(ps.dirs[0].t.is_q);
  CHECK(ps.dirs[0].t.value == 9);
  CHECK(!ps.dirs[0].witness.has_value());
  CHECK(ps.t_min.is_q);

  BoundsVerdict b = check_direction_bounds(F, ps);
  CHECK(b.status == Status::NotApplicable);
  CHECK(b.branch == "single_direction");
  CHECK(verify_profile(F, flat, ps).status == Status::Pass);
  CHECK(check_s_le_t(F, ps).status == Status::Pass);

  // A vertical pair has no affine direction at all.
  PointSet vert = make_pointset(F, {{F.zero(), F.zero()}, {F.zero(), F.one()}});
  ProfileSummary vps = profile(F, vert);
  CHECK(vps.dirs.empty());
  CHECK(vps.vertical);
  BoundsVerdict vb = check_direction_bounds(F, vps);
  CHECK(vb.status == Status::NotApplicable);
  CHECK(vb.branch == "no_affine");
}

TEST_CASE("division identity holds for every direction of every small grid") {
  FieldCtx F(3, 2);
  for (uint32_t n : {2u, 3u}) {
    each_subset(F, n, [&](const SubsetA& A) {
      PointSet U = grid(F, A);
      ProfileSummary ps = profile(F, U);
      CHECK(verify_profile(F, U, ps).status == Status::Pass);
      CHECK(check_s_le_t(F, ps).status == Status::Pass);
      BoundsVerdict b = check_direction_bounds(F, ps);
      // A Cartesian square always determines 0 and 1, so the bounds never
      // step aside and must hold.
      CHECK(b.status == Status::Pass);
      // The q convention appears exactly when at most one direction is
      // determined, which a square never achieves.
      CHECK(!ps.t_min.is_q);
      CHECK(ps.dirs.size() >= 2);
    });
  }
}

TEST_CASE("degenerate t appears exactly on collinear point sets") {
  FieldCtx F(3, 2);
  // Sample assorted point sets of 2..4 points through the plane.
  CounterRng rng(17, 0);
  for (int trial = 0; trial < 200; ++trial) {
    uint64_t n = 2 + rng.below(3);
    std::vector<Point> pts;
    for (uint64_t g : random_subset_indices(rng, F.q() * F.q(), n)) {
      pts.push_back({F.from_index(g / F.q()), F.from_index(g % F.q())});
    }
    PointSet U = make_pointset(F, std::move(pts));
    ProfileSummary ps = profile(F, U);
    CHECK(ps.t_min.is_q == (ps.dirs.size() <= 1));
    CHECK(verify_profile(F, U, ps).status == Status::Pass);
    CHECK(check_s_le_t(F, ps).status == Status::Pass);
    BoundsVerdict b = check_direction_bounds(F, ps);
    if (ps.dirs.size() >= 2) {
      CHECK(b.status == Status::Pass);
    } else {
      CHECK(b.status == Status::NotApplicable);
    }
  }
}

TEST_CASE("large dilates collapse both multiplicities in F_25") {
  FieldCtx F(5, 2);
  SubsetA A = parse_subset_csv(F, "0,1,0+1w");
  Fq w = F.make(0, 1);

  CollapseVerdict v = check_multiplicity_collapse(F, A, w);
  CHECK(v.status == Status::Pass);
  CHECK(v.dilate_size == 8);
  CHECK(v.s == 1);
  CHECK(v.t == AlgMult{false, 1});

  // Slope 0 only reaches -A, which is too small to trigger.
  CollapseVerdict quiet = check_multiplicity_collapse(F, A, F.zero());
  CHECK(quiet.status == Status::NotTriggered);
  CHECK(quiet.dilate_size == 3);
}

TEST_CASE("collapse preconditions") {
  FieldCtx f3(3, 1);
  SubsetA A3 = parse_subset_csv(f3, "0,1");
  CHECK_THROWS_AS(check_multiplicity_collapse(f3, A3, f3.one()), domain_error);

  FieldCtx F(5, 2);
  SubsetA big = parse_subset_csv(F, "0,1,2,3,4");
  CHECK_THROWS_AS(check_multiplicity_collapse(F, big, F.one()), domain_error);

  SubsetA A = parse_subset_csv(F, "0,1");
  CHECK_THROWS_AS(check_multiplicity_collapse(F, A, F.make(0, 1)), domain_error);
}

TEST_CASE("profile preconditions") {
  FieldCtx F(3, 2);
  PointSet one = make_pointset(F, {{F.zero(), F.zero()}});
  CHECK_THROWS_AS(profile(F, one), domain_error);
  CHECK_THROWS_AS(redei_poly(F, PointSet{}, F.zero()), domain_error);

  std::vector<Point> too_many;
  for (Fq x : F.all_elements()) {
    too_many.push_back({x, F.zero()});
    too_many.push_back({x, F.one()});
  }
  CHECK_THROWS_AS(redei_poly(F, make_pointset(F, std::move(too_many)), F.zero()), domain_error);

  PointSet diag = make_pointset(F, {{F.zero(), F.zero()}, {F.one(), F.one()}});
  CHECK_THROWS_AS(direction_profile(F, diag, F.zero()), domain_error);
  CHECK_THROWS_AS(t_of_direction(F, diag, F.zero()), domain_error);
}

TEST_CASE("redei polynomial multiplicities follow the line counts") {
  FieldCtx F(3, 2);
  SubsetA A = parse_subset_csv(F, "0,1,0+1w");
  PointSet U = grid(F, A);
  for (Fq y : product_directions(F, A)) {
    Poly R = redei_poly(F, U, y);
    CHECK(R.deg() == 9);
    CHECK(poly_is_monic(F, R));
    Poly expect = poly_const(F, F.one());
    for (auto& [z, c] : line_counts(F, U, y)) {
      Poly lin = poly_from_coeffs(F, {F.neg(z), F.one()});
      expect = poly_mul(F, expect, poly_pow(F, lin, c));
    }
    CHECK(R == expect);
  }
}

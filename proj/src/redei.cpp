#include "redei.hpp"

#include <algorithm>

namespace fqdirs {

namespace {

// t from a computed H: constant H means the degenerate single-direction
// case (convention value q); otherwise the largest p-power support of H
// with the p-power root as witness.
AlgMultResult alg_mult_from_h(const FieldCtx& F, const Poly& H) {
  if (H.is_constant()) return {AlgMult{true, F.q()}, std::nullopt};
  uint64_t t = p_power_support(H, F.p());
  return {AlgMult{false, t}, pth_root(F, H, t)};
}

bool is_determined(const FieldCtx& F, const PointSet& U, Fq y) {
  for (auto& [z, c] : line_counts(F, U, y)) {
    if (c >= 2) return true;
  }
  return false;
}

}  // namespace

Poly redei_poly(const FieldCtx& F, const PointSet& U, Fq y) {
  F.check(y);
  if (U.size() < 1) throw domain_error("empty point set");
  if (U.size() > F.q()) throw domain_error("point set larger than the field");
  Poly R = poly_const(F, F.one());
  for (const Point& pt : U.pts) {
    // One linear factor X - z per point, z = a*y - b.
    Fq z = F.sub(F.mul(pt.x, y), pt.y);
    Poly lin{{F.neg(z), F.one()}};
    R = poly_mul(F, R, lin);
  }
  return R;
}

HQ h_and_q(const FieldCtx& F, const PointSet& U, Fq y) {
  Poly R = redei_poly(F, U, y);
  Poly H = poly_neg(F, xq_mod(F, R));
  // Q is exact: X^q + H is divisible by R.
  Poly Q = poly_divrem(F, poly_add(F, x_power(F, F.q()), H), R).first;
  return HQ{std::move(H), std::move(Q)};
}

AlgMultResult t_of_direction(const FieldCtx& F, const PointSet& U, Fq y) {
  if (!is_determined(F, U, y)) throw domain_error("slope is not determined by the point set");
  Poly R = redei_poly(F, U, y);
  Poly H = poly_neg(F, xq_mod(F, R));
  return alg_mult_from_h(F, H);
}

DirectionProfile direction_profile(const FieldCtx& F, const PointSet& U, Fq y) {
  if (!is_determined(F, U, y)) throw domain_error("slope is not determined by the point set");
  DirectionProfile d;
  d.y = y;
  d.R = redei_poly(F, U, y);
  d.H = poly_neg(F, xq_mod(F, d.R));
  d.Q = poly_divrem(F, poly_add(F, x_power(F, F.q()), d.H), d.R).first;
  d.s = s_of_direction(F, U, y);
  auto tr = alg_mult_from_h(F, d.H);
  d.t = tr.t;
  d.witness = std::move(tr.witness);
  return d;
}

ProfileSummary profile(const FieldCtx& F, const PointSet& U) {
  if (U.size() < 2) throw domain_error("profile needs at least two points");
  if (U.size() > F.q()) throw domain_error("profile needs at most q points");
  DirectionSet ds = pointset_directions(F, U);
  ProfileSummary ps;
  ps.vertical = ds.vertical;
  ps.set_size = U.size();
  ps.dirs.reserve(ds.affine.size());
  for (Fq y : ds.affine) ps.dirs.push_back(direction_profile(F, U, y));
  ps.s_min = 0;
  ps.t_min = AlgMult{true, F.q()};
  for (const DirectionProfile& d : ps.dirs) {
    if (ps.s_min == 0 || d.s < ps.s_min) ps.s_min = d.s;
    if (!d.t.is_q && (ps.t_min.is_q || d.t.value < ps.t_min.value)) ps.t_min = d.t;
  }
  if (ps.dirs.empty()) ps.s_min = 1;
  return ps;
}

SupportVerdict verify_profile(const FieldCtx& F, const PointSet& U, const ProfileSummary& ps) {
  SupportVerdict v;
  auto flag = [&](const std::string& msg) {
    v.status = Status::Fail;
    if (v.violations.size() < 8) v.violations.push_back(msg);
  };
  Poly xq = x_power(F, F.q());
  for (const DirectionProfile& d : ps.dirs) {
    std::string at = " at y=" + F.format_element(d.y);
    if (d.R.deg() != int(U.size())) flag("deg R != |U|" + at);
    if (!poly_is_monic(F, d.R)) flag("R is not monic" + at);
    if (d.H.deg() >= d.R.deg()) flag("deg H >= deg R" + at);
    if (d.Q.deg() != int(F.q() - U.size())) flag("deg Q != q - |U|" + at);
    if (poly_mul(F, d.R, d.Q) != poly_add(F, xq, d.H)) flag("R*Q != X^q + H" + at);

    // Root multiplicities of R against the line counts.
    Poly from_counts = poly_const(F, F.one());
    for (auto& [z, c] : line_counts(F, U, d.y)) {
      Poly lin{{F.neg(z), F.one()}};
      from_counts = poly_mul(F, from_counts, poly_pow(F, lin, c));
    }
    if (from_counts != d.R) flag("root multiplicities differ from line counts" + at);

    // Support powers: R sits in F_q[X^s] \ F_q[X^(p*s)]; H and Q sit in
    // F_q[X^s].
    if (p_power_support(d.R, F.p()) != d.s) flag("support power of R != s" + at);
    if (!d.H.is_constant() && p_power_support(d.H, F.p()) % d.s != 0) {
      flag("s does not divide the support power of H" + at);
    }
    if (!d.Q.is_constant() && p_power_support(d.Q, F.p()) % d.s != 0) {
      flag("s does not divide the support power of Q" + at);
    }

    if (d.t.is_q) {
      if (!d.H.is_constant()) flag("degenerate t with nonconstant H" + at);
      if (d.witness) flag("degenerate t carries a witness" + at);
    } else {
      if (!d.witness) {
        flag("missing root witness" + at);
      } else {
        if (poly_pow(F, *d.witness, d.t.value) != d.H) flag("witness^t != H" + at);
        if (!d.witness->is_constant() && p_power_support(*d.witness, F.p()) != 1) {
          flag("witness support still divisible by p" + at);
        }
      }
    }
  }
  return v;
}

OrderVerdict check_s_le_t(const FieldCtx& F, const ProfileSummary& ps) {
  OrderVerdict v;
  for (const DirectionProfile& d : ps.dirs) {
    // The q convention dominates every computed power since |U| <= q.
    uint64_t t_cmp = d.t.is_q ? F.q() : d.t.value;
    if (d.s > t_cmp) {
      v.status = Status::Fail;
      if (v.violations.size() < 8) {
        v.violations.push_back("s=" + std::to_string(d.s) + " > t=" + d.t.str() +
                               " at y=" + F.format_element(d.y));
      }
    }
  }
  return v;
}

BoundsVerdict check_direction_bounds(const FieldCtx& F, const ProfileSummary& ps) {
  BoundsVerdict v;
  v.set_size = ps.set_size;
  v.num_directions = ps.dirs.size();
  if (ps.set_size > F.q()) throw domain_error("bounds need at most q points");
  if (ps.dirs.empty()) {
    v.status = Status::NotApplicable;
    v.branch = "no_affine";
    return v;
  }
  if (ps.t_min.is_q) {
    v.status = Status::NotApplicable;
    v.branch = "single_direction";
    return v;
  }
  v.s = ps.s_min;
  v.t = ps.t_min.value;
  int64_t n = int64_t(ps.set_size);
  int64_t dcount = int64_t(ps.dirs.size());
  // (|U|-1)/(t+1) + 1 as one fraction.
  v.lower = Rational::make(n - 1 + int64_t(v.t) + 1, int64_t(v.t) + 1);
  v.lower_ok = v.lower.leq_int(dcount);
  if (v.s == 1) {
    v.branch = "s_eq_1";
    v.upper = Rational::make(int64_t(F.q()), 1);
    v.upper_ok = v.upper.geq_int(dcount);
  } else {
    v.branch = "s_gt_1";
    // (|U|-1)/(s-1) - 1 as one fraction.
    v.upper = Rational::make(n - 1 - (int64_t(v.s) - 1), int64_t(v.s) - 1);
    v.upper_ok = v.upper.geq_int(dcount);
  }
  v.status = (v.lower_ok && v.upper_ok) ? Status::Pass : Status::Fail;
  return v;
}

BoundsVerdict check_direction_bounds(const FieldCtx& F, const PointSet& U) {
  return check_direction_bounds(F, profile(F, U));
}

CollapseVerdict check_multiplicity_collapse(const FieldCtx& F, const SubsetA& A, Fq y) {
  if (F.k() != 2) throw domain_error("collapse criterion lives in a quadratic extension");
  if (A.size() >= F.p()) throw domain_error("collapse criterion needs |A| < p");
  std::vector<Fq> dirs = product_directions(F, A);
  if (!std::binary_search(dirs.begin(), dirs.end(), y)) {
    throw domain_error("slope is not a determined ratio of the set");
  }
  CollapseVerdict v;
  v.slope = y;
  std::vector<char> seen(F.q(), 0);
  for (Fq a : A.elems) {
    for (Fq b : A.elems) seen[F.index(F.sub(F.mul(y, a), b))] = 1;
  }
  for (char c : seen) v.dilate_size += uint64_t(c);
  if (v.dilate_size <= F.p()) {
    v.status = Status::NotTriggered;
    return v;
  }
  PointSet U = grid(F, A);
  v.s = s_of_direction(F, U, y);
  auto tr = t_of_direction(F, U, y);
  v.t = tr.t;
  v.status = (v.s == 1 && !v.t.is_q && v.t.value == 1) ? Status::Pass : Status::Fail;
  return v;
}

}  // namespace fqdirs

#include "geometry.hpp"

#include <algorithm>
#include <cctype>

namespace fqdirs {

namespace {

// Collects the marked indices of a q-sized bitmap in value order.
std::vector<Fq> collect(const FieldCtx& F, const std::vector<char>& seen) {
  std::vector<Fq> out;
  for (uint64_t i = 0; i < seen.size(); ++i) {
    if (seen[i]) out.push_back(F.from_index(i));
  }
  return out;
}

}  // namespace

SubsetA make_subset(const FieldCtx& F, std::vector<Fq> elems) {
  for (Fq x : elems) F.check(x);
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  return SubsetA{std::move(elems)};
}

PointSet make_pointset(const FieldCtx& F, std::vector<Point> pts) {
  for (const Point& pt : pts) {
    F.check(pt.x);
    F.check(pt.y);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return PointSet{std::move(pts)};
}

PointSet grid(const FieldCtx& F, const SubsetA& A) {
  std::vector<Point> pts;
  pts.reserve(A.size() * A.size());
  for (Fq a : A.elems) {
    for (Fq b : A.elems) pts.push_back(Point{a, b});
  }
  return make_pointset(F, std::move(pts));
}

std::vector<Fq> product_directions(const FieldCtx& F, const SubsetA& A) {
  if (A.size() < 2) throw domain_error("direction set needs at least two elements");
  std::vector<char> dseen(F.q(), 0);
  for (Fq a : A.elems) {
    for (Fq b : A.elems) dseen[F.index(F.sub(a, b))] = 1;
  }
  std::vector<Fq> diffs = collect(F, dseen);
  std::vector<char> dirs(F.q(), 0);
  for (Fq den : diffs) {
    if (F.is_zero(den)) continue;
    Fq dinv = F.inv(den);
    for (Fq num : diffs) dirs[F.index(F.mul(num, dinv))] = 1;
  }
  return collect(F, dirs);
}

std::vector<Fq> product_directions_naive(const FieldCtx& F, const SubsetA& A) {
  if (A.size() < 2) throw domain_error("direction set needs at least two elements");
  std::vector<char> dirs(F.q(), 0);
  for (Fq a1 : A.elems) {
    for (Fq a2 : A.elems) {
      for (Fq a3 : A.elems) {
        for (Fq a4 : A.elems) {
          if (a3 == a4) continue;
          dirs[F.index(F.div(F.sub(a1, a2), F.sub(a3, a4)))] = 1;
        }
      }
    }
  }
  return collect(F, dirs);
}

DirectionSet pointset_directions(const FieldCtx& F, const PointSet& U) {
  if (U.size() < 2) throw domain_error("directions need at least two points");
  DirectionSet ds;
  std::vector<char> seen(F.q(), 0);
  for (size_t i = 0; i < U.pts.size(); ++i) {
    for (size_t j = i + 1; j < U.pts.size(); ++j) {
      const Point& a = U.pts[i];
      const Point& b = U.pts[j];
      if (a.x == b.x) {
        ds.vertical = true;
      } else {
        seen[F.index(F.div(F.sub(a.y, b.y), F.sub(a.x, b.x)))] = 1;
      }
    }
  }
  ds.affine = collect(F, seen);
  return ds;
}

std::vector<std::pair<Fq, uint32_t>> line_counts(const FieldCtx& F, const PointSet& U, Fq y) {
  F.check(y);
  std::vector<uint32_t> cnt(F.q(), 0);
  for (const Point& pt : U.pts) ++cnt[F.index(F.sub(F.mul(y, pt.x), pt.y))];
  std::vector<std::pair<Fq, uint32_t>> out;
  for (uint64_t i = 0; i < cnt.size(); ++i) {
    if (cnt[i]) out.emplace_back(F.from_index(i), cnt[i]);
  }
  return out;
}

uint64_t s_of_direction(const FieldCtx& F, const PointSet& U, Fq y) {
  auto counts = line_counts(F, U, y);
  bool determined = false;
  uint32_t vmin = UINT32_MAX;
  for (auto& [z, c] : counts) {
    if (c >= 2) determined = true;
    uint32_t v = 0;
    for (uint32_t r = c; r % F.p() == 0; r /= F.p()) ++v;
    vmin = std::min(vmin, v);
  }
  if (!determined) throw domain_error("slope is not determined by the point set");
  uint64_t s = 1;
  for (uint32_t i = 0; i < vmin; ++i) s *= F.p();
  return s;
}

SubsetA normalize_set(const FieldCtx& F, const SubsetA& A, Fq a0, Fq a1) {
  auto member = [&](Fq x) {
    return std::binary_search(A.elems.begin(), A.elems.end(), x);
  };
  if (!member(a0) || !member(a1) || a0 == a1) {
    throw domain_error("normalization pair must be two distinct members");
  }
  Fq scale = F.inv(F.sub(a1, a0));
  std::vector<Fq> out;
  out.reserve(A.size());
  for (Fq a : A.elems) out.push_back(F.mul(F.sub(a, a0), scale));
  return make_subset(F, std::move(out));
}

CosetCheck coset_check_with_pair(const FieldCtx& F, const SubsetA& A, Fq a0, Fq a1) {
  SubsetA norm = normalize_set(F, A, a0, a1);
  for (Fq x : norm.elems) {
    if (!F.in_prime_field(x)) return CosetCheck{false, {}, {}};
  }
  return CosetCheck{true, F.sub(a1, a0), a0};
}

CosetCheck is_affine_prime_coset(const FieldCtx& F, const SubsetA& A) {
  if (A.size() < 2) throw domain_error("coset test needs at least two elements");
  return coset_check_with_pair(F, A, A.elems[0], A.elems[1]);
}

SubsetA parse_subset_csv(const FieldCtx& F, std::string_view text) {
  std::vector<Fq> elems;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    std::string_view item =
        text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    elems.push_back(F.parse_element(item));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (elems.empty()) throw parse_error("empty set text");
  return make_subset(F, std::move(elems));
}

std::string format_subset_csv(const FieldCtx& F, const SubsetA& A) {
  std::string out;
  for (size_t i = 0; i < A.elems.size(); ++i) {
    if (i) out += ',';
    out += F.format_element(A.elems[i]);
  }
  return out;
}

Point parse_point(const FieldCtx& F, std::string_view text) {
  size_t b = 0, e = text.size();
  while (b < e && std::isspace(uint8_t(text[b]))) ++b;
  while (e > b && std::isspace(uint8_t(text[e - 1]))) --e;
  text = text.substr(b, e - b);
  if (text.size() < 5 || text.front() != '(' || text.back() != ')') {
    throw parse_error("point text must look like (x;y)");
  }
  std::string_view inner = text.substr(1, text.size() - 2);
  size_t semi = inner.find(';');
  if (semi == std::string_view::npos) throw parse_error("point text must look like (x;y)");
  return Point{F.parse_element(inner.substr(0, semi)), F.parse_element(inner.substr(semi + 1))};
}

std::string format_point(const FieldCtx& F, const Point& pt) {
  return "(" + F.format_element(pt.x) + ";" + F.format_element(pt.y) + ")";
}

}  // namespace fqdirs

#include "tcensus/elliptic.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>
#include <stdexcept>

#include "tcensus/error.hpp"

namespace tcensus {

BigInt discriminant(const BigInt& a, const BigInt& b) {
  return -16 * (4 * a * a * a + 27 * b * b);
}

BigInt duke_height(const BigInt& a, const BigInt& b) {
  BigInt cube = abs(a);
  cube = cube * cube * cube;
  BigInt square = b * b;
  return std::max(cube, square);
}

// --- RationalPoint ---------------------------------------------------------

RationalPoint RationalPoint::affine(BigRational x, BigRational y) {
  RationalPoint p;
  p.infinity_ = false;
  p.x_ = std::move(x);
  p.y_ = std::move(y);
  p.x_.canonicalize();
  p.y_.canonicalize();
  return p;
}

bool RationalPoint::is_integral() const {
  return infinity_ || (x_.get_den() == 1 && y_.get_den() == 1);
}

RationalPoint RationalPoint::operator-() const {
  if (infinity_) return *this;
  return affine(x_, BigRational(-y_));
}

bool operator==(const RationalPoint& p, const RationalPoint& q) {
  if (p.infinity_ || q.infinity_) return p.infinity_ == q.infinity_;
  return p.x_ == q.x_ && p.y_ == q.y_;
}

bool operator<(const RationalPoint& p, const RationalPoint& q) {
  if (p.infinity_ || q.infinity_) return p.infinity_ && !q.infinity_;
  if (p.x_ != q.x_) return p.x_ < q.x_;
  return p.y_ < q.y_;
}

std::string RationalPoint::to_string() const {
  if (infinity_) return "O";
  return "(" + x_.get_str() + "," + y_.get_str() + ")";
}

// --- CurvePair -------------------------------------------------------------

CurvePair::CurvePair(BigInt a, BigInt b) : a_(std::move(a)), b_(std::move(b)) {
  if (tcensus::discriminant(a_, b_) == 0) {
    throw std::invalid_argument("singular curve: discriminant is zero");
  }
}

bool CurvePair::contains(const RationalPoint& p) const {
  if (p.is_infinity()) return true;
  const BigRational& x = p.x();
  return p.y() * p.y() == x * x * x + BigRational(a_) * x + BigRational(b_);
}

// --- group law -------------------------------------------------------------

RationalPoint add_points(const CurvePair& curve, const RationalPoint& p,
                         const RationalPoint& q) {
  if (p.is_infinity()) return q;
  if (q.is_infinity()) return p;
  BigRational lambda;
  if (p.x() == q.x()) {
    if (p.y() != q.y() || p.y() == 0) return RationalPoint::infinity();
    lambda = (3 * p.x() * p.x() + BigRational(curve.a())) / (2 * p.y());
  } else {
    lambda = (q.y() - p.y()) / (q.x() - p.x());
  }
  BigRational x3 = lambda * lambda - p.x() - q.x();
  BigRational y3 = lambda * (p.x() - x3) - p.y();
  return RationalPoint::affine(std::move(x3), std::move(y3));
}

RationalPoint scalar_mul(const CurvePair& curve, unsigned long m, const RationalPoint& p) {
  RationalPoint result = RationalPoint::infinity();
  RationalPoint addend = p;
  while (m) {
    if (m & 1) result = add_points(curve, result, addend);
    m >>= 1;
    if (m) addend = add_points(curve, addend, addend);
  }
  return result;
}

std::optional<int> point_order(const CurvePair& curve, const RationalPoint& p) {
  if (p.is_infinity()) return 1;
  // Nagell-Lutz: every multiple of a torsion point on an integral model is
  // integral, so the first non-integral multiple settles the question.
  if (!p.is_integral()) return std::nullopt;
  RationalPoint q = p;
  for (int n = 2; n <= 12; ++n) {
    q = add_points(curve, q, p);
    if (q.is_infinity()) {
      if (n == 11) {
        throw InvariantViolation("point of order 11 on y^2 = x^3 + " +
                                 curve.a().get_str() + "x + " + curve.b().get_str());
      }
      return n;
    }
    if (!q.is_integral()) return std::nullopt;
  }
  return std::nullopt;
}

// --- torsion ---------------------------------------------------------------

std::string TorsionStructure::to_string() const {
  if (order() == 1) return "trivial";
  if (m == 1) return "Z/" + std::to_string(n) + "Z";
  return "Z/" + std::to_string(m) + "Z x Z/" + std::to_string(n) + "Z";
}

bool is_mazur_structure(const TorsionStructure& s) {
  if (s.m == 1) return (s.n >= 1 && s.n <= 10) || s.n == 12;
  if (s.m == 2) return s.n == 2 || s.n == 4 || s.n == 6 || s.n == 8;
  return false;
}

bool TorsionGroup::has_point_of_order(int n) const {
  return std::any_of(points.begin(), points.end(),
                     [n](const TorsionPoint& tp) { return tp.order == n; });
}

namespace detail {

TorsionGroup classify_torsion(const CurvePair& curve, std::vector<TorsionPoint> points) {
  std::sort(points.begin(), points.end(),
            [](const TorsionPoint& l, const TorsionPoint& r) { return l.point < r.point; });
  const int size = static_cast<int>(points.size());
  std::map<int, int> by_order;
  for (const auto& tp : points) {
    if (!tp.point.is_integral()) {
      throw InvariantViolation("non-integral torsion point " + tp.point.to_string());
    }
    if (tp.order < 1 || tp.order > 12 || tp.order == 11) {
      throw InvariantViolation("torsion point of impossible order " +
                               std::to_string(tp.order));
    }
    ++by_order[tp.order];
  }
  if (by_order.count(1) == 0 || by_order.at(1) != 1) throw InvariantViolation("torsion point list must contain O once");

  TorsionGroup group;
  const int two_torsion = by_order.count(2) ? by_order.at(2) : 0;
  if (two_torsion == 3) {
    group.structure = {2, size / 2};
  } else {
    group.structure = {1, size};
  }
  if (!is_mazur_structure(group.structure) || group.structure.order() != size) {
    throw InvariantViolation("torsion of size " + std::to_string(size) +
                             " is not one of Mazur's fifteen groups");
  }
  const int top = group.structure.n;
  if (by_order.rbegin()->first != top) {
    throw InvariantViolation("torsion of size " + std::to_string(size) +
                             " has no element of order " + std::to_string(top));
  }
  if (top > 1) {
    // Among points of maximal order prefer y >= 0, then the smallest |x|.
    auto key = [](const TorsionPoint& tp) {
      return std::make_tuple(sgn(tp.point.y()) < 0, BigRational(abs(tp.point.x())), tp.point.x());
    };
    const TorsionPoint* gen = nullptr;
    for (const auto& tp : points) {
      if (tp.order == top && (gen == nullptr || key(tp) < key(*gen))) gen = &tp;
    }
    group.generators.push_back(gen->point);
    if (!group.structure.is_cyclic()) {
      // Second generator: the first 2-torsion point outside <gen>.
      const RationalPoint inside = scalar_mul(curve, static_cast<unsigned long>(top / 2),
                                              group.generators.front());
      auto other = std::find_if(points.begin(), points.end(), [&](const TorsionPoint& tp) {
        return tp.order == 2 && !(tp.point == inside) && !(tp.point == group.generators.front());
      });
      group.generators.push_back(other->point);
    }
  }
  group.points = std::move(points);
  return group;
}

TorsionGroup torsion_subgroup_generic(const CurvePair& curve) {
  const BigInt& a = curve.a();
  const BigInt& b = curve.b();
  std::vector<TorsionPoint> points{{RationalPoint::infinity(), 1}};

  for (const BigInt& x : integer_cubic_roots(a, b)) {
    points.push_back({RationalPoint::affine(x, BigInt(0)), 2});
  }

  // y > 0 with y^2 | |disc|, assembled from the factorisation.
  std::vector<BigInt> ys{BigInt(1)};
  for (const auto& [p, e] : factorize(curve.discriminant())) {
    const std::size_t base = ys.size();
    BigInt pk = 1;
    for (unsigned k = 1; 2 * k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) ys.push_back(ys[i] * pk);
    }
  }
  std::sort(ys.begin(), ys.end());
  for (const BigInt& y : ys) {
    for (const BigInt& x : integer_cubic_roots(a, BigInt(b - y * y))) {
      const RationalPoint p = RationalPoint::affine(x, y);
      if (auto order = point_order(curve, p)) {
        points.push_back({p, *order});
        points.push_back({-p, *order});
      }
    }
  }
  return classify_torsion(curve, std::move(points));
}

}  // namespace detail

TorsionGroup torsion_subgroup(const CurvePair& curve) {
  if (fits_i64(curve.a()) && fits_i64(curve.b())) {
    if (auto g = detail::torsion_subgroup_small(to_i64(curve.a()), to_i64(curve.b()))) {
      return std::move(*g);
    }
  }
  return detail::torsion_subgroup_generic(curve);
}

// --- minimal pairs ---------------------------------------------------------

namespace {

unsigned valuation(BigInt n, const BigInt& p) {
  if (n == 0) return ~0U;
  unsigned v = 0;
  while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
    ++v;
  }
  return v;
}

}  // namespace

bool is_minimal_pair(const BigInt& a, const BigInt& b) {
  if (discriminant(a, b) == 0) {
    throw std::invalid_argument("is_minimal_pair: singular pair");
  }
  if (fits_i64(a) && fits_i64(b)) return detail::is_minimal_pair_i64(to_i64(a), to_i64(b));
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  for (const auto& [p, e] : factorize(g)) {
    (void)e;
    if (valuation(a, p) >= 4 && valuation(b, p) >= 6) return false;
  }
  return true;
}

namespace detail {

bool is_minimal_pair_i64(std::int64_t a, std::int64_t b) {
  auto val = [](std::uint64_t n, std::uint64_t p) {
    if (n == 0) return ~0U;
    unsigned v = 0;
    while (n % p == 0) {
      n /= p;
      ++v;
    }
    return v;
  };
  const std::uint64_t ua = static_cast<std::uint64_t>(a < 0 ? -a : a);
  const std::uint64_t ub = static_cast<std::uint64_t>(b < 0 ? -b : b);
  const std::uint64_t g = std::gcd(ua, ub);
  for (const auto& [p, e] : factor_u64(g)) {
    (void)e;
    if (val(ua, p) >= 4 && val(ub, p) >= 6) return false;
  }
  return true;
}

}  // namespace detail
}  // namespace tcensus

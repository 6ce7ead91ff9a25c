// Nagell-Lutz torsion on 64-bit coefficients. Same candidate set and order
// test as torsion_subgroup_generic, with the group law run on 128-bit
// integers: a multiple whose slope is not an integer is non-integral, hence
// not torsion, so the rationals never need materialising.

#include <algorithm>

#include "tcensus/elliptic.hpp"
#include "tcensus/error.hpp"

namespace tcensus::detail {
namespace {

constexpr i128 kLambdaLimit = i128{1} << 40;
constexpr i128 kXLimit = i128{1} << 60;
constexpr i128 kYLimit = i128{1} << 90;

enum class Step { kInfinity, kPoint, kNonIntegral, kOverflow };

struct Pt {
  i128 x;
  i128 y;
};

Step add(std::int64_t a, const Pt& p, const Pt& q, Pt& out) {
  i128 num, den;
  if (p.x == q.x) {
    if (p.y != q.y || p.y == 0) return Step::kInfinity;
    num = 3 * p.x * p.x + a;
    den = 2 * p.y;
  } else {
    num = q.y - p.y;
    den = q.x - p.x;
  }
  if (num % den != 0) return Step::kNonIntegral;
  const i128 lambda = num / den;
  if (lambda >= kLambdaLimit || lambda <= -kLambdaLimit) return Step::kOverflow;
  out.x = lambda * lambda - p.x - q.x;
  if (out.x >= kXLimit || out.x <= -kXLimit) return Step::kOverflow;
  out.y = lambda * (p.x - out.x) - p.y;
  if (out.y >= kYLimit || out.y <= -kYLimit) return Step::kOverflow;
  return Step::kPoint;
}

// 0 = infinite order, -1 = needs the exact-rational path.
int small_order(std::int64_t a, const Pt& p) {
  Pt q = p;
  for (int n = 2; n <= 12; ++n) {
    Pt next{};
    switch (add(a, q, p, next)) {
      case Step::kInfinity:
        return n;
      case Step::kNonIntegral:
        return 0;
      case Step::kOverflow:
        return -1;
      case Step::kPoint:
        q = next;
        break;
    }
  }
  return 0;
}

}  // namespace

std::optional<int> point_order_small(std::int64_t a, std::int64_t b, std::int64_t x,
                                     std::int64_t y) {
  if (y == 0) return 2;
  const int order = small_order(a, Pt{x, y});
  if (order == 11) {
    throw InvariantViolation("point of order 11 on y^2 = x^3 + " + std::to_string(a) + "x + " +
                             std::to_string(b));
  }
  if (order > 0) return order;
  if (order == 0) return std::nullopt;
  return point_order(CurvePair(a, b), RationalPoint::affine(to_big(x), to_big(y)));
}

std::optional<TorsionGroup> torsion_subgroup_small(std::int64_t a, std::int64_t b) {
  constexpr std::int64_t kALimit = std::int64_t{1} << 40;
  constexpr std::int64_t kBLimit = std::int64_t{1} << 50;
  if (a >= kALimit || a <= -kALimit || b >= kBLimit || b <= -kBLimit) return std::nullopt;

  const i128 ia = a, ib = b;
  const i128 n = 4 * ia * ia * ia + 27 * ib * ib;
  if (n == 0) throw std::invalid_argument("singular curve: discriminant is zero");
  const u128 abs_n = static_cast<u128>(n < 0 ? -n : n);
  if (abs_n >= (u128{1} << 63)) return std::nullopt;

  // |disc| = 2^4 * |n|
  auto factors = factor_u64(static_cast<std::uint64_t>(abs_n));
  if (!factors.empty() && factors.front().first == 2) {
    factors.front().second += 4;
  } else {
    factors.insert(factors.begin(), {2, 4});
  }
  std::vector<std::uint64_t> ys{1};
  for (const auto& [p, e] : factors) {
    const std::size_t base = ys.size();
    std::uint64_t pk = 1;
    for (unsigned k = 1; 2 * k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) ys.push_back(ys[i] * pk);
    }
  }
  std::sort(ys.begin(), ys.end());

  const CurvePair curve(a, b);
  std::vector<TorsionPoint> points{{RationalPoint::infinity(), 1}};
  for (std::int64_t x : cubic_roots_small(a, ib)) {
    points.push_back({RationalPoint::affine(to_big(x), BigInt(0)), 2});
  }
  for (std::uint64_t y : ys) {
    const i128 yy = static_cast<i128>(y);
    for (std::int64_t x : cubic_roots_small(a, ib - yy * yy)) {
      int order = small_order(a, Pt{x, yy});
      const RationalPoint p =
          RationalPoint::affine(to_big(x), BigInt(static_cast<unsigned long>(y)));
      if (order < 0) order = point_order(curve, p).value_or(0);
      if (order == 11) {
        throw InvariantViolation("point of order 11 on y^2 = x^3 + " + std::to_string(a) +
                                 "x + " + std::to_string(b));
      }
      if (order > 0) {
        points.push_back({p, order});
        points.push_back({-p, order});
      }
    }
  }
  return classify_torsion(curve, std::move(points));
}

}  // namespace tcensus::detail

#pragma once

// Exact arithmetic on short Weierstrass curves y^2 = x^3 + a*x + b over Q and
// Nagell-Lutz torsion computation, with element orders capped by Mazur's
// classification.

#include <optional>
#include <string>
#include <vector>

#include "tcensus/exact_arith.hpp"

namespace tcensus {

BigInt discriminant(const BigInt& a, const BigInt& b);

// max(|a|^3, b^2)
BigInt duke_height(const BigInt& a, const BigInt& b);

class RationalPoint {
 public:
  static RationalPoint infinity() { return RationalPoint(); }
  static RationalPoint affine(BigRational x, BigRational y);
  static RationalPoint affine(const BigInt& x, const BigInt& y) {
    return affine(BigRational(x), BigRational(y));
  }

  bool is_infinity() const { return infinity_; }
  // Precondition: !is_infinity().
  const BigRational& x() const { return x_; }
  const BigRational& y() const { return y_; }
  bool is_integral() const;

  RationalPoint operator-() const;

  friend bool operator==(const RationalPoint& p, const RationalPoint& q);
  // Infinity first, then by (x, y).
  friend bool operator<(const RationalPoint& p, const RationalPoint& q);

  std::string to_string() const;

 private:
  RationalPoint() = default;
  bool infinity_ = true;
  BigRational x_;
  BigRational y_;
};

// A nonsingular coefficient pair. Construction rejects discriminant zero.
class CurvePair {
 public:
  CurvePair(BigInt a, BigInt b);
  CurvePair(std::int64_t a, std::int64_t b) : CurvePair(to_big(a), to_big(b)) {}

  const BigInt& a() const { return a_; }
  const BigInt& b() const { return b_; }
  BigInt discriminant() const { return tcensus::discriminant(a_, b_); }
  bool contains(const RationalPoint& p) const;

  friend bool operator==(const CurvePair&, const CurvePair&) = default;

 private:
  BigInt a_;
  BigInt b_;
};

RationalPoint add_points(const CurvePair& curve, const RationalPoint& p,
                         const RationalPoint& q);
RationalPoint scalar_mul(const CurvePair& curve, unsigned long m, const RationalPoint& p);

// Least n <= 12 with [n]P = O, or nullopt for a point of infinite order.
// Throws InvariantViolation if n = 11 turns up.
std::optional<int> point_order(const CurvePair& curve, const RationalPoint& p);

// Z/mZ x Z/nZ with m in {1, 2}, m | n.
struct TorsionStructure {
  int m = 1;
  int n = 1;

  int order() const { return m * n; }
  bool is_cyclic() const { return m == 1; }
  // "trivial", "Z/7Z", "Z/2Z x Z/4Z"
  std::string to_string() const;

  friend bool operator==(const TorsionStructure&, const TorsionStructure&) = default;
};

// True for exactly the fifteen groups in Mazur's list.
bool is_mazur_structure(const TorsionStructure& s);

struct TorsionPoint {
  RationalPoint point;
  int order;
};

struct TorsionGroup {
  TorsionStructure structure;
  std::vector<RationalPoint> generators;
  // Every torsion point including O, sorted by RationalPoint::operator<.
  std::vector<TorsionPoint> points;

  bool has_point_of_order(int n) const;
};

// Full rational torsion subgroup. Candidates are integer points with y = 0
// or y^2 | |disc|; each candidate's order is decided by point_order.
TorsionGroup torsion_subgroup(const CurvePair& curve);

// True iff no prime l has l^4 | a and l^6 | b (zero is divisible by all).
// Throws std::invalid_argument for a singular pair.
bool is_minimal_pair(const BigInt& a, const BigInt& b);

namespace detail {

// The all-BigInt implementation; torsion_subgroup dispatches to a 64-bit
// kernel whenever the coefficients are small enough.
TorsionGroup torsion_subgroup_generic(const CurvePair& curve);
std::optional<TorsionGroup> torsion_subgroup_small(std::int64_t a, std::int64_t b);

bool is_minimal_pair_i64(std::int64_t a, std::int64_t b);

// point_order for an integral point on a 64-bit curve (which must be
// nonsingular and contain the point).
std::optional<int> point_order_small(std::int64_t a, std::int64_t b, std::int64_t x,
                                     std::int64_t y);

// Builds the group from its complete point list; validates Mazur conformity
// and Nagell-Lutz integrality, throwing InvariantViolation otherwise.
TorsionGroup classify_torsion(const CurvePair& curve, std::vector<TorsionPoint> points);

}  // namespace detail
}  // namespace tcensus

#pragma once

// Generators for the coefficient pairs (A, B), |A|, |B| <= M, whose curve has
// a rational point of prime order p in {2, 3, 5, 7}.
//
//   p = 2:  A = z1 - z2^2,            B = z1*z2                (z1 | B)
//   p = 3:  A = 27 z1^4 + 6 z1 z2,    B = z2^2 - 27 z1^6       (z1 | A)
//   p = 5:  A = -27 F5(p,q),          B = 54 (p^2+q^2) G5(p,q)
//   p = 7:  A = -27 k^4 F7(p,q),      B = 54 k^6 G7(p,q),  k in {1, 1/3}
//
// Every emitted pair is checked against the torsion oracle; the output is
// the deduplicated set of curves, not of witnesses.

#include <compare>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "tcensus/exact_arith.hpp"

namespace tcensus {

// Compact census key. Generators only emit nonsingular pairs.
struct CoeffPair {
  std::int64_t a = 0;
  std::int64_t b = 0;

  friend auto operator<=>(const CoeffPair&, const CoeffPair&) = default;
};

// Sorted, duplicate-free list of pairs.
class CurveSet {
 public:
  CurveSet() = default;
  // Sorts and deduplicates.
  explicit CurveSet(std::vector<CoeffPair> pairs);

  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  bool contains(const CoeffPair& p) const;
  std::span<const CoeffPair> pairs() const { return pairs_; }
  auto begin() const { return pairs_.begin(); }
  auto end() const { return pairs_.end(); }

  CurveSet filtered(bool (*keep)(const CoeffPair&)) const;

  friend bool operator==(const CurveSet&, const CurveSet&) = default;

 private:
  std::vector<CoeffPair> pairs_;
};

CurveSet set_union(std::span<const CurveSet* const> sets);

struct ZWitness {
  BigInt z1;
  BigInt z2;
};

struct PQWitness {
  BigInt p;
  BigInt q;
  BigRational k;
};

struct FamilyCandidate {
  int prime = 0;
  BigInt a;
  BigInt b;
  std::variant<ZWitness, PQWitness> witness;
};

struct GenOptions {
  unsigned workers = 1;
  // Multiplies the safe box half-width (p = 5, 7 only).
  int box_scale = 1;
  // Re-scan at twice the half-width and require nothing new (p = 5, 7 only).
  bool check_extended_box = true;
};

// M = 0 yields the empty set; negative M throws std::invalid_argument.
CurveSet gen2(std::int64_t max_coeff, const GenOptions& opts = {});
CurveSet gen3(std::int64_t max_coeff, const GenOptions& opts = {});
CurveSet gen5(std::int64_t max_coeff, const GenOptions& opts = {});
CurveSet gen7(std::int64_t max_coeff, const GenOptions& opts = {});

// Dispatches on prime in {2, 3, 5, 7}.
CurveSet generate(int prime, std::int64_t max_coeff, const GenOptions& opts = {});

// Every witness behind gen_p(M), in enumeration order. For p = 2 and 3 this
// lists all (z1, z2), including the closed-form branches for zero
// coefficients; for p = 5 and 7 the canonical (p, q) with q > 0 or
// (q = 0, p > 0).
std::vector<FamilyCandidate> family_candidates(int prime, std::int64_t max_coeff);

// The order-5 and order-7 forms, exactly.
BigInt order5_a(const BigInt& p, const BigInt& q);
BigInt order5_b(const BigInt& p, const BigInt& q);
BigRational order7_a(const BigInt& p, const BigInt& q, const BigRational& k);
BigRational order7_b(const BigInt& p, const BigInt& q, const BigRational& k);

// min over the unit circle of max(|F|, |G|) for the pair of forms bounding
// gen5 (prime 5) or gen7 (prime 7), from 10^6 angular samples.
double sampled_form_minimum(int prime);

// Half-width of the (p, q) box that provably contains every solution with
// |A|, |B| <= M, using 90% of the sampled minimum.
std::int64_t safe_box_half_width(int prime, std::int64_t max_coeff);

// Resultant of F(1, t) and G(1, t) for the forms of the given prime (5 or 7).
BigInt form_resultant(int prime);

// Sylvester-matrix resultant; coefficients listed from the leading term down.
BigInt resultant(std::span<const BigInt> f, std::span<const BigInt> g);

}  // namespace tcensus

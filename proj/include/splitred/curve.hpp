#pragma once

// Genus-2 curves y^2 = f(x) over Q and their Frobenius data at good primes.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "splitred/ffield.hpp"
#include "splitred/weil.hpp"

namespace splitred {

using BigInt = boost::multiprecision::cpp_int;

class HyperellipticCurve {
 public:
  // coeffs[i] is the coefficient of x^i. Throws ModelRejected unless the
  // degree is 5 or 6 and f is squarefree.
  explicit HyperellipticCurve(std::vector<i64> coeffs);

  const std::vector<i64>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  i64 leading() const { return coeffs_.back(); }
  const BigInt& discriminant() const { return disc_; }

  // Prime divisors of 2 * lc(f) * disc(f) found by trial division up to
  // kTrialBound; anything left over is kept in unfactored_cofactor().
  const std::vector<u64>& bad_primes() const { return bad_primes_; }
  const BigInt& unfactored_cofactor() const { return cofactor_; }

  // p | 2 * lc(f) * disc(f), decided by exact division (no factoring needed).
  bool is_bad(u64 p) const;

  // Canonical text form, e.g. "x^5+x+1".
  std::string to_string() const;

  static constexpr u64 kTrialBound = 10'000'000;

 private:
  std::vector<i64> coeffs_;
  BigInt disc_;
  BigInt bad_product_;
  std::vector<u64> bad_primes_;
  BigInt cofactor_;
};

// Accepts "x^5+x+1" style polynomials or a constant-first coefficient list "1,1,0,0,0,1".
HyperellipticCurve parse_curve(std::string_view text);

// Exact discriminant of an integer polynomial (coeffs constant first, degree >= 1).
BigInt polynomial_discriminant(const std::vector<i64>& coeffs);

// Character-sum count for the integer model at any odd prime, with no
// good-reduction check: sum_x (1 + (f(x)/p)) plus the points at infinity.
u64 count_model_points_fp(const std::vector<i64>& coeffs, u64 p);

// #C(F_p). Throws PreconditionError at bad or even p.
u64 count_points_fp(const HyperellipticCurve& c, u64 p);

// #C(F_{p^2}) through the norm map to F_p; ns selects the model of F_{p^2}.
u64 count_points_fp2(const HyperellipticCurve& c, u64 p, std::optional<u64> ns = std::nullopt);

// #C(F_{p^2}) by enumerating all p^2 elements with Horner evaluation in the
// extension and the Euler-power character. O(p^2 log p); for cross-checks.
u64 count_points_fp2_reference(const HyperellipticCurve& c, u64 p, std::optional<u64> ns = std::nullopt);

struct FrobeniusRecord {
  u64 p = 0;
  i64 a1 = 0;
  i64 a2 = 0;
  i64 delta = 0;
  i64 delta_small = 0;
  SplitClassification classification;

  WeilQuartic quartic() const { return {static_cast<i64>(p), a1, a2}; }
};

// Frobenius data from the two point counts. Throws ConsistencyError if the
// a2 parity or the Weil bounds fail (both indicate a counting bug).
FrobeniusRecord frobenius_record(const HyperellipticCurve& c, u64 p);

// Same, from already known counts.
FrobeniusRecord frobenius_record_from_counts(u64 p, u64 count_fp, u64 count_fp2);

}  // namespace splitred

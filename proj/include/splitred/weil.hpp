#pragma once

// Degree-4 Weil polynomials X^4 + a1 X^3 + a2 X^2 + q a1 X + q^2 over a prime q:
// validity, discriminants, absolute-simplicity classification, the split forms
// forced by real multiplication, and factorization of reciprocal quartics mod l.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "splitred/ffield.hpp"

namespace splitred {

struct WeilQuartic {
  i64 q = 0;
  i64 a1 = 0;
  i64 a2 = 0;

  // Value at X = 1, the group order of the corresponding Jacobian.
  i64 value_at_one() const { return 1 + a1 + a2 + q * a1 + q * q; }
  friend bool operator==(const WeilQuartic&, const WeilQuartic&) = default;
};

struct Discriminants {
  i64 delta = 0;        // a1^2 - 4 a2 + 8 q
  i64 delta_small = 0;  // (a2 + 2q)^2 - 4 q a1^2
  friend bool operator==(const Discriminants&, const Discriminants&) = default;
};

enum class WeilViolation { None, A1TooLarge, BelowLowerBound, AboveUpperBound };

struct Validation {
  std::optional<WeilQuartic> quartic;  // set iff valid
  WeilViolation violation = WeilViolation::None;

  bool valid() const { return quartic.has_value(); }
};

// Exact integer check of the Weil bounds. Throws InvalidArgument unless q is an odd prime.
Validation validate(i64 q, i64 a1, i64 a2);

Discriminants discriminants(const WeilQuartic& w);

// Which member of {0, q + a2, 2 a2, 3 (a2 - q)} a1^2 hits.
enum class A1Exception : unsigned { Zero = 0, QPlusA2 = 1, TwiceA2 = 2, ThreeA2MinusQ = 3 };

struct SplitReasons {
  bool delta_square_nonzero = false;
  bool delta_zero = false;
  std::optional<int> a2_multiple;        // i with a2 = i * p, -2 <= i <= 6
  std::array<bool, 4> a1_exception{};    // indexed by A1Exception
  bool padic_branch = false;             // the Z_p-square test decided the verdict

  bool any_a1_exception() const { return a1_exception[0] || a1_exception[1] || a1_exception[2] || a1_exception[3]; }
  // True iff some necessary condition for a non-absolutely-simple reduction fired.
  bool any_necessary() const { return delta_square_nonzero || delta_zero || a2_multiple.has_value() || any_a1_exception(); }
  friend bool operator==(const SplitReasons&, const SplitReasons&) = default;
};

enum class Verdict { AbsolutelySimple, NotAbsolutelySimple };

struct SquareForm {
  i64 b1;  // (X^2 + b1 X + p)^2
  friend bool operator==(const SquareForm&, const SquareForm&) = default;
};
struct MixedForm {
  i64 b1;  // (X^2 + b1 X + p)(X^2 - b1 X + p), b1 >= 0
  friend bool operator==(const MixedForm&, const MixedForm&) = default;
};
using RmForm = std::variant<SquareForm, MixedForm>;

struct SplitClassification {
  Verdict verdict = Verdict::AbsolutelySimple;
  SplitReasons reasons;
  std::optional<RmForm> rm_form;
  std::optional<int> extremal;  // +1 or -1
};

// Full classification of a validated quartic over the prime q.
SplitClassification classify(const WeilQuartic& w);

std::optional<RmForm> rm_split_form(const WeilQuartic& w);

// Sign of b1 when the quartic is (X^2 +- floor(2 sqrt p) X + p)^2; throws
// ConsistencyError if the group order disagrees with (p + 1 +- floor(2 sqrt p))^2.
std::optional<int> extremal_check(const WeilQuartic& w);

// "sq:<b1>", "mx:<b1>" or "".
std::string format_rm_form(const std::optional<RmForm>& form);

// Factorization type of X^4 + a1 X^3 + a2 X^2 + g a1 X + g^2 over F_l.
struct DistinctQuadratics {
  u64 beta1;
  u64 beta2;
  friend bool operator==(const DistinctQuadratics&, const DistinctQuadratics&) = default;
};
struct SquareQuadratic {
  u64 beta;
  friend bool operator==(const SquareQuadratic&, const SquareQuadratic&) = default;
};
struct NonResidue {
  friend bool operator==(const NonResidue&, const NonResidue&) = default;
};
using ReciprocalFactorization = std::variant<DistinctQuadratics, SquareQuadratic, NonResidue>;

// beta_{1,2} = (a1 +- u) / 2 with u the smaller square root of the discriminant.
// Throws InvalidArgument if gamma = 0 mod l or l is not an odd prime.
ReciprocalFactorization factor_reciprocal_mod_ell(i64 a1, i64 a2, i64 gamma, u64 ell);

}  // namespace splitred

#include "splitred/weil.hpp"

#include "splitred/errors.hpp"

namespace splitred {

namespace {

using i128 = __int128;

void require_odd_prime_q(i64 q) {
  if (q < 3 || q % 2 == 0 || !is_prime(static_cast<u64>(q))) {
    throw InvalidArgument("q = " + std::to_string(q) + " is not an odd prime");
  }
}

}  // namespace

Validation validate(i64 q, i64 a1, i64 a2) {
  require_odd_prime_q(q);
  const i128 A1 = a1, A2 = a2, Q = q;
  // |a1| <= 4 sqrt q
  if (A1 * A1 > 16 * Q) return {std::nullopt, WeilViolation::A1TooLarge};
  // 2 |a1| sqrt q - 2q <= a2, squared on the non-negative side
  const i128 shifted = A2 + 2 * Q;
  if (shifted < 0 || 4 * A1 * A1 * Q > shifted * shifted) return {std::nullopt, WeilViolation::BelowLowerBound};
  // a2 <= a1^2 / 4 + 2q
  if (4 * A2 > A1 * A1 + 8 * Q) return {std::nullopt, WeilViolation::AboveUpperBound};
  return {WeilQuartic{q, a1, a2}, WeilViolation::None};
}

Discriminants discriminants(const WeilQuartic& w) {
  Discriminants d;
  d.delta = w.a1 * w.a1 - 4 * w.a2 + 8 * w.q;
  const i64 shifted = w.a2 + 2 * w.q;
  d.delta_small = shifted * shifted - 4 * w.q * w.a1 * w.a1;
  // 8q vanishes mod 8, so the reduction only sees a1^2 - 4 a2.
  if (mod(d.delta, 8) != mod(w.a1 * w.a1 - 4 * w.a2, 8)) {
    throw ConsistencyError("discriminants: delta fails the mod-8 recomputation");
  }
  return d;
}

std::optional<RmForm> rm_split_form(const WeilQuartic& w) {
  const i64 p = w.q;
  if (w.a1 % 2 == 0) {
    const i64 b1 = w.a1 / 2;
    if (b1 * b1 <= 4 * p && w.a2 == b1 * b1 + 2 * p) return RmForm{SquareForm{b1}};
  }
  if (w.a1 == 0) {
    const i64 diff = 2 * p - w.a2;  // = b1^2
    if (auto root = is_square_int(diff); root && diff <= 4 * p) {
      return RmForm{MixedForm{static_cast<i64>(*root)}};
    }
  }
  return std::nullopt;
}

std::optional<int> extremal_check(const WeilQuartic& w) {
  const auto form = rm_split_form(w);
  if (!form || !std::holds_alternative<SquareForm>(*form)) return std::nullopt;
  const i64 b1 = std::get<SquareForm>(*form).b1;
  const i64 m = static_cast<i64>(isqrt(static_cast<u64>(4 * w.q)));
  if (b1 == 0 || (b1 != m && b1 != -m)) return std::nullopt;
  const int sign = b1 > 0 ? 1 : -1;
  const i64 root = w.q + 1 + sign * m;
  if (w.value_at_one() != root * root) {
    throw ConsistencyError("extremal_check: P(1) differs from (p + 1 +- floor(2 sqrt p))^2");
  }
  return sign;
}

SplitClassification classify(const WeilQuartic& w) {
  const i64 p = w.q;
  const Discriminants d = discriminants(w);
  SplitClassification out;
  SplitReasons& r = out.reasons;

  const auto root = is_square_int(d.delta);
  r.delta_zero = d.delta == 0;
  r.delta_square_nonzero = root.has_value() && d.delta != 0;
  const bool delta_nonsquare = !root.has_value();

  if (w.a2 % p == 0) {
    const i64 i = w.a2 / p;
    if (i >= -2 && i <= 6) r.a2_multiple = static_cast<int>(i);
  }
  const i64 a1sq = w.a1 * w.a1;
  r.a1_exception[static_cast<unsigned>(A1Exception::Zero)] = a1sq == 0;
  r.a1_exception[static_cast<unsigned>(A1Exception::QPlusA2)] = a1sq == p + w.a2;
  r.a1_exception[static_cast<unsigned>(A1Exception::TwiceA2)] = a1sq == 2 * w.a2;
  r.a1_exception[static_cast<unsigned>(A1Exception::ThreeA2MinusQ)] = a1sq == 3 * (w.a2 - p);

  // v_p(a2) = 0 branch.
  const bool unit_branch = (w.a2 % p != 0) && !r.any_a1_exception();
  // v_p(a1) = 0, p | a2 branch, decided by the Z_p-squareness of delta_small.
  const bool padic_applies = (w.a1 % p != 0) && (w.a2 % p == 0);
  const bool padic_branch = padic_applies && !is_square_padic(d.delta_small, static_cast<u64>(p));

  const bool simple = delta_nonsquare && (unit_branch || padic_branch);
  r.padic_branch = delta_nonsquare && !unit_branch && padic_applies;
  out.verdict = simple ? Verdict::AbsolutelySimple : Verdict::NotAbsolutelySimple;

  out.rm_form = rm_split_form(w);
  out.extremal = extremal_check(w);

  if (!simple && !r.any_necessary()) {
    throw ConsistencyError("classify: not absolutely simple but no necessary condition fired");
  }
  return out;
}

std::string format_rm_form(const std::optional<RmForm>& form) {
  if (!form) return "";
  if (const auto* sq = std::get_if<SquareForm>(&*form)) return "sq:" + std::to_string(sq->b1);
  return "mx:" + std::to_string(std::get<MixedForm>(*form).b1);
}

ReciprocalFactorization factor_reciprocal_mod_ell(i64 a1, i64 a2, i64 gamma, u64 ell) {
  const PrimeField f(ell);
  const u64 g = f.reduce(gamma);
  if (g == 0) throw InvalidArgument("factor_reciprocal_mod_ell: gamma must be a unit");
  const u64 A1 = f.reduce(a1), A2 = f.reduce(a2);
  const u64 disc = f.add(f.sub(f.mul(A1, A1), f.mul(4 % ell, A2)), f.mul(8 % ell, g));
  const u64 half = (ell + 1) / 2;
  const auto u = sqrt_mod(static_cast<i64>(disc), ell);
  if (!u) return NonResidue{};
  if (*u == 0) return SquareQuadratic{f.mul(half, A1)};
  return DistinctQuadratics{f.mul(half, f.add(A1, *u)), f.mul(half, f.sub(A1, *u))};
}

}  // namespace splitred

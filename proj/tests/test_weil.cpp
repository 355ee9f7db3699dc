#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "splitred/errors.hpp"
#include "splitred/weil.hpp"

using namespace splitred;

namespace {

// Coefficients (constant first) of X^4 + a1 X^3 + a2 X^2 + q a1 X + q^2.
std::vector<i64> quartic_coeffs(i64 q, i64 a1, i64 a2) { return {q * q, q * a1, a2, a1, 1}; }

bool has_reason_a1(const SplitClassification& c, A1Exception which) {
  return c.reasons.a1_exception[static_cast<unsigned>(which)];
}

}  // namespace

TEST_CASE("validate examples") {
  CHECK(validate(5, 0, 0).valid());
  CHECK(validate(5, 9, 0).violation == WeilViolation::A1TooLarge);
  CHECK(validate(5, 4, -2).violation == WeilViolation::BelowLowerBound);
  CHECK(validate(5, 4, 12).valid());
  CHECK_THROWS_AS(validate(4, 0, 0), InvalidArgument);
  CHECK_THROWS_AS(validate(2, 0, 0), InvalidArgument);

  // The numeric oracle agrees on the example verdicts.
  CHECK(oracle::weil_by_roots(5, 4, 12));
  CHECK_FALSE(oracle::weil_by_roots(5, 4, -2));
  CHECK_FALSE(oracle::weil_by_roots(5, 9, 0));
}

TEST_CASE("validate agrees with the root-magnitude oracle on the full box") {
  for (i64 q : {5, 7, 11, 13}) {
    const i64 a1_max = static_cast<i64>(std::ceil(4 * std::sqrt(static_cast<double>(q)))) + 2;
    const i64 a2_max = 6 * q + 2;
    int mismatches = 0;
    for (i64 a1 = -a1_max; a1 <= a1_max; ++a1) {
      for (i64 a2 = -a2_max; a2 <= a2_max; ++a2) {
        if (validate(q, a1, a2).valid() != oracle::weil_by_roots(q, a1, a2)) ++mismatches;
      }
    }
    CHECK_MESSAGE(mismatches == 0, "q = " << q);
  }
}

TEST_CASE("discriminants") {
  CHECK(discriminants({5, 0, 0}) == Discriminants{40, 100});
  CHECK(discriminants({5, 1, 2}) == Discriminants{33, 124});
  CHECK(discriminants({5, 0, -6}) == Discriminants{64, 16});
}

TEST_CASE("classify examples") {
  const auto simple = classify({5, 1, 2});
  CHECK(simple.verdict == Verdict::AbsolutelySimple);
  CHECK_FALSE(simple.reasons.any_necessary());
  CHECK_FALSE(simple.rm_form);

  // (X^2 + X + 5)(X^2 - X + 5)
  CHECK(oracle::poly_mul({5, 1, 1}, {5, -1, 1}) == quartic_coeffs(5, 0, 9));
  const auto mixed = classify({5, 0, 9});
  CHECK(mixed.verdict == Verdict::NotAbsolutelySimple);
  CHECK(mixed.reasons.delta_square_nonzero);
  CHECK(has_reason_a1(mixed, A1Exception::Zero));

  // (X^2 + 4X + 5)^2
  CHECK(oracle::poly_mul({5, 4, 1}, {5, 4, 1}) == quartic_coeffs(5, 8, 26));
  const auto square = classify({5, 8, 26});
  CHECK(square.verdict == Verdict::NotAbsolutelySimple);
  CHECK(square.reasons.delta_zero);
  CHECK_FALSE(square.reasons.delta_square_nonzero);
}

TEST_CASE("classify records a2 = i p and the p-adic branch") {
  // a2 = 0: v_p(a2) is infinite, so only the p-adic branch can certify.
  // delta_small = 4q(q - a1^2) has odd valuation when p does not divide a1.
  const auto c = classify({5, 1, 0});
  CHECK(c.reasons.a2_multiple == 0);
  CHECK(c.reasons.padic_branch);
  CHECK(c.verdict == Verdict::AbsolutelySimple);

  // a2 = p, a1 = 1: delta = 21 is not a square, a1^2 misses the exception set,
  // delta_small = 205 = 5 * 41 has odd valuation.
  const auto d = classify({5, 1, 5});
  CHECK(d.reasons.a2_multiple == 1);
  CHECK(d.reasons.padic_branch);
  CHECK(d.verdict == Verdict::AbsolutelySimple);

  // a2 = 2p forces delta = a1^2, a square, so the p-adic branch never decides.
  const auto e = classify({5, 3, 10});
  CHECK(e.reasons.delta_square_nonzero);
  CHECK_FALSE(e.reasons.padic_branch);
  CHECK(e.verdict == Verdict::NotAbsolutelySimple);
}

TEST_CASE("rm_split_form") {
  CHECK(format_rm_form(rm_split_form({5, 8, 26})) == "sq:4");
  CHECK(format_rm_form(rm_split_form({5, 0, 9})) == "mx:1");
  CHECK_FALSE(rm_split_form({5, 1, 2}));
  // b1 = 0: both shapes coincide and the square form wins.
  CHECK(format_rm_form(rm_split_form({5, 0, 10})) == "sq:0");
  CHECK(format_rm_form(rm_split_form({5, -8, 26})) == "sq:-4");
}

TEST_CASE("extremal_check") {
  CHECK(WeilQuartic{5, 8, 26}.value_at_one() == 100);
  CHECK(extremal_check({5, 8, 26}) == 1);
  CHECK(WeilQuartic{5, -8, 26}.value_at_one() == 4);
  CHECK(extremal_check({5, -8, 26}) == -1);
  CHECK_FALSE(extremal_check({5, 0, 0}));
  CHECK_FALSE(extremal_check({5, 2, 11}));  // square form with b1 = 1, not extremal
}

TEST_CASE("classification invariants on the validate box") {
  for (i64 q : {5, 7, 11, 13}) {
    const i64 a1_max = static_cast<i64>(std::ceil(4 * std::sqrt(static_cast<double>(q)))) + 2;
    for (i64 a1 = -a1_max; a1 <= a1_max; ++a1) {
      for (i64 a2 = -6 * q - 2; a2 <= 6 * q + 2; ++a2) {
        const auto v = validate(q, a1, a2);
        if (!v.valid()) continue;
        const auto c = classify(*v.quartic);
        if (c.verdict == Verdict::NotAbsolutelySimple) REQUIRE(c.reasons.any_necessary());

        // a1 -> -a1 symmetry of the verdict.
        REQUIRE(classify(*validate(q, -a1, a2).quartic).verdict == c.verdict);

        if (c.rm_form) {
          std::vector<i64> product;
          if (const auto* sq = std::get_if<SquareForm>(&*c.rm_form)) {
            product = oracle::poly_mul({q, sq->b1, 1}, {q, sq->b1, 1});
            REQUIRE(sq->b1 * sq->b1 <= 4 * q);
          } else {
            const i64 b = std::get<MixedForm>(*c.rm_form).b1;
            product = oracle::poly_mul({q, b, 1}, {q, -b, 1});
          }
          REQUIRE(product == quartic_coeffs(q, a1, a2));
          REQUIRE(c.verdict == Verdict::NotAbsolutelySimple);
        }
        if (c.extremal) {
          REQUIRE(discriminants(*v.quartic).delta == 0);
          REQUIRE(std::holds_alternative<SquareForm>(*c.rm_form));
        }
      }
    }
  }
}

TEST_CASE("factor_reciprocal_mod_ell examples") {
  CHECK(std::get<DistinctQuadratics>(factor_reciprocal_mod_ell(3, 2, 1, 7)) == DistinctQuadratics{3, 0});
  CHECK(oracle::poly_mul({1, 3, 1}, {1, 0, 1}) == std::vector<i64>{1, 3, 2, 3, 1});
  CHECK(std::get<SquareQuadratic>(factor_reciprocal_mod_ell(0, 2, 1, 7)) == SquareQuadratic{0});
  CHECK(std::holds_alternative<NonResidue>(factor_reciprocal_mod_ell(1, 1, 1, 7)));
  CHECK_THROWS_AS(factor_reciprocal_mod_ell(1, 1, 0, 7), InvalidArgument);
  CHECK_THROWS_AS(factor_reciprocal_mod_ell(1, 1, 7, 7), InvalidArgument);
}

TEST_CASE("factor_reciprocal_mod_ell is sound against brute-force factoring") {
  for (u64 l : {5ULL, 7ULL, 11ULL, 13ULL}) {
    for (u64 g = 1; g < l; ++g) {
      for (u64 a1 = 0; a1 < l; ++a1) {
        for (u64 a2 = 0; a2 < l; ++a2) {
          const auto pairs = oracle::reciprocal_factor_pairs(a1, a2, g, l);
          const auto f = factor_reciprocal_mod_ell(static_cast<i64>(a1), static_cast<i64>(a2), static_cast<i64>(g), l);
          if (const auto* d = std::get_if<DistinctQuadratics>(&f)) {
            REQUIRE(d->beta1 != d->beta2);
            REQUIRE(pairs.count({std::min(d->beta1, d->beta2), std::max(d->beta1, d->beta2)}) == 1);
          } else if (const auto* s = std::get_if<SquareQuadratic>(&f)) {
            REQUIRE(pairs.size() == 1);
            REQUIRE(*pairs.begin() == std::make_pair(s->beta, s->beta));
          } else {
            REQUIRE(pairs.empty());
          }
        }
      }
    }
  }
}

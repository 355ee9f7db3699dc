#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "splitred/errors.hpp"
#include "splitred/gsp4.hpp"
#include "splitred/weil.hpp"

using namespace splitred;

namespace {

const GroupTally& tally3() {
  static const GroupTally t = enumerate_gsp4(3);
  return t;
}

}  // namespace

TEST_CASE("multiplier and characteristic polynomial of small matrices") {
  Mat4 id{};
  for (int i = 0; i < 4; ++i) id[i][i] = 1;
  CHECK(multiplier(id, 5) == std::optional<u64>(1));
  // (X - 1)^4 = X^4 - 4X^3 + 6X^2 - 4X + 1.
  CHECK(charpoly_full(id, 5) == std::array<u64, 4>{1, 1, 1, 1});
  CHECK(charpoly_full(id, 7) == std::array<u64, 4>{3, 6, 3, 1});

  Mat4 d{};
  d[0][0] = d[1][1] = 1;
  d[2][2] = d[3][3] = 2;
  CHECK(multiplier(d, 3) == std::optional<u64>(2));
  // (X - 1)^2 (X - 2)^2 over F_3: X^4 - 6X^3 + 13X^2 - 12X + 4.
  CHECK(charpoly_full(d, 3) == std::array<u64, 4>{0, 1, 0, 1});

  Mat4 bad{};
  bad[0][0] = 1;
  bad[1][1] = 1;
  bad[2][2] = 1;
  bad[3][3] = 2;
  CHECK_FALSE(multiplier(bad, 3));
}

TEST_CASE("unsupported l") {
  CHECK_THROWS_AS(enumerate_gsp4(11), UnsupportedError);
  CHECK_THROWS_AS(enumerate_gsp4(7), UnsupportedError);
  CHECK_THROWS_AS(class_number(5), UnsupportedError);
  CHECK_THROWS_AS(enumerate_pairs(11), UnsupportedError);
}

TEST_CASE("GSp_4(F_3) order and equal multiplier fibers") {
  const auto& t = tally3();
  CHECK(t.order() == 103680);
  CHECK(GroupTally::expected_order(3) == 81ULL * 2 * 8 * 80);
  CHECK(GroupTally::expected_order(5) == 37440000ULL);
  CHECK(t.fiber_size(1) == 51840);
  CHECK(t.fiber_size(2) == 51840);
}

TEST_CASE("basis completion agrees with the full 3^16 scan") {
  CHECK(scan_gsp4_bruteforce(3) == tally3());
}

TEST_CASE("enumeration is independent of thread count and spot checks run") {
  EnumerationOptions opts;
  opts.threads = 3;
  opts.spot_check_every = 100;
  EnumerationStats stats;
  CHECK(enumerate_gsp4(3, opts, &stats) == tally3());
  CHECK(stats.spot_checks > 500);
  CHECK(stats.spot_checks < 1700);
}

TEST_CASE("Legendre class partition at l = 3") {
  const auto c = conj_tallies(tally3());
  CHECK(c.c1 + c.c0 + c.cm1 == 51840);
  CHECK(c.projective_order == 51840);
  CHECK(c.c0_within_bound);
  CHECK(c.c1_within_bound);
}

TEST_CASE("scalar invariance of tallies and Legendre classes") {
  const auto& t = tally3();
  const u64 l = 3;
  for (u64 g = 1; g < l; ++g) {
    for (u64 a1 = 0; a1 < l; ++a1) {
      for (u64 a2 = 0; a2 < l; ++a2) {
        for (u64 lam = 1; lam < l; ++lam) {
          const u64 g2 = g * lam * lam % l, b1 = lam * a1 % l, b2 = lam * lam * a2 % l;
          REQUIRE(t.count(g2, b1, b2) == t.count(g, a1, a2));
          const i64 d = static_cast<i64>(a1 * a1) - 4 * static_cast<i64>(a2) + 8 * static_cast<i64>(g);
          const i64 e = static_cast<i64>(b1 * b1) - 4 * static_cast<i64>(b2) + 8 * static_cast<i64>(g2);
          REQUIRE(legendre(d, l) == legendre(e, l));
        }
      }
    }
  }
}

TEST_CASE("square-discriminant keys factor into distinct reciprocal quadratics") {
  const auto& t = tally3();
  for (u64 g = 1; g < 3; ++g) {
    for (u64 a1 = 0; a1 < 3; ++a1) {
      for (u64 a2 = 0; a2 < 3; ++a2) {
        const i64 d = static_cast<i64>(a1 * a1) - 4 * static_cast<i64>(a2) + 8 * static_cast<i64>(g);
        if (t.count(g, a1, a2) == 0 || legendre(d, 3) != 1) continue;
        const auto f = factor_reciprocal_mod_ell(static_cast<i64>(a1), static_cast<i64>(a2), static_cast<i64>(g), 3);
        REQUIRE(std::holds_alternative<DistinctQuadratics>(f));
      }
    }
  }
}

TEST_CASE("charpoly fibers and exceptional sets at l = 3") {
  const auto& t = tally3();
  const auto f = charpoly_fiber_check(t);
  CHECK(f.counts.size() == 18);
  CHECK(f.total == 103680);
  CHECK(f.min_count > 0);

  const auto e = exceptional_class_sizes(t);
  u64 proj = 0;
  for (u64 g = 1; g < 3; ++g) {
    for (u64 a2 = 0; a2 < 3; ++a2) proj += t.count(g, 0, a2);
  }
  CHECK(e.a1_zero == proj);
  CHECK(e.all_within_bound);
  // a2 = i g for i = -2..6 runs through each residue three times mod 3.
  CHECK(e.a2_multiple[0] == e.a2_multiple[3]);
  CHECK(e.a2_multiple[2] == e.a2_multiple[5]);
}

TEST_CASE("GL_2 fibers and pair groups") {
  const auto p5 = enumerate_pairs(5);
  CHECK(p5.gl2_order == 24 * 20);
  CHECK(p5.gl2_fibers.at({2, 2}) == 30);  // (X - 1)(X - 2) = X^2 + 2X + 2 mod 5
  CHECK(p5.gl2_fibers.at({1, 1}) == 20);  // X^2 + X + 1
  CHECK(p5.gl2_fibers.at({3, 1}) == 25);  // X^2 + 3X + 1 = (X + 4)^2
  CHECK(p5.g_order == 4ULL * 4 * 4 * 25 * 36);
  CHECK(p5.t_order == 64);
  CHECK(p5.c_cm == 7);

  const auto p3 = enumerate_pairs(3);
  CHECK(p3.g_order == 1152);
  CHECK(p3.t_order == 8);
  CHECK(p3.c_cm == 3);
  const auto direct = pair_direct_counts(3);
  CHECK(direct.g_order == 1152);
  CHECK(direct.c_rm == p3.c_rm);
  CHECK(direct.projective_classes <= direct.group_classes);
}

TEST_CASE("conjugacy classes of GSp_4(F_3)") {
  const auto r = class_number(3);
  CHECK(r.closure_size == 103680);
  CHECK(r.projective_classes <= r.group_classes);
  CHECK(r.group_classes >= 18);
  CHECK(r.group_classes == 38);
  CHECK(r.projective_classes == 25);

  // Each computed class must be a full conjugacy class: its size equals
  // |G| / |C(rep)| with the centralizer found by scanning the whole group.
  const auto elems = list_gsp4(3);
  auto mul = [](const Mat4& a, const Mat4& b) {
    Mat4 o{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        int s = 0;
        for (int k = 0; k < 4; ++k) s += a[i][k] * b[k][j];
        o[i][j] = static_cast<std::uint8_t>(s % 3);
      }
    return o;
  };
  REQUIRE(r.representatives.size() == r.group_classes);
  u64 total = 0;
  for (std::size_t k = 0; k < r.representatives.size(); ++k) {
    const Mat4& g = r.representatives[k];
    u64 centralizer = 0;
    for (const Mat4& h : elems) centralizer += mul(g, h) == mul(h, g);
    REQUIRE(r.class_sizes[k] * centralizer == 103680);
    total += r.class_sizes[k];
  }
  CHECK(total == 103680);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "splitred/census.hpp"
#include "splitred/errors.hpp"

using namespace splitred;

namespace {

// Records rebuilt from brute-force counts, independent of the fast F_{p^2} path.
std::vector<FrobeniusRecord> reference_records(const HyperellipticCurve& c, u64 xmax) {
  std::vector<FrobeniusRecord> out;
  for (u64 p : primes_in_range(3, xmax)) {
    if (c.is_bad(p)) continue;
    out.push_back(frobenius_record_from_counts(p, oracle::brute_count_fp(c.coeffs(), p), count_points_fp2_reference(c, p)));
  }
  return out;
}

}  // namespace

TEST_CASE("tiny census is empty") {
  const auto r = run_census(parse_curve("x^5+x+1"), 2);
  CHECK(r.totals.good_primes == 0);
  CHECK(r.skipped_bad_primes.empty());
  CHECK(r.checkpoints.empty());
}

TEST_CASE("census to 100 matches a recount from brute-force records") {
  const auto c = parse_curve("x^5+x+1");
  std::vector<FrobeniusRecord> streamed;
  const auto r = run_census(c, 100, {}, [&](const FrobeniusRecord& rec) { streamed.push_back(rec); });
  const auto ref = reference_records(c, 100);
  REQUIRE(streamed.size() == ref.size());

  ConditionCounters expected;
  u64 not_simple = 0, dsq = 0, dzero = 0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    CHECK(streamed[i].p == ref[i].p);
    CHECK(streamed[i].a1 == ref[i].a1);
    CHECK(streamed[i].a2 == ref[i].a2);
    expected.add(ref[i]);
    not_simple += ref[i].classification.verdict == Verdict::NotAbsolutelySimple;
    const i64 d = ref[i].a1 * ref[i].a1 - 4 * ref[i].a2 + 8 * static_cast<i64>(ref[i].p);
    const auto root = static_cast<i64>(std::llround(std::sqrt(static_cast<double>(std::max<i64>(d, 0)))));
    dsq += d != 0 && root * root == d;
    dzero += d == 0;
  }
  CHECK(r.totals == expected);
  CHECK(r.totals.not_abs_simple == not_simple);
  CHECK(r.totals.delta_square_nonzero == dsq);
  CHECK(r.totals.delta_zero == dzero);
  CHECK(r.skipped_bad_primes == std::vector<u64>{2, 3, 7, 23});
  CHECK(r.totals.good_primes == 25 - 4);
  REQUIRE(r.checkpoints.size() == 1);
  CHECK(r.checkpoints[0].x == 100);
  CHECK(r.checkpoints[0].counters == r.totals);
}

TEST_CASE("thread count does not change the report or the stream") {
  const auto c = parse_curve("x^5-x+1");
  CensusOptions one, many;
  many.threads = 4;
  one.checkpoints = many.checkpoints = {50, 100, 300, 600};
  std::ostringstream s1, s4;
  const auto r1 = run_census(c, 600, one, [&](const FrobeniusRecord& x) { s1 << csv_row(x) << '\n'; });
  const auto r4 = run_census(c, 600, many, [&](const FrobeniusRecord& x) { s4 << csv_row(x) << '\n'; });
  CHECK(r1 == r4);
  CHECK(s1.str() == s4.str());
  CHECK(report_to_json(r1).dump() == report_to_json(r4).dump());
}

TEST_CASE("census invariants on x^5+1") {
  const auto c = parse_curve("x^5+1");
  std::vector<FrobeniusRecord> recs;
  CensusOptions opts;
  opts.checkpoints = {10, 30, 100, 300, 1000};
  const auto r = run_census(c, 1000, opts, [&](const FrobeniusRecord& x) { recs.push_back(x); });
  for (const auto& cp : r.checkpoints) CHECK(cp.counters.not_abs_simple <= cp.counters.condition_sum());
  for (std::size_t i = 1; i < r.checkpoints.size(); ++i) {
    const auto& a = r.checkpoints[i - 1].counters;
    const auto& b = r.checkpoints[i].counters;
    CHECK(a.good_primes <= b.good_primes);
    CHECK(a.not_abs_simple <= b.not_abs_simple);
    CHECK(a.delta_zero <= b.delta_zero);
    CHECK(a.condition_sum() <= b.condition_sum());
  }
  CHECK(r.extremal.size() <= r.totals.not_abs_simple);
  for (const auto& e : r.extremal) {
    const auto it = std::find_if(recs.begin(), recs.end(), [&](const auto& x) { return x.p == e.p; });
    REQUIRE(it != recs.end());
    CHECK(it->delta == 0);
    const i64 m = static_cast<i64>(isqrt(4 * e.p));
    const i64 pp = static_cast<i64>(e.p);
    CHECK(e.jacobian_order == (pp + 1 + e.sign * m) * (pp + 1 + e.sign * m));
  }
  // x^5 + 1 has every Frobenius polynomial split for p != 1 mod 5.
  CHECK(r.totals.not_abs_simple > r.totals.good_primes / 2);
}

TEST_CASE("trend table") {
  CensusReport empty;
  CHECK_THROWS_AS(trend_table(empty), InvalidArgument);
  CensusReport r;
  r.checkpoints.push_back({100, {}});
  Checkpoint cp{10000, {}};
  cp.counters.not_abs_simple = 7;
  r.checkpoints.push_back(cp);
  const auto t = trend_table(r);
  CHECK(t[0].ratio == 0);
  CHECK(t[1].ratio == doctest::Approx(7 * std::log(10000.0) / 100));
}

TEST_CASE("equidistribution") {
  const auto tally = enumerate_gsp4(3);
  FrobeniusRecord r;
  r.p = 7;
  r.a1 = 1;
  r.a2 = 2;
  const auto e = equidistribution({r}, 3, tally);
  CHECK(e.total == 1);
  u64 keys = 0;
  double sum1 = 0, sum2 = 0;
  for (const auto& k : e.classes) {
    if (k.observed) {
      ++keys;
      CHECK(k.gamma == 1);
      CHECK(k.a1 == 1);
      CHECK(k.a2 == 2);
    }
    (k.gamma == 1 ? sum1 : sum2) += k.expected;
  }
  CHECK(keys == 1);
  CHECK(sum1 == doctest::Approx(1.0));
  CHECK(sum2 == doctest::Approx(1.0));

  FrobeniusRecord neg;
  neg.p = 5;
  neg.a1 = -1;
  neg.a2 = -4;
  const auto f = equidistribution({neg}, 3, tally);
  CHECK(std::any_of(f.classes.begin(), f.classes.end(),
                    [](const auto& k) { return k.observed == 1 && k.gamma == 2 && k.a1 == 2 && k.a2 == 2; }));

  FrobeniusRecord three;
  three.p = 3;
  CHECK_THROWS_AS(equidistribution({three}, 3, tally), InvalidArgument);
  CHECK_THROWS_AS(equidistribution({r}, 7, tally), InvalidArgument);
  CHECK_THROWS_AS(equidistribution({r}, 5, tally), InvalidArgument);
}

TEST_CASE("CSV rows and round trip") {
  CHECK(csv_header() ==
        "p,a1,a2,delta,delta_small,delta_sq_flag,delta_zero_flag,a2_ip_flag,a1_exc_flag,padic_flag,abs_simple,rm_form,"
        "extremal_sign");
  // (X^2 + 4X + 5)^2 at p = 5: Delta = 0, delta_small = 36^2 - 20 * 64 = 16, extremal with sign +.
  const auto rec = frobenius_record_from_counts(5, 5 + 1 + 8, 5 * 5 + 1 + 2 * 26 - 64);
  CHECK(rec.a1 == 8);
  CHECK(rec.a2 == 26);
  CHECK(csv_row(rec) == "5,8,26,0,16,0,1,0,0,0,0,sq:4,+");

  const auto c = parse_curve("x^5+x+1");
  std::stringstream ss;
  ss << csv_header() << '\n';
  std::vector<FrobeniusRecord> recs;
  run_census(c, 200, {}, [&](const FrobeniusRecord& x) {
    recs.push_back(x);
    ss << csv_row(x) << '\n';
  });
  const auto rows = read_census_csv(ss);
  REQUIRE(rows.size() == recs.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].p == recs[i].p);
    CHECK(rows[i].delta == recs[i].delta);
  }

  std::stringstream bad("p,a1\n");
  CHECK_THROWS_AS(read_census_csv(bad), InvalidArgument);
  std::stringstream bad_row(csv_header() + "\n5,x,26,0,0,0,1,0,0,0,0,sq:4,+\n");
  CHECK_THROWS_AS(read_census_csv(bad_row), InvalidArgument);
}

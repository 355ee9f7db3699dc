#pragma once

// Prime sweeps over a genus-2 curve: per-prime Frobenius records, condition
// counters for non-absolutely-simple reduction, decade checkpoints, extremal
// primes, and comparison of Frobenius residues mod l against GSp_4(F_l) tallies.
//
// The counters are necessary-condition counts: a prime is counted when its
// Frobenius polynomial fails the absolute-simplicity test, which is an upper
// bound for the number of primes with split reduction.

#include <array>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "splitred/curve.hpp"
#include "splitred/gsp4.hpp"

namespace splitred {

struct ConditionCounters {
  u64 good_primes = 0;
  u64 delta_square_nonzero = 0;
  u64 delta_zero = 0;
  std::array<u64, 9> a2_multiple{};   // a2 = i p, index i + 2
  std::array<u64, 4> a1_exception{};  // indexed by A1Exception
  u64 padic_branch = 0;
  u64 not_abs_simple = 0;
  u64 rm_square_form = 0;
  u64 rm_mixed_form = 0;
  u64 extremal = 0;

  void add(const FrobeniusRecord& r);
  // Sum of every individual condition counter (a prime may fire several).
  u64 condition_sum() const;
  friend bool operator==(const ConditionCounters&, const ConditionCounters&) = default;
};

struct Checkpoint {
  u64 x = 0;
  ConditionCounters counters;
  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

struct ExtremalEntry {
  u64 p = 0;
  int sign = 0;
  i64 a1 = 0;
  i64 a2 = 0;
  i64 jacobian_order = 0;
  friend bool operator==(const ExtremalEntry&, const ExtremalEntry&) = default;
};

struct CensusReport {
  std::string curve;
  u64 xmax = 0;
  ConditionCounters totals;
  std::vector<u64> skipped_bad_primes;
  std::vector<ExtremalEntry> extremal;
  std::vector<Checkpoint> checkpoints;
  friend bool operator==(const CensusReport&, const CensusReport&) = default;
};

struct CensusOptions {
  std::vector<u64> checkpoints{100, 1'000, 10'000};
  unsigned threads = 1;
};

using RecordSink = std::function<void(const FrobeniusRecord&)>;

// Sweeps 3 <= p <= xmax. Records reach the sink in increasing p whatever the
// thread count. Checkpoints above xmax are dropped; xmax < 3 gives an empty report.
CensusReport run_census(const HyperellipticCurve& c, u64 xmax, const CensusOptions& opts = {},
                        const RecordSink& sink = nullptr);

struct TrendRow {
  u64 x = 0;
  u64 count = 0;
  double ratio = 0;  // count * ln x / sqrt x
};

// Throws InvalidArgument if the report has no checkpoints.
std::vector<TrendRow> trend_table(const CensusReport& r);

struct EquidistClass {
  u64 gamma = 0;
  u64 a1 = 0;
  u64 a2 = 0;
  u64 observed = 0;
  u64 fiber_primes = 0;  // census primes with p = gamma mod l
  double expected = 0;   // tally(gamma, a1, a2) / |G^gamma|
  double observed_fraction = 0;
  double deviation = 0;  // |observed_fraction - expected|
  double tolerance = 0;  // 5 sqrt(f (1 - f) / n)
  bool within = false;
};

struct EquidistReport {
  u64 ell = 0;
  u64 total = 0;
  std::vector<EquidistClass> classes;
  double max_abs_deviation = 0;
  double chi_square = 0;
  double fraction_within = 0;  // over classes whose fiber has primes
};

// Throws InvalidArgument for l outside {3, 5}, a tally for another l, or no
// records coprime to l.
EquidistReport equidistribution(const std::vector<FrobeniusRecord>& records, u64 ell, const GroupTally& tally);

// Monic quintic with coefficients below x^5 drawn uniformly from [-5, 5] by a
// seeded mt19937_64, redrawn until squarefree with good reduction at every
// prime in good_at.
HyperellipticCurve seeded_curve(u64 seed, const std::vector<u64>& good_at = {});

// CSV interchange, one row per good prime.
std::string csv_header();
std::string csv_row(const FrobeniusRecord& r);

struct CensusRow {
  u64 p = 0;
  i64 a1 = 0;
  i64 a2 = 0;
  i64 delta = 0;
};

// Reads rows written by csv_row after csv_header. Throws InvalidArgument on a
// malformed header or row.
std::vector<CensusRow> read_census_csv(std::istream& in);

nlohmann::ordered_json record_to_json(const FrobeniusRecord& r);
nlohmann::ordered_json counters_to_json(const ConditionCounters& c);
nlohmann::ordered_json report_to_json(const CensusReport& r);
nlohmann::ordered_json equidist_to_json(const EquidistReport& r);

}  // namespace splitred

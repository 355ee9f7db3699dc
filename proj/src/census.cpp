#include "splitred/census.hpp"

#include <algorithm>
#include <cmath>
#include <condition_variable>
#include <exception>
#include <istream>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "splitred/errors.hpp"

namespace splitred {

void ConditionCounters::add(const FrobeniusRecord& r) {
  const auto& c = r.classification;
  ++good_primes;
  delta_square_nonzero += c.reasons.delta_square_nonzero;
  delta_zero += c.reasons.delta_zero;
  if (c.reasons.a2_multiple) ++a2_multiple[static_cast<std::size_t>(*c.reasons.a2_multiple + 2)];
  for (std::size_t k = 0; k < 4; ++k) a1_exception[k] += c.reasons.a1_exception[k];
  padic_branch += c.reasons.padic_branch;
  not_abs_simple += c.verdict == Verdict::NotAbsolutelySimple;
  if (c.rm_form) {
    if (std::holds_alternative<SquareForm>(*c.rm_form)) {
      ++rm_square_form;
    } else {
      ++rm_mixed_form;
    }
  }
  extremal += c.extremal.has_value();
}

u64 ConditionCounters::condition_sum() const {
  u64 s = delta_square_nonzero + delta_zero + padic_branch;
  for (u64 v : a2_multiple) s += v;
  for (u64 v : a1_exception) s += v;
  return s;
}

namespace {

// Consumes records in increasing p and maintains every report field.
class Accumulator {
 public:
  Accumulator(CensusReport& report, std::vector<u64> checkpoints, const RecordSink& sink)
      : report_(report), pending_(std::move(checkpoints)), sink_(sink) {}

  void record(const FrobeniusRecord& r) {
    close_checkpoints_below(r.p);
    report_.totals.add(r);
    if (r.classification.extremal) {
      report_.extremal.push_back({r.p, *r.classification.extremal, r.a1, r.a2, r.quartic().value_at_one()});
    }
    if (sink_) sink_(r);
  }

  void finish() { close_checkpoints_below(UINT64_MAX); }

 private:
  void close_checkpoints_below(u64 p) {
    while (next_ < pending_.size() && pending_[next_] < p) {
      report_.checkpoints.push_back({pending_[next_], report_.totals});
      ++next_;
    }
  }

  CensusReport& report_;
  std::vector<u64> pending_;
  std::size_t next_ = 0;
  const RecordSink& sink_;
};

}  // namespace

CensusReport run_census(const HyperellipticCurve& c, u64 xmax, const CensusOptions& opts, const RecordSink& sink) {
  CensusReport report;
  report.curve = c.to_string();
  report.xmax = xmax;
  std::vector<u64> cps;
  for (u64 x : opts.checkpoints) {
    if (x <= xmax) cps.push_back(x);
  }
  std::sort(cps.begin(), cps.end());
  cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
  if (xmax < 3) return report;

  std::vector<u64> good;
  for (u64 p : primes_in_range(3, xmax)) {
    if (c.is_bad(p)) {
      report.skipped_bad_primes.push_back(p);
    } else {
      good.push_back(p);
    }
  }
  if (xmax >= 2) report.skipped_bad_primes.insert(report.skipped_bad_primes.begin(), 2);

  Accumulator acc(report, cps, sink);
  const unsigned threads = std::max(1u, opts.threads);
  if (threads == 1) {
    for (u64 p : good) acc.record(frobenius_record(c, p));
    acc.finish();
    return report;
  }

  // Chunks are claimed in order; finished chunks wait in a bounded reorder
  // buffer until every earlier chunk has been emitted.
  constexpr std::size_t kChunk = 8;
  const std::size_t nchunks = (good.size() + kChunk - 1) / kChunk;
  const std::size_t window = 4 * static_cast<std::size_t>(threads);
  std::mutex mu;
  std::condition_variable cv;
  std::size_t next_claim = 0, next_emit = 0;
  std::map<std::size_t, std::vector<FrobeniusRecord>> ready;
  std::exception_ptr failure;

  auto worker = [&] {
    std::vector<FrobeniusRecord> buf;
    for (;;) {
      std::size_t k;
      {
        std::unique_lock lock(mu);
        cv.wait(lock, [&] { return failure || next_claim >= nchunks || next_claim < next_emit + window; });
        if (failure || next_claim >= nchunks) return;
        k = next_claim++;
      }
      buf.clear();
      try {
        const std::size_t end = std::min(good.size(), (k + 1) * kChunk);
        for (std::size_t i = k * kChunk; i < end; ++i) buf.push_back(frobenius_record(c, good[i]));
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        cv.notify_all();
        return;
      }
      std::lock_guard lock(mu);
      ready.emplace(k, std::move(buf));
      buf = {};
      try {
        for (auto it = ready.find(next_emit); it != ready.end(); it = ready.find(next_emit)) {
          for (const auto& r : it->second) acc.record(r);
          ready.erase(it);
          ++next_emit;
        }
      } catch (...) {
        if (!failure) failure = std::current_exception();
      }
      cv.notify_all();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  acc.finish();
  return report;
}

std::vector<TrendRow> trend_table(const CensusReport& r) {
  if (r.checkpoints.empty()) throw InvalidArgument("trend table needs at least one checkpoint");
  std::vector<TrendRow> out;
  for (const auto& cp : r.checkpoints) {
    const double x = static_cast<double>(cp.x);
    const u64 n = cp.counters.not_abs_simple;
    out.push_back({cp.x, n, static_cast<double>(n) * std::log(x) / std::sqrt(x)});
  }
  return out;
}

EquidistReport equidistribution(const std::vector<FrobeniusRecord>& records, u64 ell, const GroupTally& tally) {
  if (ell != 3 && ell != 5) throw InvalidArgument("equidistribution supports l in {3, 5}");
  if (tally.ell() != ell) throw InvalidArgument("group tally was built for a different l");
  EquidistReport rep;
  rep.ell = ell;
  std::vector<u64> observed((ell - 1) * ell * ell, 0);
  std::vector<u64> fiber(ell, 0);
  auto idx = [&](u64 g, u64 a1, u64 a2) { return ((g - 1) * ell + a1) * ell + a2; };
  for (const auto& r : records) {
    const u64 g = r.p % ell;
    if (g == 0) continue;
    ++observed[idx(g, mod(r.a1, ell), mod(r.a2, ell))];
    ++fiber[g];
    ++rep.total;
  }
  if (rep.total == 0) throw InvalidArgument("no census primes coprime to l");

  u64 scored = 0, within = 0;
  for (u64 g = 1; g < ell; ++g) {
    const double group_fiber = static_cast<double>(tally.fiber_size(g));
    for (u64 a1 = 0; a1 < ell; ++a1) {
      for (u64 a2 = 0; a2 < ell; ++a2) {
        EquidistClass k;
        k.gamma = g;
        k.a1 = a1;
        k.a2 = a2;
        k.observed = observed[idx(g, a1, a2)];
        k.fiber_primes = fiber[g];
        k.expected = static_cast<double>(tally.count(g, a1, a2)) / group_fiber;
        if (k.fiber_primes > 0) {
          const double n = static_cast<double>(k.fiber_primes);
          k.observed_fraction = static_cast<double>(k.observed) / n;
          k.deviation = std::fabs(k.observed_fraction - k.expected);
          k.tolerance = 5.0 * std::sqrt(k.expected * (1.0 - k.expected) / n);
          k.within = k.deviation <= k.tolerance;
          ++scored;
          within += k.within;
          rep.max_abs_deviation = std::max(rep.max_abs_deviation, k.deviation);
          const double e = n * k.expected;
          if (e > 0) rep.chi_square += (static_cast<double>(k.observed) - e) * (static_cast<double>(k.observed) - e) / e;
        }
        rep.classes.push_back(k);
      }
    }
  }
  rep.fraction_within = scored ? static_cast<double>(within) / static_cast<double>(scored) : 0.0;
  return rep;
}

HyperellipticCurve seeded_curve(u64 seed, const std::vector<u64>& good_at) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-5, 5);
  for (;;) {
    std::vector<i64> f(6);
    for (std::size_t i = 0; i < 5; ++i) f[i] = coeff(rng);
    f[5] = 1;
    try {
      HyperellipticCurve c(f);
      if (std::none_of(good_at.begin(), good_at.end(), [&](u64 p) { return c.is_bad(p); })) return c;
    } catch (const ModelRejected&) {
    }
  }
}

std::string csv_header() {
  return "p,a1,a2,delta,delta_small,delta_sq_flag,delta_zero_flag,a2_ip_flag,a1_exc_flag,padic_flag,abs_simple,rm_form,"
         "extremal_sign";
}

std::string csv_row(const FrobeniusRecord& r) {
  const auto& c = r.classification;
  std::ostringstream os;
  os << r.p << ',' << r.a1 << ',' << r.a2 << ',' << r.delta << ',' << r.delta_small << ','
     << int{c.reasons.delta_square_nonzero} << ',' << int{c.reasons.delta_zero} << ','
     << int{c.reasons.a2_multiple.has_value()} << ',' << int{c.reasons.any_a1_exception()} << ','
     << int{c.reasons.padic_branch} << ',' << int{c.verdict == Verdict::AbsolutelySimple} << ','
     << format_rm_form(c.rm_form) << ',';
  if (c.extremal) os << (*c.extremal > 0 ? '+' : '-');
  return os.str();
}

namespace {

i64 parse_int_field(const std::string& s, std::size_t line) {
  std::size_t pos = 0;
  i64 v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (s.empty() || pos != s.size()) {
    throw InvalidArgument("census CSV line " + std::to_string(line) + ": bad integer '" + s + "'");
  }
  return v;
}

}  // namespace

std::vector<CensusRow> read_census_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("census CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != csv_header()) throw InvalidArgument("census CSV header does not match the expected columns");
  std::vector<CensusRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    if (line.back() == ',') fields.emplace_back();
    if (fields.size() != 13) throw InvalidArgument("census CSV line " + std::to_string(lineno) + ": expected 13 fields");
    const i64 p = parse_int_field(fields[0], lineno);
    if (p < 3) throw InvalidArgument("census CSV line " + std::to_string(lineno) + ": bad prime");
    rows.push_back({static_cast<u64>(p), parse_int_field(fields[1], lineno), parse_int_field(fields[2], lineno),
                    parse_int_field(fields[3], lineno)});
  }
  return rows;
}

nlohmann::ordered_json record_to_json(const FrobeniusRecord& r) {
  const auto& c = r.classification;
  nlohmann::ordered_json j;
  j["p"] = r.p;
  j["a1"] = r.a1;
  j["a2"] = r.a2;
  j["delta"] = r.delta;
  j["delta_small"] = r.delta_small;
  j["verdict"] = c.verdict == Verdict::AbsolutelySimple ? "AbsolutelySimple" : "NotAbsolutelySimple";
  auto reasons = nlohmann::ordered_json::object();
  reasons["delta_square_nonzero"] = c.reasons.delta_square_nonzero;
  reasons["delta_zero"] = c.reasons.delta_zero;
  reasons["a2_multiple"] = c.reasons.a2_multiple ? nlohmann::ordered_json(*c.reasons.a2_multiple) : nullptr;
  reasons["a1_exception"] = c.reasons.a1_exception;
  reasons["padic_branch"] = c.reasons.padic_branch;
  j["reasons"] = reasons;
  j["rm_form"] = format_rm_form(c.rm_form);
  j["extremal"] = c.extremal ? nlohmann::ordered_json(*c.extremal) : nullptr;
  return j;
}

nlohmann::ordered_json counters_to_json(const ConditionCounters& c) {
  nlohmann::ordered_json j;
  j["good_primes"] = c.good_primes;
  j["delta_square_nonzero"] = c.delta_square_nonzero;
  j["delta_zero"] = c.delta_zero;
  auto a2 = nlohmann::ordered_json::object();
  for (int i = -2; i <= 6; ++i) a2[std::to_string(i)] = c.a2_multiple[static_cast<std::size_t>(i + 2)];
  j["a2_multiple"] = a2;
  j["a1_exception"] = {{"zero", c.a1_exception[0]},
                       {"q_plus_a2", c.a1_exception[1]},
                       {"twice_a2", c.a1_exception[2]},
                       {"three_a2_minus_q", c.a1_exception[3]}};
  j["padic_branch"] = c.padic_branch;
  j["not_abs_simple"] = c.not_abs_simple;
  j["condition_sum"] = c.condition_sum();
  j["rm_square_form"] = c.rm_square_form;
  j["rm_mixed_form"] = c.rm_mixed_form;
  j["extremal"] = c.extremal;
  return j;
}

nlohmann::ordered_json report_to_json(const CensusReport& r) {
  nlohmann::ordered_json j;
  j["curve"] = r.curve;
  j["xmax"] = r.xmax;
  j["count_kind"] = "necessary-condition count (upper bound for split reduction)";
  j["total_good_primes"] = r.totals.good_primes;
  j["not_abs_simple_count"] = r.totals.not_abs_simple;
  j["rm_square_form_count"] = r.totals.rm_square_form;
  j["counters"] = counters_to_json(r.totals);
  j["skipped_bad_primes"] = r.skipped_bad_primes;
  auto ext = nlohmann::ordered_json::array();
  for (const auto& e : r.extremal) {
    ext.push_back({{"p", e.p}, {"sign", e.sign > 0 ? "+" : "-"}, {"a1", e.a1}, {"a2", e.a2}, {"jacobian_order", e.jacobian_order}});
  }
  j["extremal_list"] = ext;
  auto cps = nlohmann::ordered_json::array();
  for (const auto& cp : r.checkpoints) cps.push_back({{"x", cp.x}, {"counters", counters_to_json(cp.counters)}});
  j["checkpoints"] = cps;
  if (!r.checkpoints.empty()) {
    auto trend = nlohmann::ordered_json::array();
    for (const auto& t : trend_table(r)) trend.push_back({{"x", t.x}, {"count", t.count}, {"ratio", t.ratio}});
    j["trend"] = trend;
  }
  return j;
}

nlohmann::ordered_json equidist_to_json(const EquidistReport& r) {
  nlohmann::ordered_json j;
  j["ell"] = r.ell;
  j["total"] = r.total;
  j["max_abs_deviation"] = r.max_abs_deviation;
  j["chi_square"] = r.chi_square;
  j["fraction_within"] = r.fraction_within;
  auto cls = nlohmann::ordered_json::array();
  for (const auto& k : r.classes) {
    cls.push_back({{"gamma", k.gamma},
                   {"a1", k.a1},
                   {"a2", k.a2},
                   {"observed", k.observed},
                   {"fiber_primes", k.fiber_primes},
                   {"expected", k.expected},
                   {"observed_fraction", k.observed_fraction},
                   {"deviation", k.deviation},
                   {"tolerance", k.tolerance},
                   {"within", k.within}});
  }
  j["classes"] = cls;
  return j;
}

}  // namespace splitred

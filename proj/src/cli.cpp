#include "splitred/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "splitred/census.hpp"
#include "splitred/curve.hpp"
#include "splitred/errors.hpp"
#include "splitred/sieve.hpp"
#include "splitred/weil.hpp"

namespace splitred {

using ojson = nlohmann::ordered_json;

namespace {

unsigned default_threads() {
  if (const char* env = std::getenv(kThreadsEnv)) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) throw InvalidArgument(std::string(kThreadsEnv) + " must be a positive integer");
    return static_cast<unsigned>(v);
  }
  return 1;
}

// Writes to --output when given, otherwise to the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      os_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw InvalidArgument("cannot open output file " + path);
      os_ = file_.get();
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_ = nullptr;
};

std::vector<u64> parse_u64_list(const std::string& text) {
  std::vector<u64> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (item.empty() || pos != item.size()) throw InvalidArgument("bad integer list '" + text + "'");
    out.push_back(v);
  }
  return out;
}

const char* violation_name(WeilViolation v) {
  switch (v) {
    case WeilViolation::None: return "none";
    case WeilViolation::A1TooLarge: return "a1_too_large";
    case WeilViolation::BelowLowerBound: return "below_lower_bound";
    case WeilViolation::AboveUpperBound: return "above_upper_bound";
  }
  return "unknown";
}

struct Common {
  unsigned threads = 0;
  std::string output;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--threads", c.threads, std::string("Worker threads (default: $") + kThreadsEnv + " or 1)")
      ->check(CLI::PositiveNumber);
  sub->add_option("-o,--output", c.output, "Write the result to this file instead of stdout");
}

unsigned resolve_threads(const Common& c) { return c.threads ? c.threads : default_threads(); }

}  // namespace

ojson gsp4_archive(u64 ell, const EnumerationOptions& opts) {
  EnumerationStats stats;
  const auto t = enumerate_gsp4(ell, opts, &stats);
  const auto conj = conj_tallies(t);
  const auto fib = charpoly_fiber_check(t);
  const auto exc = exceptional_class_sizes(t);

  ojson exact;
  exact["ell"] = ell;
  exact["order"] = t.order();
  exact["expected_order"] = GroupTally::expected_order(ell);
  auto fibers = ojson::array();
  for (u64 g = 1; g < ell; ++g) fibers.push_back(t.fiber_size(g));
  exact["multiplier_fibers"] = fibers;
  auto counts = ojson::array();
  for (const auto& [key, n] : fib.counts) counts.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), n});
  exact["counts"] = counts;
  exact["legendre_classes"] = {{"c1", conj.c1}, {"c0", conj.c0}, {"cm1", conj.cm1}, {"projective_order", conj.projective_order}};
  exact["charpoly_fibers"] = {{"keys", fib.counts.size()}, {"min", fib.min_count}, {"max", fib.max_count}, {"total", fib.total}};
  auto a2m = ojson::object();
  for (int i = -2; i <= 6; ++i) a2m[std::to_string(i)] = exc.a2_multiple[static_cast<std::size_t>(i + 2)];
  exact["exceptional"] = {{"delta_zero", exc.delta_zero},
                          {"a2_multiple", a2m},
                          {"a1_zero", exc.a1_zero},
                          {"a1sq_gamma_plus_a2", exc.a1sq_gamma_plus_a2},
                          {"a1sq_twice_a2", exc.a1sq_twice_a2},
                          {"a1sq_three_a2_minus_gamma", exc.a1sq_three_a2_minus_gamma}};

  ojson measured;
  measured["c_ell"] = conj.measured_c_ell;
  measured["c0_within_bound"] = conj.c0_within_bound;
  measured["c1_within_bound"] = conj.c1_within_bound;
  measured["fiber_deviation_constant"] = fib.deviation_constant;
  measured["delta_zero_constant"] = exc.delta_zero_constant;
  measured["exceptional_within_bound"] = exc.all_within_bound;
  measured["spot_checks"] = stats.spot_checks;

  if (ell == 3) {
    const auto brute = scan_gsp4_bruteforce(3, opts.threads);
    measured["full_scan_matches"] = brute == t;
    if (!(brute == t)) throw ConsistencyError("basis completion and full matrix scan disagree");
    const auto cls = class_number(3);
    exact["class_number"] = {{"closure_size", cls.closure_size},
                             {"group_classes", cls.group_classes},
                             {"projective_classes", cls.projective_classes}};
    measured["class_number_constant"] = static_cast<double>(cls.group_classes) / 27.0;
    measured["projective_classes_within_bound"] = cls.projective_classes * (ell - 1) <= cls.group_classes * 4;
  }

  ojson out;
  out["exact"] = exact;
  out["measured"] = measured;
  out["seed"] = opts.seed;
  return out;
}

ojson pairs_archive(u64 ell) {
  const auto p = enumerate_pairs(ell);
  ojson exact;
  exact["ell"] = ell;
  exact["gl2_order"] = p.gl2_order;
  exact["g_order"] = p.g_order;
  exact["t_order"] = p.t_order;
  exact["c_rm"] = p.c_rm;
  exact["c_cm"] = p.c_cm;
  auto fibers = ojson::array();
  for (const auto& [key, n] : p.gl2_fibers) fibers.push_back({key.first, key.second, n});
  exact["gl2_fibers"] = fibers;

  const u64 l = ell;
  ojson checks;
  checks["gl2_order_formula"] = p.gl2_order == (l * l - 1) * (l * l - l);
  checks["g_order_formula"] = p.g_order == (l - 1) * (l - 1) * (l - 1) * l * l * (l + 1) * (l + 1);
  checks["t_order_formula"] = p.t_order == (l - 1) * (l - 1) * (l - 1);
  checks["c_cm_formula"] = p.c_cm == 2 * l - 3;
  if (ell == 3) {
    const auto d = pair_direct_counts(3);
    exact["direct"] = {{"g_order", d.g_order},
                       {"c_rm", d.c_rm},
                       {"group_classes", d.group_classes},
                       {"projective_classes", d.projective_classes}};
    checks["c_rm_two_ways"] = d.c_rm == p.c_rm;
    checks["g_order_two_ways"] = d.g_order == p.g_order;
    if (d.c_rm != p.c_rm || d.g_order != p.g_order) throw ConsistencyError("pair counts disagree between methods");
  }
  ojson out;
  out["exact"] = exact;
  out["checks"] = checks;
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frobenius statistics of genus-2 curves: absolute simplicity of reductions, GSp_4 tallies, square sieve"};
  app.require_subcommand(1);
  app.fallthrough(false);

  // classify
  i64 q = 0, a1 = 0, a2 = 0;
  u64 factor_ell = 0;
  Common classify_opts;
  auto* classify_cmd = app.add_subcommand(
      "classify",
      "Classify X^4 + a1 X^3 + a2 X^2 + q a1 X + q^2 over a prime q. Exercises the exact Weil-bound inequalities "
      "for genus-2 Frobenius polynomials and the coefficient criterion for absolute simplicity: a square discriminant "
      "a1^2 - 4a2 + 8q, the a2 = i q cases, the four a1^2 exceptions and the q-adic square test. Also reports the "
      "real-multiplication split shape, the extremal check, and with --ell the factorization mod l into reciprocal "
      "quadratics X^2 + b X + q chosen by the Legendre symbol of the discriminant.");
  classify_cmd->add_option("--q", q, "Odd prime q")->required();
  classify_cmd->add_option("--a1", a1, "Coefficient a1")->required();
  classify_cmd->add_option("--a2", a2, "Coefficient a2")->required();
  classify_cmd->add_option("--ell", factor_ell, "Also factor the quartic mod this odd prime");
  add_common(classify_cmd, classify_opts);

  // census
  std::string curve_text;
  u64 xmax = 0;
  std::string checkpoints = "100,1000,10000";
  std::string format = "csv";
  std::string report_path;
  Common census_opts;
  auto* census_cmd = app.add_subcommand(
      "census",
      "Sweep every good prime p <= xmax of y^2 = f(x), computing the Frobenius polynomial from point counts over F_p "
      "and F_{p^2}, and count the primes where the absolute-simplicity criterion fails, split by condition (the "
      "term-by-term decomposition of the split-prime count). The counts are necessary-condition counts, an upper "
      "bound for split reduction. Emits one CSV row per prime or a JSON report with decade checkpoints and the "
      "count * log x / sqrt x trend.");
  census_cmd->add_option("--curve", curve_text, "Polynomial f, e.g. \"x^5+x+1\", or coefficients \"1,1,0,0,0,1\"")->required();
  census_cmd->add_option("--xmax", xmax, "Largest prime to include (>= 3)")->required();
  census_cmd->add_option("--checkpoints", checkpoints, "Comma-separated checkpoint bounds")->capture_default_str();
  census_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  census_cmd->add_option("--report", report_path, "With csv output, also write the JSON report here");
  add_common(census_cmd, census_opts);

  // gsp4-verify
  u64 ell = 3;
  bool slow = false;
  std::string golden;
  u64 seed = 0;
  Common gsp4_opts;
  auto* gsp4_cmd = app.add_subcommand(
      "gsp4-verify",
      "Enumerate GSp_4(F_l) by symplectic basis completion and tally characteristic polynomials by (multiplier, a1, "
      "a2). Checks the group order l^4 (l-1)(l^2-1)(l^4-1), the Legendre-class sizes of the discriminant in the "
      "projective group (about l^10/2 squares and l^9 zeros), the near-uniform size l^8 of each characteristic-"
      "polynomial fiber, the sizes of the exceptional coefficient sets, and at l = 3 the full 3^16 scan and the "
      "conjugacy class number.");
  gsp4_cmd->add_option("--ell", ell, "l in {3, 5}, or 7 with --slow")->capture_default_str();
  gsp4_cmd->add_flag("--slow", slow, "Allow l = 7");
  gsp4_cmd->add_option("--golden", golden, "Compare the exact tallies with this JSON archive");
  gsp4_cmd->add_option("--seed", seed, "Seed for the spot-check sample")->capture_default_str();
  add_common(gsp4_cmd, gsp4_opts);

  // pairs-verify
  u64 pairs_ell = 3;
  std::string pairs_golden;
  Common pairs_opts;
  auto* pairs_cmd = app.add_subcommand(
      "pairs-verify",
      "Enumerate GL_2(F_l) characteristic-polynomial fibers (l^2 + l split, l^2 - l irreducible, l^2 repeated), the "
      "order (l-1)^3 l^2 (l+1)^2 of the equal-determinant pair group, the size of the equal-trace set of order about "
      "l^5 used for real multiplication, the diagonal torus (l-1)^3 and its equal-trace subset 2l - 3 used for "
      "complex multiplication, with conjugacy classes of the pair group at l = 3.");
  pairs_cmd->add_option("--ell", pairs_ell, "l in {3, 5, 7}")->capture_default_str();
  pairs_cmd->add_option("--golden", pairs_golden, "Compare the exact counts with this JSON archive");
  add_common(pairs_cmd, pairs_opts);

  // sieve
  std::string input;
  std::string z_text;
  u64 sieve_x = 0;
  std::string sieve_curve;
  u64 floor = 0;
  std::size_t cap = 64;
  std::string pair_text;
  Common sieve_opts;
  auto* sieve_cmd = app.add_subcommand(
      "sieve",
      "Apply the square sieve to the discriminants a1^2 - 4a2 + 8p of a census CSV: counts the nonzero squares "
      "exactly and evaluates the four right-hand terms |A|/|P|, the largest Jacobi sum |S(l1 l2)| over prime pairs, "
      "and the two divisor-count terms, as exact rationals, for the primes P in (max(z, floor), 2z). Also reports "
      "the error terms x log z / z and x log x (log z)^2 / z^2.");
  sieve_cmd->add_option("--input", input, "Census CSV")->required();
  sieve_cmd->add_option("--z", z_text, "z as an integer or x^{a/b}")->required();
  sieve_cmd->add_option("--x", sieve_x, "x (default: largest prime in the CSV)");
  sieve_cmd->add_option("--curve", sieve_curve, "Exclude this curve's bad primes from the window");
  sieve_cmd->add_option("--floor", floor, "Exclude window primes <= floor")->capture_default_str();
  sieve_cmd->add_option("--cap", cap, "Maximum window size")->capture_default_str()->check(CLI::Range(2, 4096));
  sieve_cmd->add_option("--pair", pair_text, "Also report S(l1 l2) for \"l1,l2\"");
  add_common(sieve_cmd, sieve_opts);

  // extremal
  std::string ext_curve;
  u64 ext_xmax = 0;
  std::string ext_format = "csv";
  Common ext_opts;
  auto* ext_cmd = app.add_subcommand(
      "extremal",
      "List the good primes p <= xmax where the Frobenius polynomial is (X^2 +- floor(2 sqrt p) X + p)^2, so the "
      "Jacobian has (p + 1 +- floor(2 sqrt p))^2 points: the extremal primes forced into split reduction.");
  ext_cmd->add_option("--curve", ext_curve, "Polynomial f")->required();
  ext_cmd->add_option("--xmax", ext_xmax, "Largest prime to include (>= 3)")->required();
  ext_cmd->add_option("--format", ext_format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  add_common(ext_cmd, ext_opts);

  // equidist
  std::string eq_curve;
  u64 eq_xmax = 0;
  u64 eq_ell = 3;
  u64 eq_seed = 0;
  Common eq_opts;
  auto* eq_cmd = app.add_subcommand(
      "equidist",
      "Compare Frobenius residues (p, a1, a2) mod l over good primes p <= xmax with the Chebotarev prediction: "
      "conditional on p = g mod l, class (a1, a2) should occur with frequency #{M in GSp_4(F_l) of multiplier g "
      "with that characteristic polynomial} / #{multiplier g}. Without --curve a seeded random quintic is used.");
  eq_cmd->add_option("--curve", eq_curve, "Polynomial f (default: seeded random monic quintic)");
  eq_cmd->add_option("--xmax", eq_xmax, "Largest prime to include (>= 3)")->required();
  eq_cmd->add_option("--ell", eq_ell, "l in {3, 5}")->capture_default_str();
  eq_cmd->add_option("--seed", eq_seed, "Seed for the random curve")->capture_default_str();
  add_common(eq_cmd, eq_opts);

  std::vector<const char*> argv{"splitred"};
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
      return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
      app.exit(e, out, err);
      return 1;
    }

    if (classify_cmd->parsed()) {
      const auto v = validate(q, a1, a2);
      if (!v.valid()) {
        err << "error: (" << q << ", " << a1 << ", " << a2 << ") violates the Weil bounds (" << violation_name(v.violation)
            << ")\n";
        return 1;
      }
      const auto c = classify(*v.quartic);
      const auto d = discriminants(*v.quartic);
      FrobeniusRecord rec{static_cast<u64>(q), a1, a2, d.delta, d.delta_small, c};
      ojson j = record_to_json(rec);
      j.erase("p");
      ojson outj;
      outj["q"] = q;
      for (auto it = j.begin(); it != j.end(); ++it) outj[it.key()] = it.value();
      outj["jacobian_order"] = v.quartic->value_at_one();
      if (factor_ell) {
        const auto f = factor_reciprocal_mod_ell(a1, a2, q, factor_ell);
        ojson fj;
        fj["ell"] = factor_ell;
        if (const auto* dq = std::get_if<DistinctQuadratics>(&f)) {
          fj["type"] = "distinct";
          fj["beta"] = {dq->beta1, dq->beta2};
        } else if (const auto* sq = std::get_if<SquareQuadratic>(&f)) {
          fj["type"] = "square";
          fj["beta"] = {sq->beta};
        } else {
          fj["type"] = "nonresidue";
        }
        outj["factorization"] = fj;
      }
      Sink s(classify_opts.output, out);
      s.stream() << outj.dump(2) << '\n';
      return 0;
    }

    if (census_cmd->parsed()) {
      if (xmax < 3) throw InvalidArgument("--xmax must be at least 3");
      const auto curve = parse_curve(curve_text);
      CensusOptions opts;
      opts.checkpoints = parse_u64_list(checkpoints);
      opts.threads = resolve_threads(census_opts);
      Sink s(census_opts.output, out);
      if (format == "csv") {
        auto& os = s.stream();
        os << csv_header() << '\n';
        const auto report = run_census(curve, xmax, opts, [&](const FrobeniusRecord& r) { os << csv_row(r) << '\n'; });
        if (!report_path.empty()) {
          Sink rs(report_path, out);
          rs.stream() << report_to_json(report).dump(2) << '\n';
        }
      } else {
        auto records = ojson::array();
        const auto report = run_census(curve, xmax, opts, [&](const FrobeniusRecord& r) { records.push_back(record_to_json(r)); });
        ojson j = report_to_json(report);
        j["records"] = records;
        s.stream() << j.dump(2) << '\n';
      }
      return 0;
    }

    if (gsp4_cmd->parsed()) {
      EnumerationOptions opts;
      opts.allow_slow = slow;
      opts.seed = seed;
      opts.threads = resolve_threads(gsp4_opts);
      const auto archive = gsp4_archive(ell, opts);
      Sink s(gsp4_opts.output, out);
      s.stream() << archive.dump(2) << '\n';
      if (!golden.empty()) {
        std::ifstream in(golden);
        if (!in) throw InvalidArgument("cannot open golden file " + golden);
        const auto g = ojson::parse(in, nullptr, false);
        if (g.is_discarded() || !g.contains("exact")) throw InvalidArgument("golden file is not a tally archive");
        if (g["exact"] != archive["exact"]) throw ConsistencyError("tallies differ from golden file " + golden);
        err << "golden: match\n";
      }
      return 0;
    }

    if (pairs_cmd->parsed()) {
      const auto archive = pairs_archive(pairs_ell);
      Sink s(pairs_opts.output, out);
      s.stream() << archive.dump(2) << '\n';
      if (!pairs_golden.empty()) {
        std::ifstream in(pairs_golden);
        if (!in) throw InvalidArgument("cannot open golden file " + pairs_golden);
        const auto g = ojson::parse(in, nullptr, false);
        if (g.is_discarded() || !g.contains("exact")) throw InvalidArgument("golden file is not a pair archive");
        if (g["exact"] != archive["exact"]) throw ConsistencyError("pair counts differ from golden file " + pairs_golden);
        err << "golden: match\n";
      }
      return 0;
    }

    if (sieve_cmd->parsed()) {
      std::ifstream in(input);
      if (!in) throw InvalidArgument("cannot open census CSV " + input);
      const auto rows = read_census_csv(in);
      u64 x = sieve_x;
      for (const auto& r : rows) x = sieve_x ? x : std::max(x, r.p);
      if (x < 3) throw InvalidArgument("cannot infer x from an empty census; pass --x");
      std::vector<u64> excluded{2};
      if (!sieve_curve.empty()) {
        const auto c = parse_curve(sieve_curve);
        excluded = c.bad_primes();
      }
      const auto z = parse_z(z_text, x);
      const auto window = select_window(z, excluded, floor, cap);
      SieveInput si;
      si.P = window.primes;
      std::vector<i64> deltas;
      for (const auto& r : rows) {
        if (r.p > x) continue;
        deltas.push_back(r.delta);
        if (r.delta != 0) si.A.push_back(r.delta);
      }
      const auto report = sieve_bound(si, resolve_threads(sieve_opts));
      const auto terms = sieve_error_terms(report, static_cast<double>(x), z.value());
      ojson j;
      j["x"] = x;
      j["z"] = {{"text", z.text}, {"value", z.value()}};
      j["window"] = {{"primes", window.primes}, {"extended", window.extended}, {"capped", window.capped}};
      j["excluded"] = excluded;
      j["records"] = deltas.size();
      j["zero_discriminants"] = deltas.size() - si.A.size();
      j["sieve"] = sieve_to_json(report);
      const auto s_arg = char_sum(deltas, report.argmax.first, report.argmax.second);
      j["argmax_char_sum"] = {{"pair", {report.argmax.first, report.argmax.second}},
                              {"value", s_arg.value},
                              {"plus", s_arg.plus},
                              {"zero", s_arg.zero},
                              {"minus", s_arg.minus},
                              {"sqrt_n_log_n", std::sqrt(static_cast<double>(deltas.size())) *
                                                   std::log(std::max<double>(2.0, static_cast<double>(deltas.size())))}};
      if (!pair_text.empty()) {
        const auto pl = parse_u64_list(pair_text);
        if (pl.size() != 2) throw InvalidArgument("--pair needs two primes");
        for (u64 l : pl) {
          if (l < 3 || !is_prime(l)) throw InvalidArgument("--pair entries must be odd primes");
          if (std::find(excluded.begin(), excluded.end(), l) != excluded.end()) {
            throw InvalidArgument("--pair prime " + std::to_string(l) + " is a bad prime of the curve");
          }
        }
        const auto cs = char_sum(deltas, pl[0], pl[1]);
        j["pair_char_sum"] = {{"pair", pl}, {"value", cs.value}, {"plus", cs.plus}, {"zero", cs.zero}, {"minus", cs.minus}};
      }
      j["error_terms"] = {{"density", terms.density_term},
                          {"collision", terms.collision_term},
                          {"char_sum", terms.char_sum_term},
                          {"dominant", terms.dominant}};
      Sink s(sieve_opts.output, out);
      s.stream() << j.dump(2) << '\n';
      return 0;
    }

    if (ext_cmd->parsed()) {
      if (ext_xmax < 3) throw InvalidArgument("--xmax must be at least 3");
      CensusOptions opts;
      opts.checkpoints = {};
      opts.threads = resolve_threads(ext_opts);
      const auto report = run_census(parse_curve(ext_curve), ext_xmax, opts);
      Sink s(ext_opts.output, out);
      if (ext_format == "csv") {
        s.stream() << "p,sign,a1,a2,jacobian_order\n";
        for (const auto& e : report.extremal) {
          s.stream() << e.p << ',' << (e.sign > 0 ? '+' : '-') << ',' << e.a1 << ',' << e.a2 << ',' << e.jacobian_order << '\n';
        }
      } else {
        ojson j = report_to_json(report);
        ojson slim;
        slim["curve"] = j["curve"];
        slim["xmax"] = j["xmax"];
        slim["total_good_primes"] = j["total_good_primes"];
        slim["extremal_list"] = j["extremal_list"];
        s.stream() << slim.dump(2) << '\n';
      }
      return 0;
    }

    if (eq_cmd->parsed()) {
      if (eq_xmax < 3) throw InvalidArgument("--xmax must be at least 3");
      if (eq_ell != 3 && eq_ell != 5) throw InvalidArgument("--ell must be 3 or 5");
      const auto curve = eq_curve.empty() ? seeded_curve(eq_seed, {eq_ell}) : parse_curve(eq_curve);
      if (curve.is_bad(eq_ell)) throw InvalidArgument("l must be a good prime of the curve");
      CensusOptions opts;
      opts.checkpoints = {};
      opts.threads = resolve_threads(eq_opts);
      std::vector<FrobeniusRecord> records;
      run_census(curve, eq_xmax, opts, [&](const FrobeniusRecord& r) { records.push_back(r); });
      EnumerationOptions eopts;
      eopts.threads = opts.threads;
      const auto tally = enumerate_gsp4(eq_ell, eopts);
      ojson j;
      j["curve"] = curve.to_string();
      j["xmax"] = eq_xmax;
      if (eq_curve.empty()) j["seed"] = eq_seed;
      const auto rep = equidistribution(records, eq_ell, tally);
      const ojson ej = equidist_to_json(rep);
      for (auto it = ej.begin(); it != ej.end(); ++it) j[it.key()] = it.value();
      Sink s(eq_opts.output, out);
      s.stream() << j.dump(2) << '\n';
      return 0;
    }
    err << app.help();
    return 1;
  } catch (const ConsistencyError& e) {
    err << "internal consistency failure: " << e.what() << '\n';
    return 2;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace splitred

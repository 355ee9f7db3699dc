#include "splitred/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cctype>
#include <limits>
#include <numeric>
#include <set>
#include <thread>

#include <boost/multiprecision/cpp_int.hpp>

#include "splitred/errors.hpp"

namespace splitred {

namespace {

using boost::multiprecision::cpp_int;

cpp_int big_pow(u64 b, u64 e) {
  cpp_int r = 1, base = b;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

void check_primes(const std::vector<u64>& P) {
  std::set<u64> seen;
  for (u64 l : P) {
    if (l < 3 || !is_prime(l)) throw InvalidArgument("sieve prime " + std::to_string(l) + " is not an odd prime");
    if (!seen.insert(l).second) throw InvalidArgument("sieve prime " + std::to_string(l) + " repeated");
  }
}

}  // namespace

u64 nu(i64 a, const std::vector<u64>& P) {
  u64 n = 0;
  for (u64 l : P) n += mod(a, l) == 0;
  return n;
}

SieveReport sieve_bound(const SieveInput& in, unsigned threads) {
  if (in.P.size() < 2) throw InvalidArgument("the square sieve needs at least two primes");
  check_primes(in.P);
  for (i64 a : in.A) {
    if (a == 0) throw InvalidArgument("the sieve multiset must not contain 0");
  }
  SieveReport r;
  r.size_a = in.A.size();
  r.size_p = in.P.size();
  const i64 np = static_cast<i64>(in.P.size());

  i64 nu_sum = 0, nu_sq = 0;
  for (i64 a : in.A) {
    r.s_exact += a > 0 && is_square_int(a).has_value();
    const i64 v = static_cast<i64>(nu(a, in.P));
    nu_sum += v;
    nu_sq += v * v;
  }

  // Legendre symbols per prime, then pair sums of products.
  std::vector<std::vector<std::int8_t>> leg(in.P.size(), std::vector<std::int8_t>(in.A.size()));
  for (std::size_t i = 0; i < in.P.size(); ++i) {
    for (std::size_t k = 0; k < in.A.size(); ++k) leg[i][k] = static_cast<std::int8_t>(legendre(in.A[k], in.P[i]));
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < in.P.size(); ++i) {
    for (std::size_t j = i + 1; j < in.P.size(); ++j) pairs.emplace_back(i, j);
  }
  struct Best {
    i64 value = -1;
    std::size_t index = 0;
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(pairs.size())));
  std::vector<Best> best(threads);
  auto worker = [&](unsigned w) {
    for (std::size_t t = w; t < pairs.size(); t += threads) {
      const auto& L1 = leg[pairs[t].first];
      const auto& L2 = leg[pairs[t].second];
      i64 s = 0;
      for (std::size_t k = 0; k < in.A.size(); ++k) s += L1[k] * L2[k];
      s = std::llabs(s);
      if (s > best[w].value) best[w] = {s, t};
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    for (auto& th : pool) th.join();
  }
  Best top;
  for (const auto& b : best) {
    if (b.value > top.value || (b.value == top.value && b.index < top.index)) top = b;
  }
  const auto [i, j] = pairs[top.index];
  r.argmax = {in.P[i], in.P[j]};

  r.term1 = Rational(static_cast<i64>(in.A.size()), np);
  r.term2 = Rational(top.value);
  r.term3 = Rational(2 * nu_sum, np);
  r.term4 = Rational(nu_sq, np * np);
  r.rhs = r.term1 + r.term2 + r.term3 + r.term4;
  if (!r.holds()) throw ConsistencyError("square sieve inequality violated");
  return r;
}

CharSum char_sum(const std::vector<i64>& deltas, u64 l1, u64 l2) {
  if (l1 == l2) throw InvalidArgument("char_sum needs two distinct primes");
  CharSum s;
  for (i64 d : deltas) {
    switch (jacobi_pair(d, l1, l2)) {
      case 1: ++s.plus; break;
      case 0: ++s.zero; break;
      default: ++s.minus; break;
    }
  }
  s.value = static_cast<i64>(s.plus) - static_cast<i64>(s.minus);
  return s;
}

double ZSpec::value() const {
  return std::pow(static_cast<double>(base), static_cast<double>(num) / static_cast<double>(den));
}

bool ZSpec::less_than(u64 n) const {
  // base^(num/den) < n  <=>  base^num < n^den
  return big_pow(base, num) < big_pow(n, den);
}

bool ZSpec::twice_greater(u64 n) const {
  // 2 base^(num/den) > n  <=>  2^den base^num > n^den
  return big_pow(2, den) * big_pow(base, num) > big_pow(n, den);
}

ZSpec parse_z(std::string_view text, u64 x) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  auto parse_u64 = [&](const std::string& t) -> u64 {
    if (t.empty() || !std::all_of(t.begin(), t.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }) ||
        t.size() > 18) {
      throw InvalidArgument("cannot parse z from '" + std::string(text) + "'");
    }
    return std::stoull(t);
  };
  ZSpec z;
  z.text = std::string(text);
  if (s.rfind("x^", 0) == 0) {
    std::string e = s.substr(2);
    if (e.size() >= 2 && ((e.front() == '{' && e.back() == '}') || (e.front() == '(' && e.back() == ')'))) {
      e = e.substr(1, e.size() - 2);
    }
    const auto slash = e.find('/');
    z.base = x;
    if (slash == std::string::npos) {
      z.num = parse_u64(e);
      z.den = 1;
    } else {
      z.num = parse_u64(e.substr(0, slash));
      z.den = parse_u64(e.substr(slash + 1));
    }
    if (z.den == 0 || z.num == 0) throw InvalidArgument("z exponent must be a positive fraction");
    if (x < 2) throw InvalidArgument("z = x^(a/b) needs x >= 2");
    const u64 g = std::gcd(z.num, z.den);
    z.num /= g;
    z.den /= g;
  } else {
    z.base = parse_u64(s);
    if (z.base < 2) throw InvalidArgument("z must be at least 2");
  }
  return z;
}

SieveWindow select_window(const ZSpec& z, const std::vector<u64>& excluded, u64 floor, std::size_t cap,
                          std::size_t min_size) {
  SieveWindow w;
  auto admissible = [&](u64 l) {
    return l >= 3 && is_prime(l) && l > floor && std::find(excluded.begin(), excluded.end(), l) == excluded.end();
  };
  u64 l = 3;
  for (; z.twice_greater(l); ++l) {
    if (!z.less_than(l) || !admissible(l)) continue;
    if (w.primes.size() == cap) {
      w.capped = true;
      break;
    }
    w.primes.push_back(l);
  }
  if (w.primes.size() < min_size) {
    w.extended = true;
    // Continue upward from the window's end.
    for (l = std::max<u64>(l, 3); w.primes.size() < min_size; ++l) {
      if (admissible(l) && z.less_than(l)) w.primes.push_back(l);
    }
  }
  return w;
}

SieveErrorTerms sieve_error_terms(const SieveReport& report, double x, double z) {
  if (!(z > 1.0)) throw InvalidArgument("z must exceed 1");
  SieveErrorTerms b;
  b.x = x;
  b.z = z;
  const double lz = std::log(z);
  b.density_term = x * lz / z;
  b.collision_term = x * std::log(x) * lz * lz / (z * z);
  b.char_sum_term = boost::rational_cast<double>(report.term2);
  if (b.density_term >= b.collision_term && b.density_term >= b.char_sum_term) {
    b.dominant = "density";
  } else if (b.collision_term >= b.char_sum_term) {
    b.dominant = "collision";
  } else {
    b.dominant = "char_sum";
  }
  return b;
}

std::string rational_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

nlohmann::ordered_json sieve_to_json(const SieveReport& r) {
  nlohmann::ordered_json j;
  j["size_A"] = r.size_a;
  j["size_P"] = r.size_p;
  j["s_exact"] = r.s_exact;
  auto term = [](const Rational& q) {
    return nlohmann::ordered_json{{"exact", rational_string(q)}, {"approx", boost::rational_cast<double>(q)}};
  };
  j["term1"] = term(r.term1);
  j["term2"] = term(r.term2);
  j["term2_pair"] = {r.argmax.first, r.argmax.second};
  j["term3"] = term(r.term3);
  j["term4"] = term(r.term4);
  j["rhs"] = term(r.rhs);
  j["holds"] = r.holds();
  return j;
}

}  // namespace splitred

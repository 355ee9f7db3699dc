#pragma once

// The square sieve: an upper bound for the number of nonzero squares in a
// multiset A of integers from Jacobi-symbol sums over pairs of primes in a set P.
//
//   #squares(A) <= |A|/|P| + max_{l1 != l2} |sum_a (a / l1 l2)|
//                  + (2/|P|) sum_a nu(a) + (1/|P|^2) sum_a nu(a)^2,
//
// with nu(a) the number of primes of P dividing a.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/rational.hpp>
#include <json.hpp>

#include "splitred/ffield.hpp"

namespace splitred {

using Rational = boost::rational<i64>;

struct SieveInput {
  std::vector<i64> A;  // nonzero
  std::vector<u64> P;  // distinct odd primes
};

struct SieveReport {
  u64 size_a = 0;
  u64 size_p = 0;
  u64 s_exact = 0;  // nonzero squares in A
  Rational term1, term2, term3, term4, rhs;
  std::pair<u64, u64> argmax{0, 0};  // pair attaining term2
  bool holds() const { return Rational(static_cast<i64>(s_exact)) <= rhs; }
};

// Throws InvalidArgument if |P| < 2, 0 is in A, or P has a repeated or non-odd-prime entry.
SieveReport sieve_bound(const SieveInput& in, unsigned threads = 1);

// Primes of P dividing a.
u64 nu(i64 a, const std::vector<u64>& P);

struct CharSum {
  i64 value = 0;  // plus - minus
  u64 plus = 0;
  u64 zero = 0;
  u64 minus = 0;
};

// S(l1 l2) = sum over values of the Jacobi symbol (d / l1 l2).
// Throws InvalidArgument unless l1 != l2 are odd primes.
CharSum char_sum(const std::vector<i64>& deltas, u64 l1, u64 l2);

// z given as an integer or as x^{a/b}; comparisons with integers are exact.
struct ZSpec {
  u64 base = 0;  // z = base^(num/den)
  u64 num = 1;
  u64 den = 1;
  std::string text;

  double value() const;
  bool less_than(u64 n) const;     // z < n
  bool twice_greater(u64 n) const; // 2z > n
};

// Parses "123", "x^{1/6}", "x^(1/6)" or "x^1/6" for the given x.
ZSpec parse_z(std::string_view text, u64 x);

struct SieveWindow {
  std::vector<u64> primes;
  bool extended = false;  // fewer than two primes in (max(z, floor), 2z); the next ones above were added
  bool capped = false;    // more than cap primes were available
};

// Odd primes l with max(z, floor) < l < 2z, l not in excluded, at most cap of
// them. If fewer than min_size qualify, further admissible primes above the
// window are appended until min_size is reached.
SieveWindow select_window(const ZSpec& z, const std::vector<u64>& excluded, u64 floor = 0, std::size_t cap = 64,
                          std::size_t min_size = 2);

struct SieveErrorTerms {
  double x = 0;
  double z = 0;
  double density_term = 0;     // x log z / z
  double collision_term = 0;   // x log x (log z)^2 / z^2
  double char_sum_term = 0;    // max |S(l1 l2)| over the window
  std::string dominant;
};

// Throws InvalidArgument unless z > 1.
SieveErrorTerms sieve_error_terms(const SieveReport& report, double x, double z);

std::string rational_string(const Rational& r);
nlohmann::ordered_json sieve_to_json(const SieveReport& r);

}  // namespace splitred

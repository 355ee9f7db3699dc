#include "splitred/curve.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <sstream>

#include "splitred/errors.hpp"

namespace splitred {

namespace {

// Fraction-free Gaussian elimination; exact for integer matrices.
BigInt bareiss_determinant(std::vector<std::vector<BigInt>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

// Res(f, g) for coefficient vectors with constant term first.
BigInt resultant(const std::vector<i64>& f, const std::vector<i64>& g) {
  const std::size_t m = f.size() - 1, n = g.size() - 1;
  const std::size_t size = m + n;
  std::vector<std::vector<BigInt>> syl(size, std::vector<BigInt>(size, 0));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i <= m; ++i) syl[r][r + i] = f[m - i];
  }
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t i = 0; i <= n; ++i) syl[n + r][r + i] = g[n - i];
  }
  return bareiss_determinant(std::move(syl));
}

std::vector<i64> strip_trailing_zeros(std::vector<i64> c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
  return c;
}

i64 parse_integer(std::string_view s, std::string_view context) {
  if (s.empty()) throw InvalidArgument("parse_curve: missing integer in '" + std::string(context) + "'");
  std::size_t i = 0;
  bool negative = false;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw InvalidArgument("parse_curve: missing digits in '" + std::string(context) + "'");
  i64 value = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
      throw InvalidArgument("parse_curve: unexpected '" + std::string(1, s[i]) + "' in '" + std::string(context) + "'");
    }
    if (value > (INT64_MAX - 9) / 10) throw InvalidArgument("parse_curve: coefficient overflow");
    value = value * 10 + (s[i] - '0');
  }
  return negative ? -value : value;
}

// One monomial such as "3*x^2", "-x", "7", "2x", "x**4".
std::pair<int, i64> parse_monomial(std::string_view term) {
  i64 sign = 1;
  std::size_t i = 0;
  if (term[0] == '+' || term[0] == '-') {
    sign = term[0] == '-' ? -1 : 1;
    i = 1;
  }
  std::string_view body = term.substr(i);
  const auto xpos = body.find('x');
  if (xpos == std::string_view::npos) return {0, sign * parse_integer(body, term)};
  std::string_view coeff_part = body.substr(0, xpos);
  if (!coeff_part.empty() && coeff_part.back() == '*') coeff_part.remove_suffix(1);
  const i64 coeff = coeff_part.empty() ? 1 : parse_integer(coeff_part, term);
  std::string_view rest = body.substr(xpos + 1);
  int exponent = 1;
  if (!rest.empty()) {
    if (rest.substr(0, 2) == "**") {
      rest.remove_prefix(2);
    } else if (rest[0] == '^') {
      rest.remove_prefix(1);
    } else {
      throw InvalidArgument("parse_curve: malformed exponent in '" + std::string(term) + "'");
    }
    const i64 e = parse_integer(rest, term);
    if (e < 0 || e > 64) throw InvalidArgument("parse_curve: exponent out of range in '" + std::string(term) + "'");
    exponent = static_cast<int>(e);
  }
  return {exponent, sign * coeff};
}

struct TableLegendre {
  std::vector<std::int8_t> table;

  explicit TableLegendre(u64 p) : table(p, -1) {
    table[0] = 0;
    for (u64 y = 1; y <= p / 2; ++y) table[(y * y) % p] = 1;
  }
  int operator()(u64 a) const { return table[a]; }
};

std::vector<u64> reduce_coeffs(const std::vector<i64>& coeffs, u64 p) {
  std::vector<u64> out(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) out[i] = mod(coeffs[i], p);
  return out;
}

u64 horner_fp(const std::vector<u64>& c, u64 x, u64 p) {
  u64 acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = (acc * x + c[i]) % p;
  return acc;
}

Fp2 horner_fp2(const QuadExtField& k, const std::vector<u64>& c, Fp2 x) {
  Fp2 acc{0, 0};
  for (std::size_t i = c.size(); i-- > 0;) acc = k.add(k.mul(acc, x), Fp2{c[i], 0});
  return acc;
}

void require_good(const HyperellipticCurve& c, u64 p) {
  if (p < 3 || p % 2 == 0 || !is_prime(p)) {
    throw PreconditionError("point count: p = " + std::to_string(p) + " is not an odd prime");
  }
  if (c.is_bad(p)) {
    throw PreconditionError("point count: p = " + std::to_string(p) + " is a bad prime for " + c.to_string());
  }
}

constexpr int kLanes = 8;
constexpr int kMaxTable = 13;  // 2 * deg f + 1 for deg f = 6

// Sum over u in [0, p) of the Legendre symbol of kLanes polynomials at once,
// each given by its forward-difference table at u = 0 (K entries).
template <int K>
i64 difference_walk(const std::uint32_t (&tables)[kMaxTable][kLanes], std::uint32_t p, const std::int8_t* leg) {
  std::uint32_t d[K][kLanes];
  for (int k = 0; k < K; ++k) {
    for (int l = 0; l < kLanes; ++l) d[k][l] = tables[k][l];
  }
  i64 acc = 0;
  for (std::uint32_t u = 0; u < p; ++u) {
    for (int l = 0; l < kLanes; ++l) acc += leg[d[0][l]];
    for (int k = 0; k + 1 < K; ++k) {
      for (int l = 0; l < kLanes; ++l) {
        const std::uint32_t s = d[k][l] + d[k + 1][l];
        d[k][l] = std::min(s, s - p);  // s < 2p; wraps above s when s < p
      }
    }
  }
  return acc;
}

}  // namespace

BigInt polynomial_discriminant(const std::vector<i64>& coeffs) {
  const auto f = strip_trailing_zeros(coeffs);
  if (f.size() < 2) throw InvalidArgument("polynomial_discriminant: degree must be positive");
  const std::size_t n = f.size() - 1;
  std::vector<i64> df(n);
  for (std::size_t i = 1; i <= n; ++i) df[i - 1] = static_cast<i64>(i) * f[i];
  BigInt res = resultant(f, df);
  if ((n * (n - 1) / 2) % 2 == 1) res = -res;
  const BigInt lc = f.back();
  if (res % lc != 0) throw ConsistencyError("polynomial_discriminant: resultant not divisible by lc");
  return res / lc;
}

HyperellipticCurve::HyperellipticCurve(std::vector<i64> coeffs) : coeffs_(strip_trailing_zeros(std::move(coeffs))) {
  const int deg = degree();
  if (deg != 5 && deg != 6) {
    throw ModelRejected("curve model must have degree 5 or 6, got degree " + std::to_string(std::max(deg, 0)));
  }
  disc_ = polynomial_discriminant(coeffs_);
  if (disc_ == 0) throw ModelRejected("curve model f(x) is not squarefree: " + to_string());
  bad_product_ = 2 * BigInt(leading()) * disc_;
  if (bad_product_ < 0) bad_product_ = -bad_product_;

  BigInt rest = bad_product_;
  for (u64 d = 2; d <= kTrialBound && BigInt(d) * d <= rest; d += (d == 2 ? 1 : 2)) {
    if (rest % d == 0) {
      bad_primes_.push_back(d);
      while (rest % d == 0) rest /= d;
    }
  }
  if (rest > 1) {
    if (rest <= BigInt(kTrialBound) * kTrialBound) {
      bad_primes_.push_back(static_cast<u64>(rest));
      rest = 1;
    }
  }
  cofactor_ = rest;
}

bool HyperellipticCurve::is_bad(u64 p) const { return bad_product_ % p == 0; }

std::string HyperellipticCurve::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const i64 c = coeffs_[i];
    if (c == 0) continue;
    if (c < 0) {
      out << '-';
    } else if (!first) {
      out << '+';
    }
    const i64 mag = c < 0 ? -c : c;
    if (i == 0 || mag != 1) out << mag;
    if (i >= 1) out << 'x';
    if (i >= 2) out << '^' << i;
    first = false;
  }
  return out.str();
}

HyperellipticCurve parse_curve(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(static_cast<char>(std::tolower(ch)));
  }
  if (s.empty()) throw InvalidArgument("parse_curve: empty curve specification");
  if (s.rfind("y^2=", 0) == 0) s.erase(0, 4);

  if (s.find('x') == std::string::npos) {
    std::vector<i64> coeffs;
    std::size_t start = 0;
    while (start <= s.size()) {
      const auto comma = s.find(',', start);
      const auto end = comma == std::string::npos ? s.size() : comma;
      coeffs.push_back(parse_integer(std::string_view(s).substr(start, end - start), s));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return HyperellipticCurve(std::move(coeffs));
  }

  std::map<int, i64> terms;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= s.size(); ++i) {
    // Split before a sign that is not part of an exponent marker.
    const bool at_end = i == s.size();
    if (at_end || ((s[i] == '+' || s[i] == '-') && s[i - 1] != '^' && s[i - 1] != '*')) {
      const auto [exponent, coeff] = parse_monomial(std::string_view(s).substr(start, i - start));
      terms[exponent] += coeff;
      start = i;
    }
  }
  const int deg = terms.empty() ? 0 : terms.rbegin()->first;
  std::vector<i64> coeffs(static_cast<std::size_t>(deg) + 1, 0);
  for (const auto& [e, c] : terms) coeffs[static_cast<std::size_t>(e)] = c;
  return HyperellipticCurve(std::move(coeffs));
}

u64 count_model_points_fp(const std::vector<i64>& coeffs, u64 p) {
  const PrimeField field(p);
  const auto c = reduce_coeffs(strip_trailing_zeros(coeffs), p);
  const TableLegendre leg(p);
  i64 total = 0;
  for (u64 x = 0; x < p; ++x) total += 1 + leg(horner_fp(c, x, p));
  const std::size_t deg = c.size() - 1;
  if (deg % 2 == 1) {
    total += 1;
  } else {
    total += 1 + field.legendre(c.back());
  }
  return static_cast<u64>(total);
}

u64 count_points_fp(const HyperellipticCurve& c, u64 p) {
  require_good(c, p);
  return count_model_points_fp(c.coeffs(), p);
}

u64 count_points_fp2(const HyperellipticCurve& c, u64 p, std::optional<u64> ns) {
  require_good(c, p);
  const QuadExtField k(p, ns);
  const auto f = reduce_coeffs(c.coeffs(), p);
  const TableLegendre leg(p);

  // x in F_p: f(x) lies in F_p, where every nonzero value is a square of F_{p^2}.
  i64 total = 0;
  for (u64 x = 0; x < p; ++x) total += horner_fp(f, x, p) == 0 ? 1 : 2;

  // x = u + v t with v != 0. The conjugate u - v t has the same character
  // value, so each v in [1, (p-1)/2] stands for the pair {v, p - v}.
  // For fixed v, u -> N(f(u + v t)) is a polynomial of degree 2 deg f over F_p,
  // walked with forward differences.
  const int K = 2 * c.degree() + 1;
  const u64 rows = (p - 1) / 2;
  i64 pair_sum = 0;
  for (u64 first = 1; first <= rows; first += kLanes) {
    // Lanes past the last row stay zero; (0/p) = 0 keeps them out of the sum.
    std::uint32_t tables[kMaxTable][kLanes] = {};
    int live = 0;
    for (int l = 0; l < kLanes && first + static_cast<u64>(l) <= rows; ++l, ++live) {
      const u64 v = first + static_cast<u64>(l);
      std::array<u64, kMaxTable> values{};
      for (int u = 0; u < K; ++u) {
        values[static_cast<std::size_t>(u)] = k.norm(horner_fp2(k, f, Fp2{static_cast<u64>(u) % p, v}));
      }
      for (int order = 0; order < K; ++order) {
        tables[order][l] = static_cast<std::uint32_t>(values[0]);
        for (int u = 0; u + 1 < K - order; ++u) {
          const u64 a = values[static_cast<std::size_t>(u) + 1], b = values[static_cast<std::size_t>(u)];
          values[static_cast<std::size_t>(u)] = a >= b ? a - b : a + p - b;
        }
      }
    }
    const auto p32 = static_cast<std::uint32_t>(p);
    const i64 char_sum = K == 11 ? difference_walk<11>(tables, p32, leg.table.data())
                                 : difference_walk<13>(tables, p32, leg.table.data());
    pair_sum += static_cast<i64>(p) * live + char_sum;
  }
  total += 2 * pair_sum;

  // Points at infinity: one for odd degree; for degree 6, 1 + chi(lc) in F_{p^2}.
  if (c.degree() == 5) {
    total += 1;
  } else {
    total += 1 + leg(k.norm(Fp2{f.back(), 0}));
  }
  return static_cast<u64>(total);
}

u64 count_points_fp2_reference(const HyperellipticCurve& c, u64 p, std::optional<u64> ns) {
  require_good(c, p);
  const QuadExtField k(p, ns);
  const auto f = reduce_coeffs(c.coeffs(), p);
  i64 total = 0;
  for (u64 c1 = 0; c1 < p; ++c1) {
    for (u64 c0 = 0; c0 < p; ++c0) total += 1 + k.quadratic_character(horner_fp2(k, f, Fp2{c0, c1}));
  }
  if (c.degree() == 5) {
    total += 1;
  } else {
    total += 1 + k.quadratic_character(Fp2{f.back(), 0});
  }
  return static_cast<u64>(total);
}

FrobeniusRecord frobenius_record_from_counts(u64 p, u64 count_fp, u64 count_fp2) {
  const i64 sp = static_cast<i64>(p);
  const i64 a1 = static_cast<i64>(count_fp) - sp - 1;
  const i64 twice_a2 = static_cast<i64>(count_fp2) - sp * sp - 1 + a1 * a1;
  if (twice_a2 % 2 != 0) {
    throw ConsistencyError("frobenius_record: odd 2*a2 at p = " + std::to_string(p));
  }
  const i64 a2 = twice_a2 / 2;
  const Validation v = validate(sp, a1, a2);
  if (!v.valid()) {
    throw ConsistencyError("frobenius_record: Weil bounds fail at p = " + std::to_string(p) +
                           " (a1 = " + std::to_string(a1) + ", a2 = " + std::to_string(a2) + ")");
  }
  FrobeniusRecord r;
  r.p = p;
  r.a1 = a1;
  r.a2 = a2;
  const Discriminants d = discriminants(*v.quartic);
  r.delta = d.delta;
  r.delta_small = d.delta_small;
  r.classification = classify(*v.quartic);
  return r;
}

FrobeniusRecord frobenius_record(const HyperellipticCurve& c, u64 p) {
  return frobenius_record_from_counts(p, count_points_fp(c, p), count_points_fp2(c, p));
}

}  // namespace splitred

#pragma once

// Independent reference computations used only by tests. Nothing here calls
// into the library paths it is used to check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using cld = std::complex<long double>;

// Product of integer polynomials, coefficients constant term first.
inline std::vector<i64> poly_mul(const std::vector<i64>& a, const std::vector<i64>& b) {
  std::vector<i64> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// All complex roots of a monic polynomial (coefficients constant first) by
// Aberth-Ehrlich iteration in long double. Roots closer than cluster_tol are
// replaced by their cluster mean, polished by Newton on the derivative that
// has the multiple root as a simple root.
inline std::vector<cld> polynomial_roots(const std::vector<long double>& coeffs, long double radius,
                                         long double cluster_tol) {
  const std::size_t n = coeffs.size() - 1;
  std::vector<cld> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const long double angle = 2.0L * 3.14159265358979323846L * static_cast<long double>(k) / static_cast<long double>(n) + 0.4L;
    z[k] = std::polar(radius, angle);
  }
  auto eval = [&](cld x, cld& deriv) {
    cld p = 0, d = 0;
    for (std::size_t i = n + 1; i-- > 0;) {
      d = d * x + p;
      p = p * x + coeffs[i];
    }
    deriv = d;
    return p;
  };
  for (int iter = 0; iter < 2000; ++iter) {
    long double max_step = 0;
    for (std::size_t k = 0; k < n; ++k) {
      cld d;
      const cld p = eval(z[k], d);
      if (p == cld(0)) continue;
      const cld ratio = p / d;
      cld repulsion = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != k) repulsion += cld(1) / (z[k] - z[j]);
      }
      const cld step = ratio / (cld(1) - ratio * repulsion);
      z[k] -= step;
      max_step = std::max(max_step, std::abs(step));
    }
    if (max_step < 1e-30L * radius) break;
  }
  // Cluster averaging.
  std::vector<cld> out(z);
  std::vector<bool> done(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (done[i]) continue;
    std::vector<std::size_t> members{i};
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!done[j] && std::abs(z[i] - z[j]) < cluster_tol) members.push_back(j);
    }
    cld mean = 0;
    for (auto m : members) mean += z[m];
    mean /= static_cast<long double>(members.size());
    // A root of multiplicity k is a simple root of the (k-1)-th derivative.
    if (members.size() > 1) {
      std::vector<long double> deriv(coeffs);
      for (std::size_t d = 1; d < members.size(); ++d) {
        std::vector<long double> next(deriv.size() - 1);
        for (std::size_t i = 1; i < deriv.size(); ++i) next[i - 1] = deriv[i] * static_cast<long double>(i);
        deriv = std::move(next);
      }
      for (int iter = 0; iter < 50; ++iter) {
        cld p = 0, dp = 0;
        for (std::size_t i = deriv.size(); i-- > 0;) {
          dp = dp * mean + p;
          p = p * mean + deriv[i];
        }
        if (dp == cld(0)) break;
        mean -= p / dp;
      }
    }
    for (auto m : members) {
      out[m] = mean;
      done[m] = true;
    }
  }
  return out;
}

// True iff every root of X^4 + a1 X^3 + a2 X^2 + q a1 X + q^2 has |alpha| = sqrt q to 1e-9.
inline bool weil_by_roots(i64 q, i64 a1, i64 a2) {
  const long double sq = std::sqrt(static_cast<long double>(q));
  const std::vector<long double> c{static_cast<long double>(q * q), static_cast<long double>(q * a1),
                                   static_cast<long double>(a2), static_cast<long double>(a1), 1.0L};
  for (const cld& r : polynomial_roots(c, sq, 1e-6L * sq)) {
    if (std::fabs(std::abs(r) - sq) > 1e-9L) return false;
  }
  return true;
}

// Unordered pairs {b1, b2} with (X^2 + b1 X + g)(X^2 + b2 X + g) = X^4 + a1 X^3 + a2 X^2 + g a1 X + g^2 mod l.
inline std::set<std::pair<u64, u64>> reciprocal_factor_pairs(u64 a1, u64 a2, u64 g, u64 l) {
  std::set<std::pair<u64, u64>> out;
  for (u64 b1 = 0; b1 < l; ++b1) {
    for (u64 b2 = b1; b2 < l; ++b2) {
      if ((b1 + b2) % l == a1 % l && (b1 * b2 + 2 * g) % l == a2 % l) out.insert({b1, b2});
    }
  }
  return out;
}

// Affine character sum count over F_p by direct modular exponentiation.
inline u64 brute_count_fp(const std::vector<i64>& coeffs, u64 p) {
  auto powm = [](u64 b, u64 e, u64 m) {
    u64 r = 1 % m;
    b %= m;
    while (e) {
      if (e & 1) r = r * b % m;
      b = b * b % m;
      e >>= 1;
    }
    return r;
  };
  u64 total = 0;
  for (u64 x = 0; x < p; ++x) {
    i64 v = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) v = ((v * static_cast<i64>(x) + coeffs[i]) % static_cast<i64>(p) + static_cast<i64>(p)) % static_cast<i64>(p);
    if (v == 0) {
      total += 1;
    } else if (powm(static_cast<u64>(v), (p - 1) / 2, p) == 1) {
      total += 2;
    }
  }
  const std::size_t deg = coeffs.size() - 1;
  if (deg % 2 == 1) return total + 1;
  const i64 lc = ((coeffs.back() % static_cast<i64>(p)) + static_cast<i64>(p)) % static_cast<i64>(p);
  return total + (powm(static_cast<u64>(lc), (p - 1) / 2, p) == 1 ? 2 : 0);
}

}  // namespace oracle

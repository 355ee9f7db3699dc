#include "splitred/ffield.hpp"

#include <bit>
#include <string>

#include "splitred/errors.hpp"

namespace splitred {

namespace {

void require_odd_prime(u64 p, const char* what) {
  if (p < 3 || p % 2 == 0 || !is_prime(p)) {
    throw InvalidArgument(std::string(what) + ": " + std::to_string(p) + " is not an odd prime");
  }
}

bool miller_rabin_witness(u64 n, u64 a, u64 d, int s) {
  u64 x = pow_mod(a % n, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int r = 1; r < s; ++r) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

}  // namespace

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  u64 d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  // This base set is deterministic below 3.3e24.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (miller_rabin_witness(n, a, d, s)) return false;
  }
  return true;
}

std::vector<u64> primes_in_range(u64 lo, u64 hi) {
  std::vector<u64> out;
  if (hi < 2 || lo > hi) return out;
  std::vector<bool> composite(hi + 1, false);
  for (u64 i = 2; i * i <= hi; ++i) {
    if (composite[i]) continue;
    for (u64 j = i * i; j <= hi; j += i) composite[j] = true;
  }
  for (u64 i = std::max<u64>(lo, 2); i <= hi; ++i) {
    if (!composite[i]) out.push_back(i);
  }
  return out;
}

u64 inv_mod(i64 a, u64 p) {
  u64 r = mod(a, p);
  if (r == 0) throw InvalidArgument("inv_mod: element is not invertible");
  // Extended Euclid on signed values.
  i64 t = 0, new_t = 1;
  i64 rr = static_cast<i64>(p), new_r = static_cast<i64>(r);
  while (new_r != 0) {
    i64 q = rr / new_r;
    i64 tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = rr - q * new_r;
    rr = new_r;
    new_r = tmp;
  }
  if (rr != 1) throw InvalidArgument("inv_mod: modulus shares a factor with element");
  return mod(t, p);
}

int legendre(i64 a, u64 p) {
  require_odd_prime(p, "legendre");
  u64 x = mod(a, p);
  u64 n = p;
  int sign = 1;
  while (x != 0) {
    while (x % 2 == 0) {
      x /= 2;
      u64 r = n % 8;
      if (r == 3 || r == 5) sign = -sign;
    }
    std::swap(x, n);
    if (x % 4 == 3 && n % 4 == 3) sign = -sign;
    x %= n;
  }
  return n == 1 ? sign : 0;
}

int legendre_euler(i64 a, u64 p) {
  require_odd_prime(p, "legendre_euler");
  u64 x = mod(a, p);
  if (x == 0) return 0;
  return pow_mod(x, (p - 1) / 2, p) == 1 ? 1 : -1;
}

int jacobi_pair(i64 a, u64 l1, u64 l2) {
  if (l1 == l2) throw InvalidArgument("jacobi_pair: primes must be distinct");
  return legendre(a, l1) * legendre(a, l2);
}

u64 isqrt(u64 n) {
  if (n < 2) return n;
  int bits = std::bit_width(n);
  u64 x = u64{1} << ((bits + 1) / 2);
  while (true) {
    u64 y = (x + n / x) / 2;
    if (y >= x) break;
    x = y;
  }
  using u128 = unsigned __int128;
  while (static_cast<u128>(x) * x > n) --x;
  while (static_cast<u128>(x + 1) * (x + 1) <= n) ++x;
  return x;
}

std::optional<u64> is_square_int(i64 n) {
  if (n < 0) return std::nullopt;
  u64 r = isqrt(static_cast<u64>(n));
  if (r * r == static_cast<u64>(n)) return r;
  return std::nullopt;
}

int valuation(i64 n, u64 p) {
  if (n == 0) throw InvalidArgument("valuation: zero has infinite valuation");
  int v = 0;
  i64 sp = static_cast<i64>(p);
  while (n % sp == 0) {
    n /= sp;
    ++v;
  }
  return v;
}

bool is_square_padic(i64 n, u64 p) {
  require_odd_prime(p, "is_square_padic");
  if (n == 0) return true;
  int v = 0;
  i64 sp = static_cast<i64>(p);
  while (n % sp == 0) {
    n /= sp;
    ++v;
  }
  return v % 2 == 0 && legendre(n, p) == 1;
}

std::optional<u64> sqrt_mod(i64 a, u64 p) {
  u64 x = mod(a, p);
  int symbol = legendre(static_cast<i64>(x), p);
  if (symbol == 0) return u64{0};
  if (symbol < 0) return std::nullopt;
  // Tonelli-Shanks.
  u64 q = p - 1;
  int s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  u64 z = smallest_nonresidue(p);
  u64 m = static_cast<u64>(s);
  u64 c = pow_mod(z, q, p);
  u64 t = pow_mod(x, q, p);
  u64 r = pow_mod(x, (q + 1) / 2, p);
  while (t != 1) {
    u64 i = 0;
    u64 tt = t;
    while (tt != 1) {
      tt = mul_mod(tt, tt, p);
      ++i;
    }
    u64 b = c;
    for (u64 j = 0; j + i + 1 < m; ++j) b = mul_mod(b, b, p);
    m = i;
    c = mul_mod(b, b, p);
    t = mul_mod(t, c, p);
    r = mul_mod(r, b, p);
  }
  return std::min(r, p - r);
}

u64 smallest_nonresidue(u64 p) {
  require_odd_prime(p, "smallest_nonresidue");
  for (u64 a = 2;; ++a) {
    if (legendre(static_cast<i64>(a), p) == -1) return a;
  }
}

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

PrimeField::PrimeField(u64 p) : p_(p) { require_odd_prime(p, "PrimeField"); }

int PrimeField::legendre(u64 a) const { return splitred::legendre(static_cast<i64>(a), p_); }

QuadExtField::QuadExtField(u64 p, std::optional<u64> ns) : p_(p), ns_(0) {
  require_odd_prime(p, "QuadExtField");
  if (ns) {
    if (splitred::legendre(static_cast<i64>(*ns), p) != -1) {
      throw InvalidArgument("QuadExtField: " + std::to_string(*ns) + " is not a non-residue mod " +
                            std::to_string(p));
    }
    ns_ = *ns % p;
  } else {
    ns_ = smallest_nonresidue(p);
  }
}

Fp2 QuadExtField::add(Fp2 a, Fp2 b) const {
  u64 c0 = a.c0 + b.c0, c1 = a.c1 + b.c1;
  return {c0 >= p_ ? c0 - p_ : c0, c1 >= p_ ? c1 - p_ : c1};
}

Fp2 QuadExtField::sub(Fp2 a, Fp2 b) const {
  return {a.c0 >= b.c0 ? a.c0 - b.c0 : a.c0 + p_ - b.c0, a.c1 >= b.c1 ? a.c1 - b.c1 : a.c1 + p_ - b.c1};
}

Fp2 QuadExtField::mul(Fp2 a, Fp2 b) const {
  u64 c0 = (mul_mod(a.c0, b.c0, p_) + mul_mod(ns_, mul_mod(a.c1, b.c1, p_), p_)) % p_;
  u64 c1 = (mul_mod(a.c0, b.c1, p_) + mul_mod(a.c1, b.c0, p_)) % p_;
  return {c0, c1};
}

Fp2 QuadExtField::pow(Fp2 a, u64 e) const {
  Fp2 result{1 % p_, 0};
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

u64 QuadExtField::norm(Fp2 a) const {
  u64 sq0 = mul_mod(a.c0, a.c0, p_);
  u64 sq1 = mul_mod(ns_, mul_mod(a.c1, a.c1, p_), p_);
  return sq0 >= sq1 ? sq0 - sq1 : sq0 + p_ - sq1;
}

int QuadExtField::quadratic_character(Fp2 z) const {
  if (is_zero(z)) return 0;
  Fp2 r = pow(z, (p_ * p_ - 1) / 2);
  if (r == Fp2{1, 0}) return 1;
  if (r == Fp2{p_ - 1, 0}) return -1;
  throw ConsistencyError("quadratic_character: Euler power is not +-1");
}

u64 QuadExtField::order(Fp2 z) const {
  if (is_zero(z)) throw InvalidArgument("order: zero element");
  u64 n = p_ * p_ - 1;
  u64 ord = n;
  for (u64 f : prime_factors(n)) {
    while (ord % f == 0 && pow(z, ord / f) == Fp2{1, 0}) ord /= f;
  }
  return ord;
}

Fp2 QuadExtField::find_generator() const {
  u64 n = p_ * p_ - 1;
  for (u64 c1 = 1; c1 < p_; ++c1) {
    for (u64 c0 = 0; c0 < p_; ++c0) {
      Fp2 z{c0, c1};
      if (order(z) == n) return z;
    }
  }
  throw ConsistencyError("find_generator: no element of full order");
}

}  // namespace splitred

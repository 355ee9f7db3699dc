#pragma once

// Exact arithmetic over F_p and F_{p^2}, residue symbols and square tests.

#include <cstdint>
#include <optional>
#include <vector>

namespace splitred {

using i64 = std::int64_t;
using u64 = std::uint64_t;

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(u64 n);

// All primes p with lo <= p <= hi, ascending.
std::vector<u64> primes_in_range(u64 lo, u64 hi);

// Least non-negative residue of a mod m.
inline u64 mod(i64 a, u64 m) {
  i64 r = a % static_cast<i64>(m);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

inline u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 pow_mod(u64 base, u64 exp, u64 m);

// Inverse of a modulo the prime p. Throws InvalidArgument if p | a.
u64 inv_mod(i64 a, u64 p);

// Legendre symbol via quadratic reciprocity (binary Jacobi algorithm).
// Throws InvalidArgument unless p is an odd prime.
int legendre(i64 a, u64 p);

// Legendre symbol via Euler's criterion a^((p-1)/2). Same contract as legendre.
int legendre_euler(i64 a, u64 p);

// (a / l1 l2) = (a / l1)(a / l2) for distinct odd primes.
int jacobi_pair(i64 a, u64 l1, u64 l2);

// Floor of the square root, exact (Newton on integers with final correction).
u64 isqrt(u64 n);

// Root r >= 0 with r*r == n, or nullopt; negative n is never a square.
std::optional<u64> is_square_int(i64 n);

// p-adic valuation of a nonzero integer.
int valuation(i64 n, u64 p);

// True iff n is a square in Z_p (p odd).
bool is_square_padic(i64 n, u64 p);

// Smaller square root of a modulo the odd prime p, or nullopt for non-residues.
std::optional<u64> sqrt_mod(i64 a, u64 p);

// Smallest positive quadratic non-residue mod p.
u64 smallest_nonresidue(u64 p);

class PrimeField {
 public:
  explicit PrimeField(u64 p);

  u64 p() const { return p_; }
  u64 reduce(i64 a) const { return mod(a, p_); }
  u64 add(u64 a, u64 b) const { u64 s = a + b; return s >= p_ ? s - p_ : s; }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }
  u64 mul(u64 a, u64 b) const { return mul_mod(a, b, p_); }
  u64 inv(u64 a) const { return inv_mod(static_cast<i64>(a), p_); }
  int legendre(u64 a) const;

 private:
  u64 p_;
};

// An element c0 + c1*t of F_p[t]/(t^2 - ns).
struct Fp2 {
  u64 c0 = 0;
  u64 c1 = 0;
  friend bool operator==(const Fp2&, const Fp2&) = default;
};

class QuadExtField {
 public:
  // ns defaults to the smallest non-residue; an explicit ns must be a
  // non-residue mod p.
  explicit QuadExtField(u64 p, std::optional<u64> ns = std::nullopt);

  u64 p() const { return p_; }
  u64 nonresidue() const { return ns_; }

  Fp2 from_base(i64 a) const { return {mod(a, p_), 0}; }
  Fp2 add(Fp2 a, Fp2 b) const;
  Fp2 sub(Fp2 a, Fp2 b) const;
  Fp2 mul(Fp2 a, Fp2 b) const;
  Fp2 pow(Fp2 a, u64 e) const;
  // Field norm a * a^p down to F_p.
  u64 norm(Fp2 a) const;
  Fp2 conj(Fp2 a) const { return {a.c0, a.c1 == 0 ? 0 : p_ - a.c1}; }
  bool is_zero(Fp2 a) const { return a.c0 == 0 && a.c1 == 0; }

  // Quadratic character of F_{p^2}: z^((p^2-1)/2) mapped to {-1, 0, +1}.
  int quadratic_character(Fp2 z) const;

  // Multiplicative order of a nonzero element.
  u64 order(Fp2 z) const;

  // Some element of order p^2 - 1 (searched in a fixed order).
  Fp2 find_generator() const;

 private:
  u64 p_;
  u64 ns_;
};

// Distinct prime factors of n > 0, ascending, by trial division.
std::vector<u64> prime_factors(u64 n);

}  // namespace splitred

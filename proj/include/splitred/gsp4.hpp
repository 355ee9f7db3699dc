#pragma once

// Exhaustive enumeration of GSp_4(F_l) and of the pair groups
// {(N1, N2) in GL_2 x GL_2 : det N1 = det N2} and its diagonal torus, for small l.
// Characteristic polynomials X^4 + a1 X^3 + a2 X^2 + g a1 X + g^2 are tallied by
// (multiplier g, a1, a2).

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "splitred/ffield.hpp"

namespace splitred {

using Mat4 = std::array<std::array<std::uint8_t, 4>, 4>;

// Entries in [0, l). Columns are the images of the standard basis.
struct SymplecticForm {
  // <x, y> = x^T J y with J = [[0, I], [-I, 0]].
  static i64 pair(const std::array<std::uint8_t, 4>& x, const std::array<std::uint8_t, 4>& y) {
    return i64{x[0]} * y[2] + i64{x[1]} * y[3] - i64{x[2]} * y[0] - i64{x[3]} * y[1];
  }
};

// Multiplier g with M^T J M = g J, or nullopt if M is not a symplectic similitude.
std::optional<u64> multiplier(const Mat4& m, u64 ell);

// (a1, a2) of char_M from principal minors (no division), reduced mod l.
std::pair<u64, u64> charpoly_a1_a2(const Mat4& m, u64 ell);

// All four lower coefficients (a1, a2, a3, a4) of det(X I - M) mod l.
std::array<u64, 4> charpoly_full(const Mat4& m, u64 ell);

class GroupTally {
 public:
  GroupTally() = default;
  explicit GroupTally(u64 ell);

  u64 ell() const { return ell_; }
  // Number of elements enumerated.
  u64 order() const;
  // l^4 (l - 1)(l^2 - 1)(l^4 - 1).
  static u64 expected_order(u64 ell);

  u64 count(u64 gamma, u64 a1, u64 a2) const { return counts_[index(gamma, a1, a2)]; }
  u64& at(u64 gamma, u64 a1, u64 a2) { return counts_[index(gamma, a1, a2)]; }
  u64 fiber_size(u64 gamma) const;

  const std::vector<u64>& raw() const { return counts_; }
  GroupTally& operator+=(const GroupTally& other);
  friend bool operator==(const GroupTally&, const GroupTally&) = default;

 private:
  std::size_t index(u64 gamma, u64 a1, u64 a2) const {
    return static_cast<std::size_t>(((gamma - 1) * ell_ + a1) * ell_ + a2);
  }
  u64 ell_ = 0;
  std::vector<u64> counts_;
};

struct EnumerationOptions {
  bool allow_slow = false;  // required for l = 7
  unsigned threads = 1;
  u64 seed = 0;
  // One element in spot_check_every gets its similitude identity and full
  // characteristic polynomial re-verified.
  u64 spot_check_every = 10'000;
};

struct EnumerationStats {
  u64 spot_checks = 0;
};

// Enumeration by symplectic-basis completion. Throws UnsupportedError for l
// outside {3, 5} (or {3, 5, 7} with allow_slow), ConsistencyError on a failed spot check.
GroupTally enumerate_gsp4(u64 ell, const EnumerationOptions& opts = {}, EnumerationStats* stats = nullptr);

// Scan of all l^16 matrices with the similitude filter; l = 3 only.
GroupTally scan_gsp4_bruteforce(u64 ell, unsigned threads = 1);

// Every element of G(l), in enumeration order (l = 3 only; used for class counting).
std::vector<Mat4> list_gsp4(u64 ell);

struct ConjClassTally {
  u64 ell = 0;
  u64 c1 = 0;   // Delta_M a nonzero square
  u64 c0 = 0;   // Delta_M = 0
  u64 cm1 = 0;  // Delta_M a non-square
  u64 projective_order = 0;  // |P(l)| = |G(l)| / (l - 1)
  double measured_c_ell = 0;  // (c1 - l^10 / 2) / l^9
  bool c0_within_bound = false;  // |c0 - l^9| <= 8 l^8
  bool c1_within_bound = false;  // |c1 - l^10 / 2| <= 8 l^9
};

// Throws ConsistencyError if a Legendre class count is not divisible by l - 1.
ConjClassTally conj_tallies(const GroupTally& t);

struct FiberReport {
  u64 ell = 0;
  std::map<std::tuple<u64, u64, u64>, u64> counts;
  u64 min_count = 0;
  u64 max_count = 0;
  double deviation_constant = 0;  // max |count - l^8| / l^7
  u64 total = 0;
};

FiberReport charpoly_fiber_check(const GroupTally& t);

struct ExceptionalSizes {
  u64 ell = 0;
  u64 delta_zero = 0;               // C^0
  std::array<u64, 9> a2_multiple{};  // C^1_i, index i + 2
  u64 a1_zero = 0;                   // C^2
  u64 a1sq_gamma_plus_a2 = 0;        // C^3
  u64 a1sq_twice_a2 = 0;             // C^4
  u64 a1sq_three_a2_minus_gamma = 0; // C^5
  double delta_zero_constant = 0;    // |C^0| / ((l - 1) l^9)
  bool all_within_bound = false;     // each <= 16 l^10
};

ExceptionalSizes exceptional_class_sizes(const GroupTally& t);

struct ClassNumberReport {
  u64 closure_size = 0;
  u64 group_classes = 0;       // |G(3)^#|
  u64 projective_classes = 0;  // |P(3)^#|
  std::size_t generators = 0;
  // One representative per class of G(3) with the size of its class.
  std::vector<Mat4> representatives;
  std::vector<u64> class_sizes;
};

// Conjugacy classes of GSp_4(F_3) by orbit partition under a generating set of
// symplectic transvections plus diag(1, 1, g, g). Throws ConsistencyError if the
// generators do not close up to the whole group; UnsupportedError unless l = 3.
ClassNumberReport class_number(u64 ell = 3);

struct PairGroupTally {
  u64 ell = 0;
  u64 gl2_order = 0;
  u64 g_order = 0;  // |GG(l)| = sum_d N(d)^2
  u64 t_order = 0;  // |TT(l)| by enumeration
  u64 c_rm = 0;     // (1/(l-1)) sum_{t,d} fiber(t,d)^2
  u64 c_cm = 0;     // equal-trace torus tuples / (l - 1)
  std::map<std::pair<u64, u64>, u64> gl2_fibers;  // (t, d) -> #{N : char_N = X^2 + t X + d}
};

// Throws UnsupportedError outside {3, 5, 7}.
PairGroupTally enumerate_pairs(u64 ell);

struct PairDirectCounts {
  u64 g_order = 0;
  u64 c_rm = 0;
  u64 group_classes = 0;       // |GG(l)^#|
  u64 projective_classes = 0;  // |PP(l)^#|
};

// Direct pair enumeration and conjugacy-class partition (l = 3 only).
PairDirectCounts pair_direct_counts(u64 ell = 3);

}  // namespace splitred

#include "splitred/gsp4.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>

#include "splitred/errors.hpp"

namespace splitred {

namespace {

using Vec4 = std::array<std::uint8_t, 4>;

u64 ipow(u64 b, unsigned e) {
  u64 r = 1;
  while (e--) r *= b;
  return r;
}

u64 splitmix64(u64 x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<Vec4> all_vectors(u64 ell) {
  std::vector<Vec4> out(ipow(ell, 4));
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::size_t r = i;
    for (int k = 0; k < 4; ++k) {
      out[i][k] = static_cast<std::uint8_t>(r % ell);
      r /= ell;
    }
  }
  return out;
}

u64 pair_mod(const Vec4& x, const Vec4& y, u64 ell) { return mod(SymplecticForm::pair(x, y), ell); }

Mat4 from_columns(const Vec4& c1, const Vec4& c2, const Vec4& c3, const Vec4& c4) {
  Mat4 m{};
  for (int i = 0; i < 4; ++i) {
    m[i][0] = c1[i];
    m[i][1] = c2[i];
    m[i][2] = c3[i];
    m[i][3] = c4[i];
  }
  return m;
}

Mat4 mat_mul(const Mat4& a, const Mat4& b, u64 ell) {
  Mat4 out{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      unsigned s = 0;
      for (int k = 0; k < 4; ++k) s += unsigned{a[i][k]} * b[k][j];
      out[i][j] = static_cast<std::uint8_t>(s % ell);
    }
  }
  return out;
}

Mat4 mat_scale(const Mat4& a, u64 lambda, u64 ell) {
  Mat4 out{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) out[i][j] = static_cast<std::uint8_t>(a[i][j] * lambda % ell);
  }
  return out;
}

int jentry(int r, int c) {
  if (c == r + 2) return 1;
  if (r == c + 2) return -1;
  return 0;
}

// M^{-1} = g^{-1} (-J M^T J) for a similitude with multiplier g.
Mat4 similitude_inverse(const Mat4& m, u64 gamma, u64 ell) {
  const i64 ginv = static_cast<i64>(inv_mod(static_cast<i64>(gamma), ell));
  Mat4 out{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      i64 s = 0;
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) s += jentry(i, a) * i64{m[b][a]} * jentry(b, j);
      }
      out[i][j] = static_cast<std::uint8_t>(mod(-s * ginv, ell));
    }
  }
  return out;
}

u64 encode(const Mat4& m, u64 ell) {
  u64 code = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) code = code * ell + m[i][j];
  }
  return code;
}

Mat4 identity4() {
  Mat4 m{};
  for (int i = 0; i < 4; ++i) m[i][i] = 1;
  return m;
}

i64 det3(const Mat4& m, int r0, int r1, int r2) {
  const int r[3] = {r0, r1, r2};
  auto e = [&](int i, int j) { return i64{m[r[i]][r[j]]}; };
  return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
         e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
}

i64 det4(const Mat4& m) {
  i64 s = 0;
  for (int c = 0; c < 4; ++c) {
    // Minor deleting row 0 and column c.
    int cols[3], k = 0;
    for (int j = 0; j < 4; ++j) {
      if (j != c) cols[k++] = j;
    }
    auto e = [&](int i, int j) { return i64{m[i + 1][cols[j]]}; };
    const i64 minor = e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) -
                      e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
                      e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
    s += (c % 2 == 0 ? 1 : -1) * i64{m[0][c]} * minor;
  }
  return s;
}

void check_supported(u64 ell, bool allow_slow) {
  if (ell == 3 || ell == 5) return;
  if (ell == 7) {
    if (allow_slow) return;
    throw UnsupportedError("l = 7 enumeration is slow; enable it explicitly");
  }
  throw UnsupportedError("enumeration supports l in {3, 5, 7}, got " + std::to_string(ell));
}

// Calls visit(gamma, c1, c2, c3, c4) for every element of G(l), with c1 indices
// distributed over threads. visit receives the worker index as first argument.
template <class Visit>
void for_each_element(u64 ell, unsigned threads, Visit&& visit) {
  const auto vecs = all_vectors(ell);
  const std::size_t nv = vecs.size();
  std::atomic<std::size_t> next{1};
  auto worker = [&](unsigned w) {
    std::vector<std::vector<std::uint32_t>> by_pairing(ell);
    std::vector<std::uint32_t> complement;
    for (std::size_t i1; (i1 = next.fetch_add(1)) < nv;) {
      const Vec4& c1 = vecs[i1];
      for (auto& l : by_pairing) l.clear();
      for (std::size_t v = 0; v < nv; ++v) by_pairing[pair_mod(c1, vecs[v], ell)].push_back(static_cast<std::uint32_t>(v));
      for (u64 gamma = 1; gamma < ell; ++gamma) {
        for (std::uint32_t i3 : by_pairing[gamma]) {
          const Vec4& c3 = vecs[i3];
          complement.clear();
          for (std::uint32_t v : by_pairing[0]) {
            if (pair_mod(c3, vecs[v], ell) == 0) complement.push_back(v);
          }
          for (std::uint32_t i2 : complement) {
            if (i2 == 0) continue;
            const Vec4& c2 = vecs[i2];
            for (std::uint32_t i4 : complement) {
              if (pair_mod(c2, vecs[i4], ell) != gamma) continue;
              visit(w, gamma, i1, i2, i3, i4, c1, c2, c3, vecs[i4]);
            }
          }
        }
      }
    }
  };
  threads = std::max(1u, threads);
  if (threads == 1) {
    worker(0);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        worker(w);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(nv);
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::optional<u64> multiplier(const Mat4& m, u64 ell) {
  // (M^T J M)_{ij} = <col_i, col_j>.
  std::array<Vec4, 4> cols{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) cols[j][i] = m[i][j];
  }
  const u64 g = pair_mod(cols[0], cols[2], ell);
  if (g == 0) return std::nullopt;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (pair_mod(cols[i], cols[j], ell) != mod(jentry(i, j) * static_cast<i64>(g), ell)) return std::nullopt;
    }
  }
  return g;
}

std::pair<u64, u64> charpoly_a1_a2(const Mat4& m, u64 ell) {
  i64 tr = 0, e2 = 0;
  for (int i = 0; i < 4; ++i) {
    tr += m[i][i];
    for (int j = i + 1; j < 4; ++j) e2 += i64{m[i][i]} * m[j][j] - i64{m[i][j]} * m[j][i];
  }
  return {mod(-tr, ell), mod(e2, ell)};
}

std::array<u64, 4> charpoly_full(const Mat4& m, u64 ell) {
  const auto [a1, a2] = charpoly_a1_a2(m, ell);
  const i64 e3 = det3(m, 0, 1, 2) + det3(m, 0, 1, 3) + det3(m, 0, 2, 3) + det3(m, 1, 2, 3);
  return {a1, a2, mod(-e3, ell), mod(det4(m), ell)};
}

GroupTally::GroupTally(u64 ell) : ell_(ell), counts_((ell - 1) * ell * ell, 0) {}

u64 GroupTally::order() const { return std::accumulate(counts_.begin(), counts_.end(), u64{0}); }

u64 GroupTally::expected_order(u64 ell) {
  return ipow(ell, 4) * (ell - 1) * (ell * ell - 1) * (ipow(ell, 4) - 1);
}

u64 GroupTally::fiber_size(u64 gamma) const {
  u64 s = 0;
  for (u64 a1 = 0; a1 < ell_; ++a1) {
    for (u64 a2 = 0; a2 < ell_; ++a2) s += count(gamma, a1, a2);
  }
  return s;
}

GroupTally& GroupTally::operator+=(const GroupTally& other) {
  if (other.ell_ != ell_) throw InvalidArgument("tallies for different l");
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  return *this;
}

GroupTally enumerate_gsp4(u64 ell, const EnumerationOptions& opts, EnumerationStats* stats) {
  check_supported(ell, opts.allow_slow);
  const unsigned threads = std::max(1u, opts.threads);
  std::vector<GroupTally> partial(threads, GroupTally(ell));
  std::vector<u64> checks(threads, 0);
  const u64 every = std::max<u64>(1, opts.spot_check_every);
  const u64 seed_mix = splitmix64(opts.seed ^ 0x5a17ab1eULL);
  const u64 nv = ipow(ell, 4);

  for_each_element(ell, threads, [&](unsigned w, u64 gamma, std::size_t i1, std::size_t i2, std::size_t i3, std::size_t i4,
                                     const Vec4& c1, const Vec4& c2, const Vec4& c3, const Vec4& c4) {
    // Trace and sum of principal 2x2 minors, read straight off the columns.
    const u64 tr = u64{c1[0]} + c2[1] + c3[2] + c4[3];
    const Mat4 m = from_columns(c1, c2, c3, c4);
    i64 e2 = 0;
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) e2 += i64{m[i][i]} * m[j][j] - i64{m[i][j]} * m[j][i];
    }
    const u64 a1 = (ell - tr % ell) % ell;
    const u64 a2 = mod(e2, ell);
    ++partial[w].at(gamma, a1, a2);

    const u64 key = splitmix64(seed_mix ^ (((i1 * nv + i2) * nv + i3) * nv + i4));
    if (key % every == 0) {
      ++checks[w];
      const auto g = multiplier(m, ell);
      if (!g || *g != gamma) throw ConsistencyError("sampled element fails M^T J M = g J");
      const auto cp = charpoly_full(m, ell);
      if (cp[0] != a1 || cp[1] != a2 || cp[2] != gamma * a1 % ell || cp[3] != gamma * gamma % ell) {
        throw ConsistencyError("sampled element has a non-reciprocal characteristic polynomial");
      }
    }
  });

  GroupTally total(ell);
  for (const auto& t : partial) total += t;
  if (stats) stats->spot_checks = std::accumulate(checks.begin(), checks.end(), u64{0});
  if (total.order() != GroupTally::expected_order(ell)) {
    throw ConsistencyError("enumerated " + std::to_string(total.order()) + " elements, expected " +
                           std::to_string(GroupTally::expected_order(ell)));
  }
  return total;
}

GroupTally scan_gsp4_bruteforce(u64 ell, unsigned threads) {
  if (ell != 3) throw UnsupportedError("the full matrix scan is only run at l = 3");
  const auto vecs = all_vectors(ell);
  const std::size_t nv = vecs.size();
  std::vector<std::uint8_t> form(nv * nv);
  for (std::size_t i = 0; i < nv; ++i) {
    for (std::size_t j = 0; j < nv; ++j) form[i * nv + j] = static_cast<std::uint8_t>(pair_mod(vecs[i], vecs[j], ell));
  }
  threads = std::max(1u, threads);
  std::vector<GroupTally> partial(threads, GroupTally(ell));
  std::atomic<std::size_t> next{0};
  auto worker = [&](unsigned w) {
    for (std::size_t i1; (i1 = next.fetch_add(1)) < nv;) {
      for (std::size_t i2 = 0; i2 < nv; ++i2) {
        const unsigned f12 = form[i1 * nv + i2];
        for (std::size_t i3 = 0; i3 < nv; ++i3) {
          const unsigned f13 = form[i1 * nv + i3];
          const unsigned f23 = form[i2 * nv + i3];
          for (std::size_t i4 = 0; i4 < nv; ++i4) {
            const unsigned f14 = form[i1 * nv + i4];
            const unsigned f24 = form[i2 * nv + i4];
            const unsigned f34 = form[i3 * nv + i4];
            if (f12 | f14 | f23 | f34) continue;
            if (f13 == 0 || f13 != f24) continue;
            // Charpoly from traces of M and M^2: e2 = (tr^2 - tr M^2) / 2.
            const Mat4 m = from_columns(vecs[i1], vecs[i2], vecs[i3], vecs[i4]);
            const Mat4 m2 = mat_mul(m, m, ell);
            i64 tr = 0, tr2 = 0;
            for (int k = 0; k < 4; ++k) {
              tr += m[k][k];
              tr2 += m2[k][k];
            }
            const u64 inv2 = inv_mod(2, ell);
            const u64 a1 = mod(-tr, ell);
            const u64 a2 = mul_mod(mod(tr * tr - tr2, ell), inv2, ell);
            ++partial[w].at(f13, a1, a2);
          }
        }
      }
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();
  }
  GroupTally total(ell);
  for (const auto& t : partial) total += t;
  return total;
}

std::vector<Mat4> list_gsp4(u64 ell) {
  if (ell != 3) throw UnsupportedError("element listing is only supported at l = 3");
  std::vector<Mat4> out;
  out.reserve(GroupTally::expected_order(ell));
  for_each_element(ell, 1, [&](unsigned, u64, std::size_t, std::size_t, std::size_t, std::size_t, const Vec4& c1,
                               const Vec4& c2, const Vec4& c3, const Vec4& c4) { out.push_back(from_columns(c1, c2, c3, c4)); });
  return out;
}

ConjClassTally conj_tallies(const GroupTally& t) {
  const u64 ell = t.ell();
  u64 plus = 0, zero = 0, minus = 0;
  for (u64 g = 1; g < ell; ++g) {
    for (u64 a1 = 0; a1 < ell; ++a1) {
      for (u64 a2 = 0; a2 < ell; ++a2) {
        const i64 delta = static_cast<i64>(a1 * a1) - 4 * static_cast<i64>(a2) + 8 * static_cast<i64>(g);
        const u64 n = t.count(g, a1, a2);
        switch (legendre(delta, ell)) {
          case 1: plus += n; break;
          case 0: zero += n; break;
          default: minus += n; break;
        }
      }
    }
  }
  if (plus % (ell - 1) || zero % (ell - 1) || minus % (ell - 1)) {
    throw ConsistencyError("Legendre class sizes are not divisible by l - 1");
  }
  ConjClassTally out;
  out.ell = ell;
  out.c1 = plus / (ell - 1);
  out.c0 = zero / (ell - 1);
  out.cm1 = minus / (ell - 1);
  out.projective_order = t.order() / (ell - 1);
  const double l9 = static_cast<double>(ipow(ell, 9));
  const double half_l10 = static_cast<double>(ipow(ell, 10)) / 2;
  out.measured_c_ell = (static_cast<double>(out.c1) - half_l10) / l9;
  out.c0_within_bound = std::fabs(static_cast<double>(out.c0) - l9) <= 8.0 * static_cast<double>(ipow(ell, 8));
  out.c1_within_bound = std::fabs(static_cast<double>(out.c1) - half_l10) <= 8.0 * l9;
  return out;
}

FiberReport charpoly_fiber_check(const GroupTally& t) {
  const u64 ell = t.ell();
  FiberReport r;
  r.ell = ell;
  r.min_count = UINT64_MAX;
  const double l8 = static_cast<double>(ipow(ell, 8));
  const double l7 = static_cast<double>(ipow(ell, 7));
  for (u64 g = 1; g < ell; ++g) {
    for (u64 a1 = 0; a1 < ell; ++a1) {
      for (u64 a2 = 0; a2 < ell; ++a2) {
        const u64 n = t.count(g, a1, a2);
        r.counts[{g, a1, a2}] = n;
        r.min_count = std::min(r.min_count, n);
        r.max_count = std::max(r.max_count, n);
        r.total += n;
        r.deviation_constant = std::max(r.deviation_constant, std::fabs(static_cast<double>(n) - l8) / l7);
      }
    }
  }
  return r;
}

ExceptionalSizes exceptional_class_sizes(const GroupTally& t) {
  const u64 ell = t.ell();
  ExceptionalSizes s;
  s.ell = ell;
  for (u64 g = 1; g < ell; ++g) {
    for (u64 a1 = 0; a1 < ell; ++a1) {
      for (u64 a2 = 0; a2 < ell; ++a2) {
        const u64 n = t.count(g, a1, a2);
        const i64 A1 = static_cast<i64>(a1), A2 = static_cast<i64>(a2), G = static_cast<i64>(g);
        if (mod(A1 * A1 - 4 * A2 + 8 * G, ell) == 0) s.delta_zero += n;
        for (int i = -2; i <= 6; ++i) {
          if (mod(A2 - i * G, ell) == 0) s.a2_multiple[static_cast<std::size_t>(i + 2)] += n;
        }
        if (a1 == 0) s.a1_zero += n;
        if (mod(A1 * A1 - G - A2, ell) == 0) s.a1sq_gamma_plus_a2 += n;
        if (mod(A1 * A1 - 2 * A2, ell) == 0) s.a1sq_twice_a2 += n;
        if (mod(A1 * A1 - 3 * (A2 - G), ell) == 0) s.a1sq_three_a2_minus_gamma += n;
      }
    }
  }
  s.delta_zero_constant = static_cast<double>(s.delta_zero) / static_cast<double>((ell - 1) * ipow(ell, 9));
  const u64 cap = 16 * ipow(ell, 10);
  s.all_within_bound = s.delta_zero <= cap && s.a1_zero <= cap && s.a1sq_gamma_plus_a2 <= cap &&
                       s.a1sq_twice_a2 <= cap && s.a1sq_three_a2_minus_gamma <= cap &&
                       std::all_of(s.a2_multiple.begin(), s.a2_multiple.end(), [&](u64 v) { return v <= cap; });
  return s;
}

namespace {

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  u64 components() {
    u64 n = 0;
    for (std::uint32_t i = 0; i < parent.size(); ++i) n += find(i) == i;
    return n;
  }
};

}  // namespace

ClassNumberReport class_number(u64 ell) {
  if (ell != 3) throw UnsupportedError("class counting is only supported at l = 3");
  const auto elements = list_gsp4(ell);
  std::vector<std::pair<u64, std::uint32_t>> index;
  index.reserve(elements.size());
  for (std::uint32_t i = 0; i < elements.size(); ++i) index.emplace_back(encode(elements[i], ell), i);
  std::sort(index.begin(), index.end());
  auto lookup = [&](const Mat4& m) -> std::uint32_t {
    const u64 code = encode(m, ell);
    const auto it = std::lower_bound(index.begin(), index.end(), std::make_pair(code, std::uint32_t{0}));
    if (it == index.end() || it->first != code) throw ConsistencyError("product left the enumerated group");
    return it->second;
  };

  // Transvections x -> x + <x, v> v (v and -v give the same map), plus diag(1, 1, g, g).
  std::vector<Mat4> gens;
  std::vector<u64> gen_mult;
  const auto vecs = all_vectors(ell);
  std::vector<u64> seen;
  for (std::size_t vi = 1; vi < vecs.size(); ++vi) {
    const Vec4& v = vecs[vi];
    Mat4 t{};
    for (int j = 0; j < 4; ++j) {
      Vec4 e{};
      e[j] = 1;
      const u64 c = pair_mod(e, v, ell);
      for (int i = 0; i < 4; ++i) t[i][j] = static_cast<std::uint8_t>((e[i] + c * v[i]) % ell);
    }
    const u64 code = encode(t, ell);
    if (std::find(seen.begin(), seen.end(), code) != seen.end()) continue;
    seen.push_back(code);
    gens.push_back(t);
    gen_mult.push_back(1);
  }
  const u64 gen_gamma = ell - 1;  // generates F_3^x
  Mat4 d = identity4();
  d[2][2] = d[3][3] = static_cast<std::uint8_t>(gen_gamma);
  gens.push_back(d);
  gen_mult.push_back(gen_gamma);
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const auto g = multiplier(gens[k], ell);
    if (!g || *g != gen_mult[k]) throw ConsistencyError("generator is not a symplectic similitude");
  }

  // Closure from the identity.
  std::vector<bool> reached(elements.size(), false);
  std::vector<std::uint32_t> queue{lookup(identity4())};
  reached[queue[0]] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Mat4& g = elements[queue[head]];
    for (const Mat4& s : gens) {
      const std::uint32_t h = lookup(mat_mul(s, g, ell));
      if (!reached[h]) {
        reached[h] = true;
        queue.push_back(h);
      }
    }
  }
  ClassNumberReport r;
  r.closure_size = queue.size();
  r.generators = gens.size();
  if (r.closure_size != elements.size()) {
    throw ConsistencyError("generators close up to " + std::to_string(r.closure_size) + " of " +
                           std::to_string(elements.size()) + " elements");
  }

  UnionFind uf(elements.size());
  std::vector<Mat4> inverses;
  for (std::size_t k = 0; k < gens.size(); ++k) inverses.push_back(similitude_inverse(gens[k], gen_mult[k], ell));
  for (std::uint32_t i = 0; i < elements.size(); ++i) {
    for (std::size_t k = 0; k < gens.size(); ++k) {
      uf.unite(i, lookup(mat_mul(mat_mul(gens[k], elements[i], ell), inverses[k], ell)));
    }
  }
  r.group_classes = uf.components();
  std::vector<u64> sizes(elements.size(), 0);
  for (std::uint32_t i = 0; i < elements.size(); ++i) ++sizes[uf.find(i)];
  for (std::uint32_t i = 0; i < elements.size(); ++i) {
    if (uf.find(i) == i) {
      r.representatives.push_back(elements[i]);
      r.class_sizes.push_back(sizes[i]);
    }
  }
  for (std::uint32_t i = 0; i < elements.size(); ++i) {
    for (u64 lambda = 2; lambda < ell; ++lambda) uf.unite(i, lookup(mat_scale(elements[i], lambda, ell)));
  }
  r.projective_classes = uf.components();
  return r;
}

namespace {

struct Mat2 {
  u64 a, b, c, d;
  bool operator==(const Mat2&) const = default;
};

Mat2 mul2(const Mat2& x, const Mat2& y, u64 ell) {
  return {(x.a * y.a + x.b * y.c) % ell, (x.a * y.b + x.b * y.d) % ell, (x.c * y.a + x.d * y.c) % ell,
          (x.c * y.b + x.d * y.d) % ell};
}

u64 det2(const Mat2& x, u64 ell) { return mod(static_cast<i64>(x.a * x.d) - static_cast<i64>(x.b * x.c), ell); }

std::vector<Mat2> list_gl2(u64 ell) {
  std::vector<Mat2> out;
  for (u64 a = 0; a < ell; ++a)
    for (u64 b = 0; b < ell; ++b)
      for (u64 c = 0; c < ell; ++c)
        for (u64 d = 0; d < ell; ++d) {
          const Mat2 m{a, b, c, d};
          if (det2(m, ell) != 0) out.push_back(m);
        }
  return out;
}

}  // namespace

PairGroupTally enumerate_pairs(u64 ell) {
  if (ell != 3 && ell != 5 && ell != 7) throw UnsupportedError("pair enumeration supports l in {3, 5, 7}");
  PairGroupTally r;
  r.ell = ell;
  std::vector<u64> by_det(ell, 0);
  for (const Mat2& m : list_gl2(ell)) {
    const u64 d = det2(m, ell);
    const u64 t = mod(-static_cast<i64>(m.a + m.d), ell);
    ++r.gl2_fibers[{t, d}];
    ++by_det[d];
    ++r.gl2_order;
  }
  for (u64 n : by_det) r.g_order += n * n;
  u64 rm = 0;
  for (const auto& [key, n] : r.gl2_fibers) rm += n * n;
  if (rm % (ell - 1)) throw ConsistencyError("equal-charpoly pair count not divisible by l - 1");
  r.c_rm = rm / (ell - 1);

  u64 cm = 0;
  for (u64 l1 = 1; l1 < ell; ++l1)
    for (u64 l2 = 1; l2 < ell; ++l2)
      for (u64 m1 = 1; m1 < ell; ++m1)
        for (u64 m2 = 1; m2 < ell; ++m2) {
          if (l1 * l2 % ell != m1 * m2 % ell) continue;
          ++r.t_order;
          if ((l1 + l2) % ell == (m1 + m2) % ell) ++cm;
        }
  if (cm % (ell - 1)) throw ConsistencyError("torus tuple count not divisible by l - 1");
  r.c_cm = cm / (ell - 1);
  return r;
}

PairDirectCounts pair_direct_counts(u64 ell) {
  if (ell != 3) throw UnsupportedError("direct pair counting is only supported at l = 3");
  const auto gl2 = list_gl2(ell);
  std::vector<std::pair<Mat2, Mat2>> group;
  PairDirectCounts r;
  u64 rm = 0;
  for (const Mat2& x : gl2) {
    for (const Mat2& y : gl2) {
      if (det2(x, ell) != det2(y, ell)) continue;
      group.emplace_back(x, y);
      if ((x.a + x.d) % ell == (y.a + y.d) % ell) ++rm;
    }
  }
  r.g_order = group.size();
  r.c_rm = rm / (ell - 1);

  auto index_of = [&](const Mat2& x, const Mat2& y) -> std::uint32_t {
    for (std::uint32_t i = 0; i < group.size(); ++i) {
      if (group[i].first == x && group[i].second == y) return i;
    }
    throw ConsistencyError("pair product left the group");
  };
  auto inverse2 = [&](const Mat2& x) {
    const u64 di = inv_mod(static_cast<i64>(det2(x, ell)), ell);
    return Mat2{x.d * di % ell, (ell - x.b) % ell * di % ell, (ell - x.c) % ell * di % ell, x.a * di % ell};
  };
  UnionFind uf(group.size());
  for (std::uint32_t i = 0; i < group.size(); ++i) {
    for (const auto& [h1, h2] : group) {
      const Mat2 x = mul2(mul2(h1, group[i].first, ell), inverse2(h1), ell);
      const Mat2 y = mul2(mul2(h2, group[i].second, ell), inverse2(h2), ell);
      uf.unite(i, index_of(x, y));
    }
  }
  r.group_classes = uf.components();
  for (std::uint32_t i = 0; i < group.size(); ++i) {
    for (u64 lambda = 2; lambda < ell; ++lambda) {
      const Mat2 s{lambda, 0, 0, lambda};
      uf.unite(i, index_of(mul2(s, group[i].first, ell), mul2(s, group[i].second, ell)));
    }
  }
  r.projective_classes = uf.components();
  return r;
}

}  // namespace splitred

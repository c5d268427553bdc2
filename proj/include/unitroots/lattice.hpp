#pragma once

#include <unitroots/common.hpp>
#include <unitroots/weil.hpp>

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace unitroots {

// Axis-aligned lattice d_1 Z x ... x d_n Z with positive rational steps.
struct RectilinearLattice {
  std::vector<Rat> steps;

  explicit RectilinearLattice(std::vector<Rat> s) : steps(std::move(s)) {
    if (steps.empty()) throw std::domain_error("RectilinearLattice: no steps");
    for (const Rat& d : steps)
      if (d <= 0) throw std::domain_error("RectilinearLattice: steps must be positive");
  }

  int dim() const { return static_cast<int>(steps.size()); }

  Rat covolume() const {
    Rat c = 1;
    for (const Rat& d : steps) c *= d;
    return c;
  }

  Rat max_step() const {
    Rat m = steps[0];
    for (const Rat& d : steps) m = std::max(m, d);
    return m;
  }
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(Int required_, Int limit_)
      : std::runtime_error("enumeration budget exceeded: needs " + required_.str() +
                           " candidate evaluations, budget is " + limit_.str()),
        required(std::move(required_)),
        limit(std::move(limit_)) {}

  Int required;
  Int limit;
};

struct EnumOptions {
  Int budget = Int(100000000);
  int threads = 0;  // 0: hardware concurrency
};

struct WeilPointCounts {
  Int all{0};    // Weil candidates in the coefficient box
  Int div_p{0};  // ... whose middle coefficient is divisible by p
  Int div_s{0};  // ... divisible by p^ceil(e/2)
};

namespace detail {

inline Int box_size(const std::vector<std::int64_t>& bounds) {
  Int total = 1;
  for (std::int64_t b : bounds) total *= 2 * Int(b) + 1;
  return total;
}

// Count Weil points for all a_2..a_n at one fixed a_1.
inline void weil_column_counts(const WeilTester& tester, const std::vector<std::int64_t>& bounds,
                               std::int64_t a1, std::int64_t p, const Int& s, WeilPointCounts& out) {
  const int n = tester.n();
  std::vector<Int> a(static_cast<std::size_t>(n));
  a[0] = a1;
  std::vector<std::int64_t> cur(static_cast<std::size_t>(n), 0);
  int depth = 1;
  if (n == 1) {
    if (tester.is_weil(a)) {
      ++out.all;
      if (a1 % p == 0) ++out.div_p;
      if (Int(a1) % s == 0) ++out.div_s;
    }
    return;
  }
  cur[1] = -bounds[1];
  while (depth >= 1) {
    if (cur[static_cast<std::size_t>(depth)] > bounds[static_cast<std::size_t>(depth)]) {
      --depth;
      if (depth >= 1) ++cur[static_cast<std::size_t>(depth)];
      continue;
    }
    a[static_cast<std::size_t>(depth)] = cur[static_cast<std::size_t>(depth)];
    if (depth + 1 < n) {
      ++depth;
      cur[static_cast<std::size_t>(depth)] = -bounds[static_cast<std::size_t>(depth)];
      continue;
    }
    if (tester.is_weil(a)) {
      ++out.all;
      std::int64_t an = cur[static_cast<std::size_t>(depth)];
      if (an % p == 0) ++out.div_p;
      if (Int(an) % s == 0) ++out.div_s;
    }
    ++cur[static_cast<std::size_t>(depth)];
  }
}

}  // namespace detail

// One pass over the coefficient box |a_i| <= C(2n,i) q^{i/2}, counting the
// Weil candidates together with the divisibility-filtered subcounts for the
// two sublattices (step p, respectively p^ceil(e/2), in the middle
// coordinate). Deterministic under any thread count.
inline WeilPointCounts enumerate_weil_counts(std::int64_t q, int n, const EnumOptions& opts = {}) {
  auto pp = prime_power_decompose(q);
  if (!pp) throw std::domain_error("enumerate_weil_counts: q must be a prime power >= 2");
  if (n < 1) throw std::domain_error("enumerate_weil_counts: n must be positive");
  const std::vector<std::int64_t> bounds = coefficient_bounds(q, n);
  const Int required = detail::box_size(bounds);
  if (required > opts.budget) throw BudgetExceeded(required, opts.budget);

  static std::mutex memo_mutex;
  static std::map<std::pair<std::int64_t, int>, WeilPointCounts> memo;
  {
    std::lock_guard<std::mutex> lock(memo_mutex);
    auto it = memo.find({q, n});
    if (it != memo.end()) return it->second;
  }

  const WeilTester tester(q, n);
  const Int s = middle_prime_power(pp->p, pp->e);
  const std::int64_t b1 = bounds[0];
  std::vector<WeilPointCounts> slots(static_cast<std::size_t>(2 * b1 + 1));

  int nthreads = opts.threads > 0 ? opts.threads : static_cast<int>(std::thread::hardware_concurrency());
  if (nthreads < 1) nthreads = 1;
  if (nthreads > static_cast<int>(slots.size())) nthreads = static_cast<int>(slots.size());
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (std::int64_t k = next.fetch_add(1); k < static_cast<std::int64_t>(slots.size());
         k = next.fetch_add(1))
      detail::weil_column_counts(tester, bounds, k - b1, pp->p, s, slots[static_cast<std::size_t>(k)]);
  };
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  WeilPointCounts total;
  for (const auto& c : slots) {
    total.all += c.all;
    total.div_p += c.div_p;
    total.div_s += c.div_s;
  }
  {
    std::lock_guard<std::mutex> lock(memo_mutex);
    memo.emplace(std::make_pair(q, n), total);
  }
  return total;
}

// Number of Weil candidates whose middle coefficient lies in
// middle_divisor * Z; the divisor must be 1, p, or p^ceil(e/2).
inline Int count_weil_points(std::int64_t q, int n, const Int& middle_divisor,
                             const EnumOptions& opts = {}) {
  auto pp = prime_power_decompose(q);
  if (!pp) throw std::domain_error("count_weil_points: q must be a prime power >= 2");
  const Int s = middle_prime_power(pp->p, pp->e);
  WeilPointCounts counts = enumerate_weil_counts(q, n, opts);
  if (middle_divisor == 1) return counts.all;
  if (middle_divisor == pp->p) return counts.div_p;
  if (middle_divisor == s) return counts.div_s;
  throw std::domain_error("count_weil_points: middle divisor must be 1, p, or p^ceil(e/2)");
}

// Single-threaded visitor over every Weil candidate in the box.
inline void for_each_weil_point(std::int64_t q, int n,
                                const std::function<void(const std::vector<Int>&)>& visit,
                                const Int& budget = Int(100000000)) {
  if (!prime_power_decompose(q)) throw std::domain_error("for_each_weil_point: q must be a prime power");
  if (n < 1) throw std::domain_error("for_each_weil_point: n must be positive");
  const std::vector<std::int64_t> bounds = coefficient_bounds(q, n);
  const Int required = detail::box_size(bounds);
  if (required > budget) throw BudgetExceeded(required, budget);
  const WeilTester tester(q, n);
  std::vector<Int> a(static_cast<std::size_t>(n));
  auto rec = [&](auto&& self, int i) -> void {
    if (i == n) {
      if (tester.is_weil(a)) visit(a);
      return;
    }
    for (std::int64_t v = -bounds[static_cast<std::size_t>(i)]; v <= bounds[static_cast<std::size_t>(i)]; ++v) {
      a[static_cast<std::size_t>(i)] = v;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
}

// #(C intersect J'), where C is the cubic lattice (1/m)Z^n and J' the
// closed ordered simplex 0 <= x_1 <= ... <= x_n <= 1 minus the top face
// x_n = 1: multisets of size n from {0, 1/m, ..., (m-1)/m}.
inline Int count_cubic_simplex(int m, int n) {
  if (m < 1 || n < 1) throw std::domain_error("count_cubic_simplex: m, n must be positive");
  return binomial(static_cast<unsigned>(n + m - 1), static_cast<unsigned>(n));
}

inline Int count_cubic_simplex_brute(int m, int n) {
  if (m < 1 || n < 1) throw std::domain_error("count_cubic_simplex_brute: m, n must be positive");
  Int total = 0;
  std::vector<int> k(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int i, int lo) -> void {
    if (i == n) {
      ++total;
      return;
    }
    for (int v = lo; v < m; ++v) {
      k[static_cast<std::size_t>(i)] = v;
      self(self, i + 1, v);
    }
  };
  rec(rec, 0, 0);
  return total;
}

// Lattice points in the closed corner wedge {x_i >= 0, sum x_i <= r} are at
// least its volume over the covolume: r^n / (n! prod d_i).
inline Rat wedge_lower_bound(const RectilinearLattice& lat, const Rat& r) {
  if (r < 0) throw std::domain_error("wedge_lower_bound: radius must be non-negative");
  const int n = lat.dim();
  return rat_pow(r, n) / (Rat(factorial(static_cast<unsigned>(n))) * lat.covolume());
}

// Lattice points in the diamond {sum |x_i| <= r}: summing the wedge bound
// over the translated orthant corners gives
//   sum_{S, d_S <= r} (r - d_S)^n / (n! prod d_i),  d_S = sum_{i in S} d_i.
// 2^n subsets, so the dimension is capped.
inline Rat diamond_lower_bound(const RectilinearLattice& lat, const Rat& r) {
  if (r < 0) throw std::domain_error("diamond_lower_bound: radius must be non-negative");
  const int n = lat.dim();
  if (n > 20) throw std::invalid_argument("diamond_lower_bound: dimension too large for subset sum");
  Rat acc = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    Rat ds = 0;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) ds += lat.steps[static_cast<std::size_t>(i)];
    if (ds <= r) acc += rat_pow(r - ds, n);
  }
  return acc / (Rat(factorial(static_cast<unsigned>(n))) * lat.covolume());
}

inline Int diamond_count_brute(const RectilinearLattice& lat, const Rat& r) {
  if (r < 0) throw std::domain_error("diamond_count_brute: radius must be non-negative");
  const int n = lat.dim();
  Int total = 0;
  auto rec = [&](auto&& self, int i, const Rat& rem) -> void {
    if (i == n) {
      ++total;
      return;
    }
    const Rat& d = lat.steps[static_cast<std::size_t>(i)];
    Int kmax = floor_div(numerator(rem) * denominator(d), denominator(rem) * numerator(d));
    for (Int k = -kmax; k <= kmax; ++k) self(self, i + 1, rem - rat_abs(Rat(k) * d));
  };
  rec(rec, 0, r);
  return total;
}

inline Int wedge_count_brute(const RectilinearLattice& lat, const Rat& r) {
  if (r < 0) throw std::domain_error("wedge_count_brute: radius must be non-negative");
  const int n = lat.dim();
  Int total = 0;
  auto rec = [&](auto&& self, int i, const Rat& rem) -> void {
    if (i == n) {
      ++total;
      return;
    }
    const Rat& d = lat.steps[static_cast<std::size_t>(i)];
    Int kmax = floor_div(numerator(rem) * denominator(d), denominator(rem) * numerator(d));
    for (Int k = 0; k <= kmax; ++k) self(self, i + 1, rem - Rat(k) * d);
  };
  rec(rec, 0, r);
  return total;
}

}  // namespace unitroots

#pragma once

#include <unitroots/common.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

namespace unitroots {

// Exact volume of the coefficient region:
//   2^{n(n+1)} / n! * prod_{1 <= i < j <= n} (j - i)/(j + i).
inline Rat v_exact(int n) {
  if (n < 1) throw std::domain_error("v_exact: n must be positive");
  Rat v = Rat(ipow(Int(2), static_cast<unsigned>(n) * (static_cast<unsigned>(n) + 1))) /
          Rat(factorial(static_cast<unsigned>(n)));
  for (int i = 1; i < n; ++i)
    for (int j = i + 1; j <= n; ++j) v *= Rat(j - i, j + i);
  // Equivalent telescoped form; disagreement would mean a broken product.
  Rat alt = Rat(ipow(Int(2), static_cast<unsigned>(n))) / Rat(factorial(static_cast<unsigned>(n)));
  for (int j = 1; j <= n; ++j)
    alt *= rat_pow(Rat(2 * j, 2 * j - 1), n + 1 - j);
  if (v != alt) throw std::logic_error("v_exact: closed forms disagree");
  return v;
}

// Closed form of the alternating simplex integral:
//   E(e_1..e_m) = prod_{i<j} (e_j - e_i)/(e_j + e_i) / prod_k e_k.
// Repeated exponents return 0, matching the vanishing numerator.
inline Rat e_closed(const std::vector<Rat>& e) {
  if (e.empty()) throw std::domain_error("e_closed: empty exponent vector");
  Rat denom = 1;
  for (const Rat& v : e) {
    if (v <= 0) throw std::domain_error("e_closed: exponents must be positive");
    denom *= v;
  }
  Rat prod = 1;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      if (e[i] == e[j]) return Rat(0);
      prod *= (e[j] - e[i]) / (e[j] + e[i]);
    }
  return prod / denom;
}

// Same value by the recursion
//   D(e_1..e_m) = 1/(sum e) * sum_k (-1)^{m-k} D(e_1..e__k..e_m)
// (hat: k-th entry removed), D() = 1. Exponential in m; memoized over
// subsets of the input.
inline Rat d_recursive(const std::vector<Rat>& e) {
  if (e.empty()) throw std::domain_error("d_recursive: empty exponent vector");
  if (e.size() > 24) throw std::invalid_argument("d_recursive: too many exponents for subset recursion");
  for (const Rat& v : e)
    if (v <= 0) throw std::domain_error("d_recursive: exponents must be positive");
  const std::size_t m = e.size();
  std::vector<Rat> memo(static_cast<std::size_t>(1) << m, Rat(0));
  std::vector<bool> known(static_cast<std::size_t>(1) << m, false);
  memo[0] = 1;
  known[0] = true;
  auto solve = [&](auto&& self, std::uint32_t mask) -> const Rat& {
    if (known[mask]) return memo[mask];
    Rat total = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (1u << i)) total += e[i];
    Rat acc = 0;
    int rank = 0;  // position of bit i within the mask, 0-based
    int bits = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (1u << i)) ++bits;
    for (std::size_t i = 0; i < m; ++i) {
      if (!(mask & (1u << i))) continue;
      const Rat& sub = self(self, mask & ~(1u << i));
      if ((bits - 1 - rank) % 2 == 0)
        acc += sub;
      else
        acc -= sub;
      ++rank;
    }
    memo[mask] = acc / total;
    known[mask] = true;
    return memo[mask];
  };
  return solve(solve, (static_cast<std::uint32_t>(1) << m) - 1);
}

// The rearrangement identity behind the recursion's telescoping:
//   sum_k e_k * prod_{i != k} (e_k + e_i)/(e_k - e_i) = sum_k e_k.
// Requires pairwise distinct entries.
inline bool residue_identity_check(const std::vector<Rat>& e) {
  if (e.empty()) throw std::domain_error("residue_identity_check: empty vector");
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i + 1; j < e.size(); ++j)
      if (e[i] == e[j]) throw std::domain_error("residue_identity_check: entries must be distinct");
  Rat lhs = 0, rhs = 0;
  for (std::size_t k = 0; k < e.size(); ++k) {
    Rat term = e[k];
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i == k) continue;
      term *= (e[k] + e[i]) / (e[k] - e[i]);
    }
    lhs += term;
    rhs += e[k];
  }
  return lhs == rhs;
}

struct MonteCarloResult {
  double estimate;
  double std_error;
  std::uint64_t samples;
};

// Monte Carlo estimate of the region volume: the pushforward of Lebesgue
// measure under the coefficient map has density |Vandermonde| on the
// ordered root simplex, so the volume is (4^n/n!) * E[prod_{i<j}(x_j-x_i)]
// over sorted uniforms on [-2,2]^n. Samples are generated in fixed blocks
// with per-block seeds, so the result depends only on (n, samples, seed),
// not on the thread count.
inline MonteCarloResult mc_volume(int n, std::uint64_t samples, std::uint64_t seed, int threads = 0) {
  if (n < 1) throw std::domain_error("mc_volume: n must be positive");
  if (samples == 0) throw std::domain_error("mc_volume: need at least one sample");
  constexpr std::uint64_t kBlock = 1u << 16;
  const std::uint64_t nblocks = (samples + kBlock - 1) / kBlock;
  std::vector<long double> block_sum(nblocks, 0.0L), block_sumsq(nblocks, 0.0L);

  auto run_block = [&](std::uint64_t blk) {
    std::mt19937_64 rng(mix_seed(seed, blk));
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    const std::uint64_t begin = blk * kBlock;
    const std::uint64_t end = std::min(samples, begin + kBlock);
    double x[64];
    long double s = 0.0L, s2 = 0.0L;
    for (std::uint64_t it = begin; it < end; ++it) {
      for (int i = 0; i < n; ++i) x[i] = uni(rng);
      std::sort(x, x + n);
      double prod = 1.0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) prod *= x[j] - x[i];
      s += prod;
      s2 += static_cast<long double>(prod) * prod;
    }
    block_sum[blk] = s;
    block_sumsq[blk] = s2;
  };

  int nthreads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  if (nthreads < 1) nthreads = 1;
  if (static_cast<std::uint64_t>(nthreads) > nblocks) nthreads = static_cast<int>(nblocks);
  if (nthreads == 1) {
    for (std::uint64_t b = 0; b < nblocks; ++b) run_block(b);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t)
      pool.emplace_back([&] {
        for (std::uint64_t b = next.fetch_add(1); b < nblocks; b = next.fetch_add(1)) run_block(b);
      });
    for (auto& th : pool) th.join();
  }

  long double sum = 0.0L, sumsq = 0.0L;
  for (std::uint64_t b = 0; b < nblocks; ++b) {
    sum += block_sum[b];
    sumsq += block_sumsq[b];
  }
  const long double count = static_cast<long double>(samples);
  const long double mean = sum / count;
  long double var = 0.0L;
  if (samples > 1) var = std::max(0.0L, (sumsq - sum * sum / count) / (count - 1.0L));
  double scale = std::pow(4.0, n);
  for (int k = 2; k <= n; ++k) scale /= k;
  return MonteCarloResult{static_cast<double>(mean * scale),
                          static_cast<double>(std::sqrt(var / count) * scale), samples};
}

// Exact cross-check between the volume closed form and the iterated
// integral: v(n) = 4^{n(n+1)/2} * E(1, 2, ..., n).
inline bool volume_integral_consistent(int n) {
  std::vector<Rat> e;
  e.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) e.emplace_back(i);
  Rat scaled = Rat(ipow(Int(2), static_cast<unsigned>(n) * (static_cast<unsigned>(n) + 1))) * e_closed(e);
  return scaled == v_exact(n);
}

}  // namespace unitroots

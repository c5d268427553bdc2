#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>

namespace unitroots {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int ipow(const Int& base, unsigned exp) {
  return boost::multiprecision::pow(base, exp);
}

inline Rat rat_pow(const Rat& base, int exp) {
  if (exp < 0) {
    if (base == 0) throw std::domain_error("rat_pow: zero to a negative power");
    return Rat(1) / rat_pow(base, -exp);
  }
  Rat result(1), b = base;
  unsigned e = static_cast<unsigned>(exp);
  while (e) {
    if (e & 1u) result *= b;
    b *= b;
    e >>= 1u;
  }
  return result;
}

inline Int factorial(unsigned n) {
  Int r = 1;
  for (unsigned k = 2; k <= n; ++k) r *= k;
  return r;
}

inline Int binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  Int r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;  // exact: r is C(n-k+i, i) after each step
  }
  return r;
}

// floor(sqrt(x)) for x >= 0
inline Int isqrt_floor(const Int& x) {
  if (x < 0) throw std::domain_error("isqrt_floor: negative argument");
  return boost::multiprecision::sqrt(x);
}

// floor(x^(1/k)) for x >= 0, k >= 1, by Newton iteration
inline Int ikth_root_floor(const Int& x, unsigned k) {
  if (k == 0) throw std::domain_error("ikth_root_floor: k must be positive");
  if (x < 0) throw std::domain_error("ikth_root_floor: negative argument");
  if (k == 1 || x < 2) return x;
  if (k == 2) return isqrt_floor(x);
  const unsigned bits = boost::multiprecision::msb(x) + 1;
  Int g = Int(1) << (bits / k + 1);
  while (true) {
    Int next = ((k - 1) * g + x / ipow(g, k - 1)) / k;
    if (next >= g) break;
    g = next;
  }
  while (ipow(g, k) > x) --g;
  return g;
}

// floor division; b must be positive
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

struct PrimePower {
  std::int64_t p;
  int e;
};

// q = p^e for a prime p, or nullopt. Trial division; q is limited to the
// range where a full primality check by trial division is cheap.
inline std::optional<PrimePower> prime_power_decompose(std::int64_t q) {
  if (q < 2) return std::nullopt;
  std::int64_t p = 0;
  for (std::int64_t d = 2; d * d <= q; ++d) {
    if (d > 2'000'000) throw std::invalid_argument("prime_power_decompose: q too large");
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return PrimePower{q, 1};
  std::int64_t m = q;
  int e = 0;
  while (m % p == 0) {
    m /= p;
    ++e;
  }
  if (m != 1) return std::nullopt;
  return PrimePower{p, e};
}

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Deterministic per-stream sub-seed derivation.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed ^ (0xA0761D6478BD642Full + stream * 0xE7037ED1A0B428DBull);
  return splitmix64(s);
}

}  // namespace unitroots

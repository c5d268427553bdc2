#pragma once

#include <unitroots/common.hpp>
#include <unitroots/poly.hpp>
#include <unitroots/weil.hpp>

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace unitroots {

// Request for an n-dimensional ordinary abelian variety over F_q with
// exactly m rational points, i.e. a Weil candidate with f(1) = m.
struct OrderQuery {
  std::int64_t q;
  int n;
  Int m;

  OrderQuery(std::int64_t q_, int n_, Int m_) : q(q_), n(n_), m(std::move(m_)) {
    if (!prime_power_decompose(q)) throw std::domain_error("OrderQuery: q must be a prime power >= 2");
    if (n < 2) throw std::domain_error("OrderQuery: n must be at least 2");
    if (m < 1) throw std::domain_error("OrderQuery: m must be positive");
  }
};

// floor(B sqrt(q)) with B = (sqrt(q)-2)/(2(sqrt(q)-1)): the cap on the
// leading coefficient of the greedy construction. Largest k with
// q(2k+2)^2 <= (q+2k)^2, checked exactly.
inline Int leading_coeff_bound(std::int64_t q) {
  if (q < 4) throw std::domain_error("leading_coeff_bound: q must be at least 4");
  Int k = 0;
  while (true) {
    Int next = k + 1;
    Int lhs = Int(q) * (2 * next + 2) * (2 * next + 2);
    Int rhs = (Int(q) + 2 * next) * (Int(q) + 2 * next);
    if (lhs > rhs) return k;
    k = next;
  }
}

// Half-width of the realizable window around q^n + 1:
// (2 floor(B sqrt(q)) + 1) q^{n-1} / 2 for q >= 4, and for q in {2, 3} the
// explicit small-field radii 7*2^n/64 and 7*3^n/54.
inline Rat admissible_radius(std::int64_t q, int n) {
  if (n < 2) throw std::domain_error("admissible_radius: n must be at least 2");
  if (q == 2) return Rat(7 * ipow(Int(2), static_cast<unsigned>(n)), 64);
  if (q == 3) return Rat(7 * ipow(Int(3), static_cast<unsigned>(n)), 54);
  Int b = leading_coeff_bound(q);
  return Rat((2 * b + 1) * ipow(Int(q), static_cast<unsigned>(n - 1)), 2);
}

struct AdmissibleInterval {
  Int lo, hi;
};

inline AdmissibleInterval admissible_interval(std::int64_t q, int n) {
  Rat radius = admissible_radius(q, n);
  Int center = ipow(Int(q), static_cast<unsigned>(n)) + 1;
  Int half = floor_div(numerator(radius), denominator(radius));
  return AdmissibleInterval{center - half, center + half};
}

// |m - (q^n + 1)| <= (2 floor(B sqrt(q)) + 1) q^{n-1} / 2, exactly.
inline bool admissible(const OrderQuery& query) {
  if (query.q < 4) throw std::domain_error("admissible: q must be at least 4");
  Rat radius = admissible_radius(query.q, query.n);
  Int diff = query.m - (ipow(Int(query.q), static_cast<unsigned>(query.n)) + 1);
  return Rat(boost::multiprecision::abs(diff)) <= radius;
}

inline bool admissible_any(const OrderQuery& query) {
  Rat radius = admissible_radius(query.q, query.n);
  Int diff = query.m - (ipow(Int(query.q), static_cast<unsigned>(query.n)) + 1);
  return Rat(boost::multiprecision::abs(diff)) <= radius;
}

inline bool verify_realization(const WeilCandidate& w, const Int& m) {
  if (!is_weil(w)) return false;
  if (boost::multiprecision::gcd(w.a.back(), Int(w.q)) != 1) return false;
  return expand(w)(Int(1)) == m;
}

namespace detail {

// Exact test of |a_1|/q^{1/2} + ... + |a_{n-1}|/q^{(n-1)/2} + |a_n|/(2 q^{n/2}) <= 1,
// i.e. the scaled coefficient vector lies in the diamond, which forces all
// roots onto the circle of radius sqrt(q). Grouped into u + v sqrt(q) <= 0.
inline bool in_scaled_diamond(std::int64_t q, const std::vector<Int>& a) {
  const int n = static_cast<int>(a.size());
  // Multiply through by 2 q^{n/2}: sum_i 2|a_i| q^{(n-i)/2} + |a_n| <= 2 q^{n/2}.
  Int u = boost::multiprecision::abs(a.back());
  Int v = 0;
  for (int i = 1; i < n; ++i) {
    Int term = 2 * boost::multiprecision::abs(a[static_cast<std::size_t>(i - 1)]) *
               ipow(Int(q), static_cast<unsigned>((n - i) / 2));
    if ((n - i) % 2 == 0)
      u += term;
    else
      v += term;
  }
  if (n % 2 == 0)
    u -= 2 * ipow(Int(q), static_cast<unsigned>(n / 2));
  else
    v -= 2 * ipow(Int(q), static_cast<unsigned>((n - 1) / 2));
  return surd_sign(u, v, Int(q)) <= 0;
}

// Exact test of the explicit n = 2 region for b = (a_1/sqrt(q), a_2/q):
// 4 a_2 <= a_1^2 + 8q and 2|a_1| sqrt(q) <= a_2 + 2q.
inline bool in_scaled_v2(std::int64_t q, const Int& a1, const Int& a2) {
  if (4 * a2 > a1 * a1 + 8 * Int(q)) return false;
  return surd_sign(a2 + 2 * Int(q), -2 * boost::multiprecision::abs(a1), Int(q)) >= 0;
}

// Nearest multiple of step to g; ties take the smaller coefficient.
inline Int nearest_coeff(const Int& g, const Int& step) {
  Int fl = floor_div(g, step);
  Int r = g - fl * step;
  return (2 * r > step) ? fl + 1 : fl;
}

inline Int abs_int(const Int& x) { return boost::multiprecision::abs(x); }

}  // namespace detail

// Greedy realization for q >= 4: pick a_i to cancel the residual target in
// the basis q^{n-i} + 1, absorb the remainder into a_n, then repair a
// middle coefficient sharing a factor with q by a +-(q+1) shift. The
// result is certified exactly (diamond for n > 2 and the unrepaired n = 2
// case, the explicit two-dimensional region otherwise).
inline WeilCandidate realize_order(const OrderQuery& query) {
  if (!admissible(query)) throw std::domain_error("realize_order: order is not admissible");
  const std::int64_t q = query.q;
  const int n = query.n;
  Int g = query.m - (ipow(Int(q), static_cast<unsigned>(n)) + 1);
  std::vector<Int> a(static_cast<std::size_t>(n));
  for (int i = 1; i < n; ++i) {
    Int step = ipow(Int(q), static_cast<unsigned>(n - i)) + 1;
    a[static_cast<std::size_t>(i - 1)] = detail::nearest_coeff(g, step);
    g -= a[static_cast<std::size_t>(i - 1)] * step;
    if (2 * detail::abs_int(g) > step) throw std::logic_error("realize_order: residual escaped its bound");
  }
  a[static_cast<std::size_t>(n - 1)] = g;

  const Int b_cap = leading_coeff_bound(q);
  if (detail::abs_int(a[0]) > b_cap) throw std::logic_error("realize_order: leading coefficient too large");
  for (int i = 2; i <= n - 1; ++i)
    if (2 * detail::abs_int(a[static_cast<std::size_t>(i - 1)]) > q)
      throw std::logic_error("realize_order: middle coefficient too large");
  if (2 * detail::abs_int(a.back()) > q + 1)
    throw std::logic_error("realize_order: trailing coefficient too large");

  bool repaired = false;
  if (boost::multiprecision::gcd(a.back(), Int(q)) != 1) {
    repaired = true;
    if (n == 2) {
      a[1] += q + 1;
      a[0] -= 1;
    } else if (a.back() >= 0) {
      a[static_cast<std::size_t>(n - 1)] -= q + 1;
      a[static_cast<std::size_t>(n - 2)] += 1;
    } else {
      a[static_cast<std::size_t>(n - 1)] += q + 1;
      a[static_cast<std::size_t>(n - 2)] -= 1;
    }
    if (boost::multiprecision::gcd(a.back(), Int(q)) != 1)
      throw std::logic_error("realize_order: repair failed to reach a unit");
    if (n == 2) {
      // The upward shift can push a_2 to 3(q+1)/2; the region check below
      // is the real certificate.
      if (2 * detail::abs_int(a[1]) > 3 * (Int(q) + 1))
        throw std::logic_error("realize_order: repaired trailing coefficient too large");
      if (a[0] * a[0] >= q) throw std::logic_error("realize_order: repaired leading coefficient too large");
    } else {
      if (detail::abs_int(a.back()) > q + 1)
        throw std::logic_error("realize_order: repaired trailing coefficient too large");
      if (2 * detail::abs_int(a[static_cast<std::size_t>(n - 2)]) > q + 2)
        throw std::logic_error("realize_order: repaired middle coefficient too large");
    }
  }

  bool certified = (n == 2 && repaired) ? detail::in_scaled_v2(q, a[0], a[1])
                                        : detail::in_scaled_diamond(q, a);
  if (!certified) throw std::logic_error("realize_order: certification failed");
  WeilCandidate w(q, std::move(a));
  if (!verify_realization(w, query.m)) throw std::logic_error("realize_order: verification failed");
  return w;
}

// Realization over the two smallest fields. For n past the small-field
// threshold the greedy walk starts deeper in the coefficient vector (the
// leading coefficients stay zero) and the diamond still certifies the
// repaired result. Below the threshold: deterministic widening search over
// the coefficient box, the middle coefficient pinned by f(1) = m.
inline WeilCandidate realize_order_small_q(const OrderQuery& query) {
  const std::int64_t q = query.q;
  if (q != 2 && q != 3) throw std::domain_error("realize_order_small_q: q must be 2 or 3");
  const int n = query.n;
  if (!admissible_any(query)) throw std::domain_error("realize_order_small_q: order is not admissible");
  Int g = query.m - (ipow(Int(q), static_cast<unsigned>(n)) + 1);

  const int start = (q == 2) ? 5 : 3;
  const int threshold = (q == 2) ? 7 : 5;
  if (n >= threshold) {
    std::vector<Int> a(static_cast<std::size_t>(n));
    for (int i = start; i < n; ++i) {
      Int step = ipow(Int(q), static_cast<unsigned>(n - i)) + 1;
      a[static_cast<std::size_t>(i - 1)] = detail::nearest_coeff(g, step);
      g -= a[static_cast<std::size_t>(i - 1)] * step;
      if (2 * detail::abs_int(g) > step)
        throw std::logic_error("realize_order_small_q: residual escaped its bound");
    }
    a[static_cast<std::size_t>(n - 1)] = g;
    if (detail::abs_int(a[static_cast<std::size_t>(start - 1)]) > 3)
      throw std::logic_error("realize_order_small_q: first greedy coefficient too large");
    for (int i = start + 1; i <= n - 1; ++i)
      if (2 * detail::abs_int(a[static_cast<std::size_t>(i - 1)]) > q)
        throw std::logic_error("realize_order_small_q: middle coefficient too large");
    if (2 * detail::abs_int(a.back()) > q + 1)
      throw std::logic_error("realize_order_small_q: trailing coefficient too large");
    if (boost::multiprecision::gcd(a.back(), Int(q)) != 1) {
      if (a.back() >= 0) {
        a[static_cast<std::size_t>(n - 1)] -= q + 1;
        a[static_cast<std::size_t>(n - 2)] += 1;
      } else {
        a[static_cast<std::size_t>(n - 1)] += q + 1;
        a[static_cast<std::size_t>(n - 2)] -= 1;
      }
    }
    if (!detail::in_scaled_diamond(q, a))
      throw std::logic_error("realize_order_small_q: certification failed");
    WeilCandidate w(q, std::move(a));
    if (!verify_realization(w, query.m)) throw std::logic_error("realize_order_small_q: verification failed");
    return w;
  }

  // Widening search: radius R bounds max |a_i| over the free coordinates;
  // within a radius the order is lexicographic in (0, -1, 1, -2, 2, ...)
  // per coordinate, and only tuples that use the radius are new.
  const std::vector<std::int64_t> bounds = coefficient_bounds(q, n);
  std::int64_t max_radius = 0;
  for (int i = 0; i < n - 1; ++i) max_radius = std::max(max_radius, bounds[static_cast<std::size_t>(i)]);
  std::vector<Int> a(static_cast<std::size_t>(n));
  std::vector<std::int64_t> v(static_cast<std::size_t>(n - 1));
  for (std::int64_t radius = 0; radius <= max_radius; ++radius) {
    bool found = false;
    WeilCandidate result(q, std::vector<Int>{Int(0)});
    auto rec = [&](auto&& self, int i, std::int64_t used_max) -> bool {
      if (found) return true;
      if (i == n - 1) {
        if (used_max != radius) return false;  // seen at a smaller radius
        Int an = g;
        for (int k = 1; k < n; ++k)
          an -= Int(v[static_cast<std::size_t>(k - 1)]) *
                (ipow(Int(q), static_cast<unsigned>(n - k)) + 1);
        if (detail::abs_int(an) > bounds[static_cast<std::size_t>(n - 1)]) return false;
        for (int k = 1; k < n; ++k) a[static_cast<std::size_t>(k - 1)] = v[static_cast<std::size_t>(k - 1)];
        a[static_cast<std::size_t>(n - 1)] = an;
        WeilCandidate w(q, a);
        if (verify_realization(w, query.m)) {
          result = std::move(w);
          found = true;
          return true;
        }
        return false;
      }
      std::int64_t cap = std::min(radius, bounds[static_cast<std::size_t>(i)]);
      for (std::int64_t abs_v = 0; abs_v <= cap; ++abs_v) {
        for (int sgn = 0; sgn < (abs_v == 0 ? 1 : 2); ++sgn) {
          v[static_cast<std::size_t>(i)] = sgn == 0 ? -abs_v : abs_v;
          if (abs_v == 0) v[static_cast<std::size_t>(i)] = 0;
          if (self(self, i + 1, std::max(used_max, abs_v))) return true;
        }
      }
      return false;
    };
    if (rec(rec, 0, 0)) return result;
  }
  throw std::logic_error("realize_order_small_q: no candidate found in the full box");
}

// Dispatch on the field size.
inline WeilCandidate realize_group_order(const OrderQuery& query) {
  return query.q < 4 ? realize_order_small_q(query) : realize_order(query);
}

}  // namespace unitroots

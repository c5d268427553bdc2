#pragma once

#include <unitroots/common.hpp>
#include <unitroots/poly.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace unitroots {

// Candidate coefficient vector (a_1..a_n) for the symmetric polynomial
//   f(x) = (x^{2n} + q^n) + a_1 (x^{2n-1} + q^{n-1} x) + ... + a_n x^n
// over a prime power q = p^e.
struct WeilCandidate {
  std::int64_t q;
  std::int64_t p;
  int e;
  int n;
  std::vector<Int> a;  // a[i] is a_{i+1}

  WeilCandidate(std::int64_t q_, std::vector<Int> a_) : q(q_), a(std::move(a_)) {
    auto pp = prime_power_decompose(q_);
    if (!pp) throw std::domain_error("WeilCandidate: q must be a prime power >= 2");
    if (a.empty()) throw std::domain_error("WeilCandidate: empty coefficient vector");
    p = pp->p;
    e = pp->e;
    n = static_cast<int>(a.size());
  }
};

// Smallest power s of p with q | s^2, i.e. s = p^ceil(e/2).
inline Int middle_prime_power(std::int64_t p, int e) {
  return ipow(Int(p), static_cast<unsigned>((e + 1) / 2));
}

inline Int middle_prime_power(const WeilCandidate& w) { return middle_prime_power(w.p, w.e); }

// Full degree-2n expansion of the candidate, ascending powers of x.
inline IntPolynomial expand(const WeilCandidate& w) {
  const int n = w.n;
  std::vector<Int> c(static_cast<std::size_t>(2 * n) + 1);
  c[static_cast<std::size_t>(2 * n)] = 1;
  c[0] = ipow(Int(w.q), static_cast<unsigned>(n));
  for (int i = 1; i <= n; ++i) c[static_cast<std::size_t>(2 * n - i)] += w.a[static_cast<std::size_t>(i - 1)];
  for (int i = 1; i < n; ++i)
    c[static_cast<std::size_t>(i)] += w.a[static_cast<std::size_t>(i - 1)] * ipow(Int(w.q), static_cast<unsigned>(n - i));
  return IntPolynomial(std::move(c));
}

// Fast repeated membership tests at fixed (q, n). Precomputes the
// triangular change of basis between the a_i and the coefficients h_i of
// the trace polynomial H with x^n H(x + q/x) = f(x), plus the interval
// endpoints +-2 sqrt(q).
class WeilTester {
 public:
  WeilTester(std::int64_t q, int n)
      : q_(q),
        n_(n),
        lo_(SurdValue::minus_two_sqrt(q)),
        hi_(SurdValue::two_sqrt(q)),
        endpoint_poly_(std::vector<Int>{Int(-4) * q, 0, 1}) {
    if (n < 1) throw std::domain_error("WeilTester: n must be positive");
    if (!prime_power_decompose(q)) throw std::domain_error("WeilTester: q must be a prime power >= 2");
    Int r = isqrt_floor(Int(q));
    two_sqrt_q_ = (r * r == q) ? Int(2 * r) : Int(0);
    w_.resize(static_cast<std::size_t>(n) + 1);
    for (int i = 2; i <= n; ++i) {
      auto& row = w_[static_cast<std::size_t>(i)];
      row.resize(static_cast<std::size_t>(i / 2) + 1);
      for (int j = 1; 2 * j <= i; ++j)
        row[static_cast<std::size_t>(j)] =
            binomial(static_cast<unsigned>(n - i + 2 * j), static_cast<unsigned>(j)) *
            ipow(Int(q), static_cast<unsigned>(j));
    }
  }

  std::int64_t q() const { return q_; }
  int n() const { return n_; }

  // Coefficients (h_1..h_n) of H(y) = y^n + h_1 y^{n-1} + ... + h_n.
  std::vector<Int> trace_coeffs(const std::vector<Int>& a) const {
    if (static_cast<int>(a.size()) != n_) throw std::invalid_argument("trace_coeffs: wrong arity");
    std::vector<Int> h(static_cast<std::size_t>(n_) + 1);
    h[0] = 1;
    for (int i = 1; i <= n_; ++i) {
      Int v = a[static_cast<std::size_t>(i - 1)];
      for (int j = 1; 2 * j <= i; ++j)
        v -= h[static_cast<std::size_t>(i - 2 * j)] * w_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      h[static_cast<std::size_t>(i)] = std::move(v);
    }
    h.erase(h.begin());
    return h;
  }

  IntPolynomial trace_polynomial(const std::vector<Int>& a) const {
    std::vector<Int> h = trace_coeffs(a);
    std::vector<Int> c(static_cast<std::size_t>(n_) + 1);
    c[static_cast<std::size_t>(n_)] = 1;
    for (int i = 1; i <= n_; ++i) c[static_cast<std::size_t>(n_ - i)] = std::move(h[static_cast<std::size_t>(i - 1)]);
    return IntPolynomial(std::move(c));
  }

  // True iff all 2n roots of the expanded candidate have magnitude
  // sqrt(q); equivalently all roots of H are real and lie in
  // [-2 sqrt(q), 2 sqrt(q)]. Exact.
  bool is_weil(const std::vector<Int>& a) const {
    IntPolynomial H = trace_polynomial(a);
    // A monic H that is positive at hi and sign-compatible at lo is
    // necessary for all roots to lie in the closed interval.
    int s_hi = sign_at_surd(H, hi_);
    if (s_hi < 0) return false;
    int s_lo = sign_at_surd(H, lo_);
    if ((n_ % 2 == 0 ? s_lo : -s_lo) < 0) return false;
    if (s_lo != 0 && s_hi != 0) {
      // Common case: try a single Sturm chain; fall back when H has
      // repeated roots.
      std::vector<IntPolynomial> chain;
      try {
        chain = sturm_chain(H);
      } catch (const std::invalid_argument&) {
        return count_roots_slow(H) == n_;
      }
      return sign_variations(chain, lo_) - sign_variations(chain, hi_) == n_;
    }
    return count_roots_slow(H) == n_;
  }

 private:
  // Weighted count of roots of H inside [lo, hi]: square-free part per
  // multiplicity, endpoint roots split off exactly, interior roots by
  // Sturm.
  int count_roots_slow(const IntPolynomial& H) const {
    int total = 0;
    for (const auto& [factor, mult] : squarefree_decompose(H)) {
      IntPolynomial F = factor;
      int roots = 0;
      if (two_sqrt_q_ != 0) {
        for (const Int& t : {two_sqrt_q_, Int(-two_sqrt_q_)}) {
          if (F.degree() > 0 && F(t) == 0) {
            F = divide_exact(F, IntPolynomial(std::vector<Int>{-t, 1}));
            ++roots;
          }
        }
      } else if (F.degree() >= 2) {
        // q is not a square, so y^2 - 4q is irreducible over the
        // rationals and the endpoints come in pairs.
        IntPolynomial g = poly_gcd(F, endpoint_poly_);
        if (g.degree() == 2) {
          F = divide_exact(F, g);
          roots += 2;
        }
      }
      if (F.degree() > 0) roots += sturm_count(F, lo_, hi_);
      total += mult * roots;
    }
    return total;
  }

  std::int64_t q_;
  int n_;
  std::vector<std::vector<Int>> w_;
  Int two_sqrt_q_;  // nonzero iff q is a perfect square
  SurdValue lo_, hi_;
  IntPolynomial endpoint_poly_;  // y^2 - 4q
};

inline IntPolynomial trace_poly(const WeilCandidate& w) {
  return WeilTester(w.q, w.n).trace_polynomial(w.a);
}

inline bool is_weil(const WeilCandidate& w) { return WeilTester(w.q, w.n).is_weil(w.a); }

// Ordinary iff the middle coefficient a_n is prime to q.
inline bool is_ordinary(const WeilCandidate& w) {
  if (!is_weil(w)) throw std::domain_error("is_ordinary: candidate is not a Weil polynomial");
  return boost::multiprecision::gcd(w.a.back(), Int(w.q)) == 1;
}

// Necessary condition for a non-ordinary Weil candidate: p^ceil(e/2)
// divides the middle coefficient.
inline bool passes_nonordinary_filter(const WeilCandidate& w) {
  return w.a.back() % middle_prime_power(w) == 0;
}

struct NewtonPolygon {
  // Lower convex hull vertices of {(i, v_p(c_i)/e)} over nonzero
  // coefficients c_i of the expansion; slopes strictly increase.
  std::vector<std::pair<int, Rat>> vertices;
};

inline NewtonPolygon newton_polygon(const WeilCandidate& w) {
  IntPolynomial f = expand(w);
  std::vector<std::pair<int, Rat>> pts;
  for (int i = 0; i <= f.degree(); ++i) {
    const Int& c = f[i];
    if (c == 0) continue;
    Int m = boost::multiprecision::abs(c);
    long v = 0;
    while (m % w.p == 0) {
      m /= w.p;
      ++v;
    }
    pts.emplace_back(i, Rat(Int(v), Int(w.e)));
  }
  // Lower hull, strict left turns only; collinear middle points drop out.
  std::vector<std::pair<int, Rat>> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      const auto& [x0, y0] = hull[hull.size() - 2];
      const auto& [x1, y1] = hull.back();
      Rat cross = Rat(x1 - x0) * (pt.second - y0) - (y1 - y0) * Rat(pt.first - x0);
      if (cross <= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(pt);
  }
  return NewtonPolygon{std::move(hull)};
}

// Multiply by x^2 + q: adjoins the supersingular elliptic factor, mapping a
// dimension-n Weil candidate to a dimension-(n+1) one.
inline WeilCandidate ss_product(const WeilCandidate& w) {
  if (!is_weil(w)) throw std::domain_error("ss_product: candidate is not a Weil polynomial");
  IntPolynomial f = expand(w) * IntPolynomial(std::vector<Int>{Int(w.q), 0, 1});
  const int m = w.n + 1;
  std::vector<Int> a(static_cast<std::size_t>(m));
  for (int i = 1; i <= m; ++i) a[static_cast<std::size_t>(i - 1)] = f[2 * m - i];
  WeilCandidate out(w.q, std::move(a));
  if (expand(out) != f) throw std::logic_error("ss_product: product lost the symmetric shape");
  return out;
}

// Box bounds |a_i| <= C(2n, i) q^{i/2} implied by all roots having
// magnitude sqrt(q).
inline std::vector<std::int64_t> coefficient_bounds(std::int64_t q, int n) {
  std::vector<std::int64_t> bounds(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    Int b2 = binomial(static_cast<unsigned>(2 * n), static_cast<unsigned>(i));
    b2 = b2 * b2 * ipow(Int(q), static_cast<unsigned>(i));
    bounds[static_cast<std::size_t>(i - 1)] = isqrt_floor(b2).convert_to<std::int64_t>();
  }
  return bounds;
}

}  // namespace unitroots

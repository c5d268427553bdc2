#pragma once

#include <unitroots/common.hpp>

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace unitroots {

// Closed rational interval [lo, hi] certified to contain an exact real
// value. All operations here are outward-rounded in exact rational
// arithmetic, so enclosures compose soundly.
struct RatInterval {
  Rat lo, hi;

  RatInterval() : lo(0), hi(0) {}
  RatInterval(Rat v) : lo(v), hi(std::move(v)) {}
  RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw std::domain_error("RatInterval: lo > hi");
  }

  Rat width() const { return hi - lo; }
  Rat midpoint() const { return (lo + hi) / 2; }
  bool contains(const Rat& v) const { return lo <= v && v <= hi; }
  bool is_positive() const { return lo > 0; }

  double lo_double() const { return lo.convert_to<double>(); }
  double hi_double() const { return hi.convert_to<double>(); }
};

inline RatInterval operator+(const RatInterval& x, const RatInterval& y) {
  return RatInterval(x.lo + y.lo, x.hi + y.hi);
}

inline RatInterval operator-(const RatInterval& x, const RatInterval& y) {
  return RatInterval(x.lo - y.hi, x.hi - y.lo);
}

inline RatInterval operator-(const RatInterval& x) { return RatInterval(-x.hi, -x.lo); }

inline RatInterval operator*(const RatInterval& x, const RatInterval& y) {
  Rat a = x.lo * y.lo, b = x.lo * y.hi, c = x.hi * y.lo, d = x.hi * y.hi;
  return RatInterval(std::min(std::min(a, b), std::min(c, d)),
                     std::max(std::max(a, b), std::max(c, d)));
}

inline RatInterval operator*(const Rat& s, const RatInterval& x) { return RatInterval(s) * x; }

inline RatInterval reciprocal(const RatInterval& x) {
  if (x.lo <= 0 && x.hi >= 0) throw std::domain_error("reciprocal: interval contains zero");
  return RatInterval(Rat(1) / x.hi, Rat(1) / x.lo);
}

inline RatInterval operator/(const RatInterval& x, const RatInterval& y) {
  return x * reciprocal(y);
}

// Image of t^k over t in x, tight at the endpoints.
inline RatInterval interval_pow(const RatInterval& x, unsigned k) {
  auto pw = [](Rat b, unsigned e) {
    Rat r(1);
    for (unsigned i = 0; i < e; ++i) r *= b;
    return r;
  };
  if (k == 0) return RatInterval(Rat(1));
  if (k % 2 == 1 || x.lo >= 0) return RatInterval(pw(x.lo, k), pw(x.hi, k));
  if (x.hi <= 0) return RatInterval(pw(x.hi, k), pw(x.lo, k));
  return RatInterval(Rat(0), std::max(pw(x.lo, k), pw(x.hi, k)));
}

inline RatInterval interval_abs(const RatInterval& x) {
  if (x.lo >= 0) return x;
  if (x.hi <= 0) return -x;
  return RatInterval(Rat(0), std::max(rat_abs(x.lo), x.hi));
}

// Round a rational onto the grid (1/10^digits) Z, downward or upward.
// Used to keep series arithmetic from dragging huge denominators around;
// rounding an endpoint outward preserves the enclosure.
inline Rat round_down(const Rat& x, int digits) {
  Int scale = ipow(Int(10), static_cast<unsigned>(digits));
  return Rat(floor_div(numerator(x) * scale, denominator(x)), scale);
}

inline Rat round_up(const Rat& x, int digits) {
  Int scale = ipow(Int(10), static_cast<unsigned>(digits));
  return Rat(-floor_div(-numerator(x) * scale, denominator(x)), scale);
}

inline RatInterval round_outward(const RatInterval& x, int digits) {
  return RatInterval(round_down(x.lo, digits), round_up(x.hi, digits));
}

// Enclosure of sqrt(x) of width at most 10^-digits, via integer square
// roots of a scaled numerator.
inline RatInterval sqrt_enclosure(const Rat& x, int digits) {
  if (x < 0) throw std::domain_error("sqrt_enclosure: negative argument");
  if (x == 0) return RatInterval(Rat(0));
  Int scale = ipow(Int(10), static_cast<unsigned>(digits));
  const Int &num = numerator(x), &den = denominator(x);
  // sqrt(x) = sqrt(num*den) / den; bracket sqrt(num*den*scale^2) between
  // consecutive integers.
  Int t = num * den * scale * scale;
  Int r = isqrt_floor(t);
  Rat lo(r, den * scale);
  Rat hi(r + (r * r == t ? 0 : 1), den * scale);
  return RatInterval(std::move(lo), std::move(hi));
}

// Enclosure of x^(1/k), same scheme with integer k-th roots.
inline RatInterval kth_root_enclosure(const Rat& x, unsigned k, int digits) {
  if (k == 0) throw std::domain_error("kth_root_enclosure: k must be positive");
  if (x < 0) throw std::domain_error("kth_root_enclosure: negative argument");
  if (x == 0) return RatInterval(Rat(0));
  Int scale = ipow(Int(10), static_cast<unsigned>(digits));
  const Int &num = numerator(x), &den = denominator(x);
  // x^(1/k) = (num*den^{k-1})^(1/k) / den.
  Int t = num * ipow(den, k - 1) * ipow(scale, k);
  Int r = ikth_root_floor(t, k);
  Rat lo(r, den * scale);
  Rat hi(r + (ipow(r, k) == t ? 0 : 1), den * scale);
  return RatInterval(std::move(lo), std::move(hi));
}

// Enclosure of exp(x) for rational x with |x| <= 64. Taylor series with an
// explicit geometric tail bound: once x/(K+2) <= 1/2, the tail after term
// K+1 is at most twice term K+1.
inline RatInterval exp_enclosure(const Rat& x, int digits) {
  if (x < 0) {
    RatInterval pos = exp_enclosure(-x, digits + 2);
    return reciprocal(pos);
  }
  if (x > 64) throw std::domain_error("exp_enclosure: argument too large");
  const Rat eps = Rat(1, ipow(Int(10), static_cast<unsigned>(digits) + 2));
  Rat xr = round_up(x, digits + 4);
  Rat xr_lo = round_down(x, digits + 4);
  // Sum with the rounded-up argument for the upper end and rounded-down
  // for the lower end; exp is increasing so both directions stay sound.
  auto partial = [&](const Rat& y, Rat& tail_term) {
    Rat sum(1), term(1);
    unsigned k = 0;
    while (true) {
      ++k;
      term = round_up(term * y / Int(k), digits + 6);
      sum += term;
      if (2 * y <= Int(k + 2) && term <= eps) break;
      if (k > 4000) throw std::logic_error("exp_enclosure: series failed to converge");
    }
    tail_term = term;
    return sum;
  };
  Rat tail_hi(0), tail_lo(0);
  Rat hi_sum = partial(xr, tail_hi);
  Rat lo_sum = partial(xr_lo, tail_lo);
  // Lower end: truncation only ever under-approximates for y >= 0, but the
  // per-term upward rounding can overshoot by k*grid; subtract it.
  Rat slack = Rat(4000, ipow(Int(10), static_cast<unsigned>(digits) + 6));
  return RatInterval(lo_sum - slack, hi_sum + 2 * tail_hi + slack);
}

inline RatInterval exp_enclosure(const RatInterval& x, int digits) {
  RatInterval lo = exp_enclosure(x.lo, digits);
  RatInterval hi = exp_enclosure(x.hi, digits);
  return RatInterval(lo.lo, hi.hi);
}

namespace detail {
// atanh series for log on [1, 2]: log m = 2 * sum u^{2k+1}/(2k+1),
// u = (m-1)/(m+1) in [0, 1/3]; tail bounded by a geometric series.
inline RatInterval log_mantissa(const Rat& m, int digits) {
  const Rat eps = Rat(1, ipow(Int(10), static_cast<unsigned>(digits) + 2));
  Rat u = (m - 1) / (m + 1);
  Rat u_lo = round_down(u, digits + 6), u_hi = round_up(u, digits + 6);
  auto series = [&](const Rat& v, bool upper) {
    Rat sum = v, pw = v, v2 = upper ? round_up(v * v, digits + 8) : round_down(v * v, digits + 8);
    unsigned k = 0;
    Rat term;
    do {
      ++k;
      pw = upper ? round_up(pw * v2, digits + 8) : round_down(pw * v2, digits + 8);
      term = pw / Int(2 * k + 1);
      sum += term;
      if (k > 2000) throw std::logic_error("log_mantissa: series failed to converge");
    } while (term > eps);
    // Remaining tail < term * v2 / (1 - v2) <= term for v2 <= 1/2.
    return std::pair<Rat, Rat>(sum, term);
  };
  auto [lo_sum, lo_tail] = series(u_lo, false);
  auto [hi_sum, hi_tail] = series(u_hi, true);
  (void)lo_tail;
  return RatInterval(2 * lo_sum, 2 * (hi_sum + hi_tail));
}
}  // namespace detail

// Enclosure of log(x) for rational x > 0: reduce x = m * 2^t with
// m in [1, 2], then log x = log m + t log 2. The argument is rounded
// outward first so series arithmetic stays cheap for ugly rationals.
inline RatInterval log_enclosure(const Rat& x, int digits) {
  if (x <= 0) throw std::domain_error("log_enclosure: argument must be positive");
  Rat x_lo = round_down(x, digits + 8), x_hi = round_up(x, digits + 8);
  if (x_lo <= 0) x_lo = x;  // x smaller than the rounding grid
  auto one_sided = [&](const Rat& v) {
    Rat m = v;
    long t = 0;
    while (m > 2) {
      m /= 2;
      ++t;
    }
    while (m < 1) {
      m *= 2;
      --t;
    }
    RatInterval lm = detail::log_mantissa(m, digits);
    if (t == 0) return lm;
    RatInterval l2 = detail::log_mantissa(Rat(2), digits + 4);
    return lm + RatInterval(Rat(t)) * l2;
  };
  RatInterval lo = one_sided(x_lo), hi = one_sided(x_hi);
  return RatInterval(lo.lo, hi.hi);
}

inline RatInterval log_enclosure(const RatInterval& x, int digits) {
  RatInterval lo = log_enclosure(x.lo, digits);
  RatInterval hi = log_enclosure(x.hi, digits);
  return RatInterval(lo.lo, hi.hi);
}

// Enclosure of base^expo for base > 0 via exp(expo * log base).
inline RatInterval pow_enclosure(const RatInterval& base, const RatInterval& expo, int digits) {
  if (!base.is_positive()) throw std::domain_error("pow_enclosure: base must be positive");
  RatInterval l = log_enclosure(base, digits + 4);
  RatInterval prod = round_outward(l * expo, digits + 6);
  return exp_enclosure(prod, digits);
}

// Enclosure of q^{j/4} for integers q >= 1, j >= 0. Exponents that are
// multiples of 4 come out exact.
inline RatInterval quarter_power_enclosure(std::int64_t q, long j, int digits) {
  if (q < 1) throw std::domain_error("quarter_power_enclosure: q must be >= 1");
  if (j < 0) throw std::domain_error("quarter_power_enclosure: negative exponent");
  long whole = j / 4, rem = j % 4;
  Rat exact(ipow(Int(q), static_cast<unsigned>(whole)));
  if (rem == 0) return RatInterval(exact);
  RatInterval frac = (rem == 2) ? sqrt_enclosure(Rat(q), digits)
                                : kth_root_enclosure(Rat(ipow(Int(q), static_cast<unsigned>(rem))), 4, digits);
  return RatInterval(exact) * frac;
}

// q^{j/2} as a quarter power.
inline RatInterval half_power_enclosure(std::int64_t q, long j, int digits) {
  return quarter_power_enclosure(q, 2 * j, digits);
}

}  // namespace unitroots

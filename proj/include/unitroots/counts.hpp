#pragma once

#include <unitroots/common.hpp>
#include <unitroots/enclosure.hpp>
#include <unitroots/lattice.hpp>
#include <unitroots/volume.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace unitroots {

// phi(x)/x: density of residues prime to x.
inline Rat coprime_density(const Int& x) {
  if (x < 1) throw std::domain_error("coprime_density: x must be positive");
  Rat r = 1;
  Int m = x;
  for (Int d = 2; d * d <= m; ++d) {
    if (m % d != 0) continue;
    r *= Rat(d - 1, d);
    while (m % d == 0) m /= d;
  }
  if (m > 1) r *= Rat(m - 1, m);
  return r;
}

// Number of ordinary isogeny classes of n-dimensional abelian varieties
// over F_q: Weil candidates with middle coefficient prime to q, counted as
// #(box) - #(box with p | a_n).
inline Int count_ordinary(std::int64_t q, int n, const EnumOptions& opts = {}) {
  WeilPointCounts c = enumerate_weil_counts(q, n, opts);
  return c.all - c.div_p;
}

struct ConstantEntry {
  const char* name;
  const char* formula;
  RatInterval value;
};

// Certified enclosures for the constants of the point-count error bounds;
// every interval is at most 1e-9 wide.
struct ConstantsTable {
  RatInterval c1, c2, c3, c4, c5, c6, c7, c8;

  static const ConstantsTable& get() {
    static const ConstantsTable table = build();
    return table;
  }

  std::vector<ConstantEntry> entries() const {
    return {
        {"c1", "sqrt(3)/6", c1},
        {"c2", "2*exp(3/2)*(1+sqrt(2))*sqrt(3)*(1+sqrt(3)/162)^3/3", c2},
        {"c3", "2*exp(3/2)*sqrt(3)*(1+sqrt(3)/162)^3/3", c3},
        {"c4", "exp(-3/2)", c4},
        {"c5", "2+sqrt(2)", c5},
        {"c6", "sqrt(3)/8", c6},
        {"c7", "(1+sqrt(3)/162)^3", c7},
        {"c8", "9*sqrt(2)/16", c8},
    };
  }

 private:
  static ConstantsTable build() {
    const int digits = 14;
    ConstantsTable t;
    RatInterval sqrt2 = sqrt_enclosure(Rat(2), digits);
    RatInterval sqrt3 = sqrt_enclosure(Rat(3), digits);
    RatInterval exp32 = exp_enclosure(Rat(3, 2), digits);
    t.c1 = Rat(1, 6) * sqrt3;
    t.c7 = interval_pow(RatInterval(Rat(1)) + Rat(1, 162) * sqrt3, 3);
    t.c3 = Rat(2, 3) * (exp32 * sqrt3 * t.c7);
    t.c2 = (RatInterval(Rat(1)) + sqrt2) * t.c3;
    t.c4 = exp_enclosure(Rat(-3, 2), digits);
    t.c5 = RatInterval(Rat(2)) + sqrt2;
    t.c6 = Rat(1, 8) * sqrt3;
    t.c8 = Rat(9, 16) * sqrt2;
    const Rat max_width(1, ipow(Int(10), 9));
    for (const ConstantEntry& entry : t.entries())
      if (entry.value.width() > max_width)
        throw std::logic_error(std::string("ConstantsTable: enclosure too wide for ") + entry.name);
    return t;
  }
};

// Row bound for the Jacobian of the root-to-coefficient map on the ordered
// simplex: n * C(n-1, i-1) * 2^{i-1} <= 3^{n-1} * sqrt(n) for every row i.
// Exact comparison of squares.
inline bool psi_row_bound_holds(int n) {
  if (n < 1) throw std::domain_error("psi_row_bound_holds: n must be positive");
  const Int rhs2 = ipow(Int(3), static_cast<unsigned>(2 * n - 2)) * n;
  for (int i = 1; i <= n; ++i) {
    Int lhs = Int(n) * binomial(static_cast<unsigned>(n - 1), static_cast<unsigned>(i - 1)) *
              ipow(Int(2), static_cast<unsigned>(i - 1));
    if (lhs * lhs > rhs2) return false;
  }
  return true;
}

// Row-sum bound for the substitution y = x + 1/x written in the monomial
// basis: sum_{j <= (n-1)/2} C(2j, j) <= (3*sqrt(3)/8) * 2^n / sqrt(n).
// Exactly: 64 * n * S^2 <= 27 * 4^n.
inline bool chi_row_bound_holds(int n) {
  if (n < 1) throw std::domain_error("chi_row_bound_holds: n must be positive");
  Int s = 0;
  for (int j = 0; 2 * j <= n - 1; ++j)
    s += binomial(static_cast<unsigned>(2 * j), static_cast<unsigned>(j));
  return 64 * Int(n) * s * s <= 27 * ipow(Int(4), static_cast<unsigned>(n));
}

// Number of nonzero integers m with |m| <= q^{n/2}/n and gcd(m, q) = 1;
// each such m is the trace excess of some ordinary class.
inline Int lower_bound_m_count(std::int64_t q, int n) {
  auto pp = prime_power_decompose(q);
  if (!pp) throw std::domain_error("lower_bound_m_count: q must be a prime power >= 2");
  if (n < 1) throw std::domain_error("lower_bound_m_count: n must be positive");
  Int cap = isqrt_floor(floor_div(ipow(Int(q), static_cast<unsigned>(n)), Int(n) * n));
  return 2 * (cap - cap / pp->p);
}

// |lambda(q, n) - v_n q^{n(n+1)/4}| <= 6^{n^2} c1^n c3 (n(n+1)/(n-1)!) q^{(n(n+1)-2)/4}.
// The check uses the supremum of the left enclosure against the infimum of
// the right, so "holds" certifies the true inequality.
struct LatticeBoundReport {
  std::int64_t q;
  int n;
  Int count;
  RatInterval main;  // v_n q^{n(n+1)/4}
  RatInterval rhs;
  bool holds;
};

inline LatticeBoundReport verify_count_bound(std::int64_t q, int n, const EnumOptions& opts = {}) {
  const int digits = 24;
  LatticeBoundReport rep;
  rep.q = q;
  rep.n = n;
  rep.count = count_weil_points(q, n, Int(1), opts);
  const ConstantsTable& ct = ConstantsTable::get();
  rep.main = Rat(v_exact(n)) * quarter_power_enclosure(q, static_cast<long>(n) * (n + 1), digits);
  Rat scale = Rat(ipow(Int(6), static_cast<unsigned>(n) * static_cast<unsigned>(n)) * Int(n) * (n + 1),
                  factorial(static_cast<unsigned>(n - 1)));
  rep.rhs = scale * (interval_pow(ct.c1, static_cast<unsigned>(n)) * ct.c3 *
                     quarter_power_enclosure(q, static_cast<long>(n) * (n + 1) - 2, digits));
  Rat dev = std::max(rat_abs(Rat(rep.count) - rep.main.lo), rat_abs(Rat(rep.count) - rep.main.hi));
  rep.holds = dev <= rep.rhs.lo;
  return rep;
}

// Two-sided count bounds for ordinary classes. "main_holds" checks
//   |#O(q,n) - v_n r(q) q^{n(n+1)/4}| <= 6^{n^2} c1^n c2 (n(n+1)/(n-1)!) q^{(n+2)(n-1)/4},
// "upper/lower_holds" sandwich the non-ordinary residue count lambda_s
// between #O(q, n-1) and (v_n + 6^{n^2} c1^n c3 n(n+1)/(n-1)!) q^{(n+2)(n-1)/4}.
struct CountReport {
  std::int64_t q;
  int n;
  Int lambda;          // Weil candidates in the box
  Int lambda_p;        // middle coefficient divisible by p
  Int lambda_s;        // middle coefficient divisible by p^ceil(e/2)
  Int ordinary;        // lambda - lambda_p
  Int ordinary_prev;   // #O(q, n-1)
  RatInterval prediction;
  RatInterval error_bound;
  RatInterval residue_upper;
  bool main_holds;
  bool lower_holds;
  bool upper_holds;
};

inline CountReport make_count_report(std::int64_t q, int n, const WeilPointCounts& counts,
                                     const Int& ordinary_prev) {
  if (n < 2) throw std::domain_error("make_count_report: n must be at least 2");
  const int digits = 24;
  const ConstantsTable& ct = ConstantsTable::get();
  CountReport rep;
  rep.q = q;
  rep.n = n;
  rep.lambda = counts.all;
  rep.lambda_p = counts.div_p;
  rep.lambda_s = counts.div_s;
  rep.ordinary = counts.all - counts.div_p;
  rep.ordinary_prev = ordinary_prev;

  rep.prediction = Rat(v_exact(n)) * Rat(coprime_density(Int(q))) *
                   quarter_power_enclosure(q, static_cast<long>(n) * (n + 1), digits);
  Rat scale = Rat(ipow(Int(6), static_cast<unsigned>(n) * static_cast<unsigned>(n)) * Int(n) * (n + 1),
                  factorial(static_cast<unsigned>(n - 1)));
  RatInterval qpow = quarter_power_enclosure(q, static_cast<long>(n + 2) * (n - 1), digits);
  rep.error_bound = scale * (interval_pow(ct.c1, static_cast<unsigned>(n)) * ct.c2 * qpow);
  rep.residue_upper =
      (RatInterval(Rat(v_exact(n))) + scale * (interval_pow(ct.c1, static_cast<unsigned>(n)) * ct.c3)) *
      qpow;

  Rat dev = std::max(rat_abs(Rat(rep.ordinary) - rep.prediction.lo),
                     rat_abs(Rat(rep.ordinary) - rep.prediction.hi));
  rep.main_holds = dev <= rep.error_bound.lo;
  rep.lower_holds = Rat(rep.ordinary_prev) <= Rat(rep.lambda_s);
  rep.upper_holds = Rat(rep.lambda_s) <= rep.residue_upper.lo;
  return rep;
}

inline CountReport ordinary_count_report(std::int64_t q, int n, const EnumOptions& opts = {}) {
  WeilPointCounts counts = enumerate_weil_counts(q, n, opts);
  Int prev = count_ordinary(q, n - 1, opts);
  return make_count_report(q, n, counts, prev);
}

// Explicit all-q lower bound:
//   #O(q, n) > c4 (c5 n)^{-2 log 2/log q} (2^n/n!) (r(q) q^{n/2} - n) q^{n(n-1)/4}.
struct LowerBoundReport {
  std::int64_t q;
  int n;
  Int ordinary;
  RatInterval rhs;
  bool holds;
};

inline LowerBoundReport make_lower_bound_report(std::int64_t q, int n, const Int& ordinary) {
  const int digits = 20;
  const ConstantsTable& ct = ConstantsTable::get();
  LowerBoundReport rep;
  rep.q = q;
  rep.n = n;
  rep.ordinary = ordinary;
  RatInterval log2 = log_enclosure(Rat(2), digits);
  RatInterval logq = log_enclosure(Rat(q), digits);
  RatInterval expo = RatInterval(Rat(-2)) * log2 / logq;
  RatInterval envelope = pow_enclosure(RatInterval(Rat(n)) * ct.c5, expo, digits);
  RatInterval linear =
      Rat(coprime_density(Int(q))) * half_power_enclosure(q, n, digits) - RatInterval(Rat(n));
  rep.rhs = ct.c4 * envelope *
            (Rat(ipow(Int(2), static_cast<unsigned>(n)), factorial(static_cast<unsigned>(n))) *
             (linear * quarter_power_enclosure(q, static_cast<long>(n) * (n - 1), digits)));
  rep.holds = Rat(rep.ordinary) > rep.rhs.hi;
  return rep;
}

inline LowerBoundReport ordinary_lower_bound_report(std::int64_t q, int n, const EnumOptions& opts = {}) {
  return make_lower_bound_report(q, n, count_ordinary(q, n, opts));
}

// Asymptotic behaviour along perfect squares q at fixed n: the relative
// deviation of #O from the main term stays below the error-envelope ratio,
// and that ratio is non-increasing in q (it scales as 1/(r(q) sqrt(q))).
struct TrendRow {
  std::int64_t q;
  Int ordinary;
  Rat main;           // exact: v_n r(q) q^{n(n+1)/4} for square q
  Rat deviation;      // |ordinary/main - 1|
  RatInterval envelope;  // error bound / main
  bool within;
};

inline std::vector<TrendRow> ordinary_trend(const std::vector<std::int64_t>& qs, int n,
                                            const EnumOptions& opts = {}) {
  if (n < 2) throw std::domain_error("ordinary_trend: n must be at least 2");
  std::vector<TrendRow> rows;
  const ConstantsTable& ct = ConstantsTable::get();
  for (std::int64_t q : qs) {
    Int root = isqrt_floor(Int(q));
    if (root * root != q) throw std::domain_error("ordinary_trend: q must be a perfect square");
    TrendRow row;
    row.q = q;
    row.ordinary = count_ordinary(q, n, opts);
    // q^{n(n+1)/4} = root^{n(n+1)/2}; n(n+1)/2 is an integer.
    Rat qpow(ipow(root, static_cast<unsigned>(n) * (n + 1) / 2));
    row.main = v_exact(n) * coprime_density(Int(q)) * qpow;
    row.deviation = rat_abs(Rat(row.ordinary) / row.main - 1);
    Rat scale = Rat(ipow(Int(6), static_cast<unsigned>(n) * static_cast<unsigned>(n)) * Int(n) * (n + 1),
                    factorial(static_cast<unsigned>(n - 1)));
    // (n+2)(n-1) is even, so for square q the error q-power is exact.
    Rat err_qpow(ipow(root, static_cast<unsigned>((n + 2) * (n - 1) / 2)));
    RatInterval error_bound =
        scale * (interval_pow(ct.c1, static_cast<unsigned>(n)) * ct.c2 * RatInterval(err_qpow));
    row.envelope = error_bound * reciprocal(RatInterval(row.main));
    row.within = row.deviation <= row.envelope.lo;
    rows.push_back(row);
  }
  return rows;
}

// Envelope ratio comparison without enclosures: envelope(q) proportional to
// 1/(r(q) sqrt(q)), so non-increasing means r(q') sqrt(q') >= r(q) sqrt(q).
inline bool trend_envelope_monotone(const std::vector<std::int64_t>& qs) {
  for (std::size_t i = 0; i + 1 < qs.size(); ++i) {
    Int r0 = isqrt_floor(Int(qs[i])), r1 = isqrt_floor(Int(qs[i + 1]));
    if (r0 * r0 != qs[i] || r1 * r1 != qs[i + 1])
      throw std::domain_error("trend_envelope_monotone: q must be a perfect square");
    if (coprime_density(Int(qs[i + 1])) * r1 < coprime_density(Int(qs[i])) * r0) return false;
  }
  return true;
}

}  // namespace unitroots

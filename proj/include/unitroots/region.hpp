#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace unitroots {

using RealVector = std::vector<double>;

namespace detail {
inline double binom_d(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}
}  // namespace detail

// Signed elementary symmetric functions of the entries: coefficients
// (c_1..c_n) of prod (y - r_i) = y^n + c_1 y^{n-1} + ... + c_n.
inline RealVector psi(const RealVector& r) {
  const std::size_t n = r.size();
  RealVector c(n + 1, 0.0);
  c[0] = 1.0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = k + 1; i-- > 0;) c[i + 1] -= r[k] * c[i];
  c.erase(c.begin());
  return c;
}

// Triangular substitution y = x + 1/x: maps monic h with coefficients c to
// the palindromic g with x^n h(x + 1/x) = g(x), returning (b_1..b_n).
inline RealVector chi(const RealVector& c) {
  const int n = static_cast<int>(c.size());
  RealVector b(c.size(), 0.0);
  for (int k = 1; k <= n; ++k) {
    double v = 0.0;
    for (int i = k % 2 == 0 ? 0 : 1; i <= k; i += 2) {
      double ci = i == 0 ? 1.0 : c[static_cast<std::size_t>(i - 1)];
      v += ci * detail::binom_d(n - i, (k - i) / 2);
    }
    b[static_cast<std::size_t>(k - 1)] = v;
  }
  return b;
}

// Inverse of chi: recovers c from b by back-substitution.
inline RealVector chi_inverse(const RealVector& b) {
  const int n = static_cast<int>(b.size());
  RealVector c(b.size(), 0.0);
  for (int k = 1; k <= n; ++k) {
    double v = b[static_cast<std::size_t>(k - 1)];
    for (int i = k % 2 == 0 ? 0 : 1; i < k; i += 2) {
      double ci = i == 0 ? 1.0 : c[static_cast<std::size_t>(i - 1)];
      v -= ci * detail::binom_d(n - i, (k - i) / 2);
    }
    c[static_cast<std::size_t>(k - 1)] = v;
  }
  return c;
}

inline RealVector phi(const RealVector& r) { return chi(psi(r)); }

// Face embedding of the ordered simplex {-2 <= x_1 <= ... <= x_{n-1} <= 2}
// into the n-dimensional one: i = 0 prepends -2, i = n appends 2, and
// 0 < i < n duplicates the i-th coordinate.
inline RealVector delta(int i, const RealVector& x) {
  const int n = static_cast<int>(x.size()) + 1;
  if (i < 0 || i > n) throw std::domain_error("delta: face index out of range");
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] < -2.0 || x[k] > 2.0) throw std::domain_error("delta: coordinate outside [-2, 2]");
    if (k + 1 < x.size() && x[k] > x[k + 1]) throw std::domain_error("delta: coordinates not sorted");
  }
  RealVector out;
  out.reserve(x.size() + 1);
  if (i == 0) out.push_back(-2.0);
  for (int k = 0; k < static_cast<int>(x.size()); ++k) {
    out.push_back(x[static_cast<std::size_t>(k)]);
    if (k + 1 == i) out.push_back(x[static_cast<std::size_t>(k)]);
  }
  if (i == n) out.push_back(2.0);
  return out;
}

// |b_n|/2 + sum_{i<n} |b_i| <= 1. Every such b gives a palindromic
// polynomial with all roots on the unit circle.
inline bool in_diamond(const RealVector& b) {
  if (b.empty()) throw std::domain_error("in_diamond: empty vector");
  double s = std::abs(b.back()) / 2.0;
  for (std::size_t i = 0; i + 1 < b.size(); ++i) s += std::abs(b[i]);
  return s <= 1.0;
}

// Explicit description of the n = 2 region: between the line
// b_2 = 2|b_1| - 2 and the parabola b_2 = b_1^2/4 + 2.
inline bool in_v2_explicit(const RealVector& b) {
  if (b.size() != 2) throw std::domain_error("in_v2_explicit: expected dimension 2");
  return b[1] >= 2.0 * std::abs(b[0]) - 2.0 && b[1] <= b[0] * b[0] / 4.0 + 2.0;
}

// Power sums p_1..p_n of the roots from the signed elementary symmetric
// values via Newton's identities.
inline RealVector newton_power_sums(const RealVector& c) {
  const int n = static_cast<int>(c.size());
  RealVector p(c.size(), 0.0);
  for (int i = 1; i <= n; ++i) {
    double v = -static_cast<double>(i) * c[static_cast<std::size_t>(i - 1)];
    for (int j = 1; j < i; ++j)
      v -= c[static_cast<std::size_t>(j - 1)] * p[static_cast<std::size_t>(i - j - 1)];
    p[static_cast<std::size_t>(i - 1)] = v;
  }
  return p;
}

// Roots of the monic polynomial y^n + c_1 y^{n-1} + ... + c_n via the
// companion matrix.
inline std::vector<std::complex<double>> companion_roots(const RealVector& c) {
  const int n = static_cast<int>(c.size());
  if (n == 0) return {};
  if (n == 1) return {std::complex<double>(-c[0], 0.0)};
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) m(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) m(i, n - 1) = -c[static_cast<std::size_t>(n - 1 - i)];
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
  std::vector<std::complex<double>> roots(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) roots[static_cast<std::size_t>(i)] = solver.eigenvalues()[i];
  return roots;
}

enum class RegionVerdict { inside, outside, boundary_ambiguous };

// Three-way membership test for the coefficient region: pull b back to the
// trace-coefficient vector c, compute the roots, and demand clear margins.
// "inside" needs all roots real within tol, strictly inside (-2, 2) by tol,
// and pairwise separated by more than tol; "outside" needs a clear
// violation; anything marginal is reported as ambiguous.
inline RegionVerdict in_region_numeric(const RealVector& b, double tol = 1e-9) {
  if (b.empty()) throw std::domain_error("in_region_numeric: empty vector");
  if (!(tol > 0)) throw std::domain_error("in_region_numeric: tolerance must be positive");
  const auto roots = companion_roots(chi_inverse(b));
  bool clear_inside = true;
  bool clear_outside = false;
  for (const auto& z : roots) {
    if (std::abs(z.imag()) > tol || std::abs(z.real()) > 2.0 + tol) clear_outside = true;
    if (std::abs(z.imag()) > tol || z.real() <= -2.0 + tol || z.real() >= 2.0 - tol)
      clear_inside = false;
  }
  for (std::size_t i = 0; i < roots.size() && clear_inside; ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (std::abs(roots[i] - roots[j]) <= tol) {
        clear_inside = false;
        break;
      }
  if (clear_inside) return RegionVerdict::inside;
  if (clear_outside) return RegionVerdict::outside;
  return RegionVerdict::boundary_ambiguous;
}

}  // namespace unitroots

#pragma once

#include <unitroots/common.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace unitroots {

// Dense univariate polynomial over arbitrary-precision integers.
// coeffs()[i] is the coefficient of y^i; the top stored coefficient of a
// nonzero polynomial is nonzero, and the zero polynomial stores nothing.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Int> coeffs) : c_(std::move(coeffs)) { normalize(); }

  static IntPolynomial constant(Int v) {
    std::vector<Int> c;
    if (v != 0) c.push_back(std::move(v));
    return IntPolynomial(std::move(c), tag{});
  }

  // v * y^deg
  static IntPolynomial monomial(int deg, Int v) {
    if (v == 0) return IntPolynomial();
    std::vector<Int> c(static_cast<std::size_t>(deg) + 1);
    c.back() = std::move(v);
    return IntPolynomial(std::move(c), tag{});
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const std::vector<Int>& coeffs() const { return c_; }

  const Int& operator[](int i) const {
    static const Int zero(0);
    if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
    return c_[static_cast<std::size_t>(i)];
  }

  const Int& leading() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return c_.back();
  }

  IntPolynomial derivative() const {
    if (c_.size() <= 1) return IntPolynomial();
    std::vector<Int> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = Int(i) * c_[i];
    return IntPolynomial(std::move(d), tag{});
  }

  // gcd of the coefficients, non-negative; 0 only for the zero polynomial
  Int content() const {
    Int g = 0;
    for (const Int& v : c_) {
      g = boost::multiprecision::gcd(g, v);
      if (g == 1) break;
    }
    return g;
  }

  // p / content(p); sign pattern of the coefficients is preserved
  IntPolynomial primitive_part() const {
    if (is_zero()) return IntPolynomial();
    Int g = content();
    if (g == 1) return *this;
    std::vector<Int> d(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) d[i] = c_[i] / g;
    return IntPolynomial(std::move(d), tag{});
  }

  Int operator()(const Int& x) const {
    Int acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  Rat operator()(const Rat& x) const {
    Rat acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + Rat(c_[i]);
    return acc;
  }

  double eval_double(double x) const {
    double acc = 0.0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i].convert_to<double>();
    return acc;
  }

  // p * y^k
  IntPolynomial shifted(int k) const {
    if (is_zero() || k == 0) return *this;
    std::vector<Int> d(c_.size() + static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < c_.size(); ++i) d[i + static_cast<std::size_t>(k)] = c_[i];
    return IntPolynomial(std::move(d), tag{});
  }

  bool operator==(const IntPolynomial& o) const = default;

  friend IntPolynomial operator-(const IntPolynomial& p) {
    std::vector<Int> d(p.c_.size());
    for (std::size_t i = 0; i < p.c_.size(); ++i) d[i] = -p.c_[i];
    return IntPolynomial(std::move(d), tag{});
  }

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<Int> d(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = a[static_cast<int>(i)] + b[static_cast<int>(i)];
    return IntPolynomial(std::move(d));
  }

  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<Int> d(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = a[static_cast<int>(i)] - b[static_cast<int>(i)];
    return IntPolynomial(std::move(d));
  }

  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return IntPolynomial();
    std::vector<Int> d(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) d[i + j] += a.c_[i] * b.c_[j];
    return IntPolynomial(std::move(d), tag{});
  }

  friend IntPolynomial operator*(const Int& s, const IntPolynomial& p) {
    if (s == 0 || p.is_zero()) return IntPolynomial();
    std::vector<Int> d(p.c_.size());
    for (std::size_t i = 0; i < p.c_.size(); ++i) d[i] = s * p.c_[i];
    return IntPolynomial(std::move(d), tag{});
  }

 private:
  struct tag {};
  IntPolynomial(std::vector<Int> coeffs, tag) : c_(std::move(coeffs)) { normalize(); }

  void normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Int> c_;
};

// Exact quotient a / b; throws std::logic_error when b does not divide a.
inline IntPolynomial divide_exact(const IntPolynomial& a, const IntPolynomial& b) {
  if (b.is_zero()) throw std::domain_error("divide_exact: zero divisor");
  if (a.is_zero()) return IntPolynomial();
  int da = a.degree(), db = b.degree();
  if (da < db) throw std::logic_error("divide_exact: not divisible");
  std::vector<Int> rem(a.coeffs());
  std::vector<Int> quot(static_cast<std::size_t>(da - db) + 1);
  const Int& lb = b.leading();
  for (int k = da - db; k >= 0; --k) {
    Int& top = rem[static_cast<std::size_t>(k + db)];
    if (top == 0) continue;
    if (top % lb != 0) throw std::logic_error("divide_exact: not divisible");
    Int t = top / lb;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= t * b[j];
    quot[static_cast<std::size_t>(k)] = std::move(t);
  }
  for (const Int& v : rem)
    if (v != 0) throw std::logic_error("divide_exact: not divisible");
  return IntPolynomial(std::move(quot));
}

// Pseudo-remainder r with s*a = u*b + r, deg r < deg b, for a POSITIVE
// integer s (a power of |leading(b)|). The positive multiplier keeps the
// sign of r usable in Sturm sequences.
inline IntPolynomial prem_positive(IntPolynomial a, const IntPolynomial& b) {
  if (b.is_zero()) throw std::domain_error("prem_positive: zero divisor");
  const int db = b.degree();
  const Int lb = b.leading();
  long steps = 0;
  std::vector<Int> r(a.coeffs());
  while (static_cast<int>(r.size()) - 1 >= db && !r.empty()) {
    int dr = static_cast<int>(r.size()) - 1;
    Int lr = r.back();
    // r := lb*r - lr*y^(dr-db)*b; top term cancels
    for (int i = 0; i < dr; ++i) r[static_cast<std::size_t>(i)] *= lb;
    for (int j = 0; j < db; ++j) r[static_cast<std::size_t>(dr - db + j)] -= lr * b[j];
    r.pop_back();
    while (!r.empty() && r.back() == 0) r.pop_back();
    ++steps;
  }
  IntPolynomial out{std::vector<Int>(r)};
  if (lb < 0 && (steps % 2) == 1) out = -out;
  return out;
}

// Primitive gcd with positive leading coefficient (primitive PRS).
inline IntPolynomial poly_gcd(IntPolynomial a, IntPolynomial b) {
  a = a.primitive_part();
  b = b.primitive_part();
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    IntPolynomial r = prem_positive(a, b);
    a = std::move(b);
    b = r.primitive_part();
  }
  if (!a.is_zero() && a.leading() < 0) a = -a;
  return a;
}

// Yun's square-free decomposition: returns (factor, multiplicity) pairs with
// strictly increasing multiplicities whose product (with multiplicity)
// equals p up to a scalar. Factors are primitive with positive leading
// coefficient. A constant p yields the empty list.
inline std::vector<std::pair<IntPolynomial, int>> squarefree_decompose(const IntPolynomial& p) {
  if (p.is_zero()) throw std::domain_error("squarefree_decompose: zero polynomial");
  std::vector<std::pair<IntPolynomial, int>> out;
  IntPolynomial P = p.primitive_part();
  if (P.leading() < 0) P = -P;
  if (P.degree() == 0) return out;
  IntPolynomial dP = P.derivative();
  IntPolynomial g = poly_gcd(P, dP);
  if (g.degree() == 0) {
    out.emplace_back(P, 1);
    return out;
  }
  IntPolynomial b = divide_exact(P, g);
  IntPolynomial c = divide_exact(dP, g);
  IntPolynomial d = c - b.derivative();
  int mult = 1;
  while (b.degree() > 0) {
    IntPolynomial f = poly_gcd(b, d);
    if (f.degree() > 0) out.emplace_back(f, mult);
    b = divide_exact(b, f);
    c = divide_exact(d, f);
    d = c - b.derivative();
    ++mult;
  }
  return out;
}

// Exact real number (a + b*sqrt(q)) / c with integers a, b, c > 0, q > 0.
struct SurdValue {
  Int a, b, c, q;

  SurdValue(Int a_, Int b_, Int c_, Int q_)
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), q(std::move(q_)) {
    if (c <= 0) throw std::domain_error("SurdValue: denominator must be positive");
    if (q <= 0) throw std::domain_error("SurdValue: radicand must be positive");
  }

  static SurdValue integer(Int v, Int q = 1) { return SurdValue(std::move(v), 0, 1, std::move(q)); }
  static SurdValue two_sqrt(Int q) { return SurdValue(0, 2, 1, std::move(q)); }
  static SurdValue minus_two_sqrt(Int q) { return SurdValue(0, -2, 1, std::move(q)); }

  int sign() const;

  double to_double() const {
    return (a.convert_to<double>() + b.convert_to<double>() * std::sqrt(q.convert_to<double>())) /
           c.convert_to<double>();
  }
};

// Sign of u + v*sqrt(q), exactly.
inline int surd_sign(const Int& u, const Int& v, const Int& q) {
  const int su = u.sign(), sv = v.sign();
  if (sv == 0) return su;
  if (su == 0) return sv;
  if (su == sv) return su;
  // Opposite signs: compare u^2 against v^2*q.
  Int lhs = u * u, rhs = v * v * q;
  if (lhs == rhs) return 0;
  return lhs > rhs ? su : sv;
}

inline int SurdValue::sign() const { return surd_sign(a, b, q); }

// Negative/zero/positive as x is less than / equal to / greater than y.
// The radicands must agree unless one side is rational.
inline int compare(const SurdValue& x, const SurdValue& y) {
  if (x.b != 0 && y.b != 0 && x.q != y.q)
    throw std::invalid_argument("compare: mismatched radicands");
  const Int& q = (x.b != 0) ? x.q : y.q;
  Int u = x.a * y.c - y.a * x.c;
  Int v = x.b * y.c - y.b * x.c;
  return surd_sign(u, v, q);
}

// Exact sign of p at a surd point. Evaluates p(x)*c^deg(p) as an integer
// combination u + v*sqrt(q) by Horner recursion.
inline int sign_at_surd(const IntPolynomial& p, const SurdValue& x) {
  if (p.is_zero()) return 0;
  const int d = p.degree();
  Int u = p[d], v = 0, cpow = 1;
  for (int i = d - 1; i >= 0; --i) {
    cpow *= x.c;
    Int nu = u * x.a + v * x.b * x.q + p[i] * cpow;
    Int nv = u * x.b + v * x.a;
    u = std::move(nu);
    v = std::move(nv);
  }
  return surd_sign(u, v, x.q);
}

// Sturm chain of a square-free polynomial: p, p', then negated
// positive-multiplier pseudo-remainders, content-stripped. A vanishing
// remainder before the chain bottoms out means p was not square-free.
inline std::vector<IntPolynomial> sturm_chain(const IntPolynomial& p) {
  if (p.is_zero()) throw std::domain_error("sturm_chain: zero polynomial");
  std::vector<IntPolynomial> chain;
  chain.push_back(p.primitive_part());
  if (p.degree() == 0) return chain;
  chain.push_back(p.derivative().primitive_part());
  while (chain.back().degree() > 0) {
    IntPolynomial r = prem_positive(chain[chain.size() - 2], chain.back());
    if (r.is_zero()) throw std::invalid_argument("sturm_chain: polynomial is not square-free");
    chain.push_back((-r).primitive_part());
  }
  return chain;
}

inline int sign_variations(const std::vector<IntPolynomial>& chain, const SurdValue& x) {
  int var = 0, prev = 0;
  for (const IntPolynomial& f : chain) {
    int s = sign_at_surd(f, x);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

// Number of real roots of a square-free p in the open interval (lo, hi).
// The endpoints must not be roots.
inline int sturm_count(const IntPolynomial& p, const SurdValue& lo, const SurdValue& hi) {
  if (p.is_zero()) throw std::domain_error("sturm_count: zero polynomial");
  if (compare(lo, hi) >= 0) throw std::domain_error("sturm_count: empty interval");
  if (sign_at_surd(p, lo) == 0 || sign_at_surd(p, hi) == 0)
    throw std::invalid_argument("sturm_count: endpoint is a root");
  if (p.degree() == 0) return 0;
  std::vector<IntPolynomial> chain = sturm_chain(p);
  return sign_variations(chain, lo) - sign_variations(chain, hi);
}

}  // namespace unitroots

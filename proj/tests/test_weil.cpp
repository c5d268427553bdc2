#include <catch2/catch_amalgamated.hpp>

#include <unitroots/region.hpp>
#include <unitroots/weil.hpp>

#include <cmath>
#include <complex>
#include <vector>

using namespace unitroots;

namespace {

WeilCandidate cand(std::int64_t q, std::initializer_list<long> a) {
  std::vector<Int> v;
  for (long x : a) v.emplace_back(x);
  return WeilCandidate(q, std::move(v));
}

IntPolynomial poly(std::initializer_list<long> ascending) {
  std::vector<Int> c;
  for (long v : ascending) c.emplace_back(v);
  return IntPolynomial(std::move(c));
}

// Largest distance of any root of the full expansion from the circle of
// radius sqrt(q), via the companion matrix.
double circle_margin(const WeilCandidate& w) {
  IntPolynomial f = expand(w);
  RealVector monic(static_cast<std::size_t>(f.degree()));
  for (int i = 0; i < f.degree(); ++i) monic[static_cast<std::size_t>(i)] = f[f.degree() - 1 - i].convert_to<double>();
  double r = std::sqrt(static_cast<double>(w.q));
  double margin = 0.0;
  for (const auto& z : companion_roots(monic)) margin = std::max(margin, std::abs(std::abs(z) - r));
  return margin;
}

}  // namespace

TEST_CASE("candidate validation") {
  CHECK_THROWS_AS(cand(6, {1}), std::domain_error);
  CHECK_THROWS_AS(cand(1, {1}), std::domain_error);
  CHECK_THROWS_AS(WeilCandidate(2, std::vector<Int>{}), std::domain_error);
  WeilCandidate w = cand(8, {0, 0, 1});
  CHECK(w.p == 2);
  CHECK(w.e == 3);
  CHECK(w.n == 3);
  CHECK(middle_prime_power(w) == 4);
  CHECK(middle_prime_power(3, 1) == 3);
  CHECK(middle_prime_power(2, 4) == 4);
}

TEST_CASE("expansion") {
  CHECK(expand(cand(4, {-1, 5})) == poly({16, -4, 5, -1, 1}));
  CHECK(expand(cand(2, {-1})) == poly({2, -1, 1}));
  CHECK(expand(cand(3, {0, 0})) == poly({9, 0, 0, 0, 1}));
}

TEST_CASE("expansion satisfies the functional equation") {
  // x^{2n} f(q/x) = q^n f(x), i.e. c_i = q^{n-i} c_{2n-i} for i <= n.
  for (std::int64_t q : {2, 3, 4, 5, 9}) {
    for (long a1 = -3; a1 <= 3; ++a1) {
      for (long a2 = -5; a2 <= 5; ++a2) {
        WeilCandidate w = cand(q, {a1, a2});
        IntPolynomial f = expand(w);
        REQUIRE(f.degree() == 4);
        for (int i = 0; i <= 2; ++i)
          CHECK(f[i] == ipow(Int(q), static_cast<unsigned>(2 - i)) * f[4 - i]);
      }
    }
  }
}

TEST_CASE("trace coefficients") {
  WeilTester t42(4, 2);
  CHECK(t42.trace_coeffs({Int(-1), Int(5)}) == std::vector<Int>{Int(-1), Int(-3)});
  CHECK(t42.trace_polynomial({Int(-1), Int(5)}) == poly({-3, -1, 1}));
  CHECK(trace_poly(cand(3, {0, 0})) == poly({-6, 0, 1}));
  CHECK(trace_poly(cand(2, {-1})) == poly({-1, 1}));
  CHECK_THROWS_AS(t42.trace_coeffs({Int(1)}), std::invalid_argument);
}

TEST_CASE("trace polynomial substitution reproduces the expansion") {
  // x^n H(x + q/x) = f(x), expanded via sum_i h_i x^i (x^2 + q)^{n-i}.
  for (std::int64_t q : {2, 4, 5}) {
    for (long a1 = -3; a1 <= 3; a1 += 2) {
      for (long a2 = -6; a2 <= 6; a2 += 3) {
        for (long a3 = -4; a3 <= 4; a3 += 4) {
          WeilCandidate w = cand(q, {a1, a2, a3});
          std::vector<Int> h = WeilTester(q, 3).trace_coeffs(w.a);
          h.insert(h.begin(), Int(1));
          IntPolynomial base = poly({0});
          IntPolynomial x2q({std::vector<Int>{Int(q), Int(0), Int(1)}});
          IntPolynomial acc;
          for (int i = 0; i <= 3; ++i) {
            IntPolynomial term = IntPolynomial::constant(h[static_cast<std::size_t>(i)]).shifted(i);
            for (int k = 0; k < 3 - i; ++k) term = term * x2q;
            acc = acc + term;
          }
          CHECK(acc == expand(w));
        }
      }
    }
  }
}

TEST_CASE("unit root detection on fixed cases") {
  CHECK(is_weil(cand(4, {-1, 5})));
  CHECK_FALSE(is_weil(cand(4, {5})));
  CHECK(is_weil(cand(2, {-1})));
  CHECK_FALSE(is_weil(cand(2, {3})));
  // Boundary double roots at +-2 sqrt(q) for square q.
  CHECK(is_weil(cand(4, {-4})));
  CHECK(is_weil(cand(4, {4})));
  CHECK(is_weil(cand(9, {-6})));
  CHECK(is_weil(cand(4, {-3})));
  CHECK(is_weil(cand(4, {0, -8})));  // (x^2-4)(x^2+... ) boundary mix
  CHECK(is_weil(cand(2, {0})));
  CHECK_FALSE(is_weil(cand(9, {7})));
}

TEST_CASE("unit root detection agrees with floating root magnitudes") {
  for (std::int64_t q : {2, 3, 4, 5}) {
    for (int n : {1, 2}) {
      auto bounds = coefficient_bounds(q, n);
      std::vector<Int> a(static_cast<std::size_t>(n));
      WeilTester tester(q, n);
      auto run = [&](auto&& self, int i) -> void {
        if (i == n) {
          WeilCandidate w(q, a);
          bool exact = tester.is_weil(w.a);
          double margin = circle_margin(w);
          // A fourfold root on the circle perturbs companion eigenvalues
          // by eps^{1/4}, so the float margin can reach a few 1e-4.
          if (exact)
            CHECK(margin < 1e-3);
          else
            CHECK(margin > 1e-9);
          return;
        }
        for (std::int64_t v = -bounds[static_cast<std::size_t>(i)]; v <= bounds[static_cast<std::size_t>(i)]; ++v) {
          a[static_cast<std::size_t>(i)] = v;
          self(self, i + 1);
        }
      };
      run(run, 0);
    }
  }
}

TEST_CASE("ordinarity") {
  CHECK(is_ordinary(cand(2, {-1})));
  CHECK_FALSE(is_ordinary(cand(2, {0})));
  CHECK(is_ordinary(cand(4, {-1, 5})));
  CHECK_FALSE(is_ordinary(cand(4, {0, -8})));
  CHECK_THROWS_AS(is_ordinary(cand(4, {5})), std::domain_error);
}

TEST_CASE("non-ordinary residue filter") {
  CHECK(passes_nonordinary_filter(cand(2, {0})));
  CHECK_FALSE(passes_nonordinary_filter(cand(2, {-1})));
  // q = 8: s = 4, so a_n = 2 is divisible by p but not by s.
  CHECK_FALSE(passes_nonordinary_filter(cand(8, {0, 0, 2})));
  CHECK(passes_nonordinary_filter(cand(8, {0, 0, 4})));
}

TEST_CASE("valuation polygon") {
  NewtonPolygon np = newton_polygon(cand(2, {-1}));
  REQUIRE(np.vertices.size() == 3);
  CHECK(np.vertices[0] == std::pair{0, Rat(1)});
  CHECK(np.vertices[1] == std::pair{1, Rat(0)});
  CHECK(np.vertices[2] == std::pair{2, Rat(0)});

  NewtonPolygon flat = newton_polygon(cand(2, {0}));
  REQUIRE(flat.vertices.size() == 2);
  CHECK(flat.vertices[0] == std::pair{0, Rat(1)});
  CHECK(flat.vertices[1] == std::pair{2, Rat(0)});

  // Collinear interior points are dropped: over q = 4 the middle point of
  // x^2 - 2x + 4 sits on the chord.
  NewtonPolygon collinear = newton_polygon(cand(4, {-2}));
  REQUIRE(collinear.vertices.size() == 2);
  CHECK(collinear.vertices[0] == std::pair{0, Rat(1)});
  CHECK(collinear.vertices[1] == std::pair{2, Rat(0)});

  // q = 8 (e = 3) produces fractional heights at genuine vertices.
  NewtonPolygon third = newton_polygon(cand(8, {2}));
  REQUIRE(third.vertices.size() == 3);
  CHECK(third.vertices[1] == std::pair{1, Rat(1, 3)});
}

TEST_CASE("attaching the supersingular quadratic factor") {
  WeilCandidate image = ss_product(cand(2, {0}));
  CHECK(image.n == 2);
  CHECK(image.a == std::vector<Int>{Int(0), Int(4)});
  CHECK(expand(image) == expand(cand(2, {0})) * expand(cand(2, {0})));

  WeilCandidate im2 = ss_product(cand(4, {-1, 5}));
  CHECK(im2.n == 3);
  CHECK(expand(im2) == expand(cand(4, {-1, 5})) * poly({4, 0, 1}));
  CHECK(passes_nonordinary_filter(im2));
  CHECK(is_weil(im2));
}

TEST_CASE("coefficient box bounds") {
  CHECK(coefficient_bounds(2, 1) == std::vector<std::int64_t>{2});
  CHECK(coefficient_bounds(4, 1) == std::vector<std::int64_t>{4});
  CHECK(coefficient_bounds(4, 2) == std::vector<std::int64_t>{8, 24});
  CHECK(coefficient_bounds(2, 2) == std::vector<std::int64_t>{5, 12});
}

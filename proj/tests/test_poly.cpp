#include <catch2/catch_amalgamated.hpp>

#include <unitroots/poly.hpp>

#include <random>
#include <vector>

using namespace unitroots;

namespace {

IntPolynomial make(std::initializer_list<long> ascending) {
  std::vector<Int> c;
  for (long v : ascending) c.emplace_back(v);
  return IntPolynomial(std::move(c));
}

}  // namespace

TEST_CASE("polynomial basics") {
  IntPolynomial zero;
  CHECK(zero.is_zero());
  CHECK(zero.degree() == -1);
  CHECK(zero[0] == 0);
  CHECK(zero[17] == 0);

  IntPolynomial p = make({2, 0, 0, 5});
  CHECK(p.degree() == 3);
  CHECK(p[0] == 2);
  CHECK(p[3] == 5);
  CHECK(p.leading() == 5);

  CHECK(IntPolynomial(std::vector<Int>{Int(3), Int(0), Int(0)}).degree() == 0);
  CHECK(IntPolynomial::constant(Int(0)).is_zero());
  CHECK(IntPolynomial::monomial(4, Int(-2)) == make({0, 0, 0, 0, -2}));
}

TEST_CASE("polynomial arithmetic and evaluation") {
  IntPolynomial a = make({-1, 1});  // x - 1
  IntPolynomial b = make({1, 1});   // x + 1
  CHECK(a * b == make({-1, 0, 1}));
  CHECK(a + b == make({0, 2}));
  CHECK(a - b == make({-2}));
  CHECK(Int(3) * a == make({-3, 3}));
  CHECK(-a == make({1, -1}));
  CHECK(a.shifted(2) == make({0, 0, -1, 1}));

  IntPolynomial p = make({2, -3, 1});  // (x-1)(x-2)
  CHECK(p(Int(5)) == 12);
  CHECK(p(Rat(1, 2)) == Rat(3, 4));
  CHECK(p.eval_double(1.0) == 0.0);
  CHECK(p.derivative() == make({-3, 2}));
  CHECK(IntPolynomial::constant(Int(7)).derivative().is_zero());
}

TEST_CASE("content and primitive part keep the sign of the leading term") {
  IntPolynomial p = make({-6, 0, -9});
  CHECK(p.content() == 3);
  CHECK(p.primitive_part() == make({-2, 0, -3}));
  CHECK(make({4, 8}).primitive_part() == make({1, 2}));
  CHECK(IntPolynomial().content() == 0);
}

TEST_CASE("exact division") {
  IntPolynomial num = make({-1, 0, 1});
  CHECK(divide_exact(num, make({-1, 1})) == make({1, 1}));
  CHECK(divide_exact(IntPolynomial(), make({1, 1})).is_zero());
  CHECK_THROWS_AS(divide_exact(num, IntPolynomial()), std::domain_error);
  CHECK_THROWS_AS(divide_exact(make({1, 0, 1}), make({-1, 1})), std::logic_error);
  CHECK_THROWS_AS(divide_exact(make({1}), make({0, 1})), std::logic_error);
}

TEST_CASE("pseudo-remainder has a positive multiplier") {
  // prem of x^2 + 1 by 2x - 1 scales by lc^2 = 4: 4(x^2+1) = (2x+1)(2x-1) + 5.
  CHECK(prem_positive(make({1, 0, 1}), make({-1, 2})) == make({5}));
  // Negative leading divisor, one step: result sign must match the true
  // remainder direction used by the Sturm chain.
  IntPolynomial r = prem_positive(make({0, 0, 1}), make({1, -1}));
  CHECK(r == make({1}));
  CHECK_THROWS_AS(prem_positive(make({1}), IntPolynomial()), std::domain_error);
}

TEST_CASE("gcd over the integers") {
  IntPolynomial g = poly_gcd(make({-2, 1}) * make({1, 1}) * make({1, 1}),
                             make({1, 1}) * make({5, 3}));
  CHECK(g == make({1, 1}));
  CHECK(poly_gcd(make({-1, 0, 1}), make({2, 0, 1})).degree() == 0);
  CHECK(poly_gcd(IntPolynomial(), make({3, -6})) == make({-1, 2}));
  // Leading coefficient is normalized positive.
  CHECK(poly_gcd(make({1, -1}) * make({1, -1}), make({1, -1})).leading() > 0);
}

TEST_CASE("square-free decomposition") {
  IntPolynomial f1 = make({-1, 1});          // x - 1
  IntPolynomial f2 = make({2, 1});           // x + 2
  IntPolynomial f3 = make({1, 0, 1});        // x^2 + 1
  IntPolynomial p = f1 * f2 * f2 * f3 * f3 * f3;
  auto parts = squarefree_decompose(p);
  REQUIRE(parts.size() == 3);
  CHECK(parts[0] == std::pair{f1, 1});
  CHECK(parts[1] == std::pair{f2, 2});
  CHECK(parts[2] == std::pair{f3, 3});

  CHECK(squarefree_decompose(make({7})).empty());
  CHECK_THROWS_AS(squarefree_decompose(IntPolynomial()), std::domain_error);

  auto single = squarefree_decompose(make({0, 0, 1}));
  REQUIRE(single.size() == 1);
  CHECK(single[0] == std::pair{make({0, 1}), 2});
}

TEST_CASE("square-free decomposition reconstructs random products") {
  std::mt19937_64 rng(20260825);
  std::uniform_int_distribution<int> root(-5, 5), mult(1, 3), scale(1, 4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> roots{root(rng), root(rng), root(rng)};
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    IntPolynomial p = IntPolynomial::constant(Int(scale(rng)));
    for (int r : roots) {
      int m = mult(rng);
      for (int k = 0; k < m; ++k) p = p * make({-r, 1});
    }
    if (p.degree() < 1) continue;
    IntPolynomial rebuilt = IntPolynomial::constant(Int(1));
    int total_degree = 0;
    for (const auto& [factor, m] : squarefree_decompose(p)) {
      CHECK(poly_gcd(factor, factor.derivative()).degree() == 0);
      for (int k = 0; k < m; ++k) rebuilt = rebuilt * factor;
      total_degree += m * factor.degree();
    }
    CHECK(total_degree == p.degree());
    CHECK(rebuilt == p.primitive_part());
  }
}

TEST_CASE("surd values") {
  CHECK(SurdValue::two_sqrt(Int(2)).sign() > 0);
  CHECK(SurdValue::minus_two_sqrt(Int(3)).sign() < 0);
  CHECK(SurdValue::integer(Int(0)).sign() == 0);
  CHECK(SurdValue(Int(3), Int(-2), Int(1), Int(2)).sign() > 0);   // 3 - 2 sqrt(2)
  CHECK(SurdValue(Int(1), Int(-1), Int(1), Int(2)).sign() < 0);   // 1 - sqrt(2)
  CHECK(SurdValue(Int(-2), Int(1), Int(1), Int(4)).sign() == 0);  // -2 + sqrt(4)
  CHECK_THROWS_AS(SurdValue(Int(1), Int(1), Int(0), Int(2)), std::domain_error);
  CHECK_THROWS_AS(SurdValue(Int(1), Int(1), Int(1), Int(0)), std::domain_error);

  CHECK(SurdValue::two_sqrt(Int(2)).to_double() == Catch::Approx(2.8284271247461903));
}

TEST_CASE("surd sign") {
  CHECK(surd_sign(Int(2), Int(-1), Int(3)) > 0);
  CHECK(surd_sign(Int(-2), Int(1), Int(5)) > 0);
  CHECK(surd_sign(Int(2), Int(-1), Int(4)) == 0);
  CHECK(surd_sign(Int(-1), Int(0), Int(7)) < 0);
  CHECK(surd_sign(Int(0), Int(0), Int(7)) == 0);
}

TEST_CASE("surd comparison") {
  SurdValue lhs = SurdValue::two_sqrt(Int(2));             // 2 sqrt(2)
  SurdValue rhs(Int(3), Int(0), Int(1), Int(2));           // 3
  CHECK(compare(lhs, rhs) < 0);
  CHECK(compare(rhs, lhs) > 0);
  CHECK(compare(lhs, lhs) == 0);
  // Mixed radicands are fine when one side is rational.
  CHECK(compare(SurdValue::integer(Int(1), Int(5)), SurdValue::two_sqrt(Int(2))) < 0);
  CHECK_THROWS_AS(compare(SurdValue::two_sqrt(Int(2)), SurdValue::two_sqrt(Int(3))),
                  std::invalid_argument);
}

TEST_CASE("polynomial sign at surd points") {
  IntPolynomial p = make({-8, 0, 1});  // y^2 - 8
  CHECK(sign_at_surd(p, SurdValue::two_sqrt(Int(2))) == 0);
  CHECK(sign_at_surd(p, SurdValue::minus_two_sqrt(Int(2))) == 0);
  CHECK(sign_at_surd(p, SurdValue::integer(Int(0), Int(2))) < 0);
  CHECK(sign_at_surd(p, SurdValue::integer(Int(3), Int(2))) > 0);

  IntPolynomial h = make({-3, -1, 1});  // y^2 - y - 3
  CHECK(sign_at_surd(h, SurdValue::two_sqrt(Int(2))) > 0);
  // Half-integer evaluation point: (a + b sqrt(q)) / c with c = 2.
  CHECK(sign_at_surd(h, SurdValue(Int(1), Int(0), Int(2), Int(2))) < 0);
}

TEST_CASE("sturm chain and root counting") {
  IntPolynomial p = make({1, -3, 0, 1});  // y^3 - 3y + 1, three real roots
  auto chain = sturm_chain(p);
  CHECK(chain.size() >= 2);
  SurdValue lo = SurdValue::integer(Int(-2)), hi = SurdValue::integer(Int(2));
  CHECK(sturm_count(p, lo, hi) == 3);
  CHECK(sturm_count(p, SurdValue::integer(Int(0)), hi) == 2);
  CHECK(sturm_count(p, SurdValue::integer(Int(-10)), SurdValue::integer(Int(10))) == 3);

  // Roots at irrational endpoints are rejected.
  IntPolynomial q = make({-8, 0, 1});
  CHECK_THROWS_AS(sturm_count(q, SurdValue::minus_two_sqrt(Int(2)), SurdValue::two_sqrt(Int(2))),
                  std::invalid_argument);
  // Non-square-free input is detected.
  CHECK_THROWS_AS(sturm_chain(make({1, -2, 1})), std::invalid_argument);
  // Empty interval.
  CHECK_THROWS_AS(sturm_count(p, hi, lo), std::domain_error);
}

TEST_CASE("sturm counts match known integer roots") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> root(-6, 6);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> roots{root(rng), root(rng), root(rng), root(rng)};
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    IntPolynomial p = IntPolynomial::constant(Int(1));
    for (int r : roots) p = p * make({-r, 1});
    int lo = -7, hi = 7;
    while (std::find(roots.begin(), roots.end(), lo) != roots.end()) --lo;
    while (std::find(roots.begin(), roots.end(), hi) != roots.end()) ++hi;
    int expected = 0;
    for (int r : roots)
      if (lo < r && r < hi) ++expected;
    CHECK(sturm_count(p, SurdValue::integer(Int(lo)), SurdValue::integer(Int(hi))) == expected);
  }
}

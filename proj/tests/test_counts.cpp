#include <catch2/catch_amalgamated.hpp>

#include <unitroots/counts.hpp>

using namespace unitroots;

namespace {

void check_constant(const RatInterval& iv, double reference) {
  CHECK(iv.lo.convert_to<double>() <= reference + 1e-12);
  CHECK(iv.hi.convert_to<double>() >= reference - 1e-12);
  CHECK(iv.width() <= Rat(1, 1000000000));
}

}  // namespace

TEST_CASE("unit fraction of residues") {
  CHECK(coprime_density(Int(2)) == Rat(1, 2));
  CHECK(coprime_density(Int(4)) == Rat(1, 2));
  CHECK(coprime_density(Int(9)) == Rat(2, 3));
  CHECK(coprime_density(Int(7)) == Rat(6, 7));
  CHECK(coprime_density(Int(12)) == Rat(1, 3));
  CHECK(coprime_density(Int(1)) == Rat(1));
  CHECK_THROWS_AS(coprime_density(Int(0)), std::domain_error);
}

TEST_CASE("ordinary candidate counts over small fields") {
  CHECK(count_ordinary(2, 1) == 2);
  CHECK(count_ordinary(3, 1) == 4);
  CHECK(count_ordinary(4, 1) == 4);
  CHECK(count_ordinary(5, 1) == 8);
}

TEST_CASE("certified constants") {
  const ConstantsTable& t = ConstantsTable::get();
  check_constant(t.c1, 0.288675134594812882);
  check_constant(t.c2, 12.898607797946182);
  check_constant(t.c3, 5.34277828564067103);
  check_constant(t.c4, 0.223130160148429829);
  check_constant(t.c5, 3.41421356237309505);
  check_constant(t.c6, 0.216506350946109662);
  check_constant(t.c7, 1.03241917266778804);
  check_constant(t.c8, 0.795495128834865965);
  CHECK(t.entries().size() == 8);
  // The two error constants differ exactly by the factor 1 + sqrt(2).
  RatInterval ratio = t.c2 / t.c3;
  CHECK(ratio.lo > Rat(24142135623, 10000000000));
  CHECK(ratio.hi < Rat(24142135624, 10000000000));
}

TEST_CASE("binomial row bounds") {
  for (int n = 1; n <= 200; ++n) {
    CHECK(psi_row_bound_holds(n));
    CHECK(chi_row_bound_holds(n));
  }
}

TEST_CASE("coprime trace window count") {
  CHECK(lower_bound_m_count(2, 2) == 2);
  CHECK(lower_bound_m_count(9, 2) == 6);
  CHECK(lower_bound_m_count(4, 2) == 2);
  CHECK(lower_bound_m_count(25, 2) == 20);
  // The window collapses when q^n < n^2.
  CHECK(lower_bound_m_count(2, 3) == 0);
}

TEST_CASE("lattice point count against the prediction") {
  LatticeBoundReport rep = verify_count_bound(2, 2);
  CHECK(rep.q == 2);
  CHECK(rep.n == 2);
  CHECK(rep.count == count_weil_points(2, 2, Int(1)));
  CHECK(rep.holds);

  LatticeBoundReport rep3 = verify_count_bound(3, 2);
  CHECK(rep3.holds);
}

TEST_CASE("ordinary count report") {
  CountReport rep = ordinary_count_report(4, 2);
  CHECK(rep.q == 4);
  CHECK(rep.n == 2);
  CHECK(rep.lambda == count_weil_points(4, 2, Int(1)));
  CHECK(rep.lambda_p == count_weil_points(4, 2, Int(2)));
  CHECK(rep.lambda_s == rep.lambda_p);
  CHECK(rep.ordinary == rep.lambda - rep.lambda_p);
  CHECK(rep.ordinary_prev == count_ordinary(4, 1));
  CHECK(rep.prediction.is_positive());
  CHECK(rep.main_holds);
  CHECK(rep.lower_holds);
  CHECK(rep.upper_holds);
  CHECK_THROWS_AS(ordinary_count_report(4, 1), std::domain_error);
}

TEST_CASE("ordinary lower bound report") {
  CountReport counts = ordinary_count_report(3, 2);
  LowerBoundReport rep = ordinary_lower_bound_report(3, 2);
  CHECK(rep.ordinary == counts.ordinary);
  // r(3) 3^{2/2} - 2 = 0: the bound degenerates to "positive count" here.
  CHECK(rep.rhs.contains(Rat(0)));
  CHECK(rep.holds);

  // First q where the linear factor is positive.
  LowerBoundReport sharp = ordinary_lower_bound_report(5, 2);
  CHECK(sharp.rhs.is_positive());
  CHECK(sharp.holds);
}

TEST_CASE("trend over growing square fields") {
  std::vector<TrendRow> rows = ordinary_trend({4, 9, 25}, 2);
  REQUIRE(rows.size() == 3);
  for (const TrendRow& row : rows) {
    CHECK(row.main > 0);
    CHECK(row.deviation >= 0);
    CHECK(row.within);
  }
  // The relative error envelope shrinks with the field size.
  CHECK(rows[0].envelope.lo >= rows[1].envelope.hi);
  CHECK(trend_envelope_monotone({4, 9, 25, 49, 81}));
  CHECK_THROWS_AS(ordinary_trend({5}, 2), std::domain_error);
}

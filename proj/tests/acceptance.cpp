// Acceptance gate: every criterion prints exactly one [PASS]/[FAIL] line.
// Exit code 0 iff all criteria pass.

#include <unitroots/unitroots.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace {

using namespace unitroots;

std::vector<Rat> distinct_positive_rationals(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> num(1, 60), den(1, 9);
  std::set<Rat> seen;
  while (static_cast<int>(seen.size()) < n) seen.insert(Rat(num(rng), den(rng)));
  std::vector<Rat> e(seen.begin(), seen.end());
  std::shuffle(e.begin(), e.end(), rng);
  return e;
}

bool exact_volumes(std::string& note) {
  if (v_exact(1) != Rat(4)) { note = "v(1) != 4"; return false; }
  if (v_exact(2) != Rat(32, 3)) { note = "v(2) != 32/3"; return false; }
  if (v_exact(3) != Rat(1024, 45)) { note = "v(3) != 1024/45"; return false; }
  for (int n = 1; n <= 8; ++n)
    if (!volume_integral_consistent(n)) {
      note = "closed form disagrees with the simplex integral at n = " + std::to_string(n);
      return false;
    }
  return true;
}

bool recursion_agreement(std::string& note) {
  std::mt19937_64 rng(480211);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 1 + trial % 6;
    std::vector<Rat> e = distinct_positive_rationals(rng, n);
    if (e_closed(e) != d_recursive(e)) {
      note = "closed form and recursion disagree (trial " + std::to_string(trial) + ")";
      return false;
    }
    if (!residue_identity_check(e)) {
      note = "residue identity fails (trial " + std::to_string(trial) + ")";
      return false;
    }
  }
  return true;
}

bool monte_carlo_volume(std::string& note) {
  for (int n : {2, 3, 4}) {
    Rat truth = v_exact(n);
    double target = truth.convert_to<double>();
    for (std::uint64_t seed : {101u, 202u, 303u}) {
      MonteCarloResult r = mc_volume(n, 1000000, seed);
      double dev = std::abs(r.estimate - target);
      if (dev > 3.0 * r.std_error) {
        note = "n = " + std::to_string(n) + ", seed " + std::to_string(seed) + ": |" +
               std::to_string(r.estimate) + " - " + std::to_string(target) + "| > 3 sigma (" +
               std::to_string(r.std_error) + ")";
        return false;
      }
    }
  }
  return true;
}

bool curve_counts(std::string& note) {
  for (std::int64_t q : {2, 3, 4, 5, 7, 8, 9, 11, 13}) {
    Int lambda = count_weil_points(q, 1, Int(1));
    Int ordinary = count_ordinary(q, 1);
    Int all_traces = 0, coprime_traces = 0;
    std::int64_t b = coefficient_bounds(q, 1)[0];
    for (std::int64_t t = -b; t <= b; ++t) {
      if (Int(t) * t > 4 * Int(q)) continue;
      ++all_traces;
      if (boost::multiprecision::gcd(Int(t), Int(q)) == 1) ++coprime_traces;
    }
    if (lambda != all_traces || ordinary != coprime_traces) {
      note = "q = " + std::to_string(q) + ": (" + lambda.str() + ", " + ordinary.str() +
             ") vs traces (" + all_traces.str() + ", " + coprime_traces.str() + ")";
      return false;
    }
  }
  return true;
}

bool count_reports(std::string& note) {
  const std::vector<std::pair<std::int64_t, int>> cases{{4, 2}, {9, 2}, {25, 2}, {4, 3}, {8, 3}};
  for (auto [q, n] : cases) {
    CountReport rep = ordinary_count_report(q, n);
    if (!rep.main_holds || !rep.lower_holds || !rep.upper_holds) {
      note = "q = " + std::to_string(q) + ", n = " + std::to_string(n) + ": main " +
             (rep.main_holds ? "ok" : "FAIL") + ", lower " + (rep.lower_holds ? "ok" : "FAIL") +
             ", upper " + (rep.upper_holds ? "ok" : "FAIL");
      return false;
    }
  }
  return true;
}

bool lower_bound_reports(std::string& note) {
  for (std::int64_t q : {2, 3, 4, 5, 7, 8, 9}) {
    for (int n : {2, 3}) {
      LowerBoundReport rep = ordinary_lower_bound_report(q, n);
      if (!rep.holds) {
        note = "q = " + std::to_string(q) + ", n = " + std::to_string(n) + ": ordinary " +
               rep.ordinary.str() + " not above the bound";
        return false;
      }
    }
  }
  return true;
}

bool greedy_realization(std::string& note) {
  for (std::int64_t q : {4, 5, 8, 9}) {
    for (int n : {2, 3}) {
      AdmissibleInterval iv = admissible_interval(q, n);
      for (Int m = iv.lo; m <= iv.hi; ++m) {
        WeilCandidate w = realize_order(OrderQuery(q, n, m));
        if (!verify_realization(w, m)) {
          note = "q = " + std::to_string(q) + ", n = " + std::to_string(n) + ", m = " + m.str();
          return false;
        }
      }
    }
  }
  return true;
}

bool small_field_realization(std::string& note) {
  for (std::int64_t q : {2, 3}) {
    for (int n = 2; n <= 8; ++n) {
      AdmissibleInterval iv = admissible_interval(q, n);
      for (Int m = iv.lo; m <= iv.hi; ++m) {
        if (m < 1) continue;
        WeilCandidate w = realize_order_small_q(OrderQuery(q, n, m));
        if (!verify_realization(w, m)) {
          note = "q = " + std::to_string(q) + ", n = " + std::to_string(n) + ", m = " + m.str();
          return false;
        }
      }
    }
  }
  return true;
}

bool property_batteries(std::string& note) {
  const std::uint64_t seed = 911003;
  std::vector<BatteryResult> batteries;
  batteries.push_back(diamond_subset_battery(5, 2000, seed));
  batteries.push_back(image_in_region_battery(5, 2000, seed));
  batteries.push_back(v2_agreement_battery(10000, seed));
  batteries.push_back(psi_lipschitz_battery(6, 2000, seed));
  batteries.push_back(chi_lipschitz_battery(6, 2000, seed));
  batteries.push_back(face_map_lipschitz_battery(5, 300, seed));
  batteries.push_back(newton_identities_battery(6, 1000, seed));
  batteries.push_back(binomial_bounds_battery(200));
  batteries.push_back(newton_polygon_battery({2, 3, 4, 8, 9}, 2));
  batteries.push_back(ss_product_battery(9));
  batteries.push_back(lattice_bounds_battery(5, 15, seed));
  batteries.push_back(integral_recursion_battery(6, 20, seed));
  for (const BatteryResult& b : batteries) {
    if (!b.passed()) {
      note = b.name + ": " + std::to_string(b.violations) + " violations in " +
             std::to_string(b.trials) + " trials";
      return false;
    }
  }
  return true;
}

bool trend_over_squares(std::string& note) {
  const std::vector<std::int64_t> qs{4, 9, 25, 49, 81};
  std::vector<TrendRow> rows = ordinary_trend(qs, 2);
  for (const TrendRow& row : rows) {
    if (!row.within) {
      note = "q = " + std::to_string(row.q) + ": deviation outside the envelope";
      return false;
    }
  }
  if (!trend_envelope_monotone(qs)) {
    note = "relative error envelope is not non-increasing";
    return false;
  }
  return true;
}

struct Criterion {
  const char* id;
  const char* description;
  bool (*run)(std::string&);
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"01", "exact volumes match the closed form and the simplex integral", exact_volumes},
      {"02", "alternating recursion, closed form, and residue identity agree", recursion_agreement},
      {"03", "Monte Carlo estimates hit the exact volume within 3 sigma", monte_carlo_volume},
      {"04", "dimension-one counts equal the coprime trace window", curve_counts},
      {"05", "ordinary counts sit inside the certified error bounds", count_reports},
      {"06", "ordinary counts exceed the certified lower bound", lower_bound_reports},
      {"07", "greedy realization covers every admissible order, q >= 4", greedy_realization},
      {"08", "small-field realization covers every admissible order", small_field_realization},
      {"09", "geometric and arithmetic property batteries are violation-free", property_batteries},
      {"10", "relative deviation shrinks inside a non-increasing envelope", trend_over_squares},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::string note;
    bool ok = false;
    try {
      ok = c.run(note);
    } catch (const std::exception& e) {
      note = std::string("exception: ") + e.what();
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    std::printf("[%s] %s %s (%lld ms)%s%s\n", ok ? "PASS" : "FAIL", c.id, c.description,
                static_cast<long long>(ms), note.empty() ? "" : " -- ", note.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  if (failures == 0)
    std::printf("all %zu criteria passed\n", std::size(criteria));
  else
    std::printf("%d of %zu criteria failed\n", failures, std::size(criteria));
  return failures == 0 ? 0 : 1;
}

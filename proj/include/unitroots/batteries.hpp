#pragma once

#include <unitroots/common.hpp>
#include <unitroots/counts.hpp>
#include <unitroots/lattice.hpp>
#include <unitroots/region.hpp>
#include <unitroots/volume.hpp>
#include <unitroots/weil.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace unitroots {

struct BatteryResult {
  std::string name;
  std::uint64_t trials = 0;
  std::uint64_t violations = 0;
  std::string note;

  bool passed() const { return violations == 0; }
};

namespace detail {

inline double sup_dist(const RealVector& x, const RealVector& y) {
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, std::abs(x[i] - y[i]));
  return d;
}

inline RealVector sorted_uniform(std::mt19937_64& rng, int n, double lo, double hi) {
  std::uniform_real_distribution<double> uni(lo, hi);
  RealVector x(static_cast<std::size_t>(n));
  for (double& v : x) v = uni(rng);
  std::sort(x.begin(), x.end());
  return x;
}

// Floating-point tolerance for comparing two double-precision evaluations
// of an exact inequality.
constexpr double kLipschitzSlack = 1e-9;

}  // namespace detail

// Diamond membership implies region membership: no sampled diamond point
// may be classified as clearly outside.
inline BatteryResult diamond_subset_battery(int max_n, std::uint64_t samples_per_n,
                                            std::uint64_t seed) {
  BatteryResult res{"diamond-inside-region"};
  for (int n = 1; n <= max_n; ++n) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(n)));
    std::uniform_real_distribution<double> side(-1.0, 1.0), last(-2.0, 2.0);
    std::uint64_t accepted = 0;
    while (accepted < samples_per_n) {
      RealVector b(static_cast<std::size_t>(n));
      for (int i = 0; i + 1 < n; ++i) b[static_cast<std::size_t>(i)] = side(rng);
      b.back() = last(rng);
      if (!in_diamond(b)) continue;
      ++accepted;
      ++res.trials;
      if (in_region_numeric(b) == RegionVerdict::outside) ++res.violations;
    }
  }
  return res;
}

// The image of the ordered root simplex under the coefficient map stays in
// the region.
inline BatteryResult image_in_region_battery(int max_n, std::uint64_t samples_per_n,
                                             std::uint64_t seed) {
  BatteryResult res{"root-image-inside-region"};
  for (int n = 1; n <= max_n; ++n) {
    std::mt19937_64 rng(mix_seed(seed, 100 + static_cast<std::uint64_t>(n)));
    for (std::uint64_t it = 0; it < samples_per_n; ++it) {
      RealVector r = detail::sorted_uniform(rng, n, -2.0, 2.0);
      ++res.trials;
      if (in_region_numeric(phi(r)) == RegionVerdict::outside) ++res.violations;
    }
  }
  return res;
}

// The numeric verdict must agree with the explicit two-dimensional
// description away from the boundary.
inline BatteryResult v2_agreement_battery(std::uint64_t samples, std::uint64_t seed) {
  BatteryResult res{"explicit-n2-agreement"};
  std::mt19937_64 rng(mix_seed(seed, 7));
  std::uniform_real_distribution<double> b1(-3.0, 3.0), b2(-3.0, 7.0);
  for (std::uint64_t it = 0; it < samples; ++it) {
    RealVector b{b1(rng), b2(rng)};
    RegionVerdict verdict = in_region_numeric(b);
    if (verdict == RegionVerdict::boundary_ambiguous) continue;
    ++res.trials;
    if ((verdict == RegionVerdict::inside) != in_v2_explicit(b)) ++res.violations;
  }
  return res;
}

// Coefficient map on the ordered simplex: sup-norm Lipschitz constant
// 3^{n-1} sqrt(n).
inline BatteryResult psi_lipschitz_battery(int max_n, std::uint64_t pairs_per_n,
                                           std::uint64_t seed) {
  BatteryResult res{"psi-lipschitz"};
  for (int n = 1; n <= max_n; ++n) {
    std::mt19937_64 rng(mix_seed(seed, 200 + static_cast<std::uint64_t>(n)));
    const double bound = std::pow(3.0, n - 1) * std::sqrt(static_cast<double>(n));
    for (std::uint64_t it = 0; it < pairs_per_n; ++it) {
      RealVector x = detail::sorted_uniform(rng, n, -2.0, 2.0);
      RealVector y = detail::sorted_uniform(rng, n, -2.0, 2.0);
      double lhs = detail::sup_dist(psi(x), psi(y));
      double rhs = bound * detail::sup_dist(x, y);
      ++res.trials;
      if (lhs > rhs * (1.0 + detail::kLipschitzSlack) + 1e-12) ++res.violations;
    }
  }
  return res;
}

// Substitution map on all of R^n: sup-norm Lipschitz constant
// 3 sqrt(3) 2^{n-3} / sqrt(n).
inline BatteryResult chi_lipschitz_battery(int max_n, std::uint64_t pairs_per_n,
                                           std::uint64_t seed) {
  BatteryResult res{"chi-lipschitz"};
  for (int n = 1; n <= max_n; ++n) {
    std::mt19937_64 rng(mix_seed(seed, 300 + static_cast<std::uint64_t>(n)));
    std::uniform_real_distribution<double> uni(-3.0, 3.0);
    const double bound = 3.0 * std::sqrt(3.0) * std::pow(2.0, n - 3) / std::sqrt(static_cast<double>(n));
    for (std::uint64_t it = 0; it < pairs_per_n; ++it) {
      RealVector x(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n));
      for (double& v : x) v = uni(rng);
      for (double& v : y) v = uni(rng);
      double lhs = detail::sup_dist(chi(x), chi(y));
      double rhs = bound * detail::sup_dist(x, y);
      ++res.trials;
      if (lhs > rhs * (1.0 + detail::kLipschitzSlack) + 1e-12) ++res.violations;
    }
  }
  return res;
}

// Face embeddings composed with the full coefficient map: constant
// (sqrt(3)/8) 6^n.
inline BatteryResult face_map_lipschitz_battery(int max_n, std::uint64_t pairs_per_n,
                                                std::uint64_t seed) {
  BatteryResult res{"face-composite-lipschitz"};
  for (int n = 2; n <= max_n; ++n) {
    std::mt19937_64 rng(mix_seed(seed, 400 + static_cast<std::uint64_t>(n)));
    const double bound = std::sqrt(3.0) / 8.0 * std::pow(6.0, n);
    for (std::uint64_t it = 0; it < pairs_per_n; ++it) {
      RealVector x = detail::sorted_uniform(rng, n - 1, -2.0, 2.0);
      RealVector y = detail::sorted_uniform(rng, n - 1, -2.0, 2.0);
      for (int i = 0; i <= n; ++i) {
        double lhs = detail::sup_dist(phi(delta(i, x)), phi(delta(i, y)));
        double rhs = bound * detail::sup_dist(x, y);
        ++res.trials;
        if (lhs > rhs * (1.0 + detail::kLipschitzSlack) + 1e-12) ++res.violations;
      }
    }
  }
  return res;
}

// Power sums recovered from the coefficients must match direct summation.
inline BatteryResult newton_identities_battery(int max_n, std::uint64_t samples_per_n,
                                               std::uint64_t seed) {
  BatteryResult res{"newton-power-sums"};
  for (int n = 1; n <= max_n; ++n) {
    std::mt19937_64 rng(mix_seed(seed, 500 + static_cast<std::uint64_t>(n)));
    for (std::uint64_t it = 0; it < samples_per_n; ++it) {
      RealVector r = detail::sorted_uniform(rng, n, -2.0, 2.0);
      RealVector p = newton_power_sums(psi(r));
      ++res.trials;
      for (int k = 1; k <= n; ++k) {
        double direct = 0.0;
        for (double v : r) direct += std::pow(v, k);
        if (std::abs(direct - p[static_cast<std::size_t>(k - 1)]) >
            1e-9 * std::max(1.0, std::abs(direct))) {
          ++res.violations;
          break;
        }
      }
    }
  }
  return res;
}

// Exact binomial inequalities behind the Lipschitz constants.
inline BatteryResult binomial_bounds_battery(int max_n) {
  BatteryResult res{"binomial-row-bounds"};
  for (int n = 1; n <= max_n; ++n) {
    res.trials += 2;
    if (!psi_row_bound_holds(n)) ++res.violations;
    if (!chi_row_bound_holds(n)) ++res.violations;
  }
  return res;
}

// Slopes of the valuation polygon of an enumerated Weil candidate pair up
// to n with integral multiplicity-weighted break data: every vertex height
// is a multiple of 1/e and slopes lie in [0, 1] increasing.
inline BatteryResult newton_polygon_battery(const std::vector<std::int64_t>& qs, int n,
                                            const Int& budget = Int(100000000)) {
  BatteryResult res{"newton-polygon-shape"};
  for (std::int64_t q : qs) {
    for_each_weil_point(
        q, n,
        [&](const std::vector<Int>& a) {
          ++res.trials;
          WeilCandidate w(q, a);
          NewtonPolygon np = newton_polygon(w);
          bool ok = np.vertices.size() >= 2 && np.vertices.front().first == 0 &&
                    np.vertices.back().first == 2 * n;
          // Symmetry forces total drop n; slopes increase within [-1, 0].
          Rat prev_slope(-2);
          for (std::size_t i = 0; ok && i + 1 < np.vertices.size(); ++i) {
            const auto& [x0, y0] = np.vertices[i];
            const auto& [x1, y1] = np.vertices[i + 1];
            Rat slope = (y1 - y0) / Rat(x1 - x0);
            if (slope <= prev_slope || slope < -1 || slope > 0) ok = false;
            prev_slope = slope;
          }
          if (ok) {
            ok = np.vertices.front().second == Rat(Int(n)) && np.vertices.back().second == Rat(0);
            // Expansion is monic with constant term q^n read left to right
            // in ascending powers, so the polygon runs from (0, n) to (2n, 0).
          }
          if (!ok) ++res.violations;
        },
        budget);
  }
  return res;
}

// Attaching the supersingular elliptic factor: injective on ordinary
// classes in dimension one, lands in the non-ordinary residue sublattice,
// and stays Weil.
inline BatteryResult ss_product_battery(std::int64_t max_q) {
  BatteryResult res{"supersingular-product"};
  for (std::int64_t q = 2; q <= max_q; ++q) {
    if (!prime_power_decompose(q)) continue;
    std::set<std::vector<Int>> images;
    std::vector<std::vector<Int>> ordinary_points;
    for_each_weil_point(q, 1, [&](const std::vector<Int>& a) {
      WeilCandidate w(q, a);
      if (boost::multiprecision::gcd(a.back(), Int(q)) == 1) ordinary_points.push_back(a);
    });
    const Int s = middle_prime_power(prime_power_decompose(q)->p, prime_power_decompose(q)->e);
    for (const auto& a : ordinary_points) {
      ++res.trials;
      WeilCandidate image = ss_product(WeilCandidate(q, a));
      bool ok = is_weil(image);
      ok = ok && image.a.back() % s == 0;
      ok = ok && !images.count(image.a);
      images.insert(image.a);
      if (!ok) ++res.violations;
    }
  }
  return res;
}

// Closed-form lattice point bounds against brute enumeration over random
// small lattices.
inline BatteryResult lattice_bounds_battery(int max_n, std::uint64_t lattices_per_n,
                                            std::uint64_t seed) {
  BatteryResult res{"wedge-diamond-bounds"};
  for (int n = 1; n <= max_n; ++n) {
    std::mt19937_64 rng(mix_seed(seed, 600 + static_cast<std::uint64_t>(n)));
    std::uniform_int_distribution<int> num(1, 4), den(1, 4), rad_num(0, 12);
    for (std::uint64_t it = 0; it < lattices_per_n; ++it) {
      std::vector<Rat> steps(static_cast<std::size_t>(n));
      for (Rat& d : steps) d = Rat(num(rng), den(rng));
      RectilinearLattice lat(steps);
      Rat r(rad_num(rng), 4);
      res.trials += 2;
      if (Rat(wedge_count_brute(lat, r)) < wedge_lower_bound(lat, r)) ++res.violations;
      if (Rat(diamond_count_brute(lat, r)) < diamond_lower_bound(lat, r)) ++res.violations;
    }
  }
  return res;
}

// Closed form against the alternating recursion and the residue identity
// on random distinct positive rationals.
inline BatteryResult integral_recursion_battery(int max_n, std::uint64_t samples_per_n,
                                                std::uint64_t seed) {
  BatteryResult res{"simplex-integral-recursion"};
  for (int n = 1; n <= max_n; ++n) {
    std::mt19937_64 rng(mix_seed(seed, 700 + static_cast<std::uint64_t>(n)));
    std::uniform_int_distribution<int> num(1, 40), den(1, 8);
    for (std::uint64_t it = 0; it < samples_per_n; ++it) {
      std::set<Rat> seen;
      while (static_cast<int>(seen.size()) < n) seen.insert(Rat(num(rng), den(rng)));
      std::vector<Rat> e(seen.begin(), seen.end());
      std::shuffle(e.begin(), e.end(), rng);
      res.trials += 2;
      if (e_closed(e) != d_recursive(e)) ++res.violations;
      if (!residue_identity_check(e)) ++res.violations;
    }
  }
  return res;
}

}  // namespace unitroots

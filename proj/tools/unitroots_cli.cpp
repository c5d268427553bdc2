#include <CLI11.hpp>
#include <json.hpp>

#include <unitroots/unitroots.hpp>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using ordered_json = nlohmann::ordered_json;
using namespace unitroots;

constexpr int kExitOk = 0;
constexpr int kExitFailedVerdict = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitBudget = 4;

std::string approx_string(double v) {
  std::ostringstream os;
  os << "\xE2\x89\x88" << std::setprecision(12) << v;  // U+2248
  return os.str();
}

ordered_json rational_json(const Rat& x) {
  ordered_json j;
  j["num"] = numerator(x).str();
  j["den"] = denominator(x).str();
  j["approx"] = approx_string(x.convert_to<double>());
  return j;
}

ordered_json interval_json(const RatInterval& iv) {
  ordered_json j;
  j["lo"] = rational_json(iv.lo);
  j["hi"] = rational_json(iv.hi);
  return j;
}

ordered_json verdict_json(const std::string& name, bool passed) {
  ordered_json j;
  j["name"] = name;
  j["passed"] = passed;
  return j;
}

struct Invocation {
  std::string command;
  ordered_json params;
  ordered_json result;
  ordered_json verdicts = ordered_json::array();
  bool cache_hit = false;
  int exit_code = kExitOk;
  // CSV payload: header plus rows, already flattened.
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  std::vector<std::string> human_lines;
};

Int parse_big(const std::string& text) {
  if (text.empty()) throw CLI::ValidationError("expected an integer, got an empty string");
  std::size_t start = (text[0] == '-') ? 1 : 0;
  if (start == text.size()) throw CLI::ValidationError("expected an integer, got '" + text + "'");
  for (std::size_t i = start; i < text.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw CLI::ValidationError("expected an integer, got '" + text + "'");
  return Int(text);
}

void require_prime_power(std::int64_t q) {
  if (!prime_power_decompose(q))
    throw CLI::ValidationError("q must be a prime power >= 2, got " + std::to_string(q));
}

std::string rat_human(const Rat& x) {
  std::string s = numerator(x).str();
  if (denominator(x) != 1) s += "/" + denominator(x).str();
  return s;
}

std::string rat_csv(const Rat& x) { return rat_human(x); }

// ---------------------------------------------------------------- volume --

Invocation run_volume(int n) {
  Invocation inv;
  inv.command = "volume";
  inv.params["n"] = n;
  Rat v = v_exact(n);
  bool consistent = volume_integral_consistent(n);
  inv.result["n"] = n;
  inv.result["volume"] = rational_json(v);
  inv.result["consistent"] = consistent;
  inv.verdicts.push_back(verdict_json("closed-form-matches-simplex-integral", consistent));
  if (!consistent) inv.exit_code = kExitFailedVerdict;

  inv.csv_header = {"n", "volume", "approx"};
  inv.csv_rows.push_back({std::to_string(n), rat_csv(v),
                          std::to_string(v.convert_to<double>())});
  inv.human_lines.push_back("volume(" + std::to_string(n) + ") = " + rat_human(v) + "  (" +
                            approx_string(v.convert_to<double>()) + ")");
  inv.human_lines.push_back(std::string("closed form and simplex integral ") +
                            (consistent ? "agree" : "DISAGREE"));
  return inv;
}

// ----------------------------------------------------------------- count --

ordered_json count_result_json(std::int64_t q, int n, const EnumOptions& opts,
                               ordered_json& verdicts) {
  ordered_json res;
  WeilPointCounts counts = enumerate_weil_counts(q, n, opts);
  res["q"] = q;
  res["n"] = n;
  res["lambda"] = counts.all.str();
  res["lambda_p"] = counts.div_p.str();
  res["lambda_s"] = counts.div_s.str();
  res["ordinary"] = Int(counts.all - counts.div_p).str();
  if (n >= 2) {
    Int prev = count_ordinary(q, n - 1, opts);
    CountReport rep = make_count_report(q, n, counts, prev);
    res["ordinary_prev"] = prev.str();
    res["prediction"] = interval_json(rep.prediction);
    res["error_bound"] = interval_json(rep.error_bound);
    res["residue_upper"] = interval_json(rep.residue_upper);
    verdicts.push_back(verdict_json("ordinary-count-within-error-bound", rep.main_holds));
    verdicts.push_back(verdict_json("residue-count-above-previous-dimension", rep.lower_holds));
    verdicts.push_back(verdict_json("residue-count-below-upper-bound", rep.upper_holds));
  }
  return res;
}

std::filesystem::path count_cache_file(const std::string& dir, std::int64_t q, int n) {
  std::string name = "count-q" + std::to_string(q) + "-n" + std::to_string(n) + "-v" +
                     version_string + ".json";
  return std::filesystem::path(dir) / name;
}

void count_csv_row(Invocation& inv, const ordered_json& res) {
  inv.csv_rows.push_back({std::to_string(res["q"].get<std::int64_t>()),
                          std::to_string(res["n"].get<int>()),
                          res["lambda"].get<std::string>(), res["lambda_p"].get<std::string>(),
                          res["lambda_s"].get<std::string>(),
                          res["ordinary"].get<std::string>()});
}

Invocation run_count(std::int64_t q, int n, const EnumOptions& opts, const std::string& cache_dir) {
  Invocation inv;
  inv.command = "count";
  inv.params["q"] = q;
  inv.params["n"] = n;
  require_prime_power(q);

  bool loaded = false;
  if (!cache_dir.empty()) {
    std::ifstream in(count_cache_file(cache_dir, q, n));
    if (in) {
      try {
        ordered_json cached = ordered_json::parse(in);
        inv.result = cached.at("result");
        inv.verdicts = cached.at("verdicts");
        loaded = true;
      } catch (const ordered_json::exception&) {
        loaded = false;  // corrupt cache entry, recompute below
      }
    }
  }
  if (!loaded) {
    inv.result = count_result_json(q, n, opts, inv.verdicts);
    if (!cache_dir.empty()) {
      std::filesystem::create_directories(cache_dir);
      ordered_json cached;
      cached["result"] = inv.result;
      cached["verdicts"] = inv.verdicts;
      std::ofstream out(count_cache_file(cache_dir, q, n));
      out << cached.dump(2) << "\n";
    }
  }
  inv.cache_hit = loaded;

  for (const auto& v : inv.verdicts)
    if (!v["passed"].get<bool>()) inv.exit_code = kExitFailedVerdict;

  inv.csv_header = {"q", "n", "lambda", "lambda_p", "lambda_s", "ordinary"};
  count_csv_row(inv, inv.result);
  inv.human_lines.push_back("q = " + std::to_string(q) + ", n = " + std::to_string(n));
  inv.human_lines.push_back("candidates          " + inv.result["lambda"].get<std::string>());
  inv.human_lines.push_back("middle div by p     " + inv.result["lambda_p"].get<std::string>());
  inv.human_lines.push_back("middle div by s     " + inv.result["lambda_s"].get<std::string>());
  inv.human_lines.push_back("ordinary            " + inv.result["ordinary"].get<std::string>());
  for (const auto& v : inv.verdicts)
    inv.human_lines.push_back(std::string(v["passed"].get<bool>() ? "[PASS] " : "[FAIL] ") +
                              v["name"].get<std::string>());
  return inv;
}

Invocation run_count_batch(std::int64_t qmin, std::int64_t qmax, int n, const EnumOptions& opts) {
  Invocation inv;
  inv.command = "count";
  inv.params["qmin"] = qmin;
  inv.params["qmax"] = qmax;
  inv.params["n"] = n;
  if (qmin > qmax) throw CLI::ValidationError("batch range is empty");
  inv.result = ordered_json::array();
  inv.csv_header = {"q", "n", "lambda", "lambda_p", "lambda_s", "ordinary"};
  for (std::int64_t q = qmin; q <= qmax; ++q) {
    if (!prime_power_decompose(q)) continue;
    ordered_json row_verdicts = ordered_json::array();
    ordered_json row = count_result_json(q, n, opts, row_verdicts);
    for (const auto& v : row_verdicts) {
      inv.verdicts.push_back(v);
      if (!v["passed"].get<bool>()) inv.exit_code = kExitFailedVerdict;
    }
    count_csv_row(inv, row);
    inv.human_lines.push_back("q = " + std::to_string(q) + ": lambda " +
                              row["lambda"].get<std::string>() + ", ordinary " +
                              row["ordinary"].get<std::string>());
    inv.result.push_back(std::move(row));
  }
  return inv;
}

// ----------------------------------------------------------------- order --

Invocation run_order(std::int64_t q, int n, const Int& m) {
  Invocation inv;
  inv.command = "order";
  inv.params["q"] = q;
  inv.params["n"] = n;
  inv.params["m"] = m.str();
  require_prime_power(q);
  OrderQuery query(q, n, m);
  AdmissibleInterval window = admissible_interval(q, n);
  inv.result["q"] = q;
  inv.result["n"] = n;
  inv.result["m"] = m.str();
  inv.result["interval"] = ordered_json{{"lo", window.lo.str()}, {"hi", window.hi.str()}};
  if (!admissible_any(query)) {
    inv.result["admissible"] = false;
    inv.exit_code = kExitDomain;
    inv.csv_header = {"q", "n", "m", "admissible", "window_lo", "window_hi", "coefficients"};
    inv.csv_rows.push_back({std::to_string(q), std::to_string(n), m.str(), "false",
                            window.lo.str(), window.hi.str(), ""});
    inv.human_lines.push_back("no ordinary realization: m outside [" + window.lo.str() + ", " +
                              window.hi.str() + "]");
    return inv;
  }
  WeilCandidate w = realize_group_order(query);
  bool verified = verify_realization(w, m);
  inv.result["admissible"] = true;
  ordered_json coeffs = ordered_json::array();
  for (const Int& a : w.a) coeffs.push_back(a.str());
  inv.result["a"] = coeffs;
  inv.result["verified"] = verified;
  inv.verdicts.push_back(verdict_json("realization-verified", verified));
  if (!verified) inv.exit_code = kExitFailedVerdict;

  std::string joined;
  for (const Int& a : w.a) {
    if (!joined.empty()) joined += " ";
    joined += a.str();
  }
  inv.csv_header = {"q", "n", "m", "admissible", "window_lo", "window_hi", "coefficients"};
  inv.csv_rows.push_back({std::to_string(q), std::to_string(n), m.str(), "true", window.lo.str(),
                          window.hi.str(), joined});
  inv.human_lines.push_back("coefficients: " + joined);
  inv.human_lines.push_back(verified ? "verified: unit-circle roots, ordinary, f(1) = m"
                                     : "VERIFICATION FAILED");
  return inv;
}

// ----------------------------------------------------------------- check --

Invocation run_check(std::int64_t q, const std::vector<std::string>& coeff_text) {
  Invocation inv;
  inv.command = "check";
  inv.params["q"] = q;
  require_prime_power(q);
  if (coeff_text.empty()) throw CLI::ValidationError("at least one coefficient is required");
  std::vector<Int> a;
  ordered_json a_json = ordered_json::array();
  for (const std::string& t : coeff_text) {
    a.push_back(parse_big(t));
    a_json.push_back(a.back().str());
  }
  inv.params["a"] = a_json;

  WeilCandidate w(q, a);
  bool weil = is_weil(w);
  inv.result["q"] = q;
  inv.result["n"] = w.n;
  inv.result["a"] = a_json;
  inv.result["weil"] = weil;
  if (weil) {
    bool ord = is_ordinary(w);
    inv.result["ordinary"] = ord;
    inv.result["nonordinary_filter"] = passes_nonordinary_filter(w);
  } else {
    inv.result["ordinary"] = nullptr;
    inv.result["nonordinary_filter"] = nullptr;
  }
  ordered_json trace = ordered_json::array();
  for (const Int& h : WeilTester(q, w.n).trace_coeffs(a)) trace.push_back(h.str());
  inv.result["trace"] = trace;
  ordered_json polygon = ordered_json::array();
  for (const auto& [x, y] : newton_polygon(w).vertices)
    polygon.push_back(ordered_json{{"x", x}, {"y", rational_json(y)}});
  inv.result["newton_polygon"] = polygon;

  inv.csv_header = {"q", "n", "weil", "ordinary", "coefficients"};
  std::string joined;
  for (const Int& v : a) {
    if (!joined.empty()) joined += " ";
    joined += v.str();
  }
  inv.csv_rows.push_back({std::to_string(q), std::to_string(w.n), weil ? "true" : "false",
                          weil ? (inv.result["ordinary"].get<bool>() ? "true" : "false") : "",
                          joined});
  inv.human_lines.push_back(std::string("unit-circle roots: ") + (weil ? "yes" : "no"));
  if (weil)
    inv.human_lines.push_back(std::string("ordinary: ") +
                              (inv.result["ordinary"].get<bool>() ? "yes" : "no"));
  return inv;
}

// --------------------------------------------------------- verify-bounds --

Invocation run_verify_bounds(std::uint64_t seed) {
  Invocation inv;
  inv.command = "verify-bounds";
  inv.params["seed"] = seed;
  std::vector<BatteryResult> batteries;
  batteries.push_back(diamond_subset_battery(4, 1500, seed));
  batteries.push_back(image_in_region_battery(4, 1500, seed));
  batteries.push_back(v2_agreement_battery(4000, seed));
  batteries.push_back(psi_lipschitz_battery(5, 300, seed));
  batteries.push_back(chi_lipschitz_battery(5, 300, seed));
  batteries.push_back(face_map_lipschitz_battery(4, 80, seed));
  batteries.push_back(newton_identities_battery(5, 300, seed));
  batteries.push_back(binomial_bounds_battery(200));
  batteries.push_back(newton_polygon_battery({2, 3, 4, 5}, 2));
  batteries.push_back(ss_product_battery(9));
  batteries.push_back(lattice_bounds_battery(4, 8, seed));
  batteries.push_back(integral_recursion_battery(5, 15, seed));

  std::size_t passed = 0;
  inv.csv_header = {"battery", "trials", "violations", "passed"};
  for (const BatteryResult& b : batteries) {
    bool ok = b.passed();
    passed += ok ? 1 : 0;
    inv.verdicts.push_back(verdict_json(b.name, ok));
    inv.csv_rows.push_back({b.name, std::to_string(b.trials), std::to_string(b.violations),
                            ok ? "true" : "false"});
    inv.human_lines.push_back(std::string(ok ? "[PASS] " : "[FAIL] ") + b.name + " (" +
                              std::to_string(b.trials) + " trials, " +
                              std::to_string(b.violations) + " violations)");
  }
  inv.result["batteries"] = batteries.size();
  inv.result["passed"] = passed;
  if (passed != batteries.size()) inv.exit_code = kExitFailedVerdict;
  return inv;
}

// ------------------------------------------------------------- emission --

void emit(const Invocation& inv, const std::string& format, long long elapsed_ms) {
  if (format == "json") {
    ordered_json envelope;
    envelope["command"] = inv.command;
    envelope["params"] = inv.params;
    envelope["result"] = inv.result;
    envelope["verdicts"] = inv.verdicts;
    envelope["meta"] =
        ordered_json{{"version", version_string}, {"elapsed_ms", elapsed_ms},
                     {"cache_hit", inv.cache_hit}};
    std::cout << envelope.dump(2) << "\n";
    return;
  }
  if (format == "csv") {
    std::string header;
    for (const std::string& h : inv.csv_header) {
      if (!header.empty()) header += ",";
      header += h;
    }
    std::cout << header << "\n";
    for (const auto& row : inv.csv_rows) {
      std::string line;
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) line += ",";
        bool quote = row[i].find(',') != std::string::npos || row[i].find(' ') != std::string::npos;
        line += quote ? "\"" + row[i] + "\"" : row[i];
      }
      std::cout << line << "\n";
    }
    return;
  }
  for (const std::string& line : inv.human_lines) std::cout << line << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"unit-circle Weil polynomial toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string format = "human";
  std::string cache_dir;
  std::int64_t budget = 100000000;
  int threads = 0;
  std::uint64_t seed = 20260825;
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "csv", "human"}))
      ->capture_default_str();
  app.add_option("--cache-dir", cache_dir, "directory for count results");
  app.add_option("--budget", budget, "max candidate evaluations per enumeration")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", threads, "worker threads (0: all cores)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", seed, "seed for randomized verdicts");

  int volume_n = 0;
  CLI::App* volume_cmd = app.add_subcommand("volume", "exact region volume");
  volume_cmd->add_option("n", volume_n, "dimension")->required()->check(CLI::Range(1, 64));

  std::int64_t count_q = 0;
  int count_n = 0;
  std::vector<std::int64_t> batch_args;
  CLI::App* count_cmd = app.add_subcommand("count", "lattice point counts in the coefficient box");
  CLI::Option* count_q_opt = count_cmd->add_option("q", count_q, "prime power field size");
  CLI::Option* count_n_opt = count_cmd->add_option("n", count_n, "dimension");
  CLI::Option* batch_opt =
      count_cmd->add_option("--batch", batch_args, "qmin qmax n: one row per prime power")
          ->expected(3);
  batch_opt->excludes(count_q_opt);
  batch_opt->excludes(count_n_opt);

  std::int64_t order_q = 0;
  int order_n = 0;
  std::string order_m;
  CLI::App* order_cmd = app.add_subcommand("order", "realize a group order");
  order_cmd->add_option("q", order_q, "prime power field size")->required();
  order_cmd->add_option("n", order_n, "dimension")->required()->check(CLI::Range(2, 64));
  order_cmd->add_option("m", order_m, "target number of points")->required();

  std::int64_t check_q = 0;
  std::vector<std::string> check_coeffs;
  CLI::App* check_cmd = app.add_subcommand("check", "test a coefficient vector");
  check_cmd->add_option("--q", check_q, "prime power field size")->required();
  check_cmd->add_option("a", check_coeffs, "coefficients a_1 .. a_n");

  CLI::App* verify_cmd = app.add_subcommand("verify-bounds", "run the inequality batteries");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  EnumOptions opts;
  opts.budget = Int(budget);
  opts.threads = threads;

  auto started = std::chrono::steady_clock::now();
  Invocation inv;
  try {
    if (volume_cmd->parsed()) {
      inv = run_volume(volume_n);
    } else if (count_cmd->parsed()) {
      if (batch_opt->count() > 0) {
        if (batch_args[2] < 1 || batch_args[2] > 16)
          throw CLI::ValidationError("batch n must be between 1 and 16");
        inv = run_count_batch(batch_args[0], batch_args[1], static_cast<int>(batch_args[2]), opts);
      } else if (count_q_opt->count() > 0 && count_n_opt->count() > 0) {
        if (count_n < 1 || count_n > 16)
          throw CLI::ValidationError("n must be between 1 and 16");
        inv = run_count(count_q, count_n, opts, cache_dir);
      } else {
        throw CLI::ValidationError("count needs either 'q n' or '--batch qmin qmax n'");
      }
    } else if (order_cmd->parsed()) {
      inv = run_order(order_q, order_n, parse_big(order_m));
    } else if (check_cmd->parsed()) {
      inv = run_check(check_q, check_coeffs);
    } else if (verify_cmd->parsed()) {
      inv = run_verify_bounds(seed);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::invalid_argument& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started)
          .count();

  emit(inv, format, elapsed);
  return inv.exit_code;
}

// bfree: computations with B-free integers in number fields.
//
// Verbs: density | cylinder | entropy | sieve | scan | fibers | factor |
// selfcheck. Each reads a JSON config (see README), writes a deterministic
// JSON report (and CSV series where useful), and prints a short summary.
// Exit codes: 0 success, 2 config error, 3 budget/overflow, 4 cache mismatch.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <string>

#include "bfree/bfree.hpp"

namespace fs = std::filesystem;
using namespace bfree;

namespace {

struct CliOptions {
  std::string config_path;
  std::string out_dir;
  std::string cache_dir;
  int threads = 0;   // 0: take from config
  i64 seed = -1;     // <0: take from config
};

RunConfig load_config(const CliOptions& opt) {
  require(!opt.config_path.empty(), errc::config_parse, "--config is required");
  RunConfig cfg = RunConfig::parse_text(read_file(opt.config_path));
  return cfg;
}

int effective_threads(const CliOptions& opt, const RunConfig& cfg) {
  return opt.threads > 0 ? opt.threads : cfg.threads();
}

u64 effective_seed(const CliOptions& opt, const RunConfig& cfg) {
  return opt.seed >= 0 ? static_cast<u64>(opt.seed) : cfg.seed();
}

void emit(Report& report, const CliOptions& opt, const std::string& name) {
  Json doc = report.finish();
  if (!opt.out_dir.empty()) {
    fs::create_directories(opt.out_dir);
    write_file_atomic((fs::path(opt.out_dir) / (name + "_report.json")).string(), doc.dump(2) + "\n");
    std::cout << "report: " << (fs::path(opt.out_dir) / (name + "_report.json")).string() << "\n";
  } else {
    std::cout << doc.dump(2) << "\n";
  }
}

Json fiber_level_json(const BFamily& family, size_t l, const FiberLevel& lv, size_t cap = 4096) {
  Json out;
  out["ideal_norm"] = family.ideal(l).norm().get_str();
  out["complete"] = lv.complete;
  out["member_count"] = lv.members.size();
  out["untested_count"] = lv.untested.size();
  Json members = Json::array();
  for (size_t i = 0; i < lv.members.size() && i < cap; ++i) {
    members.push_back(Json{{"index", lv.members[i]},
                           {"coords", family.ideal(l).residue_at(lv.members[i])}});
  }
  out["members"] = std::move(members);
  out["members_truncated"] = lv.members.size() > cap;
  return out;
}

int cmd_density(const CliOptions& opt) {
  RunConfig cfg = load_config(opt);
  Report report("density", cfg);
  OrderHandle order = cfg.build_order();
  BFamily family = cfg.build_family(order);
  size_t L = cfg.resolve_truncation(family);
  const Json& cmd = cfg.section("density");
  IntervalValue exact = density(family, L);
  Json& res = report.results();
  res["family_size"] = family.size();
  res["truncation_L"] = L;
  res["partial_sum"] = rational_json(family.partial_sum());
  res["formula"] = interval_json(exact);
  if (cmd.value("empirical", false)) {
    Box box = cfg.parse_box(cmd.at("box"), order->degree());
    Window w = sieve_window(family, box, L, effective_threads(opt, cfg), cfg.point_budget());
    Rat freq = rat(static_cast<i64>(w.popcount()), static_cast<i64>(w.size()));
    res["empirical"] = Json{{"box", box_json(box)},
                            {"free_points", w.popcount()},
                            {"value", rational_json(freq)}};
    Rat diff = freq - exact.value;
    if (diff < 0) diff = -diff;
    res["abs_difference"] = rational_json(diff);
    std::cout << "density: formula " << decimal_string(exact.value, 9) << " +- "
              << decimal_string(exact.halfwidth, 9) << ", empirical " << decimal_string(freq, 9) << "\n";
  } else {
    std::cout << "density: formula " << decimal_string(exact.value, 9) << " +- "
              << decimal_string(exact.halfwidth, 9) << "\n";
  }
  emit(report, opt, "density");
  return 0;
}

int cmd_cylinder(const CliOptions& opt) {
  RunConfig cfg = load_config(opt);
  Report report("cylinder", cfg);
  OrderHandle order = cfg.build_order();
  BFamily family = cfg.build_family(order);
  size_t L = cfg.resolve_truncation(family);
  const Json& cmd = cfg.section("cylinder");
  Box box = cfg.parse_box(cmd.at("box"), order->degree());
  Window w = sieve_window(family, box, L, effective_threads(opt, cfg), cfg.point_budget());
  Json& res = report.results();
  res["truncation_L"] = L;
  res["box"] = box_json(box);
  auto one = [&](const Pattern& pat) {
    IntervalValue exact = mirsky_cylinder(pat, family, L);
    Rat freq = empirical_frequency(w, pat);
    Rat diff = freq - exact.value;
    if (diff < 0) diff = -diff;
    Json j;
    j["exact"] = interval_json(exact);
    j["empirical"] = rational_json(freq);
    j["abs_difference"] = rational_json(diff);
    return j;
  };
  if (cmd.contains("shape")) {
    std::vector<RingElement> shape = cfg.parse_offsets(cmd.at("shape"), order);
    require(shape.size() <= 20, errc::budget_exceeded, "shape too large to enumerate all cylinders");
    Json arr = Json::array();
    for (u64 mask = 0; mask < (u64(1) << shape.size()); ++mask) {
      std::vector<RingElement> ones, zeros;
      for (size_t i = 0; i < shape.size(); ++i) (mask & (u64(1) << i) ? ones : zeros).push_back(shape[i]);
      Pattern pat(ones, zeros);
      Json j = one(pat);
      j["ones_mask"] = mask;
      arr.push_back(std::move(j));
    }
    res["cylinders"] = std::move(arr);
  } else {
    std::vector<RingElement> ones = cfg.parse_offsets(cmd.value("ones", Json::array()), order);
    std::vector<RingElement> zeros = cfg.parse_offsets(cmd.value("zeros", Json::array()), order);
    res["cylinder"] = one(Pattern(ones, zeros));
  }
  std::cout << "cylinder report complete\n";
  emit(report, opt, "cylinder");
  return 0;
}

int cmd_entropy(const CliOptions& opt) {
  RunConfig cfg = load_config(opt);
  Report report("entropy", cfg);
  OrderHandle order = cfg.build_order();
  BFamily family = cfg.build_family(order);
  size_t L = cfg.resolve_truncation(family);
  const Json& cmd = cfg.section("entropy");
  std::vector<i64> s = cfg.parse_svector(cmd, L);
  IntervalValue formula = entropy_formula(family, L, s);
  Json& res = report.results();
  res["truncation_L"] = L;
  res["formula"] = interval_json(formula);
  Json arr = Json::array();
  std::vector<std::vector<std::string>> csv{{"points", "count_digits", "estimate_lo", "estimate_hi"}};
  require(cmd.contains("boxes") && cmd.at("boxes").is_array(), errc::config_parse,
          "\"entropy\" needs a \"boxes\" array");
  for (const auto& bj : cmd.at("boxes")) {
    Box box = cfg.parse_box(bj, order->degree());
    EntropyEstimate est = entropy_estimate(box, family, L, s, cfg.term_budget());
    Json j;
    j["box"] = box_json(box);
    j["count"] = est.count.count.get_str();
    j["method"] = est.count.method;
    j["stabilization_L"] = est.count.stabilization_L;
    j["estimate_lo"] = rational_json(est.lo);
    j["estimate_hi"] = rational_json(est.hi);
    arr.push_back(std::move(j));
    csv.push_back({box.point_count_exact().get_str(),
                   std::to_string(mpz_sizeinbase(est.count.count.get_mpz_t(), 10)),
                   decimal_string(est.lo, kReportDecimalDigits), decimal_string(est.hi, kReportDecimalDigits)});
    std::cout << "entropy: " << box.point_count_exact().get_str() << " points -> ["
              << decimal_string(est.lo, 8) << ", " << decimal_string(est.hi, 8) << "] (formula "
              << decimal_string(formula.value, 8) << ")\n";
  }
  res["estimates"] = std::move(arr);
  if (!opt.out_dir.empty()) {
    fs::create_directories(opt.out_dir);
    write_csv_atomic((fs::path(opt.out_dir) / "entropy_series.csv").string(), csv);
  }
  emit(report, opt, "entropy");
  return 0;
}

int cmd_sieve(const CliOptions& opt) {
  RunConfig cfg = load_config(opt);
  Report report("sieve", cfg);
  OrderHandle order = cfg.build_order();
  BFamily family = cfg.build_family(order);
  size_t L = cfg.resolve_truncation(family);
  const Json& cmd = cfg.section("sieve");
  Box box = cfg.parse_box(cmd.at("box"), order->degree());
  Window w = sieve_window(family, box, L, effective_threads(opt, cfg), cfg.point_budget());
  Json& res = report.results();
  res["box"] = box_json(box);
  res["truncation_L"] = L;
  res["free_points"] = w.popcount();
  res["density"] = rational_json(rat(static_cast<i64>(w.popcount()), static_cast<i64>(w.size())));
  res["stamp"] = w.stamp()->hash_hex;
  std::string cache_path;
  if (cmd.contains("cache_out")) {
    cache_path = cmd.at("cache_out").get<std::string>();
    if (!opt.cache_dir.empty() && fs::path(cache_path).is_relative())
      cache_path = (fs::path(opt.cache_dir) / cache_path).string();
  } else if (!opt.cache_dir.empty()) {
    cache_path = (fs::path(opt.cache_dir) / ("window_" + w.stamp()->hash_hex.substr(0, 12) + ".bfw")).string();
  }
  if (!cache_path.empty()) {
    write_file_atomic(cache_path, serialize_window_cache(w));
    res["cache_file"] = cache_path;
    std::cout << "sieve: " << w.popcount() << "/" << w.size() << " free, cached at " << cache_path << "\n";
  } else {
    std::cout << "sieve: " << w.popcount() << "/" << w.size() << " free\n";
  }
  emit(report, opt, "sieve");
  return 0;
}

Window obtain_window(const RunConfig& cfg, const Json& cmd, const CliOptions& opt, const OrderHandle& order,
                     const BFamily& family, size_t L) {
  if (cmd.contains("cache_in")) {
    std::string path = cmd.at("cache_in").get<std::string>();
    if (!opt.cache_dir.empty() && fs::path(path).is_relative())
      path = (fs::path(opt.cache_dir) / path).string();
    Box box = cfg.parse_box(cmd.at("box"), order->degree());
    std::string expect = window_stamp_hex(family, L, box);
    return parse_window_cache(read_file(path), expect);
  }
  Box box = cfg.parse_box(cmd.at("box"), order->degree());
  return sieve_window(family, box, L, effective_threads(opt, cfg), cfg.point_budget());
}

int cmd_scan(const CliOptions& opt) {
  RunConfig cfg = load_config(opt);
  Report report("scan", cfg);
  OrderHandle order = cfg.build_order();
  BFamily family = cfg.build_family(order);
  size_t L = cfg.resolve_truncation(family);
  const Json& cmd = cfg.section("scan");
  Window w = obtain_window(cfg, cmd, opt, order, family, L);
  std::vector<i64> shape = cmd.at("shape_lengths").get<std::vector<i64>>();
  ZeroScan scan = zero_window_scan(w, shape);
  Json& res = report.results();
  res["box"] = box_json(w.box());
  res["shape_lengths"] = shape;
  res["interior_positions"] = scan.interior_count;
  res["occurrences"] = scan.positions.size();
  res["max_axis_gap"] = scan.max_axis_gap;
  const size_t cap = 10000;
  Json pos = Json::array();
  for (size_t i = 0; i < scan.positions.size() && i < cap; ++i) pos.push_back(scan.positions[i]);
  res["positions"] = std::move(pos);
  res["positions_truncated"] = scan.positions.size() > cap;
  if (!scan.positions.empty()) res["first_position"] = scan.positions.front();
  std::cout << "scan: " << scan.positions.size() << " all-zero windows\n";
  emit(report, opt, "scan");
  return 0;
}

int cmd_fibers(const CliOptions& opt) {
  RunConfig cfg = load_config(opt);
  Report report("fibers", cfg);
  OrderHandle order = cfg.build_order();
  BFamily family = cfg.build_family(order);
  size_t L = cfg.resolve_truncation(family);
  const Json& cmd = cfg.section("fibers");
  Window w = obtain_window(cfg, cmd, opt, order, family, L);
  std::string mode = cmd.value("mode", "theta");
  require(mode == "theta" || mode == "joining", errc::config_parse, "fibers mode must be theta or joining");
  FiberReport fr = mode == "theta" ? theta_window(w, family, L) : joining_fiber(w, family, L);
  Json& res = report.results();
  res["mode"] = mode;
  res["box"] = box_json(w.box());
  res["truncation_L"] = L;
  res["all_singletons"] = fr.all_singletons();
  Json levels = Json::array();
  for (size_t l = 0; l < fr.levels.size(); ++l) levels.push_back(fiber_level_json(family, l, fr.levels[l]));
  res["levels"] = std::move(levels);
  if (mode == "theta" && fr.all_singletons()) {
    bool holds = check_phi_theta(w, family, L);
    res["phi_theta_upper_bound_holds"] = holds;
  }
  std::cout << "fibers: " << (fr.all_singletons() ? "all levels single-valued" : "set-valued levels present")
            << "\n";
  emit(report, opt, "fibers");
  return 0;
}

int cmd_factor(const CliOptions& opt) {
  RunConfig cfg = load_config(opt);
  Report report("factor", cfg);
  OrderHandle order = cfg.build_order();
  const Json& cmd = cfg.section("factor");
  bool maximal = cfg.raw().value("assert_maximal", false);
  std::vector<i64> primes;
  if (cmd.contains("primes"))
    primes = cmd.at("primes").get<std::vector<i64>>();
  else if (cmd.contains("primes_up_to"))
    primes = primes_up_to(cmd.at("primes_up_to").get<i64>());
  else
    fail(errc::config_parse, "\"factor\" needs \"primes\" or \"primes_up_to\"");
  Json& res = report.results();
  res["field"] = cfg.raw().at("field");
  res["discriminant"] = order->discriminant().get_str();
  Json table = Json::array();
  for (i64 p : primes) {
    Json row;
    row["p"] = p;
    try {
      auto fs = factor_rational_prime(order, p, maximal);
      Json ideals = Json::array();
      for (auto& pf : fs) {
        RingElement gen(order, std::vector<i64>(static_cast<size_t>(order->degree()), 0));
        std::string gen_str;
        {
          std::string s;
          for (size_t i = 0; i < pf.gen_poly.size(); ++i) {
            if (pf.gen_poly[i] == 0) continue;
            if (!s.empty()) s += "+";
            s += std::to_string(pf.gen_poly[i]);
            if (i >= 1) s += "*theta";
            if (i >= 2) s += "^" + std::to_string(i);
          }
          gen_str = s.empty() ? "0" : s;
        }
        ideals.push_back(Json{{"norm", pf.ideal.norm().get_str()},
                              {"e", pf.ramification},
                              {"f", pf.residue_degree},
                              {"generator", "(" + std::to_string(p) + ", " + gen_str + ")"},
                              {"basis", pf.ideal.raw_basis()}});
      }
      row["ideals"] = std::move(ideals);
    } catch (const Error& e) {
      if (e.code() != errc::unsafe_prime) throw;
      row["skipped"] = "unsafe prime (p^2 | disc, maximality not asserted)";
    }
    table.push_back(std::move(row));
  }
  res["table"] = std::move(table);
  std::cout << "factor: " << primes.size() << " primes processed\n";
  emit(report, opt, "factor");
  return 0;
}

int cmd_selfcheck(const CliOptions& opt) {
  u64 seed = 1;
  RunConfig cfg = RunConfig::parse_text("{}");
  if (!opt.config_path.empty()) {
    cfg = load_config(opt);
    seed = effective_seed(opt, cfg);
  } else if (opt.seed >= 0) {
    seed = static_cast<u64>(opt.seed);
  }
  bool ok = run_selfcheck(std::cout, seed);
  std::cout << (ok ? "selfcheck passed" : "selfcheck FAILED") << "\n";
  return ok ? 0 : 1;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case errc::config_parse:
    case errc::invalid_argument:
    case errc::not_monic:
    case errc::reducible:
    case errc::degree_too_large:
    case errc::not_coprime:
    case errc::not_prime:
    case errc::unsafe_prime:
    case errc::empty_family:
    case errc::not_disjoint:
      return 2;
    case errc::budget_exceeded:
    case errc::size_overflow:
    case errc::overflow:
      return 3;
    case errc::cache_mismatch:
      return 4;
    default:
      return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"computations with B-free integers in number fields"};
  app.require_subcommand(1);
  CliOptions opt;
  app.add_option("--config", opt.config_path, "path to the JSON run configuration");
  app.add_option("--out", opt.out_dir, "directory for reports (JSON/CSV)");
  app.add_option("--cache", opt.cache_dir, "directory for window caches");
  app.add_option("--threads", opt.threads, "worker threads (overrides config)");
  app.add_option("--seed", opt.seed, "RNG seed for randomized suites (overrides config)");

  int (*handler)(const CliOptions&) = nullptr;
  for (auto [name, desc, fn] : {
           std::tuple{"density", "exact B-free density with truncation interval, optionally empirical", &cmd_density},
           std::tuple{"cylinder", "exact cylinder measures vs empirical frequencies", &cmd_cylinder},
           std::tuple{"entropy", "pattern counts, entropy estimates and the product formula", &cmd_entropy},
           std::tuple{"sieve", "generate a window and optionally cache it", &cmd_sieve},
           std::tuple{"scan", "all-zero window scan with gap statistics", &cmd_scan},
           std::tuple{"fibers", "theta / joining fiber reports", &cmd_fibers},
           std::tuple{"factor", "rational prime factorization table", &cmd_factor},
           std::tuple{"selfcheck", "run the built-in invariant suites", &cmd_selfcheck},
       }) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->callback([&handler, fn] { handler = fn; });
  }

  CLI11_PARSE(app, argc, argv);
  try {
    return handler(opt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

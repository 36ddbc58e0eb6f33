#pragma once

// Experiment configuration (JSON, versioned) and the sweep driver that turns
// it into an ordered list of InequalityReports.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "weinlab/errors.hpp"
#include "weinlab/functions.hpp"
#include "weinlab/inequalities.hpp"
#include "weinlab/random.hpp"
#include "weinlab/sets.hpp"

namespace weinlab {

inline constexpr int kSchemaVersion = 1;

enum class ReportFormat { json, csv };

inline std::string to_string(ReportFormat f) { return f == ReportFormat::json ? "json" : "csv"; }

inline std::optional<ReportFormat> parse_report_format(const std::string& s) {
  if (s == "json") return ReportFormat::json;
  if (s == "csv") return ReportFormat::csv;
  return std::nullopt;
}

struct LemmaSweep {
  std::vector<double> p{1.5, 2.0};
  std::vector<double> s{0.25, 0.5};
  std::vector<double> z{0.25, 1.0, 4.0};
  bool operator==(const LemmaSweep&) const = default;
};

struct ThmASweep {
  std::vector<double> p{1.5, 2.0};
  std::vector<double> s{0.5, 0.75};
  std::vector<double> t{0.5, 1.0, 2.0};
  std::vector<double> split_t{1.5, 2.0, 3.0};      // eps-split sub-check
  std::vector<double> split_eps{0.25, 1.0, 4.0};   // plus the optimal eps
  bool operator==(const ThmASweep&) const = default;
};

struct ConcentrationSweep {
  std::vector<double> p{1.25, 1.5, 2.0};
  std::vector<std::string> omega{"ball(2)", "box(1.5)", "annulus(0.5,2.5)"};
  std::vector<std::string> sigma{"ball(3)", "box(2.5)", "annulus(0.5,3.5)"};
  bool prop49_p1 = true;  // also run the p = 1 extension of Prop49 / Thm410 / ThmD
  bool operator==(const ConcentrationSweep&) const = default;
};

struct ExperimentConfig {
  int schema_version = kSchemaVersion;
  int d = 1;
  std::vector<double> alpha{0.0, 0.5, 1.0};
  GridSpec grid{};
  std::uint64_t seed = 1;
  std::vector<std::string> functions{"gaussian(1)"};
  std::vector<InequalityId> inequalities{std::begin(kAllInequalities), std::end(kAllInequalities)};
  std::vector<double> hy_p{1.25, 1.5, 2.0};
  LemmaSweep lemma31{};
  ThmASweep thmA{};
  ConcentrationSweep concentration{};
  double tol = 1e-6;
  double bandlimit_certification = 0.1;
  std::string out_dir = "reports";
  ReportFormat format = ReportFormat::json;
  double rhs_scale = 1.0;  // debug: != 1 forces failures

  bool operator==(const ExperimentConfig&) const = default;

  /// Checks every downstream precondition; throws ConfigError naming the key.
  void validate() const;
};

// ---------------------------------------------------------------------------
// JSON reading with key-path diagnostics

namespace detail {

using nlohmann::json;

class ConfigReader {
 public:
  ConfigReader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  /// Rejects keys that were never read (catches typos).
  void finish() const {
    for (const auto& [key, value] : node_.items()) {
      if (!seen_.count(key)) throw ConfigError(child(key), "unknown key");
    }
  }

  bool has(const std::string& key) const { return node_.contains(key); }

  ConfigReader object(const std::string& key) {
    seen_.insert(key);
    return ConfigReader(node_.at(key), child(key));
  }

  template <class T>
  void read(const std::string& key, T& out) {
    if (!node_.contains(key)) return;
    seen_.insert(key);
    out = convert<T>(node_.at(key), child(key));
  }

  template <class T>
  void read_list(const std::string& key, std::vector<T>& out) {
    if (!node_.contains(key)) return;
    seen_.insert(key);
    const json& v = node_.at(key);
    if (!v.is_array()) throw ConfigError(child(key), "expected a list");
    out.clear();
    for (std::size_t i = 0; i < v.size(); ++i) {
      out.push_back(convert<T>(v[i], child(key) + "[" + std::to_string(i) + "]"));
    }
  }

  std::string child(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

 private:
  template <class T>
  static T convert(const json& v, const std::string& where) {
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw ConfigError(where, "expected true or false");
      return v.get<bool>();
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw ConfigError(where, "expected a string");
      return v.get<std::string>();
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) throw ConfigError(where, "expected an integer");
      if constexpr (std::is_unsigned_v<T>) {
        if (v.is_number_unsigned()) return v.get<T>();
        if (v.get<long long>() < 0) throw ConfigError(where, "expected a non-negative integer");
      }
      return v.get<T>();
    } else {
      if (!v.is_number()) throw ConfigError(where, "expected a number");
      return v.get<T>();
    }
  }

  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};


}  // namespace detail

inline ExperimentConfig config_from_json(const nlohmann::json& root) {
  ExperimentConfig c;
  detail::ConfigReader top(root, "");
  if (!top.has("schema_version")) throw ConfigError("schema_version", "missing");
  top.read("schema_version", c.schema_version);
  if (c.schema_version != kSchemaVersion) {
    throw ConfigError("schema_version", "unsupported version " + std::to_string(c.schema_version) +
                                            " (expected " + std::to_string(kSchemaVersion) + ")");
  }
  if (top.has("params")) {
    auto r = top.object("params");
    r.read("d", c.d);
    r.read_list("alpha", c.alpha);
    r.finish();
  }
  if (top.has("grid")) {
    auto r = top.object("grid");
    r.read("euclid_extent", c.grid.euclid_extent);
    r.read("euclid_points", c.grid.euclid_points);
    r.read("radial_extent", c.grid.radial_extent);
    r.read("radial_points", c.grid.radial_points);
    std::string rule = to_string(c.grid.radial_rule);
    r.read("radial_rule", rule);
    try {
      c.grid.radial_rule = parse_radial_rule(rule);
    } catch (const std::exception& e) {
      throw ConfigError(r.child("radial_rule"), e.what());
    }
    r.finish();
  }
  if (top.has("ensemble")) {
    auto r = top.object("ensemble");
    r.read("seed", c.seed);
    r.read_list("functions", c.functions);
    r.finish();
  }
  if (top.has("inequalities")) {
    std::vector<std::string> names;
    top.read_list("inequalities", names);
    c.inequalities.clear();
    for (std::size_t i = 0; i < names.size(); ++i) {
      auto id = parse_inequality_id(names[i]);
      if (!id) {
        throw ConfigError("inequalities[" + std::to_string(i) + "]",
                          "unknown inequality '" + names[i] + "'");
      }
      c.inequalities.push_back(*id);
    }
  }
  if (top.has("sweep")) {
    auto sweep = top.object("sweep");
    if (sweep.has("hausdorff_young")) {
      auto r = sweep.object("hausdorff_young");
      r.read_list("p", c.hy_p);
      r.finish();
    }
    if (sweep.has("lemma31")) {
      auto r = sweep.object("lemma31");
      r.read_list("p", c.lemma31.p);
      r.read_list("s", c.lemma31.s);
      r.read_list("z", c.lemma31.z);
      r.finish();
    }
    if (sweep.has("thmA")) {
      auto r = sweep.object("thmA");
      r.read_list("p", c.thmA.p);
      r.read_list("s", c.thmA.s);
      r.read_list("t", c.thmA.t);
      r.read_list("split_t", c.thmA.split_t);
      r.read_list("split_eps", c.thmA.split_eps);
      r.finish();
    }
    if (sweep.has("concentration")) {
      auto r = sweep.object("concentration");
      r.read_list("p", c.concentration.p);
      r.read_list("omega", c.concentration.omega);
      r.read_list("sigma", c.concentration.sigma);
      r.read("prop49_p1", c.concentration.prop49_p1);
      r.finish();
    }
    sweep.finish();
  }
  if (top.has("tolerances")) {
    auto r = top.object("tolerances");
    r.read("base", c.tol);
    r.read("bandlimit_certification", c.bandlimit_certification);
    r.finish();
  }
  if (top.has("output")) {
    auto r = top.object("output");
    r.read("dir", c.out_dir);
    std::string fmt = to_string(c.format);
    r.read("format", fmt);
    auto parsed = parse_report_format(fmt);
    if (!parsed) throw ConfigError(r.child("format"), "expected 'json' or 'csv'");
    c.format = *parsed;
    r.finish();
  }
  if (top.has("debug")) {
    auto r = top.object("debug");
    r.read("rhs_scale", c.rhs_scale);
    r.finish();
  }
  top.finish();
  c.validate();
  return c;
}

/// Full serialization; with `include_output` false the output section is
/// omitted (used when echoing the config into report files).
inline nlohmann::ordered_json config_to_json(const ExperimentConfig& c, bool include_output = true) {
  nlohmann::ordered_json j;
  j["schema_version"] = c.schema_version;
  j["params"] = {{"d", c.d}, {"alpha", c.alpha}};
  j["grid"] = {{"euclid_extent", c.grid.euclid_extent},
               {"euclid_points", c.grid.euclid_points},
               {"radial_extent", c.grid.radial_extent},
               {"radial_points", c.grid.radial_points},
               {"radial_rule", to_string(c.grid.radial_rule)}};
  j["ensemble"] = {{"seed", c.seed}, {"functions", c.functions}};
  std::vector<std::string> ids;
  for (InequalityId id : c.inequalities) ids.push_back(to_string(id));
  j["inequalities"] = ids;
  j["sweep"]["hausdorff_young"] = {{"p", c.hy_p}};
  j["sweep"]["lemma31"] = {{"p", c.lemma31.p}, {"s", c.lemma31.s}, {"z", c.lemma31.z}};
  j["sweep"]["thmA"] = {{"p", c.thmA.p},
                        {"s", c.thmA.s},
                        {"t", c.thmA.t},
                        {"split_t", c.thmA.split_t},
                        {"split_eps", c.thmA.split_eps}};
  j["sweep"]["concentration"] = {{"p", c.concentration.p},
                                 {"omega", c.concentration.omega},
                                 {"sigma", c.concentration.sigma},
                                 {"prop49_p1", c.concentration.prop49_p1}};
  j["tolerances"] = {{"base", c.tol}, {"bandlimit_certification", c.bandlimit_certification}};
  if (include_output) j["output"] = {{"dir", c.out_dir}, {"format", to_string(c.format)}};
  if (c.rhs_scale != 1.0) j["debug"] = {{"rhs_scale", c.rhs_scale}};
  return j;
}

inline ExperimentConfig parse_config(const std::string& text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  return config_from_json(root);
}

inline ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return parse_config(text);
  } catch (const ConfigError& e) {
    throw ConfigError(e.where(), e.message() + " (in " + path.string() + ")");
  }
}

inline void ExperimentConfig::validate() const {
  auto indexed = [](const std::string& key, std::size_t i) {
    return key + "[" + std::to_string(i) + "]";
  };
  auto exponents = [&](const std::string& key, const std::vector<double>& ps, bool allow_one) {
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const double p = ps[i];
      const bool ok = allow_one ? (p >= 1.0 && p <= 2.0) : (p > 1.0 && p <= 2.0);
      if (!ok) {
        throw ConfigError(indexed(key, i), "p = " + format_number(p) + " outside " +
                                               (allow_one ? "[1, 2]" : "(1, 2]"));
      }
    }
  };
  auto positive = [&](const std::string& key, const std::vector<double>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!(v[i] > 0.0) || !std::isfinite(v[i])) {
        throw ConfigError(indexed(key, i), "must be positive and finite");
      }
    }
  };

  if (d < 1) throw ConfigError("params.d", "d must be >= 1");
  if (alpha.empty()) throw ConfigError("params.alpha", "at least one alpha required");
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (!(alpha[i] > -0.5)) throw ConfigError(indexed("params.alpha", i), "alpha must exceed -1/2");
  }
  try {
    grid.validate();
  } catch (const std::exception& e) {
    throw ConfigError("grid", e.what());
  }
  for (std::size_t i = 0; i < functions.size(); ++i) {
    try {
      FunctionSpec::parse(functions[i]);
    } catch (const std::exception& e) {
      throw ConfigError(indexed("ensemble.functions", i), e.what());
    }
  }
  exponents("sweep.hausdorff_young.p", hy_p, false);
  exponents("sweep.lemma31.p", lemma31.p, false);
  exponents("sweep.thmA.p", thmA.p, false);
  exponents("sweep.concentration.p", concentration.p, false);
  positive("sweep.lemma31.z", lemma31.z);
  positive("sweep.thmA.t", thmA.t);
  positive("sweep.thmA.split_eps", thmA.split_eps);
  for (std::size_t i = 0; i < thmA.split_t.size(); ++i) {
    if (!(thmA.split_t[i] >= 1.0)) throw ConfigError(indexed("sweep.thmA.split_t", i), "t must be >= 1");
  }

  // 0 < s < (2 alpha + d + 2)/q for every alpha and p combination.
  auto moments = [&](const std::string& key, const std::vector<double>& ss,
                     const std::vector<double>& ps) {
    for (std::size_t i = 0; i < ss.size(); ++i) {
      for (double a : alpha) {
        for (double p : ps) {
          const double q = conjugate_exponent(p);
          const double upper = (2.0 * a + d + 2.0) / q;
          if (!(ss[i] > 0.0 && ss[i] < upper)) {
            throw ConfigError(indexed(key, i),
                              "s = " + format_number(ss[i]) + " violates 0 < s < (2*alpha+d+2)/q = " +
                                  format_number(upper) + " at alpha = " + format_number(a) +
                                  ", p = " + format_number(p));
          }
        }
      }
    }
  };
  moments("sweep.lemma31.s", lemma31.s, lemma31.p);
  moments("sweep.thmA.s", thmA.s, thmA.p);

  auto sets = [&](const std::string& key, const std::vector<std::string>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      try {
        SetSpec::parse(v[i]);
      } catch (const std::exception& e) {
        throw ConfigError(indexed(key, i), e.what());
      }
    }
  };
  sets("sweep.concentration.omega", concentration.omega);
  sets("sweep.concentration.sigma", concentration.sigma);

  if (!(tol >= 0.0)) throw ConfigError("tolerances.base", "must be >= 0");
  if (!(bandlimit_certification > 0.0)) {
    throw ConfigError("tolerances.bandlimit_certification", "must be positive");
  }
  if (!(rhs_scale > 0.0)) throw ConfigError("debug.rhs_scale", "must be positive");
}

// ---------------------------------------------------------------------------
// Sweep

/// Discretization allowance of a grid: relative L2 round-trip error of a
/// unit Gaussian plus the excess of the radial operator norm over 1.
inline double grid_round_trip_error(const GridPtr& grid) {
  const auto tr = transform_for(grid);
  const GridFunction probe = make_function("gaussian(1)", grid);
  const GridFunction back = tr->inverse(tr->forward(probe));
  const double rt = lp_norm(back - probe, 2.0) / lp_norm(probe, 2.0);
  return rt + std::max(0.0, tr->radial_operator_norm() - 1.0);
}

struct InequalitySummary {
  InequalityId id{};
  std::size_t total = 0;
  std::size_t checked = 0;
  std::size_t passed = 0;
  std::size_t skipped = 0;
  std::size_t informational = 0;
  double max_slack = 0.0;
  std::optional<double> sup_k_emp;  // ThmA only

  double pass_rate() const { return checked == 0 ? 1.0 : static_cast<double>(passed) / checked; }
};

struct SweepResult {
  std::vector<InequalityReport> reports;
  std::vector<InequalitySummary> summary;  // in kAllInequalities order, only ids present

  bool all_passed() const {
    return std::all_of(reports.begin(), reports.end(), [](const InequalityReport& r) {
      return r.status != ReportStatus::checked || r.passed;
    });
  }
};

inline std::vector<InequalitySummary> summarize(const std::vector<InequalityReport>& reports) {
  std::map<InequalityId, InequalitySummary> by_id;
  for (const auto& r : reports) {
    auto& s = by_id[r.id];
    s.id = r.id;
    ++s.total;
    switch (r.status) {
      case ReportStatus::checked:
        ++s.checked;
        if (r.passed) ++s.passed;
        s.max_slack = std::max(s.max_slack, r.slack);
        if (r.k_emp) s.sup_k_emp = std::max(s.sup_k_emp.value_or(0.0), *r.k_emp);
        break;
      case ReportStatus::skipped: ++s.skipped; break;
      case ReportStatus::informational: ++s.informational; break;
    }
  }
  std::vector<InequalitySummary> out;
  for (InequalityId id : kAllInequalities) {
    if (auto it = by_id.find(id); it != by_id.end()) out.push_back(it->second);
  }
  return out;
}

namespace detail {

struct AlphaContext {
  GridPtr space;
  GridPtr frequency;
  double allowance = 0.0;
  std::vector<SpatialSet> omega;
  std::vector<SpectralSet> sigma;
};

inline std::vector<double> with_p1(std::vector<double> ps, bool add) {
  if (add && std::find(ps.begin(), ps.end(), 1.0) == ps.end()) ps.insert(ps.begin(), 1.0);
  return ps;
}

inline bool selected(const ExperimentConfig& c, InequalityId id) {
  return std::find(c.inequalities.begin(), c.inequalities.end(), id) != c.inequalities.end();
}

inline void append(std::vector<InequalityReport>& out, std::vector<InequalityReport> more) {
  for (auto& r : more) out.push_back(std::move(r));
}

/// Every report for one (alpha, function) pair, in the fixed order
/// inequality -> parameters.
inline std::vector<InequalityReport> run_one(const ExperimentConfig& c, const AlphaContext& ac,
                                             const std::string& fn_spec, std::uint64_t seed) {
  const FunctionSpec spec = FunctionSpec::parse(fn_spec);
  GridFunction g = spec.generate(ac.space, seed);
  std::vector<InequalityReport> out;
  if (g.is_zero()) return out;
  const Sampled in(std::move(g));
  const GridFunction& f = in.f;

  CheckContext ctx;
  ctx.function_id = spec.to_string();
  ctx.tol = c.tol + ac.allowance;
  ctx.rhs_scale = c.rhs_scale;
  ctx.bandlimit_certification = c.bandlimit_certification;
  const auto& con = c.concentration;

  // Q_Sigma f per Sigma, shared by Thm410/ThmD (witness) and Prop49 (candidate).
  std::vector<std::optional<GridFunction>> witnesses(ac.sigma.size());
  auto witness = [&](std::size_t k) -> const GridFunction& {
    if (!witnesses[k]) witnesses[k].emplace(inverse(restrict_to(in.spectrum, ac.sigma[k])));
    return *witnesses[k];
  };
  // Thm410 and ThmD come out of one evaluation; ThmD reports wait here.
  std::vector<InequalityReport> deferred_d;
  bool pairs_done = false;
  auto run_pairs = [&] {
    if (pairs_done) return;
    pairs_done = true;
    const bool want_410 = selected(c, InequalityId::Thm410);
    for (double p : with_p1(con.p, con.prop49_p1))
      for (const auto& om : ac.omega)
        for (std::size_t k = 0; k < ac.sigma.size(); ++k) {
          auto pair = check_thm410_and_D(f, witness(k), om, ac.sigma[k], p, ctx);
          if (want_410) out.push_back(std::move(pair.first));
          deferred_d.push_back(std::move(pair.second));
        }
  };

  for (InequalityId id : kAllInequalities) {
    if (!selected(c, id)) continue;
    switch (id) {
      case InequalityId::HPW_classic:
        out.push_back(check_hpw_classic(in, ctx));
        break;
      case InequalityId::Lemma31:
        for (double p : c.lemma31.p)
          for (double s : c.lemma31.s)
            for (double z : c.lemma31.z) append(out, check_lemma31(in, p, s, z, ctx));
        break;
      case InequalityId::ThmA:
        for (double p : c.thmA.p)
          for (double s : c.thmA.s)
            for (double t : c.thmA.t) out.push_back(check_thmA(in, p, s, t, ctx));
        for (double p : c.thmA.p)
          for (double t : c.thmA.split_t) {
            for (double eps : c.thmA.split_eps) out.push_back(check_eps_split(in, p, t, eps, ctx));
            auto r = check_eps_split(in, p, t, optimal_split_eps(in, p, t), ctx);
            r.variant = "eps_split_optimal";
            out.push_back(std::move(r));
          }
        break;
      case InequalityId::HausdorffYoung:
        for (double p : c.hy_p) out.push_back(check_hausdorff_young(in, p, ctx));
        break;
      case InequalityId::Thm44:
        for (double p : con.p)
          for (const auto& om : ac.omega)
            for (const auto& sg : ac.sigma) out.push_back(check_thm44(f, om, sg, p, ctx));
        break;
      case InequalityId::ThmB:
        for (double p : con.p)
          for (const auto& om : ac.omega)
            for (const auto& sg : ac.sigma) append(out, check_thmB(in, om, sg, p, ctx));
        break;
      case InequalityId::ThmC:
        for (double p : con.p)
          for (const auto& om : ac.omega)
            for (const auto& sg : ac.sigma) append(out, check_thmC(in, om, sg, p, ctx));
        break;
      case InequalityId::Prop49:
        for (std::size_t k = 0; k < ac.sigma.size(); ++k) {
          const BandlimitedCandidate cand(witness(k), ac.sigma[k]);
          for (double p : with_p1(con.p, con.prop49_p1))
            for (const auto& om : ac.omega) out.push_back(check_prop49(cand, om, ac.sigma[k], p, ctx));
        }
        break;
      case InequalityId::Thm410:
        run_pairs();
        break;
      case InequalityId::ThmD:
        run_pairs();
        append(out, std::move(deferred_d));
        deferred_d.clear();
        break;
    }
  }
  return out;
}

}  // namespace detail

/// Runs the Cartesian product alpha x function x inequality x parameters.
/// Work items (alpha, function) run on `threads` workers; the merged list
/// keeps that order, so the result does not depend on the thread count.
inline SweepResult run_sweep(const ExperimentConfig& config, unsigned threads = 1) {
  config.validate();
  std::vector<detail::AlphaContext> contexts;
  for (double a : config.alpha) {
    detail::AlphaContext ac;
    ac.space = TensorGrid::build(WeinsteinParams{config.d, a}, config.grid, Domain::space);
    ac.frequency = transform_for(ac.space)->frequency_grid();
    ac.allowance = grid_round_trip_error(ac.space);
    for (const auto& s : config.concentration.omega)
      ac.omega.push_back(make_set<Domain::space>(s, ac.space));
    for (const auto& s : config.concentration.sigma)
      ac.sigma.push_back(make_set<Domain::frequency>(s, ac.frequency));
    contexts.push_back(std::move(ac));
  }

  const std::size_t nf = config.functions.size();
  const std::size_t items = contexts.size() * nf;
  std::vector<std::vector<InequalityReport>> results(items);
  std::vector<std::exception_ptr> errors(items);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < items; k = next++) {
      try {
        const std::size_t fi = k % nf;
        results[k] = detail::run_one(config, contexts[k / nf], config.functions[fi],
                                     derive_seed(config.seed, fi));
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(items, 1))));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  SweepResult out;
  for (auto& chunk : results) detail::append(out.reports, std::move(chunk));
  out.summary = summarize(out.reports);
  return out;
}

}  // namespace weinlab

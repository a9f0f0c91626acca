#include "vinotab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iomanip>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "vinotab/io.hpp"
#include "vinotab/parallel.hpp"
#include "vinotab/verify.hpp"

namespace vinotab {

namespace {

constexpr int kMaxDegree = 10000;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CatalogRefused : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::optional<std::string> format;
  int places = 3;
  std::optional<std::string> cache_dir;
  bool no_cache = false;
  double budget = kDefaultStateBudget;
  int max_catalog_k = 400;
  std::string parity = "all";
};

struct Context {
  Options opt;
  std::ostream& out;
  std::ostream& err;

  std::string format(const char* fallback = "markdown") const { return opt.format.value_or(fallback); }

  CatalogCache cache() const {
    if (opt.no_cache) return CatalogCache({});
    return CatalogCache(CatalogCache::default_dir(opt.cache_dir));
  }

  SourceSet sources() const {
    try {
      return SourceSet::parse(opt.parity);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }

  std::string dec(const Rational& v) const { return v.decimal_ceil(opt.places); }

  std::map<int, ExponentTable> catalogs(const std::set<int>& degrees) const {
    for (int k : degrees) {
      if (k > opt.max_catalog_k) {
        throw CatalogRefused("catalog for k = " + std::to_string(k) + " exceeds --max-catalog-k " +
                             std::to_string(opt.max_catalog_k));
      }
    }
    return catalogs_for(degrees, cache(), sources());
  }
};

std::vector<int> parse_range(const std::string& text, int lowest = 3) {
  int lo = 0;
  int hi = 0;
  try {
    const auto dots = text.find("..");
    std::size_t used = 0;
    if (dots == std::string::npos) {
      lo = hi = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
    } else {
      lo = std::stoi(text.substr(0, dots), &used);
      if (used != dots) throw std::invalid_argument(text);
      const std::string tail = text.substr(dots + 2);
      hi = std::stoi(tail, &used);
      if (used != tail.size()) throw std::invalid_argument(text);
    }
  } catch (const std::logic_error&) {
    throw UsageError("invalid degree range '" + text + "' (expected K or A..B)");
  }
  if (lo > hi) throw UsageError("empty degree range '" + text + "'");
  if (lo < lowest || hi > kMaxDegree) {
    throw UsageError("degrees must lie in [" + std::to_string(lowest) + ", " + std::to_string(kMaxDegree) +
                     "], got '" + text + "'");
  }
  std::vector<int> ks;
  for (int k = lo; k <= hi; ++k) ks.push_back(k);
  return ks;
}

/// One record per row. Markdown with `by_column` set puts each record in a
/// column instead, with the first field ("k") as the header row.
struct Grid {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  bool by_column = false;
};

std::string csv_field(const std::string& v) {
  if (v.find_first_of(",\"\n") == std::string::npos) return v;
  std::string quoted = "\"";
  for (char c : v) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

void md_row(std::ostream& out, const std::vector<std::string>& cells) {
  out << "|";
  for (const auto& c : cells) out << " " << c << " |";
  out << "\n";
}

void render(const Grid& g, const std::string& format, std::ostream& out) {
  if (format == "csv") {
    for (std::size_t i = 0; i < g.columns.size(); ++i) out << (i ? "," : "") << csv_field(g.columns[i]);
    out << "\n";
    for (const auto& row : g.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
      out << "\n";
    }
    return;
  }
  if (!g.by_column) {
    md_row(out, g.columns);
    md_row(out, std::vector<std::string>(g.columns.size(), "---"));
    for (const auto& row : g.rows) md_row(out, row);
    return;
  }
  for (std::size_t c = 0; c < g.columns.size(); ++c) {
    std::vector<std::string> line{g.columns[c]};
    for (const auto& row : g.rows) line.push_back(row[c]);
    md_row(out, line);
    if (c == 0) md_row(out, std::vector<std::string>(line.size(), "---"));
  }
}

void emit_json(const Json& j, std::ostream& out) { out << j.dump(2) << "\n"; }

int cmd_catalog(const Context& ctx, int k) {
  if (k < 3) throw UsageError("catalog needs k >= 3");
  if (k > kMaxDegree) throw UsageError("k must be at most " + std::to_string(kMaxDegree));
  if (k > ctx.opt.max_catalog_k) {
    throw CatalogRefused("catalog for k = " + std::to_string(k) + " exceeds --max-catalog-k " +
                         std::to_string(ctx.opt.max_catalog_k));
  }
  const ExponentTable table = ctx.cache().get(k, ctx.sources());
  if (ctx.format() == "json") {
    emit_json(catalog_to_json(table), ctx.out);
    return kExitOk;
  }
  Grid g{{"s", "delta", "exact", "source"}, {}, false};
  for (const auto& e : table.entries()) {
    g.rows.push_back({std::to_string(e.s), ctx.dec(e.delta), e.delta.str(), e.source.str()});
  }
  render(g, ctx.format(), ctx.out);
  return kExitOk;
}

int cmd_waring(const Context& ctx, const std::vector<int>& ks) {
  std::set<int> degrees;
  for (int k : ks) {
    degrees.insert(k);
    if (k > 3) degrees.insert(k - 1);
  }
  const auto tables = ctx.catalogs(degrees);
  const auto results = parallel_map(ks, [&tables](int k) {
    return threshold_bounds(tables.at(k), k > 3 ? &tables.at(k - 1) : nullptr);
  });
  if (ctx.format() == "json") {
    Json arr = Json::array();
    for (const auto& r : results) {
      Json j{{"k", r.hua_route.k},
             {"s1", report_to_json(r.hua_route)},
             {"gtilde", report_to_json(r.gtilde)},
             {"gtilde_plus", report_to_json(r.gtilde_plus)}};
      if (r.mixed_route) j["u1"] = report_to_json(*r.mixed_route);
      arr.push_back(std::move(j));
    }
    emit_json(arr, ctx.out);
    return kExitOk;
  }
  Grid g{{"k", "s1", "u1", "G~ bound", "G~+ bound"}, {}, true};
  for (const auto& r : results) {
    g.rows.push_back({std::to_string(r.hua_route.k), ctx.dec(r.hua_route.value),
                      r.mixed_route ? ctx.dec(r.mixed_route->value) : "-", r.gtilde.value.str(),
                      r.gtilde_plus.value.str()});
  }
  render(g, ctx.format(), ctx.out);
  return kExitOk;
}

int cmd_weyl(const Context& ctx, const std::vector<int>& ks) {
  std::set<int> degrees;
  for (int k : ks) {
    if (k - 1 <= ctx.opt.max_catalog_k) degrees.insert(k - 1);
    if (k >= 9 && k <= ctx.opt.max_catalog_k) degrees.insert(k);
  }
  const auto tables = ctx.catalogs(degrees);
  auto table = [&tables](int k) -> const ExponentTable* {
    const auto it = tables.find(k);
    return it == tables.end() ? nullptr : &it->second;
  };
  struct Row {
    int k;
    DirectWeyl direct;
    std::optional<WeylReport> bw;
    std::optional<WeylReport> large;
  };
  const auto rows = parallel_map(ks, [&table](int k) {
    Row r{k, weyl_direct(k), std::nullopt, std::nullopt};
    if (const ExponentTable* tkm1 = table(k - 1)) r.bw = sigma_bw(k, *tkm1);
    if (k >= 9) r.large = weyl_large_k(k, table(k - 1), table(k));
    return r;
  });
  if (ctx.format() == "json") {
    Json arr = Json::array();
    for (const auto& r : rows) {
      Json j{{"k", r.k},
             {"direct", {{"sigma_inverse", r.direct.sigma_inverse}, {"tau_inverse", r.direct.tau_inverse}}}};
      if (r.bw) j["sigma_bw"] = weyl_to_json(*r.bw);
      if (r.large) j["large_k"] = weyl_to_json(*r.large);
      arr.push_back(std::move(j));
    }
    emit_json(arr, ctx.out);
    return kExitOk;
  }
  Grid g{{"k", "1/sigma direct", "1/tau direct", "Sigma1", "1/sigma large-k"}, {}, true};
  for (const auto& r : rows) {
    g.rows.push_back({std::to_string(r.k), std::to_string(r.direct.sigma_inverse),
                      std::to_string(r.direct.tau_inverse), r.bw ? ctx.dec(r.bw->sigma_inverse()) : "-",
                      r.large ? ctx.dec(r.large->sigma_inverse()) : "-"});
  }
  render(g, ctx.format(), ctx.out);
  return kExitOk;
}

int cmd_constants(const Context& ctx, int digits) {
  if (digits < 1 || digits > 50) throw UsageError("--digits must lie in [1, 50]");
  const LargeDegreeConstants c = large_degree_constants(digits);
  if (ctx.format() == "json") {
    emit_json(Json{{"digits", digits},
                   {"xi", c.xi},
                   {"C", c.C},
                   {"xi_low", rational_to_json(c.xi_low)},
                   {"xi_high", rational_to_json(c.xi_high)},
                   {"residual", c.residual.decimal_ceil(30)}},
              ctx.out);
    return kExitOk;
  }
  Grid g{{"constant", "value"}, {{"xi", c.xi}, {"C", c.C}, {"residual", c.residual.decimal_ceil(30)}}, false};
  render(g, ctx.format(), ctx.out);
  return kExitOk;
}

int cmd_tarry(const Context& ctx, const std::vector<int>& ks) {
  std::set<int> degrees;
  for (int k : ks) degrees.insert(k + 1);
  const auto tables = ctx.catalogs(degrees);
  const auto reports = parallel_map(ks, [&tables](int k) { return tarry_bound(tables.at(k + 1)); });
  if (ctx.format() == "json") {
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(report_to_json(r));
    emit_json(arr, ctx.out);
    return kExitOk;
  }
  Grid g{{"k", "W(k,2) bound"}, {}, true};
  for (const auto& r : reports) g.rows.push_back({std::to_string(r.k), r.value.str()});
  render(g, ctx.format(), ctx.out);
  return kExitOk;
}

int cmd_hua(const Context& ctx, const std::vector<int>& ks) {
  const std::set<int> degrees(ks.begin(), ks.end());
  const auto tables = ctx.catalogs(degrees);
  const auto results = parallel_map(ks, [&tables](int k) { return hua_moments(tables.at(k)); });
  if (ctx.format() == "json") {
    Json arr = Json::array();
    for (const auto& h : results) {
      arr.push_back(Json{{"k", h.full.k},
                         {"C", report_to_json(h.full)},
                         {"S", report_to_json(h.penultimate)},
                         {"t_star", report_to_json(h.t_star)}});
    }
    emit_json(arr, ctx.out);
    return kExitOk;
  }
  Grid g{{"k", "C", "S", "t*"}, {}, true};
  for (const auto& h : results) {
    g.rows.push_back({std::to_string(h.full.k), h.full.value.str(), h.penultimate.value.str(),
                      h.t_star.value.str()});
  }
  render(g, ctx.format(), ctx.out);
  return kExitOk;
}

int cmd_verify(const Context& ctx, const std::string& suite) {
  std::vector<Reconciliation> rows;
  try {
    rows = run_verify(suite, ctx.cache());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  bool failed = false;
  for (const auto& r : rows) failed = failed || r.verdict == Verdict::Fail;
  if (ctx.format() == "json") {
    Json arr = Json::array();
    for (const auto& r : rows) {
      arr.push_back(Json{{"suite", r.suite},
                         {"item", r.item},
                         {"k", r.k},
                         {"ours", r.ours},
                         {"reference", r.reference},
                         {"difference", r.difference},
                         {"verdict", to_string(r.verdict)}});
    }
    emit_json(Json{{"suite", suite}, {"ok", !failed}, {"rows", std::move(arr)}}, ctx.out);
  } else {
    Grid g{{"suite", "item", "k", "ours", "reference", "difference", "verdict"}, {}, false};
    for (const auto& r : rows) {
      g.rows.push_back({r.suite, r.item, r.k ? std::to_string(r.k) : "-", r.ours, r.reference, r.difference,
                        to_string(r.verdict)});
    }
    render(g, ctx.format(), ctx.out);
  }
  return failed ? kExitVerifyFailed : kExitOk;
}

struct CountArgs {
  int s = 0;
  int k = 0;
  long X = 0;
  long shift = 0;
  std::vector<long> slope;
  std::vector<long> moduli;
};

int cmd_count(const Context& ctx, const CountArgs& a) {
  if (a.s < 1 || a.k < 1 || a.X < 1) throw UsageError("count needs s, k, X >= 1");
  if (!a.moduli.empty() && static_cast<int>(a.moduli.size()) != a.k)
    throw UsageError("--moduli needs exactly k values");
  for (long q : a.moduli) {
    if (q < 1) throw UsageError("moduli must be positive");
  }
  auto one = [&](long X) {
    if (!a.moduli.empty()) return count_J_congruential(a.s, a.k, X, a.moduli, ctx.opt.budget);
    return count_J(a.s, a.k, X, a.shift, ctx.opt.budget);
  };
  std::vector<long> xs{a.X};
  for (long x : a.slope) {
    if (x < 1) throw UsageError("--slope values must be positive");
    if (x != a.X) xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  const auto counts = parallel_map(xs, one);
  std::optional<double> slope;
  if (!a.slope.empty()) {
    if (!a.moduli.empty() || xs.size() < 3) throw UsageError("--slope needs at least 3 distinct X and no --moduli");
    slope = empirical_growth(a.s, a.k, xs, ctx.opt.budget);
  }
  const std::string fmt = ctx.format("csv");
  if (fmt == "json") {
    Json series = Json::array();
    for (std::size_t i = 0; i < xs.size(); ++i) series.push_back(Json{{"X", xs[i]}, {"J", big_to_json(counts[i])}});
    Json j{{"s", a.s}, {"k", a.k}, {"shift", a.shift}, {"series", std::move(series)}};
    if (!a.moduli.empty()) j["moduli"] = a.moduli;
    if (slope) j["slope"] = *slope;
    emit_json(j, ctx.out);
    return kExitOk;
  }
  Grid g{{"s", "k", "X", "shift", "J"}, {}, false};
  if (slope) g.columns.push_back("slope");
  std::ostringstream slope_text;
  if (slope) slope_text << std::setprecision(6) << *slope;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<std::string> row{std::to_string(a.s), std::to_string(a.k), std::to_string(xs[i]),
                                 std::to_string(a.shift), counts[i].get_str()};
    if (slope) row.push_back(slope_text.str());
    g.rows.push_back(std::move(row));
  }
  render(g, fmt, ctx.out);
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact exponent tables for Vinogradov's mean value theorem and Waring's problem"};
  app.name("vinotab");
  app.require_subcommand(1);

  Options opt;
  app.add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"markdown", "csv", "json"}));
  app.add_option("--places", opt.places, "Decimal places, rounded up")->check(CLI::Range(0, 30));
  app.add_option("--cache-dir", opt.cache_dir, "Catalog cache directory (default: $VINOTAB_CACHE_DIR)");
  app.add_flag("--no-cache", opt.no_cache, "Neither read nor write the catalog cache");
  app.add_option("--budget", opt.budget, "Profile-state budget for exhaustive counts")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-catalog-k", opt.max_catalog_k, "Largest degree for which catalogs are built")
      ->check(CLI::Range(3, kMaxDegree));
  app.add_option("--parity", opt.parity, "Source set: all, closed-form-only, no-square-rule");

  int catalog_k = 0;
  auto* catalog = app.add_subcommand("catalog", "Exponent catalog for one degree");
  catalog->add_option("--k", catalog_k, "Degree")->required();

  std::string range;
  auto* waring = app.add_subcommand("waring", "Asymptotic-formula thresholds s1, u1, G~, G~+");
  waring->add_option("--k", range, "Degree or range A..B")->required();
  auto* weyl = app.add_subcommand("weyl", "Minor-arc Weyl exponents");
  weyl->add_option("--k", range, "Degree or range A..B (k >= 4)")->required();
  auto* tarry = app.add_subcommand("tarry", "Bounds for Tarry's problem W(k,2)");
  tarry->add_option("--k", range, "Degree or range A..B")->required();
  auto* hua = app.add_subcommand("hua", "Hua-type moment thresholds C_k, S_k, t*");
  hua->add_option("--k", range, "Degree or range A..B")->required();

  int digits = 6;
  auto* constants = app.add_subcommand("constants", "Large-degree constants xi and C");
  constants->add_option("--digits", digits, "Decimal digits");

  std::string suite;
  auto* verify = app.add_subcommand("verify", "Reconcile against reference tables and oracles");
  verify->add_option("suite", suite, "tables | oracle | identities | all")
      ->required()
      ->check(CLI::IsMember({"tables", "oracle", "identities", "all"}));

  CountArgs count_args;
  auto* count = app.add_subcommand("count", "Exact solution counts J_{s,k}(X)");
  count->add_option("--s", count_args.s, "Number of variables per side")->required();
  count->add_option("--k", count_args.k, "Degree")->required();
  count->add_option("--X", count_args.X, "Window length")->required();
  count->add_option("--shift", count_args.shift, "Window starts at shift + 1");
  count->add_option("--slope", count_args.slope, "Further X values for a growth-rate fit")->delimiter(',');
  count->add_option("--moduli", count_args.moduli, "Count congruential solutions modulo Q_1..Q_k")
      ->delimiter(',');

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    app.exit(e, out, err);
    return kExitUsage;
  }

  const Context ctx{opt, out, err};
  try {
    if (catalog->parsed()) return cmd_catalog(ctx, catalog_k);
    if (waring->parsed()) return cmd_waring(ctx, parse_range(range));
    if (weyl->parsed()) return cmd_weyl(ctx, parse_range(range, 4));
    if (tarry->parsed()) return cmd_tarry(ctx, parse_range(range));
    if (hua->parsed()) return cmd_hua(ctx, parse_range(range));
    if (constants->parsed()) return cmd_constants(ctx, digits);
    if (verify->parsed()) return cmd_verify(ctx, suite);
    if (count->parsed()) return cmd_count(ctx, count_args);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    err << "refused: " << e.what() << "\n";
    return kExitBudget;
  } catch (const CatalogRefused& e) {
    err << "refused: " << e.what() << "\n";
    return kExitBudget;
  }
  return kExitUsage;
}

}  // namespace vinotab

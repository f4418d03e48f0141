#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "biharm/catalog.hpp"
#include "biharm/expression.hpp"
#include "biharm/harness.hpp"
#include "biharm/report_io.hpp"
#include "biharm/warped_reduction.hpp"

namespace biharm::cli {

namespace {

enum class Format { Json, Csv, Pretty };

struct Common {
  std::vector<int> grid;
  std::vector<double> rect;
  double tol_abs = Tolerances{}.abs;
  double tol_rel = Tolerances{}.rel;
  std::string method = "general";
  std::string format;
  std::string out;
};

void add_common(CLI::App* sub, Common& c, bool evaluation) {
  if (evaluation) {
    sub->add_option("--grid", c.grid, "grid counts NX NY (default 21 21)")->expected(2);
    sub->add_option("--rect", c.rect, "sampling rectangle X0 X1 Y0 Y1")->expected(4);
    sub->add_option("--tol-abs", c.tol_abs, "absolute tolerance");
    sub->add_option("--tol-rel", c.tol_rel, "relative tolerance");
    sub->add_option("--method", c.method, "general, conformal or both");
  }
  sub->add_option("--format", c.format, "json, csv or pretty");
  sub->add_option("--out", c.out, "write the report here instead of stdout");
}

Format format_of(const std::string& s, Format fallback) {
  if (s.empty()) return fallback;
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "pretty") return Format::Pretty;
  throw ParseError("unknown format '" + s + "' (json, csv, pretty)");
}

double number(const std::string& s, const std::string& what) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end || !std::isfinite(v)) {
    throw ParseError("bad number '" + s + "' for " + what);
  }
  return v;
}

// value, or start:end:count
ParamRange range_of(const std::string& name, const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ':')) parts.push_back(item);
  if (parts.size() == 1) return {name, number(s, name), number(s, name), 1};
  if (parts.size() != 3) throw ParseError("range for " + name + " must be start:end:count");
  const double count = number(parts[2], name + " count");
  if (count < 0 || std::floor(count) != count) throw ParseError("range count for " + name + " must be a whole number");
  return {name, number(parts[0], name), number(parts[1], name), static_cast<int>(count)};
}

GridSpec grid_of(const Common& c) {
  GridSpec g;
  if (!c.grid.empty()) g.nx = c.grid[0], g.ny = c.grid[1];
  if (!c.rect.empty()) g.rect = Rect{c.rect[0], c.rect[1], c.rect[2], c.rect[3]};
  return g;
}

Tolerances tol_of(const Common& c) {
  Tolerances t;
  t.abs = c.tol_abs;
  t.rel = c.tol_rel;
  return t;
}

void emit(const Common& c, std::ostream& out, const std::string& text) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw ParseError("cannot write " + c.out);
  f << text;
}

std::string render(const ResidualReport& r, const ReportMeta& meta, Format f) {
  switch (f) {
    case Format::Json:
      return dump_json(report_to_json(r, meta));
    case Format::Csv:
      return report_to_csv(r);
    case Format::Pretty:
      return report_to_pretty(r, meta);
  }
  return "";
}

std::set<std::string> all_param_names() {
  std::set<std::string> names;
  for (const auto& e : catalog())
    for (const auto& p : e.params) names.insert(p.name);
  return names;
}

int verdict_exit(Verdict got, Verdict expected) {
  if (got == Verdict::Inconclusive) return kExitInconclusive;
  return got == expected ? kExitMatch : kExitMismatch;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// ode: profile residual along an x-range
struct OdeArgs {
  std::string warp;
  double a = 1.0;
  std::string f;
  std::string xrange = "-2:2:101";
};

struct OdeTrace {
  std::vector<double> x, f, residual;
};

ProfileFunction ode_profile(const OdeArgs& o, double lo, double hi) {
  const double pad = 1e-6 * (1.0 + std::max(std::abs(lo), std::abs(hi)));
  if (o.f.find('=') == std::string::npos) {
    const Expression e = Expression::parse(o.f, "x", "y");
    return ProfileFunction([e](const RealJet& x) { return e(x, RealJet::constant(0.0, x.order())); },
                           {lo - pad, hi + pad});
  }
  std::map<std::string, double> k{{"A", 0.0}, {"B", 0.0}, {"C", 0.0}, {"D", 0.0}};
  std::stringstream in(o.f);
  std::string item;
  while (std::getline(in, item, ',')) {
    const size_t eq = item.find('=');
    const std::string name = item.substr(0, eq);
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" "));
      s.erase(s.find_last_not_of(" ") + 1);
      return s;
    };
    if (eq == std::string::npos || !k.count(trim(name))) throw ParseError("bad family coefficient '" + item + "'");
    k[trim(name)] = number(trim(item.substr(eq + 1)), name);
  }
  if (o.warp == "lemaire") {
    const ProfileFunction f = lemaire_family(k["A"], k["B"], k["C"], k["D"], o.a);
    if (!f.interval().contains(lo) || !f.interval().contains(hi)) {
      throw DomainError("x-range leaves the profile interval " + f.interval().to_string());
    }
    return f;
  }
  if (o.warp == "helicoid") {
    return ProfileFunction(helicoid_family(k["A"], k["B"], k["C"], k["D"]).function(), {lo - pad, hi + pad});
  }
  if (o.warp == "cone") return cone_family(k["A"], k["B"], k["C"], k["D"], {lo - pad, hi + pad});
  throw ParseError("family coefficients need --warp lemaire, helicoid or cone");
}

WarpProfile ode_warp(const OdeArgs& o, const ProfileFunction& f, double mid) {
  if (o.warp == "lemaire") return WarpProfile::lemaire(o.a);
  if (o.warp == "helicoid") return WarpProfile::helicoid(o.a);
  if (o.warp == "cone") return WarpProfile::cone(f(mid) > 0.0);
  throw ParseError("unknown warp '" + o.warp + "' (lemaire, helicoid, cone)");
}

int cmd_ode(const OdeArgs& o, const Common& c, std::ostream& out) {
  const ParamRange r = range_of("xrange", o.xrange);
  if (r.count < 2 || !(r.start < r.end)) throw ParseError("--xrange needs start < end and at least 2 points");
  const ProfileFunction f = ode_profile(o, r.start, r.end);
  const WarpProfile w = ode_warp(o, f, 0.5 * (r.start + r.end));
  OdeTrace t;
  for (double x : r.values()) {
    t.x.push_back(x);
    t.f.push_back(f(x));
    t.residual.push_back(profile_residual(f, w, x));
  }
  double worst = 0.0, at = t.x.front();
  for (size_t i = 0; i < t.x.size(); ++i)
    if (std::abs(t.residual[i]) > worst) worst = std::abs(t.residual[i]), at = t.x[i];

  std::string text;
  switch (format_of(c.format, Format::Pretty)) {
    case Format::Json: {
      ojson j;
      j["meta"] = {{"tool", "biharmonic_lab"}, {"schema_version", kReportSchemaVersion}, {"command", "ode"}};
      j["config"] = {{"warp", w.name()}, {"a", o.a}, {"profile", o.f}, {"xrange", o.xrange}};
      ojson pts = ojson::array();
      for (size_t i = 0; i < t.x.size(); ++i) pts.push_back({{"x", t.x[i]}, {"f", t.f[i]}, {"residual", t.residual[i]}});
      j["points"] = std::move(pts);
      j["aggregates"] = {{"max_abs_residual", worst}, {"argmax", at}};
      text = dump_json(j);
      break;
    }
    case Format::Csv:
      text = "x,f,residual\n";
      for (size_t i = 0; i < t.x.size(); ++i)
        text += format_number(t.x[i]) + "," + format_number(t.f[i]) + "," + format_number(t.residual[i]) + "\n";
      break;
    case Format::Pretty:
      text = "warp " + w.name() + ", profile " + o.f + ", " + std::to_string(t.x.size()) + " points on [" +
             format_number(r.start) + ", " + format_number(r.end) + "]\nmax |residual| " + format_number(worst) +
             " at x = " + format_number(at) + "\n";
      break;
  }
  emit(c, out, text);
  return 0;
}

int cmd_list(const Common& c, std::ostream& out) {
  const Format f = format_of(c.format, Format::Pretty);
  if (f == Format::Csv) throw ParseError("list supports json and pretty");
  if (f == Format::Json) {
    ojson arr = ojson::array();
    for (const auto& e : catalog()) {
      ojson params = ojson::object();
      for (const auto& p : e.params) params[p.name] = p.default_value;
      const Fixture fx = build_fixture(e.id);
      arr.push_back({{"id", e.id},
                     {"description", e.description},
                     {"params", params},
                     {"expected", to_string(fx.expected)},
                     {"conformal_view", fx.conformal.has_value()}});
    }
    emit(c, out, dump_json(ojson{{"catalog", arr}}));
    return 0;
  }
  std::ostringstream os;
  for (const auto& e : catalog()) {
    os << e.id << "\n    " << e.description << "\n";
    if (!e.params.empty()) {
      os << "    defaults:";
      for (const auto& p : e.params) os << " " << p.name << "=" << format_number(p.default_value);
      os << "\n";
    }
    os << "    expected at defaults: " << to_string(build_fixture(e.id).expected) << "\n";
  }
  emit(c, out, os.str());
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tension and bitension fields of maps between surfaces", "biharmonic_lab"};
  app.require_subcommand(1);

  Common c;
  std::string id;
  std::map<std::string, std::string> pvals;
  const std::set<std::string> names = all_param_names();

  auto add_params = [&](CLI::App* sub, const char* help) {
    for (const auto& n : names) sub->add_option("--" + n, pvals[n], help);
  };

  CLI::App* verify = app.add_subcommand("verify", "classify a catalog fixture and compare with its expected verdict");
  verify->add_option("id", id, "catalog id")->required();
  add_params(verify, "fixture parameter");
  add_common(verify, c, true);

  CLI::App* scan = app.add_subcommand("scan", "classify a catalog family over a parameter lattice");
  scan->add_option("id", id, "catalog id")->required();
  add_params(scan, "value or start:end:count");
  add_common(scan, c, true);

  std::string map_spec, dom_spec = "flat", tgt_spec = "flat";
  CLI::App* residual = app.add_subcommand("residual", "residuals of an inline map");
  residual->add_option("--map", map_spec, "\"f1; f2\" in x, y")->required();
  residual->add_option("--domain-metric", dom_spec, "flat | sphere | hyperbolic | conformal:rho | warped:s2 | general:g11;g12;g22 (x, y)");
  residual->add_option("--target-metric", tgt_spec, "same forms in u, v");
  add_common(residual, c, true);

  OdeArgs ode;
  CLI::App* odec = app.add_subcommand("ode", "profile equation residual of (f(x), y) into a warped target");
  odec->add_option("--warp", ode.warp, "lemaire, helicoid or cone")->required();
  odec->add_option("--a", ode.a, "warp parameter");
  odec->add_option("--f", ode.f, "\"A=..,B=..,C=..,D=..\" for the warp's family, or an expression in x")->required();
  odec->add_option("--xrange", ode.xrange, "start:end:count");
  add_common(odec, c, false);

  CLI::App* list = app.add_subcommand("list", "catalog inventory");
  add_common(list, c, false);

  std::string report_path;
  CLI::App* report = app.add_subcommand("report", "re-emit a saved JSON report");
  report->add_option("file", report_path, "JSON report")->required();
  add_common(report, c, false);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (list->parsed()) return cmd_list(c, out);
    if (odec->parsed()) return cmd_ode(ode, c, out);

    if (report->parsed()) {
      ReportMeta meta;
      const ResidualReport r = report_from_json(ojson::parse(read_file(report_path)), &meta);
      emit(c, out, render(r, meta, format_of(c.format, Format::Json)));
      return 0;
    }

    const GridSpec grid = grid_of(c);
    const Tolerances tol = tol_of(c);
    const Method method = method_from_string(c.method);
    CLI::App* active = verify->parsed() ? verify : scan;

    if (residual->parsed()) {
      // everything parses before any evaluation
      const SmoothMap2 m = parse_map(map_spec);
      const Metric2 gM = parse_metric(dom_spec, false), gN = parse_metric(tgt_spec, true);
      const Format f = format_of(c.format, Format::Pretty);
      GridSpec g = grid;
      if (!g.rect) g.rect = Rect{-1.0, 1.0, -1.0, 1.0};
      const ResidualReport r = classify(m, gM, gN, g, method, tol);
      emit(c, out, render(r, {"residual", std::nullopt, map_spec, dom_spec, tgt_spec}, f));
      return 0;
    }

    const CatalogEntry& entry = find_entry(id);
    std::vector<ParamRange> ranges;
    for (const auto& n : names) {
      if (active->get_option("--" + n)->count() == 0) continue;
      ranges.push_back(range_of(n, pvals[n]));
    }

    if (verify->parsed()) {
      Params over;
      for (const auto& r : ranges) {
        if (r.count != 1) throw ParseError("verify takes single values, not ranges ('" + r.name + "')");
        over[r.name] = r.start;
      }
      const auto params = resolve_params(entry, over);
      const Fixture fx = build_fixture(id, over);
      const Format f = format_of(c.format, Format::Pretty);
      const ResidualReport r = classify_fixture(fx, id, params, grid, method, tol);
      emit(c, out, render(r, {"verify", fx.expected, "", "", ""}, f));
      const int code = verdict_exit(r.verdict, fx.expected);
      if (code != kExitMatch) err << "verify " << id << ": " << to_string(r.verdict) << ", expected " << to_string(fx.expected) << "\n";
      return code;
    }

    // scan
    const auto rows = parameter_scan(id, ranges, grid, method, tol);
    RunInfo info;
    info.catalog_id = id;
    info.method = method;
    info.tol = tol;
    info.nx = grid.nx;
    info.ny = grid.ny;
    info.margin = grid.margin;
    switch (format_of(c.format, Format::Pretty)) {
      case Format::Json:
        emit(c, out, dump_json(scan_to_json(id, rows, info)));
        break;
      case Format::Csv:
        emit(c, out, scan_to_csv(rows));
        break;
      case Format::Pretty:
        emit(c, out, scan_to_pretty(rows));
        break;
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace biharm::cli

#include "biharm/report_io.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace biharm {

namespace {

ojson pair_json(double a, double b) { return ojson::array({a, b}); }
ojson vec_json(const FieldVector2& v) { return pair_json(v.v1, v.v2); }
ojson point_json(Point2 p) { return pair_json(p.x, p.y); }

template <class T>
T field(const ojson& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("report is missing '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad value for '") + key + "': " + e.what());
  }
}

std::pair<double, double> pair_of(const ojson& j, const char* key) {
  const auto v = field<std::vector<double>>(j, key);
  if (v.size() != 2) throw ParseError(std::string("'") + key + "' must have two entries");
  return {v[0], v[1]};
}

FieldVector2 vec_of(const ojson& j, const char* key) {
  const auto [a, b] = pair_of(j, key);
  return {a, b};
}

Point2 point_of(const ojson& j, const char* key) {
  const auto [a, b] = pair_of(j, key);
  return {a, b};
}

void append_number(std::string& out, double v) { out += format_number(v); }

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

ojson report_to_json(const ResidualReport& r, const ReportMeta& meta) {
  ojson j;
  ojson m;
  m["tool"] = "biharmonic_lab";
  m["schema_version"] = kReportSchemaVersion;
  m["command"] = meta.command;
  if (meta.expected) m["expected"] = to_string(*meta.expected);
  if (!meta.map_spec.empty()) m["map"] = meta.map_spec;
  if (!meta.domain_spec.empty()) m["domain_metric"] = meta.domain_spec;
  if (!meta.target_spec.empty()) m["target_metric"] = meta.target_spec;
  j["meta"] = m;

  const RunInfo& c = r.config;
  ojson params = ojson::object();
  for (const auto& [k, v] : c.params) params[k] = v;
  j["config"] = {{"catalog_id", c.catalog_id},
                 {"params", params},
                 {"method", to_string(c.method)},
                 {"tolerances",
                  {{"abs", c.tol.abs}, {"rel", c.tol.rel}, {"fd_abs", c.tol.fd_abs},
                   {"proper_margin", c.tol.proper_margin}}},
                 {"grid",
                  {{"rect", ojson::array({c.rect.x_min, c.rect.x_max, c.rect.y_min, c.rect.y_max})},
                   {"nx", c.nx},
                   {"ny", c.ny},
                   {"margin", c.margin}}}};

  ojson pts = ojson::array();
  for (const auto& p : r.points) {
    ojson e;
    e["x"] = p.point.x;
    e["y"] = p.point.y;
    if (!p.residual) {
      e["error"] = p.error;
    } else {
      const PointResidual& q = *p.residual;
      e["image"] = point_json(q.image);
      e["tau"] = vec_json(q.tension);
      e["tau_norm"] = q.tension_norm;
      e["bitau"] = vec_json(q.bitension);
      e["bitau_norm"] = q.bitension_norm;
      e["fd_err"] = q.fd_error;
      e["jet_scale"] = q.jet_scale;
      e["tau_tol"] = q.tension_tol;
      e["bitau_tol"] = q.bitension_tol;
      e["analytic"] = q.analytic;
      if (q.conformal_bitension) {
        e["conformal_bitau"] = vec_json(*q.conformal_bitension);
        e["formula_gap"] = q.formula_gap;
      }
    }
    pts.push_back(std::move(e));
  }
  j["points"] = std::move(pts);

  const Aggregates& a = r.aggregates;
  j["aggregates"] = {{"evaluated", a.evaluated},
                     {"failed", a.failed},
                     {"max_tau_norm", a.max_tension},
                     {"min_tau_norm", a.min_tension},
                     {"argmax_tau", point_json(a.argmax_tension)},
                     {"max_bitau_norm", a.max_bitension},
                     {"argmax_bitau", point_json(a.argmax_bitension)},
                     {"max_fd_err", a.max_fd_error},
                     {"max_formula_gap", a.max_formula_gap}};
  j["verdict"] = to_string(r.verdict);
  return j;
}

ResidualReport report_from_json(const ojson& j, ReportMeta* meta) {
  for (const char* k : {"meta", "config", "points", "aggregates", "verdict"})
    if (!j.is_object() || !j.contains(k)) throw ParseError(std::string("report is missing '") + k + "'");
  const ojson& m = j["meta"];
  if (field<int>(m, "schema_version") != kReportSchemaVersion) throw ParseError("unsupported schema version");
  if (meta) {
    *meta = {};
    meta->command = field<std::string>(m, "command");
    if (m.contains("expected")) meta->expected = verdict_from_string(field<std::string>(m, "expected"));
    if (m.contains("map")) meta->map_spec = field<std::string>(m, "map");
    if (m.contains("domain_metric")) meta->domain_spec = field<std::string>(m, "domain_metric");
    if (m.contains("target_metric")) meta->target_spec = field<std::string>(m, "target_metric");
  }

  ResidualReport r;
  const ojson& c = j["config"];
  r.config.catalog_id = field<std::string>(c, "catalog_id");
  const ojson& params = c.at("params");
  if (!params.is_object()) throw ParseError("'params' must be an object");
  for (const auto& [k, v] : params.items()) {
    if (!v.is_number()) throw ParseError("parameter '" + k + "' is not a number");
    r.config.params.emplace_back(k, v.get<double>());
  }
  r.config.method = method_from_string(field<std::string>(c, "method"));
  const ojson& t = c.at("tolerances");
  r.config.tol = {field<double>(t, "abs"), field<double>(t, "rel"), field<double>(t, "fd_abs"),
                  field<double>(t, "proper_margin")};
  const ojson& g = c.at("grid");
  const auto rect = field<std::vector<double>>(g, "rect");
  if (rect.size() != 4) throw ParseError("'rect' must have four entries");
  r.config.rect = {rect[0], rect[1], rect[2], rect[3]};
  r.config.nx = field<int>(g, "nx");
  r.config.ny = field<int>(g, "ny");
  r.config.margin = field<double>(g, "margin");

  if (!j["points"].is_array()) throw ParseError("'points' must be an array");
  for (const ojson& e : j["points"]) {
    PointRecord p;
    p.point = {field<double>(e, "x"), field<double>(e, "y")};
    if (e.contains("error")) {
      p.error = field<std::string>(e, "error");
    } else {
      PointResidual q;
      q.point = p.point;
      q.image = point_of(e, "image");
      q.tension = vec_of(e, "tau");
      q.tension_norm = field<double>(e, "tau_norm");
      q.bitension = vec_of(e, "bitau");
      q.bitension_norm = field<double>(e, "bitau_norm");
      q.fd_error = field<double>(e, "fd_err");
      q.jet_scale = field<double>(e, "jet_scale");
      q.tension_tol = field<double>(e, "tau_tol");
      q.bitension_tol = field<double>(e, "bitau_tol");
      q.analytic = field<bool>(e, "analytic");
      if (e.contains("conformal_bitau")) {
        q.conformal_bitension = vec_of(e, "conformal_bitau");
        q.formula_gap = field<double>(e, "formula_gap");
      }
      p.residual = q;
    }
    r.points.push_back(std::move(p));
  }

  const ojson& a = j["aggregates"];
  r.aggregates.evaluated = field<int>(a, "evaluated");
  r.aggregates.failed = field<int>(a, "failed");
  r.aggregates.max_tension = field<double>(a, "max_tau_norm");
  r.aggregates.min_tension = field<double>(a, "min_tau_norm");
  r.aggregates.argmax_tension = point_of(a, "argmax_tau");
  r.aggregates.max_bitension = field<double>(a, "max_bitau_norm");
  r.aggregates.argmax_bitension = point_of(a, "argmax_bitau");
  r.aggregates.max_fd_error = field<double>(a, "max_fd_err");
  r.aggregates.max_formula_gap = field<double>(a, "max_formula_gap");
  r.verdict = verdict_from_string(field<std::string>(j, "verdict"));
  return r;
}

std::string dump_json(const ojson& j) { return j.dump(2) + "\n"; }

std::string report_to_csv(const ResidualReport& r) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& p : r.points) {
    append_number(out, p.point.x);
    out += ',';
    append_number(out, p.point.y);
    if (!p.residual) {
      out += ",,,,,,,\n";
      continue;
    }
    const PointResidual& q = *p.residual;
    for (double v : {q.tension.v1, q.tension.v2, q.tension_norm, q.bitension.v1, q.bitension.v2,
                     q.bitension_norm, q.fd_error}) {
      out += ',';
      append_number(out, v);
    }
    out += '\n';
  }
  return out;
}

std::vector<std::vector<double>> read_csv_rows(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw ParseError("unexpected CSV header");
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    size_t start = 0;
    while (true) {
      const size_t comma = line.find(',', start);
      const std::string cell = line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      double v = std::numeric_limits<double>::quiet_NaN();
      if (!cell.empty()) {
        const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
          throw ParseError("bad CSV number '" + cell + "'");
        }
      }
      row.push_back(v);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (row.size() != 9) throw ParseError("CSV row with " + std::to_string(row.size()) + " cells");
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string report_to_pretty(const ResidualReport& r, const ReportMeta& meta) {
  std::ostringstream os;
  const RunInfo& c = r.config;
  if (!c.catalog_id.empty()) os << "fixture   " << c.catalog_id << "\n";
  if (!meta.map_spec.empty()) os << "map       " << meta.map_spec << "\n";
  if (!c.params.empty()) {
    os << "params   ";
    for (const auto& [k, v] : c.params) os << " " << k << "=" << format_number(v);
    os << "\n";
  }
  os << "grid      " << c.nx << " x " << c.ny << " on " << c.rect.to_string() << ", method " << to_string(c.method)
     << "\n";
  const Aggregates& a = r.aggregates;
  os << "points    " << a.evaluated << " evaluated, " << a.failed << " failed\n";
  os << "|tau|     max " << format_number(a.max_tension) << " at (" << format_number(a.argmax_tension.x) << ", "
     << format_number(a.argmax_tension.y) << "), min " << format_number(a.min_tension) << "\n";
  os << "|tau2|    max " << format_number(a.max_bitension) << " at (" << format_number(a.argmax_bitension.x) << ", "
     << format_number(a.argmax_bitension.y) << ")\n";
  if (a.max_fd_error > 0) os << "fd error  " << format_number(a.max_fd_error) << "\n";
  if (a.max_formula_gap > 0) os << "gap       " << format_number(a.max_formula_gap) << "\n";
  os << "verdict   " << to_string(r.verdict);
  if (meta.expected) os << " (expected " << to_string(*meta.expected) << ")";
  os << "\n";
  for (const auto& p : r.points)
    if (!p.residual) os << "  failed at (" << format_number(p.point.x) << ", " << format_number(p.point.y) << "): " << p.error << "\n";
  return os.str();
}

ojson scan_to_json(const std::string& id, const std::vector<ScanRow>& rows, const RunInfo& c) {
  ojson j;
  j["meta"] = {{"tool", "biharmonic_lab"}, {"schema_version", kReportSchemaVersion}, {"command", "scan"}};
  j["config"] = {{"catalog_id", id},
                 {"method", to_string(c.method)},
                 {"tolerances",
                  {{"abs", c.tol.abs}, {"rel", c.tol.rel}, {"fd_abs", c.tol.fd_abs},
                   {"proper_margin", c.tol.proper_margin}}},
                 {"grid", {{"nx", c.nx}, {"ny", c.ny}, {"margin", c.margin}}}};
  ojson arr = ojson::array();
  for (const auto& r : rows) {
    ojson params = ojson::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    ojson e{{"params", params}};
    if (!r.error.empty()) {
      e["error"] = r.error;
    } else {
      e["expected"] = r.expected ? to_string(*r.expected) : "";
      e["verdict"] = to_string(r.verdict);
      e["max_tau_norm"] = r.max_tension;
      e["max_bitau_norm"] = r.max_bitension;
    }
    arr.push_back(std::move(e));
  }
  j["rows"] = std::move(arr);
  return j;
}

std::string scan_to_csv(const std::vector<ScanRow>& rows) {
  std::string out;
  if (rows.empty()) return "verdict,expected,max_tau_norm,max_bitau_norm,error\n";
  for (const auto& [k, v] : rows.front().params) out += k + ",";
  out += "verdict,expected,max_tau_norm,max_bitau_norm,error\n";
  for (const auto& r : rows) {
    for (const auto& [k, v] : r.params) {
      append_number(out, v);
      out += ',';
    }
    if (r.error.empty()) {
      out += std::string(to_string(r.verdict)) + "," + (r.expected ? to_string(*r.expected) : "") + ",";
      append_number(out, r.max_tension);
      out += ',';
      append_number(out, r.max_bitension);
      out += ",\n";
    } else {
      std::string msg = r.error;
      for (char& ch : msg)
        if (ch == ',' || ch == '\n') ch = ';';
      out += ",,,," + msg + "\n";
    }
  }
  return out;
}

std::string scan_to_pretty(const std::vector<ScanRow>& rows) {
  std::ostringstream os;
  for (const auto& r : rows) {
    for (const auto& [k, v] : r.params) os << k << "=" << format_number(v) << " ";
    if (!r.error.empty()) {
      os << " error: " << r.error << "\n";
      continue;
    }
    os << " " << to_string(r.verdict);
    if (r.expected && *r.expected != r.verdict) os << " (expected " << to_string(*r.expected) << ")";
    os << "  max|tau| " << format_number(r.max_tension) << "  max|tau2| " << format_number(r.max_bitension) << "\n";
  }
  return os.str();
}

}  // namespace biharm

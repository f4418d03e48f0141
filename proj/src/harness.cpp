#include "biharm/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <thread>

namespace biharm {

namespace {

bool clear_of_edge(const Rect& r, Point2 p, double margin) { return r.shrunk(margin).contains(p); }

// Evaluate f(i) for i in [0, n) on up to worker_count() threads.
// Each index is written by exactly one worker, so the output order is fixed.
template <class F>
void parallel_for(size_t n, F&& f) {
  const size_t workers = std::min<size_t>(static_cast<size_t>(worker_count()), n);
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (size_t i = next++; i < n; i = next++) f(i);
    });
  }
  for (auto& t : pool) t.join();
}

std::string describe(const std::exception_ptr& e) {
  try {
    std::rethrow_exception(e);
  } catch (const std::exception& ex) {
    return ex.what();
  } catch (...) {
    return "unknown error";
  }
}

Aggregates aggregate(const std::vector<PointRecord>& pts) {
  Aggregates a;
  bool first = true;
  for (const auto& r : pts) {
    if (!r.residual) {
      ++a.failed;
      continue;
    }
    const PointResidual& p = *r.residual;
    ++a.evaluated;
    if (first || p.tension_norm > a.max_tension) a.max_tension = p.tension_norm, a.argmax_tension = r.point;
    if (first || p.bitension_norm > a.max_bitension) a.max_bitension = p.bitension_norm, a.argmax_bitension = r.point;
    a.min_tension = first ? p.tension_norm : std::min(a.min_tension, p.tension_norm);
    a.max_fd_error = std::max(a.max_fd_error, p.fd_error);
    a.max_formula_gap = std::max(a.max_formula_gap, p.formula_gap);
    first = false;
  }
  return a;
}

}  // namespace

int worker_count() {
  if (const char* env = std::getenv("BIHARMONIC_LAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<int>(std::min<long>(v, 256));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<Point2> GridSpec::points(const SmoothMap2& map, const Metric2& gM, const Metric2& gN) const {
  if (nx < 2 || ny < 2) throw EmptyGrid("grid needs at least 2 x 2 points");
  const Rect r = rect_or(gM.domain());
  if (r.empty()) throw EmptyGrid("empty sampling rectangle " + r.to_string());
  std::vector<Point2> out;
  out.reserve(static_cast<size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const Point2 p{r.x_min + (r.x_max - r.x_min) * i / (nx - 1), r.y_min + (r.y_max - r.y_min) * j / (ny - 1)};
      if (!clear_of_edge(gM.domain(), p, margin)) continue;
      if (std::any_of(exclusions.begin(), exclusions.end(), [&](const auto& ex) { return ex(p); })) continue;
      // an image we cannot even compute is left in, so the failure gets reported
      try {
        if (!clear_of_edge(gN.domain(), map(p), margin)) continue;
      } catch (const Error&) {
      }
      out.push_back(p);
    }
  }
  if (out.empty()) throw EmptyGrid("every grid point on " + r.to_string() + " was excluded");
  return out;
}

Verdict decide(const std::vector<PointRecord>& points, const Tolerances& tol) {
  bool any = false, any_failed = false;
  bool all_tension_small = true, all_bitension_small = true;
  bool tension_clear = false;  // some tension above the properness margin
  bool resolved_violation = false;
  for (const auto& r : points) {
    if (!r.residual) {
      any_failed = true;
      continue;
    }
    any = true;
    const PointResidual& p = *r.residual;
    if (p.tension_norm > p.tension_tol) all_tension_small = false;
    if (p.tension_norm > tol.proper_margin * p.tension_tol) tension_clear = true;
    if (p.bitension_norm > p.bitension_tol) {
      all_bitension_small = false;
      if (p.fd_error < p.bitension_norm) resolved_violation = true;
    }
  }
  if (!any) return Verdict::Inconclusive;
  if (!all_bitension_small) return resolved_violation ? Verdict::NotBiharmonic : Verdict::Inconclusive;
  // a zero-residual verdict has to hold at every sample
  if (any_failed) return Verdict::Inconclusive;
  if (all_tension_small) return Verdict::Harmonic;
  return tension_clear ? Verdict::ProperBiharmonic : Verdict::Inconclusive;
}

ResidualReport classify(const SmoothMap2& map, const Metric2& gM, const Metric2& gN, const GridSpec& grid,
                        Method method, const Tolerances& tol) {
  const std::vector<Point2> pts = grid.points(map, gM, gN);
  std::vector<PointRecord> recs(pts.size());
  std::vector<std::exception_ptr> errs(pts.size());
  parallel_for(pts.size(), [&](size_t i) {
    recs[i].point = pts[i];
    try {
      recs[i].residual = biharmonic_residual(map, gM, gN, pts[i], method, tol);
    } catch (const Error&) {
      errs[i] = std::current_exception();
      recs[i].error = describe(errs[i]);
    }
  });
  if (std::all_of(errs.begin(), errs.end(), [](const auto& e) { return static_cast<bool>(e); })) {
    std::rethrow_exception(errs.front());
  }
  ResidualReport rep;
  rep.config.method = method;
  rep.config.tol = tol;
  rep.config.rect = grid.rect_or(gM.domain());
  rep.config.nx = grid.nx;
  rep.config.ny = grid.ny;
  rep.config.margin = grid.margin;
  rep.points = std::move(recs);
  rep.aggregates = aggregate(rep.points);
  rep.verdict = decide(rep.points, tol);
  return rep;
}

ResidualReport classify_fixture(const Fixture& f, const std::string& id,
                                const std::vector<std::pair<std::string, double>>& params, const GridSpec& grid,
                                Method method, const Tolerances& tol) {
  GridSpec g = grid;
  if (!g.rect) g.rect = f.rect;
  ResidualReport rep;
  if (method == Method::General || !f.conformal) {
    rep = classify(f.map, f.domain, f.target, g, method, tol);
  } else {
    // conformal formulas run in the isothermal view; only the default rectangle
    // can be translated there
    const ConformalView& v = *f.conformal;
    if (!grid.rect) g.rect = v.rect;
    rep = classify(v.map, v.domain, v.target, g, method, tol);
  }
  rep.config.catalog_id = id;
  rep.config.params = params;
  return rep;
}

CrossCheck cross_check(const SmoothMap2& map, const Metric2& gM, const Metric2& gN, const GridSpec& grid,
                       const Tolerances& tol) {
  if (gM.form() != MetricForm::Conformal || gN.form() != MetricForm::Conformal) {
    throw UnsupportedForm("cross_check needs conformal domain and target metrics");
  }
  const std::vector<Point2> pts = grid.points(map, gM, gN);
  std::vector<PointResidual> res(pts.size());
  std::vector<std::exception_ptr> errs(pts.size());
  parallel_for(pts.size(), [&](size_t i) {
    try {
      res[i] = biharmonic_residual(map, gM, gN, pts[i], Method::Both, tol);
    } catch (const Error&) {
      errs[i] = std::current_exception();
    }
  });
  CrossCheck out;
  for (size_t i = 0; i < pts.size(); ++i) {
    if (errs[i]) std::rethrow_exception(errs[i]);
    const double rel = res[i].formula_gap / std::max(std::abs(res[i].bitension.as_complex()), 1.0);
    if (out.points == 0 || rel > out.max_rel_gap) out.worst_point = pts[i];
    out.max_rel_gap = std::max(out.max_rel_gap, rel);
    out.max_abs_gap = std::max(out.max_abs_gap, res[i].formula_gap);
    ++out.points;
  }
  return out;
}

std::vector<double> ParamRange::values() const {
  std::vector<double> v;
  if (count <= 0) return v;
  if (count == 1) return {start};
  for (int i = 0; i < count; ++i) v.push_back(start + (end - start) * i / (count - 1));
  return v;
}

std::vector<ScanRow> parameter_scan(const std::string& id, const std::vector<ParamRange>& ranges,
                                    const GridSpec& grid, Method method, const Tolerances& tol) {
  const CatalogEntry& entry = find_entry(id);
  std::vector<std::vector<double>> axes;
  size_t total = 1;
  for (const auto& r : ranges) {
    resolve_params(entry, {{r.name, 0.0}});  // reject unknown names up front
    axes.push_back(r.values());
    total *= axes.back().size();
  }
  std::vector<ScanRow> rows;
  rows.reserve(total);
  for (size_t k = 0; k < total; ++k) {
    Params over;
    size_t rem = k;
    for (size_t a = ranges.size(); a-- > 0;) {
      over[ranges[a].name] = axes[a][rem % axes[a].size()];
      rem /= axes[a].size();
    }
    ScanRow row;
    try {
      row.params = resolve_params(entry, over);
      const Fixture f = entry.build([&] {
        Params p;
        for (const auto& [n, v] : row.params) p[n] = v;
        return p;
      }());
      row.expected = f.expected;
      const ResidualReport rep = classify_fixture(f, id, row.params, grid, method, tol);
      row.verdict = rep.verdict;
      row.max_tension = rep.aggregates.max_tension;
      row.max_bitension = rep.aggregates.max_bitension;
    } catch (const Error& e) {
      if (row.params.empty())
        for (const auto& [n, v] : over) row.params.emplace_back(n, v);
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace biharm

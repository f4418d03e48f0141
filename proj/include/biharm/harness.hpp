#pragma once

// Grid sampling, classification of a map from its residuals, agreement of the
// two bitension formulas, and parameter scans over catalog families.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "biharm/catalog.hpp"
#include "biharm/map_calculus.hpp"
#include "biharm/verdict.hpp"

namespace biharm {

struct GridSpec {
  /// Sampling rectangle; unset means the fixture's recommended one.
  std::optional<Rect> rect;
  int nx = 21;
  int ny = 21;
  /// Points (and their images) closer than this to the edge of a metric's
  /// validity rectangle are skipped.
  double margin = 0.1;
  /// A point is dropped when any predicate returns true.
  std::vector<std::function<bool(Point2)>> exclusions;

  /// Throws EmptyGrid when nx or ny < 2, the rectangle is empty, or
  /// every candidate point is excluded.
  std::vector<Point2> points(const SmoothMap2& map, const Metric2& gM, const Metric2& gN) const;
  Rect rect_or(const Rect& fallback) const { return rect ? *rect : fallback; }
};

struct PointRecord {
  Point2 point;
  std::optional<PointResidual> residual;
  std::string error;  // set when evaluation threw
};

struct Aggregates {
  int evaluated = 0;
  int failed = 0;
  double max_tension = 0.0;
  double min_tension = 0.0;
  double max_bitension = 0.0;
  double max_fd_error = 0.0;
  double max_formula_gap = 0.0;
  Point2 argmax_tension;
  Point2 argmax_bitension;
};

struct RunInfo {
  std::string catalog_id;  // empty for ad-hoc maps
  std::vector<std::pair<std::string, double>> params;
  Method method = Method::General;
  Tolerances tol;
  Rect rect;
  int nx = 0;
  int ny = 0;
  double margin = 0.0;
};

struct ResidualReport {
  RunInfo config;
  std::vector<PointRecord> points;
  Aggregates aggregates;
  Verdict verdict = Verdict::Inconclusive;
};

/// Decision rule over evaluated points (also used by the tests directly).
Verdict decide(const std::vector<PointRecord>& points, const Tolerances& tol);

ResidualReport classify(const SmoothMap2& map, const Metric2& gM, const Metric2& gN, const GridSpec& grid,
                        Method method = Method::General, const Tolerances& tol = {});

/// classify over a fixture, with the fixture's rectangle as default and the
/// provenance fields filled in.
ResidualReport classify_fixture(const Fixture& f, const std::string& id,
                                const std::vector<std::pair<std::string, double>>& params, const GridSpec& grid,
                                Method method = Method::General, const Tolerances& tol = {});

struct CrossCheck {
  double max_abs_gap = 0.0;
  double max_rel_gap = 0.0;  // gap / max(|general value|, 1)
  Point2 worst_point;
  int points = 0;
};

/// Complex-formula against general-formula bitension. Both metrics must be conformal.
CrossCheck cross_check(const SmoothMap2& map, const Metric2& gM, const Metric2& gN, const GridSpec& grid,
                       const Tolerances& tol = {});

/// Inclusive range start:end with `count` samples (count 1 means start only).
struct ParamRange {
  std::string name;
  double start = 0.0;
  double end = 0.0;
  int count = 1;

  std::vector<double> values() const;
};

struct ScanRow {
  std::vector<std::pair<std::string, double>> params;
  std::optional<Verdict> expected;  // unset when the fixture could not be built
  Verdict verdict = Verdict::Inconclusive;
  double max_tension = 0.0;
  double max_bitension = 0.0;
  std::string error;
};

/// One row per lattice point, the last range varying fastest. Throws UnknownFamily.
std::vector<ScanRow> parameter_scan(const std::string& id, const std::vector<ParamRange>& ranges,
                                    const GridSpec& grid, Method method = Method::General,
                                    const Tolerances& tol = {});

/// Worker count: BIHARMONIC_LAB_THREADS if set and positive, else hardware concurrency.
int worker_count();

}  // namespace biharm

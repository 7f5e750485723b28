#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bubbletile/errors.hpp"
#include "bubbletile/sensor_design.hpp"

namespace bubbletile {

// Cubic pressure-to-force characteristic.
//
// evaluate() is the raw polynomial c3*q^3 + c2*q^2 + c1*q + c0 over the
// normalized pressure q in [0, 1]. Physical force is measured relative to the
// rest reading and scaled: force_from_normalized() returns
// scale * (evaluate(q) - evaluate(0)), so a curve fitted directly in Newtons
// carries scale = 1 and c0 ~ 0, while the published reference shape keeps its
// rest offset in c0 without it ever appearing as phantom force.
struct CalibrationCurve {
    double c3 = 0.0;
    double c2 = 0.0;
    double c1 = 0.0;
    double c0 = 0.0;
    double r_squared = 1.0;
    double scale = 1.0;
};

// The published characteristic of the reference dome (11 mm, 2.17 MPa):
// 0.13 q^3 + 0.02354 q^2 + 0.5702 q + 0.1309, scaled so full span
// (q: 0 -> 1) maps to the 30 N saturation force.
CalibrationCurve paper_reference_curve();

double evaluate(const CalibrationCurve& curve, double q);
double curve_derivative(const CalibrationCurve& curve, double q);

// Inverse of evaluate() on [0, 1] by bisection to an interval below 1e-12.
// The value must lie within [evaluate(0), evaluate(1)]; the curve must be
// monotone on [0, 1]. Throws DomainError otherwise.
double invert(const CalibrationCurve& curve, double value);

double force_from_normalized(const CalibrationCurve& curve, double q);

// (p - baseline) / (sensor_max - baseline); rest reads 0, saturation 1.
double normalize_pressure(double pressure_kpa, const SensorDesign& design);

struct CalibrationPoint {
    double pressure_norm = 0.0;
    double force_n = 0.0;
};

// One indentation experiment: normalized pressure vs reference force.
struct IndentationRun {
    std::uint64_t run_id = 0;
    std::vector<CalibrationPoint> samples;
};

// Least squares cubic through (pressure_norm, force_n) points. Needs at
// least 4 distinct abscissae. The fit is rejected (FitError) when the
// resulting cubic is not non-decreasing on [0, 1]; the message carries the
// most negative derivative and where it occurs.
CalibrationCurve fit_cubic(const std::vector<CalibrationPoint>& points);
CalibrationCurve fit_cubic_runs(const std::vector<IndentationRun>& runs);

// Repeated-run summary on a common force grid.
//
// Runs are aligned on force (the controlled axis: the indenter pushes to a
// force, pressure is the reading). The grid spans the forces all runs cover;
// per run, samples are averaged within each grid bin, with linear
// interpolation filling bins a run skipped. force_grid holds each bin's mean
// observed force (its center only when no sample landed in it), so the pairs
// sit on the data instead of a fraction of a ramp step off it.
// mean_pressure averages runs,
// ci95 is 1.96 * std_across_runs / sqrt(n_runs), pooled_std pools every
// sample's deviation from its own bin mean (per-sample repeatability).
struct AggregateCurve {
    std::vector<double> force_grid;
    std::vector<double> mean_pressure;
    std::vector<double> ci95;
    std::vector<double> std_across_runs;
    double pooled_std = 0.0;
    int n_runs = 0;
};

// Throws AggregationError when runs share no force support. A single common
// force value degenerates to a one-point grid.
AggregateCurve aggregate_runs(const std::vector<IndentationRun>& runs, int n_grid = 401);

} // namespace bubbletile

#include "bubbletile/calibration.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <set>

namespace bubbletile {

namespace {

// Minimum of the curve's derivative over [0, 1], with its location. The
// derivative is a parabola, so checking both ends and the vertex is exact.
std::pair<double, double> min_derivative(const CalibrationCurve& curve) {
    auto d = [&](double q) { return curve_derivative(curve, q); };
    double best_q = 0.0;
    double best = d(0.0);
    if (d(1.0) < best) {
        best = d(1.0);
        best_q = 1.0;
    }
    if (curve.c3 != 0.0) {
        double vertex = -curve.c2 / (3.0 * curve.c3);
        if (vertex > 0.0 && vertex < 1.0 && d(vertex) < best) {
            best = d(vertex);
            best_q = vertex;
        }
    }
    return {best, best_q};
}

} // namespace

CalibrationCurve paper_reference_curve() {
    CalibrationCurve curve;
    curve.c3 = 0.13;
    curve.c2 = 0.02354;
    curve.c1 = 0.5702;
    curve.c0 = 0.1309;
    curve.r_squared = 0.9999;
    // Full span (rest to saturation) maps to the 30 N saturation force.
    curve.scale = 30.0 / (evaluate(curve, 1.0) - evaluate(curve, 0.0));
    return curve;
}

double evaluate(const CalibrationCurve& curve, double q) {
    return ((curve.c3 * q + curve.c2) * q + curve.c1) * q + curve.c0;
}

double curve_derivative(const CalibrationCurve& curve, double q) {
    return (3.0 * curve.c3 * q + 2.0 * curve.c2) * q + curve.c1;
}

double invert(const CalibrationCurve& curve, double value) {
    auto [dmin, at] = min_derivative(curve);
    if (dmin < -1e-9) {
        throw DomainError("cannot invert non-monotone curve (derivative " +
                          std::to_string(dmin) + " at q=" + std::to_string(at) + ")");
    }
    double f0 = evaluate(curve, 0.0);
    double f1 = evaluate(curve, 1.0);
    double tol = 1e-9 * std::max(1.0, std::abs(f1 - f0));
    if (value < f0 - tol || value > f1 + tol) {
        throw DomainError("value " + std::to_string(value) +
                          " outside curve range [" + std::to_string(f0) + ", " +
                          std::to_string(f1) + "]");
    }
    if (value <= f0) return 0.0;
    if (value >= f1) return 1.0;
    double lo = 0.0;
    double hi = 1.0;
    for (int i = 0; i < 100 && (hi - lo) > 1e-15; ++i) {
        double mid = 0.5 * (lo + hi);
        if (evaluate(curve, mid) < value) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double force_from_normalized(const CalibrationCurve& curve, double q) {
    return curve.scale * (evaluate(curve, q) - evaluate(curve, 0.0));
}

double normalize_pressure(double pressure_kpa, const SensorDesign& design) {
    return (pressure_kpa - design.baseline_pressure_kpa) /
           (design.sensor_max_kpa - design.baseline_pressure_kpa);
}

CalibrationCurve fit_cubic(const std::vector<CalibrationPoint>& points) {
    std::set<long long> distinct;
    for (const auto& p : points) {
        distinct.insert(static_cast<long long>(std::llround(p.pressure_norm * 1e12)));
    }
    if (distinct.size() < 4) {
        throw FitError("cubic fit needs at least 4 distinct pressures, got " +
                       std::to_string(distinct.size()));
    }

    const auto n = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXd a(n, 4);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double q = points[static_cast<size_t>(i)].pressure_norm;
        a(i, 0) = q * q * q;
        a(i, 1) = q * q;
        a(i, 2) = q;
        a(i, 3) = 1.0;
        y(i) = points[static_cast<size_t>(i)].force_n;
    }
    Eigen::Vector4d c = a.colPivHouseholderQr().solve(y);

    CalibrationCurve curve;
    curve.c3 = c(0);
    curve.c2 = c(1);
    curve.c1 = c(2);
    curve.c0 = c(3);
    curve.scale = 1.0;

    auto [dmin, at] = min_derivative(curve);
    if (dmin < -1e-9) {
        throw FitError("fitted curve is not monotone on [0,1]: derivative " +
                       std::to_string(dmin) + " at q=" + std::to_string(at));
    }

    double mean = y.mean();
    double ss_tot = (y.array() - mean).square().sum();
    double ss_res = (a * c - y).array().square().sum();
    curve.r_squared = ss_tot <= 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
    curve.r_squared = std::clamp(curve.r_squared, 0.0, 1.0);
    return curve;
}

CalibrationCurve fit_cubic_runs(const std::vector<IndentationRun>& runs) {
    std::vector<CalibrationPoint> all;
    for (const auto& run : runs) {
        all.insert(all.end(), run.samples.begin(), run.samples.end());
    }
    return fit_cubic(all);
}

AggregateCurve aggregate_runs(const std::vector<IndentationRun>& runs, int n_grid) {
    if (runs.size() < 2) {
        throw AggregationError("need at least 2 runs to average, got " +
                               std::to_string(runs.size()));
    }
    if (n_grid < 2) throw AggregationError("grid must have at least 2 points");
    for (const auto& run : runs) {
        if (run.samples.empty()) {
            throw AggregationError("run " + std::to_string(run.run_id) + " is empty");
        }
    }

    // Shared force support across runs.
    double lo = -1e300;
    double hi = 1e300;
    std::vector<std::vector<CalibrationPoint>> sorted(runs.size());
    for (size_t r = 0; r < runs.size(); ++r) {
        sorted[r] = runs[r].samples;
        std::sort(sorted[r].begin(), sorted[r].end(),
                  [](const CalibrationPoint& a, const CalibrationPoint& b) {
                      return a.force_n < b.force_n;
                  });
        lo = std::max(lo, sorted[r].front().force_n);
        hi = std::min(hi, sorted[r].back().force_n);
    }
    if (hi < lo - 1e-12) {
        throw AggregationError("runs share no force support (need overlap, have [" +
                               std::to_string(lo) + ", " + std::to_string(hi) + "])");
    }

    AggregateCurve out;
    out.n_runs = static_cast<int>(runs.size());

    bool degenerate = (hi - lo) < 1e-12;
    int points = degenerate ? 1 : n_grid;
    double step = degenerate ? 0.0 : (hi - lo) / (points - 1);
    auto bin_of = [&](double f) -> int {
        if (degenerate) {
            return std::abs(f - 0.5 * (lo + hi)) <= 1e-9 ? 0 : -1;
        }
        int idx = static_cast<int>(std::lround((f - lo) / step));
        return (idx >= 0 && idx < points) ? idx : -1;
    };

    // Bin abscissa: the mean of the forces observed in the bin, not its
    // center. The ramp steps through forces discretely, so the center would
    // sit a fraction of a step off the data and bend the downstream fit.
    // Bins nobody hit keep their center (they get interpolated values).
    std::vector<double> bin_force(points, 0.0);
    {
        std::vector<double> fsum(points, 0.0);
        std::vector<int> fcount(points, 0);
        for (size_t r = 0; r < runs.size(); ++r) {
            for (const auto& p : sorted[r]) {
                int idx = bin_of(p.force_n);
                if (idx < 0) continue;
                fsum[idx] += p.force_n;
                ++fcount[idx];
            }
        }
        for (int i = 0; i < points; ++i) {
            bin_force[i] = fcount[i] > 0 ? fsum[i] / fcount[i] : lo + step * i;
        }
    }

    // Per run, per grid bin: mean of in-bin samples, or interpolation at the
    // bin force when the run skipped the bin.
    std::vector<std::vector<double>> run_values(runs.size(),
                                                std::vector<double>(points, 0.0));
    std::vector<double> pooled_ss(points, 0.0);
    std::vector<int> pooled_n(points, 0);
    std::vector<double> bin_sum(points, 0.0);
    std::vector<int> bin_count(points, 0);

    for (size_t r = 0; r < runs.size(); ++r) {
        std::vector<double> sum(points, 0.0);
        std::vector<int> count(points, 0);
        for (const auto& p : sorted[r]) {
            int idx = bin_of(p.force_n);
            if (idx < 0) continue;
            sum[idx] += p.pressure_norm;
            ++count[idx];
        }
        for (int i = 0; i < points; ++i) {
            if (count[i] > 0) {
                run_values[r][i] = sum[i] / count[i];
            } else {
                double f = bin_force[i];
                const auto& s = sorted[r];
                auto it = std::lower_bound(s.begin(), s.end(), f,
                                           [](const CalibrationPoint& p, double v) {
                                               return p.force_n < v;
                                           });
                if (it == s.begin()) {
                    run_values[r][i] = it->pressure_norm;
                } else if (it == s.end()) {
                    run_values[r][i] = s.back().pressure_norm;
                } else {
                    const auto& b = *it;
                    const auto& a = *(it - 1);
                    double span = b.force_n - a.force_n;
                    double w = span <= 0.0 ? 0.0 : (f - a.force_n) / span;
                    run_values[r][i] =
                        a.pressure_norm + w * (b.pressure_norm - a.pressure_norm);
                }
            }
        }
        // Accumulate per-sample pooled statistics (pass 1: bin means).
        for (const auto& p : sorted[r]) {
            int idx = bin_of(p.force_n);
            if (idx < 0) continue;
            bin_sum[idx] += p.pressure_norm;
            ++bin_count[idx];
        }
    }

    // Pass 2: within-bin squared deviation across all runs' samples.
    for (size_t r = 0; r < runs.size(); ++r) {
        for (const auto& p : sorted[r]) {
            int idx = bin_of(p.force_n);
            if (idx < 0 || bin_count[idx] < 2) continue;
            double mean = bin_sum[idx] / bin_count[idx];
            double d = p.pressure_norm - mean;
            pooled_ss[idx] += d * d;
            ++pooled_n[idx];
        }
    }
    double ss = 0.0;
    long dof = 0;
    for (int i = 0; i < points; ++i) {
        if (bin_count[i] >= 2) {
            ss += pooled_ss[i];
            dof += bin_count[i] - 1;
        }
    }
    out.pooled_std = dof > 0 ? std::sqrt(ss / static_cast<double>(dof)) : 0.0;

    out.force_grid.resize(points);
    out.mean_pressure.resize(points);
    out.ci95.resize(points);
    out.std_across_runs.resize(points);
    int n = out.n_runs;
    for (int i = 0; i < points; ++i) {
        out.force_grid[i] = degenerate ? 0.5 * (lo + hi) : bin_force[i];
        double mean = 0.0;
        for (size_t r = 0; r < runs.size(); ++r) mean += run_values[r][i];
        mean /= n;
        out.mean_pressure[i] = mean;
        double var = 0.0;
        if (n > 1) {
            for (size_t r = 0; r < runs.size(); ++r) {
                double d = run_values[r][i] - mean;
                var += d * d;
            }
            var /= (n - 1);
        }
        out.std_across_runs[i] = std::sqrt(var);
        out.ci95[i] = 1.96 * out.std_across_runs[i] / std::sqrt(static_cast<double>(n));
    }
    return out;
}

} // namespace bubbletile

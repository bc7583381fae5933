#include "rss/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace rss {

double n_vp_total(double n_h, double n_v) {
    return (n_h * (n_v - 1.0) + n_v * (n_h - 1.0)) / 2.0;
}

double worker_ratio(double n_w, double n_h, double n_v) {
    return n_w / (n_h + n_v);
}

double workforce_factor(double alpha) {
    if (!(alpha > 0.0) || alpha > 1.0 + 1e-12)
        throw std::invalid_argument("worker ratio must be in (0, 1]");
    double u = 1.0 - alpha;
    return 1.0 - u * u;
}

double attenuation(double n_h, double n_v, const AttenuationCoeffs& c) {
    return 1.0 / (c.a + c.b * (n_h + n_v));
}

double occupied_vps(double alpha, double n_r, double n_h, double n_v,
                    const AttenuationCoeffs& c) {
    if (n_r <= 0) return 0.0;
    return std::min(workforce_factor(alpha) * attenuation(n_h, n_v, c) *
                        n_vp_total(n_h, n_v),
                    n_r);
}

void area_proportions(double alpha, double p[4]) {
    p[0] = alpha * (1.0 - alpha);
    p[1] = alpha * (1.0 - alpha);
    p[2] = (1.0 - alpha) * (1.0 - alpha);
    p[3] = alpha * alpha;
}

void expected_lengths(double n_h, double n_v, double alpha, double cell_len,
                      double el[4], const DistanceOptions& opt) {
    if (!(alpha > 0.0) || alpha > 1.0 + 1e-12)
        throw std::invalid_argument("worker ratio must be in (0, 1]");
    const double s = n_h + n_v;
    const double sq = n_h * n_h + n_v * n_v;
    const double q = opt.squared_term == SquaredTermReading::WorkerRatio
                         ? alpha
                         : opt.attenuation_a;
    const double D2 = 2.0 * cell_len;

    el[0] = D2 * (((9.0 + q * q) / 6.0 * sq - n_h * n_v - 1.0 / 3.0) / s + 1.0);
    el[1] = D2 * (alpha * sq / (3.0 * s) - 2.0 / (3.0 * alpha * s) +
                  1.5 * n_h * n_v / s);
    double detour = opt.three_turn == ThreeTurnForm::Collected ? 1.0 : n_h * n_v;
    el[2] = D2 * (s / 2.0 + (1.0 + alpha) / 4.0 * detour / s);
    el[3] = 0.5 * (el[0] + el[1]);
}

bool distance_model_preconditions(double n_h, double n_v) {
    double lo = std::min(n_h, n_v), hi = std::max(n_h, n_v);
    return lo >= 4.0 && hi / lo < 2.0;
}

double avg_travel_distance(double n_h, double n_v, double alpha,
                           double cell_len, const DistanceOptions& opt) {
    double p[4], el[4];
    area_proportions(alpha, p);
    expected_lengths(n_h, n_v, alpha, cell_len, el, opt);
    return p[0] * el[0] + p[1] * el[1] + p[2] * el[2] + p[3] * el[3];
}

double avg_travel_distance_collected(double n_h, double n_v, double alpha,
                                     double cell_len) {
    const double s = n_h + n_v;
    const double a = alpha, a2 = a * a, a3 = a2 * a, a4 = a2 * a2;
    const double term_sq = (n_h * n_h + n_v * n_v) / s *
                           (-a4 - 5.0 * a2 + 18.0 * a) / 12.0;
    const double term_prod = n_h * n_v / s * (-a2 + 2.0 * a) / 4.0;
    const double term_inv = 1.0 / s * (3.0 * a3 - a2 - 3.0 * a - 5.0) / 12.0;
    const double term_sum = s * (a2 - 2.0 * a + 1.0) / 2.0;
    const double term_const = (-a2 + 2.0 * a) / 2.0;
    return 2.0 * cell_len *
           (term_sq + term_prod + term_inv + term_sum + term_const);
}

ThroughputEstimate throughput_estimate(double n_h, double n_v, double n_w,
                                       double n_r, double cell_len,
                                       double tau_e, const AttenuationCoeffs& c,
                                       const DistanceOptions& opt) {
    ThroughputEstimate e;
    e.n_vp_total = n_vp_total(n_h, n_v);
    if (n_r <= 0 || n_w <= 0) return e;
    double alpha = worker_ratio(n_w, n_h, n_v);
    e.kappa = workforce_factor(alpha);
    e.beta = attenuation(n_h, n_v, c);
    e.n_vp_occupied = std::min(e.kappa * e.beta * e.n_vp_total, n_r);
    e.avg_travel_m = avg_travel_distance(n_h, n_v, alpha, cell_len, opt);
    e.avg_travel_cells = e.avg_travel_m / cell_len;
    e.m_bar = e.n_vp_occupied * (cell_len / tau_e);
    e.throughput = 3600.0 * e.m_bar / e.avg_travel_m;
    return e;
}

double throughput_upper_bound(double n_h, double n_v, double n_l,
                              double cell_len, double tau_e,
                              const AttenuationCoeffs& c,
                              const DistanceOptions& opt) {
    return throughput_estimate(n_h, n_v, n_l,
                               std::numeric_limits<double>::infinity(),
                               cell_len, tau_e, c, opt)
        .throughput;
}

int critical_station_count(int n_h, int n_v, double cell_len, double tau_e,
                           const AttenuationCoeffs& c,
                           const DistanceOptions& opt) {
    int best = 1;
    double best_t = -1.0;
    for (int nl = 1; nl <= n_h + n_v; ++nl) {
        double t = throughput_upper_bound(n_h, n_v, nl, cell_len, tau_e, c, opt);
        if (t > best_t) {
            best_t = t;
            best = nl;
        }
    }
    return best;
}

CalibrationResult calibrate_attenuation(const std::vector<CalibrationPoint>& pts) {
    std::set<double> scales;
    for (const auto& p : pts) scales.insert(p.aisle_sum);
    if (scales.size() < 3)
        throw std::invalid_argument(
            "attenuation calibration needs at least three network scales");

    const double n = static_cast<double>(pts.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& p : pts) {
        if (!(p.beta_measured > 0))
            throw std::invalid_argument("measured beta must be positive");
        double y = 1.0 / p.beta_measured;
        sx += p.aisle_sum;
        sy += y;
        sxx += p.aisle_sum * p.aisle_sum;
        sxy += p.aisle_sum * y;
    }
    double denom = n * sxx - sx * sx;
    double b = (n * sxy - sx * sy) / denom;
    double a = (sy - b * sx) / n;

    CalibrationResult r;
    r.coeffs = {a, b};
    double ss_res = 0, ss_tot = 0, mean_y = sy / n;
    for (const auto& p : pts) {
        double y = 1.0 / p.beta_measured;
        double res = y - (a + b * p.aisle_sum);
        r.residuals.push_back(res);
        ss_res += res * res;
        ss_tot += (y - mean_y) * (y - mean_y);
    }
    r.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return r;
}

}  // namespace rss

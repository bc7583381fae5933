#pragma once

#include <vector>

namespace rss {

// Attenuation of usable VP capacity under rigid space-time reservations,
// beta = 1 / (a + b * (n_h + n_v)).
struct AttenuationCoeffs {
    double a = 1.4;
    double b = 0.012;
};

// The (9 + x^2)/6 coefficient in the one-turn expected length admits two
// readings of the symbol inside the square. Only the worker-ratio reading
// makes the term-by-term sum equal the collected closed form, which the
// identity tests check to 1e-9; the alternative is kept selectable.
enum class SquaredTermReading { WorkerRatio, AttenuationA };

// The three-turn expected length admits two detour terms; only the
// `Collected` reading makes the weighted sum reproduce the collected
// polynomial the bound analysis is built on, so it is the default.
enum class ThreeTurnForm { Collected, AsPrinted };

struct DistanceOptions {
    SquaredTermReading squared_term = SquaredTermReading::WorkerRatio;
    ThreeTurnForm three_turn = ThreeTurnForm::Collected;
    double attenuation_a = 1.4;  // used only under AttenuationA
};

struct ThroughputEstimate {
    double n_vp_total = 0;
    double kappa = 0;
    double beta = 0;
    double n_vp_occupied = 0;
    double avg_travel_m = 0;
    double avg_travel_cells = 0;
    double m_bar = 0;           // total vehicular distance per second
    double throughput = 0;      // sorts/h
};

// Total VPs in the network: [n_h*(n_v-1) + n_v*(n_h-1)] / 2. Accepts real
// arguments so the layout optimizer can evaluate the continuous relaxation.
double n_vp_total(double n_h, double n_v);

// Worker ratio alpha = n_w / (n_h + n_v), valid on (0, 1].
double worker_ratio(double n_w, double n_h, double n_v);

// kappa = 1 - (1 - alpha)^2.
double workforce_factor(double alpha);

double attenuation(double n_h, double n_v, const AttenuationCoeffs& c);

// min{kappa * beta * n_vp_total, n_r}.
double occupied_vps(double alpha, double n_r, double n_h, double n_v,
                    const AttenuationCoeffs& c);

// Area proportions p1..p4 (sum to one) and expected path lengths in meters.
void area_proportions(double alpha, double p[4]);
void expected_lengths(double n_h, double n_v, double alpha, double cell_len,
                      double el[4], const DistanceOptions& opt = {});

// Regime the distance averages are derived for: length-to-width ratio
// under two and at least four aisles each way.
bool distance_model_preconditions(double n_h, double n_v);

// Weighted average travel distance of a sorting task, meters. Inputs outside
// the model preconditions are still evaluated (callers may warn).
double avg_travel_distance(double n_h, double n_v, double alpha,
                           double cell_len, const DistanceOptions& opt = {});

// Collected single-polynomial form of the same quantity.
double avg_travel_distance_collected(double n_h, double n_v, double alpha,
                                     double cell_len);

// Sorting throughput estimate (sorts per hour) for a configuration.
ThroughputEstimate throughput_estimate(double n_h, double n_v, double n_w,
                                       double n_r, double cell_len,
                                       double tau_e,
                                       const AttenuationCoeffs& c,
                                       const DistanceOptions& opt = {});

// Upper bound with every one of the n_l stations staffed and unlimited
// robots, sorts per hour.
double throughput_upper_bound(double n_h, double n_v, double n_l,
                              double cell_len, double tau_e,
                              const AttenuationCoeffs& c,
                              const DistanceOptions& opt = {});

// Integer staffing level maximizing the upper bound (scan over 1..n_h+n_v).
int critical_station_count(int n_h, int n_v, double cell_len, double tau_e,
                           const AttenuationCoeffs& c,
                           const DistanceOptions& opt = {});

struct CalibrationPoint {
    double aisle_sum = 0;       // n_h + n_v
    double beta_measured = 0;   // occupied-VP ratio from simulation
};

struct CalibrationResult {
    AttenuationCoeffs coeffs;
    double r_squared = 0;
    std::vector<double> residuals;  // on 1/beta
};

// Least-squares fit of 1/beta against (n_h + n_v). Needs at least three
// distinct network scales.
CalibrationResult calibrate_attenuation(const std::vector<CalibrationPoint>& pts);

}  // namespace rss

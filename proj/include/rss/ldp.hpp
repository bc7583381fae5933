#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "rss/model.hpp"

namespace rss {

// Monthly unit costs and site constants. Discounting follows a fixed
// monthly rate over the investment horizon.
struct CostParams {
    double m_site = 10.0;     // per m^2 per month
    double m_station = 400.0; // per loading station per month
    double m_worker = 5000.0; // per worker per month
    double m_robot = 200.0;   // per robot per month
    double w_wait = 5.0;      // waiting zone width, m
    double w_load = 5.0;      // loading zone width, m
    double theta = 1.0 / 6.0; // share of peak months
    double gamma0 = 0.005;    // monthly interest rate
    int horizon_months = 60;
};

// Discounted present value of a unit monthly cost: sum_{t=0..horizon} v^t.
double discount(double monthly, double gamma0, int horizon_months);

struct DemandSpec {
    double t_high = 3000.0;  // sorts/h, peak
    double t_low = 2400.0;   // sorts/h, off-peak
    int min_outlets = 100;
};

// Decision variables; the station count always equals the peak worker count.
struct LayoutDesign {
    int n_h = 4, n_v = 4;
    int n_w_high = 1, n_r_high = 1;
    int n_w_low = 1, n_r_low = 1;
    int n_l() const { return n_w_high; }
};

struct LdpModel {
    double cell_len = 1.0;
    double tau_e = 0.5;
    double tau_c = 2.0;
    AttenuationCoeffs beta{1.4, 0.012};
    DistanceOptions dist{};
};

double facility_cost(const LayoutDesign& d, const CostParams& c, double cell_len);
double operations_cost(const LayoutDesign& d, const CostParams& c);
double design_cost(const LayoutDesign& d, const CostParams& c, double cell_len);

// Continuous decision vector (n_h, n_v, n_w_high, n_r_high, n_w_low,
// n_r_low); the station count is tied to n_w_high.
using LdpPoint = std::array<double, 6>;

LdpPoint to_point(const LayoutDesign& d);
LayoutDesign round_up_to_domain(const LdpPoint& w);

double design_cost(const LdpPoint& w, const CostParams& c, double cell_len);

// Six inequality residuals, feasible iff all <= 0: robot counts within the
// eligible VP capacity (peak/off-peak), throughput targets met (peak/off-
// peak, sorts/h), outlet coverage, and worker-station bound.
std::array<double, 6> constraint_values(const LdpPoint& w, const DemandSpec& dem,
                                        const LdpModel& model);

bool ldp_feasible(const LayoutDesign& d, const DemandSpec& dem,
                  const LdpModel& model, double tol = 1e-6);

// Direction-finding LP around w: minimize grad_C'd + mu * sum(y) subject to
// y_i >= g_i + grad_g_i'd, |d| <= delta, y >= 0. Solved with the internal
// dense simplex. Infeasibility cannot occur (y absorbs violations).
struct LpSubproblemResult {
    bool ok = false;
    std::array<double, 6> d{};
    std::array<double, 6> y{};
    double objective = 0;  // grad_C'd + mu * sum(y)
};

LpSubproblemResult lp_subproblem(const LdpPoint& w, const DemandSpec& dem,
                                 const CostParams& costs, const LdpModel& model,
                                 double delta, double mu);

struct PslpOptions {
    double rho0 = 0.1, rho1 = 0.25, rho2 = 0.75;
    double phi = 0.5;
    double delta1 = 4.0, delta_lb = 1.0;
    int max_iters = 200;
    // penalty weight as a multiple of the largest cost-gradient entry,
    // applied to gradient-normalized constraints
    double mu_scale_over_cost_gradient = 3.0;
};

struct PslpResult {
    LayoutDesign design;
    double cost = 0;
    bool feasible = false;
    int iterations = 0;
    int repairs = 0;
    std::vector<double> merit_trace;  // exact merit of accepted iterates
};

// Penalty successive linear programming on the continuous relaxation with
// rounded-up iterates, trust-region ratio control, and greedy post-rounding
// feasibility repair (robots, then workers, then grid growth).
PslpResult pslp_solve(const DemandSpec& dem, const CostParams& costs,
                      const LdpModel& model, const PslpOptions& opt = {});

struct BruteForceResult {
    bool feasible = false;
    LayoutDesign design;
    double cost = 0;
    int64_t evaluated = 0;
};

// Exhaustive search over even grids up to max_aisles and worker counts up to
// max_staff; robot counts are set to their per-configuration minima, which is
// optimal because cost increases with every count.
BruteForceResult brute_force_ldp(const DemandSpec& dem, const CostParams& costs,
                                 const LdpModel& model, int max_aisles,
                                 int max_staff);

}  // namespace rss

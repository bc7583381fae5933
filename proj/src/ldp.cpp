#include "rss/ldp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rss/simplex.hpp"

namespace rss {

double discount(double monthly, double gamma0, int horizon_months) {
    if (gamma0 == 0) return monthly * (horizon_months + 1);
    double v = 1.0 / (1.0 + gamma0);
    return monthly * (1.0 - std::pow(v, horizon_months + 1)) / (1.0 - v);
}

namespace {

struct Discounted {
    double p_site, p_station, p_worker, p_robot;
    explicit Discounted(const CostParams& c)
        : p_site(discount(c.m_site, c.gamma0, c.horizon_months)),
          p_station(discount(c.m_station, c.gamma0, c.horizon_months)),
          p_worker(discount(c.m_worker, c.gamma0, c.horizon_months)),
          p_robot(discount(c.m_robot, c.gamma0, c.horizon_months)) {}
};

// alpha clamped into the model's domain so infeasible iterates still
// evaluate; feasibility itself is enforced by the residuals
double safe_alpha(double n_w, double n_h, double n_v) {
    return std::clamp(n_w / (n_h + n_v), 0.02, 1.0);
}

double vp_capacity(double n_h, double n_v, double n_w, const LdpModel& m) {
    double alpha = safe_alpha(n_w, n_h, n_v);
    double kappa = 1.0 - (1.0 - alpha) * (1.0 - alpha);
    double beta = attenuation(n_h, n_v, m.beta);
    return beta * kappa * 2.0 * m.tau_e *
           (n_h * (n_v - 1.0) + n_v * (n_h - 1.0)) / m.tau_c;
}

double rate_per_hour(double n_h, double n_v, double n_w, double n_r,
                     const LdpModel& m) {
    double alpha = safe_alpha(n_w, n_h, n_v);
    double l = avg_travel_distance(n_h, n_v, alpha, m.cell_len, m.dist);
    return 3600.0 * m.cell_len * n_r / (m.tau_e * l);
}

}  // namespace

double facility_cost(const LayoutDesign& d, const CostParams& c, double cell_len) {
    Discounted p(c);
    double span_h = 2.0 * cell_len * (d.n_h - 1) + c.w_wait + c.w_load;
    double span_v = 2.0 * cell_len * (d.n_v - 1) + c.w_wait + c.w_load;
    return p.p_site * span_h * span_v + p.p_station * d.n_l();
}

double operations_cost(const LayoutDesign& d, const CostParams& c) {
    Discounted p(c);
    return p.p_worker * (c.theta * d.n_w_high + (1 - c.theta) * d.n_w_low) +
           p.p_robot * (c.theta * d.n_r_high + (1 - c.theta) * d.n_r_low);
}

double design_cost(const LayoutDesign& d, const CostParams& c, double cell_len) {
    return facility_cost(d, c, cell_len) + operations_cost(d, c);
}

LdpPoint to_point(const LayoutDesign& d) {
    return {double(d.n_h), double(d.n_v), double(d.n_w_high), double(d.n_r_high),
            double(d.n_w_low), double(d.n_r_low)};
}

LayoutDesign round_up_to_domain(const LdpPoint& w) {
    auto even_ceil = [](double x) {
        int v = (int)std::ceil(x - 1e-9);
        if (v % 2 != 0) ++v;
        return std::max(4, v);
    };
    LayoutDesign d;
    d.n_h = even_ceil(w[0]);
    d.n_v = even_ceil(w[1]);
    d.n_w_high = std::max(1, (int)std::ceil(w[2] - 1e-9));
    d.n_w_high = std::min(d.n_w_high, d.n_h + d.n_v);
    d.n_r_high = std::max(1, (int)std::ceil(w[3] - 1e-9));
    d.n_w_low = std::max(1, (int)std::ceil(w[4] - 1e-9));
    d.n_w_low = std::min(d.n_w_low, d.n_w_high);
    d.n_r_low = std::max(1, (int)std::ceil(w[5] - 1e-9));
    return d;
}

double design_cost(const LdpPoint& w, const CostParams& c, double cell_len) {
    Discounted p(c);
    double span_h = 2.0 * cell_len * (w[0] - 1) + c.w_wait + c.w_load;
    double span_v = 2.0 * cell_len * (w[1] - 1) + c.w_wait + c.w_load;
    return p.p_site * span_h * span_v + p.p_station * w[2] +
           p.p_worker * (c.theta * w[2] + (1 - c.theta) * w[4]) +
           p.p_robot * (c.theta * w[3] + (1 - c.theta) * w[5]);
}

std::array<double, 6> constraint_values(const LdpPoint& w, const DemandSpec& dem,
                                        const LdpModel& m) {
    std::array<double, 6> g{};
    g[0] = w[3] - vp_capacity(w[0], w[1], w[2], m);
    g[1] = w[5] - vp_capacity(w[0], w[1], w[4], m);
    g[2] = dem.t_high - rate_per_hour(w[0], w[1], w[2], w[3], m);
    g[3] = dem.t_low - rate_per_hour(w[0], w[1], w[4], w[5], m);
    g[4] = double(dem.min_outlets) - (w[0] - 1.0) * (w[1] - 1.0);
    g[5] = w[2] - w[0] - w[1];
    return g;
}

bool ldp_feasible(const LayoutDesign& d, const DemandSpec& dem,
                  const LdpModel& model, double tol) {
    auto g = constraint_values(to_point(d), dem, model);
    for (double v : g)
        if (v > tol) return false;
    return d.n_w_low <= d.n_w_high && d.n_h % 2 == 0 && d.n_v % 2 == 0 &&
           d.n_h >= 4 && d.n_v >= 4;
}

namespace {

// analytic cost gradient; throughput constraints use central differences
std::array<double, 6> cost_gradient(const LdpPoint& w, const CostParams& c,
                                    double cell_len) {
    Discounted p(c);
    double span_h = 2.0 * cell_len * (w[0] - 1) + c.w_wait + c.w_load;
    double span_v = 2.0 * cell_len * (w[1] - 1) + c.w_wait + c.w_load;
    return {p.p_site * 2.0 * cell_len * span_v,
            p.p_site * 2.0 * cell_len * span_h,
            p.p_station + p.p_worker * c.theta,
            p.p_robot * c.theta,
            p.p_worker * (1 - c.theta),
            p.p_robot * (1 - c.theta)};
}

std::array<std::array<double, 6>, 6> constraint_gradients(
    const LdpPoint& w, const DemandSpec& dem, const LdpModel& m) {
    std::array<std::array<double, 6>, 6> grad{};
    const double h = 1e-4;
    for (int j = 0; j < 6; ++j) {
        LdpPoint wp = w, wm = w;
        wp[j] += h;
        wm[j] -= h;
        auto gp = constraint_values(wp, dem, m);
        auto gm = constraint_values(wm, dem, m);
        for (int i = 0; i < 4; ++i) grad[i][j] = (gp[i] - gm[i]) / (2 * h);
    }
    // outlet coverage and worker bound have exact gradients
    grad[4] = {-(w[1] - 1.0), -(w[0] - 1.0), 0, 0, 0, 0};
    grad[5] = {-1, -1, 1, 0, 0, 0};
    return grad;
}

double merit(const LdpPoint& w, const DemandSpec& dem, const CostParams& c,
             const LdpModel& m, double mu, const std::array<double, 6>& gscale) {
    double v = design_cost(w, c, m.cell_len);
    auto g = constraint_values(w, dem, m);
    for (int i = 0; i < 6; ++i) v += mu * std::max(0.0, g[i] / gscale[i]);
    return v;
}

}  // namespace

namespace {

LpSubproblemResult lp_subproblem_scaled(const LdpPoint& w, const DemandSpec& dem,
                                        const CostParams& costs,
                                        const LdpModel& model, double delta,
                                        double mu,
                                        const std::array<double, 6>& gscale) {
    auto gc = cost_gradient(w, costs, model.cell_len);
    auto gg = constraint_gradients(w, dem, model);
    auto g0 = constraint_values(w, dem, model);
    for (int i = 0; i < 6; ++i) {
        g0[i] /= gscale[i];
        for (int j = 0; j < 6; ++j) gg[i][j] /= gscale[i];
    }

    // variables: u = d + delta in [0, 2 delta] (6), y (6)
    const int nv = 12;
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    std::vector<double> c(nv, 0.0);
    for (int j = 0; j < 6; ++j) c[j] = gc[j];
    for (int j = 0; j < 6; ++j) c[6 + j] = mu;

    for (int i = 0; i < 6; ++i) {  // grad_g'u - y_i <= grad_g'delta - g_i
        std::vector<double> row(nv, 0.0);
        double rhs = -g0[i];
        for (int j = 0; j < 6; ++j) {
            row[j] = gg[i][j];
            rhs += gg[i][j] * delta;
        }
        row[6 + i] = -1.0;
        a.push_back(row);
        b.push_back(rhs);
    }
    for (int j = 0; j < 6; ++j) {  // u_j <= 2 delta
        std::vector<double> row(nv, 0.0);
        row[j] = 1.0;
        a.push_back(row);
        b.push_back(2.0 * delta);
    }

    LpSubproblemResult out;
    LpResult lp = solve_lp(a, b, c);
    if (!lp.optimal) return out;
    out.ok = true;
    for (int j = 0; j < 6; ++j) out.d[j] = lp.x[j] - delta;
    for (int j = 0; j < 6; ++j) out.y[j] = lp.x[6 + j];
    out.objective = 0;
    for (int j = 0; j < 6; ++j) out.objective += gc[j] * out.d[j] + mu * out.y[j];
    return out;
}

}  // namespace

LpSubproblemResult lp_subproblem(const LdpPoint& w, const DemandSpec& dem,
                                 const CostParams& costs, const LdpModel& model,
                                 double delta, double mu) {
    std::array<double, 6> unit;
    unit.fill(1.0);
    return lp_subproblem_scaled(w, dem, costs, model, delta, mu, unit);
}

namespace {

// first feasible-ish start: smallest even square covering the outlets, all
// stations staffed, robots at the VP capacity
LayoutDesign initial_design(const DemandSpec& dem, const LdpModel& m) {
    int n = 4;
    while ((n - 1) * (n - 1) < dem.min_outlets) n += 2;
    LayoutDesign d;
    for (;;) {
        d.n_h = d.n_v = n;
        d.n_w_high = 2 * n;
        d.n_w_low = 2 * n;
        double cap = vp_capacity(n, n, d.n_w_high, m);
        d.n_r_high = std::max(1, (int)std::floor(cap));
        d.n_r_low = d.n_r_high;
        if (rate_per_hour(n, n, d.n_w_high, d.n_r_high, m) >= dem.t_high ||
            n > 200)
            return d;
        n += 2;
    }
}

// linearized merit at step d
double linear_merit(const LdpPoint& w, const std::array<double, 6>& d,
                    const DemandSpec& dem, const CostParams& costs,
                    const LdpModel& m, double mu,
                    const std::array<double, 6>& gscale) {
    auto gc = cost_gradient(w, costs, m.cell_len);
    auto gg = constraint_gradients(w, dem, m);
    auto g0 = constraint_values(w, dem, m);
    double v = design_cost(w, costs, m.cell_len);
    for (int j = 0; j < 6; ++j) v += gc[j] * d[j];
    for (int i = 0; i < 6; ++i) {
        double gi = g0[i];
        for (int j = 0; j < 6; ++j) gi += gg[i][j] * d[j];
        v += mu * std::max(0.0, gi / gscale[i]);
    }
    return v;
}

// Exact staffing optimum for a fixed grid: robot minima follow from the
// throughput targets, and the worker counts separate into peak and off-peak
// scans with a prefix minimum for the off-peak coupling.
bool optimize_staffing(int nh, int nv, const DemandSpec& dem,
                       const CostParams& costs, const LdpModel& m,
                       LayoutDesign* out) {
    if ((nh - 1) * (nv - 1) < dem.min_outlets) return false;
    Discounted p(costs);
    int cap = nh + nv;
    std::vector<int> nr_h(cap + 1, -1), nr_l(cap + 1, -1);
    std::vector<double> cost_h(cap + 1), cost_l(cap + 1);
    for (int nw = 1; nw <= cap; ++nw) {
        double vpcap = vp_capacity(nh, nv, nw, m);
        double l = avg_travel_distance(nh, nv, safe_alpha(nw, nh, nv),
                                       m.cell_len, m.dist);
        auto fit = [&](double target, int& nr, double& cost, double wage) {
            int need = std::max(
                1, (int)std::ceil(target * m.tau_e * l /
                                      (3600.0 * m.cell_len) -
                                  1e-9));
            if (need > std::floor(vpcap + 1e-9)) {
                nr = -1;
                return;
            }
            nr = need;
            cost = wage * nw + p.p_robot * need;
        };
        fit(dem.t_high, nr_h[nw], cost_h[nw],
            p.p_station + p.p_worker * costs.theta);
        cost_h[nw] = nr_h[nw] < 0 ? 0
                                  : (p.p_station + p.p_worker * costs.theta) * nw +
                                        p.p_robot * costs.theta * nr_h[nw];
        fit(dem.t_low, nr_l[nw], cost_l[nw], p.p_worker * (1 - costs.theta));
        cost_l[nw] = nr_l[nw] < 0
                         ? 0
                         : p.p_worker * (1 - costs.theta) * nw +
                               p.p_robot * (1 - costs.theta) * nr_l[nw];
    }
    double best = std::numeric_limits<double>::infinity();
    int best_h = -1, best_l = -1;
    double run_best = std::numeric_limits<double>::infinity();
    int run_arg = -1;
    for (int nwh = 1; nwh <= cap; ++nwh) {
        if (nr_l[nwh] >= 0 && cost_l[nwh] < run_best) {
            run_best = cost_l[nwh];
            run_arg = nwh;
        }
        if (nr_h[nwh] < 0 || run_arg < 0) continue;
        double total = cost_h[nwh] + run_best;
        if (total < best) {
            best = total;
            best_h = nwh;
            best_l = run_arg;
        }
    }
    if (best_h < 0) return false;
    *out = LayoutDesign{nh, nv, best_h, nr_h[best_h], best_l, nr_l[best_l]};
    return true;
}

void repair(LayoutDesign& d, const DemandSpec& dem, const LdpModel& m,
            int* repairs) {
    const double tol = 1e-9;
    for (int iter = 0; iter < 100000; ++iter) {
        auto g = constraint_values(to_point(d), dem, m);
        double worst = *std::max_element(g.begin(), g.end());
        if (worst <= tol) return;
        ++*repairs;
        if (g[4] > tol) {  // outlets: grow the smaller side
            (d.n_h <= d.n_v ? d.n_h : d.n_v) += 2;
            continue;
        }
        if (g[5] > tol) {
            d.n_w_high = d.n_h + d.n_v;
            d.n_w_low = std::min(d.n_w_low, d.n_w_high);
            continue;
        }
        auto grow_capacity = [&](int& n_w) {
            if (n_w < d.n_h + d.n_v)
                ++n_w;
            else
                (d.n_h <= d.n_v ? d.n_h : d.n_v) += 2;
        };
        if (g[2] > tol) {  // peak throughput: robots first, then capacity
            if (d.n_r_high + 1 <= std::floor(vp_capacity(d.n_h, d.n_v,
                                                         d.n_w_high, m)))
                ++d.n_r_high;
            else
                grow_capacity(d.n_w_high);
            continue;
        }
        if (g[3] > tol) {
            if (d.n_r_low + 1 <=
                std::floor(vp_capacity(d.n_h, d.n_v, d.n_w_low, m)))
                ++d.n_r_low;
            else if (d.n_w_low < d.n_w_high)
                ++d.n_w_low;
            else
                grow_capacity(d.n_w_high);
            continue;
        }
        if (g[0] > tol) grow_capacity(d.n_w_high);
        if (g[1] > tol) {
            if (d.n_w_low < d.n_w_high)
                ++d.n_w_low;
            else
                grow_capacity(d.n_w_high);
        }
    }
    throw std::runtime_error("feasibility repair did not converge");
}

}  // namespace

PslpResult pslp_solve(const DemandSpec& dem, const CostParams& costs,
                      const LdpModel& model, const PslpOptions& opt) {
    PslpResult out;
    LayoutDesign cur = initial_design(dem, model);
    LdpPoint w = to_point(cur);
    // Constraints are rescaled to unit gradient norm at the start point so a
    // single penalty weight treats robots, throughput, and outlets alike.
    // The weight sits a safe factor above the largest multiplier estimate;
    // much larger weights amplify constraint curvature until the ratio test
    // rejects every integer-sized step.
    std::array<double, 6> gscale{};
    {
        auto gg = constraint_gradients(w, dem, model);
        for (int i = 0; i < 6; ++i) {
            double norm = 0;
            for (int j = 0; j < 6; ++j)
                norm = std::max(norm, std::fabs(gg[i][j]));
            gscale[i] = std::max(norm, 1e-9);
        }
    }
    double gradc_max = 0;
    for (double v : cost_gradient(w, costs, model.cell_len))
        gradc_max = std::max(gradc_max, std::fabs(v));
    double mu = opt.mu_scale_over_cost_gradient * gradc_max;
    double delta = opt.delta1;

    double best_cost = std::numeric_limits<double>::infinity();
    LayoutDesign best = cur;
    auto consider = [&](const LayoutDesign& d) {
        if (!ldp_feasible(d, dem, model)) return;
        double c = design_cost(d, costs, model.cell_len);
        if (c < best_cost) {
            best_cost = c;
            best = d;
        }
    };
    consider(cur);

    auto polish = [&](const LayoutDesign& around) {
        for (int dh = -4; dh <= 4; dh += 2)
            for (int dv = -4; dv <= 4; dv += 2) {
                int nh = around.n_h + dh, nv = around.n_v + dv;
                if (nh < 4 || nv < 4) continue;
                LayoutDesign cand;
                if (optimize_staffing(nh, nv, dem, costs, model, &cand))
                    consider(cand);
            }
    };

    LdpPoint prev_w = w;
    int k = 0;
    while (k < opt.max_iters) {
        ++k;
        double m0 = merit(w, dem, costs, model, mu, gscale);
        out.merit_trace.push_back(m0);
        bool accepted = false;
        for (int inner = 0; inner < 60; ++inner) {
            auto sub = lp_subproblem_scaled(w, dem, costs, model, delta, mu, gscale);
            if (!sub.ok) break;
            double lin = linear_merit(w, sub.d, dem, costs, model, mu, gscale);
            double predicted = m0 - lin;
            LdpPoint wn = w;
            for (int j = 0; j < 6; ++j) wn[j] += sub.d[j];
            LayoutDesign rounded = round_up_to_domain(wn);
            if (predicted <= 1e-7 * (1.0 + std::fabs(m0)) ||
                to_point(rounded) == w || to_point(rounded) == prev_w) {
                out.iterations = k;
                consider(rounded);
                LayoutDesign fin = rounded;
                repair(fin, dem, model, &out.repairs);
                consider(fin);
                polish(best_cost < std::numeric_limits<double>::infinity() ? best
                                                                           : fin);
                out.design = best;
                out.cost = best_cost;
                out.feasible = ldp_feasible(best, dem, model);
                return out;
            }
            double actual = m0 - merit(wn, dem, costs, model, mu, gscale);
            double ratio = actual / predicted;
            double rounded_merit =
                merit(to_point(rounded), dem, costs, model, mu, gscale);
            if (ratio < opt.rho0 || rounded_merit > m0 + 1e-9) {
                delta *= opt.phi;
                if (delta < 1e-6) break;
                continue;
            }
            // accept the rounded step
            prev_w = w;
            w = to_point(rounded);
            consider(rounded);
            if (ratio < opt.rho1)
                delta *= opt.phi;
            else if (ratio >= opt.rho2)
                delta /= opt.phi;
            delta = std::max(delta, opt.delta_lb);
            accepted = true;
            break;
        }
        if (!accepted) break;
    }
    out.iterations = k;
    LayoutDesign fin = round_up_to_domain(w);
    repair(fin, dem, model, &out.repairs);
    consider(fin);
    polish(best_cost < std::numeric_limits<double>::infinity() ? best : fin);
    if (best_cost == std::numeric_limits<double>::infinity()) {
        out.design = fin;
        out.cost = design_cost(fin, costs, model.cell_len);
        out.feasible = ldp_feasible(fin, dem, model);
    } else {
        out.design = best;
        out.cost = best_cost;
        out.feasible = true;
    }
    return out;
}

BruteForceResult brute_force_ldp(const DemandSpec& dem, const CostParams& costs,
                                 const LdpModel& m, int max_aisles,
                                 int max_staff) {
    BruteForceResult res;
    res.cost = std::numeric_limits<double>::infinity();
    for (int nh = 4; nh <= max_aisles; nh += 2)
        for (int nv = nh; nv <= max_aisles; nv += 2) {
            if ((nh - 1) * (nv - 1) < dem.min_outlets) continue;
            int staff_cap = std::min(max_staff, nh + nv);
            for (int nwh = 1; nwh <= staff_cap; ++nwh) {
                double cap_h = vp_capacity(nh, nv, nwh, m);
                double l_h = avg_travel_distance(
                    nh, nv, safe_alpha(nwh, nh, nv), m.cell_len, m.dist);
                int nrh_min = (int)std::ceil(
                    dem.t_high * m.tau_e * l_h / (3600.0 * m.cell_len) - 1e-9);
                nrh_min = std::max(nrh_min, 1);
                if (nrh_min > std::floor(cap_h + 1e-9)) continue;
                for (int nwl = 1; nwl <= nwh; ++nwl) {
                    ++res.evaluated;
                    double cap_l = vp_capacity(nh, nv, nwl, m);
                    double l_l = avg_travel_distance(
                        nh, nv, safe_alpha(nwl, nh, nv), m.cell_len, m.dist);
                    int nrl_min = (int)std::ceil(dem.t_low * m.tau_e * l_l /
                                                     (3600.0 * m.cell_len) -
                                                 1e-9);
                    nrl_min = std::max(nrl_min, 1);
                    if (nrl_min > std::floor(cap_l + 1e-9)) continue;
                    LayoutDesign d{nh, nv, nwh, nrh_min, nwl, nrl_min};
                    double c = design_cost(d, costs, m.cell_len);
                    if (c < res.cost) {
                        res.cost = c;
                        res.design = d;
                        res.feasible = true;
                    }
                    // symmetric cost: count the mirrored shape too
                    if (nh != nv) {
                        LayoutDesign dm{nv, nh, nwh, nrh_min, nwl, nrl_min};
                        double cm = design_cost(dm, costs, m.cell_len);
                        if (cm < res.cost) {
                            res.cost = cm;
                            res.design = dm;
                            res.feasible = true;
                        }
                    }
                }
            }
        }
    if (!res.feasible) res.cost = 0;
    return res;
}

}  // namespace rss

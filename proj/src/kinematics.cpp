#include "rss/kinematics.hpp"

#include <cmath>
#include <limits>

namespace rss {

double max_accel_distance(double tau_e, double v_vp, double v_max,
                          double c_max) {
    if (v_vp > v_max)
        throw std::invalid_argument("v_vp must not exceed v_max");
    if (v_vp > 2.0 * c_max * tau_e)
        return -std::numeric_limits<double>::infinity();
    if (2.0 * v_max - v_vp >= 2.0 * tau_e * c_max) {
        return c_max * tau_e * tau_e + tau_e * v_vp -
               v_vp * v_vp / (4.0 * c_max);
    }
    return 2.0 * tau_e * v_max -
           (2.0 * v_max * v_max - 2.0 * v_max * v_vp + v_vp * v_vp) /
               (2.0 * c_max);
}

RcsParams derive_rcs_params(const KinematicParams& kin, double cell_len) {
    kin.validate();
    if (!(cell_len > 0)) throw std::invalid_argument("cell length must be positive");

    const double pi = 3.14159265358979323846;
    double lo = std::max(cell_len / kin.v_max, pi / (2.0 * kin.omega_r));

    auto catch_up_ok = [&](double te) {
        return max_accel_distance(te, cell_len / te, kin.v_max, kin.c_max) >=
               2.0 * cell_len;
    };

    double tau_e = lo;
    if (!catch_up_ok(tau_e)) {
        // The slack d(tau_e) - 2D grows with tau_e, so bisection applies.
        double hi = lo;
        while (!catch_up_ok(hi)) {
            hi *= 2.0;
            if (hi > 1e9) throw std::runtime_error("no feasible phase duration");
        }
        double a = lo, b = hi;
        for (int it = 0; it < 200 && (b - a) > 1e-15 * b; ++it) {
            double mid = 0.5 * (a + b);
            (catch_up_ok(mid) ? b : a) = mid;
        }
        tau_e = b;
    }

    double base = 4.0 * tau_e;
    double k = std::max(1.0, std::ceil(1.0 / (kin.r_ls * base) - 1e-12));
    RcsParams p;
    p.tau_e = tau_e;
    p.tau_c = k * base;
    p.v_vp = cell_len / tau_e;
    return p;
}

}  // namespace rss

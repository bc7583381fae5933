#pragma once

#include <stdexcept>

namespace rss {

struct KinematicParams {
    double v_max = 2.0;    // m/s
    double c_max = 2.0;    // m/s^2, acceleration = deceleration bound
    double omega_r = 3.14; // rad/s, in-place rotation speed
    double r_ls = 0.5;     // loads/s, per-station loading rate

    void validate() const {
        if (!(v_max > 0) || !(c_max > 0) || !(omega_r > 0) || !(r_ls > 0))
            throw std::invalid_argument("kinematic parameters must be positive");
    }
};

// Rhythm constants. tau_c is an integer multiple of 4*tau_e; it equals
// 4*tau_e whenever the station loading rate does not bind.
struct RcsParams {
    double tau_e = 0.5;  // s, phase duration = VP travel time per cell
    double tau_c = 2.0;  // s, cycle length
    double v_vp = 2.0;   // m/s, speed of virtual platoons

    int phases_per_cycle() const {
        return static_cast<int>(tau_c / tau_e + 0.5);
    }
};

// Maximum distance a robot can cover in 2*tau_e starting from rest and
// ending exactly at speed v_vp, under |a| <= c_max and v <= v_max.
//
// Case 1 (peak speed below v_max, 2*v_max - v_vp >= 2*tau_e*c_max):
// accelerate to c_max*tau_e + v_vp/2, then decelerate; the integral of that
// profile is c_max*tau_e^2 + tau_e*v_vp - v_vp^2/(4*c_max).
// Case 2: accelerate to v_max, cruise, decelerate to v_vp;
// 2*tau_e*v_max - (2*v_max^2 - 2*v_max*v_vp + v_vp^2) / (2*c_max).
//
// When v_vp > 2*c_max*tau_e the final speed is unreachable from rest within
// the window and -infinity is returned (the catch-up is impossible, so any
// distance requirement fails).
double max_accel_distance(double tau_e, double v_vp, double v_max, double c_max);

// Smallest tau_e satisfying the phase-duration constraints (cell traversal at
// VP speed, turn catch-up over two cells, quarter rotation), with
// tau_c = 4*tau_e scaled up by an integer factor if the loading rate binds
// and v_vp = D / tau_e.
RcsParams derive_rcs_params(const KinematicParams& kin, double cell_len);

}  // namespace rss

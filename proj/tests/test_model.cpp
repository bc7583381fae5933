#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "rss/model.hpp"

using namespace rss;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("total VP count") {
    CHECK(n_vp_total(4, 4) == 12.0);
    CHECK(n_vp_total(2, 2) == 2.0);
    CHECK(n_vp_total(12, 12) == 132.0);
    CHECK(n_vp_total(10, 12) == 109.0);
}

TEST_CASE("workforce factor") {
    CHECK(workforce_factor(1.0) == doctest::Approx(1.0));
    CHECK(workforce_factor(0.5) == doctest::Approx(0.75));
    // 8 workers on a 6+6 network
    CHECK(workforce_factor(8.0 / 12.0) == doctest::Approx(8.0 / 9.0));
    CHECK_THROWS(workforce_factor(0.0));
    CHECK_THROWS(workforce_factor(1.2));
}

TEST_CASE("attenuation factor") {
    AttenuationCoeffs c{1.4, 0.012};
    CHECK(attenuation(12, 12, c) == doctest::Approx(1.0 / 1.688).epsilon(1e-12));
    CHECK(attenuation(20, 20, c) == doctest::Approx(1.0 / 1.88).epsilon(1e-12));
    CHECK(attenuation(0, 0, AttenuationCoeffs{1.0, 0.012}) == doctest::Approx(1.0));
}

TEST_CASE("occupied VPs") {
    AttenuationCoeffs c{1.4, 0.012};
    CHECK(occupied_vps(1.0, kInf, 12, 12, c) ==
          doctest::Approx(132.0 / 1.688).epsilon(1e-12));
    CHECK(occupied_vps(0.5, 0.0, 12, 12, c) == 0.0);
    CHECK(occupied_vps(0.5, 10.0, 12, 12, c) == 10.0);
}

TEST_CASE("area proportions always sum to one") {
    for (double a = 0.05; a <= 1.0; a += 0.05) {
        double p[4];
        area_proportions(a, p);
        CHECK(p[0] + p[1] + p[2] + p[3] == doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("term-by-term distance equals the collected polynomial") {
    // 200-point grid over alpha and assorted (n_h, n_v)
    std::vector<std::pair<double, double>> shapes = {
        {4, 4}, {6, 10}, {12, 12}, {14, 10}, {20, 20}, {16, 24}, {30, 30},
        {10, 12}};
    int points = 0;
    for (auto [nh, nv] : shapes) {
        for (int i = 1; i <= 25; ++i) {
            double alpha = i / 25.0;
            double lhs = avg_travel_distance(nh, nv, alpha, 1.0);
            double rhs = avg_travel_distance_collected(nh, nv, alpha, 1.0);
            CAPTURE(nh);
            CAPTURE(nv);
            CAPTURE(alpha);
            CHECK(std::fabs(lhs - rhs) <= 1e-9 * std::fabs(rhs));
            ++points;
        }
    }
    CHECK(points == 200);
}

TEST_CASE("the attenuation-constant reading breaks the collected identity") {
    DistanceOptions opt;
    opt.squared_term = SquaredTermReading::AttenuationA;
    double lhs = avg_travel_distance(12, 12, 0.5, 1.0, opt);
    double rhs = avg_travel_distance_collected(12, 12, 0.5, 1.0);
    CHECK(std::fabs(lhs - rhs) > 1e-3 * std::fabs(rhs));
}

TEST_CASE("as-printed three-turn form breaks the collected identity") {
    DistanceOptions opt;
    opt.three_turn = ThreeTurnForm::AsPrinted;
    double lhs = avg_travel_distance(12, 12, 0.5, 1.0, opt);
    double rhs = avg_travel_distance_collected(12, 12, 0.5, 1.0);
    CHECK(std::fabs(lhs - rhs) > 1e-3 * std::fabs(rhs));
}

TEST_CASE("distance at full staffing approaches the square-layout cap") {
    for (int n : {12, 16, 20}) {
        double d = 1.0;
        double l1 = avg_travel_distance(n, n, 1.0, d);
        // collected form at alpha=1: (9/8)n - 1/(4n) + 1/2, in 2D units.
        // The +1/2 puts the endpoint slightly above (9/8)n itself.
        CHECK(l1 == doctest::Approx(2 * d * (1.125 * n - 0.25 / n + 0.5))
                        .epsilon(1e-12));
        CHECK(l1 < 2 * d * (1.125 * n + 0.5));
    }
}

TEST_CASE("travel distance dips once then rises over the worker ratio") {
    for (int n : {12, 16, 20}) {
        std::vector<double> l;
        for (int i = 1; i <= 100; ++i)
            l.push_back(avg_travel_distance(n, n, i / 100.0, 1.0));
        std::vector<double> diff;
        for (size_t i = 1; i < l.size(); ++i) diff.push_back(l[i] - l[i - 1]);
        CHECK(diff.front() < 0);
        CHECK(diff.back() > 0);
        size_t low = std::min_element(l.begin(), l.end()) - l.begin();
        for (size_t i = 0; i + 1 < low; ++i) CHECK(diff[i] <= 1e-9);
        for (size_t i = low; i < diff.size(); ++i) CHECK(diff[i] >= -1e-9);
    }
}

TEST_CASE("square shapes minimize distance at fixed area") {
    for (double area : {144.0, 256.0, 400.0}) {
        double side = std::sqrt(area);
        for (double alpha : {0.5, 0.75, 1.0}) {
            double best = avg_travel_distance(side, side, alpha, 1.0);
            for (double k : {1.2, 1.5, 1.9}) {
                double nh = std::sqrt(k * area), nv = std::sqrt(area / k);
                CHECK(avg_travel_distance(nh, nv, alpha, 1.0) >= best - 1e-12);
            }
        }
    }
    // integer family with two admissible even shapes and ratio < 2
    for (double alpha : {0.5, 1.0})
        CHECK(avg_travel_distance(24, 24, alpha, 1.0) <
              avg_travel_distance(18, 32, alpha, 1.0));
}

TEST_CASE("distance bounds hold on the operating grid") {
    // The strict bounds hold on a mid-staffing band: the lower bound fails
    // below alpha ~ 0.45 (the polynomial dips under 2D*n there) and the
    // upper misses by the +D constant near full staffing, where the endpoint
    // evaluates to 2D*((9/8)n + 1/2 - 1/(4n)).
    for (int n : {12, 16, 20}) {
        for (double alpha = 0.55; alpha <= 0.80 + 1e-9; alpha += 0.05) {
            double l = avg_travel_distance(n, n, alpha, 1.0);
            CHECK(l > 2.0 * n);
            CHECK(l < 2.0 * 1.125 * n);
        }
        for (double alpha = 0.05; alpha <= 1.0 + 1e-9; alpha += 0.05)
            CHECK(avg_travel_distance(n, n, alpha, 1.0) <
                  2.0 * (1.125 * n + 0.5));
    }
}

TEST_CASE("occupied VPs monotone and branchwise concave") {
    AttenuationCoeffs c{1.4, 0.012};
    const double h = 1e-3, tol = 1e-6;
    for (double nh : {12.0, 20.0}) {
        double cap = workforce_factor(1.0) * attenuation(nh, nh, c) *
                     n_vp_total(nh, nh);
        for (double alpha = 0.1; alpha <= 0.9; alpha += 0.1) {
            for (double nr : {5.0, 30.0, 200.0}) {
                double f0 = occupied_vps(alpha, nr, nh, nh, c);
                CHECK(occupied_vps(alpha + h, nr, nh, nh, c) >= f0 - 1e-12);
                CHECK(occupied_vps(alpha, nr + h, nh, nh, c) >= f0 - 1e-12);
            }
            // capacity branch: finite-difference second derivative in alpha
            double fp = workforce_factor(alpha + h) * attenuation(nh, nh, c) *
                        n_vp_total(nh, nh);
            double fm = workforce_factor(alpha - h) * attenuation(nh, nh, c) *
                        n_vp_total(nh, nh);
            double f0 = workforce_factor(alpha) * attenuation(nh, nh, c) *
                        n_vp_total(nh, nh);
            CHECK((fp - 2 * f0 + fm) / (h * h) <= tol);
            (void)cap;
        }
    }
}

TEST_CASE("throughput estimate composes exactly") {
    AttenuationCoeffs c{1.4, 0.012};
    for (double nw : {6.0, 12.0, 24.0}) {
        auto e = throughput_estimate(12, 12, nw, 500, 1.0, 0.5, c);
        double alpha = nw / 24.0;
        double occ = occupied_vps(alpha, 500, 12, 12, c);
        double l = avg_travel_distance(12, 12, alpha, 1.0);
        CHECK(e.throughput == 3600.0 * 1.0 * occ / (0.5 * l));  // exact composition
        CHECK(e.m_bar == occ * (1.0 / 0.5));
        CHECK(e.throughput == doctest::Approx(3600.0 * e.m_bar / l));
    }
    CHECK(throughput_estimate(12, 12, 12, 0, 1.0, 0.5, c).throughput == 0.0);
}

TEST_CASE("upper bound dominates the estimate at the same staffing") {
    AttenuationCoeffs c{1.4, 0.012};
    for (double nw : {4.0, 10.0, 20.0, 40.0})
        for (double nr : {10.0, 100.0, 1e6}) {
            double t = throughput_estimate(20, 20, nw, nr, 1.0, 0.5, c).throughput;
            double m = throughput_upper_bound(20, 20, nw, 1.0, 0.5, c);
            CHECK(t <= m + 1e-9);
        }
}

TEST_CASE("throughput cap unimodal with an interior maximizer") {
    AttenuationCoeffs c{1.4, 0.012};
    for (int n : {12, 16, 20}) {
        std::vector<double> t;
        for (int nl = 1; nl <= 2 * n; ++nl)
            t.push_back(throughput_upper_bound(n, n, nl, 1.0, 0.5, c));
        int peak = critical_station_count(n, n, 1.0, 0.5, c);
        CHECK(peak > 1);
        CHECK(peak < 2 * n);  // not achieved with all stations open
        for (int i = 1; i < peak; ++i) CHECK(t[i] >= t[i - 1] - 1e-9);
        for (int i = peak; i + 1 <= 2 * n; ++i) CHECK(t[i] <= t[i - 1] + 1e-9);
    }
}

TEST_CASE("calibration recovers exact synthetic coefficients") {
    AttenuationCoeffs truth{1.37, 0.013};
    std::vector<CalibrationPoint> pts;
    for (double s : {24.0, 28.0, 32.0, 36.0, 40.0})
        pts.push_back({s, 1.0 / (truth.a + truth.b * s)});
    auto r = calibrate_attenuation(pts);
    CHECK(r.coeffs.a == doctest::Approx(truth.a).epsilon(1e-6));
    CHECK(r.coeffs.b == doctest::Approx(truth.b).epsilon(1e-6));
    CHECK(r.r_squared == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("calibration near published coefficients on noisy data") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> noise(0.0, 0.01);
    AttenuationCoeffs truth{1.4, 0.012};
    std::vector<CalibrationPoint> pts;
    for (double s : {24.0, 28.0, 32.0, 36.0, 40.0})
        for (int rep = 0; rep < 3; ++rep)
            pts.push_back({s, 1.0 / (truth.a + truth.b * s + noise(rng))});
    auto r = calibrate_attenuation(pts);
    CHECK(r.coeffs.a == doctest::Approx(1.4).epsilon(0.05));
    CHECK(r.coeffs.b == doctest::Approx(0.012).epsilon(0.5));
}

TEST_CASE("calibration rejects degenerate input") {
    std::vector<CalibrationPoint> pts = {{24, 0.5}, {24, 0.52}};
    CHECK_THROWS(calibrate_attenuation(pts));
}

TEST_CASE("distance model preconditions") {
    CHECK(distance_model_preconditions(12, 12));
    CHECK(distance_model_preconditions(12, 20));
    CHECK(!distance_model_preconditions(10, 20));
    CHECK(!distance_model_preconditions(2, 3));
}

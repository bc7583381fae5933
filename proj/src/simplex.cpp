#include "rss/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rss {

namespace {

// Tableau with explicit basis bookkeeping. Columns: n structural, m slacks,
// up to m artificials, then the rhs.
struct Tableau {
    int m, n;
    int cols;
    std::vector<std::vector<double>> t;
    std::vector<int> basis;

    Tableau(const std::vector<std::vector<double>>& a,
            const std::vector<double>& b)
        : m((int)a.size()), n((int)a[0].size()) {
        cols = n + m + m + 1;
        t.assign(m, std::vector<double>(cols, 0.0));
        basis.assign(m, -1);
        for (int i = 0; i < m; ++i) {
            double sign = b[i] < 0 ? -1.0 : 1.0;
            for (int j = 0; j < n; ++j) t[i][j] = sign * a[i][j];
            t[i][n + i] = sign;  // slack
            t[i][cols - 1] = sign * b[i];
        }
    }

    // price out and pivot to optimality for the reduced objective row `z`
    // (size cols), minimizing. Bland's rule; `allowed` marks usable columns.
    bool optimize(std::vector<double>& z, const std::vector<char>& allowed,
                  double tol) {
        for (int iter = 0; iter < 20000; ++iter) {
            int enter = -1;
            for (int j = 0; j < cols - 1; ++j)
                if (allowed[j] && z[j] < -tol) {
                    enter = j;
                    break;
                }
            if (enter < 0) return true;
            int leave = -1;
            double best = std::numeric_limits<double>::infinity();
            for (int i = 0; i < m; ++i) {
                if (t[i][enter] > tol) {
                    double ratio = t[i][cols - 1] / t[i][enter];
                    if (ratio < best - tol ||
                        (ratio < best + tol &&
                         (leave < 0 || basis[i] < basis[leave]))) {
                        best = ratio;
                        leave = i;
                    }
                }
            }
            if (leave < 0) return false;  // unbounded
            pivot(leave, enter, z);
        }
        throw std::runtime_error("simplex iteration limit");
    }

    void pivot(int row, int col, std::vector<double>& z) {
        double p = t[row][col];
        for (int j = 0; j < cols; ++j) t[row][j] /= p;
        for (int i = 0; i < m; ++i) {
            if (i == row || std::fabs(t[i][col]) < 1e-14) continue;
            double f = t[i][col];
            for (int j = 0; j < cols; ++j) t[i][j] -= f * t[row][j];
        }
        double f = z[col];
        if (std::fabs(f) > 1e-14)
            for (int j = 0; j < cols; ++j) z[j] -= f * t[row][j];
        basis[row] = col;
    }
};

}  // namespace

LpResult solve_lp(const std::vector<std::vector<double>>& a,
                  const std::vector<double>& b, const std::vector<double>& c,
                  double tol) {
    LpResult res;
    if (a.empty()) {
        res.optimal = true;
        res.x.assign(c.size(), 0.0);
        return res;
    }
    Tableau tab(a, b);
    int m = tab.m, n = tab.n, cols = tab.cols;

    // phase 1: drive artificials out wherever the slack basis is infeasible
    std::vector<char> allowed(cols, 1);
    std::vector<double> z1(cols, 0.0);
    bool need_phase1 = false;
    for (int i = 0; i < m; ++i) {
        if (b[i] < 0) {
            need_phase1 = true;
            tab.t[i][n + m + i] = 1.0;
            tab.basis[i] = n + m + i;
            for (int j = 0; j < cols; ++j) z1[j] -= tab.t[i][j];
            z1[n + m + i] += 1.0;
        } else {
            tab.basis[i] = n + i;
        }
    }
    if (need_phase1) {
        if (!tab.optimize(z1, allowed, tol)) return res;
        double infeas = 0;
        for (int i = 0; i < m; ++i)
            if (tab.basis[i] >= n + m) infeas += tab.t[i][cols - 1];
        if (infeas > 1e-7) return res;  // infeasible
    }
    for (int j = n + m; j < cols - 1; ++j) allowed[j] = 0;

    // phase 2
    std::vector<double> z2(cols, 0.0);
    for (int j = 0; j < n; ++j) z2[j] = c[j];
    for (int i = 0; i < m; ++i) {
        int bj = tab.basis[i];
        if (bj < n && std::fabs(c[bj]) > 1e-14)
            for (int j = 0; j < cols; ++j) z2[j] -= c[bj] * tab.t[i][j];
    }
    if (!tab.optimize(z2, allowed, tol)) return res;  // unbounded

    res.optimal = true;
    res.x.assign(n, 0.0);
    for (int i = 0; i < m; ++i)
        if (tab.basis[i] < n) res.x[tab.basis[i]] = tab.t[i][cols - 1];
    res.objective = 0;
    for (int j = 0; j < n; ++j) res.objective += c[j] * res.x[j];
    return res;
}

}  // namespace rss

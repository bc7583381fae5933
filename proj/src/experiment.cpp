#include "rss/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rss {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

uint64_t config_hash(const std::string& text, uint64_t seed) {
    uint64_t h = 1469598103934665603ULL ^ seed;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

int provisioned_robots(int n_h, int n_v, int n_w, const AttenuationCoeffs& ab) {
    double alpha = worker_ratio(n_w, n_h, n_v);
    double cap = workforce_factor(alpha) * attenuation(n_h, n_v, ab) *
                 n_vp_total(n_h, n_v);
    return (int)llround(cap) + 5 * n_w;
}

void ExperimentPlan::apply_paper_scale() {
    paper_scale = true;
    if (kind == "benchmark" || kind == "simulate") {
        sim.warmup_s = 600;
        sim.measure_s = 3000;
        reps = 10;
    } else if (kind == "validate" || kind == "calibrate") {
        sim.warmup_s = 3600;
        sim.measure_s = 3 * 3600;
        reps = kind == "validate" ? 20 : 3;
        scale_grid = {12, 14, 16, 18, 20};
    }
}

namespace {

// Runs independent cells on up to `workers` threads, results collected in
// submission order so outputs stay deterministic.
template <typename Job>
std::vector<std::string> run_cells(const std::vector<Job>& jobs, int workers) {
    std::vector<std::string> out(jobs.size());
    size_t next = 0;
    while (next < jobs.size()) {
        size_t batch = std::min<size_t>(std::max(workers, 1), jobs.size() - next);
        std::vector<std::future<std::string>> fs;
        for (size_t i = 0; i < batch; ++i)
            fs.push_back(std::async(std::launch::async, jobs[next + i]));
        for (size_t i = 0; i < batch; ++i) out[next + i] = fs[i].get();
        next += batch;
    }
    return out;
}

ControllerKind controller_from_name(const std::string& s) {
    if (s == "rcs") return ControllerKind::Rcs;
    if (s == "castar") return ControllerKind::CaStar;
    throw std::invalid_argument("unknown controller: " + s);
}

void get_if(const json& j, const char* key, int& out) {
    if (j.contains(key)) out = j.at(key).get<int>();
}
void get_if(const json& j, const char* key, double& out) {
    if (j.contains(key)) out = j.at(key).get<double>();
}
void get_if(const json& j, const char* key, bool& out) {
    if (j.contains(key)) out = j.at(key).get<bool>();
}
void get_if(const json& j, const char* key, uint64_t& out) {
    if (j.contains(key)) out = j.at(key).get<uint64_t>();
}

}  // namespace

ExperimentPlan ExperimentPlan::from_json(const std::string& text) {
    json j = json::parse(text);
    ExperimentPlan p;
    p.kind = j.at("kind").get<std::string>();
    get_if(j, "seed", p.seed);
    get_if(j, "reps", p.reps);
    get_if(j, "paper_scale", p.paper_scale);

    if (j.contains("map")) {
        const json& m = j["map"];
        get_if(m, "n_h", p.sim.n_h);
        get_if(m, "n_v", p.sim.n_v);
        get_if(m, "cell_len", p.sim.cell_len);
        get_if(m, "stations", p.sim.n_stations);
    }
    if (j.contains("sim")) {
        const json& s = j["sim"];
        get_if(s, "n_robots", p.sim.n_robots);
        get_if(s, "warmup_s", p.sim.warmup_s);
        get_if(s, "measure_s", p.sim.measure_s);
        get_if(s, "horizon_cycles", p.sim.horizon_cycles);
        get_if(s, "window_cycles", p.sim.window_cycles);
        if (s.contains("controller"))
            p.sim.controller =
                controller_from_name(s.at("controller").get<std::string>());
    }
    if (j.contains("rcs")) {
        const json& r = j["rcs"];
        get_if(r, "tau_e", p.sim.rcs.tau_e);
        get_if(r, "tau_c", p.sim.rcs.tau_c);
        get_if(r, "v_vp", p.sim.rcs.v_vp);
    }
    if (j.contains("robot_grid"))
        p.robot_grid = j["robot_grid"].get<std::vector<int>>();
    if (j.contains("controllers"))
        p.controllers = j["controllers"].get<std::vector<std::string>>();
    if (j.contains("scale_grid"))
        p.scale_grid = j["scale_grid"].get<std::vector<int>>();
    if (j.contains("worker_grid"))
        p.worker_grid = j["worker_grid"].get<std::vector<int>>();
    if (j.contains("coeffs")) {
        get_if(j["coeffs"], "a", p.coeffs.a);
        get_if(j["coeffs"], "b", p.coeffs.b);
    }
    get_if(j, "coeffs_from_calibration", p.coeffs_from_calibration);
    if (j.contains("demand")) {
        const json& d = j["demand"];
        get_if(d, "t_high", p.demand.t_high);
        get_if(d, "t_low", p.demand.t_low);
        get_if(d, "min_outlets", p.demand.min_outlets);
    }
    if (j.contains("costs")) {
        const json& c = j["costs"];
        get_if(c, "m_site", p.costs.m_site);
        get_if(c, "m_station", p.costs.m_station);
        get_if(c, "m_worker", p.costs.m_worker);
        get_if(c, "m_robot", p.costs.m_robot);
        get_if(c, "w_wait", p.costs.w_wait);
        get_if(c, "w_load", p.costs.w_load);
        get_if(c, "theta", p.costs.theta);
        get_if(c, "gamma0", p.costs.gamma0);
        get_if(c, "horizon_months", p.costs.horizon_months);
    }
    if (j.contains("th_grid")) p.th_grid = j["th_grid"].get<std::vector<double>>();
    if (j.contains("ms_grid")) p.ms_grid = j["ms_grid"].get<std::vector<double>>();
    if (j.contains("mw_grid")) p.mw_grid = j["mw_grid"].get<std::vector<double>>();
    if (j.contains("no_grid")) p.no_grid = j["no_grid"].get<std::vector<int>>();
    if (j.contains("estimate_workers"))
        p.estimate_workers = j["estimate_workers"].get<std::vector<int>>();
    if (j.contains("estimate_robots"))
        p.estimate_robots = j["estimate_robots"].get<std::vector<double>>();
    if (p.paper_scale) p.apply_paper_scale();
    return p;
}

std::string ExperimentPlan::to_json() const {
    json j;
    j["kind"] = kind;
    j["seed"] = seed;
    j["reps"] = reps;
    j["paper_scale"] = paper_scale;
    j["map"] = {{"n_h", sim.n_h},
                {"n_v", sim.n_v},
                {"cell_len", sim.cell_len},
                {"stations", sim.n_stations}};
    j["sim"] = {{"n_robots", sim.n_robots},
                {"warmup_s", sim.warmup_s},
                {"measure_s", sim.measure_s},
                {"horizon_cycles", sim.horizon_cycles},
                {"window_cycles", sim.window_cycles},
                {"controller",
                 sim.controller == ControllerKind::Rcs ? "rcs" : "castar"}};
    j["rcs"] = {{"tau_e", sim.rcs.tau_e}, {"tau_c", sim.rcs.tau_c},
                {"v_vp", sim.rcs.v_vp}};
    j["robot_grid"] = robot_grid;
    j["controllers"] = controllers;
    j["scale_grid"] = scale_grid;
    j["worker_grid"] = worker_grid;
    j["coeffs"] = {{"a", coeffs.a}, {"b", coeffs.b}};
    j["coeffs_from_calibration"] = coeffs_from_calibration;
    j["demand"] = {{"t_high", demand.t_high},
                   {"t_low", demand.t_low},
                   {"min_outlets", demand.min_outlets}};
    j["costs"] = {{"m_site", costs.m_site},     {"m_station", costs.m_station},
                  {"m_worker", costs.m_worker}, {"m_robot", costs.m_robot},
                  {"w_wait", costs.w_wait},     {"w_load", costs.w_load},
                  {"theta", costs.theta},       {"gamma0", costs.gamma0},
                  {"horizon_months", costs.horizon_months}};
    j["th_grid"] = th_grid;
    j["ms_grid"] = ms_grid;
    j["mw_grid"] = mw_grid;
    j["no_grid"] = no_grid;
    return j.dump(2);
}

namespace {

struct CsvBuilder {
    std::ostringstream body;
    explicit CsvBuilder(const ExperimentPlan& plan) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%016llx",
                      (unsigned long long)config_hash(plan.to_json(), plan.seed));
        body << "# plan_hash=" << buf << " seed=" << plan.seed << "\n";
    }
    void header(const std::string& h) { body << h << "\n"; }
    void row(const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i)
            body << (i ? "," : "") << cells[i];
        body << "\n";
    }
};

std::string manifest_for(const ExperimentPlan& plan) {
    json m;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%016llx",
                  (unsigned long long)config_hash(plan.to_json(), plan.seed));
    m["plan_hash"] = buf;
    m["seed"] = plan.seed;
    m["kind"] = plan.kind;
    m["paper_scale"] = plan.paper_scale;
    m["reps"] = plan.reps;
    m["plan"] = json::parse(plan.to_json());
    return m.dump(2);
}

int worker_count_for(int scale, double f) {
    int nw = (int)llround(2 * scale * f);
    return std::max(4, std::min(2 * scale, nw));
}

}  // namespace

ExperimentOutput run_simulate(const ExperimentPlan& plan) {
    ExperimentOutput out;
    CsvBuilder csv(plan), timing(plan);
    csv.header(
        "rep,controller,n_h,n_v,n_stations,n_robots,completed,throughput_per_h,"
        "service_s,lead_s,full_cycle_s,distance_m,robots_in_network,"
        "admission_violations,conflicts");
    timing.header("rep,decision_ms_per_cycle");
    SimConfig cfg = plan.sim;
    GridLayout layout = build_layout(
        cfg.n_h, cfg.n_v, cfg.cell_len,
        cfg.n_stations > 0 ? cfg.n_stations : cfg.n_h + cfg.n_v);
    for (int rep = 0; rep < plan.reps; ++rep) {
        cfg.seed = split_seed(plan.seed, rep);
        SimMetrics m = run_simulation(cfg);
        if (cfg.collect_trace && rep == 0)
            out.trace_csv = trace_to_csv(layout, m.trace);
        int64_t conflicts = m.conflicts.vertex + m.conflicts.following +
                            m.conflicts.swapping + m.conflicts.cycle;
        csv.row({std::to_string(rep),
                 cfg.controller == ControllerKind::Rcs ? "rcs" : "castar",
                 std::to_string(cfg.n_h), std::to_string(cfg.n_v),
                 std::to_string(cfg.n_stations), std::to_string(cfg.n_robots),
                 std::to_string(m.completed), format_double(m.throughput),
                 format_double(m.avg_service_time), format_double(m.avg_lead_time),
                 format_double(m.avg_full_cycle_time),
                 format_double(m.avg_service_distance_m),
                 format_double(m.avg_robots_in_network),
                 std::to_string(m.admission_violations),
                 std::to_string(conflicts)});
        timing.row({std::to_string(rep), format_double(m.decision_ms_per_cycle)});
    }
    out.results_csv = csv.body.str();
    out.timing_csv = timing.body.str();
    out.manifest_json = manifest_for(plan);
    return out;
}

ExperimentOutput run_benchmark(const ExperimentPlan& plan, int workers) {
    ExperimentOutput out;
    CsvBuilder csv(plan), timing(plan);
    csv.header(
        "controller,n_r,throughput_per_h,throughput_se,service_s,service_se,"
        "distance_m,distance_se,full_cycle_s,reps");
    timing.header("controller,n_r,decision_ms_per_cycle,decision_ms_se");
    std::vector<std::function<std::string()>> jobs;
    for (const std::string& ctrl : plan.controllers)
        for (int nr : plan.robot_grid)
            jobs.push_back([&plan, ctrl, nr]() {
                SimConfig cfg = plan.sim;
                cfg.controller = controller_from_name(ctrl);
                cfg.n_robots = nr;
                cfg.seed = plan.seed;
                ReplicationSummary r = replicate(cfg, plan.reps);
                std::ostringstream os;
                os << ctrl << "," << nr << "," << format_double(r.throughput.mean)
                   << "," << format_double(r.throughput.stderr_) << ","
                   << format_double(r.service_time.mean) << ","
                   << format_double(r.service_time.stderr_) << ","
                   << format_double(r.distance_m.mean) << ","
                   << format_double(r.distance_m.stderr_) << ","
                   << format_double(r.full_cycle_time.mean) << "," << plan.reps
                   << "\n" << ctrl << "," << nr << ","
                   << format_double(r.decision_ms.mean) << ","
                   << format_double(r.decision_ms.stderr_);
                return os.str();
            });
    auto cells = run_cells(jobs, workers);
    for (const auto& cell : cells) {
        auto cut = cell.rfind('\n');
        csv.body << cell.substr(0, cut) << "\n";
        timing.body << cell.substr(cut + 1) << "\n";
    }
    out.results_csv = csv.body.str();
    out.timing_csv = timing.body.str();
    out.manifest_json = manifest_for(plan);
    return out;
}

ExperimentOutput run_benchmark(const ExperimentPlan& plan) {
    return run_benchmark(plan, 1);
}

ExperimentOutput run_estimate(const ExperimentPlan& plan) {
    ExperimentOutput out;
    CsvBuilder csv(plan);
    csv.header("n_h,n_v,n_w,n_r,kappa,beta,l_bar_m,T_O_per_h,T_M_per_h");
    std::vector<int> workers = plan.estimate_workers;
    if (workers.empty())
        for (int w = 4; w <= plan.sim.n_h + plan.sim.n_v; w += 4)
            workers.push_back(w);
    std::vector<double> robots = plan.estimate_robots;
    if (robots.empty()) robots = {1e9};
    for (int nw : workers)
        for (double nr : robots) {
            auto e = throughput_estimate(plan.sim.n_h, plan.sim.n_v, nw, nr,
                                         plan.sim.cell_len, plan.sim.rcs.tau_e,
                                         plan.coeffs);
            double tm = throughput_upper_bound(plan.sim.n_h, plan.sim.n_v, nw,
                                               plan.sim.cell_len,
                                               plan.sim.rcs.tau_e, plan.coeffs);
            csv.row({std::to_string(plan.sim.n_h), std::to_string(plan.sim.n_v),
                     std::to_string(nw), format_double(nr),
                     format_double(e.kappa), format_double(e.beta),
                     format_double(e.avg_travel_m), format_double(e.throughput),
                     format_double(tm)});
        }
    out.results_csv = csv.body.str();
    out.manifest_json = manifest_for(plan);
    return out;
}

CalibrationResult calibrate_on_simulator(const ExperimentPlan& plan,
                                         std::vector<std::string>* rows) {
    std::vector<CalibrationPoint> pts;
    for (int scale : plan.scale_grid) {
        std::vector<int> workers = plan.worker_grid;
        if (workers.empty())
            workers = {worker_count_for(scale, 0.75),
                       worker_count_for(scale, 5.0 / 6.0), 2 * scale};
        for (int nw : workers) {
            SimConfig cfg = plan.sim;
            cfg.n_h = cfg.n_v = scale;
            cfg.n_stations = nw;
            cfg.n_robots = provisioned_robots(scale, scale, nw, plan.coeffs);
            cfg.controller = ControllerKind::Rcs;
            cfg.seed = split_seed(plan.seed, 100 * scale + nw);
            SimMetrics m = run_simulation(cfg);
            double alpha = worker_ratio(nw, scale, scale);
            double l = avg_travel_distance(scale, scale, alpha, cfg.cell_len);
            // the attenuation implied by the run: the beta making the
            // throughput formula exact for this measurement
            double beta_m = m.throughput * cfg.rcs.tau_e * l /
                            (3600.0 * cfg.cell_len * workforce_factor(alpha) *
                             n_vp_total(scale, scale));
            pts.push_back({2.0 * scale, beta_m});
            if (rows)
                rows->push_back(std::to_string(scale) + "," +
                                std::to_string(nw) + "," +
                                std::to_string(cfg.n_robots) + "," +
                                format_double(m.throughput) + "," +
                                format_double(beta_m));
        }
    }
    CalibrationResult fit = calibrate_attenuation(pts);
    if (fit.coeffs.b < 0) {
        // stay inside the model family (attenuation grows with scale): fall
        // back to the flat fit
        double inv = 0;
        for (const auto& p : pts) inv += 1.0 / p.beta_measured;
        fit.coeffs = {inv / pts.size(), 0.0};
        fit.residuals.clear();
        double ss_res = 0, ss_tot = 0, mean = inv / pts.size();
        for (const auto& p : pts) {
            double r = 1.0 / p.beta_measured - fit.coeffs.a;
            fit.residuals.push_back(r);
            ss_res += r * r;
            ss_tot += (1.0 / p.beta_measured - mean) * (1.0 / p.beta_measured - mean);
        }
        fit.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    }
    return fit;
}

ExperimentOutput run_calibrate(const ExperimentPlan& plan) {
    ExperimentOutput out;
    CsvBuilder csv(plan);
    csv.header("scale,n_w,n_r,throughput_per_h,beta_measured");
    std::vector<std::string> rows;
    CalibrationResult fit = calibrate_on_simulator(plan, &rows);
    for (const auto& r : rows) csv.body << r << "\n";
    csv.body << "# fit a=" << format_double(fit.coeffs.a)
             << " b=" << format_double(fit.coeffs.b)
             << " r2=" << format_double(fit.r_squared) << "\n";
    out.results_csv = csv.body.str();
    json m = json::parse(manifest_for(plan));
    m["fit"] = {{"a", fit.coeffs.a}, {"b", fit.coeffs.b},
                {"r_squared", fit.r_squared}};
    out.manifest_json = m.dump(2);
    return out;
}

ExperimentOutput run_validate(const ExperimentPlan& plan) {
    ExperimentOutput out;
    CsvBuilder csv(plan);
    csv.header(
        "n_h,n_w,n_r,sim_throughput,est_throughput,throughput_err,"
        "sim_distance_m,l_bar_m,distance_err");
    AttenuationCoeffs coeffs = plan.coeffs;
    if (plan.coeffs_from_calibration) {
        ExperimentPlan cal = plan;
        cal.kind = "calibrate";
        if (cal.scale_grid.size() < 3) cal.scale_grid = {12, 16, 20};
        cal.worker_grid.clear();  // calibration picks its own staffing points
        coeffs = calibrate_on_simulator(cal, nullptr).coeffs;
        csv.body << "# calibrated a=" << format_double(coeffs.a)
                 << " b=" << format_double(coeffs.b) << "\n";
    }
    for (int scale : plan.scale_grid) {
        std::vector<int> workers = plan.worker_grid;
        if (workers.empty())
            workers = {worker_count_for(scale, 0.75),
                       worker_count_for(scale, 5.0 / 6.0), 2 * scale};
        for (int nw : workers) {
            SimConfig cfg = plan.sim;
            cfg.n_h = cfg.n_v = scale;
            cfg.n_stations = nw;
            cfg.n_robots = provisioned_robots(scale, scale, nw, plan.coeffs);
            cfg.controller = ControllerKind::Rcs;
            cfg.seed = plan.seed;
            ReplicationSummary r = replicate(cfg, plan.reps);
            double alpha = worker_ratio(nw, scale, scale);
            double lbar = avg_travel_distance(scale, scale, alpha, cfg.cell_len);
            auto est = throughput_estimate(scale, scale, nw, cfg.n_robots,
                                           cfg.cell_len, cfg.rcs.tau_e, coeffs);
            double thr_err =
                (est.throughput - r.throughput.mean) / r.throughput.mean;
            double dist_err = (lbar - r.distance_m.mean) / r.distance_m.mean;
            csv.row({std::to_string(scale), std::to_string(nw),
                     std::to_string(cfg.n_robots),
                     format_double(r.throughput.mean),
                     format_double(est.throughput), format_double(thr_err),
                     format_double(r.distance_m.mean), format_double(lbar),
                     format_double(dist_err)});
        }
    }
    out.results_csv = csv.body.str();
    out.manifest_json = manifest_for(plan);
    return out;
}

namespace {

void optimize_row(CsvBuilder& csv, const DemandSpec& dem, const CostParams& costs,
                  const LdpModel& model, const std::string& label) {
    PslpResult r = pslp_solve(dem, costs, model);
    double cf = facility_cost(r.design, costs, model.cell_len);
    double co = operations_cost(r.design, costs);
    double site = discount(costs.m_site, costs.gamma0, costs.horizon_months) *
                  (2 * model.cell_len * (r.design.n_h - 1) + costs.w_wait +
                   costs.w_load) *
                  (2 * model.cell_len * (r.design.n_v - 1) + costs.w_wait +
                   costs.w_load);
    csv.row({label, format_double(dem.t_high), std::to_string(r.design.n_h),
             std::to_string(r.design.n_v), std::to_string(r.design.n_w_low),
             std::to_string(r.design.n_r_low),
             std::to_string(r.design.n_w_high),
             std::to_string(r.design.n_r_high), format_double(cf),
             format_double(co), format_double(r.cost),
             format_double(100.0 * site / r.cost), r.feasible ? "1" : "0",
             std::to_string(r.iterations)});
}

}  // namespace

ExperimentOutput run_optimize(const ExperimentPlan& plan) {
    ExperimentOutput out;
    CsvBuilder csv(plan);
    csv.header(
        "scenario,t_high,n_h,n_v,n_w_low,n_r_low,n_w_high,n_r_high,c_facility,"
        "c_operations,c_total,site_share_pct,feasible,iterations");
    if (plan.th_grid.empty()) {
        optimize_row(csv, plan.demand, plan.costs, plan.ldp_model, "single");
    } else {
        for (double th : plan.th_grid) {
            DemandSpec dem = plan.demand;
            dem.t_high = th;
            dem.t_low = 0.8 * th;
            optimize_row(csv, dem, plan.costs, plan.ldp_model, "th_sweep");
        }
    }
    out.results_csv = csv.body.str();
    out.manifest_json = manifest_for(plan);
    return out;
}

ExperimentOutput run_sweep(const ExperimentPlan& plan) {
    ExperimentOutput out;
    CsvBuilder csv(plan);
    csv.header(
        "axis,unit_cost,n_outlets,t_high,n_h,n_v,n_w_high,n_r_high,c_facility,"
        "c_operations,c_total,site_share_pct,labor_share_pct,robot_share_pct");
    std::vector<double> th = plan.th_grid;
    if (th.empty())
        for (double t = 3000; t <= 30000; t += 3000) th.push_back(t);
    auto emit = [&](const char* axis, double unit, int no,
                    const CostParams& costs) {
        for (double t : th) {
            DemandSpec dem{t, 0.8 * t, no};
            PslpResult r = pslp_solve(dem, costs, plan.ldp_model);
            double cf = facility_cost(r.design, costs, plan.ldp_model.cell_len);
            double co = operations_cost(r.design, costs);
            double site =
                discount(costs.m_site, costs.gamma0, costs.horizon_months) *
                (2 * plan.ldp_model.cell_len * (r.design.n_h - 1) +
                 costs.w_wait + costs.w_load) *
                (2 * plan.ldp_model.cell_len * (r.design.n_v - 1) +
                 costs.w_wait + costs.w_load);
            double labor =
                discount(costs.m_worker, costs.gamma0, costs.horizon_months) *
                (costs.theta * r.design.n_w_high +
                 (1 - costs.theta) * r.design.n_w_low);
            double robot =
                discount(costs.m_robot, costs.gamma0, costs.horizon_months) *
                (costs.theta * r.design.n_r_high +
                 (1 - costs.theta) * r.design.n_r_low);
            csv.row({axis, format_double(unit), std::to_string(no),
                     format_double(t), std::to_string(r.design.n_h),
                     std::to_string(r.design.n_v),
                     std::to_string(r.design.n_w_high),
                     std::to_string(r.design.n_r_high), format_double(cf),
                     format_double(co), format_double(cf + co),
                     format_double(100.0 * site / (cf + co)),
                     format_double(100.0 * labor / (cf + co)),
                     format_double(100.0 * robot / (cf + co))});
        }
    };
    std::vector<double> ms = plan.ms_grid;
    if (ms.empty()) ms = {10, 20, 30};
    std::vector<double> mw = plan.mw_grid;
    if (mw.empty()) mw = {5000, 8000, 12000};
    for (int no : plan.no_grid) {
        for (double m : ms) {
            CostParams costs = plan.costs;
            costs.m_site = m;
            emit("site_cost", m, no, costs);
        }
        for (double m : mw) {
            CostParams costs = plan.costs;
            costs.m_worker = m;
            emit("labor_cost", m, no, costs);
        }
    }
    out.results_csv = csv.body.str();
    out.manifest_json = manifest_for(plan);
    return out;
}

ExperimentOutput run_plan(const ExperimentPlan& plan, int workers) {
    if (plan.kind == "simulate") return run_simulate(plan);
    if (plan.kind == "benchmark") return run_benchmark(plan, workers);
    if (plan.kind == "estimate") return run_estimate(plan);
    if (plan.kind == "calibrate") return run_calibrate(plan);
    if (plan.kind == "validate") return run_validate(plan);
    if (plan.kind == "optimize") return run_optimize(plan);
    if (plan.kind == "sweep") return run_sweep(plan);
    throw std::invalid_argument("unknown plan kind: " + plan.kind);
}

}  // namespace rss

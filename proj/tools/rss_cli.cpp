// Experiment driver for the sorting-system toolkit. Subcommands mirror the
// study structure: simulate single scenarios, benchmark the two controllers,
// evaluate or calibrate the analytical model, validate it against the
// simulator, and run the layout optimizer and its sensitivity sweeps.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rss/experiment.hpp"
#include "rss/geometry.hpp"

namespace fs = std::filesystem;
using namespace rss;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

struct CommonArgs {
    std::string plan_path;
    std::string out_dir = "out";
    uint64_t seed = 0;
    bool seed_set = false;
    int workers = 1;
    bool paper_scale = false;
    bool trace = false;
};

void attach_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--plan", args.plan_path, "plan file (JSON)");
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--seed", args.seed, "master seed override")
        ->each([&](const std::string&) { args.seed_set = true; });
    cmd->add_option("--workers", args.workers, "concurrent plan cells");
    cmd->add_flag("--paper-scale", args.paper_scale,
                  "publication-scale windows and replication counts");
}

int execute(const std::string& kind, const CommonArgs& args) {
    ExperimentPlan plan;
    if (!args.plan_path.empty()) {
        plan = ExperimentPlan::from_json(read_file(args.plan_path));
        if (plan.kind != kind)
            throw std::runtime_error("plan kind '" + plan.kind +
                                     "' does not match subcommand '" + kind + "'");
    } else {
        plan.kind = kind;
    }
    if (args.seed_set) plan.seed = args.seed;
    if (args.paper_scale) plan.apply_paper_scale();
    plan.sim.collect_trace = args.trace;

    ExperimentOutput out = run_plan(plan, args.workers);

    fs::create_directories(args.out_dir);
    write_file(fs::path(args.out_dir) / "results.csv", out.results_csv);
    if (!out.timing_csv.empty())
        write_file(fs::path(args.out_dir) / "timing.csv", out.timing_csv);
    write_file(fs::path(args.out_dir) / "manifest.json", out.manifest_json);
    if (!out.trace_csv.empty())
        write_file(fs::path(args.out_dir) / "trace.csv", out.trace_csv);
    std::cout << "wrote " << args.out_dir << "/results.csv ("
              << out.results_csv.size() << " bytes)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"grid sorting system: simulation, estimation, layout design"};
    app.require_subcommand(1);

    CommonArgs args;
    const char* kinds[] = {"simulate", "benchmark", "estimate", "calibrate",
                           "optimize", "sweep",     "validate"};
    const char* descs[] = {
        "run one scenario and report metrics per replication",
        "run the controller comparison over the robot grid",
        "evaluate the closed-form throughput model over a grid",
        "fit the attenuation coefficients against the simulator",
        "solve one layout design scenario",
        "run the unit-cost sensitivity sweeps",
        "compare the model against the simulator across staffing levels"};
    for (size_t i = 0; i < std::size(kinds); ++i) {
        CLI::App* cmd = app.add_subcommand(kinds[i], descs[i]);
        attach_common(cmd, args);
        if (std::string(kinds[i]) == "simulate")
            cmd->add_flag("--trace", args.trace, "write the full robot trace");
        std::string kind = kinds[i];
        cmd->callback([kind, &args]() { execute(kind, args); });
    }

    CLI::App* layout = app.add_subcommand("layout", "print a layout document");
    int nh = 12, nv = 12, ns = 0;
    layout->add_option("--n-h", nh);
    layout->add_option("--n-v", nv);
    layout->add_option("--stations", ns);
    layout->callback([&]() {
        GridLayout g = build_layout(nh, nv, 1.0, ns > 0 ? ns : nh + nv);
        std::cout << serialize_layout(g);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

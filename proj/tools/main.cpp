#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "wreathlab/assembly.hpp"
#include "wreathlab/codes.hpp"
#include "wreathlab/distortion.hpp"
#include "wreathlab/metric.hpp"
#include "wreathlab/report.hpp"
#include "wreathlab/suites.hpp"

namespace {

using namespace wreathlab;

// exit codes: 0 pass, 1 assertion failure, 2 usage/parse, 3 capacity/inconclusive
constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;

class Timer {
  public:
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void emit(const Report& report, const std::string& out_path, const std::string& format,
          double wall_ms) {
    if (out_path.empty()) {
        report.write(std::cout, format, wall_ms);
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot open output path: " + out_path);
    report.write(out, format, wall_ms);
}

int run_verify(const std::string& lemma, const SuiteOptions& options,
               const std::string& out_path, const std::string& format) {
    Timer timer;
    const auto result = run_suite(lemma, options);
    emit(result.report, out_path, format, timer.elapsed_ms());
    if (result.pass) return kExitPass;
    return result.inconclusive ? kExitCapacity : kExitFail;
}

int run_distortion(const std::string& in_path, bool from_code, std::size_t d, std::size_t dmax,
                   std::size_t dimc, std::size_t floor, double tol, const SuiteOptions& options,
                   const std::string& out_path, const std::string& format) {
    Timer timer;
    Report report{"distortion"};
    add_config_meta(report, options.budgets, options.seed);
    report.columns = {"instance", "n", "lower", "upper", "residual", "iterations", "wall-ms"};

    SolverOptions solver;
    solver.tol = tol;
    solver.point_budget = options.budgets.sdp_points;

    bool nondecreasing = true;
    double prev_upper = 0;
    const auto add_instance = [&](const std::string& name, const FiniteMetricSpace& space) {
        Timer row_timer;
        const auto r = exact_c2(space, solver);
        if (!report.rows.empty() && r.upper_bound < prev_upper - 1e-6) nondecreasing = false;
        prev_upper = r.upper_bound;
        report.add_row({name, std::to_string(space.size()), fmt(r.lower_bound),
                        fmt(r.upper_bound), fmt(r.solver_residual),
                        std::to_string(r.iterations), fmt(row_timer.elapsed_ms())});
    };

    if (from_code) {
        const std::size_t last = std::max(d, dmax);
        for (std::size_t dd = d; dd <= last; ++dd) {
            const Code code = make_code(dd, std::min(dimc, dd), options.seed, floor);
            std::ostringstream name;
            name << "code-d" << dd << "-k" << code.dim() << "-s" << options.seed;
            add_instance(name.str(), cube_quotient_space(code));
        }
        if (dmax > d) report.add_meta("nondecreasing", nondecreasing ? "yes" : "no");
    } else {
        std::ifstream in(in_path);
        if (!in) throw std::invalid_argument("cannot open metric file: " + in_path);
        add_instance(in_path, load_metric_space(in));
    }
    emit(report, out_path, format, timer.elapsed_ms());
    return kExitPass;
}

int run_bound(const std::string& in_path, double eta, double L, const SuiteOptions& options,
              const std::string& out_path, const std::string& format) {
    Timer timer;
    std::ifstream in(in_path);
    if (!in) throw std::invalid_argument("cannot open stage table: " + in_path);
    CompressionBoundInput input;
    input.eta = eta;
    input.L = L;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        double diam = 0, r = 0;
        if (!(ls >> diam >> r))
            throw std::invalid_argument("stage table: expected 'diam r' (line " +
                                        std::to_string(lineno) + ")");
        input.diam.push_back(diam);
        input.r.push_back(r);
    }
    const auto bound = compression_upper_bound(input);

    Report report{"bound"};
    add_config_meta(report, options.budgets, options.seed);
    report.add_meta("eta", fmt(eta));
    report.add_meta("L", fmt(L));
    report.columns = {"stage", "diam", "r"};
    for (std::size_t i = 0; i < input.diam.size(); ++i)
        report.add_row({std::to_string(i + 1), fmt(input.diam[i]), fmt(input.r[i])});
    report.add_meta("eps-hat", fmt(bound.eps_hat));
    report.add_meta("bound", fmt(bound.bound));
    emit(report, out_path, format, timer.elapsed_ms());
    return kExitPass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"wreathlab: exact finite checks for word metrics, pinned tour metrics and "
                 "cube quotients"};
    app.require_subcommand(1);

    SuiteOptions options;
    std::string out_path, format = "text";
    app.add_option("--budget-bfs", options.budgets.bfs_elements, "word-ball element cap")
        ->envname("WREATHLAB_BUDGET_BFS");
    app.add_option("--budget-tsp", options.budgets.tsp_support, "exact tour support cap")
        ->envname("WREATHLAB_BUDGET_TSP");
    app.add_option("--budget-sdp", options.budgets.sdp_points, "distortion solver point cap")
        ->envname("WREATHLAB_BUDGET_SDP");
    app.add_option("--budget-coset", options.budgets.coset_elements, "coset enumeration cap")
        ->envname("WREATHLAB_BUDGET_COSET");
    app.add_option("--seed", options.seed, "seed recorded in every report")
        ->envname("WREATHLAB_SEED");
    app.add_option("--cache-dir", options.cache_dir, "ball cache directory")
        ->envname("WREATHLAB_CACHE_DIR");
    app.add_option("--out", out_path, "report path (default stdout)")
        ->envname("WREATHLAB_OUT");
    app.add_option("--format", format, "report format")
        ->check(CLI::IsMember({"text", "csv"}))
        ->envname("WREATHLAB_FORMAT");

    auto* verify = app.add_subcommand("verify", "run a named verification suite");
    verify->fallthrough();
    std::string lemma;
    std::string suite_list;
    for (const auto& name : known_suites()) suite_list += (suite_list.empty() ? "" : "|") + name;
    verify->add_option("lemma", lemma, "one of: " + suite_list)->required();
    verify->add_option("--d", options.d, "cube dimension for code suites");
    verify->add_option("--dimc", options.dimc, "code dimension for code suites");
    verify->add_option("--schedule", options.schedule_file, "stage schedule file");

    auto* distortion = app.add_subcommand("distortion", "exact Euclidean distortion reports");
    distortion->fallthrough();
    std::string in_path;
    bool from_code = false;
    std::size_t dist_d = 4, dist_dmax = 0, dist_dimc = 2, dist_floor = 2;
    double tol = 1e-4;
    distortion->add_option("--in", in_path, "metric space file (n=<points> header)");
    distortion->add_flag("--code", from_code, "measure a generated cube quotient instead");
    distortion->add_option("--d", dist_d, "cube dimension");
    distortion->add_option("--dmax", dist_dmax, "run a family d..dmax");
    distortion->add_option("--dimc", dist_dimc, "code dimension");
    distortion->add_option("--floor", dist_floor, "minimum-distance floor");
    distortion->add_option("--tol", tol, "bisection tolerance");

    auto* bound = app.add_subcommand("bound", "compression bound from a stage table");
    bound->fallthrough();
    std::string bound_in;
    double eta = 1.0, lip = 1.0;
    bound->add_option("--in", bound_in, "stage table: one 'diam r' pair per line")->required();
    bound->add_option("--eta", eta, "distortion exponent of the obstruction family");
    bound->add_option("--L", lip, "bi-Lipschitz constant of the stage embeddings");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (verify->parsed()) return run_verify(lemma, options, out_path, format);
        if (distortion->parsed()) {
            if (!from_code && in_path.empty())
                throw std::invalid_argument("distortion: need --in FILE or --code");
            return run_distortion(in_path, from_code, dist_d, dist_dmax, dist_dimc, dist_floor,
                                  tol, options, out_path, format);
        }
        if (bound->parsed()) return run_bound(bound_in, eta, lip, options, out_path, format);
    } catch (const CapacityError& e) {
        std::cerr << "capacity: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitUsage;
}

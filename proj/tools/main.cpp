#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "cpd/cpd.h"
#include "sim.hpp"

int main(int argc, char** argv) {
    CLI::App app{"cpd: exact changepoint detection for Gaussian mean shifts"};
    app.set_version_flag("--version", cpd_version());
    app.require_subcommand(1);

    cpd::cli::DetectArgs detect;
    CLI::App* detect_cmd =
        app.add_subcommand("detect", "segment a series and report the result as JSON");
    detect_cmd->add_option("input", detect.input_path, "file with one value per line")
        ->required();
    detect_cmd
        ->add_option("--method", detect.method,
                     "one of op, pelt, fpop, sns, snip, pdpa, binseg")
        ->required();
    detect_cmd->add_option("--beta", detect.beta,
                           "penalty per changepoint (default 2*sigma^2*log n)");
    detect_cmd->add_option("--sigma", detect.sigma, "noise standard deviation");
    detect_cmd->add_option("--kappa", detect.kappa, "inequality-pruning constant");
    detect_cmd->add_option("--kmax", detect.kmax,
                           "changepoint budget (required for sns/snip/pdpa)");
    detect_cmd->add_flag("--trace", detect.trace, "include candidate counts in the report");
    detect_cmd->add_option("--out", detect.out_path, "write the report here instead of stdout");

    cpd::cli::SimSpec sim;
    std::string sim_out;
    std::string placement = "equal";
    CLI::App* simulate_cmd =
        app.add_subcommand("simulate", "write a synthetic mean-shift series");
    simulate_cmd->add_option("--n", sim.n, "series length")->required();
    simulate_cmd->add_option("--changes", sim.n_changes, "number of true changepoints");
    simulate_cmd->add_option("--jump", sim.jump, "mean shift in sigma units");
    simulate_cmd->add_option("--sigma", sim.sigma, "noise standard deviation");
    simulate_cmd->add_option("--seed", sim.seed, "random seed");
    simulate_cmd->add_option("--placement", placement, "equal or uniform-random")
        ->check(CLI::IsMember({"equal", "uniform-random"}));
    simulate_cmd->add_option("--out", sim_out, "output path (sidecar <out>.json)")->required();

    cpd::cli::BenchArgs bench;
    CLI::App* bench_cmd =
        app.add_subcommand("bench", "time solvers over a grid of simulated signals");
    bench_cmd->add_option("--n", bench.n_list, "series lengths")->required();
    bench_cmd->add_option("--changes", bench.changes_list, "true changepoint counts")
        ->required();
    bench_cmd->add_option("--methods", bench.methods, "methods to time");
    bench_cmd->add_option("--reps", bench.reps, "replicates per grid cell");
    bench_cmd->add_option("--seed", bench.seed, "random seed");
    bench_cmd->add_option("--jump", bench.jump, "mean shift in sigma units");
    bench_cmd->add_option("--sigma", bench.sigma, "noise standard deviation");
    bench_cmd->add_option("--beta", bench.beta, "penalty override for penalised methods");
    bench_cmd->add_option("--jobs", bench.jobs, "grid cells solved concurrently");
    bench_cmd->add_option("--out", bench.out_path, "write the CSV here instead of stdout");

    cpd::cli::TraceArgs trace;
    CLI::App* trace_cmd = app.add_subcommand(
        "trace", "export per-step candidate counts for pruning solvers as CSV");
    trace_cmd->add_option("input", trace.input_path, "file with one value per line")->required();
    trace_cmd->add_option("--methods", trace.methods, "subset of pelt, fpop, snip, pdpa")
        ->required();
    trace_cmd->add_option("--beta", trace.beta, "penalty (default 2*sigma^2*log n)");
    trace_cmd->add_option("--sigma", trace.sigma, "noise standard deviation");
    trace_cmd->add_option("--kappa", trace.kappa, "inequality-pruning constant");
    trace_cmd->add_option("--kmax", trace.kmax, "budget for snip/pdpa");
    trace_cmd->add_option("--out", trace.out_path, "write the CSV here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cpd::cli::kExitUsage;
    }

    if (detect_cmd->parsed()) {
        return cpd::cli::cmd_detect(detect);
    }
    if (simulate_cmd->parsed()) {
        sim.equal_placement = placement == "equal";
        return cpd::cli::cmd_simulate(sim, sim_out);
    }
    if (bench_cmd->parsed()) {
        return cpd::cli::cmd_bench(bench);
    }
    if (trace_cmd->parsed()) {
        return cpd::cli::cmd_trace(trace);
    }
    return cpd::cli::kExitUsage;
}

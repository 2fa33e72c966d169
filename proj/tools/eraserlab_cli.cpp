// eraserlab command-line front end: run built-in scenarios, sweep basis
// parameters, execute DSL files, and run the invariance/sandwich checks.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "eraserlab/csv.hpp"
#include "eraserlab/dsl.hpp"
#include "eraserlab/measures.hpp"
#include "eraserlab/scenarios.hpp"

namespace {

using namespace eraserlab;

// Exit codes: 0 success, 1 check/parse failure, 2 usage error, 3 I/O error.
constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;
constexpr int kIo = 3;

int emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text;
        return kOk;
    }
    std::ofstream f(output_path, std::ios::binary);
    if (!f) {
        std::cerr << "cannot open output file: " << output_path << "\n";
        return kIo;
    }
    f << text;
    return f ? kOk : kIo;
}

int cmd_run(const std::string& scenario, const std::string& meas, double theta, double phi,
            const std::string& output) {
    ScenarioTrace trace;
    if (scenario == "fig1a") {
        trace = run_fig1a();
    } else if (scenario == "fig1b") {
        trace = run_fig1b({theta, phi});
    } else if (scenario == "fig2a") {
        trace = run_fig2a();
    } else if (scenario == "fig2b") {
        if (meas != "hv" && meas != "hbar_vbar") {
            std::cerr << "invalid --meas value: " << meas << "\n";
            return kUsage;
        }
        trace = run_fig2b(meas == "hv" ? TaggantMeasurement::hv : TaggantMeasurement::hbar_vbar);
    } else {
        std::cerr << "unknown scenario: " << scenario << "\n";
        return kUsage;
    }
    return emit(trace_to_csv(trace), output);
}

int cmd_sweep(double alpha2, std::size_t grid, const std::string& output) {
    if (alpha2 < 0.0 || alpha2 > 1.0) {
        std::cerr << "--alpha2 must be in [0,1]\n";
        return kUsage;
    }
    // Tagged state alpha|000> + beta|111> with A=0, B=1, T=2.
    const double alpha = std::sqrt(alpha2);
    const double beta = std::sqrt(1.0 - alpha2);
    std::vector<cdouble> amps(8);
    amps[0] = alpha;
    amps[7] = beta;
    const StateVector s(3, std::move(amps));
    const PartitionSpec cut{{0}, {1}, {2}};

    std::ostringstream out;
    out << "a2,ep_closed_form,ep_numeric\n";
    for (std::size_t i = 0; i < grid; ++i) {
        const double a2 = double(i) / double(grid - 1);
        const double closed = ep_closed_form(alpha2, a2);
        // Build the basis straight from the amplitudes so a^2 in {0,1} stays exact.
        const double a = std::sqrt(a2), b = std::sqrt(1.0 - a2);
        CMatrix u(2, 2);
        u(0, 0) = a;
        u(0, 1) = b;
        u(1, 0) = -b;
        u(1, 1) = a;
        const double numeric = entanglement_of_projection(s, cut, TaggantBasis{std::move(u)}).value;
        out << format_float(a2) << "," << format_float(closed) << "," << format_float(numeric)
            << "\n";
    }
    return emit(out.str(), output);
}

int cmd_exec(const std::string& path, const std::string& output) {
    std::ifstream f(path);
    if (!f) {
        std::cerr << "cannot open file: " << path << "\n";
        return kIo;
    }
    std::ostringstream buf;
    buf << f.rdbuf();

    const dsl::ParseResult result = dsl::parse(buf.str());
    if (!result.ok()) {
        const dsl::ParseError& e = *result.error;
        std::cerr << "line " << e.line << ": column " << e.column << ": " << e.message << "\n";
        return kFailure;
    }
    try {
        return emit(trace_to_csv(dsl::execute(*result.program)), output);
    } catch (const dsl::ExecError& e) {
        std::cerr << "line " << e.line << ": " << e.message << "\n";
        return kFailure;
    }
}

int cmd_check(std::size_t samples, std::uint64_t seed) {
    const double invariance = check_2x4_invariance(samples, seed);
    std::cout << "2x4 invariance max |E_p - 1|: " << format_float(invariance) << "\n";

    // Sandwich sample suite: random tripartite states, random bases,
    // E_f - eps <= E_p <= E_a + eps.
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    const PartitionSpec cut{{0}, {1}, {2}};
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        std::vector<cdouble> amps(8);
        double norm2 = 0.0;
        for (cdouble& a : amps) {
            a = {gauss(rng), gauss(rng)};
            norm2 += std::norm(a);
        }
        for (cdouble& a : amps) a /= std::sqrt(norm2);
        const StateVector s(3, std::move(amps));
        const double ef = entanglement_of_formation(s, cut).value;
        const double ea = entanglement_of_assistance(s, cut).value;
        for (int b = 0; b < 20; ++b) {
            const BasisParams params{std::acos(std::sqrt(unit(rng))), angle(rng)};
            const double ep = entanglement_of_projection(s, cut, taggant_basis(params)).value;
            worst = std::max({worst, ef - ep, ep - ea});
        }
    }
    std::cout << "sandwich max violation: " << format_float(worst) << "\n";

    const bool ok = invariance < 1e-6 && worst < 1e-6;
    std::cout << (ok ? "check passed" : "check failed") << "\n";
    return ok ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entanglement eraser simulation toolkit"};
    app.require_subcommand(1);

    std::string scenario, meas = "hv", output;
    double theta = 0.25 * std::numbers::pi, phi = 0.0, alpha2 = 0.5;
    std::size_t grid = 101, samples = 1000;
    std::uint64_t seed = 0;

    CLI::App* run = app.add_subcommand("run", "run a built-in scenario");
    run->add_option("scenario", scenario, "fig1a|fig1b|fig2a|fig2b")->required();
    run->add_option("--meas", meas, "taggant measurement for fig2b: hv|hbar_vbar");
    run->add_option("--theta", theta, "taggant basis theta for fig1b (radians)");
    run->add_option("--phi", phi, "taggant basis phi for fig1b (radians)");
    run->add_option("--output", output, "write CSV to this path instead of stdout");

    CLI::App* sweep = app.add_subcommand("sweep", "sweep a^2 and compare E_p routes");
    sweep->add_option("--alpha2", alpha2, "Schmidt weight alpha^2 of the tagged state");
    sweep->add_option("--grid", grid, "number of a^2 grid points")->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
    sweep->add_option("--output", output, "write CSV to this path instead of stdout");

    std::string exec_path;
    CLI::App* exec = app.add_subcommand("exec", "execute a DSL file");
    exec->add_option("file", exec_path, "DSL source file")->required();
    exec->add_option("--output", output, "write CSV to this path instead of stdout");

    CLI::App* check = app.add_subcommand("check", "run invariance and sandwich checks");
    check->add_option("--samples", samples, "random taggant bases to sample")
        ->check(CLI::Range(std::size_t{1}, std::size_t{10000000}));
    check->add_option("--seed", seed, "random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (run->parsed()) return cmd_run(scenario, meas, theta, phi, output);
        if (sweep->parsed()) return cmd_sweep(alpha2, grid, output);
        if (exec->parsed()) return cmd_exec(exec_path, output);
        return cmd_check(samples, seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
}

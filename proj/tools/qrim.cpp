// qrim: command-line front end for the repeated-interaction machines.
//
//   qrim dynamics      trajectory with the per-collision energy ledger
//   qrim limit-cycle   analytic and brute-force limit cycle side by side
//   qrim heat-sweep    limit-cycle heat and current along tau or a coupling scale
//   qrim bounds-sample seeded coupling campaign with population-window margins
//   qrim verify        invariant battery; nonzero exit on any failed check

#include "qrim/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using qrim::cli::RunSpec;

struct Flags {
    RunSpec spec;
    std::string mode{"alternating"};
    std::string axis{"tau"};
    std::string out;
    std::size_t samples{0};
    double c0_re{0.0};
    double c0_im{0.0};
};

void add_common(CLI::App* sub, Flags& f) {
    RunSpec& s = f.spec;
    sub->add_option("--mode", f.mode, "alternating or simultaneous")
        ->check(CLI::IsMember({"alternating", "simultaneous"}))
        ->capture_default_str();
    sub->add_option("--tau", s.cfg.tau, "collision duration")->capture_default_str();
    sub->add_option("--omega-s", s.cfg.omega_s, "system splitting")->capture_default_str();
    sub->add_option("--omega-h", s.cfg.hot.bath.omega, "hot ancilla splitting")->capture_default_str();
    sub->add_option("--omega-c", s.cfg.cold.bath.omega, "cold ancilla splitting")->capture_default_str();
    sub->add_option("--beta-h", s.cfg.hot.bath.beta, "hot inverse temperature")->capture_default_str();
    sub->add_option("--beta-c", s.cfg.cold.bath.beta, "cold inverse temperature")->capture_default_str();
    sub->add_option("--jxx-h", s.cfg.hot.coupling.jxx, "hot XX coupling")->capture_default_str();
    sub->add_option("--jyy-h", s.cfg.hot.coupling.jyy, "hot YY coupling")->capture_default_str();
    sub->add_option("--jxx-c", s.cfg.cold.coupling.jxx, "cold XX coupling")->capture_default_str();
    sub->add_option("--jyy-c", s.cfg.cold.coupling.jyy, "cold YY coupling")->capture_default_str();
    sub->add_option("--collisions", s.collisions, "number of collisions")->capture_default_str();
    sub->add_option("--samples", f.samples, "sample count");
    sub->add_option("--seed", s.seed, "64-bit seed of every randomized step")->capture_default_str();
    sub->add_option("--tol", s.tol, "limit-cycle convergence tolerance")->capture_default_str();
    sub->add_option("--out", f.out, "output file (default stdout)");
    sub->add_option("--threads", s.workers, "worker threads, 0 = hardware concurrency");
}

int emit(const Flags& f, const std::function<int(std::ostream&)>& run) {
    std::ostringstream buf;
    const int code = run(buf);
    if (f.out.empty()) {
        std::cout << buf.str();
        std::cout.flush();
        if (!std::cout) {
            std::cerr << "qrim: failed writing to stdout\n";
            return qrim::cli::kIoError;
        }
        return code;
    }
    std::ofstream file(f.out, std::ios::binary | std::ios::trunc);
    if (!file) {
        std::cerr << "qrim: cannot open '" << f.out << "' for writing\n";
        return qrim::cli::kIoError;
    }
    file << buf.str();
    file.close();
    if (!file) {
        std::cerr << "qrim: failed writing '" << f.out << "'\n";
        return qrim::cli::kIoError;
    }
    return code;
}

void report_failures(const qrim::verify::Report& rep) {
    for (const auto& c : rep.checks) {
        if (c.status != qrim::verify::Status::fail) continue;
        std::cerr << "qrim verify: check '" << c.name << "' failed (worst "
                  << qrim::csv::format_double(c.worst) << ' ' << qrim::verify::to_string(c.relation)
                  << ' ' << qrim::csv::format_double(c.limit) << ")";
        if (!c.offending.empty()) std::cerr << " at " << c.offending;
        std::cerr << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Qubit repeated-interaction thermal machines"};
    app.set_version_flag("--version", std::string(qrim::cli::kVersion));
    app.require_subcommand(1);

    Flags f;
    auto* dyn = app.add_subcommand("dynamics", "collision-by-collision trajectory");
    auto* lc = app.add_subcommand("limit-cycle", "analytic vs brute-force limit cycle");
    auto* sweep = app.add_subcommand("heat-sweep", "limit-cycle heat along tau or a coupling scale");
    auto* bounds = app.add_subcommand("bounds-sample", "seeded coupling campaign");
    auto* ver = app.add_subcommand("verify", "invariant battery");
    for (CLI::App* sub : {dyn, lc, sweep, bounds, ver}) add_common(sub, f);

    dyn->add_option("--p0", f.spec.initial.p, "initial ground-state population")->capture_default_str();
    dyn->add_option("--c0-re", f.c0_re, "initial coherence, real part");
    dyn->add_option("--c0-im", f.c0_im, "initial coherence, imaginary part");
    dyn->add_flag("--random-initial", f.spec.random_initial, "draw the initial state from --seed");

    sweep->add_option("--axis", f.axis, "tau or J (J scales all four couplings)")
        ->check(CLI::IsMember({"tau", "J", "j"}))
        ->capture_default_str();
    sweep->add_option("--from", f.spec.from, "first axis value")->capture_default_str();
    sweep->add_option("--to", f.spec.to, "last axis value")->capture_default_str();
    sweep->add_option("--points", f.spec.points, "number of axis values")->capture_default_str();

    ver->add_flag("--quick", f.spec.quick, "reduced sample counts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : qrim::cli::kInvalidInput;
    }

    RunSpec& s = f.spec;
    try {
        s.mode = qrim::cli::parse_mode(f.mode);
        s.axis = qrim::cli::parse_axis(f.axis);
        s.initial.c = {f.c0_re, f.c0_im};
        CLI::App* chosen = app.get_subcommands().front();
        if (chosen->count("--samples") > 0) s.samples = f.samples;

        if (chosen == dyn) return emit(f, [&](std::ostream& os) { return qrim::cli::cmd_dynamics(s, os); });
        if (chosen == lc) return emit(f, [&](std::ostream& os) { return qrim::cli::cmd_limit_cycle(s, os); });
        if (chosen == sweep) return emit(f, [&](std::ostream& os) { return qrim::cli::cmd_heat_sweep(s, os); });
        if (chosen == bounds) return emit(f, [&](std::ostream& os) { return qrim::cli::cmd_bounds_sample(s, os); });
        return emit(f, [&](std::ostream& os) {
            qrim::cli::validate(s);
            const qrim::verify::Report rep = qrim::verify::run(qrim::cli::verify_options(s));
            qrim::cli::write_metadata(os, "verify", s);
            qrim::cli::write_report(os, rep);
            report_failures(rep);
            return rep.passed() ? qrim::cli::kOk : qrim::cli::kInvariantViolation;
        });
    } catch (const std::invalid_argument& e) {
        std::cerr << "qrim: invalid input: " << e.what() << '\n';
        return qrim::cli::kInvalidInput;
    } catch (const qrim::FrozenDynamics& e) {
        std::cerr << "qrim: frozen dynamics: " << e.what() << '\n';
        return qrim::cli::kFrozen;
    } catch (const std::exception& e) {
        std::cerr << "qrim: error: " << e.what() << '\n';
        return 1;
    }
}

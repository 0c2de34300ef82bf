// denjoy: command-line front end for Denjoy circle actions and their
// crossed products.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

#include "denjoy/cli/commands.hpp"

using namespace denjoy;
using namespace denjoy::cli;

int main(int argc, char** argv) {
    CLI::App app{"Exact Denjoy actions of Z^d on the circle: dynamics, trace, K-theory, ideals"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    std::string output;
    bool table = false;
    app.add_option("--precision-bits", opt.precision_bits, "Working precision in bits")->check(CLI::Range(16, 1 << 20));
    app.add_option("--max-precision-bits", opt.max_precision_bits, "Refinement ceiling in bits")
        ->check(CLI::Range(16, 1 << 20));
    app.add_option("--enum-budget", opt.enum_budget, "Maximum lattice points enumerated by a realization")
        ->check(CLI::PositiveNumber);
    app.add_option("--estimate", opt.estimate, "rho: also run an n-iterate Poincare estimate")
        ->check(CLI::Range(std::int64_t{1}, std::int64_t{100000000}));
    app.add_option("-o,--output", output, "Write the report to a file instead of stdout");
    app.add_flag("--table", table, "Print a human-readable table instead of JSON");

    std::string spec, g, point, from, to, x0 = "0", report_path;
    std::vector<std::string> terms;
    KTheoryArgs kargs;
    std::size_t kd = 0;
    PrimArgs pargs;

    auto* classify = app.add_subcommand("classify", "Trichotomy and rotation data of an action");
    classify->add_option("spec", spec, "Action spec file")->required();

    auto* rho = app.add_subcommand("rho", "Rotation number of a group element");
    rho->add_option("spec", spec, "Action spec file")->required();
    rho->add_option("g", g, "Group element, e.g. 2,-1 or e1")->required();
    rho->add_option("--x0", x0, "Start point of the estimate (rational)");

    auto* act = app.add_subcommand("act", "Image of a point under a group element");
    act->add_option("spec", spec, "Action spec file")->required();
    act->add_option("g", g, "Group element")->required();
    act->add_option("point", point, "gap:<orbit>:<g>:<t>, cantor:<form>[:left|:right] or x:<rational>")->required();

    auto* measure = app.add_subcommand("measure", "Invariant measure of an arc (from, to]");
    measure->add_option("spec", spec, "Action spec file")->required();
    measure->add_option("--from", from, "Start point")->required();
    auto* to_opt = measure->add_option("--to", to, "End point");
    measure->add_option("--g", g, "Use the arc (x, g x]")->excludes(to_opt);

    auto* trace_cmd = app.add_subcommand("trace", "Trace and trace-ideal membership of a crossed-product element");
    trace_cmd->add_option("spec", spec, "Action spec file")->required();
    trace_cmd->add_option("--term", terms, "<g>|const:<v>, <g>|bump:<orbit>:<g>:<t>=<v>;..., <g>|knots:<y>=<v>;...");

    auto* kt = app.add_subcommand("ktheory", "Ordered K-theory, index maps and trace pairing");
    kt->add_option("spec", kargs.spec_path, "Action spec file");
    kt->add_option("--d", kd, "Rank d when no spec is given")->check(CLI::Range(1, 64));
    kt->add_option("--gamma", kargs.gamma, "Rotation numbers when no spec is given");
    kt->add_option("--injectivity-bound", kargs.injectivity_bound, "Box |n_i| <= B for the injectivity certificate")
        ->check(CLI::Range(1, 100000));

    auto* prim = app.add_subcommand("prim", "Primitive ideal space, closures and ideals");
    prim->add_option("spec", pargs.spec_path, "Action spec file");
    prim->add_option("--k", pargs.k, "Number of orbits of gaps ('inf' allowed) when no spec is given");
    prim->add_option("--subset", pargs.subsets, "Subset to close, e.g. 'c1:{1/3}' or 'c1:(0,1/2]; J'");
    prim->add_option("--open", pargs.opens, "Open subset whose ideal is described");

    auto* exp = app.add_subcommand("export", "Re-emit a report in canonical form");
    exp->add_option("report", report_path, "Report file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
        if (*classify) out = cmd_classify(spec, opt);
        else if (*rho) out = cmd_rho(spec, g, x0, opt);
        else if (*act) out = cmd_act(spec, g, point, opt);
        else if (*measure) out = cmd_measure(spec, from, to, g, opt);
        else if (*trace_cmd) out = cmd_trace(spec, terms, opt);
        else if (*kt) {
            if (kt->count("--d")) kargs.d = kd;
            out = cmd_ktheory(kargs, opt);
        } else if (*prim) out = cmd_prim(pargs, opt);
        else if (*exp) out = cmd_export(report_path);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << " (best certified log2 width " << e.achieved_log2_width() << ")\n";
        return kBudget;
    } catch (const UndecidedError& e) {
        std::cerr << "undecided: " << e.what() << "\n";
        return kUndecided;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    if (!*exp)
        out.report.elapsed_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    const std::string text = table ? render_table(out.report) : write_report(out.report);
    if (output.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(output, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot write '" << output << "'\n";
            return kUsage;
        }
        f << text;
    }
    return out.exit_code;
}

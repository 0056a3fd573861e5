#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <Eigen/Core>

#include "fueter/cli.hpp"

int main(int argc, char** argv) {
    // FH_THREADS caps internal linear-algebra parallelism.
    if (const char* threads = std::getenv("FH_THREADS")) {
        const int t = std::atoi(threads);
        if (t > 0) Eigen::setNbThreads(t);
    }

    CLI::App app{"k-Cauchy-Fueter complex toolkit: exact operator algebra, regularity checks, and "
                 "Hodge-type solvers"};
    app.require_subcommand(1);

    // ops print
    auto* ops = app.add_subcommand("ops", "Operator rendering");
    ops->require_subcommand(1);
    auto* ops_print = ops->add_subcommand("print", "Print D0, D1, adjoints and Laplacians");
    int ops_k = 2;
    std::string ops_format = "text";
    ops_print->add_option("--k", ops_k, "Degree k (>= 2)")->required();
    ops_print->add_option("--format", ops_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    // check
    auto* check = app.add_subcommand("check", "Verification suites");
    std::string suite;
    int k_opt = 0, k_min = 2, k_max = 8, samples = 100;
    std::uint64_t seed = 0;
    std::string check_out;
    check->add_option("suite", suite, "complex|laplacian|symbol|sl|poly")->required();
    check->add_option("--k", k_opt, "Single degree k (overrides --k-min/--k-max)");
    check->add_option("--k-min", k_min, "Smallest degree");
    check->add_option("--k-max", k_max, "Largest degree");
    check->add_option("--samples", samples, "Random samples per degree");
    check->add_option("--seed", seed, "Random seed");
    check->add_option("--out", check_out, "Write the JSON report to this path");

    // solve
    auto* solve = app.add_subcommand("solve", "Non-homogeneous solves and Hodge decomposition");
    std::string domain, task, input_path, out_path, report_path;
    int solve_k = 2;
    double tol = 1e-10;
    solve->add_option("--domain", domain, "torus or box")->required();
    solve->add_option("--task", task, "d0|d1|box1|hodge")->required();
    solve->add_option("--k", solve_k, "Degree k (>= 2)")->required();
    solve->add_option("--input", input_path, "Input field (.json or .bin)")->required();
    solve->add_option("--tol", tol, "Solve tolerance");
    solve->add_option("--out", out_path, "Output field path");
    solve->add_option("--report", report_path, "Write the JSON report to this path");

    // bvp box: alias front-end for solve --domain box
    auto* bvp = app.add_subcommand("bvp", "Discrete boundary value problems");
    auto* bvp_box = bvp->add_subcommand("box", "Alias of solve --domain box");
    std::string bvp_task = "hodge", bvp_input, bvp_out, bvp_report;
    int bvp_k = 2, bvp_n = 0;
    double bvp_h = 0, bvp_tol = 1e-10;
    bvp_box->set_help_flag("--help", "Print help");  // frees --h for the spacing option
    bvp_box->add_option("--task", bvp_task, "d0|d1|box1|hodge");
    bvp_box->add_option("--k", bvp_k, "Degree k (>= 2)")->required();
    bvp_box->add_option("--n", bvp_n, "Expected grid cells per dimension (validated)");
    bvp_box->add_option("--h", bvp_h, "Expected grid spacing (validated)");
    bvp_box->add_option("--input", bvp_input, "Input field (.json or .bin)")->required();
    bvp_box->add_option("--tol", bvp_tol, "Solve tolerance");
    bvp_box->add_option("--out", bvp_out, "Output report path (JSON report)");
    bvp_box->add_option("--out-field", bvp_report, "Output field path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : fueter::cli::exit_usage;
    }

    if (ops_print->parsed())
        return fueter::cli::cmd_ops_print(ops_k, ops_format, std::cout, std::cerr);

    if (check->parsed()) {
        if (k_opt > 0) k_min = k_max = k_opt;
        return fueter::cli::cmd_check(suite, k_min, k_max, samples, seed, check_out, std::cout,
                                      std::cerr);
    }

    if (solve->parsed())
        return fueter::cli::cmd_solve(domain, task, solve_k, input_path, tol, out_path,
                                      report_path, std::cout, std::cerr);

    if (bvp_box->parsed()) {
        if (bvp_n > 0 || bvp_h > 0) {
            try {
                const fueter::BoxField f = fueter::cli::detail::load_box_field(bvp_input);
                if ((bvp_n > 0 && f.grid.n != bvp_n) || (bvp_h > 0 && f.grid.h != bvp_h)) {
                    std::cerr << "bvp box: --n/--h disagree with the input field grid\n";
                    return fueter::cli::exit_usage;
                }
            } catch (const fueter::io_error& e) {
                std::cerr << e.what() << "\n";
                return fueter::cli::exit_io;
            }
        }
        // `--out` of bvp box is the report path per its interface.
        return fueter::cli::cmd_solve("box", bvp_task, bvp_k, bvp_input, bvp_tol, bvp_report,
                                      bvp_out, std::cout, std::cerr);
    }

    return fueter::cli::exit_usage;
}

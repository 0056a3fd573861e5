#ifndef FUETER_CLI_HPP
#define FUETER_CLI_HPP

#include <chrono>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "fueter/operator_text.hpp"
#include "fueter/poly.hpp"
#include "fueter/sampling.hpp"
#include "fueter/serialization.hpp"
#include "fueter/shapiro_lopatinskii.hpp"

namespace fueter::cli {

enum ExitCode : int { exit_ok = 0, exit_check_failed = 1, exit_usage = 2, exit_io = 3 };

struct CheckEntry {
    std::string name;
    bool pass = false;
    Json evidence;  // every numeric evidence value names its tolerance
};

struct RunReport {
    std::string command;
    Json parameters = Json::object();
    std::uint64_t seed = 0;
    std::vector<CheckEntry> checks;
    double wall_time_s = 0;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    Json to_json() const {
        Json jchecks = Json::array();
        for (const auto& c : checks)
            jchecks.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"evidence", c.evidence}});
        return Json{{"command", command}, {"parameters", parameters}, {"seed", seed},
                    {"checks", jchecks},  {"wall_time_s", wall_time_s}};
    }
};

namespace detail {

inline Json evidence(double value, double tol, const std::string& tol_name) {
    return Json{{"value", value}, {"tolerance", tol}, {"tolerance_name", tol_name}};
}

class Stopwatch {
  public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

inline double max_abs_coeff(const SecondOrderOperator& op) {
    double m = 0;
    for (const auto& q : op.e)
        for (const auto& c : q.c) m = std::max(m, std::abs(c));
    return m;
}

} // namespace detail

// ------------------------------------------------------------------ ops print

inline int cmd_ops_print(int k, const std::string& format, std::ostream& out, std::ostream& err) {
    if (k < 2) {
        err << "ops print: k must be >= 2\n";
        return exit_usage;
    }
    if (format != "text" && format != "json") {
        err << "ops print: format must be text or json\n";
        return exit_usage;
    }
    const FirstOrderOperator d0 = build_d0(k);
    const FirstOrderOperator d1 = build_d1(k);
    if (format == "json") {
        Json j{{"k", k},
               {"d0", to_json(d0)},
               {"d1", to_json(d1)},
               {"d0_adjoint", to_json(formal_adjoint(d0))},
               {"d1_adjoint", to_json(formal_adjoint(d1))},
               {"box0", to_json(box0(k))},
               {"box1", to_json(box1(k))},
               {"box2", to_json(box2(k))}};
        out << j.dump(2) << "\n";
        return exit_ok;
    }
    out << "D0 (" << d0.rows << "x" << d0.cols << "):\n" << to_string_rows(d0);
    out << "D0 in x-notation:\n" << to_string_rows_x(d0);
    out << "D1 (" << d1.rows << "x" << d1.cols << "):\n" << to_string_rows(d1);
    out << "D1 in x-notation:\n" << to_string_rows_x(d1);
    out << "D0* (" << d0.cols << "x" << d0.rows << "):\n" << to_string_rows(formal_adjoint(d0));
    out << "D1* (" << d1.cols << "x" << d1.rows << "):\n" << to_string_rows(formal_adjoint(d1));
    out << "box0 = D0* D0:\n" << to_string_rows(box0(k));
    out << "box1 = D0 D0* + D1* D1:\n" << to_string_rows(box1(k));
    out << "box2 = D1 D1*:\n" << to_string_rows(box2(k));
    return exit_ok;
}

// --------------------------------------------------------------------- checks

namespace suites {

inline void complex_suite(int k_min, int k_max, RunReport& rep) {
    for (int k = k_min; k <= k_max; ++k) {
        const SecondOrderOperator prod = compose(build_d1(k), build_d0(k));
        CheckEntry e;
        e.name = "complex-property k=" + std::to_string(k);
        const double worst = detail::max_abs_coeff(prod);
        e.pass = prod.is_zero();
        e.evidence = detail::evidence(worst, 0.0, "exact-coefficient-equality");
        rep.checks.push_back(std::move(e));
    }
}

inline void laplacian_suite(int k_min, int k_max, RunReport& rep) {
    for (int k = k_min; k <= k_max; ++k) {
        CheckEntry e;
        e.name = "box1-closed-form k=" + std::to_string(k);
        e.pass = box1(k) == box1_closed_form(k);
        e.evidence = detail::evidence(e.pass ? 0.0 : 1.0, 0.0, "exact-coefficient-equality");
        rep.checks.push_back(std::move(e));

        SecondOrderOperator expected2(k - 1, k - 1);
        for (int i = 0; i < k - 1; ++i) expected2.at(i, i) = Complex(-2, 0) * laplacian();
        CheckEntry e2;
        e2.name = "box2-diagonal k=" + std::to_string(k);
        e2.pass = box2(k) == expected2;
        e2.evidence = detail::evidence(e2.pass ? 0.0 : 1.0, 0.0, "exact-coefficient-equality");
        rep.checks.push_back(std::move(e2));
    }
    if (k_min <= 2 && 2 <= k_max) {
        SecondOrderOperator expected0(3, 3);
        expected0.at(0, 0) = Complex(-1, 0) * laplacian();
        expected0.at(1, 1) = Complex(-2, 0) * laplacian();
        expected0.at(2, 2) = Complex(-1, 0) * laplacian();
        CheckEntry e;
        e.name = "box0-diagonal k=2";
        e.pass = box0(2) == expected0;
        e.evidence = detail::evidence(e.pass ? 0.0 : 1.0, 0.0, "exact-coefficient-equality");
        rep.checks.push_back(std::move(e));

        // Top 2x2 block of D0: conjugate-transpose times itself is diag(Delta, Delta).
        const FirstOrderOperator d0 = build_d0(2);
        FirstOrderOperator block(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) block.at(i, j) = d0.at(i, j);
        SecondOrderOperator diag(2, 2);
        diag.at(0, 0) = laplacian();
        diag.at(1, 1) = laplacian();
        CheckEntry e2;
        e2.name = "top-block-unitarity k=2";
        e2.pass = compose(conj_transpose(block), block) == diag;
        e2.evidence = detail::evidence(e2.pass ? 0.0 : 1.0, 0.0, "exact-coefficient-equality");
        rep.checks.push_back(std::move(e2));
    }
}

inline void symbol_suite(int k_min, int k_max, int samples, Rng& rng, RunReport& rep) {
    for (int k = k_min; k <= k_max; ++k) {
        double worst_product = 0, worst_gap = 0, worst_hom = 0, min_lambda = 1e300;
        bool ranks_ok = true, lambda_ok = true;
        Json failing_xi;  // replay data for the first failing sample
        for (int s = 0; s < samples; ++s) {
            const Vec4 xi = random_unit4(rng);
            try {
                const SymbolExactnessReport r = check_symbol_exactness(k, xi);
                worst_product = std::max(worst_product, r.product_norm);
                worst_gap = std::max(worst_gap, r.ker_im_gap);
            } catch (const exactness_error&) {
                ranks_ok = false;
                if (failing_xi.is_null()) failing_xi = Json::array({xi[0], xi[1], xi[2], xi[3]});
            }
            try {
                const double l1 = ellipticity_check(k, xi);
                const double l2 = ellipticity_check(k, Vec4(2 * xi));
                min_lambda = std::min(min_lambda, l1);
                worst_hom = std::max(worst_hom, std::abs(l2 / l1 - 4.0));
            } catch (const ellipticity_error&) {
                lambda_ok = false;
                if (failing_xi.is_null()) failing_xi = Json::array({xi[0], xi[1], xi[2], xi[3]});
            }
        }
        CheckEntry e;
        e.name = "symbol-exactness k=" + std::to_string(k);
        e.pass = ranks_ok && worst_product < 1e-12 && worst_gap < 1e-10;
        e.evidence = Json{{"samples", samples},
                          {"worst_product_norm", worst_product},
                          {"product_tolerance", 1e-12},
                          {"worst_ker_im_gap", worst_gap},
                          {"gap_tolerance", 1e-10}};
        if (!failing_xi.is_null()) e.evidence["failing_xi"] = failing_xi;
        rep.checks.push_back(std::move(e));

        CheckEntry e2;
        e2.name = "ellipticity k=" + std::to_string(k);
        e2.pass = lambda_ok && min_lambda > 0 && worst_hom < 1e-10;
        e2.evidence = Json{{"samples", samples},
                           {"min_lambda", min_lambda},
                           {"positivity_tolerance", 0.0},
                           {"worst_homogeneity_defect", worst_hom},
                           {"homogeneity_tolerance", 1e-10}};
        if (!failing_xi.is_null()) e2.evidence["failing_xi"] = failing_xi;
        rep.checks.push_back(std::move(e2));
    }
    if (k_min <= 2 && 2 <= k_max) {
        // |det of the leading 2x2 symbol block| = |n|^2 at every frequency.
        double worst = 0;
        for (int s = 0; s < samples; ++s) {
            const Vec4 n = random_unit4(rng);
            const SymbolMatrix sym = symbol_fourier(build_d0(2), n);
            const Complex det = sym(0, 0) * sym(1, 1) - sym(0, 1) * sym(1, 0);
            worst = std::max(worst, std::abs(std::abs(det) - n.squaredNorm()) / n.squaredNorm());
        }
        CheckEntry e;
        e.name = "determinant-identity k=2";
        e.pass = worst < 1e-12;
        e.evidence = detail::evidence(worst, 1e-12, "relative");
        rep.checks.push_back(std::move(e));
    }
}

inline void sl_suite(int k_min, int k_max, int samples, Rng& rng, RunReport& rep,
                     std::ostream* instance_rows) {
    for (int k = k_min; k <= k_max; ++k) {
        bool all_ok = true;
        double worst_pivot_margin = 1e300, min_sigma = 1e300, min_ratio = 1e300, max_ratio = 0;
        double worst_k3_det = 0;
        for (int s = 0; s < samples; ++s) {
            const Vec4 nu = random_unit4(rng);
            const Vec4 xi = random_tangent_unit(rng, nu);
            const SLInstance inst(k, nu, xi);
            bool ok = true;
            Json row{{"k", k},
                     {"nu", Json::array({nu[0], nu[1], nu[2], nu[3]})},
                     {"xi", Json::array({xi[0], xi[1], xi[2], xi[3]})}};
            try {
                const Complex lam = lambda_coupling(inst);
                const double ratio = std::abs(lam) / xi.norm();
                min_ratio = std::min(min_ratio, ratio);
                max_ratio = std::max(max_ratio, ratio);
                row["lambda_over_xi"] = ratio;

                const SLReducedReport red = sl_reduced_nonsingular(inst);
                for (double p : red.pivots)
                    worst_pivot_margin = std::min(worst_pivot_margin, -p - xi.norm());
                row["pivot_min"] = *std::min_element(red.pivots.begin(), red.pivots.end());
                row["det"] = Json::array({red.det.real(), red.det.imag()});
                ok = ok && red.nonsingular;

                if (k == 3) {
                    const double expected = 4 * xi.squaredNorm() - std::norm(lam);
                    worst_k3_det = std::max(
                        worst_k3_det, std::abs(red.det.real() - expected) / std::abs(expected));
                }

                const SLDirectReport dir = sl_direct_check(inst);
                min_sigma = std::min(min_sigma, dir.sigma_min);
                row["decaying_dim"] = dir.decaying_dim;
                row["sigma_min"] = dir.sigma_min;
                ok = ok && dir.regular && dir.decaying_dim == 2 * k;
            } catch (const error& ex) {
                ok = false;
                row["error"] = ex.what();
            }
            row["pass"] = ok;
            all_ok = all_ok && ok;
            if (instance_rows) *instance_rows << row.dump() << "\n";
        }
        CheckEntry e;
        e.name = "shapiro-lopatinskii k=" + std::to_string(k);
        e.pass = all_ok && worst_pivot_margin > 0 && min_sigma > 1e-6;
        e.evidence = Json{{"samples", samples},
                          {"min_pivot_margin", worst_pivot_margin},
                          {"pivot_bound", "-|xi|"},
                          {"min_sigma", min_sigma},
                          {"sigma_tolerance", 1e-6},
                          {"lambda_ratio_range", Json::array({min_ratio, max_ratio})}};
        if (k == 3) {
            e.evidence["worst_k3_det_defect"] = worst_k3_det;
            e.evidence["k3_det_tolerance"] = 1e-12;
            e.pass = e.pass && worst_k3_det < 1e-12;
        }
        rep.checks.push_back(std::move(e));
    }
}

inline void poly_suite(int k_min, int k_max, int samples, Rng& rng, RunReport& rep) {
    for (int k = std::max(2, k_min); k <= std::min(3, k_max); ++k) {
        double worst = 0;
        bool ok = true;
        for (int s = 0; s < samples; ++s) {
            PolyField phi0(k + 1, 3);
            for (int c = 0; c < k + 1; ++c)
                for (int d = 0; d <= 3; ++d)
                    for (const auto& mono : monomials_of_degree(d))
                        phi0.set(c, mono, random_complex(rng));
            const PolyField psi = apply_poly(build_d0(k), phi0);
            try {
                const PolyField phi = solve_d0_poly(k, psi, 1e-10);
                PolyField r = apply_poly(build_d0(k), phi);
                for (int c = 0; c < 2 * k; ++c)
                    for (const auto& [a, v] : psi.comps[c]) r.comps[c][a] -= v;
                worst = std::max(worst, r.norm() / std::max(1.0, psi.norm()));
            } catch (const error&) {
                ok = false;
            }
        }
        CheckEntry e;
        e.name = "poly-roundtrip k=" + std::to_string(k);
        e.pass = ok && worst < 1e-10;
        e.evidence = detail::evidence(worst, 1e-10, "relative-residual");
        rep.checks.push_back(std::move(e));
    }
    for (int k = k_min; k <= std::min(5, k_max); ++k)
        for (int d = 0; d <= 3; ++d) {
            const DegreeExactnessReport r = degree_exactness(k, d);
            CheckEntry e;
            e.name = "poly-dimensions k=" + std::to_string(k) + " degree=" + std::to_string(d);
            e.pass = r.dim_ker_d1 == r.rank_d0;
            e.evidence = Json{{"dim_ker_d1", r.dim_ker_d1},
                              {"rank_d0", r.rank_d0},
                              {"tolerance_name", "exact-dimension-match"}};
            rep.checks.push_back(std::move(e));
        }
}

} // namespace suites

inline int cmd_check(const std::string& suite, int k_min, int k_max, int samples,
                     std::uint64_t seed, const std::string& out_path, std::ostream& out,
                     std::ostream& err) {
    if (k_min < 2 || k_max < k_min || samples < 1) {
        err << "check: need 2 <= k-min <= k-max and samples >= 1\n";
        return exit_usage;
    }
    detail::Stopwatch watch;
    RunReport rep;
    rep.command = "check " + suite;
    rep.parameters = Json{{"suite", suite}, {"k_min", k_min}, {"k_max", k_max},
                          {"samples", samples}};
    rep.seed = seed;
    Rng rng(seed);

    if (suite == "complex")
        suites::complex_suite(k_min, k_max, rep);
    else if (suite == "laplacian")
        suites::laplacian_suite(k_min, k_max, rep);
    else if (suite == "symbol")
        suites::symbol_suite(k_min, k_max, samples, rng, rep);
    else if (suite == "sl")
        suites::sl_suite(k_min, k_max, samples, rng, rep, &out);
    else if (suite == "poly")
        suites::poly_suite(k_min, k_max, samples, rng, rep);
    else {
        err << "check: unknown suite '" << suite
            << "' (expected complex|laplacian|symbol|sl|poly)\n";
        return exit_usage;
    }

    rep.wall_time_s = watch.seconds();
    try {
        if (out_path.empty())
            out << rep.to_json().dump(2) << "\n";
        else
            save_json_file(out_path, rep.to_json());
    } catch (const io_error& e) {
        err << e.what() << "\n";
        return exit_io;
    }
    return rep.all_pass() ? exit_ok : exit_check_failed;
}

// ---------------------------------------------------------------------- solve

namespace detail {

inline bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

inline Field load_torus_field(const std::string& path) {
    if (ends_with(path, ".bin")) {
        std::ifstream is(path, std::ios::binary);
        if (!is) throw io_error("cannot open " + path);
        return read_binary_field(is);
    }
    return field_from_json(load_json_file(path));
}

inline void save_torus_field(const std::string& path, const Field& f) {
    if (ends_with(path, ".bin")) {
        std::ofstream os(path, std::ios::binary);
        if (!os) throw io_error("cannot open " + path + " for writing");
        write_binary(os, f);
        return;
    }
    save_json_file(path, to_json(f));
}

inline BoxField load_box_field(const std::string& path) {
    if (ends_with(path, ".bin")) {
        std::ifstream is(path, std::ios::binary);
        if (!is) throw io_error("cannot open " + path);
        return read_binary_box_field(is);
    }
    return box_field_from_json(load_json_file(path));
}

inline void save_box_field(const std::string& path, const BoxField& f) {
    if (ends_with(path, ".bin")) {
        std::ofstream os(path, std::ios::binary);
        if (!os) throw io_error("cannot open " + path + " for writing");
        write_binary(os, f);
        return;
    }
    save_json_file(path, to_json(f));
}

inline double field_residual(const FirstOrderOperator& op, const Field& u, const Field& rhs) {
    return (apply_op(op, u) - rhs).norm();
}

} // namespace detail

inline int cmd_solve(const std::string& domain, const std::string& task, int k,
                     const std::string& input_path, double tol, const std::string& out_path,
                     const std::string& report_path, std::ostream& out, std::ostream& err) {
    if (k < 2) {
        err << "solve: k must be >= 2\n";
        return exit_usage;
    }
    if (domain != "torus" && domain != "box") {
        err << "solve: domain must be torus or box\n";
        return exit_usage;
    }
    if (task != "d0" && task != "d1" && task != "box1" && task != "hodge") {
        err << "solve: task must be d0|d1|box1|hodge\n";
        return exit_usage;
    }

    detail::Stopwatch watch;
    RunReport rep;
    rep.command = "solve";
    rep.parameters = Json{{"domain", domain}, {"task", task}, {"k", k},
                          {"input", input_path}, {"tol", tol}, {"out", out_path}};

    int code = exit_ok;
    try {
        if (domain == "torus") {
            const Field f = detail::load_torus_field(input_path);
            if (task == "d0") {
                const Field u = solve_d0_torus(k, f, tol);
                const double res = detail::field_residual(build_d0(k), u, f);
                if (!out_path.empty()) detail::save_torus_field(out_path, u);
                rep.checks.push_back({"residual", res <= 10 * tol * std::max(1.0, f.norm()),
                                      detail::evidence(res, 10 * tol * std::max(1.0, f.norm()),
                                                       "10*tol*|f|")});
            } else if (task == "d1") {
                const Field u = solve_d1_torus(k, f, tol);
                const double res = detail::field_residual(build_d1(k), u, f);
                if (!out_path.empty()) detail::save_torus_field(out_path, u);
                rep.checks.push_back({"residual", res <= tol * std::max(1.0, f.norm()),
                                      detail::evidence(res, tol * std::max(1.0, f.norm()),
                                                       "tol*|f|")});
            } else if (task == "box1") {
                const Field u = solve_box1_torus(k, f);
                Field rhs = f;
                const double mean = mean_mode_norm(f);
                const Field bu = apply_op(box1(k), u);
                // box1 u reproduces f minus its mean mode.
                double res = 0;
                {
                    Field diff = bu - rhs;
                    const double d = diff.norm();
                    res = std::sqrt(std::max(0.0, d * d - mean * mean));
                }
                if (!out_path.empty()) detail::save_torus_field(out_path, u);
                rep.checks.push_back({"residual", res <= 10 * tol * std::max(1.0, f.norm()),
                                      detail::evidence(res, 10 * tol * std::max(1.0, f.norm()),
                                                       "10*tol*|f|")});
                rep.checks.push_back({"harmonic-part", true,
                                      detail::evidence(mean, 0.0, "reported-mean-mode")});
            } else {  // hodge
                const HodgeResult h = hodge_decompose(k, f);
                if (!out_path.empty())
                    save_json_file(out_path, Json{{"exact", to_json(h.exact)},
                                                  {"coexact", to_json(h.coexact)},
                                                  {"harmonic", to_json(h.harmonic)}});
                const double fn = std::max(1.0, f.norm());
                const double rec = (h.exact + h.coexact + h.harmonic - f).norm();
                const double o01 = std::abs(inner(h.exact, h.coexact));
                const double o02 = std::abs(inner(h.exact, h.harmonic));
                const double o12 = std::abs(inner(h.coexact, h.harmonic));
                rep.checks.push_back({"reconstruction", rec <= tol * fn,
                                      detail::evidence(rec, tol * fn, "tol*|f|")});
                rep.checks.push_back(
                    {"orthogonality", std::max({o01, o02, o12}) <= tol * fn * fn,
                     Json{{"exact_coexact", o01}, {"exact_harmonic", o02},
                          {"coexact_harmonic", o12}, {"tolerance", tol * fn * fn},
                          {"tolerance_name", "tol*|f|^2"}}});
            }
        } else {
            const BoxField f = detail::load_box_field(input_path);
            const DiscreteComplex c = assemble(k, f.grid);
            const int expect_level = task == "d1" ? 2 : 1;
            const int expect_m = task == "d1" ? k - 1 : 2 * k;
            if (f.level != expect_level || f.m != expect_m)
                throw shape_error("solve box " + task + ": input must be a level-" +
                                  std::to_string(expect_level) + " field with " +
                                  std::to_string(expect_m) + " components");
            if (task == "d1") {
                const SolveD1GridResult r = solve_d1_grid(c, f.data, tol);
                if (!out_path.empty()) {
                    BoxField uf(f.grid, 1, 2 * k);
                    uf.data = r.psi;
                    detail::save_box_field(out_path, uf);
                }
                rep.checks.push_back({"residual", r.residual <= tol * std::max(1.0, f.data.norm()),
                                      detail::evidence(r.residual,
                                                       tol * std::max(1.0, f.data.norm()),
                                                       "tol*|f| (discrete A1 surjectivity)")});
            } else {
                const Box1Solver solver(c);
                const double fn = std::max(1.0, f.data.norm());
                if (task == "d0") {
                    const SolveD0GridResult r = solve_d0_grid(solver, f.data, tol);
                    if (!out_path.empty()) {
                        BoxField uf(f.grid, 0, k + 1);
                        uf.data = r.u;
                        detail::save_box_field(out_path, uf);
                    }
                    const double measured_c = r.residual / (tol * fn);
                    rep.checks.push_back(
                        {"residual", r.residual <= 100 * tol * fn,
                         Json{{"value", r.residual},
                              {"tolerance", 100 * tol * fn},
                              {"tolerance_name", "C*tol*|f|, C=100"},
                              {"measured_C", measured_c}}});
                    rep.checks.push_back({"stability-ratio", true,
                                          detail::evidence(r.stability_ratio, 0.0,
                                                           "reported |u|/|f|")});
                } else if (task == "box1") {
                    const Eigen::VectorXcd u = solver.solve(f.data, tol);
                    const Eigen::VectorXcd rhs = solver.deflate(f.data);
                    const double res = (solver.box() * u - rhs).norm();
                    if (!out_path.empty()) {
                        BoxField uf(f.grid, 1, 2 * k);
                        uf.data = u;
                        detail::save_box_field(out_path, uf);
                    }
                    rep.checks.push_back({"residual", res <= tol * fn,
                                          detail::evidence(res, tol * fn, "tol*|f|")});
                } else {  // hodge
                    const GridHodgeResult h = hodge_decompose_grid(solver, f.data, tol);
                    if (!out_path.empty()) {
                        BoxField e(f.grid, 1, 2 * k), co(f.grid, 1, 2 * k), ha(f.grid, 1, 2 * k);
                        e.data = h.exact;
                        co.data = h.coexact;
                        ha.data = h.harmonic;
                        save_json_file(out_path, Json{{"exact", to_json(e)},
                                                      {"coexact", to_json(co)},
                                                      {"harmonic", to_json(ha)}});
                    }
                    const double rec = (h.exact + h.coexact + h.harmonic - f.data).norm();
                    const Complex o01 = h.exact.dot(h.coexact);
                    const Complex o02 = h.exact.dot(h.harmonic);
                    const Complex o12 = h.coexact.dot(h.harmonic);
                    rep.checks.push_back({"reconstruction", rec <= 10 * tol * fn,
                                          detail::evidence(rec, 10 * tol * fn, "10*tol*|f|")});
                    rep.checks.push_back(
                        {"orthogonality",
                         std::max({std::abs(o01), std::abs(o02), std::abs(o12)}) <=
                             10 * tol * fn * fn,
                         Json{{"matrix",
                               Json::array({Json::array({o01.real(), o01.imag()}),
                                            Json::array({o02.real(), o02.imag()}),
                                            Json::array({o12.real(), o12.imag()})})},
                              {"tolerance", 10 * tol * fn * fn},
                              {"tolerance_name", "10*tol*|f|^2"}}});
                    rep.checks.push_back({"harmonic-dimension", true,
                                          detail::evidence(solver.harmonics().dim(), 0.0,
                                                           "reported")});
                }
            }
        }
    } catch (const compatibility_error& e) {
        rep.checks.push_back({"compatibility", false, detail::evidence(e.measured, tol, "tol*|f|")});
        code = exit_check_failed;
    } catch (const orthogonality_error& e) {
        rep.checks.push_back({"orthogonality", false, detail::evidence(e.measured, tol, "tol*|f|")});
        code = exit_check_failed;
    } catch (const mean_mode_error& e) {
        rep.checks.push_back({"mean-mode", false, detail::evidence(e.measured, tol, "tol*|f|")});
        code = exit_check_failed;
    } catch (const shape_error& e) {
        err << e.what() << "\n";
        return exit_usage;
    } catch (const io_error& e) {
        err << e.what() << "\n";
        return exit_io;
    } catch (const error& e) {
        rep.checks.push_back({"solver", false, Json{{"error", e.what()}}});
        code = exit_check_failed;
    }

    rep.wall_time_s = watch.seconds();
    if (code == exit_ok && !rep.all_pass()) code = exit_check_failed;
    try {
        if (report_path.empty())
            out << rep.to_json().dump(2) << "\n";
        else
            save_json_file(report_path, rep.to_json());
    } catch (const io_error& e) {
        err << e.what() << "\n";
        return exit_io;
    }
    return code;
}

} // namespace fueter::cli

#endif // FUETER_CLI_HPP

// Command-line front end: decompositions, generalized inverses, verification
// suites, partial orders, and self-validating instance generators.  Every
// command emits a JSON report on stdout; --output writes the same report (or,
// for `gen`, the generated matrices) to disk.
//
// Exit codes: 0 the requested check passed, 1 a mathematical failure (inverse
// does not exist, order does not hold, residual above tolerance), 2 an I/O or
// validation error (unreadable file, malformed matrix, bad flags).

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include <dualmat/dualmat.hpp>

namespace {

using dualmat::ComplexMatrix;
using dualmat::DualMatrix;
using dualmat::json;
using dualmat::ToleranceConfig;

ToleranceConfig config_from_tol(double tol) {
    ToleranceConfig cfg;
    if (tol > 0.0) {
        // --tol drives the residual tolerance; the identity tolerance keeps
        // its default 10x headroom relative to it.
        cfg.residual = tol;
        cfg.identity = 10.0 * tol;
    }
    return cfg;
}

json tolerances_json(const ToleranceConfig& cfg) {
    json j;
    j["appreciable"] = cfg.appreciable;
    j["residual"] = cfg.residual;
    j["identity"] = cfg.identity;
    j["grouping"] = cfg.grouping;
    j["borderline_factor"] = cfg.borderline_factor;
    j["max_sweeps"] = cfg.max_sweeps;
    return j;
}

json sigma_json(const std::vector<dualmat::DualReal>& sigma) {
    json arr = json::array();
    for (const auto& v : sigma) arr.push_back(json::array({v.s, v.d}));
    return arr;
}

json real_array_json(const std::vector<double>& v) {
    json arr = json::array();
    for (double x : v) arr.push_back(x);
    return arr;
}

json identity_report_json(const dualmat::IdentityReport& rep) {
    json j;
    json items = json::array();
    for (const auto& item : rep.items) {
        json e;
        e["name"] = item.name;
        e["residual"] = item.residual;
        e["pass"] = item.pass;
        items.push_back(std::move(e));
    }
    j["items"] = std::move(items);
    j["all_pass"] = rep.all_pass;
    j["consistent"] = rep.consistent;
    return j;
}

json existence_json(const dualmat::ExistenceReport& rep) {
    json j;
    j["kind"] = rep.kind;
    json preds = json::array();
    for (const auto& [name, ok] : rep.predicates) {
        preds.push_back(json{{"name", name}, {"holds", ok}});
    }
    j["predicates"] = std::move(preds);
    j["agree"] = rep.agree;
    j["exists"] = rep.exists;
    j["borderline"] = rep.borderline;
    json margins;
    for (const auto& [name, value] : rep.margins) margins[name] = value;
    j["margins"] = std::move(margins);
    return j;
}

json verdict_json(const dualmat::OrderVerdict& v) {
    json j;
    j["kind"] = v.kind;
    j["holds"] = v.holds;
    json ev = json::array();
    for (const auto& [name, ok] : v.evidence) {
        ev.push_back(json{{"name", name}, {"holds", ok}});
    }
    j["evidence"] = std::move(ev);
    return j;
}

double unitarity_dev(const DualMatrix& X) {
    DualMatrix eye = DualMatrix::identity(X.rows());
    return std::max(dm_max_dev(dm_mul(dm_adjoint(X), X), eye),
                    dm_max_dev(dm_mul(X, dm_adjoint(X)), eye));
}

struct ReportSink {
    json report;
    std::string output_path;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    int finish(bool pass, int fail_code = 1) {
        report["pass"] = pass;
        std::chrono::duration<double, std::milli> dt =
            std::chrono::steady_clock::now() - start;
        report["wall_time_ms"] = dt.count();
        std::string text = report.dump(2) + "\n";
        std::cout << text;
        if (!output_path.empty()) {
            std::ofstream out(output_path);
            if (!out) {
                std::cerr << "cannot write '" << output_path << "'\n";
                return 2;
            }
            out << text;
        }
        return pass ? 0 : fail_code;
    }

    int fail_with(const dualmat::Error& e) {
        json err;
        err["code"] = dualmat::errc_name(e.code());
        err["message"] = e.what();
        report["error"] = std::move(err);
        return finish(false, dualmat::is_validation_error(e.code()) ? 2 : 1);
    }
};

int cmd_svd(const std::string& input, double tol, const std::string& output) {
    ToleranceConfig cfg = config_from_tol(tol);
    ReportSink sink;
    sink.output_path = output;
    sink.report["command"] = "svd";
    sink.report["config"] = json{{"tolerances", tolerances_json(cfg)},
                                 {"inputs", json::array({input})}};
    try {
        DualMatrix A = dualmat::read_matrix_file(input);
        dualmat::DualSVD f = dualmat::dual_svd(A, cfg);
        json results;
        results["rows"] = A.rows();
        results["cols"] = A.cols();
        results["appreciable_rank"] = f.r;
        results["dual_rank"] = f.t;
        results["sigma"] = sigma_json(f.sigma);
        results["U"] = dualmat::matrix_to_json(f.U);
        results["V"] = dualmat::matrix_to_json(f.V);
        sink.report["results"] = std::move(results);
        json residuals;
        residuals["reconstruction"] = dm_rel_dev(dual_svd_reconstruct(f), A);
        residuals["left_factor_unitarity"] = unitarity_dev(f.U);
        residuals["right_factor_unitarity"] = unitarity_dev(f.V);
        bool pass = true;
        for (const auto& [name, value] : residuals.items()) {
            pass = pass && value.get<double>() <= cfg.residual;
        }
        sink.report["residuals"] = std::move(residuals);
        return sink.finish(pass);
    } catch (const dualmat::Error& e) {
        return sink.fail_with(e);
    }
}

int cmd_hsd(const std::string& input, const std::string& form, double tol,
            const std::string& output) {
    ToleranceConfig cfg = config_from_tol(tol);
    ReportSink sink;
    sink.output_path = output;
    sink.report["command"] = "hsd";
    sink.report["config"] = json{{"tolerances", tolerances_json(cfg)},
                                 {"inputs", json::array({input})},
                                 {"form", form}};
    try {
        DualMatrix A = dualmat::read_matrix_file(input);
        json results;
        json residuals;
        results["form"] = form;
        if (form == "basic") {
            dualmat::HSBasic f = dualmat::hs_basic(A, cfg);
            results["U"] = dualmat::matrix_to_json(f.U);
            results["Sigma0"] = sigma_json(f.Sigma0);
            results["K0"] = dualmat::matrix_to_json(f.K0);
            results["L0"] = dualmat::matrix_to_json(f.L0);
            residuals["reconstruction"] = dm_rel_dev(hs_reconstruct(f), A);
            for (const auto& [name, value] : hs_constraint_residuals(f)) {
                residuals[name] = value;
            }
        } else if (form == "partitioned") {
            dualmat::HSPartitioned f = dualmat::hs_partitioned(A, cfg);
            results["U"] = dualmat::matrix_to_json(f.U);
            results["Sigma1"] = sigma_json(f.Sigma1);
            results["Sigma2"] = sigma_json(f.Sigma2);
            results["K"] = dualmat::matrix_to_json(f.K);
            results["L"] = dualmat::matrix_to_json(f.L);
            results["M"] = dualmat::matrix_to_json(f.M);
            results["N"] = dualmat::matrix_to_json(f.N);
            residuals["reconstruction"] = dm_rel_dev(hs_reconstruct(f), A);
            for (const auto& [name, value] : hs_constraint_residuals(f)) {
                residuals[name] = value;
            }
        } else {
            dualmat::HSRefined f = dualmat::hs_refined(A, cfg);
            results["U"] = dualmat::matrix_to_json(f.U);
            results["Sigma1s"] = real_array_json(f.Sigma1s);
            results["Sigma1d"] = real_array_json(f.Sigma1d);
            results["Sigma2d"] = real_array_json(f.Sigma2d);
            const std::pair<const char*, const ComplexMatrix*> blocks[] = {
                {"K1", &f.K1}, {"K2", &f.K2}, {"L1", &f.L1}, {"L2", &f.L2},
                {"M1", &f.M1}, {"M2", &f.M2}, {"N1", &f.N1}, {"N2", &f.N2}};
            for (const auto& [name, part] : blocks) {
                results[name] = dualmat::detail::part_to_json(*part);
            }
            residuals["reconstruction"] = dm_rel_dev(hs_reconstruct(f), A);
            for (const auto& [name, value] : hs_constraint_residuals(f)) {
                residuals[name] = value;
            }
        }
        bool pass = true;
        for (const auto& [name, value] : residuals.items()) {
            pass = pass && value.get<double>() <= cfg.residual;
        }
        sink.report["results"] = std::move(results);
        sink.report["residuals"] = std::move(residuals);
        return sink.finish(pass);
    } catch (const dualmat::Error& e) {
        return sink.fail_with(e);
    }
}

int cmd_inv(const std::string& input, const std::string& kind, const std::string& method,
            double tol, const std::string& output) {
    ToleranceConfig cfg = config_from_tol(tol);
    ReportSink sink;
    sink.output_path = output;
    sink.report["command"] = "inv";
    sink.report["config"] = json{{"tolerances", tolerances_json(cfg)},
                                 {"inputs", json::array({input})},
                                 {"kind", kind},
                                 {"method", method}};
    try {
        DualMatrix A = dualmat::read_matrix_file(input);
        dualmat::GinvMethod m = method == "formula" ? dualmat::GinvMethod::formula
                                                    : dualmat::GinvMethod::decomposition;
        dualmat::GinvResult res;
        if (kind == "dmpgi") {
            res = dualmat::dmpgi(A, m, cfg);
        } else if (kind == "ndmpi") {
            res = dualmat::ndmpi(A, m, cfg);
        } else if (kind == "dggi") {
            res = dualmat::dggi(A, m, cfg);
        } else {
            res = dualmat::dcgi(A, m, cfg);
        }
        json results;
        results["kind"] = kind;
        results["method"] = method;
        results["value"] = dualmat::matrix_to_json(res.value);
        results["infinitesimal_correction"] = dualmat::detail::part_to_json(res.R);
        sink.report["results"] = std::move(results);
        json residuals;
        for (const auto& [name, value] : res.residuals) residuals[name] = value;
        sink.report["residuals"] = std::move(residuals);
        return sink.finish(true);
    } catch (const dualmat::Error& e) {
        return sink.fail_with(e);
    }
}

int cmd_check(const std::string& input, const std::string& suite, double tol,
              std::uint64_t seed, const std::string& output) {
    ToleranceConfig cfg = config_from_tol(tol);
    ReportSink sink;
    sink.output_path = output;
    sink.report["command"] = "check";
    sink.report["config"] = json{{"tolerances", tolerances_json(cfg)},
                                 {"inputs", json::array({input})},
                                 {"suite", suite},
                                 {"seed", seed}};
    try {
        DualMatrix A = dualmat::read_matrix_file(input);
        json results;
        bool pass = false;
        if (suite == "identities") {
            dualmat::IdentityReport group = dualmat::identity_suite_group(A, cfg);
            dualmat::IdentityReport core = dualmat::identity_suite_core(A, cfg);
            dualmat::IdentityReport coin = dualmat::coincidence(A, cfg);
            dualmat::IdentityReport self = dualmat::self_inverse_checks(A, cfg);
            results["group_inverse_identities"] = identity_report_json(group);
            results["core_inverse_identities"] = identity_report_json(core);
            results["coincidence"] = identity_report_json(coin);
            results["self_inverse"] = identity_report_json(self);
            pass = group.all_pass && core.all_pass && coin.consistent && self.consistent;
        } else {
            // The orders suite drives the input through both partial orders:
            // reflexivity, a seeded dominator pair above it, and a perturbed
            // matrix that must fall outside the order.
            dualmat::OrderVerdict refl_core = dualmat::dcore_leq(A, A, cfg);
            dualmat::OrderVerdict refl_minus = dualmat::dminus_leq(A, A, cfg);
            dualmat::detail::FanBlocks fb = dualmat::detail::fan_blocks(A, cfg);
            int free = A.rows() - fb.r;
            DualMatrix B = free > 0
                               ? dualmat::dcore_dominator(
                                     A, dualmat::gen_index1(free, seed * 911 + 13), cfg)
                               : A;
            dualmat::OrderVerdict dom_core = dualmat::dcore_leq(A, B, cfg);
            dualmat::OrderVerdict dom_minus = dualmat::dminus_leq(A, B, cfg);
            dualmat::Rng rng(seed * 2357 + 17);
            double step = 0.05 * dm_scale(A);
            DualMatrix noise(
                cm_scale(dualmat::random_gaussian(A.rows(), A.cols(), rng), step),
                cm_scale(dualmat::random_gaussian(A.rows(), A.cols(), rng), step));
            dualmat::OrderVerdict perturbed = dualmat::dcore_leq(A, dm_add(B, noise), cfg);
            results["reflexive_dcore"] = verdict_json(refl_core);
            results["reflexive_dminus"] = verdict_json(refl_minus);
            results["dominator_dcore"] = verdict_json(dom_core);
            results["dominator_dminus"] = verdict_json(dom_minus);
            results["perturbed_dcore"] = verdict_json(perturbed);
            pass = refl_core.holds && refl_minus.holds && dom_core.holds &&
                   dom_minus.holds && !perturbed.holds;
        }
        sink.report["results"] = std::move(results);
        return sink.finish(pass);
    } catch (const dualmat::Error& e) {
        return sink.fail_with(e);
    }
}

int cmd_order(const std::string& input_a, const std::string& input_b,
              const std::string& kind, double tol, const std::string& output) {
    ToleranceConfig cfg = config_from_tol(tol);
    ReportSink sink;
    sink.output_path = output;
    sink.report["command"] = "order";
    sink.report["config"] = json{{"tolerances", tolerances_json(cfg)},
                                 {"inputs", json::array({input_a, input_b})},
                                 {"kind", kind}};
    try {
        DualMatrix A = dualmat::read_matrix_file(input_a);
        DualMatrix B = dualmat::read_matrix_file(input_b);
        dualmat::OrderVerdict v = kind == "dcore" ? dualmat::dcore_leq(A, B, cfg)
                                                  : dualmat::dminus_leq(A, B, cfg);
        sink.report["results"] = verdict_json(v);
        return sink.finish(v.holds);
    } catch (const dualmat::Error& e) {
        return sink.fail_with(e);
    }
}

std::string pair_path(const std::string& output, const char* suffix) {
    std::string stem = output;
    const std::string ext = ".json";
    if (stem.size() >= ext.size() &&
        stem.compare(stem.size() - ext.size(), ext.size(), ext) == 0) {
        stem.resize(stem.size() - ext.size());
    }
    return stem + suffix + ext;
}

int cmd_gen(const std::string& kind, int n, std::uint64_t seed, double tol,
            const std::string& output) {
    ToleranceConfig cfg = config_from_tol(tol);
    ReportSink sink;
    sink.report["command"] = "gen";
    sink.report["config"] = json{{"tolerances", tolerances_json(cfg)},
                                 {"kind", kind},
                                 {"size", n},
                                 {"seed", seed}};
    try {
        json results;
        results["kind"] = kind;
        bool valid = false;
        if (kind == "dcore-pair") {
            auto [A, B] = dualmat::gen_dcore_pair(n, seed, cfg);
            dualmat::OrderVerdict core = dualmat::dcore_leq(A, B, cfg);
            dualmat::OrderVerdict minus = dualmat::dminus_leq(A, B, cfg);
            results["validation"] = json{{"dcore", verdict_json(core)},
                                         {"dminus", verdict_json(minus)}};
            valid = core.holds && minus.holds;
            if (valid) {
                std::string path_a = pair_path(output, "_A");
                std::string path_b = pair_path(output, "_B");
                dualmat::write_matrix_file(path_a, A);
                dualmat::write_matrix_file(path_b, B);
                results["written"] = json::array({path_a, path_b});
            }
        } else {
            DualMatrix A = kind == "dmpgi-exists" ? dualmat::gen_dmpgi_exists(n, seed)
                                                  : dualmat::gen_index1(n, seed);
            dualmat::ExistenceReport rep = kind == "dmpgi-exists"
                                               ? dualmat::dmpgi_exists(A, cfg)
                                               : dualmat::dual_index_is_one(A, cfg);
            results["validation"] = existence_json(rep);
            valid = rep.agree && rep.exists;
            if (valid) {
                dualmat::write_matrix_file(output, A);
                results["written"] = json::array({output});
            }
        }
        sink.report["results"] = std::move(results);
        return sink.finish(valid);
    } catch (const dualmat::Error& e) {
        return sink.fail_with(e);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dual complex matrix decompositions, generalized inverses, and orders"};
    app.require_subcommand(1);

    std::string input, input_b, output, form = "basic", kind, method = "formula",
                                        suite = "identities";
    double tol = -1.0;
    std::uint64_t seed = 1;
    int size = 4;

    CLI::App* svd = app.add_subcommand("svd", "dual singular value decomposition");
    svd->add_option("input", input, "matrix file")->required();
    svd->add_option("--tol", tol, "residual tolerance")->envname("DUALMAT_TOL");
    svd->add_option("--output", output, "write the report to this path");

    CLI::App* hsd = app.add_subcommand("hsd", "unitary similarity decomposition");
    hsd->add_option("input", input, "matrix file")->required();
    hsd->add_option("--form", form, "factor layout")
        ->check(CLI::IsMember({"basic", "partitioned", "refined"}));
    hsd->add_option("--tol", tol, "residual tolerance")->envname("DUALMAT_TOL");
    hsd->add_option("--output", output, "write the report to this path");

    CLI::App* inv = app.add_subcommand("inv", "generalized inverse");
    inv->add_option("input", input, "matrix file")->required();
    inv->add_option("--kind", kind, "inverse kind")
        ->required()
        ->check(CLI::IsMember({"dmpgi", "ndmpi", "dggi", "dcgi"}));
    inv->add_option("--method", method, "computation route")
        ->check(CLI::IsMember({"formula", "decomposition"}));
    inv->add_option("--tol", tol, "residual tolerance")->envname("DUALMAT_TOL");
    inv->add_option("--output", output, "write the report to this path");

    CLI::App* check = app.add_subcommand("check", "verification suites");
    check->add_option("input", input, "matrix file")->required();
    check->add_option("--suite", suite, "which suite to run")
        ->check(CLI::IsMember({"identities", "orders"}));
    check->add_option("--seed", seed, "seed for the derived instances");
    check->add_option("--tol", tol, "residual tolerance")->envname("DUALMAT_TOL");
    check->add_option("--output", output, "write the report to this path");

    CLI::App* order = app.add_subcommand("order", "partial order test between two matrices");
    order->add_option("input_a", input, "left matrix file")->required();
    order->add_option("input_b", input_b, "right matrix file")->required();
    order->add_option("--kind", kind, "order kind")
        ->required()
        ->check(CLI::IsMember({"dcore", "dminus"}));
    order->add_option("--tol", tol, "residual tolerance")->envname("DUALMAT_TOL");
    order->add_option("--output", output, "write the report to this path");

    CLI::App* gen = app.add_subcommand("gen", "emit a self-validated random instance");
    gen->add_option("--kind", kind, "instance family")
        ->required()
        ->check(CLI::IsMember({"dmpgi-exists", "index1", "dcore-pair"}));
    gen->add_option("-n,--size", size, "matrix dimension")->check(CLI::PositiveNumber);
    gen->add_option("--seed", seed, "generator seed");
    gen->add_option("--tol", tol, "residual tolerance")->envname("DUALMAT_TOL");
    gen->add_option("--output", output, "path for the generated matrix file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help/version exit cleanly, bad flags are 2
    }

    if (svd->parsed()) return cmd_svd(input, tol, output);
    if (hsd->parsed()) return cmd_hsd(input, form, tol, output);
    if (inv->parsed()) return cmd_inv(input, kind, method, tol, output);
    if (check->parsed()) return cmd_check(input, suite, tol, seed, output);
    if (order->parsed()) return cmd_order(input, input_b, kind, tol, output);
    if (gen->parsed()) return cmd_gen(kind, size, seed, tol, output);
    return 2;
}

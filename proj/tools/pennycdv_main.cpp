// Command-line front end: generate realization files, certify instances,
// sweep families into CSV tables, and dump EDM diagnostics.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pennycdv/cdv.hpp"
#include "pennycdv/edm.hpp"
#include "pennycdv/errors.hpp"
#include "pennycdv/realization.hpp"
#include "pennycdv/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitInputError = 2;

pennycdv::TolerancePolicy policy_from_env() {
    pennycdv::TolerancePolicy policy;
    if (const char* tol = std::getenv("PENNYCDV_TOL")) {
        try {
            policy.tau_rel = std::stod(tol);
        } catch (const std::exception&) {
            throw pennycdv::ParameterError("PENNYCDV_TOL is not a number: " +
                                           std::string(tol));
        }
        policy.validate();
    }
    return policy;
}

pennycdv::Family parse_family(const std::string& id) {
    const auto f = pennycdv::family_from_id(id);
    if (!f)
        throw pennycdv::ParameterError(
            "unknown family '" + id +
            "' (expected path-arc, path-collinear, union-paths, cycle, flower, "
            "lattice-strip)");
    return *f;
}

int cmd_generate(const std::string& family_id, int n, int k, int segments,
                 const std::string& output) {
    pennycdv::GenSpec spec;
    spec.family = parse_family(family_id);
    spec.n = n;
    spec.k = k;
    spec.segments = segments;
    const pennycdv::Realization r = pennycdv::generate_realization(spec);
    pennycdv::validate_packing(r, policy_from_env());
    if (output == "-") {
        pennycdv::write_realization(r, std::cout);
    } else {
        pennycdv::write_realization_file(r, output);
        std::cout << "wrote " << r.size() << " points to " << output << "\n";
    }
    return kExitOk;
}

void print_text_report(const pennycdv::VerifyResult& vr) {
    const auto& c = vr.cert;
    const auto& t = vr.report;
    std::cout << "name: " << t.name << " (n = " << t.n << ")\n";
    std::cout << "contact-graph family: " << pennycdv::family_name(t.family) << "\n";
    std::cout << "classification: "
              << (t.kind == pennycdv::EdmKind::Spherical ? "spherical" : "nonspherical");
    if (c.reduced) std::cout << " (reduced petal instance, center node " << t.isolated_node << ")";
    std::cout << "; r = " << t.embedding_dim << ", rank(D) = " << t.rank_d;
    if (t.exact_rank_d >= 0) std::cout << " (exact: " << t.exact_rank_d << ")";
    if (t.kind == pennycdv::EdmKind::Spherical) std::cout << ", rho^2 = " << t.rho_sq;
    std::cout << "\n";
    std::cout << "corank " << c.corank << " = n-" << (t.n - c.corank) << "; M1 "
              << (c.m1_ok ? "ok" : "FAIL") << "; M2 " << (c.m2_ok ? "ok" : "FAIL") << " ("
              << c.negative_eigs << " negative); M3 " << (c.m3_ok ? "ok" : "FAIL");
    if (c.sap_direct_ran) std::cout << " (direct nullity " << c.sap_nullity_direct << ")";
    std::cout << "\n";
    std::cout << "eigenvalue gap ratio: " << c.gap.gap_ratio
              << (c.gap.gap_ok ? "" : " (AMBIGUOUS)") << "\n";
    if (!t.dead_zone_pairs.empty()) {
        std::cout << "warning: " << t.dead_zone_pairs.size()
                  << " pair(s) in the contact dead zone\n";
    }
    if (t.theorem_ok)
        std::cout << "mu(complement) >= " << c.mu_lower_bound << "\n";
    else
        std::cout << "VERIFICATION FAILED (expected corank " << t.expected_corank << ")\n";
}

int cmd_verify(const std::string& input, bool exact, bool direct_sap,
               const std::string& format) {
    const pennycdv::Realization r = pennycdv::read_realization_file(input);
    pennycdv::VerifyOptions opts;
    opts.always_run_direct_sap = direct_sap;
    opts.require_exact = exact;
    const pennycdv::VerifyResult vr = pennycdv::verify_theorem(r, policy_from_env(), opts);
    if (format == "json")
        std::cout << pennycdv::certificate_json(vr).dump(2) << "\n";
    else
        print_text_report(vr);
    return vr.report.theorem_ok ? kExitOk : kExitVerificationFailure;
}

int cmd_sweep(const std::string& families_arg, int n_min, int n_max,
              const std::string& output, bool direct_sap) {
    std::vector<pennycdv::Family> families;
    if (families_arg == "all") {
        families = {pennycdv::Family::PathArc, pennycdv::Family::PathCollinear,
                    pennycdv::Family::UnionPathsArc, pennycdv::Family::CyclePolygon,
                    pennycdv::Family::Flower, pennycdv::Family::LatticeStrip};
    } else {
        std::stringstream ss(families_arg);
        std::string item;
        while (std::getline(ss, item, ',')) families.push_back(parse_family(item));
        if (families.empty()) throw pennycdv::ParameterError("no families given");
    }
    pennycdv::VerifyOptions opts;
    opts.always_run_direct_sap = direct_sap;

    const auto rows = pennycdv::run_sweep(families, n_min, n_max, policy_from_env(), opts);
    if (output == "-") {
        pennycdv::write_sweep_csv(rows, std::cout);
    } else {
        std::ofstream out(output, std::ios::binary);
        if (!out) throw pennycdv::IoError("cannot open for writing: " + output);
        pennycdv::write_sweep_csv(rows, out);
    }
    int pass = 0;
    double total_ms = 0.0;
    for (const auto& row : rows) {
        pass += row.ok ? 1 : 0;
        total_ms += row.elapsed_ms;
    }
    std::cerr << "sweep: " << pass << "/" << rows.size() << " instances certified in "
              << total_ms << " ms\n";
    for (const auto& row : rows)
        if (!row.ok)
            std::cerr << "  fail: " << row.family << " n=" << row.n << ": " << row.reason
                      << "\n";
    return pass == static_cast<int>(rows.size()) ? kExitOk : kExitVerificationFailure;
}

int cmd_edm_info(const std::string& input, const std::string& format) {
    const pennycdv::TolerancePolicy policy = policy_from_env();
    const pennycdv::Realization r = pennycdv::read_realization_file(input);
    pennycdv::validate_packing(r, policy);
    const pennycdv::Edm dm = pennycdv::edm_from_points(r);
    const pennycdv::EdmClassification cls = pennycdv::classify(dm, policy);
    const pennycdv::NullspaceReport nullrel = pennycdv::nullspace_relation(dm.d, policy);
    const bool spherical = cls.kind == pennycdv::EdmKind::Spherical;

    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["n"] = r.size();
    j["embedding_dim"] = cls.embedding_dim;
    j["rank_d"] = cls.rank_d;
    if (dm.exact) j["exact_rank_d"] = pennycdv::exact_rank(*dm.exact);
    j["kind"] = spherical ? "spherical" : "nonspherical";
    j["etw"] = cls.etw;
    j["solve_residual"] = cls.solve_residual;
    if (spherical) {
        j["rho_sq"] = cls.rho_sq;
        j["beta_psd_check"] = pennycdv::beta_psd_check(dm.d, cls, policy);
    }
    if (r.size() >= 3) {
        const auto circ = pennycdv::circumcircle_classify(r, policy);
        j["concyclic"] = circ.concyclic;
        if (circ.concyclic) j["circumradius_sq"] = circ.radius_sq;
    }
    j["nullspace"] = {{"dim_null_d", nullrel.dim_null_d},
                      {"dim_null_m", nullrel.dim_null_m},
                      {"equal", nullrel.equal},
                      {"expected_equal", nullrel.expected_equal}};

    if (format == "json") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "name: " << r.name << " (n = " << r.size() << ")\n"
                  << "embedding dim r = " << cls.embedding_dim << ", rank(D) = " << cls.rank_d;
        if (dm.exact) std::cout << " (exact: " << j["exact_rank_d"] << ")";
        std::cout << "\nkind: " << j["kind"].get<std::string>() << ", e^T w = " << cls.etw;
        if (spherical) std::cout << ", rho^2 = " << cls.rho_sq;
        std::cout << "\nnull(D) dim " << nullrel.dim_null_d << ", null(M) dim "
                  << nullrel.dim_null_m << (nullrel.equal ? " (equal)" : " (not equal)")
                  << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Colin de Verdiere certificates for penny-graph complements"};
    app.require_subcommand(1);

    std::string family = "path-arc";
    int n = 0;
    int k = 0;
    int segments = 2;
    std::string output = "-";
    auto* gen = app.add_subcommand("generate", "write a realization JSON file");
    gen->add_option("--family", family, "family id")->required();
    gen->add_option("--n", n, "number of points");
    gen->add_option("--k", k, "flower petal count (4, 5 or 6)");
    gen->add_option("--segments", segments, "union-paths segment count");
    gen->add_option("-o,--output", output, "output path, - for stdout");

    std::string verify_input;
    bool verify_exact = false;
    bool verify_direct = false;
    std::string verify_format = "text";
    auto* ver = app.add_subcommand("verify", "certify one realization file");
    ver->add_option("input", verify_input, "realization JSON path")->required();
    ver->add_flag("--exact", verify_exact, "require the exact-rational rank path");
    ver->add_flag("--direct-sap", verify_direct, "run the direct SAP check at any n");
    ver->add_option("--format", verify_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    std::string sweep_families = "all";
    int n_min = 5;
    int n_max = 12;
    std::string sweep_output = "-";
    bool sweep_direct = false;
    auto* swp = app.add_subcommand("sweep", "certify family ranges into CSV");
    swp->add_option("--families", sweep_families, "comma list or 'all'");
    swp->add_option("--n-min", n_min, "smallest n (>= 5)");
    swp->add_option("--n-max", n_max, "largest n");
    swp->add_option("-o,--output", sweep_output, "CSV path, - for stdout");
    swp->add_flag("--direct-sap", sweep_direct, "run the direct SAP check at any n");

    std::string edm_input;
    std::string edm_format = "text";
    auto* edm = app.add_subcommand("edm-info", "dump EDM diagnostics for a file");
    edm->add_option("input", edm_input, "realization JSON path")->required();
    edm->add_option("--format", edm_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInputError;
    }

    try {
        if (gen->parsed()) return cmd_generate(family, n, k, segments, output);
        if (ver->parsed()) return cmd_verify(verify_input, verify_exact, verify_direct,
                                             verify_format);
        if (swp->parsed()) return cmd_sweep(sweep_families, n_min, n_max, sweep_output,
                                            sweep_direct);
        if (edm->parsed()) return cmd_edm_info(edm_input, edm_format);
    } catch (const pennycdv::ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const pennycdv::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const pennycdv::Error& e) {
        std::cerr << "verification error: " << e.what() << "\n";
        return kExitVerificationFailure;
    }
    return kExitInputError;
}

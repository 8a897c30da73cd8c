#include "pennycdv/sweep.hpp"

#include <chrono>
#include <cstdio>
#include <ostream>

#include "pennycdv/errors.hpp"

namespace pennycdv {

namespace {

SweepRow run_one(Family family, int n, const TolerancePolicy& policy,
                 const VerifyOptions& opts) {
    SweepRow row;
    row.family = family_id(family);
    row.n = n;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        GenSpec spec;
        spec.family = family;
        if (family == Family::Flower) {
            spec.k = n - 1;
            spec.n = n;
        } else {
            spec.n = n;
        }
        const Realization r = generate_realization(spec);
        const VerifyResult vr = verify_theorem(r, policy, opts);
        row.kind = (vr.report.kind == EdmKind::Spherical)
                       ? (vr.cert.reduced ? "spherical-reduced" : "spherical")
                       : "nonspherical";
        row.rank_d = vr.report.rank_d;
        row.corank = vr.cert.corank;
        row.expected_corank = vr.report.expected_corank;
        row.m1 = vr.cert.m1_ok;
        row.m2 = vr.cert.m2_ok;
        row.m3 = vr.cert.m3_ok;
        row.gap_ratio = vr.cert.gap.gap_ratio;
        row.ok = vr.report.theorem_ok;
        if (!row.ok) row.reason = "certificate conditions or corank prediction failed";
    } catch (const Error& e) {
        row.ok = false;
        row.reason = e.what();
    }
    const auto t1 = std::chrono::steady_clock::now();
    row.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const std::vector<Family>& families, int n_min, int n_max,
                                const TolerancePolicy& policy, const VerifyOptions& opts) {
    if (n_min < 5) throw ParameterError("sweep requires n_min >= 5 (theorem hypothesis)");
    if (n_max < n_min) throw ParameterError("sweep requires n_max >= n_min");

    std::vector<SweepRow> rows;
    for (Family f : families) {
        if (f == Family::Flower) {
            for (int n = 5; n <= 7; ++n)
                if (n >= n_min && n <= n_max) rows.push_back(run_one(f, n, policy, opts));
        } else {
            for (int n = n_min; n <= n_max; ++n) rows.push_back(run_one(f, n, policy, opts));
        }
    }
    return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
    out << "family,n,kind,rank_d,corank,expected_corank,m1,m2,m3,gap_ratio,status,reason\n";
    char buf[64];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%.6g", r.gap_ratio);
        std::string reason = r.reason;
        for (char& c : reason)
            if (c == ',' || c == '\n') c = ';';
        out << r.family << ',' << r.n << ',' << r.kind << ',' << r.rank_d << ','
            << r.corank << ',' << r.expected_corank << ',' << (r.m1 ? 1 : 0) << ','
            << (r.m2 ? 1 : 0) << ',' << (r.m3 ? 1 : 0) << ',' << buf << ','
            << (r.ok ? "ok" : "fail") << ',' << reason << '\n';
    }
}

bool all_rows_ok(const std::vector<SweepRow>& rows) {
    for (const auto& r : rows)
        if (!r.ok) return false;
    return !rows.empty();
}

}  // namespace pennycdv

#ifndef PENNYCDV_SWEEP_HPP
#define PENNYCDV_SWEEP_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "pennycdv/cdv.hpp"
#include "pennycdv/realization.hpp"

namespace pennycdv {

/// One certified (family, n) instance. elapsed_ms is informational and is
/// deliberately left out of the CSV so sweep output stays byte-identical
/// across runs.
struct SweepRow {
    std::string family;
    int n = 0;
    std::string kind;
    int rank_d = 0;
    int corank = 0;
    int expected_corank = 0;
    bool m1 = false;
    bool m2 = false;
    bool m3 = false;
    double gap_ratio = 0.0;
    bool ok = false;
    std::string reason;
    double elapsed_ms = 0.0;
};

/// Certify every family member with n in [n_min, n_max] (flowers only at
/// their three sizes). Rows come out in deterministic order: families as
/// given, then n ascending. Failures are recorded and the sweep continues.
std::vector<SweepRow> run_sweep(const std::vector<Family>& families, int n_min, int n_max,
                                const TolerancePolicy& policy, const VerifyOptions& opts);

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);

bool all_rows_ok(const std::vector<SweepRow>& rows);

}  // namespace pennycdv

#endif

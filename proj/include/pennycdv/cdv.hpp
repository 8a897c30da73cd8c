#ifndef PENNYCDV_CDV_HPP
#define PENNYCDV_CDV_HPP

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pennycdv/edm.hpp"
#include "pennycdv/graph.hpp"
#include "pennycdv/numkernel.hpp"
#include "pennycdv/realization.hpp"

namespace pennycdv {

/// M = E - D: all-ones diagonal, zero exactly on contact pairs, negative
/// elsewhere off the diagonal.
SymMatrix build_candidate(const SymMatrix& d);

/// Condition M1: M is a well-signed matrix for the complement graph, i.e.
/// M_ij vanishes on contact pairs and is strictly negative on non-contacts.
struct M1Result {
    bool ok = false;
    int offender_i = -1;
    int offender_j = -1;
};
M1Result check_m1(const SymMatrix& m, const Graph& contact, const TolerancePolicy& policy);

/// Condition M2: exactly one negative eigenvalue. lambda2_in_zero_cluster
/// reports whether the second smallest eigenvalue is numerically zero, the
/// situation the interlacing argument predicts for penny instances.
struct M2Result {
    bool ok = false;
    int negative_count = 0;
    bool lambda2_in_zero_cluster = false;
    double min_eigenvalue = 0.0;
    double lambda2 = 0.0;
};
M2Result check_m2(const SymMatrix& m, const TolerancePolicy& policy);

/// Condition M3 (Strong Arnold Property), direct form: the linear map
/// X -> MX on symmetric zero-diagonal matrices supported on the contact
/// edges must have trivial kernel. Returns the kernel dimension.
struct M3DirectResult {
    int unknowns = 0;
    int rank = 0;
    int nullity = 0;
    RankDecision decision;
};
M3DirectResult check_m3_direct(const SymMatrix& m, const Graph& contact,
                               const TolerancePolicy& policy);

/// Condition M3, elimination form: replay the 3-degeneracy peeling of the
/// contact graph; at each step the <= 3 live unknowns of the peeled node's
/// equation sum_j x_ij D_j = 0 are forced to zero by column independence.
struct M3EliminationResult {
    bool ok = false;
    std::string failure;  // names the stuck step on failure
    int eliminated = 0;
};
M3EliminationResult check_m3_elimination(const Edm& dm, const Graph& contact,
                                         const TolerancePolicy& policy);

struct GapDiagnostics {
    double min_eigenvalue = 0.0;
    int zero_cluster_size = 0;
    double gap_ratio = 0.0;
    bool gap_ok = false;
};

/// Candidate matrix with condition verdicts and the implied bound. When
/// the complement graph is disconnected, `m` and all verdicts refer to the
/// reduced petal instance and `reduced` is set.
struct CdvCertificate {
    SymMatrix m;
    bool m1_ok = false;
    bool m2_ok = false;
    bool m3_ok = false;
    int corank = 0;
    int negative_eigs = 0;
    bool sap_direct_ran = false;
    int sap_nullity_direct = -1;
    bool sap_elimination_ok = false;
    bool sap_method_agreement = false;
    int mu_lower_bound = 0;
    bool reduced = false;
    GapDiagnostics gap;
};

struct TheoremReport {
    std::string name;
    int n = 0;
    GraphFamily family = GraphFamily::Other;
    EdmKind kind = EdmKind::Spherical;  // classification of the certified EDM
    int embedding_dim = 0;
    int rank_d = 0;
    int exact_rank_d = -1;  // exact rank of the full D when coordinates permit
    bool exact_matches_numeric = true;
    double rho_sq = 0.0;
    double rho_margin = 0.0;  // rho^2 - 1/2 when spherical
    double etw = 0.0;
    int expected_corank = 0;
    bool corank_matches = false;
    bool lambda2_in_zero_cluster = false;
    bool rank_m_equals_rank_d = false;
    NullspaceReport nullrel;
    int isolated_node = -1;  // complement-isolated center when reduced
    std::vector<std::pair<int, int>> dead_zone_pairs;
    bool theorem_ok = false;
};

struct VerifyOptions {
    bool always_run_direct_sap = false;  // direct SAP runs by default for n <= 12
    bool require_exact = false;          // refuse realizations without exact coordinates
};

struct VerifyResult {
    CdvCertificate cert;
    TheoremReport report;
};

/// Full pipeline for one realization: contact graph, EDM classification,
/// M1/M2/M3, corank, and the n-3 / n-4 prediction, taking the reduced
/// petal route when the complement graph is disconnected. Refuses n < 5.
VerifyResult verify_theorem(const Realization& r, const TolerancePolicy& policy,
                            const VerifyOptions& opts = {});

nlohmann::ordered_json certificate_json(const VerifyResult& vr);

}  // namespace pennycdv

#endif

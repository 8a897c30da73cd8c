#ifndef PENNYCDV_EDM_HPP
#define PENNYCDV_EDM_HPP

#include <optional>
#include <vector>

#include "pennycdv/exactq.hpp"
#include "pennycdv/numkernel.hpp"
#include "pennycdv/realization.hpp"

namespace pennycdv {

/// Matrix of pairwise squared distances; carries the exact counterpart
/// when the realization has exact coordinates.
struct Edm {
    SymMatrix d;
    std::optional<ExactMatrix> exact;
    int order() const { return d.order(); }
};

Edm edm_from_points(const Realization& r);

/// Embedding dimension via the Gower test: with Q = [e/sqrt(n) V] built
/// from a single Householder reflection, D is an EDM iff V^T(-D)V is PSD;
/// r = rank(V^T D V). Throws NotAnEdmError on a negative eigenvalue beyond
/// tolerance, AmbiguousRankError if the rank gap audit fails.
int validate_edm(const SymMatrix& d, const TolerancePolicy& policy);

/// The orthonormal complement basis V (n x (n-1)) used by validate_edm.
Matrix householder_complement_basis(int n);

enum class EdmKind { Spherical, Nonspherical };

struct EdmClassification {
    int embedding_dim = 0;
    EdmKind kind = EdmKind::Spherical;
    int rank_d = 0;
    std::vector<double> w;   // a solution of D w = e
    double etw = 0.0;        // e^T w (solution-independent)
    double rho_sq = 0.0;     // 1/(2 e^T w) when spherical
    double solve_residual = 0.0;
    RankDecision rank_decision;
};

/// Classify spherical vs nonspherical by BOTH routes independently:
/// rank(D) = r+1 vs r+2, and e^T w > 0 vs = 0. The two verdicts must
/// agree; disagreement throws ClassificationConflictError.
EdmClassification classify(const Edm& dm, const TolerancePolicy& policy);

/// Verifies the extremal-shift property of spherical EDMs: beta*E - D is
/// PSD at beta = 2 rho^2 and loses PSD at beta = 2 rho^2 (1 - 1e-3).
bool beta_psd_check(const SymMatrix& d, const EdmClassification& cls,
                    const TolerancePolicy& policy);

struct NullspaceReport {
    int dim_null_d = 0;
    int dim_null_m = 0;
    bool d_in_m = false;          // null(D) subseteq null(M)
    bool m_in_d = false;          // null(M) subseteq null(D)
    bool equal = false;
    bool expected_equal = false;  // nonspherical, or spherical with rho^2 != 1/2
    double max_projection_residual = 0.0;
};

/// Relation between null(D) and null(M) for M = E - D, checked by mutual
/// projection of orthonormal null bases.
NullspaceReport nullspace_relation(const SymMatrix& d, const TolerancePolicy& policy);

/// True iff columns i, j, k of D are linearly independent (numeric rank 3,
/// exact rank when exact entries are available). Requires n >= 3 and all
/// off-diagonal entries positive.
bool three_columns_independent(const Edm& dm, int i, int j, int k,
                               const TolerancePolicy& policy);

/// Rank of an arbitrary column subset of D; used by the elimination SAP
/// check for steps with fewer than 3 live unknowns.
int column_subset_rank(const Edm& dm, const std::vector<int>& cols,
                       const TolerancePolicy& policy);

}  // namespace pennycdv

#endif

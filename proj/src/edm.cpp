#include "pennycdv/edm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pennycdv/errors.hpp"

namespace pennycdv {

namespace {

// Cor. 2.14 verification tolerance for mutual null-space projections of
// unit vectors (dimensionless).
constexpr double kProjectionTol = 1e-9;

double etw_zero_tolerance(const SymMatrix& d, const TolerancePolicy& policy) {
    // w comes from a pseudoinverse, so the e^T w = 0 test scales with the
    // matrix magnitude.
    return d.order() * d.max_abs() * policy.tau_rel;
}

}  // namespace

Edm edm_from_points(const Realization& r) {
    const int n = r.size();
    Edm out;
    out.d = SymMatrix(n);
    if (r.exact) {
        ExactMatrix ex(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const QuadRational dx = (*r.exact)[i][0] - (*r.exact)[j][0];
                const QuadRational dy = (*r.exact)[i][1] - (*r.exact)[j][1];
                const QuadRational d2 = dx * dx + dy * dy;
                ex(i, j) = d2;
                ex(j, i) = d2;
                out.d.set(i, j, d2.to_double());
            }
        }
        out.exact = std::move(ex);
    } else {
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const double dx = r.points[i][0] - r.points[j][0];
                const double dy = r.points[i][1] - r.points[j][1];
                out.d.set(i, j, dx * dx + dy * dy);
            }
        }
    }
    return out;
}

Matrix householder_complement_basis(int n) {
    if (n < 1) throw ParameterError("householder_complement_basis: n >= 1 required");
    // H = I - 2uu^T/|u|^2 with u = e/sqrt(n) - e1 maps e/sqrt(n) to e1;
    // its columns 2..n are an orthonormal basis of the complement of e.
    Matrix v(n, n - 1);
    if (n == 1) return v;
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<double> u(n, inv_sqrt_n);
    u[0] -= 1.0;
    double uu = 0.0;
    for (double x : u) uu += x * x;
    for (int j = 1; j < n; ++j) {
        const double f = 2.0 * u[j] / uu;
        for (int i = 0; i < n; ++i) v(i, j - 1) = (i == j ? 1.0 : 0.0) - f * u[i];
    }
    return v;
}

int validate_edm(const SymMatrix& d, const TolerancePolicy& policy) {
    policy.validate();
    const int n = d.order();
    if (n < 1) throw ParameterError("validate_edm: empty matrix");
    if (!d.all_finite()) throw ParameterError("validate_edm: non-finite entries");
    for (int i = 0; i < n; ++i) {
        if (d(i, i) != 0.0)
            throw NotAnEdmError("not an EDM: nonzero diagonal entry at index " +
                                std::to_string(i));
        for (int j = i + 1; j < n; ++j)
            if (d(i, j) < 0.0)
                throw NotAnEdmError("not an EDM: negative entry at (" + std::to_string(i) +
                                    "," + std::to_string(j) + ")");
    }
    if (n == 1) return 0;

    const Matrix v = householder_complement_basis(n);
    const int m = n - 1;
    // B = V^T D V, symmetrized against accumulation noise
    Matrix dv(n, m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += d(i, k) * v(k, j);
            dv(i, j) = s;
        }
    SymMatrix b(m);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            double s = 0.0, t = 0.0;
            for (int k = 0; k < n; ++k) {
                s += v(k, i) * dv(k, j);
                t += v(k, j) * dv(k, i);
            }
            b.set(i, j, 0.5 * (s + t));
        }

    const EigenDecomp eig = sym_eigen(b);
    const RankDecision rd = numeric_rank(eig, policy);
    // V^T(-D)V must be PSD, i.e. V^T D V must have no positive eigenvalue
    // beyond tolerance.
    if (eig.values[m - 1] > rd.tau) {
        std::ostringstream msg;
        msg << "not an EDM: V^T(-D)V has eigenvalue " << -eig.values[m - 1]
            << " below -" << rd.tau;
        throw NotAnEdmError(msg.str());
    }
    if (!rd.gap_ok)
        throw AmbiguousRankError("validate_edm: embedding dimension rank decision ambiguous",
                                 rd.gap_ratio);
    return rd.rank;
}

EdmClassification classify(const Edm& dm, const TolerancePolicy& policy) {
    policy.validate();
    const SymMatrix& d = dm.d;
    const int n = d.order();
    if (d.max_abs() == 0.0) throw ParameterError("classify requires a nonzero EDM");

    EdmClassification cls;
    cls.embedding_dim = validate_edm(d, policy);

    const EigenDecomp eig = sym_eigen(d);
    cls.rank_decision = numeric_rank(eig, policy);
    if (!cls.rank_decision.gap_ok)
        throw AmbiguousRankError("classify: rank(D) decision ambiguous",
                                 cls.rank_decision.gap_ratio);
    cls.rank_d = cls.rank_decision.rank;

    const SolveResult sol = solve_e(d, policy);
    if (!sol.in_column_space) {
        std::ostringstream msg;
        msg << "not an EDM or numerically degenerate: ||Dw - e|| = " << sol.residual
            << " exceeds " << sol.tau;
        throw NotAnEdmError(msg.str());
    }
    cls.w = sol.w;
    cls.etw = sol.etw;
    cls.solve_residual = sol.residual;

    const int r = cls.embedding_dim;
    const double tau_w = etw_zero_tolerance(d, policy);

    // route 1: rank dichotomy of Thms. 2.9/2.10
    int rank_verdict;  // +1 spherical, -1 nonspherical, 0 neither
    if (cls.rank_d == r + 1)
        rank_verdict = +1;
    else if (cls.rank_d == r + 2)
        rank_verdict = -1;
    else
        rank_verdict = 0;

    // route 2: sign of e^T w
    int etw_verdict;
    if (cls.etw > tau_w)
        etw_verdict = +1;
    else if (std::abs(cls.etw) <= tau_w)
        etw_verdict = -1;
    else
        etw_verdict = 0;  // significantly negative: pathological

    if (r == n - 1) {
        // full affine span is spherical by definition; both routes must concur
        if (rank_verdict != +1 || etw_verdict != +1) {
            std::ostringstream msg;
            msg << "classification conflict at r = n-1: rank(D) = " << cls.rank_d
                << ", e^T w = " << cls.etw;
            throw ClassificationConflictError(msg.str());
        }
    } else if (rank_verdict == 0 || etw_verdict == 0 || rank_verdict != etw_verdict) {
        std::ostringstream msg;
        msg << "classification conflict: rank(D) = " << cls.rank_d << " with r = " << r
            << " says " << (rank_verdict > 0 ? "spherical" : rank_verdict < 0 ? "nonspherical" : "neither")
            << ", e^T w = " << cls.etw << " says "
            << (etw_verdict > 0 ? "spherical" : etw_verdict < 0 ? "nonspherical" : "neither");
        throw ClassificationConflictError(msg.str());
    }

    cls.kind = rank_verdict > 0 ? EdmKind::Spherical : EdmKind::Nonspherical;
    if (cls.kind == EdmKind::Spherical) cls.rho_sq = 1.0 / (2.0 * cls.etw);
    return cls;
}

bool beta_psd_check(const SymMatrix& d, const EdmClassification& cls,
                    const TolerancePolicy& policy) {
    if (cls.kind != EdmKind::Spherical)
        throw ParameterError("beta_psd_check applies to spherical EDMs only");
    const int n = d.order();
    const double beta = 2.0 * cls.rho_sq;

    auto min_eig_and_tau = [&](double scale) {
        SymMatrix a(n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) a.set(i, j, scale * beta - d(i, j));
        const EigenDecomp eig = sym_eigen(a);
        const double amax = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
        return std::make_pair(eig.values.front(), n * amax * policy.tau_rel);
    };

    const auto [min_at_beta, tau1] = min_eig_and_tau(1.0);
    const auto [min_below, tau2] = min_eig_and_tau(1.0 - 1e-3);
    const bool psd_at_beta = min_at_beta >= -tau1;
    const bool not_psd_below = min_below < -tau2;
    return psd_at_beta && not_psd_below;
}

NullspaceReport nullspace_relation(const SymMatrix& d, const TolerancePolicy& policy) {
    policy.validate();
    const int n = d.order();

    SymMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) m.set(i, j, 1.0 - d(i, j));

    const EigenDecomp eig_d = sym_eigen(d);
    const EigenDecomp eig_m = sym_eigen(m);
    const RankDecision rd_d = numeric_rank(eig_d, policy);
    const RankDecision rd_m = numeric_rank(eig_m, policy);
    if (!rd_d.gap_ok)
        throw AmbiguousRankError("nullspace_relation: rank(D) ambiguous", rd_d.gap_ratio);
    if (!rd_m.gap_ok)
        throw AmbiguousRankError("nullspace_relation: rank(M) ambiguous", rd_m.gap_ratio);

    NullspaceReport rep;
    rep.dim_null_d = n - rd_d.rank;
    rep.dim_null_m = n - rd_m.rank;

    auto null_columns = [&](const EigenDecomp& eig, const RankDecision& rd) {
        std::vector<int> cols;
        for (int k = 0; k < n; ++k)
            if (std::abs(eig.values[k]) <= rd.tau) cols.push_back(k);
        return cols;
    };
    const std::vector<int> nd = null_columns(eig_d, rd_d);
    const std::vector<int> nm = null_columns(eig_m, rd_m);

    // residual of projecting each unit null vector of `from` onto span(to),
    // formed explicitly as u - B(B^T u) to avoid cancellation
    auto projection_residual = [&](const EigenDecomp& from, const std::vector<int>& fc,
                                   const EigenDecomp& to, const std::vector<int>& tc) {
        double worst = 0.0;
        for (int c : fc) {
            std::vector<double> v(n);
            for (int i = 0; i < n; ++i) v[i] = from.vectors(i, c);
            for (int b : tc) {
                double s = 0.0;
                for (int i = 0; i < n; ++i) s += to.vectors(i, b) * v[i];
                for (int i = 0; i < n; ++i) v[i] -= s * to.vectors(i, b);
            }
            worst = std::max(worst, std::sqrt(dot(v, v)));
        }
        return worst;
    };

    const double res_d_in_m = projection_residual(eig_d, nd, eig_m, nm);
    const double res_m_in_d = projection_residual(eig_m, nm, eig_d, nd);
    rep.max_projection_residual = std::max(res_d_in_m, res_m_in_d);
    rep.d_in_m = res_d_in_m <= kProjectionTol;
    rep.m_in_d = res_m_in_d <= kProjectionTol;
    rep.equal = rep.d_in_m && rep.m_in_d && rep.dim_null_d == rep.dim_null_m;

    // expected equality: nonspherical, or spherical with rho^2 away from 1/2
    const SolveResult sol = solve_e(d, policy);
    const double tau_w = etw_zero_tolerance(d, policy);
    if (std::abs(sol.etw) <= tau_w) {
        rep.expected_equal = true;  // nonspherical
    } else if (sol.etw > 0.0) {
        const double rho_sq = 1.0 / (2.0 * sol.etw);
        rep.expected_equal = std::abs(rho_sq - 0.5) > 1e-9;
    } else {
        rep.expected_equal = false;
    }
    return rep;
}

int column_subset_rank(const Edm& dm, const std::vector<int>& cols,
                       const TolerancePolicy& policy) {
    const int n = dm.order();
    const int m = static_cast<int>(cols.size());
    if (m == 0) return 0;
    for (int c : cols)
        if (c < 0 || c >= n) throw ParameterError("column_subset_rank: index out of range");

    if (dm.exact) {
        ExactMatrix sub(n, m);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j) sub(i, j) = (*dm.exact)(i, cols[j]);
        return exact_rank(sub);
    }

    // numeric route: rank of the Gram matrix of the selected columns
    SymMatrix gram(m);
    for (int a = 0; a < m; ++a)
        for (int b = a; b < m; ++b) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += dm.d(i, cols[a]) * dm.d(i, cols[b]);
            gram.set(a, b, s);
        }
    const EigenDecomp eig = sym_eigen(gram);
    const RankDecision rd = numeric_rank(eig, policy);
    if (!rd.gap_ok)
        throw AmbiguousRankError("column_subset_rank: ambiguous rank decision", rd.gap_ratio);
    return rd.rank;
}

bool three_columns_independent(const Edm& dm, int i, int j, int k,
                               const TolerancePolicy& policy) {
    const int n = dm.order();
    if (n < 3) throw ParameterError("three_columns_independent requires n >= 3");
    if (i == j || i == k || j == k)
        throw ParameterError("three_columns_independent: indices must be distinct");
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (dm.d(a, b) <= 0.0)
                throw ParameterError(
                    "three_columns_independent requires positive off-diagonal entries "
                    "(coincident points at (" + std::to_string(a) + "," + std::to_string(b) + "))");
    return column_subset_rank(dm, {i, j, k}, policy) == 3;
}

}  // namespace pennycdv

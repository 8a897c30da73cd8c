#include "pennycdv/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "pennycdv/errors.hpp"

namespace pennycdv {

void TolerancePolicy::validate() const {
    if (!(tau_rel > 0.0) || !std::isfinite(tau_rel))
        throw ParameterError("tolerance policy: tau_rel must be positive and finite");
    if (!(gap_gamma > 1.0) || !std::isfinite(gap_gamma))
        throw ParameterError("tolerance policy: gap_gamma must exceed 1");
    if (!(tau_contact > 0.0) || !std::isfinite(tau_contact))
        throw ParameterError("tolerance policy: tau_contact must be positive and finite");
}

SymMatrix SymMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const int n = static_cast<int>(rows.size());
    SymMatrix m(n);
    int i = 0;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != n)
            throw ParameterError("SymMatrix::from_rows: ragged initializer");
        int j = 0;
        for (double v : row) {
            if (j >= i) m.set(i, j, v);
            ++j;
        }
        ++i;
    }
    // verify the lower triangle agreed with the upper one
    i = 0;
    for (const auto& row : rows) {
        int j = 0;
        for (double v : row) {
            if (m(i, j) != v)
                throw ParameterError("SymMatrix::from_rows: asymmetric initializer");
            ++j;
        }
        ++i;
    }
    return m;
}

double SymMatrix::max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
}

bool SymMatrix::all_finite() const {
    for (double v : a_)
        if (!std::isfinite(v)) return false;
    return true;
}

SymMatrix all_ones_matrix(int n) {
    SymMatrix e(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) e.set(i, j, 1.0);
    return e;
}

double dot(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

std::vector<double> mat_vec(const SymMatrix& a, const std::vector<double>& x) {
    const int n = a.order();
    std::vector<double> y(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

namespace {

double off_diagonal_norm(const std::vector<double>& a, int n) {
    double s = 0.0;
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) {
            const double v = a[static_cast<size_t>(p) * n + q];
            s += v * v;
        }
    return std::sqrt(2.0 * s);
}

}  // namespace

EigenDecomp sym_eigen(const SymMatrix& input) {
    const int n = input.order();
    if (n < 1) throw ParameterError("sym_eigen: empty matrix");
    if (!input.all_finite()) throw ParameterError("sym_eigen: non-finite entries");

    // Work on a full copy; rotations keep it symmetric.
    std::vector<double> a(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[static_cast<size_t>(i) * n + j] = input(i, j);

    std::vector<double> v(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i) * n + i] = 1.0;

    auto A = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };
    auto V = [&](int i, int j) -> double& { return v[static_cast<size_t>(i) * n + j]; };

    double frob0 = 0.0;
    for (double x : a) frob0 += x * x;
    frob0 = std::sqrt(frob0);

    const double eps = std::numeric_limits<double>::epsilon();
    const int max_sweeps = 60;
    double prev_off = std::numeric_limits<double>::infinity();
    bool converged = (frob0 == 0.0);

    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = A(p, q);
                if (apq == 0.0) continue;
                const double app = A(p, p);
                const double aqq = A(q, q);
                const double theta = (aqq - app) / (2.0 * apq);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 1.0 / (2.0 * theta);  // avoid overflow in theta^2
                } else {
                    t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                    if (theta < 0.0) t = -t;
                }
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                for (int i = 0; i < n; ++i) {
                    const double aip = A(i, p);
                    const double aiq = A(i, q);
                    A(i, p) = c * aip - s * aiq;
                    A(i, q) = s * aip + c * aiq;
                }
                for (int j = 0; j < n; ++j) {
                    const double apj = A(p, j);
                    const double aqj = A(q, j);
                    A(p, j) = c * apj - s * aqj;
                    A(q, j) = s * apj + c * aqj;
                }
                A(p, q) = 0.0;
                A(q, p) = 0.0;

                for (int i = 0; i < n; ++i) {
                    const double vip = V(i, p);
                    const double viq = V(i, q);
                    V(i, p) = c * vip - s * viq;
                    V(i, q) = s * vip + c * viq;
                }
            }
        }
        const double off = off_diagonal_norm(a, n);
        if (off <= 0.5 * eps * frob0 || off >= prev_off) {
            converged = true;  // done, or at the rounding floor
        }
        prev_off = off;
    }
    if (!converged)
        throw ConvergenceError("sym_eigen: Jacobi sweeps exhausted without convergence");

    // Sort ascending; ties keep the original diagonal order.
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int x, int y) { return A(x, x) < A(y, y); });

    EigenDecomp out;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (int k = 0; k < n; ++k) {
        const int j = idx[k];
        out.values[k] = A(j, j);
        // canonical sign: largest-magnitude component positive
        int arg = 0;
        double best = -1.0;
        for (int i = 0; i < n; ++i) {
            const double m = std::abs(V(i, j));
            if (m > best) {
                best = m;
                arg = i;
            }
        }
        const double sign = (V(arg, j) < 0.0) ? -1.0 : 1.0;
        for (int i = 0; i < n; ++i) out.vectors(i, k) = sign * V(i, j);
    }
    return out;
}

RankDecision numeric_rank(const EigenDecomp& eig, const TolerancePolicy& policy) {
    policy.validate();
    const int n = eig.order();
    if (n < 1) throw ParameterError("numeric_rank: empty decomposition");

    std::vector<double> mags(n);
    for (int i = 0; i < n; ++i) mags[i] = std::abs(eig.values[i]);
    std::sort(mags.begin(), mags.end());
    const double amax = mags.back();

    RankDecision d;
    if (amax == 0.0) {
        d.rank = 0;
        d.gap_ok = true;
        d.gap_ratio = std::numeric_limits<double>::infinity();
        d.tau = 0.0;
        return d;
    }

    d.tau = n * amax * policy.tau_rel;
    int rank = 0;
    for (double m : mags)
        if (m > d.tau) ++rank;
    d.rank = rank;

    // tau < amax always (n * tau_rel << 1), so at least one value is retained.
    const int cut = n - rank;  // number discarded
    d.gap_ratio = mags[cut] / d.tau;

    // The cut must be the dominant multiplicative gap: no jump between
    // retained magnitudes may exceed the jump across the threshold.
    double max_internal = 1.0;
    for (int i = cut; i + 1 < n; ++i) {
        const double lo = std::max(mags[i], d.tau);
        max_internal = std::max(max_internal, mags[i + 1] / lo);
    }
    d.gap_ok = (d.gap_ratio >= policy.gap_gamma) && (d.gap_ratio >= max_internal);
    return d;
}

SolveResult solve_e(const SymMatrix& d, const TolerancePolicy& policy) {
    policy.validate();
    const int n = d.order();
    const EigenDecomp eig = sym_eigen(d);
    const RankDecision rd = numeric_rank(eig, policy);

    SolveResult out;
    out.tau = rd.tau;
    out.w.assign(n, 0.0);

    const std::vector<double> e(n, 1.0);
    for (int k = 0; k < n; ++k) {
        if (std::abs(eig.values[k]) <= rd.tau) continue;
        double qe = 0.0;
        for (int i = 0; i < n; ++i) qe += eig.vectors(i, k);
        const double coef = qe / eig.values[k];
        for (int i = 0; i < n; ++i) out.w[i] += coef * eig.vectors(i, k);
    }

    const std::vector<double> dw = mat_vec(d, out.w);
    double r2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double ri = dw[i] - e[i];
        r2 += ri * ri;
    }
    out.residual = std::sqrt(r2);
    out.etw = std::accumulate(out.w.begin(), out.w.end(), 0.0);
    out.in_column_space = (out.residual <= rd.tau);
    return out;
}

}  // namespace pennycdv

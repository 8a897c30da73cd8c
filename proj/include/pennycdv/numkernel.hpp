#ifndef PENNYCDV_NUMKERNEL_HPP
#define PENNYCDV_NUMKERNEL_HPP

#include <initializer_list>
#include <vector>

namespace pennycdv {

/// Scale-aware thresholds governing every numerical rank/sign decision.
/// The absolute zero threshold for a spectrum is n * max|lambda| * tau_rel;
/// a rank decision is accepted only if the cut clears the gap audit at
/// ratio gap_gamma. tau_contact is the geometric contact tolerance.
struct TolerancePolicy {
    double tau_rel = 1e-12;
    double gap_gamma = 1e3;
    double tau_contact = 1e-9;

    void validate() const;  // throws ParameterError
};

// Dense row-major rectangular matrix. Used for eigenvector bases,
// the Householder V, and assembled linear systems.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0.0) {}

    double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> a_;
};

// Dense symmetric matrix of order n; set() writes both triangles so the
// symmetry invariant cannot drift.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n, 0.0) {}

    static SymMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

    int order() const { return n_; }
    double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
    void set(int i, int j, double v) {
        a_[static_cast<size_t>(i) * n_ + j] = v;
        a_[static_cast<size_t>(j) * n_ + i] = v;
    }
    double max_abs() const;
    bool all_finite() const;

private:
    int n_ = 0;
    std::vector<double> a_;
};

/// Eigendecomposition with eigenvalues ascending and orthonormal
/// eigenvector columns in matching order.
struct EigenDecomp {
    std::vector<double> values;
    Matrix vectors;
    int order() const { return static_cast<int>(values.size()); }
};

/// Outcome of a thresholded rank decision plus its gap audit.
/// gap_ratio is (smallest retained |lambda|) / tau, where tau is the zero
/// threshold; gap_ok additionally requires that this cut is the dominant
/// multiplicative gap of the spectrum, so an ambiguous split is surfaced
/// instead of silently absorbed.
struct RankDecision {
    int rank = 0;
    bool gap_ok = true;
    double gap_ratio = 0.0;
    double tau = 0.0;
};

/// Least-squares solution of D w = e via the eigendecomposition
/// pseudoinverse. residual = ||Dw - e||_2; in_column_space certifies the
/// Gower property (residual <= tau).
struct SolveResult {
    std::vector<double> w;
    double etw = 0.0;
    double residual = 0.0;
    double tau = 0.0;
    bool in_column_space = false;
};

/// Cyclic Jacobi eigensolver with fixed sweep order.
/// Deterministic: identical input bits give identical output bits.
/// Throws ConvergenceError after the sweep cap.
EigenDecomp sym_eigen(const SymMatrix& a);

RankDecision numeric_rank(const EigenDecomp& eig, const TolerancePolicy& policy);

SolveResult solve_e(const SymMatrix& d, const TolerancePolicy& policy);

// Shared helpers.
SymMatrix all_ones_matrix(int n);
double dot(const std::vector<double>& x, const std::vector<double>& y);
std::vector<double> mat_vec(const SymMatrix& a, const std::vector<double>& x);

}  // namespace pennycdv

#endif

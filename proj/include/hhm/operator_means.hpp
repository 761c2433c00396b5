#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "hhm/chain_report.hpp"
#include "hhm/types.hpp"

namespace hhm {

using Matrix = Eigen::MatrixXd;

/// Symmetric positive-definite matrix; invariants checked on construction.
class SpdMatrix {
public:
    /// Throws DomainError if m is not square, not symmetric to 1e-12 relative, or has a
    /// nonpositive eigenvalue. The stored matrix is the symmetrized input.
    static SpdMatrix from(const Matrix& m);

    static SpdMatrix identity(Eigen::Index n) { return SpdMatrix(Matrix::Identity(n, n)); }

    const Matrix& matrix() const noexcept { return m_; }
    Eigen::Index dim() const noexcept { return m_.rows(); }

private:
    explicit SpdMatrix(Matrix m) : m_(std::move(m)) {}
    Matrix m_;
};

/// (X + X^T)/2; the result is bitwise symmetric.
Matrix symmetrize(const Matrix& x);

/// U diag(g(lambda_i)) U^T from the symmetric eigendecomposition of sym, symmetrized.
/// Throws NumericalBreakdown if the eigensolver fails or g is non-finite on the spectrum.
Matrix fn_calculus(const Matrix& sym, const std::function<double(double)>& g);
inline Matrix fn_calculus(const SpdMatrix& a, const std::function<double(double)>& g) {
    return fn_calculus(a.matrix(), g);
}

/// A^{1/2} (A^{-1/2} B A^{-1/2})^v A^{1/2}.
SpdMatrix op_weighted_geom(const SpdMatrix& a, const SpdMatrix& b, Weight w);

/// (1-v)A + vB.
SpdMatrix op_weighted_arith(const SpdMatrix& a, const SpdMatrix& b, Weight w);

/// A^{1/2} L_v(1, A^{-1/2} B A^{-1/2}) A^{1/2} with the scalar representing function.
SpdMatrix op_weighted_log(const SpdMatrix& a, const SpdMatrix& b, Weight w);

struct LoewnerVerdict {
    double min_eig_of_difference = 0.0;
    double tol_used = 0.0;
    bool holds = false;
};

/// X <= Y in the Loewner order: lambda_min(Y - X) >= -tol (||X||_2 + ||Y||_2).
LoewnerVerdict loewner_leq(const Matrix& x, const Matrix& y, double tol);

inline constexpr double kLoewnerTol = 1e-10;

struct OperatorChainReport {
    std::vector<std::string> labels;
    std::vector<Matrix> terms;
    std::vector<LoewnerVerdict> verdicts;
    bool pass = false;
};

/// A♯_v B <= (1-v)A♯_{v/2}B + vA♯_{(1+v)/2}B <= A ℓ_v B <= (A♯_v B + A∇_v B)/2 <= A∇_v B.
OperatorChainReport op_chain(const SpdMatrix& a, const SpdMatrix& b, Weight w, double tol = kLoewnerTol);

/// Scalar core of op_chain:
/// t^v <= (1-v)t^{v/2} + v t^{(1+v)/2} <= L_v(1,t) <= (t^v + (1-v) + vt)/2 <= (1-v) + vt.
ChainReport representing_chain(double t, Weight w, double tol = kChainTol);

struct HelperIneqResult {
    double lhs = 0.0;  // (x^2 - 1)/log(x^2)
    double rhs = 0.0;  // x
    bool pass = false;
};

/// (x^2 - 1)/log(x^2) >= x for x > 0 (both sides 1 at x = 1).
HelperIneqResult helper_ineq_check(double x, double tol = 1e-12);

}  // namespace hhm

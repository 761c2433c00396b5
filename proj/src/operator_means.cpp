#include "hhm/operator_means.hpp"

#include <algorithm>
#include <cmath>

#include "hhm/scalar_means.hpp"

namespace hhm {

namespace {

Eigen::SelfAdjointEigenSolver<Matrix> eigen_of(const Matrix& sym, int options = Eigen::ComputeEigenvectors) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, options);
    if (solver.info() != Eigen::Success) throw NumericalBreakdown("symmetric eigendecomposition failed");
    return solver;
}

void require_same_dim(const SpdMatrix& a, const SpdMatrix& b) {
    if (a.dim() != b.dim()) {
        throw DimensionError("operand dimensions differ: " + std::to_string(a.dim()) + " vs " +
                             std::to_string(b.dim()));
    }
}

double spectral_norm(const Matrix& x) {
    if (x.size() == 0) return 0.0;
    const auto ev = eigen_of(symmetrize(x), Eigen::EigenvaluesOnly).eigenvalues();
    return std::max(std::abs(ev.minCoeff()), std::abs(ev.maxCoeff()));
}

// A^{1/2} g(A^{-1/2} B A^{-1/2}) A^{1/2} for a family of scalar functions g sharing one
// eigendecomposition of the congruence-transformed pair.
class Congruence {
public:
    Congruence(const SpdMatrix& a, const SpdMatrix& b) {
        require_same_dim(a, b);
        const auto ea = eigen_of(a.matrix());
        const Eigen::VectorXd root = ea.eigenvalues().cwiseSqrt();
        const Matrix& u = ea.eigenvectors();
        sqrt_a_ = symmetrize(u * root.asDiagonal() * u.transpose());
        const Matrix inv_sqrt_a = symmetrize(u * root.cwiseInverse().asDiagonal() * u.transpose());
        const auto ec = eigen_of(symmetrize(inv_sqrt_a * b.matrix() * inv_sqrt_a));
        spectrum_ = ec.eigenvalues();
        basis_ = ec.eigenvectors();
        if (spectrum_.minCoeff() <= 0.0) {
            throw NumericalBreakdown("A^{-1/2} B A^{-1/2} lost positive definiteness");
        }
    }

    Matrix apply(const std::function<double(double)>& g) const {
        Eigen::VectorXd gl(spectrum_.size());
        for (Eigen::Index i = 0; i < spectrum_.size(); ++i) {
            gl[i] = g(spectrum_[i]);
            if (!std::isfinite(gl[i])) throw NumericalBreakdown("representing function not finite on the spectrum");
        }
        const Matrix inner = basis_ * gl.asDiagonal() * basis_.transpose();
        return symmetrize(sqrt_a_ * inner * sqrt_a_);
    }

private:
    Matrix sqrt_a_;
    Matrix basis_;
    Eigen::VectorXd spectrum_;
};

SpdMatrix checked_spd(const Matrix& m) {
    try {
        return SpdMatrix::from(m);
    } catch (const DomainError& e) {
        throw NumericalBreakdown(std::string("operator mean is no longer positive definite: ") + e.what());
    }
}

double power(double t, double v) { return std::exp(v * std::log(t)); }

}  // namespace

SpdMatrix SpdMatrix::from(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0) throw DomainError("matrix must be square and nonempty");
    if (!m.allFinite()) throw DomainError("matrix has non-finite entries");
    const double big = m.cwiseAbs().maxCoeff();
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * big) throw DomainError("matrix is not symmetric");
    Matrix s = symmetrize(m);
    const auto ev = eigen_of(s, Eigen::EigenvaluesOnly).eigenvalues();
    if (!(ev.minCoeff() > 0.0)) throw DomainError("matrix is not positive definite");
    return SpdMatrix(std::move(s));
}

Matrix symmetrize(const Matrix& x) {
    Matrix out = x;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < x.cols(); ++j) {
            const double s = 0.5 * (x(i, j) + x(j, i));
            out(i, j) = s;
            out(j, i) = s;
        }
    }
    return out;
}

Matrix fn_calculus(const Matrix& sym, const std::function<double(double)>& g) {
    if (sym.rows() != sym.cols()) throw DimensionError("functional calculus needs a square matrix");
    const auto e = eigen_of(symmetrize(sym));
    Eigen::VectorXd gl(e.eigenvalues().size());
    for (Eigen::Index i = 0; i < gl.size(); ++i) {
        gl[i] = g(e.eigenvalues()[i]);
        if (!std::isfinite(gl[i])) throw NumericalBreakdown("function undefined at an eigenvalue");
    }
    return symmetrize(e.eigenvectors() * gl.asDiagonal() * e.eigenvectors().transpose());
}

SpdMatrix op_weighted_geom(const SpdMatrix& a, const SpdMatrix& b, Weight w) {
    require_same_dim(a, b);
    const double v = w.value();
    if (v == 0.0) return a;
    if (v == 1.0) return b;
    return checked_spd(Congruence(a, b).apply([v](double t) { return power(t, v); }));
}

SpdMatrix op_weighted_arith(const SpdMatrix& a, const SpdMatrix& b, Weight w) {
    require_same_dim(a, b);
    const double v = w.value();
    if (v == 0.0) return a;
    if (v == 1.0) return b;
    return checked_spd(symmetrize((1.0 - v) * a.matrix() + v * b.matrix()));
}

SpdMatrix op_weighted_log(const SpdMatrix& a, const SpdMatrix& b, Weight w) {
    require_same_dim(a, b);
    const double v = w.value();
    if (v == 0.0) return a;
    if (v == 1.0) return b;
    return checked_spd(Congruence(a, b).apply([w](double t) { return log_mean_repr(t, w); }));
}

LoewnerVerdict loewner_leq(const Matrix& x, const Matrix& y, double tol) {
    if (x.rows() != y.rows() || x.cols() != y.cols() || x.rows() != x.cols()) {
        throw DimensionError("Loewner comparison needs square matrices of equal size");
    }
    LoewnerVerdict out;
    out.tol_used = tol * (spectral_norm(x) + spectral_norm(y));
    out.min_eig_of_difference = eigen_of(symmetrize(y - x), Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
    out.holds = out.min_eig_of_difference >= -out.tol_used;
    return out;
}

OperatorChainReport op_chain(const SpdMatrix& a, const SpdMatrix& b, Weight w, double tol) {
    require_same_dim(a, b);
    const double v = w.value();
    OperatorChainReport r;
    r.labels = {"geom", "geom_split", "log_mean", "arith_geom_avg", "arith"};
    const Matrix ar = op_weighted_arith(a, b, w).matrix();
    if (v == 0.0 || v == 1.0) {
        r.terms.assign(5, ar);
    } else {
        const Congruence c(a, b);
        const Matrix geom = c.apply([v](double t) { return power(t, v); });
        const Matrix split = symmetrize((1.0 - v) * c.apply([v](double t) { return power(t, 0.5 * v); }) +
                                        v * c.apply([v](double t) { return power(t, 0.5 * (1.0 + v)); }));
        const Matrix lm = c.apply([w](double t) { return log_mean_repr(t, w); });
        r.terms = {geom, split, lm, symmetrize(0.5 * (geom + ar)), ar};
    }
    r.pass = true;
    for (std::size_t i = 0; i + 1 < r.terms.size(); ++i) {
        r.verdicts.push_back(loewner_leq(r.terms[i], r.terms[i + 1], tol));
        r.pass = r.pass && r.verdicts.back().holds;
    }
    return r;
}

ChainReport representing_chain(double t, Weight w, double tol) {
    if (!(t > 0.0)) throw DomainError("representing chain needs t > 0");
    const double v = w.value();
    const double tv = power(t, v);
    const double split = (1.0 - v) * power(t, 0.5 * v) + v * power(t, 0.5 * (1.0 + v));
    const double lm = log_mean_repr(t, w);
    const double ar = (1.0 - v) + v * t;
    return make_chain_report({"geom", "geom_split", "log_mean", "arith_geom_avg", "arith"},
                             {tv, split, lm, 0.5 * (tv + ar), ar}, tol);
}

HelperIneqResult helper_ineq_check(double x, double tol) {
    if (!(x > 0.0)) throw DomainError("helper inequality needs x > 0");
    HelperIneqResult r;
    r.rhs = x;
    const double y = 2.0 * std::log(x);  // log(x^2)
    r.lhs = (y == 0.0) ? 1.0 : std::expm1(y) / y;
    r.pass = r.lhs >= r.rhs - tol * std::max(1.0, r.rhs);
    return r;
}

}  // namespace hhm

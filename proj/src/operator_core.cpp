#include "bzi/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace bzi {

namespace {

void require_square(const Mat& m, const char* who) {
    if (m.rows() != m.cols()) {
        throw DimensionError(std::string(who) + ": matrix is not square");
    }
}

double max_abs_entry(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

double offdiag_frobenius(const Mat& a) {
    double s = 0.0;
    for (Eigen::Index p = 0; p < a.rows(); ++p) {
        for (Eigen::Index q = 0; q < a.cols(); ++q) {
            if (p != q) s += std::norm(a(p, q));
        }
    }
    return std::sqrt(s);
}

}  // namespace

EigenSystem eigendecompose(const Mat& h) {
    require_square(h, "eigendecompose");
    const Eigen::Index n = h.rows();
    if (max_abs_entry(h - h.adjoint()) > tol::hermiticity) {
        throw std::invalid_argument("eigendecompose: matrix is not Hermitian");
    }

    Mat a = 0.5 * (h + h.adjoint());
    Mat v = Mat::Identity(n, n);

    if (n == 1) {
        EigenSystem sys;
        sys.values = Eigen::VectorXd::Constant(1, a(0, 0).real());
        sys.vectors = v;
        return sys;
    }

    const double scale = std::max(1.0, a.norm());
    const double threshold = 1e-13 * scale;
    const long max_sweeps = 100 * static_cast<long>(n) * static_cast<long>(n);

    bool converged = false;
    for (long sweep = 0; sweep < max_sweeps; ++sweep) {
        if (offdiag_frobenius(a) < threshold) {
            converged = true;
            break;
        }
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const Complex b = a(p, q);
                const double babs = std::abs(b);
                if (babs == 0.0) continue;

                // Unitary U = diag(1, e^{-i beta}) * real Jacobi rotation,
                // chosen so (U^dagger A U) has zero (p,q) entry. beta is the
                // phase of b; the rotation angle solves the real symmetric
                // 2x2 problem [[app, |b|], [|b|, aqq]].
                const Complex phase = b / babs;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * babs);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                const Complex upp(c, 0.0);
                const Complex upq(s, 0.0);
                const Complex uqp = -s * std::conj(phase);
                const Complex uqq = c * std::conj(phase);

                // A <- U^dagger A U, applied as column then row updates.
                for (Eigen::Index r = 0; r < n; ++r) {
                    const Complex arp = a(r, p);
                    const Complex arq = a(r, q);
                    a(r, p) = arp * upp + arq * uqp;
                    a(r, q) = arp * upq + arq * uqq;
                }
                for (Eigen::Index r = 0; r < n; ++r) {
                    const Complex apr = a(p, r);
                    const Complex aqr = a(q, r);
                    a(p, r) = std::conj(upp) * apr + std::conj(uqp) * aqr;
                    a(q, r) = std::conj(upq) * apr + std::conj(uqq) * aqr;
                }
                for (Eigen::Index r = 0; r < n; ++r) {
                    const Complex vrp = v(r, p);
                    const Complex vrq = v(r, q);
                    v(r, p) = vrp * upp + vrq * uqp;
                    v(r, q) = vrp * upq + vrq * uqq;
                }
            }
        }
    }
    if (!converged && offdiag_frobenius(a) >= threshold) {
        throw ConvergenceError("eigendecompose: Jacobi sweeps exhausted without convergence");
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](Eigen::Index i, Eigen::Index j) { return a(i, i).real() < a(j, j).real(); });

    EigenSystem sys;
    sys.values.resize(n);
    sys.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        sys.values(k) = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]).real();
        sys.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
    }
    return sys;
}

HermitianOperator::HermitianOperator(const Mat& m) {
    require_square(m, "HermitianOperator");
    if (m.rows() < 2) {
        throw DimensionError("HermitianOperator: dimension must be at least 2");
    }
    if (max_abs_entry(m - m.adjoint()) > tol::hermiticity) {
        throw std::invalid_argument("HermitianOperator: input is not Hermitian within tolerance");
    }
    m_ = 0.5 * (m + m.adjoint());
}

DensityOperator::DensityOperator(const Mat& m) : m_(), eig_() {
    HermitianOperator h(m);  // square, dim >= 2, Hermitian within tolerance
    if (std::abs(h.mat().trace().real() - 1.0) > tol::trace_one ||
        std::abs(h.mat().trace().imag()) > tol::trace_one) {
        throw std::invalid_argument("DensityOperator: trace must equal 1");
    }
    EigenSystem eig = eigendecompose(h.mat());
    const double lo = eig.values.minCoeff();
    if (lo < -tol::eigen_clamp) {
        throw std::invalid_argument("DensityOperator: negative eigenvalue beyond tolerance");
    }
    if (lo < 0.0) {
        // Clamp the roundoff-level negatives and renormalize the trace.
        for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
            eig.values(i) = std::max(eig.values(i), 0.0);
        }
        eig.values /= eig.values.sum();
        Mat rebuilt = eig.vectors * eig.values.asDiagonal() * eig.vectors.adjoint();
        m_ = 0.5 * (rebuilt + rebuilt.adjoint());
    } else {
        m_ = h.mat();
    }
    eig_ = std::move(eig);
}

DensityOperator DensityOperator::maximally_mixed(int d) {
    if (d < 2) throw DimensionError("maximally_mixed: dimension must be at least 2");
    Mat m = Mat::Identity(d, d) / static_cast<double>(d);
    EigenSystem eig;
    eig.values = Eigen::VectorXd::Constant(d, 1.0 / d);
    eig.vectors = Mat::Identity(d, d);
    return DensityOperator(std::move(m), std::move(eig));
}

DensityOperator DensityOperator::pure(const Vec& psi) {
    if (psi.size() < 2) throw DimensionError("pure: dimension must be at least 2");
    const double nrm = psi.norm();
    if (!(nrm > 0.0)) throw std::invalid_argument("pure: zero vector");
    Vec u = psi / nrm;
    return DensityOperator(u * u.adjoint());
}

Complex hs_inner(const Mat& x, const Mat& y) {
    require_square(x, "hs_inner");
    require_square(y, "hs_inner");
    if (x.rows() != y.rows()) {
        throw DimensionError("hs_inner: operands have different dimensions");
    }
    // tr(X^dagger Y) as an entrywise sum, O(d^2).
    return x.conjugate().cwiseProduct(y).sum();
}

double purity(const DensityOperator& rho) { return rho.mat().squaredNorm(); }

double schatten_norm(const Mat& x, double q) {
    require_square(x, "schatten_norm");
    if (std::isnan(q) || q < 1.0) {
        throw std::invalid_argument("schatten_norm: order must be in [1, inf]");
    }
    const Eigen::Index n = x.rows();
    Eigen::VectorXd sv(n);
    if (max_abs_entry(x - x.adjoint()) <= tol::hermiticity) {
        sv = eigendecompose(x).values.cwiseAbs();
    } else {
        EigenSystem gram = eigendecompose(x.adjoint() * x);
        sv = gram.values.cwiseMax(0.0).cwiseSqrt();
    }
    const double top = sv.maxCoeff();
    if (std::isinf(q) || top == 0.0) return top;
    if (q == 1.0) return sv.sum();
    if (q == 2.0) return std::sqrt(sv.squaredNorm());
    double acc = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        acc += std::pow(sv(i) / top, q);  // scaled to dodge overflow at large q
    }
    return top * std::pow(acc, 1.0 / q);
}

Mat ginibre(int rows, int cols, Rng& rng) {
    Mat g(rows, cols);
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
        for (Eigen::Index j = 0; j < g.cols(); ++j) {
            g(i, j) = Complex(rng.gaussian(), rng.gaussian());
        }
    }
    return g;
}

Vec random_unit_vector(int d, Rng& rng) {
    if (d < 2) throw DimensionError("random_unit_vector: dimension must be at least 2");
    Vec v(d);
    double nrm2 = 0.0;
    do {
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            v(i) = Complex(rng.gaussian(), rng.gaussian());
        }
        nrm2 = v.squaredNorm();
    } while (!(nrm2 > 0.0));
    return v / std::sqrt(nrm2);
}

DensityOperator sample_random_state(int d, StateKind kind, Rng& rng) {
    if (d < 2) throw DimensionError("sample_random_state: dimension must be at least 2");
    if (kind == StateKind::pure) {
        return DensityOperator::pure(random_unit_vector(d, rng));
    }
    Mat g = ginibre(d, d, rng);
    Mat m = g * g.adjoint();
    m /= m.trace().real();
    return DensityOperator(0.5 * (m + m.adjoint()));
}

Mat haar_unitary(int d, Rng& rng) {
    if (d < 2) throw DimensionError("haar_unitary: dimension must be at least 2");
    Mat g = ginibre(d, d, rng);
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < d; ++j) {
        const Complex rjj = r(j, j);
        const double a = std::abs(rjj);
        q.col(j) *= (a > 0.0) ? rjj / a : Complex(1.0, 0.0);
    }
    return q;
}

}  // namespace bzi

#include "bzi/channels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "bzi/errors.hpp"
#include "bzi/measurements.hpp"

namespace bzi {

namespace {

int common_dim(const std::vector<Mat>& kraus) {
    if (kraus.empty()) {
        throw std::invalid_argument("channel needs at least one Kraus operator");
    }
    const int d = static_cast<int>(kraus.front().rows());
    if (d < 1) {
        throw DimensionError("Kraus operators must be nonempty square matrices");
    }
    for (const Mat& k : kraus) {
        if (k.rows() != d || k.cols() != d) {
            throw DimensionError("Kraus operators must share one square dimension");
        }
    }
    return d;
}

}  // namespace

KrausChannel::KrausChannel(std::vector<Mat> kraus, int d) : kraus_(std::move(kraus)), d_(d) {}

KrausChannel::KrausChannel(std::vector<Mat> kraus) : KrausChannel(std::move(kraus), 0) {
    d_ = common_dim(kraus_);
    const double defect = completeness_defect();
    if (!(defect <= tol::channel)) {
        throw Error("Kraus operators do not preserve traces: defect " +
                    std::to_string(defect));
    }
}

KrausChannel KrausChannel::unchecked(std::vector<Mat> kraus) {
    const int d = common_dim(kraus);
    return KrausChannel(std::move(kraus), d);
}

Mat KrausChannel::apply_matrix(const Mat& x) const {
    if (x.rows() != d_ || x.cols() != d_) {
        throw DimensionError("operator dimension does not match the channel");
    }
    Mat out = Mat::Zero(d_, d_);
    for (const Mat& k : kraus_) {
        out.noalias() += k * x * k.adjoint();
    }
    return out;
}

DensityOperator KrausChannel::apply(const DensityOperator& rho) const {
    Mat out = apply_matrix(rho.mat());
    const double tr = out.trace().real();
    if (std::abs(tr - 1.0) > tol::channel) {
        throw Error("channel output trace drifted to " + std::to_string(tr));
    }
    out /= tr;
    return DensityOperator(out);
}

Mat KrausChannel::adjoint_apply(const Mat& x) const {
    if (x.rows() != d_ || x.cols() != d_) {
        throw DimensionError("operator dimension does not match the channel");
    }
    Mat out = Mat::Zero(d_, d_);
    for (const Mat& k : kraus_) {
        out.noalias() += k.adjoint() * x * k;
    }
    return out;
}

double KrausChannel::completeness_defect() const {
    Mat sum = Mat::Zero(d_, d_);
    for (const Mat& k : kraus_) {
        sum.noalias() += k.adjoint() * k;
    }
    return spectral_norm(Mat(sum - Mat::Identity(d_, d_)));
}

bool KrausChannel::is_trace_preserving(double tolerance) const {
    return completeness_defect() <= tolerance;
}

bool KrausChannel::is_unital(double tolerance) const {
    Mat sum = Mat::Zero(d_, d_);
    for (const Mat& k : kraus_) {
        sum.noalias() += k * k.adjoint();
    }
    return spectral_norm(Mat(sum - Mat::Identity(d_, d_))) <= tolerance;
}

bool KrausChannel::is_bistochastic(double tolerance) const {
    return is_trace_preserving(tolerance) && is_unital(tolerance);
}

KrausChannel adjoint_channel(const KrausChannel& phi) {
    if (!phi.is_unital()) {
        throw std::invalid_argument(
            "adjoint channel requires a unital input to preserve traces");
    }
    std::vector<Mat> flipped;
    flipped.reserve(phi.kraus().size());
    for (const Mat& k : phi.kraus()) {
        flipped.push_back(k.adjoint());
    }
    return KrausChannel(std::move(flipped));
}

KrausChannel sample_bistochastic_channel(int d, Rng& rng, int k) {
    if (d < 2) {
        throw DimensionError("channel samplers need dimension at least 2");
    }
    if (k == 0) {
        k = std::max(2, d);
    }
    if (k < 2) {
        throw std::invalid_argument("a unitary mixture needs at least two branches");
    }
    // Flat Dirichlet weights from normalized unit-rate exponentials.
    std::vector<double> w(static_cast<std::size_t>(k));
    double total = 0.0;
    for (double& wi : w) {
        wi = -std::log(1.0 - rng.uniform01());
        total += wi;
    }
    std::vector<Mat> kraus;
    kraus.reserve(w.size());
    for (double wi : w) {
        kraus.push_back(std::sqrt(wi / total) * haar_unitary(d, rng));
    }
    return KrausChannel(std::move(kraus));
}

KrausChannel sample_generic_channel(int d, Rng& rng, int env_dim) {
    if (d < 2) {
        throw DimensionError("channel samplers need dimension at least 2");
    }
    if (env_dim == 0) {
        env_dim = d;
    }
    if (env_dim < 1) {
        throw std::invalid_argument("environment dimension must be positive");
    }
    // Haar-random isometry C^d -> C^d (x) C^env, cut into d x d blocks.
    Mat g = ginibre(d * env_dim, d, rng);
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ() * Mat::Identity(d * env_dim, d);
    Mat r = qr.matrixQR().topRows(d).triangularView<Eigen::Upper>();
    for (int j = 0; j < d; ++j) {
        const Complex rjj = r(j, j);
        if (std::abs(rjj) > 0.0) {
            q.col(j) *= rjj / std::abs(rjj);
        }
    }
    std::vector<Mat> kraus;
    kraus.reserve(static_cast<std::size_t>(env_dim));
    for (int e = 0; e < env_dim; ++e) {
        kraus.push_back(q.block(e * d, 0, d, d));
    }
    return KrausChannel(std::move(kraus));
}

KrausChannel depolarizing_channel(int d, double lambda) {
    if (d < 2) {
        throw DimensionError("channel samplers need dimension at least 2");
    }
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("mixing weight must lie in [0, 1]");
    }
    std::vector<Mat> kraus;
    if (lambda > 0.0) {
        kraus.push_back(std::sqrt(lambda) * Mat::Identity(d, d));
    }
    if (lambda < 1.0) {
        const double w = std::sqrt((1.0 - lambda) / (d * d));
        for (const Mat& op : weyl_heisenberg(d)) {
            kraus.push_back(w * op);
        }
    }
    return KrausChannel(std::move(kraus));
}

KrausChannel contraction_channel(int d, int target) {
    if (d < 2) {
        throw DimensionError("channel samplers need dimension at least 2");
    }
    if (target < 0 || target >= d) {
        throw std::invalid_argument("contraction target out of range");
    }
    std::vector<Mat> kraus;
    kraus.reserve(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        Mat k = Mat::Zero(d, d);
        k(target, i) = 1.0;
        kraus.push_back(std::move(k));
    }
    return KrausChannel(std::move(kraus));
}

double tsallis_divergence(const DensityOperator& rho, const DensityOperator& sigma,
                          double alpha) {
    if (rho.dim() != sigma.dim()) {
        throw DimensionError("divergence arguments must share a dimension");
    }
    if (!(alpha > 0.0 && alpha <= 2.0)) {
        throw std::invalid_argument("divergence order must lie in (0, 2]");
    }
    const EigenSystem& er = rho.eigen();
    const EigenSystem& es = sigma.eigen();
    const int d = rho.dim();

    // Overlap weights |<u_i|v_j>|^2 between the two eigenbases.
    Mat cross = er.vectors.adjoint() * es.vectors;
    Eigen::MatrixXd overlap = cross.cwiseAbs2();

    const bool shannon_point = std::abs(alpha - 1.0) <= 1e-12;
    if (alpha >= 1.0 || shannon_point) {
        // Weight outside the support of sigma makes the divergence infinite.
        for (int i = 0; i < d; ++i) {
            if (er.values(i) <= tol::eigen_clamp) continue;
            for (int j = 0; j < d; ++j) {
                if (es.values(j) <= tol::eigen_clamp && overlap(i, j) > tol::eigen_clamp) {
                    return kInf;
                }
            }
        }
    }

    if (shannon_point) {
        double div = 0.0;
        for (int i = 0; i < d; ++i) {
            const double li = std::max(er.values(i), 0.0);
            if (li <= 0.0) continue;
            div += li * std::log(li);
            for (int j = 0; j < d; ++j) {
                const double mj = es.values(j);
                if (mj <= tol::eigen_clamp) continue;  // negligible weight here
                div -= li * overlap(i, j) * std::log(mj);
            }
        }
        return div;
    }

    double trace = 0.0;
    for (int i = 0; i < d; ++i) {
        const double li = std::max(er.values(i), 0.0);
        if (li <= 0.0) continue;
        const double lia = std::pow(li, alpha);
        for (int j = 0; j < d; ++j) {
            const double mj = std::max(es.values(j), 0.0);
            if (alpha > 1.0 && mj <= tol::eigen_clamp) continue;  // support-exterior
            if (mj <= 0.0) continue;
            trace += lia * std::pow(mj, 1.0 - alpha) * overlap(i, j);
        }
    }
    return (trace - 1.0) / (alpha - 1.0);
}

double purity_excess(const DensityOperator& rho) {
    return purity(rho) - 1.0 / rho.dim();
}

MonotonicityReport monotonicity_check(const KrausChannel& phi, const DensityOperator& rho,
                                      const std::vector<double>& alphas) {
    if (!phi.is_bistochastic()) {
        throw std::invalid_argument(
            "monotonicity holds relative to the fixed point I/d; the channel must be "
            "bistochastic");
    }
    MonotonicityReport report;
    report.before = purity_excess(rho);
    DensityOperator out = phi.apply(rho);
    report.after = purity_excess(out);
    report.holds = report.after <= report.before + 1e-12;

    DensityOperator center = DensityOperator::maximally_mixed(rho.dim());
    for (double a : alphas) {
        const double db = tsallis_divergence(rho, center, a);
        const double da = tsallis_divergence(out, center, a);
        report.alphas.push_back(a);
        report.divergence_before.push_back(db);
        report.divergence_after.push_back(da);
        if (!(da <= db + 1e-10)) {
            report.holds = false;
        }
    }
    return report;
}

NonUnitalityReport non_unitality(const KrausChannel& phi) {
    if (!phi.is_trace_preserving()) {
        throw std::invalid_argument("non-unitality analysis needs a trace-preserving map");
    }
    const int d = phi.dim();
    Mat center = Mat::Identity(d, d) / d;
    Mat image = phi.apply_matrix(center);
    image = 0.5 * (image + image.adjoint().eval());

    Mat gamma = image - center;
    if (std::abs(gamma.trace().real()) > tol::channel) {
        throw Error("displacement of the fixed point is not traceless");
    }

    // Two independent routes to the same squared norm: entrywise, and through
    // the purity of the image (valid because gamma is traceless). Compared
    // before the square root, which would amplify roundoff near zero.
    const double direct = gamma.norm();
    const double via_purity = hs_inner(image, image).real() - 1.0 / d;
    if (std::abs(direct * direct - via_purity) > tol::channel) {
        throw Error("inconsistent Hilbert-Schmidt norms for the displacement");
    }

    NonUnitalityReport report{HermitianOperator(gamma), direct,
                              d * spectral_norm(image),
                              1.0 + std::sqrt(double(d) * (d - 1)) * direct};
    if (report.map_norm > report.bound + 1e-9) {
        throw Error("map norm exceeded its displacement bound");
    }
    return report;
}

NormBoundResult norm_bound_lemma(const Mat& x) {
    HermitianOperator h(x);  // rejects non-Hermitian input
    EigenSystem es = eigendecompose(h.mat());
    const int d = h.dim();
    if (es.values(0) < -tol::eigen_clamp) {
        throw std::invalid_argument("the norm bound needs a positive semidefinite input");
    }
    double trace = 0.0;
    double sq = 0.0;
    for (int i = 0; i < d; ++i) {
        const double v = std::max(es.values(i), 0.0);
        trace += v;
        sq += v * v;
    }
    NormBoundResult r;
    r.sup_norm = std::max(es.values(d - 1), 0.0);
    r.bound =
        (trace + std::sqrt(double(d - 1)) * std::sqrt(std::max(0.0, d * sq - trace * trace))) /
        d;
    r.holds = r.sup_norm <= r.bound + 1e-10;
    return r;
}

}  // namespace bzi

#include "bzi/measurements.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bzi {

namespace {

constexpr double kPi = std::numbers::pi;

Povm basis_povm(int d, std::string label, const std::vector<Vec>& vectors) {
    Povm p;
    p.d = d;
    p.label = std::move(label);
    p.elements.reserve(vectors.size());
    for (const Vec& v : vectors) {
        p.elements.emplace_back(Mat(v * v.adjoint()));
    }
    return p;
}

// Operators F_b^(j) for one Gell-Mann block; their positivity margins set
// the feasible t range and I/d + t F_b^(j) are the MUM elements.
std::vector<std::vector<Mat>> mum_block_operators(int d) {
    const std::vector<Mat> gm = gell_mann_basis(d);
    const int g = d - 1;
    const double heavy = d + std::sqrt(static_cast<double>(d));
    const double light = 1.0 + std::sqrt(static_cast<double>(d));
    std::vector<std::vector<Mat>> blocks(d + 1);
    for (int b = 0; b <= d; ++b) {
        Mat fb = Mat::Zero(d, d);
        for (int j = 0; j < g; ++j) fb += gm[static_cast<std::size_t>(b * g + j)];
        std::vector<Mat>& ops = blocks[static_cast<std::size_t>(b)];
        ops.reserve(static_cast<std::size_t>(d));
        for (int j = 0; j < g; ++j) {
            ops.push_back(fb - heavy * gm[static_cast<std::size_t>(b * g + j)]);
        }
        ops.push_back(light * fb);
    }
    return blocks;
}

// G_k operators whose displacements of I/d^2 form the general SIC.
std::vector<Mat> gsic_operators(int d) {
    const std::vector<Mat> gm = gell_mann_basis(d);
    Mat f = Mat::Zero(d, d);
    for (const Mat& m : gm) f += m;
    const double heavy = static_cast<double>(d) * (d + 1.0);
    std::vector<Mat> ops;
    ops.reserve(static_cast<std::size_t>(d) * d);
    for (const Mat& m : gm) ops.push_back(f - heavy * m);
    ops.push_back((d + 1.0) * f);
    return ops;
}

// Largest |lambda_min| over a family of traceless operators; the feasible
// t for elements c*I + t*Op ends where c + t*lambda_min hits zero.
double worst_negative_eigenvalue(const std::vector<Mat>& ops) {
    double worst = 0.0;
    for (const Mat& op : ops) {
        worst = std::max(worst, -eigendecompose(op).values(0));
    }
    return worst;
}

void check_mum_dimension(int d, const char* who) {
    if (d < 2) throw DimensionError(std::string(who) + ": dimension must be at least 2");
    if (d > 64) throw UnsupportedError(std::string(who) + ": dimensions above 64 are not supported");
}

double resolve_t(std::optional<double> t, double t_max, const char* who) {
    const double tv = t.value_or(t_max);
    if (!(tv > 0.0)) {
        throw std::invalid_argument(std::string(who) + ": t must be positive");
    }
    if (tv > t_max * (1.0 + 1e-12)) {
        throw FeasibilityError(std::string(who) + ": t violates element positivity; largest feasible t is " +
                                   std::to_string(t_max),
                               t_max);
    }
    return tv;
}

double real_product(const HermitianOperator& x, const HermitianOperator& y) {
    return hs_inner(x.mat(), y.mat()).real();
}

struct PotentialEval {
    double value = 0.0;  // sum over displacements of |<phi|W|phi>|^4
    Vec grad;
};

PotentialEval frame_potential(const Vec& phi, const std::vector<Mat>& ops,
                              const std::vector<Mat>& adj) {
    PotentialEval out;
    out.grad = Vec::Zero(phi.size());
    for (std::size_t m = 0; m < ops.size(); ++m) {
        const Vec w = ops[m] * phi;
        const Complex z = phi.dot(w);
        const double z2 = std::norm(z);
        out.value += z2 * z2;
        out.grad += 2.0 * z2 * (std::conj(z) * w + z * (adj[m] * phi));
    }
    return out;
}

// Gauss-Newton on the overlap residuals |<phi|W_m|phi>|^2 - 1/(d+1).
// Gradient descent alone stalls a few digits short of machine precision
// (the Armijo test drowns in rounding noise near the minimum); this
// quadratic polish takes over once a run lands inside the SIC basin.
Vec polish_sic_fiducial(Vec phi, const std::vector<Mat>& ops, const std::vector<Mat>& adj,
                        int d) {
    const double ref = 1.0 / (d + 1.0);
    const int m = static_cast<int>(ops.size());
    Eigen::VectorXd r(m);
    Eigen::MatrixXd jac(m, 2 * d);
    for (int iter = 0; iter < 25; ++iter) {
        r(0) = phi.squaredNorm() - 1.0;
        for (int i = 0; i < d; ++i) {
            jac(0, 2 * i) = 2.0 * phi(i).real();
            jac(0, 2 * i + 1) = 2.0 * phi(i).imag();
        }
        for (int k = 1; k < m; ++k) {
            const Vec w = ops[static_cast<std::size_t>(k)] * phi;
            const Vec wa = adj[static_cast<std::size_t>(k)] * phi;
            const Complex z = phi.dot(w);
            r(k) = std::norm(z) - ref;
            for (int i = 0; i < d; ++i) {
                const Complex g = std::conj(z) * w(i) + z * wa(i);
                jac(k, 2 * i) = 2.0 * g.real();
                jac(k, 2 * i + 1) = 2.0 * g.imag();
            }
        }
        if (r.norm() < 1e-15) break;
        const Eigen::VectorXd delta =
            jac.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(-r);
        for (int i = 0; i < d; ++i) {
            phi(i) += Complex(delta(2 * i), delta(2 * i + 1));
        }
        phi.normalize();
    }
    return phi;
}

}  // namespace

std::string variant_name(SchemeVariant v) {
    switch (v) {
        case SchemeVariant::mub: return "mub";
        case SchemeVariant::sic: return "sic";
        case SchemeVariant::mum: return "mum";
        case SchemeVariant::gsic: return "gsic";
    }
    throw std::logic_error("variant_name: unreachable");
}

SchemeVariant variant_from_name(const std::string& name) {
    if (name == "mub") return SchemeVariant::mub;
    if (name == "sic") return SchemeVariant::sic;
    if (name == "mum") return SchemeVariant::mum;
    if (name == "gsic") return SchemeVariant::gsic;
    throw UnsupportedError("unknown scheme variant '" + name + "'");
}

bool is_prime(int n) {
    if (n < 2) return false;
    for (int k = 2; k * k <= n; ++k) {
        if (n % k == 0) return false;
    }
    return true;
}

MeasurementScheme build_mub_set(int d) {
    if (d < 2 || d > 31) {
        throw UnsupportedError("build_mub_set: dimension must lie in [2, 31]");
    }
    if (!is_prime(d)) {
        throw UnsupportedError("build_mub_set: dimension must be prime; composite dimensions have no known full set");
    }

    MeasurementScheme s;
    s.variant = SchemeVariant::mub;
    s.d = d;

    std::vector<std::vector<Vec>> bases;
    if (d == 2) {
        const double r = 1.0 / std::sqrt(2.0);
        Vec e0(2), e1(2), xp(2), xm(2), yp(2), ym(2);
        e0 << 1, 0;
        e1 << 0, 1;
        xp << r, r;
        xm << r, -r;
        yp << r, Complex(0, r);
        ym << r, Complex(0, -r);
        bases = {{e0, e1}, {xp, xm}, {yp, ym}};
    } else {
        std::vector<Complex> root(static_cast<std::size_t>(d));
        for (int m = 0; m < d; ++m) {
            root[static_cast<std::size_t>(m)] = std::polar(1.0, 2.0 * kPi * m / d);
        }
        const double norm = 1.0 / std::sqrt(static_cast<double>(d));

        std::vector<Vec> computational;
        for (int j = 0; j < d; ++j) {
            Vec v = Vec::Zero(d);
            v(j) = 1.0;
            computational.push_back(v);
        }
        bases.push_back(std::move(computational));

        for (int r = 1; r <= d; ++r) {
            std::vector<Vec> basis;
            for (int j = 0; j < d; ++j) {
                Vec v(d);
                for (int k = 0; k < d; ++k) {
                    v(k) = norm * root[static_cast<std::size_t>((r * k * k + j * k) % d)];
                }
                basis.push_back(std::move(v));
            }
            bases.push_back(std::move(basis));
        }
    }

    for (std::size_t b = 0; b < bases.size(); ++b) {
        s.povms.push_back(basis_povm(d, "basis-" + std::to_string(b), bases[b]));
    }
    return s;
}

MeasurementScheme build_sic_povm(int d) {
    if (d == 2) {
        const double c = std::sqrt((1.0 + 1.0 / std::sqrt(3.0)) / 2.0);
        const double sn = std::sqrt((1.0 - 1.0 / std::sqrt(3.0)) / 2.0);
        Vec fid(2);
        fid << c, std::polar(sn, kPi / 4.0);
        return build_sic_povm(2, fid);
    }
    if (d == 3) {
        Vec fid(3);
        fid << 0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
        return build_sic_povm(3, fid);
    }
    throw UnsupportedError("build_sic_povm: no embedded fiducial for this dimension; run optimize_sic_fiducial");
}

MeasurementScheme build_sic_povm(int d, const Vec& fiducial) {
    if (d < 2) throw DimensionError("build_sic_povm: dimension must be at least 2");
    if (fiducial.size() != d) {
        throw DimensionError("build_sic_povm: fiducial length does not match dimension");
    }
    const double nrm = fiducial.norm();
    if (!(nrm > 0.0)) throw std::invalid_argument("build_sic_povm: fiducial is zero");
    const Vec phi = fiducial / nrm;

    MeasurementScheme s;
    s.variant = SchemeVariant::sic;
    s.d = d;
    Povm p;
    p.d = d;
    p.label = "sic";
    const double w = 1.0 / d;
    for (const Mat& op : weyl_heisenberg(d)) {
        const Vec v = op * phi;
        p.elements.emplace_back(Mat(w * v * v.adjoint()));
    }
    s.povms.push_back(std::move(p));
    return s;
}

SicSearchResult optimize_sic_fiducial(int d, std::uint64_t seed, int max_restarts, long max_iters) {
    if (d < 2 || d > 8) {
        throw UnsupportedError("optimize_sic_fiducial: dimension must lie in [2, 8]");
    }
    const std::vector<Mat> ops = weyl_heisenberg(d);
    std::vector<Mat> adj;
    adj.reserve(ops.size());
    for (const Mat& op : ops) adj.push_back(op.adjoint());

    const double dd = static_cast<double>(d);
    const double target = 2.0 * dd * dd * dd / (dd + 1.0);

    SicSearchResult best;
    best.target = target;
    best.frame_potential = kInf;

    Rng root(seed);
    long total_iters = 0;

    for (int restart = 0; restart < max_restarts; ++restart) {
        Rng rr = root.derive(static_cast<std::uint64_t>(restart));
        Vec phi = random_unit_vector(d, rr);
        PotentialEval eval = frame_potential(phi, ops, adj);
        double step = 0.1;
        double grad_norm = kInf;

        for (long iter = 0; iter < max_iters; ++iter) {
            ++total_iters;
            Vec gt = eval.grad - phi.dot(eval.grad) * phi;  // tangent to the unit sphere
            grad_norm = gt.norm();
            if (grad_norm <= 1e-10) break;
            if (dd * dd * eval.value - target < 1e-4) break;  // close enough for the polish

            bool moved = false;
            while (step > 1e-18) {
                Vec cand = (phi - step * gt).normalized();
                PotentialEval ceval = frame_potential(cand, ops, adj);
                if (ceval.value <= eval.value - 1e-4 * step * grad_norm * grad_norm) {
                    phi = std::move(cand);
                    eval = std::move(ceval);
                    step = std::min(step * 1.3, 1.0);
                    moved = true;
                    break;
                }
                step *= 0.5;
            }
            if (!moved) break;
        }

        double potential = dd * dd * eval.value;
        if (std::abs(potential - target) < 1e-3) {
            phi = polish_sic_fiducial(std::move(phi), ops, adj, d);
            eval = frame_potential(phi, ops, adj);
            grad_norm = (eval.grad - phi.dot(eval.grad) * phi).norm();
            potential = dd * dd * eval.value;
        }
        if (potential < best.frame_potential) {
            best.fiducial = phi;
            best.frame_potential = potential;
            best.grad_norm = grad_norm;
            best.restarts_used = restart + 1;
        }
        if (std::abs(potential - target) <= 1e-8) {
            best.success = true;
            break;
        }
    }
    best.iterations = total_iters;
    return best;
}

std::vector<Mat> gell_mann_basis(int d) {
    if (d < 2) throw DimensionError("gell_mann_basis: dimension must be at least 2");
    std::vector<Mat> basis;
    basis.reserve(static_cast<std::size_t>(d) * d - 1);
    const double r = 1.0 / std::sqrt(2.0);
    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            Mat m = Mat::Zero(d, d);
            m(j, k) = r;
            m(k, j) = r;
            basis.push_back(std::move(m));
        }
    }
    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            Mat m = Mat::Zero(d, d);
            m(j, k) = Complex(0, -r);
            m(k, j) = Complex(0, r);
            basis.push_back(std::move(m));
        }
    }
    for (int l = 1; l < d; ++l) {
        Mat m = Mat::Zero(d, d);
        const double c = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1.0));
        for (int j = 0; j < l; ++j) m(j, j) = c;
        m(l, l) = -static_cast<double>(l) * c;
        basis.push_back(std::move(m));
    }
    return basis;
}

double mum_max_t(int d) {
    check_mum_dimension(d, "mum_max_t");
    const auto blocks = mum_block_operators(d);
    double worst = 0.0;
    for (const auto& ops : blocks) worst = std::max(worst, worst_negative_eigenvalue(ops));
    return 1.0 / (d * worst);
}

double mum_kappa(int d, double t) {
    const double root = 1.0 + std::sqrt(static_cast<double>(d));
    return 1.0 / d + t * t * (d - 1.0) * root * root;
}

MeasurementScheme build_mum_set(int d, std::optional<double> t) {
    check_mum_dimension(d, "build_mum_set");
    const auto blocks = mum_block_operators(d);
    double worst = 0.0;
    for (const auto& ops : blocks) worst = std::max(worst, worst_negative_eigenvalue(ops));
    const double t_max = 1.0 / (d * worst);
    const double tv = resolve_t(t, t_max, "build_mum_set");

    MeasurementScheme s;
    s.variant = SchemeVariant::mum;
    s.d = d;
    s.kappa = mum_kappa(d, tv);
    const Mat base = Mat::Identity(d, d) / static_cast<double>(d);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        Povm p;
        p.d = d;
        p.label = "mum-" + std::to_string(b);
        for (const Mat& op : blocks[b]) {
            p.elements.emplace_back(Mat(base + tv * op));
        }
        s.povms.push_back(std::move(p));
    }
    return s;
}

double general_sic_max_t(int d) {
    check_mum_dimension(d, "general_sic_max_t");
    const double worst = worst_negative_eigenvalue(gsic_operators(d));
    return 1.0 / (static_cast<double>(d) * d * worst);
}

double general_sic_a(int d, double t) {
    const double dd = static_cast<double>(d);
    return 1.0 / (dd * dd * dd) + t * t * std::pow(dd + 1.0, 3) * (dd - 1.0);
}

MeasurementScheme build_general_sic(int d, std::optional<double> t) {
    check_mum_dimension(d, "build_general_sic");
    const std::vector<Mat> ops = gsic_operators(d);
    const double worst = worst_negative_eigenvalue(ops);
    const double t_max = 1.0 / (static_cast<double>(d) * d * worst);
    const double tv = resolve_t(t, t_max, "build_general_sic");

    MeasurementScheme s;
    s.variant = SchemeVariant::gsic;
    s.d = d;
    s.a_param = general_sic_a(d, tv);
    Povm p;
    p.d = d;
    p.label = "gsic";
    const Mat base = Mat::Identity(d, d) / (static_cast<double>(d) * d);
    for (const Mat& op : ops) {
        p.elements.emplace_back(Mat(base + tv * op));
    }
    s.povms.push_back(std::move(p));
    return s;
}

Mat shift_matrix(int d) {
    Mat x = Mat::Zero(d, d);
    for (int k = 0; k < d; ++k) x((k + 1) % d, k) = 1.0;
    return x;
}

Mat clock_matrix(int d) {
    Mat z = Mat::Zero(d, d);
    for (int k = 0; k < d; ++k) z(k, k) = std::polar(1.0, 2.0 * kPi * k / d);
    return z;
}

std::vector<Mat> weyl_heisenberg(int d) {
    const Mat x = shift_matrix(d);
    const Mat z = clock_matrix(d);
    std::vector<Mat> xp(static_cast<std::size_t>(d)), zq(static_cast<std::size_t>(d));
    xp[0] = Mat::Identity(d, d);
    zq[0] = Mat::Identity(d, d);
    for (int k = 1; k < d; ++k) {
        xp[static_cast<std::size_t>(k)] = xp[static_cast<std::size_t>(k - 1)] * x;
        zq[static_cast<std::size_t>(k)] = zq[static_cast<std::size_t>(k - 1)] * z;
    }
    std::vector<Mat> ops;
    ops.reserve(static_cast<std::size_t>(d) * d);
    for (int p = 0; p < d; ++p) {
        for (int q = 0; q < d; ++q) {
            ops.push_back(xp[static_cast<std::size_t>(p)] * zq[static_cast<std::size_t>(q)]);
        }
    }
    return ops;
}

ValidationReport validate_scheme(const MeasurementScheme& scheme, double tolerance) {
    ValidationReport rep;
    rep.variant = scheme.variant;
    rep.d = scheme.d;

    auto add = [&rep](const std::string& name, double dev, bool pass) {
        rep.checks.push_back({name, dev, pass});
    };
    auto add_tol = [&](const std::string& name, double dev) { add(name, dev, dev <= tolerance); };

    const int d = scheme.d;
    bool structure_ok = d >= 2;
    std::size_t want_povms = 0, want_elements = 0;
    switch (scheme.variant) {
        case SchemeVariant::mub:
        case SchemeVariant::mum:
            want_povms = static_cast<std::size_t>(d) + 1;
            want_elements = static_cast<std::size_t>(d);
            break;
        case SchemeVariant::sic:
        case SchemeVariant::gsic:
            want_povms = 1;
            want_elements = static_cast<std::size_t>(d) * static_cast<std::size_t>(d);
            break;
    }
    structure_ok = structure_ok && scheme.povms.size() == want_povms;
    for (const Povm& p : scheme.povms) {
        structure_ok = structure_ok && p.elements.size() == want_elements;
        for (const HermitianOperator& e : p.elements) {
            structure_ok = structure_ok && e.dim() == d;
        }
    }
    if (scheme.variant == SchemeVariant::mum) structure_ok = structure_ok && scheme.kappa.has_value();
    if (scheme.variant == SchemeVariant::gsic) structure_ok = structure_ok && scheme.a_param.has_value();
    add("structure", structure_ok ? 0.0 : 1.0, structure_ok);
    if (!structure_ok) {
        rep.pass = false;
        return rep;
    }

    const Mat id = Mat::Identity(d, d);
    double completeness_dev = 0.0;
    double positivity_dev = 0.0;
    for (const Povm& p : scheme.povms) {
        Mat sum = Mat::Zero(d, d);
        for (const HermitianOperator& e : p.elements) {
            sum += e.mat();
            positivity_dev = std::max(positivity_dev, -eigendecompose(e.mat()).values(0));
        }
        completeness_dev = std::max(completeness_dev, spectral_norm(sum - id));
    }
    add_tol("completeness", completeness_dev);
    add_tol("positivity", positivity_dev);

    const double dd = static_cast<double>(d);
    switch (scheme.variant) {
        case SchemeVariant::mub: {
            double trace_dev = 0.0, idem_dev = 0.0, ortho_dev = 0.0, cross_dev = 0.0;
            for (const Povm& p : scheme.povms) {
                for (std::size_t j = 0; j < p.elements.size(); ++j) {
                    const Mat& m = p.elements[j].mat();
                    trace_dev = std::max(trace_dev, std::abs(m.trace().real() - 1.0));
                    idem_dev = std::max(idem_dev, spectral_norm(Mat(m * m) - m));
                    for (std::size_t k = j + 1; k < p.elements.size(); ++k) {
                        ortho_dev = std::max(
                            ortho_dev, std::abs(real_product(p.elements[j], p.elements[k])));
                    }
                }
            }
            for (std::size_t b = 0; b < scheme.povms.size(); ++b) {
                for (std::size_t c = b + 1; c < scheme.povms.size(); ++c) {
                    for (const HermitianOperator& x : scheme.povms[b].elements) {
                        for (const HermitianOperator& y : scheme.povms[c].elements) {
                            cross_dev = std::max(cross_dev,
                                                 std::abs(real_product(x, y) - 1.0 / dd));
                        }
                    }
                }
            }
            add_tol("element-trace", trace_dev);
            add_tol("projector", idem_dev);
            add_tol("within-basis-orthogonality", ortho_dev);
            add_tol("cross-basis-overlap", cross_dev);
            break;
        }
        case SchemeVariant::sic: {
            const auto& els = scheme.povms[0].elements;
            double trace_dev = 0.0, self_dev = 0.0, pair_dev = 0.0;
            const double self_ref = 1.0 / (dd * dd);
            const double pair_ref = 1.0 / (dd * dd * (dd + 1.0));
            for (std::size_t j = 0; j < els.size(); ++j) {
                trace_dev = std::max(trace_dev, std::abs(els[j].mat().trace().real() - 1.0 / dd));
                self_dev = std::max(self_dev, std::abs(real_product(els[j], els[j]) - self_ref));
                for (std::size_t k = j + 1; k < els.size(); ++k) {
                    pair_dev = std::max(pair_dev,
                                        std::abs(real_product(els[j], els[k]) - pair_ref));
                }
            }
            add_tol("element-trace", trace_dev);
            add_tol("self-product", self_dev);
            add_tol("pair-overlap", pair_dev);
            break;
        }
        case SchemeVariant::mum: {
            const double kappa = *scheme.kappa;
            double trace_dev = 0.0, self_dev = 0.0, within_dev = 0.0, between_dev = 0.0;
            double self_mean = 0.0;
            std::size_t self_count = 0;
            const double off_ref = (1.0 - kappa) / (dd - 1.0);
            for (const Povm& p : scheme.povms) {
                for (std::size_t j = 0; j < p.elements.size(); ++j) {
                    trace_dev = std::max(trace_dev,
                                         std::abs(p.elements[j].mat().trace().real() - 1.0));
                    const double self = real_product(p.elements[j], p.elements[j]);
                    self_dev = std::max(self_dev, std::abs(self - kappa));
                    self_mean += self;
                    ++self_count;
                    for (std::size_t k = j + 1; k < p.elements.size(); ++k) {
                        within_dev = std::max(
                            within_dev,
                            std::abs(real_product(p.elements[j], p.elements[k]) - off_ref));
                    }
                }
            }
            for (std::size_t b = 0; b < scheme.povms.size(); ++b) {
                for (std::size_t c = b + 1; c < scheme.povms.size(); ++c) {
                    for (const HermitianOperator& x : scheme.povms[b].elements) {
                        for (const HermitianOperator& y : scheme.povms[c].elements) {
                            between_dev = std::max(between_dev,
                                                   std::abs(real_product(x, y) - 1.0 / dd));
                        }
                    }
                }
            }
            self_mean /= static_cast<double>(self_count);
            add_tol("element-trace", trace_dev);
            add_tol("self-product", self_dev);
            add_tol("within-povm-product", within_dev);
            add_tol("between-povm-product", between_dev);
            add_tol("kappa-consistency", std::abs(self_mean - kappa));
            const bool in_range = kappa > 1.0 / dd && kappa <= 1.0 + tolerance;
            add("kappa-range", std::max(0.0, kappa - 1.0) + std::max(0.0, 1.0 / dd - kappa),
                in_range);
            break;
        }
        case SchemeVariant::gsic: {
            const double a = *scheme.a_param;
            const double b_ref = (1.0 - a * dd) / (dd * (dd * dd - 1.0));
            const auto& els = scheme.povms[0].elements;
            double trace_dev = 0.0, self_dev = 0.0, pair_dev = 0.0;
            double self_mean = 0.0;
            for (std::size_t j = 0; j < els.size(); ++j) {
                trace_dev = std::max(trace_dev, std::abs(els[j].mat().trace().real() - 1.0 / dd));
                const double self = real_product(els[j], els[j]);
                self_dev = std::max(self_dev, std::abs(self - a));
                self_mean += self;
                for (std::size_t k = j + 1; k < els.size(); ++k) {
                    pair_dev = std::max(pair_dev,
                                        std::abs(real_product(els[j], els[k]) - b_ref));
                }
            }
            self_mean /= static_cast<double>(els.size());
            add_tol("element-trace", trace_dev);
            add_tol("self-product", self_dev);
            add_tol("pair-product", pair_dev);
            add_tol("a-consistency", std::abs(self_mean - a));
            const double lo = 1.0 / (dd * dd * dd);
            const double hi = 1.0 / (dd * dd);
            const bool in_range = a > lo && a <= hi + tolerance;
            add("a-range", std::max(0.0, a - hi) + std::max(0.0, lo - a), in_range);
            break;
        }
    }

    rep.pass = std::all_of(rep.checks.begin(), rep.checks.end(),
                           [](const CheckResult& c) { return c.pass; });
    return rep;
}

}  // namespace bzi

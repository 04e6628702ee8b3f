#include "bzi/information.hpp"

#include <algorithm>
#include <cmath>

namespace bzi {

namespace {

double xlnx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

double xpow(double x, double alpha) { return x > 0.0 ? std::pow(x, alpha) : 0.0; }

void check_probability_vector(const OutcomeDistribution& dist) {
    double total = dist.noclick;
    for (double p : dist.probs) {
        if (p < -1e-12) {
            throw std::invalid_argument("distribution has a negative probability");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-10) {
        throw std::invalid_argument("distribution probabilities do not sum to one");
    }
}

// Every p^2-style accumulation below walks clicks first, then the
// no-click slot, so the two conventions share one code path.
template <typename F>
void for_each_outcome(const OutcomeDistribution& dist, bool include_noclick, F&& f) {
    for (double p : dist.probs) f(std::max(p, 0.0));
    if (include_noclick && dist.eta.has_value()) f(dist.noclick);
}

void check_same_dimension(const Povm& m, const DensityOperator& rho) {
    if (m.d != rho.dim()) {
        throw DimensionError("POVM and state dimensions do not match");
    }
    if (m.elements.empty()) {
        throw std::invalid_argument("POVM has no elements");
    }
}

}  // namespace

OutcomeDistribution probabilities(const Povm& m, const DensityOperator& rho) {
    check_same_dimension(m, rho);
    OutcomeDistribution dist;
    dist.probs.reserve(m.elements.size());
    for (const HermitianOperator& e : m.elements) {
        const Complex p = hs_inner(e.mat(), rho.mat());
        if (std::abs(p.imag()) > 1e-12) {
            throw Error("probabilities: trace came out complex; inputs are corrupt");
        }
        dist.probs.push_back(std::max(p.real(), 0.0));
    }
    check_probability_vector(dist);
    return dist;
}

OutcomeDistribution distort(const OutcomeDistribution& dist, double eta) {
    if (dist.eta.has_value()) {
        throw std::invalid_argument("distort: distribution is already distorted");
    }
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("distort: efficiency must lie in [0, 1]");
    }
    check_probability_vector(dist);
    OutcomeDistribution out;
    out.probs.reserve(dist.probs.size());
    for (double p : dist.probs) out.probs.push_back(eta * p);
    out.eta = eta;
    out.noclick = 1.0 - eta;
    return out;
}

double index_of_coincidence(const OutcomeDistribution& dist, bool include_noclick) {
    double c = 0.0;
    for_each_outcome(dist, include_noclick, [&c](double p) { c += p * p; });
    return c;
}

double bz_uncertainty(const OutcomeDistribution& dist, bool include_noclick) {
    return 1.0 - index_of_coincidence(dist, include_noclick);
}

double shannon_entropy(const OutcomeDistribution& dist) {
    double h = 0.0;
    for_each_outcome(dist, true, [&h](double p) { h -= xlnx(p); });
    return h;
}

double tsallis_entropy(const OutcomeDistribution& dist, double alpha) {
    if (!(alpha > 0.0)) {
        throw std::invalid_argument("tsallis_entropy: order must be positive");
    }
    if (alpha == 1.0) return shannon_entropy(dist);
    double s = 0.0;
    for_each_outcome(dist, true, [&s, alpha](double p) { s += xpow(p, alpha); });
    return (s - 1.0) / (1.0 - alpha);
}

double tsallis_binary(double alpha, double eta) {
    if (!(alpha > 0.0)) {
        throw std::invalid_argument("tsallis_binary: order must be positive");
    }
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("tsallis_binary: efficiency must lie in [0, 1]");
    }
    if (alpha == 1.0) return -xlnx(eta) - xlnx(1.0 - eta);
    return (xpow(eta, alpha) + xpow(1.0 - eta, alpha) - 1.0) / (1.0 - alpha);
}

double bz_information(const Povm& m, const DensityOperator& rho) {
    const DensityOperator ref = DensityOperator::maximally_mixed(rho.dim());
    return index_of_coincidence(probabilities(m, rho)) -
           index_of_coincidence(probabilities(m, ref));
}

double bz_information_eta(const Povm& m, const DensityOperator& rho, double eta,
                          bool include_noclick) {
    const DensityOperator ref = DensityOperator::maximally_mixed(rho.dim());
    return index_of_coincidence(distort(probabilities(m, rho), eta), include_noclick) -
           index_of_coincidence(distort(probabilities(m, ref), eta), include_noclick);
}

double bz_information_uniform(const OutcomeDistribution& dist) {
    if (dist.eta.has_value()) {
        throw std::invalid_argument(
            "bz_information_uniform: defined only for undistorted distributions");
    }
    check_probability_vector(dist);
    const double ref = 1.0 / static_cast<double>(dist.probs.size());
    double s = 0.0;
    for (double p : dist.probs) s += (p - ref) * (p - ref);
    return s;
}

double coincidence_sum(const MeasurementScheme& scheme, const DensityOperator& rho) {
    double s = 0.0;
    for (const Povm& m : scheme.povms) {
        s += index_of_coincidence(probabilities(m, rho));
    }
    return s;
}

double coincidence_sum_closed_form(const MeasurementScheme& scheme, double state_purity) {
    const double d = scheme.d;
    const double p = state_purity;
    switch (scheme.variant) {
        case SchemeVariant::mub:
            return 1.0 + p;
        case SchemeVariant::sic:
            return (p + 1.0) / (d * (d + 1.0));
        case SchemeVariant::mum: {
            const double k = scheme.kappa.value();
            return 1.0 + (1.0 - k + (k * d - 1.0) * p) / (d - 1.0);
        }
        case SchemeVariant::gsic: {
            const double a = scheme.a_param.value();
            return ((a * d * d * d - 1.0) * p + d * (1.0 - a * d)) / (d * (d * d - 1.0));
        }
    }
    throw std::logic_error("coincidence_sum_closed_form: unreachable");
}

double scheme_total_coefficient(const MeasurementScheme& scheme) {
    const double d = scheme.d;
    switch (scheme.variant) {
        case SchemeVariant::mub:
            return 1.0;
        case SchemeVariant::sic:
            return 1.0 / (d * (d + 1.0));
        case SchemeVariant::mum: {
            const double k = scheme.kappa.value();
            return (k * d - 1.0) / (d - 1.0);
        }
        case SchemeVariant::gsic: {
            const double a = scheme.a_param.value();
            return (a * d * d * d - 1.0) / (d * (d * d - 1.0));
        }
    }
    throw std::logic_error("scheme_total_coefficient: unreachable");
}

SchemeTotal scheme_total(const MeasurementScheme& scheme, const DensityOperator& rho) {
    SchemeTotal t;
    for (const Povm& m : scheme.povms) t.measured += bz_information(m, rho);
    t.predicted = scheme_total_coefficient(scheme) * (purity(rho) - 1.0 / rho.dim());
    return t;
}

SchemeTotal scheme_total_eta(const MeasurementScheme& scheme, const DensityOperator& rho,
                             double eta, bool include_noclick) {
    SchemeTotal t;
    for (const Povm& m : scheme.povms) {
        t.measured += bz_information_eta(m, rho, eta, include_noclick);
    }
    t.predicted =
        eta * eta * scheme_total_coefficient(scheme) * (purity(rho) - 1.0 / rho.dim());
    return t;
}

namespace {

void check_unbiased_bases(const std::vector<Povm>& bases, int d) {
    if (bases.empty()) throw std::invalid_argument("no bases given");
    if (bases.size() > static_cast<std::size_t>(d) + 1) {
        throw std::invalid_argument("more bases than a full unbiased set admits");
    }
    const Mat id = Mat::Identity(d, d);
    for (const Povm& b : bases) {
        if (b.d != d || b.elements.size() != static_cast<std::size_t>(d)) {
            throw std::invalid_argument("basis has the wrong shape");
        }
        Mat sum = Mat::Zero(d, d);
        for (const HermitianOperator& e : b.elements) {
            sum += e.mat();
            if (spectral_norm(Mat(e.mat() * e.mat()) - e.mat()) > tol::scheme_check) {
                throw std::invalid_argument("basis element is not a projector");
            }
        }
        if (spectral_norm(sum - id) > tol::scheme_check) {
            throw std::invalid_argument("basis is not complete");
        }
    }
    for (std::size_t i = 0; i < bases.size(); ++i) {
        for (std::size_t j = i + 1; j < bases.size(); ++j) {
            for (const HermitianOperator& x : bases[i].elements) {
                for (const HermitianOperator& y : bases[j].elements) {
                    if (std::abs(hs_inner(x.mat(), y.mat()).real() - 1.0 / d) >
                        tol::scheme_check) {
                        throw std::invalid_argument("bases are not mutually unbiased");
                    }
                }
            }
        }
    }
}

}  // namespace

PartialBoundResult partial_mub_bound_check(const std::vector<Povm>& bases,
                                           const DensityOperator& rho) {
    const int d = rho.dim();
    check_unbiased_bases(bases, d);
    PartialBoundResult r;
    for (const Povm& b : bases) {
        r.sum += index_of_coincidence(probabilities(b, rho));
    }
    const double l = static_cast<double>(bases.size());
    r.bound = (l - 1.0) / d + purity(rho);
    r.holds = r.sum <= r.bound + 1e-10;
    return r;
}

PartialBoundResult partial_mum_bound_check(const std::vector<Povm>& povms, double kappa,
                                           const DensityOperator& rho) {
    const int d = rho.dim();
    if (povms.empty()) throw std::invalid_argument("no measurements given");
    if (povms.size() > static_cast<std::size_t>(d) + 1) {
        throw std::invalid_argument("more measurements than a full family admits");
    }
    if (!(kappa > 1.0 / d && kappa <= 1.0 + tol::scheme_check)) {
        throw std::invalid_argument("efficiency parameter out of range");
    }
    for (const Povm& m : povms) {
        if (m.d != d || m.elements.size() != static_cast<std::size_t>(d)) {
            throw std::invalid_argument("measurement has the wrong shape");
        }
        for (const HermitianOperator& e : m.elements) {
            if (std::abs(e.mat().trace().real() - 1.0) > tol::scheme_check) {
                throw std::invalid_argument("element trace is not one");
            }
            if (std::abs(hs_inner(e.mat(), e.mat()).real() - kappa) > tol::scheme_check) {
                throw std::invalid_argument("element self-product disagrees with kappa");
            }
        }
    }
    PartialBoundResult r;
    for (const Povm& m : povms) {
        r.sum += index_of_coincidence(probabilities(m, rho));
    }
    const double l = static_cast<double>(povms.size());
    const double p = purity(rho);
    r.bound = (l - 1.0) / d + (1.0 - kappa + (kappa * d - 1.0) * p) / (d - 1.0);
    r.holds = r.sum <= r.bound + 1e-10;
    return r;
}

WitnessPair shannon_noninvariance_witness() {
    const MeasurementScheme mubs = build_mub_set(2);

    Vec e0(2);
    e0 << 1.0, 0.0;

    // Bloch direction (1,1,1)/sqrt(3): same spectrum as e0, different
    // orientation relative to the basis set.
    const double c = std::sqrt((1.0 + 1.0 / std::sqrt(3.0)) / 2.0);
    const double s = std::sqrt((1.0 - 1.0 / std::sqrt(3.0)) / 2.0);
    Vec diag(2);
    diag << c, std::polar(s, std::numbers::pi / 4.0);

    WitnessPair w{DensityOperator::pure(e0), DensityOperator::pure(diag), 0, 0, 0, 0};
    for (const Povm& b : mubs.povms) {
        w.shannon_sum_a += shannon_entropy(probabilities(b, w.state_a));
        w.shannon_sum_b += shannon_entropy(probabilities(b, w.state_b));
    }
    w.bz_total_a = scheme_total(mubs, w.state_a).measured;
    w.bz_total_b = scheme_total(mubs, w.state_b).measured;
    return w;
}

}  // namespace bzi

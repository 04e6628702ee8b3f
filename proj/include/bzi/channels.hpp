#pragma once

#include <vector>

#include "bzi/operator_core.hpp"
#include "bzi/rng.hpp"

namespace bzi {

// Completely positive trace-preserving map on a d-dimensional space, held as
// a list of Kraus operators. Input and output spaces coincide.
class KrausChannel {
public:
    // Validates that the operators close to the identity: the spectral
    // deviation of sum K†K from I must stay below tol::channel.
    explicit KrausChannel(std::vector<Mat> kraus);

    // Skips the closure check. Intended for diagnosing untrusted inputs;
    // apply() still refuses to emit a state whose trace drifted.
    static KrausChannel unchecked(std::vector<Mat> kraus);

    const std::vector<Mat>& kraus() const { return kraus_; }
    int dim() const { return d_; }

    // Linear action sum_i K_i X K_i† with no state validation.
    Mat apply_matrix(const Mat& x) const;

    // Schroedinger-picture action on a state. The output trace may drift by
    // at most tol::channel before renormalization.
    DensityOperator apply(const DensityOperator& rho) const;

    // Heisenberg-picture action sum_i K_i† X K_i.
    Mat adjoint_apply(const Mat& x) const;

    // Spectral norm of (sum K†K - I).
    double completeness_defect() const;

    bool is_trace_preserving(double tolerance = tol::channel) const;

    // True when sum K K† = I, i.e. the map fixes the maximally mixed state.
    bool is_unital(double tolerance = tol::channel) const;

    // Trace preserving and unital.
    bool is_bistochastic(double tolerance = tol::channel) const;

private:
    KrausChannel(std::vector<Mat> kraus, int d);

    std::vector<Mat> kraus_;
    int d_;
};

// The Heisenberg-picture map packaged as a channel of its own. The input
// must be unital, otherwise the adjoint would not preserve traces.
KrausChannel adjoint_channel(const KrausChannel& phi);

// Random convex mixture of k Haar unitaries with flat Dirichlet weights;
// bistochastic by construction. k defaults to max(2, d) when zero.
KrausChannel sample_bistochastic_channel(int d, Rng& rng, int k = 0);

// Haar-random Stinespring dilation with environment dimension env_dim
// (defaults to d when zero). Almost surely non-unital.
KrausChannel sample_generic_channel(int d, Rng& rng, int env_dim = 0);

// rho -> lambda rho + (1 - lambda) I/d, realized with the discrete
// displacement-operator basis.
KrausChannel depolarizing_channel(int d, double lambda);

// Sends every state to the basis state |target>.
KrausChannel contraction_channel(int d, int target = 0);

// Order-alpha divergence (tr(rho^a sigma^(1-a)) - 1)/(a - 1) for
// alpha in (0, 2], with the quantum relative entropy at alpha = 1.
// Returns +infinity when rho has weight outside the support of sigma
// and alpha >= 1; sigma-eigenvalues below tol::eigen_clamp count as
// support-exterior.
double tsallis_divergence(const DensityOperator& rho, const DensityOperator& sigma,
                          double alpha);

// tr(rho^2) - 1/d, the distance-from-center functional every complete
// scheme recovers up to its coefficient.
double purity_excess(const DensityOperator& rho);

struct MonotonicityReport {
    double before = 0.0;  // purity excess of the input state
    double after = 0.0;   // purity excess of the channel output
    std::vector<double> alphas;
    std::vector<double> divergence_before;
    std::vector<double> divergence_after;
    bool holds = false;
};

// Confirms that a bistochastic channel cannot increase the purity excess,
// nor any of the listed order-alpha divergences from the maximally mixed
// state. Non-bistochastic channels are rejected.
MonotonicityReport monotonicity_check(const KrausChannel& phi, const DensityOperator& rho,
                                      const std::vector<double>& alphas = {0.5, 1.0, 1.5,
                                                                           2.0});

struct NonUnitalityReport {
    HermitianOperator gamma;  // Phi(I/d) - I/d; traceless
    double hs_norm;           // Frobenius norm of gamma
    double map_norm;          // d * spectral norm of Phi(I/d)
    double bound;             // 1 + sqrt(d(d-1)) * hs_norm, always >= map_norm
};

// Measures how far a trace-preserving channel moves the maximally mixed
// state, and the induced bound on d*||Phi(I/d)||.
NonUnitalityReport non_unitality(const KrausChannel& phi);

struct NormBoundResult {
    double sup_norm = 0.0;
    double bound = 0.0;
    bool holds = false;
};

// For positive semidefinite x of dimension d, the largest eigenvalue never
// exceeds (tr x + sqrt(d-1) * sqrt(d tr(x^2) - (tr x)^2)) / d.
NormBoundResult norm_bound_lemma(const Mat& x);

}  // namespace bzi

#pragma once

#include "bzi/measurements.hpp"

namespace bzi {

// Outcome statistics of one POVM on one state. When a detection
// efficiency eta has been applied, every click probability carries a
// factor eta and the remaining 1 - eta sits in the no-click slot.
struct OutcomeDistribution {
    std::vector<double> probs;
    std::optional<double> eta;
    double noclick = 0.0;
};

// Born probabilities tr(M_j rho). Traces must come out real to 1e-12 and
// sum to one with the no-click mass; roundoff-negative entries are
// clamped to zero.
OutcomeDistribution probabilities(const Povm& m, const DensityOperator& rho);

// Detector inefficiency: scales clicks by eta in [0, 1] and routes 1-eta
// into the no-click outcome. Refuses to distort twice.
OutcomeDistribution distort(const OutcomeDistribution& dist, double eta);

// Index of coincidence sum_j p_j^2. The no-click outcome counts as an
// outcome by default; pass include_noclick = false for the convention
// that discards it.
double index_of_coincidence(const OutcomeDistribution& dist, bool include_noclick = true);

// Brukner-Zeilinger uncertainty 1 - sum_j p_j^2.
double bz_uncertainty(const OutcomeDistribution& dist, bool include_noclick = true);

// Shannon entropy in nats.
double shannon_entropy(const OutcomeDistribution& dist);

// Tsallis entropy (sum_j p_j^alpha - 1)/(1 - alpha) for alpha > 0; the
// alpha -> 1 limit dispatches to Shannon. Order 2 equals bz_uncertainty.
double tsallis_entropy(const OutcomeDistribution& dist, double alpha);

// Tsallis entropy of the two-point distribution (eta, 1 - eta); this is
// the additive constant in the distortion law
// H_alpha(distorted) = eta^alpha H_alpha(clean) + tsallis_binary(alpha, eta).
double tsallis_binary(double alpha, double eta);

// Invariant information of one POVM: coincidence of rho minus coincidence
// of the maximally mixed state through the same POVM.
double bz_information(const Povm& m, const DensityOperator& rho);

// Same quantity at detection efficiency eta; the reference state passes
// through the same POVM at the same eta.
double bz_information_eta(const Povm& m, const DensityOperator& rho, double eta,
                          bool include_noclick = true);

// Legacy uniform-reference form sum_j (p_j - 1/n)^2. Equals
// bz_information only for complete projective measurements; kept for
// rank-one bases without distortion and rejected when eta is set.
double bz_information_uniform(const OutcomeDistribution& dist);

// Sum of the coincidence index over every POVM of the scheme.
double coincidence_sum(const MeasurementScheme& scheme, const DensityOperator& rho);

// What the design predicts that sum to be, as a function of tr(rho^2):
//   mub:  1 + P                 sic:  (P + 1)/(d(d+1))
//   mum:  1 + (1-k+(kd-1)P)/(d-1)   gsic: ((a d^3-1)P + d(1-a d))/(d(d^2-1))
double coincidence_sum_closed_form(const MeasurementScheme& scheme, double state_purity);

// Slope of the scheme's total information in tr(rho^2) - 1/d.
double scheme_total_coefficient(const MeasurementScheme& scheme);

struct SchemeTotal {
    double measured = 0.0;   // sum of bz_information over the scheme
    double predicted = 0.0;  // coefficient * (tr(rho^2) - 1/d)
};

SchemeTotal scheme_total(const MeasurementScheme& scheme, const DensityOperator& rho);

// Distorted total; the prediction picks up a factor eta^2.
SchemeTotal scheme_total_eta(const MeasurementScheme& scheme, const DensityOperator& rho,
                             double eta, bool include_noclick = true);

struct PartialBoundResult {
    double sum = 0.0;    // sum of coincidence indices over the given POVMs
    double bound = 0.0;  // (L-1)/d + tr(rho^2), or the kappa-weighted analog
    bool holds = false;
};

// Coincidence bound for any subset of L <= d+1 mutually unbiased bases.
// The bases are re-validated (rank-one, complete, pairwise unbiased)
// before use; equality is attained at L = d+1.
PartialBoundResult partial_mub_bound_check(const std::vector<Povm>& bases,
                                           const DensityOperator& rho);

// The analogous bound for a subset of a MUM family with efficiency kappa.
PartialBoundResult partial_mum_bound_check(const std::vector<Povm>& povms, double kappa,
                                           const DensityOperator& rho);

// Two qubit states of equal purity whose Shannon entropy totals over the
// three Pauli bases differ while their invariant-information totals agree:
// the computational basis state against the state along the symmetric
// Bloch direction (1,1,1)/sqrt(3).
struct WitnessPair {
    DensityOperator state_a;
    DensityOperator state_b;
    double shannon_sum_a = 0.0;
    double shannon_sum_b = 0.0;
    double bz_total_a = 0.0;
    double bz_total_b = 0.0;
};

WitnessPair shannon_noninvariance_witness();

}  // namespace bzi

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bzi/channels.hpp"
#include "bzi/information.hpp"
#include "bzi/measurements.hpp"

namespace bzi {

// Opaque handle for a channel under test. The probe may only push states
// through the box; the Kraus operators stay hidden behind this interface.
class BlackBox {
public:
    explicit BlackBox(KrausChannel phi) : phi_(std::move(phi)) {}

    int dim() const { return phi_.dim(); }
    DensityOperator apply(const DensityOperator& rho) const { return phi_.apply(rho); }

private:
    KrausChannel phi_;
};

// Outcome counts collected by measuring a fixed state repeatedly.
struct ShotRecord {
    MeasurementScheme scheme;
    long long shots = 0;          // per POVM
    std::uint64_t seed = 0;
    std::optional<double> eta;    // when set, each row carries a final no-click count
    std::vector<std::vector<long long>> counts;  // one row per POVM
};

// Everything the probe can say about the box from counts alone.
struct ProbeReport {
    double coincidence_sum = 0.0;     // efficiency-corrected estimate
    double purity = 0.0;              // inverted estimate of tr((image of I/d)^2)
    double purity_excess = 0.0;       // purity - 1/d, reported unclamped
    double gamma_norm = 0.0;          // sqrt(max(0, purity excess))
    double map_norm_bound = 0.0;      // 1 + sqrt(d(d-1)) * gamma_norm
    double purity_stderr = 0.0;       // bootstrap, 200 resamples
    double gamma_stderr = 0.0;
    long long shots = 0;
    bool consistent = false;  // purity within 5 stderr of the feasible range
};

// One multinomial draw of n shots from the outcome distribution of the POVM
// on the state; with eta set, the no-click count is appended last.
std::vector<long long> simulate_shots(const Povm& povm, const DensityOperator& rho,
                                      long long n, Rng& rng,
                                      std::optional<double> eta = std::nullopt);

// Unbiased collision estimator sum n_j(n_j - 1) / (N(N - 1)) of the index of
// coincidence. Needs at least two shots.
double estimate_coincidence(const std::vector<long long>& counts);

// Feeds the maximally mixed state through the box once and measures the
// output with every POVM of the scheme, n shots each.
ShotRecord collect_shots(const BlackBox& box, const MeasurementScheme& scheme,
                         long long n, std::uint64_t seed,
                         std::optional<double> eta = std::nullopt);

// Validates the record, estimates the coincidence sum, inverts the scheme's
// closed form for the image purity and derives the displacement norm and the
// map-norm bound, with bootstrap standard errors. Deterministic per record.
ProbeReport report_from_shots(const ShotRecord& record);

inline ProbeReport probe_channel(const BlackBox& box, const MeasurementScheme& scheme,
                                 long long n, std::uint64_t seed,
                                 std::optional<double> eta = std::nullopt) {
    return report_from_shots(collect_shots(box, scheme, n, seed, eta));
}

}  // namespace bzi

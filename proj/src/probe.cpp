#include "bzi/probe.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "bzi/errors.hpp"

namespace bzi {

namespace {

// Multinomial draw by peeling outcomes off with conditional binomials.
std::vector<long long> multinomial(const std::vector<double>& probs, long long n,
                                   Rng& rng) {
    std::vector<long long> counts(probs.size(), 0);
    long long left = n;
    double mass = 1.0;
    for (std::size_t j = 0; j + 1 < probs.size() && left > 0; ++j) {
        const double cond = std::clamp(mass > 0.0 ? probs[j] / mass : 1.0, 0.0, 1.0);
        std::binomial_distribution<long long> draw(left, cond);
        const long long nj = draw(rng.engine());
        counts[j] = nj;
        left -= nj;
        mass -= probs[j];
    }
    if (!counts.empty()) {
        counts.back() = left;
    }
    return counts;
}

void check_record(const ShotRecord& record) {
    const MeasurementScheme& s = record.scheme;
    if (record.shots < 2) {
        throw Error("shot record needs at least two shots per POVM");
    }
    if (record.eta && !(*record.eta >= 0.0 && *record.eta <= 1.0)) {
        throw Error("recorded efficiency must lie in [0, 1]");
    }
    if (record.counts.size() != s.povms.size()) {
        throw Error("count rows do not match the scheme's POVM list");
    }
    for (std::size_t i = 0; i < record.counts.size(); ++i) {
        const std::size_t want =
            s.povms[i].elements.size() + (record.eta.has_value() ? 1 : 0);
        if (record.counts[i].size() != want) {
            throw Error("count row length does not match the POVM outcomes");
        }
        long long total = 0;
        for (long long c : record.counts[i]) {
            if (c < 0) {
                throw Error("negative outcome count");
            }
            total += c;
        }
        if (total != record.shots) {
            throw Error("outcome counts do not sum to the declared shot number");
        }
    }
    ValidationReport audit = validate_scheme(s);
    if (!audit.pass) {
        throw Error("shot record references a scheme that fails validation");
    }
}

// Corrected coincidence sum for one resample of the counts.
double corrected_sum(const std::vector<std::vector<long long>>& rows,
                     const std::optional<double>& eta) {
    double sum = 0.0;
    for (const std::vector<long long>& row : rows) {
        double c = estimate_coincidence(row);
        if (eta) {
            const double miss = 1.0 - *eta;
            c = (c - miss * miss) / (*eta * *eta);
        }
        sum += c;
    }
    return sum;
}

}  // namespace

std::vector<long long> simulate_shots(const Povm& povm, const DensityOperator& rho,
                                      long long n, Rng& rng, std::optional<double> eta) {
    if (n < 1) {
        throw std::invalid_argument("at least one shot is required");
    }
    OutcomeDistribution dist = probabilities(povm, rho);
    if (eta) {
        dist = distort(dist, *eta);
    }
    std::vector<double> probs = dist.probs;
    if (eta) {
        probs.push_back(dist.noclick);
    }
    return multinomial(probs, n, rng);
}

double estimate_coincidence(const std::vector<long long>& counts) {
    long long n = 0;
    for (long long c : counts) {
        if (c < 0) {
            throw std::invalid_argument("counts must be nonnegative");
        }
        n += c;
    }
    if (n < 2) {
        throw std::invalid_argument("the collision estimator needs at least two shots");
    }
    double collisions = 0.0;
    for (long long c : counts) {
        collisions += static_cast<double>(c) * static_cast<double>(c - 1);
    }
    return collisions / (static_cast<double>(n) * static_cast<double>(n - 1));
}

ShotRecord collect_shots(const BlackBox& box, const MeasurementScheme& scheme,
                         long long n, std::uint64_t seed, std::optional<double> eta) {
    if (box.dim() != scheme.d) {
        throw DimensionError("scheme dimension does not match the box");
    }
    DensityOperator image = box.apply(DensityOperator::maximally_mixed(box.dim()));

    ShotRecord record;
    record.scheme = scheme;
    record.shots = n;
    record.seed = seed;
    record.eta = eta;
    Rng root(seed);
    for (std::size_t i = 0; i < scheme.povms.size(); ++i) {
        Rng sub = root.derive("shots").derive(static_cast<std::uint64_t>(i));
        record.counts.push_back(simulate_shots(scheme.povms[i], image, n, sub, eta));
    }
    return record;
}

ProbeReport report_from_shots(const ShotRecord& record) {
    check_record(record);
    const MeasurementScheme& s = record.scheme;
    const int d = s.d;

    // The coincidence sum is affine in the purity; invert around the
    // maximally mixed reading.
    const double slope = scheme_total_coefficient(s);
    const double at_center = coincidence_sum_closed_form(s, 1.0 / d);
    auto invert = [&](double sum) { return 1.0 / d + (sum - at_center) / slope; };

    ProbeReport report;
    report.shots = record.shots;
    report.coincidence_sum = corrected_sum(record.counts, record.eta);
    report.purity = invert(report.coincidence_sum);
    report.purity_excess = report.purity - 1.0 / d;
    report.gamma_norm = std::sqrt(std::max(0.0, report.purity_excess));
    report.map_norm_bound = 1.0 + std::sqrt(double(d) * (d - 1)) * report.gamma_norm;

    // Bootstrap: resample every count row from its empirical frequencies.
    constexpr int kResamples = 200;
    Rng boot = Rng(record.seed).derive("bootstrap");
    std::vector<double> purities, gammas;
    purities.reserve(kResamples);
    gammas.reserve(kResamples);
    for (int r = 0; r < kResamples; ++r) {
        std::vector<std::vector<long long>> rows;
        rows.reserve(record.counts.size());
        for (const std::vector<long long>& row : record.counts) {
            std::vector<double> freq;
            freq.reserve(row.size());
            for (long long c : row) {
                freq.push_back(static_cast<double>(c) / record.shots);
            }
            rows.push_back(multinomial(freq, record.shots, boot));
        }
        const double p = invert(corrected_sum(rows, record.eta));
        purities.push_back(p);
        gammas.push_back(std::sqrt(std::max(0.0, p - 1.0 / d)));
    }
    auto stddev = [](const std::vector<double>& xs) {
        double mean = 0.0;
        for (double x : xs) mean += x;
        mean /= xs.size();
        double var = 0.0;
        for (double x : xs) var += (x - mean) * (x - mean);
        return std::sqrt(var / (xs.size() - 1));
    };
    report.purity_stderr = stddev(purities);
    report.gamma_stderr = stddev(gammas);

    const double slack = 5.0 * report.purity_stderr + 1e-12;
    report.consistent =
        report.purity >= 1.0 / d - slack && report.purity <= 1.0 + slack;
    return report;
}

}  // namespace bzi

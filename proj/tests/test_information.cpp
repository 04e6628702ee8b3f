#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bzi/information.hpp"

using namespace bzi;

namespace {

OutcomeDistribution dist_of(std::initializer_list<double> probs) {
    OutcomeDistribution d;
    d.probs = probs;
    return d;
}

DensityOperator basis_state(int d, int which) {
    Vec v = Vec::Zero(d);
    v(which) = 1.0;
    return DensityOperator::pure(v);
}

}  // namespace

TEST_CASE("born probabilities for pinned cases") {
    MeasurementScheme mubs = build_mub_set(2);
    DensityOperator zero = basis_state(2, 0);

    OutcomeDistribution pz = probabilities(mubs.povms[0], zero);
    CHECK(pz.probs[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(pz.probs[1] == doctest::Approx(0.0).epsilon(1e-14));

    // Any POVM on the maximally mixed state gives tr(M_j)/d.
    DensityOperator mm = DensityOperator::maximally_mixed(2);
    for (const Povm& m : build_sic_povm(2).povms) {
        for (double p : probabilities(m, mm).probs) {
            CHECK(p == doctest::Approx(0.25).epsilon(1e-13));
        }
    }

    CHECK_THROWS_AS(probabilities(mubs.povms[0], DensityOperator::maximally_mixed(3)),
                    DimensionError);
}

TEST_CASE("coincidence index and uncertainty for pinned distributions") {
    CHECK(index_of_coincidence(dist_of({1.0, 0.0})) == doctest::Approx(1.0));
    CHECK(index_of_coincidence(dist_of({0.25, 0.25, 0.25, 0.25})) == doctest::Approx(0.25));
    CHECK(index_of_coincidence(dist_of({0.5, 0.3, 0.2})) == doctest::Approx(0.38).epsilon(1e-14));
    CHECK(bz_uncertainty(dist_of({0.5, 0.3, 0.2})) == doctest::Approx(0.62).epsilon(1e-14));
}

TEST_CASE("entropies for pinned distributions") {
    CHECK(shannon_entropy(dist_of({1.0, 0.0})) == doctest::Approx(0.0));
    CHECK(shannon_entropy(dist_of({0.25, 0.25, 0.25, 0.25})) ==
          doctest::Approx(std::log(4.0)).epsilon(1e-14));

    // Entrywise oracle for a generic distribution.
    const double h_oracle = -(0.5 * std::log(0.5) + 0.3 * std::log(0.3) + 0.2 * std::log(0.2));
    CHECK(shannon_entropy(dist_of({0.5, 0.3, 0.2})) == doctest::Approx(h_oracle).epsilon(1e-14));

    CHECK(tsallis_entropy(dist_of({0.5, 0.3, 0.2}), 2.0) == doctest::Approx(0.62).epsilon(1e-14));
    CHECK(tsallis_entropy(dist_of({0.25, 0.25, 0.25, 0.25}), 2.0) ==
          doctest::Approx(0.75).epsilon(1e-14));

    // Order-2 Tsallis entropy is the uncertainty functional.
    OutcomeDistribution p = dist_of({0.1, 0.2, 0.3, 0.4});
    CHECK(tsallis_entropy(p, 2.0) == doctest::Approx(bz_uncertainty(p)).epsilon(1e-14));

    // Continuity at the Shannon point.
    CHECK(tsallis_entropy(p, 1.0 + 1e-9) == doctest::Approx(shannon_entropy(p)).epsilon(1e-7));

    CHECK_THROWS_AS(tsallis_entropy(p, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(tsallis_entropy(p, -1.0), std::invalid_argument);
}

TEST_CASE("distortion moves mass to the no-click outcome") {
    OutcomeDistribution base = dist_of({0.5, 0.3, 0.2});

    OutcomeDistribution half = distort(base, 0.5);
    CHECK(half.probs[0] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(half.probs[1] == doctest::Approx(0.15).epsilon(1e-14));
    CHECK(half.probs[2] == doctest::Approx(0.10).epsilon(1e-14));
    CHECK(half.noclick == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(index_of_coincidence(half) == doctest::Approx(0.345).epsilon(1e-14));
    CHECK(index_of_coincidence(half, false) == doctest::Approx(0.095).epsilon(1e-14));

    OutcomeDistribution full = distort(base, 1.0);
    CHECK(full.noclick == 0.0);
    CHECK(index_of_coincidence(full) == doctest::Approx(0.38).epsilon(1e-14));

    OutcomeDistribution dark = distort(base, 0.0);
    CHECK(index_of_coincidence(dark) == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(distort(half, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(distort(base, 1.0 + 1e-6), std::invalid_argument);
    CHECK_THROWS_AS(distort(base, -0.1), std::invalid_argument);
}

TEST_CASE("entropy distortion law across orders and efficiencies") {
    Rng rng(21);
    MeasurementScheme mubs = build_mub_set(3);
    for (int trial = 0; trial < 8; ++trial) {
        Rng sub = rng.derive(static_cast<std::uint64_t>(trial));
        DensityOperator rho =
            sample_random_state(3, trial % 2 ? StateKind::pure : StateKind::mixed, sub);
        OutcomeDistribution p = probabilities(mubs.povms[static_cast<std::size_t>(trial) % 4], rho);
        for (double eta : {0.0, 0.3, 0.8, 1.0}) {
            OutcomeDistribution q = distort(p, eta);
            for (double alpha : {0.5, 1.0, 1.5, 2.0, 3.0}) {
                const double lhs = tsallis_entropy(q, alpha);
                const double rhs =
                    std::pow(eta, alpha) * tsallis_entropy(p, alpha) + tsallis_binary(alpha, eta);
                CHECK(std::abs(lhs - rhs) < 1e-10);
            }
        }
    }
}

TEST_CASE("invariant information for pinned cases") {
    MeasurementScheme mubs = build_mub_set(2);
    DensityOperator zero = basis_state(2, 0);
    CHECK(bz_information(mubs.povms[0], zero) == doctest::Approx(0.5).epsilon(1e-13));

    MeasurementScheme sic = build_sic_povm(2);
    CHECK(bz_information(sic.povms[0], zero) == doctest::Approx(1.0 / 12.0).epsilon(1e-12));

    DensityOperator mm = DensityOperator::maximally_mixed(2);
    for (const Povm& m : mubs.povms) {
        CHECK(std::abs(bz_information(m, mm)) < 1e-14);
    }
}

TEST_CASE("legacy uniform-reference form matches on projective bases") {
    Rng rng(3);
    MeasurementScheme mubs = build_mub_set(5);
    for (int trial = 0; trial < 6; ++trial) {
        Rng sub = rng.derive(static_cast<std::uint64_t>(trial));
        DensityOperator rho = sample_random_state(5, StateKind::mixed, sub);
        for (const Povm& b : mubs.povms) {
            OutcomeDistribution p = probabilities(b, rho);
            CHECK(std::abs(bz_information_uniform(p) - bz_information(b, rho)) < 1e-13);
        }
    }
    CHECK_THROWS_AS(bz_information_uniform(distort(dist_of({0.5, 0.5}), 0.9)),
                    std::invalid_argument);
}

TEST_CASE("coincidence sums follow the design closed forms") {
    Rng rng(17);
    std::vector<MeasurementScheme> schemes;
    schemes.push_back(build_mub_set(2));
    schemes.push_back(build_mub_set(5));
    schemes.push_back(build_sic_povm(3));
    schemes.push_back(build_mum_set(3, 0.6 * mum_max_t(3)));
    schemes.push_back(build_mum_set(4));
    schemes.push_back(build_general_sic(3, 0.5 * general_sic_max_t(3)));
    schemes.push_back(build_general_sic(5));

    int label = 0;
    for (const MeasurementScheme& s : schemes) {
        for (int trial = 0; trial < 10; ++trial) {
            Rng sub = rng.derive(static_cast<std::uint64_t>(label * 100 + trial));
            DensityOperator rho =
                sample_random_state(s.d, trial % 2 ? StateKind::pure : StateKind::mixed, sub);
            const double measured = coincidence_sum(s, rho);
            const double predicted = coincidence_sum_closed_form(s, purity(rho));
            CHECK(std::abs(measured - predicted) < 1e-12);
        }
        ++label;
    }
}

TEST_CASE("scheme totals match their purity prediction and vanish at the center") {
    Rng rng(29);
    for (const MeasurementScheme& s :
         {build_mub_set(3), build_sic_povm(2), build_mum_set(5), build_general_sic(4)}) {
        for (int trial = 0; trial < 8; ++trial) {
            Rng sub = rng.derive(static_cast<std::uint64_t>(s.d * 50 + trial));
            DensityOperator rho = sample_random_state(s.d, StateKind::mixed, sub);
            SchemeTotal t = scheme_total(s, rho);
            CHECK(std::abs(t.measured - t.predicted) < 1e-12);
            CHECK(t.measured >= -1e-12);
        }
        SchemeTotal center = scheme_total(s, DensityOperator::maximally_mixed(s.d));
        CHECK(std::abs(center.measured) < 1e-13);
        CHECK(std::abs(center.predicted) < 1e-13);
    }
}

TEST_CASE("pure-state coincidence sum over a mum family reads one plus kappa") {
    Rng rng(41);
    for (int d : {2, 3, 6}) {
        for (double frac : {0.5, 1.0}) {
            MeasurementScheme s = build_mum_set(d, frac * mum_max_t(d));
            Rng sub = rng.derive(static_cast<std::uint64_t>(d * 10 + int(frac * 10)));
            DensityOperator psi = sample_random_state(d, StateKind::pure, sub);
            CHECK(coincidence_sum(s, psi) == doctest::Approx(1.0 + *s.kappa).epsilon(1e-11));
        }
    }
}

TEST_CASE("totals are invariant under a global unitary rotation") {
    Rng rng(53);
    MeasurementScheme s = build_general_sic(3);
    for (int trial = 0; trial < 5; ++trial) {
        Rng sub = rng.derive(static_cast<std::uint64_t>(trial));
        DensityOperator rho = sample_random_state(3, StateKind::mixed, sub);
        Mat u = haar_unitary(3, sub);
        DensityOperator rotated(Mat(u * rho.mat() * u.adjoint()));
        CHECK(std::abs(scheme_total(s, rho).measured - scheme_total(s, rotated).measured) <
              1e-11);
    }
}

TEST_CASE("distorted totals scale with the square of the efficiency") {
    Rng rng(61);
    for (const MeasurementScheme& s :
         {build_mub_set(2), build_sic_povm(3), build_mum_set(3), build_general_sic(2)}) {
        Rng sub = rng.derive(static_cast<std::uint64_t>(s.d + 7 * static_cast<int>(s.variant)));
        DensityOperator rho = sample_random_state(s.d, StateKind::mixed, sub);
        const double clean = scheme_total(s, rho).measured;
        for (double eta : {0.0, 0.25, 0.7, 1.0}) {
            SchemeTotal t = scheme_total_eta(s, rho, eta);
            CHECK(std::abs(t.measured - eta * eta * clean) < 1e-12);
            CHECK(std::abs(t.measured - t.predicted) < 1e-12);

            // Dropping the no-click outcome cannot change the difference:
            // its contribution is the same for the state and the reference.
            SchemeTotal without = scheme_total_eta(s, rho, eta, false);
            CHECK(std::abs(without.measured - t.measured) < 1e-13);
        }
    }
}

TEST_CASE("partial unbiased-basis bound holds and saturates at the full set") {
    Rng rng(71);
    MeasurementScheme mubs = build_mub_set(5);
    for (int trial = 0; trial < 6; ++trial) {
        Rng sub = rng.derive(static_cast<std::uint64_t>(trial));
        DensityOperator rho =
            sample_random_state(5, trial % 2 ? StateKind::pure : StateKind::mixed, sub);

        for (std::size_t l : {std::size_t(1), std::size_t(3), std::size_t(6)}) {
            std::vector<Povm> subset(mubs.povms.begin(),
                                     mubs.povms.begin() + static_cast<std::ptrdiff_t>(l));
            PartialBoundResult r = partial_mub_bound_check(subset, rho);
            CHECK(r.holds);
            if (l == 6) {
                CHECK(r.sum == doctest::Approx(r.bound).epsilon(1e-11));
            }
        }
    }

    // Two copies of one basis are maximally biased; the check refuses them.
    std::vector<Povm> twice = {mubs.povms[0], mubs.povms[0]};
    CHECK_THROWS_AS(partial_mub_bound_check(twice, DensityOperator::maximally_mixed(5)),
                    std::invalid_argument);
}

TEST_CASE("partial mum bound holds and saturates at the full family") {
    Rng rng(83);
    MeasurementScheme s = build_mum_set(3, 0.7 * mum_max_t(3));
    DensityOperator rho = sample_random_state(3, StateKind::mixed, rng);

    std::vector<Povm> two(s.povms.begin(), s.povms.begin() + 2);
    PartialBoundResult partial = partial_mum_bound_check(two, *s.kappa, rho);
    CHECK(partial.holds);

    PartialBoundResult full = partial_mum_bound_check(s.povms, *s.kappa, rho);
    CHECK(full.holds);
    CHECK(full.sum == doctest::Approx(full.bound).epsilon(1e-11));

    CHECK_THROWS_AS(partial_mum_bound_check(two, 0.2, rho), std::invalid_argument);
}

TEST_CASE("shannon totals separate states that invariant totals cannot") {
    WitnessPair w = shannon_noninvariance_witness();

    CHECK(w.shannon_sum_a == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));

    // Direct oracle: three binary entropies at p = 1/2 + 1/(2 sqrt 3).
    const double p = 0.5 + 0.5 / std::sqrt(3.0);
    const double h3 = -3.0 * (p * std::log(p) + (1.0 - p) * std::log(1.0 - p));
    CHECK(w.shannon_sum_b == doctest::Approx(h3).epsilon(1e-12));
    CHECK(w.shannon_sum_b == doctest::Approx(1.547120209390663).epsilon(1e-12));

    CHECK(w.shannon_sum_b - w.shannon_sum_a > 0.1);
    CHECK(std::abs(w.bz_total_a - w.bz_total_b) < 1e-10);
    CHECK(w.bz_total_a == doctest::Approx(0.5).epsilon(1e-12));
}

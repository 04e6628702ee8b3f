#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bzi/channels.hpp"
#include "bzi/errors.hpp"

using namespace bzi;

namespace {

DensityOperator basis_state(int d, int which) {
    Vec v = Vec::Zero(d);
    v(which) = 1.0;
    return DensityOperator::pure(v);
}

}  // namespace

TEST_CASE("construction validates closure of the Kraus family") {
    KrausChannel id({Mat::Identity(2, 2)});
    CHECK(id.dim() == 2);
    CHECK(id.completeness_defect() < 1e-15);
    CHECK(id.is_bistochastic());

    CHECK_THROWS_AS(KrausChannel({0.5 * Mat::Identity(2, 2)}), Error);
    CHECK_THROWS_AS(KrausChannel(std::vector<Mat>{}), std::invalid_argument);
    CHECK_THROWS_AS(KrausChannel({Mat::Identity(2, 2), Mat::Identity(3, 3)}),
                    DimensionError);

    // The unchecked path carries the defect instead of rejecting it.
    KrausChannel leaky = KrausChannel::unchecked({0.5 * Mat::Identity(2, 2)});
    CHECK(leaky.completeness_defect() == doctest::Approx(0.75).epsilon(1e-14));
    CHECK_FALSE(leaky.is_trace_preserving());
    CHECK_THROWS_AS(leaky.apply(DensityOperator::maximally_mixed(2)), Error);
}

TEST_CASE("pinned channel actions") {
    Rng rng(7);
    DensityOperator rho = sample_random_state(3, StateKind::mixed, rng);

    // Identity channel leaves states alone.
    KrausChannel id({Mat::Identity(3, 3)});
    CHECK((id.apply(rho).mat() - rho.mat()).norm() < 1e-14);

    // Fully mixing channel lands on I/d regardless of input.
    KrausChannel mix = depolarizing_channel(3, 0.0);
    CHECK((mix.apply(rho).mat() - Mat::Identity(3, 3) / 3.0).norm() < 1e-13);

    // Unit-weight depolarizing acts as the identity.
    KrausChannel none = depolarizing_channel(3, 1.0);
    CHECK((none.apply(rho).mat() - rho.mat()).norm() < 1e-14);

    // Intermediate weight interpolates linearly.
    KrausChannel half = depolarizing_channel(2, 0.5);
    Mat expected = 0.5 * basis_state(2, 0).mat() + 0.25 * Mat::Identity(2, 2);
    CHECK((half.apply(basis_state(2, 0)).mat() - expected).norm() < 1e-14);

    // The contraction pushes everything onto one basis state.
    KrausChannel crush = contraction_channel(3, 1);
    CHECK((crush.apply(rho).mat() - basis_state(3, 1).mat()).norm() < 1e-14);

    CHECK_THROWS_AS(id.apply(DensityOperator::maximally_mixed(2)), DimensionError);
    CHECK_THROWS_AS(depolarizing_channel(2, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(depolarizing_channel(2, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(contraction_channel(3, 3), std::invalid_argument);
}

TEST_CASE("heisenberg action is dual to the schroedinger action") {
    Rng rng(11);
    KrausChannel phi = sample_generic_channel(3, rng);
    for (int trial = 0; trial < 20; ++trial) {
        Rng sub = rng.derive(static_cast<std::uint64_t>(trial));
        Mat x = ginibre(3, 3, sub);
        Mat y = ginibre(3, 3, sub);
        Complex lhs = hs_inner(phi.apply_matrix(x), y);
        Complex rhs = hs_inner(x, phi.adjoint_apply(y));
        CHECK(std::abs(lhs - rhs) < 1e-10);
    }
}

TEST_CASE("adjoint of a unital channel is again a channel") {
    Rng rng(13);

    Mat u = haar_unitary(3, rng);
    KrausChannel rot({u});
    KrausChannel back = adjoint_channel(rot);
    DensityOperator rho = sample_random_state(3, StateKind::pure, rng);
    CHECK((back.apply(rot.apply(rho)).mat() - rho.mat()).norm() < 1e-13);

    KrausChannel bis = sample_bistochastic_channel(3, rng);
    CHECK(adjoint_channel(bis).is_trace_preserving());

    KrausChannel skew = sample_generic_channel(3, rng);
    CHECK_THROWS_AS(adjoint_channel(skew), std::invalid_argument);
}

TEST_CASE("unitality predicates for pinned families") {
    Rng rng(17);

    CHECK(sample_bistochastic_channel(2, rng).is_bistochastic());
    CHECK(depolarizing_channel(4, 0.3).is_bistochastic());

    KrausChannel crush = contraction_channel(3, 0);
    CHECK(crush.is_trace_preserving());
    CHECK_FALSE(crush.is_unital());
    // The Heisenberg image of the identity concentrates all weight on the
    // target: sum K K(dagger) = d |target><target|.
    Mat img = Mat::Zero(3, 3);
    for (const Mat& k : crush.kraus()) {
        img += k * k.adjoint();
    }
    CHECK((img - 3.0 * basis_state(3, 0).mat()).norm() < 1e-14);

    KrausChannel generic = sample_generic_channel(3, rng);
    CHECK(generic.is_trace_preserving());
    CHECK_FALSE(generic.is_unital());
}

TEST_CASE("samplers are deterministic in the seed and trace preserving") {
    for (int d : {2, 3, 4}) {
        Rng a(99), b(99), c(100);
        KrausChannel ka = sample_generic_channel(d, a);
        KrausChannel kb = sample_generic_channel(d, b);
        KrausChannel kc = sample_generic_channel(d, c);
        REQUIRE(ka.kraus().size() == kb.kraus().size());
        for (std::size_t i = 0; i < ka.kraus().size(); ++i) {
            CHECK(ka.kraus()[i] == kb.kraus()[i]);
        }
        CHECK((ka.kraus()[0] - kc.kraus()[0]).norm() > 1e-6);
        CHECK(ka.completeness_defect() < 1e-12);

        Rng r(5);
        CHECK(sample_bistochastic_channel(d, r).completeness_defect() < 1e-12);
        CHECK(depolarizing_channel(d, 0.7).completeness_defect() < 1e-13);
        CHECK(contraction_channel(d).completeness_defect() < 1e-15);
    }
}

TEST_CASE("divergence for pinned pairs") {
    Rng rng(23);

    // Self-divergence vanishes at every order.
    DensityOperator rho = sample_random_state(3, StateKind::mixed, rng);
    for (double a : {0.5, 1.0, 1.5, 2.0}) {
        CHECK(std::abs(tsallis_divergence(rho, rho, a)) < 1e-12);
    }

    // Order two against the center reduces to a purity reading.
    DensityOperator center = DensityOperator::maximally_mixed(3);
    CHECK(tsallis_divergence(rho, center, 2.0) ==
          doctest::Approx(3.0 * purity(rho) - 1.0).epsilon(1e-12));

    // Relative entropy of a pinned diagonal pair.
    Mat diag = Mat::Zero(2, 2);
    diag(0, 0) = 0.75;
    diag(1, 1) = 0.25;
    CHECK(tsallis_divergence(DensityOperator(diag), DensityOperator::maximally_mixed(2),
                             1.0) == doctest::Approx(0.13081203594113697).epsilon(1e-13));

    // Support violations blow up at order >= 1 but stay finite below it.
    DensityOperator e0 = basis_state(2, 0);
    DensityOperator e1 = basis_state(2, 1);
    CHECK(tsallis_divergence(e0, e1, 2.0) == kInf);
    CHECK(tsallis_divergence(e0, e1, 1.0) == kInf);
    CHECK(tsallis_divergence(e0, e1, 0.5) == doctest::Approx(2.0).epsilon(1e-12));

    // Nonnegative over random pairs.
    for (int trial = 0; trial < 10; ++trial) {
        Rng sub = rng.derive(static_cast<std::uint64_t>(trial));
        DensityOperator a = sample_random_state(2, StateKind::mixed, sub);
        DensityOperator b = sample_random_state(2, StateKind::mixed, sub);
        for (double alpha : {0.5, 1.0, 1.7, 2.0}) {
            CHECK(tsallis_divergence(a, b, alpha) >= -1e-10);
        }
    }

    CHECK_THROWS_AS(tsallis_divergence(rho, rho, 2.5), std::invalid_argument);
    CHECK_THROWS_AS(tsallis_divergence(rho, rho, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(tsallis_divergence(rho, center, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(tsallis_divergence(rho, DensityOperator::maximally_mixed(2), 2.0),
                    DimensionError);
}

TEST_CASE("purity excess and its divergence reading agree") {
    Rng rng(29);
    CHECK(std::abs(purity_excess(DensityOperator::maximally_mixed(5))) < 1e-14);
    CHECK(purity_excess(basis_state(4, 2)) == doctest::Approx(0.75).epsilon(1e-14));

    DensityOperator rho = sample_random_state(4, StateKind::mixed, rng);
    const double link =
        tsallis_divergence(rho, DensityOperator::maximally_mixed(4), 2.0) / 4.0;
    CHECK(std::abs(purity_excess(rho) - link) < 1e-12);
}

TEST_CASE("bistochastic maps never gain purity or divergence") {
    Rng rng(31);

    // Unitary rotation: equality.
    DensityOperator rho = sample_random_state(3, StateKind::mixed, rng);
    KrausChannel rot({haar_unitary(3, rng)});
    MonotonicityReport eq = monotonicity_check(rot, rho);
    CHECK(eq.holds);
    CHECK(eq.after == doctest::Approx(eq.before).epsilon(1e-12));

    // Depolarizing mixing scales the excess by the square of the weight.
    KrausChannel half = depolarizing_channel(3, 0.6);
    MonotonicityReport dep = monotonicity_check(half, rho);
    CHECK(dep.holds);
    CHECK(dep.after == doctest::Approx(0.36 * dep.before).epsilon(1e-10));

    // Random sweep.
    for (int d : {2, 3}) {
        for (int trial = 0; trial < 25; ++trial) {
            Rng sub = rng.derive(static_cast<std::uint64_t>(d * 1000 + trial));
            KrausChannel phi = sample_bistochastic_channel(d, sub);
            DensityOperator state = sample_random_state(
                d, trial % 2 ? StateKind::pure : StateKind::mixed, sub);
            MonotonicityReport r = monotonicity_check(phi, state);
            CHECK(r.holds);
            CHECK(r.alphas.size() == 4);
        }
    }

    KrausChannel skew = sample_generic_channel(2, rng);
    CHECK_THROWS_AS(monotonicity_check(skew, sample_random_state(2, StateKind::mixed, rng)),
                    std::invalid_argument);
}

TEST_CASE("fixed-point displacement reports for pinned channels") {
    Rng rng(37);

    // Bistochastic: no displacement, both norms saturate trivially.
    NonUnitalityReport same = non_unitality(sample_bistochastic_channel(3, rng));
    CHECK(same.hs_norm < 1e-10);
    CHECK(same.map_norm == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(same.bound == doctest::Approx(1.0).epsilon(1e-9));

    // Contraction: the displacement is maximal and the bound is tight.
    NonUnitalityReport crush = non_unitality(contraction_channel(3));
    CHECK(crush.hs_norm == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));
    CHECK(crush.map_norm == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(crush.bound == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(std::abs(crush.gamma.mat().trace().real()) < 1e-12);

    // The image purity excess reaches its ceiling for every dimension.
    for (int d : {2, 4, 5}) {
        KrausChannel c = contraction_channel(d);
        DensityOperator img = c.apply(DensityOperator::maximally_mixed(d));
        CHECK(purity_excess(img) == doctest::Approx(1.0 - 1.0 / d).epsilon(1e-12));
    }

    // Generic channels obey the bound.
    for (int trial = 0; trial < 20; ++trial) {
        Rng sub = rng.derive(static_cast<std::uint64_t>(trial));
        NonUnitalityReport r = non_unitality(sample_generic_channel(2 + trial % 3, sub));
        CHECK(r.map_norm <= r.bound + 1e-9);
        CHECK(std::abs(r.gamma.mat().trace().real()) < 1e-10);
    }

    CHECK_THROWS_AS(non_unitality(KrausChannel::unchecked({0.9 * Mat::Identity(2, 2)})),
                    std::invalid_argument);
}

TEST_CASE("spectral bound lemma for positive semidefinite matrices") {
    // Rank-one projector: exact equality.
    Mat proj = Mat::Zero(3, 3);
    proj(0, 0) = 1.0;
    NormBoundResult tight = norm_bound_lemma(proj);
    CHECK(tight.holds);
    CHECK(tight.sup_norm == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(tight.bound == doctest::Approx(1.0).epsilon(1e-12));

    // Generic spectrum: strict slack.
    Mat diag = Mat::Zero(3, 3);
    diag(0, 0) = 0.5;
    diag(1, 1) = 0.3;
    diag(2, 2) = 0.2;
    NormBoundResult r = norm_bound_lemma(diag);
    CHECK(r.holds);
    CHECK(r.sup_norm == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(r.bound == doctest::Approx(0.5097167540709728).epsilon(1e-12));

    // Random PSD matrices stay inside the bound.
    Rng rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        Rng sub = rng.derive(static_cast<std::uint64_t>(trial));
        Mat g = ginibre(4, 4, sub);
        CHECK(norm_bound_lemma(Mat(g * g.adjoint())).holds);
    }

    Mat indef = Mat::Zero(2, 2);
    indef(0, 0) = 1.0;
    indef(1, 1) = -0.5;
    CHECK_THROWS_AS(norm_bound_lemma(indef), std::invalid_argument);
    Mat skew = Mat::Zero(2, 2);
    skew(0, 1) = 1.0;
    CHECK_THROWS_AS(norm_bound_lemma(skew), std::invalid_argument);
}

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bzi/operator_core.hpp"

namespace bzi {

enum class SchemeVariant { mub, sic, mum, gsic };

std::string variant_name(SchemeVariant v);
SchemeVariant variant_from_name(const std::string& name);

// One positive operator-valued measure: elements sum to the identity.
// Kept as a plain aggregate so schemes loaded from disk can be inspected
// by validate_scheme even when they are numerically broken; the builders
// below always produce elements satisfying the POVM conditions to 1e-12.
struct Povm {
    int d = 0;
    std::string label;
    std::vector<HermitianOperator> elements;
};

// A family of POVMs of one of the four supported designs, together with
// the design parameter that fixes its coincidence closed form (kappa for
// MUM families, the self-product a for general SICs).
struct MeasurementScheme {
    SchemeVariant variant = SchemeVariant::mub;
    int d = 0;
    std::vector<Povm> povms;
    std::optional<double> kappa;
    std::optional<double> a_param;
};

bool is_prime(int n);

// Full set of d+1 mutually unbiased bases for prime d in [2, 31]. Basis 0
// is computational; for odd primes basis r has vectors with components
// omega^(r k^2 + j k)/sqrt(d) (quadratic Gauss-sum construction); d = 2
// uses the three Pauli eigenbases. Non-prime or out-of-range d throws
// UnsupportedError.
MeasurementScheme build_mub_set(int d);

// Symmetric informationally complete POVM from the known fiducials
// (d = 2: Bloch vector (1,1,1)/sqrt(3); d = 3: (0,1,-1)/sqrt(2)), expanded
// through the Weyl-Heisenberg orbit. Other d throw UnsupportedError; use
// optimize_sic_fiducial to search for a fiducial first.
MeasurementScheme build_sic_povm(int d);

// Weyl-Heisenberg orbit POVM (1/d)|W_m phi><W_m phi| of an arbitrary unit
// fiducial. Completeness holds for any fiducial; the SIC overlap
// conditions hold only for genuine SIC fiducials, which validate_scheme
// will confirm or refute.
MeasurementScheme build_sic_povm(int d, const Vec& fiducial);

struct SicSearchResult {
    Vec fiducial;
    double frame_potential = 0.0;  // sum_{j,k} |<phi_j|phi_k>|^4 over the orbit
    double target = 0.0;           // 2 d^3 / (d+1), attained exactly by SICs
    bool success = false;          // frame_potential within 1e-8 of target
    int restarts_used = 0;
    long iterations = 0;
    double grad_norm = 0.0;
};

// Projected gradient descent on the frame potential over unit fiducials,
// restarted from random starts until the SIC minimum is found or restarts
// are exhausted. Supported for 2 <= d <= 8.
SicSearchResult optimize_sic_fiducial(int d, std::uint64_t seed, int max_restarts = 60,
                                      long max_iters = 20000);

// d+1 mutually unbiased measurements of efficiency kappa(t), built from a
// partition of the generalized Gell-Mann basis into d+1 groups of d-1.
// t = nullopt selects the largest t allowed by positivity; t outside
// (0, t_max] is rejected (FeasibilityError carries t_max).
MeasurementScheme build_mum_set(int d, std::optional<double> t = std::nullopt);
double mum_max_t(int d);
double mum_kappa(int d, double t);

// General SIC with d^2 trace-1/d elements and tunable self-product a(t),
// built from the full Gell-Mann basis. Same t conventions as build_mum_set.
MeasurementScheme build_general_sic(int d, std::optional<double> t = std::nullopt);
double general_sic_max_t(int d);
double general_sic_a(int d, double t);

// Orthonormal traceless Hermitian basis of su(d): symmetric pairs, then
// antisymmetric pairs, then diagonal matrices; tr(F_a F_b) = delta_ab.
std::vector<Mat> gell_mann_basis(int d);

// Cyclic shift X, phase Z, and the d^2 displacement operators X^p Z^q
// listed in (p, q) row-major order.
Mat shift_matrix(int d);
Mat clock_matrix(int d);
std::vector<Mat> weyl_heisenberg(int d);

struct CheckResult {
    std::string name;
    double max_deviation = 0.0;
    bool pass = false;
};

struct ValidationReport {
    SchemeVariant variant = SchemeVariant::mub;
    int d = 0;
    bool pass = false;
    std::vector<CheckResult> checks;
};

// Numeric audit of a scheme against its design conditions: completeness
// and positivity always; trace, Gram, overlap, and parameter-range checks
// per variant. Never throws on bad numbers -- that is the point.
ValidationReport validate_scheme(const MeasurementScheme& scheme,
                                 double tolerance = tol::scheme_check);

}  // namespace bzi

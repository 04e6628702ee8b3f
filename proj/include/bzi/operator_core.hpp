#pragma once

#include <complex>
#include <limits>

#include <Eigen/Dense>

#include "bzi/errors.hpp"
#include "bzi/rng.hpp"

namespace bzi {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Numerical tolerances used across the library. Construction-level checks
// are tight (1e-12); checks that accumulate roundoff over many operations
// get progressively looser.
namespace tol {
inline constexpr double hermiticity = 1e-12;
inline constexpr double trace_one = 1e-12;
inline constexpr double construction = 1e-12;
inline constexpr double eigen_clamp = 1e-10;
inline constexpr double reconstruction = 1e-10;
inline constexpr double scheme_check = 1e-9;
inline constexpr double channel = 1e-10;
}  // namespace tol

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Spectral decomposition H = V diag(values) V^dagger with eigenvalues
// sorted ascending and orthonormal eigenvector columns.
struct EigenSystem {
    Eigen::VectorXd values;
    Mat vectors;
};

// Hermitian eigensolver (cyclic Jacobi with complex rotations). Accepts any
// square matrix that is Hermitian within tol::hermiticity and works on the
// symmetrized part. Converges when the off-diagonal Frobenius mass drops
// below 1e-13 (relative to the matrix scale); throws ConvergenceError after
// 100*d^2 sweeps, which no sane input reaches.
EigenSystem eigendecompose(const Mat& h);

// Hermitian matrix, symmetrized at construction. Rejects inputs that are
// not square, smaller than 2x2, or farther than tol::hermiticity from
// their own adjoint (max-entry norm).
class HermitianOperator {
  public:
    explicit HermitianOperator(const Mat& m);

    const Mat& mat() const { return m_; }
    int dim() const { return static_cast<int>(m_.rows()); }

  private:
    Mat m_;
};

// Unit-trace positive semidefinite operator. The spectral decomposition is
// computed once at construction (it both enforces positivity and is reused
// by entropy/divergence code). Eigenvalues in [-1e-10, 0) are clamped to
// zero and the state renormalized; anything more negative is rejected.
class DensityOperator {
  public:
    explicit DensityOperator(const Mat& m);

    static DensityOperator maximally_mixed(int d);
    static DensityOperator pure(const Vec& psi);  // normalizes psi

    const Mat& mat() const { return m_; }
    int dim() const { return static_cast<int>(m_.rows()); }
    const EigenSystem& eigen() const { return eig_; }

  private:
    DensityOperator(Mat m, EigenSystem eig) : m_(std::move(m)), eig_(std::move(eig)) {}

    Mat m_;
    EigenSystem eig_;
};

// Hilbert-Schmidt inner product tr(X^dagger Y). Operands must be square
// and of equal dimension.
Complex hs_inner(const Mat& x, const Mat& y);

// tr(rho^2); equals the squared Frobenius norm for Hermitian rho.
double purity(const DensityOperator& rho);

// Schatten q-norm for q in [1, inf] (pass kInf for the spectral norm).
// Singular values come from the Hermitian eigensolver: |eigenvalues| when
// x is Hermitian, sqrt(eig(x^dagger x)) otherwise. q < 1 is rejected.
double schatten_norm(const Mat& x, double q);

inline double spectral_norm(const Mat& x) { return schatten_norm(x, kInf); }

enum class StateKind { pure, mixed };

// Random states: pure draws |psi><psi| with |psi> a normalized vector of
// i.i.d. complex Gaussians (Haar on the sphere); mixed draws G G^dagger
// normalized to unit trace (Hilbert-Schmidt measure), G a d x d Ginibre
// matrix.
DensityOperator sample_random_state(int d, StateKind kind, Rng& rng);

// Matrix of i.i.d. standard complex Gaussian entries.
Mat ginibre(int rows, int cols, Rng& rng);

// Normalized random vector, uniform on the unit sphere of C^d.
Vec random_unit_vector(int d, Rng& rng);

// Haar-distributed unitary via QR of a Ginibre matrix with the phase fix
// that makes the distribution translation invariant.
Mat haar_unitary(int d, Rng& rng);

}  // namespace bzi

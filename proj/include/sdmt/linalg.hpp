#pragma once

#include <Eigen/Dense>

#include "sdmt/rng.hpp"

namespace sdmt {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Eigendecomposition A = V diag(lambda) V^H of a Hermitian matrix,
/// eigenvalues sorted descending, V unitary.
struct HermitianEig {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;
};

/// Compact SVD a = U diag(sigma) V^H, singular values descending.
struct Svd {
  ComplexMatrix u;
  RealVector singular_values;
  ComplexMatrix v;
};

/// Matrix with i.i.d. circularly symmetric complex Gaussian entries of unit
/// variance (real and imaginary parts each N(0, 1/2)).
ComplexMatrix sample_ginibre(Eigen::Index rows, Eigen::Index cols,
                             PhiloxRng& rng);

/// Haar-distributed point on the standard complex Stiefel manifold
/// { F in C^{k x n} : F F^H = I_k }, k <= n.
///
/// Built by QR-orthonormalizing a Ginibre draw and normalizing the phases of
/// the R factor's diagonal to be real-positive; without the phase fix the
/// result is not unitarily invariant.
ComplexMatrix haar_stiefel(Eigen::Index k, Eigen::Index n, PhiloxRng& rng);

Svd svd(const ComplexMatrix& a);

/// Requires the input to be Hermitian to 1e-12 (relative Frobenius);
/// symmetrizes internally before decomposing.
HermitianEig hermitian_eig(const ComplexMatrix& a);

bool all_finite(const ComplexMatrix& a);

}  // namespace sdmt

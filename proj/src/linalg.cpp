#include "sdmt/linalg.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "sdmt/errors.hpp"

namespace sdmt {

ComplexMatrix sample_ginibre(Eigen::Index rows, Eigen::Index cols,
                             PhiloxRng& rng) {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("sample_ginibre: dimensions must be >= 1");
  }
  ComplexMatrix g(rows, cols);
  // Row-major fill so the draw order matches the logical entry order.
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      g(i, j) = rng.complex_gaussian();
    }
  }
  return g;
}

ComplexMatrix haar_stiefel(Eigen::Index k, Eigen::Index n, PhiloxRng& rng) {
  if (k < 1 || n < 1 || k > n) {
    throw std::invalid_argument("haar_stiefel: requires 1 <= k <= n");
  }
  const ComplexMatrix g = sample_ginibre(k, n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g.adjoint());  // n x k
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, k);
  const ComplexMatrix r =
      qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  // Fix the gauge: multiply each column of Q by the phase of the matching
  // R diagonal so the (unique) factorization has a real-positive diagonal.
  for (Eigen::Index j = 0; j < k; ++j) {
    const std::complex<double> d = r(j, j);
    const double mag = std::abs(d);
    const std::complex<double> phase = mag > 0.0 ? d / mag : 1.0;
    q.col(j) *= phase;
  }
  return q.adjoint();
}

Svd svd(const ComplexMatrix& a) {
  if (!all_finite(a)) {
    throw std::invalid_argument("svd: input has non-finite entries");
  }
  Eigen::JacobiSVD<ComplexMatrix> solver(
      a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (solver.info() != Eigen::Success) {
    throw DecompositionError("svd: iteration did not converge");
  }
  return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

HermitianEig hermitian_eig(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("hermitian_eig: matrix must be square");
  }
  if (!all_finite(a)) {
    throw std::invalid_argument("hermitian_eig: input has non-finite entries");
  }
  const double scale = std::max(1.0, a.norm());
  if ((a - a.adjoint()).norm() > 1e-12 * scale) {
    throw std::invalid_argument(
        "hermitian_eig: input is not Hermitian within 1e-12");
  }
  const ComplexMatrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw DecompositionError("hermitian_eig: iteration did not converge");
  }
  // Eigen returns ascending order; flip to descending.
  HermitianEig out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

bool all_finite(const ComplexMatrix& a) {
  return a.allFinite();
}

}  // namespace sdmt

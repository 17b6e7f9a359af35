#pragma once

#include <span>
#include <vector>

#include "sdmt/linalg.hpp"
#include "sdmt/rng.hpp"

namespace sdmt {

/// Generalized complex Stiefel manifold { X in C^{k x n} : X X^H = A } for a
/// Hermitian PSD shape matrix A.  A = I_k recovers the standard Stiefel
/// manifold; k = n with A = I is the unitary group.
class GeneralizedStiefel {
 public:
  /// General Hermitian PSD shape.  Zero eigenvalues of A are stripped: the
  /// manifold is the rank-sized one embedded through the eigenbasis of A.
  static GeneralizedStiefel from_shape(const ComplexMatrix& a, Eigen::Index n);

  /// Diagonal shape A = diag(sigma_i^2) from positive scales sigma.
  static GeneralizedStiefel from_sigma(std::vector<double> sigma,
                                       Eigen::Index n);

  Eigen::Index k() const { return k_; }
  Eigen::Index n() const { return n_; }
  Eigen::Index rank() const { return static_cast<Eigen::Index>(sigma_.size()); }
  Eigen::Index real_dimension() const { return rank() * (2 * n_ - rank()); }

  /// Positive square roots of the nonzero eigenvalues of A, descending.
  const std::vector<double>& sigma() const { return sigma_; }
  double sigma_min() const { return sigma_.back(); }

  const ComplexMatrix& shape() const { return shape_; }
  /// Unitary eigenbasis of A, columns ordered to match sigma() (then the
  /// null-space columns, if any).
  const ComplexMatrix& eigenbasis() const { return basis_; }

 private:
  GeneralizedStiefel(Eigen::Index k, Eigen::Index n, std::vector<double> sigma,
                     ComplexMatrix shape, ComplexMatrix basis);

  Eigen::Index k_;
  Eigen::Index n_;
  std::vector<double> sigma_;
  ComplexMatrix shape_;
  ComplexMatrix basis_;
};

/// Curvature/radius bounds and log-volume of a manifold with sigma_min > 0.
struct GeometryReport {
  double max_second_fundamental_form;  // sup over unit tangents, = 1/sigma_min
  double tube_radius_lower;            // uniform tubular radius >= sigma_min
  double injectivity_radius_lower;     // >= pi * sigma_min
  double c_bound;                      // max of |II| and the reciprocal radii
  double log_volume;                   // natural log
};

struct EntropyApprox {
  double approx;             // nats
  double error_bound_shape;  // bound is (unknown manifold constant) x shape
};

/// The receive-side manifold at a given SNR: rows scale as
/// sqrt(t/m_tx) * snr^(0.5 - alpha_i), keeping only the dominant exponents
/// alpha_i < 0.5 (alpha ascending).  Throws if no dimension is dominant.
GeneralizedStiefel make_snr_manifold(Eigen::Index t, Eigen::Index m_tx,
                                     std::span<const double> alpha,
                                     double snr);

/// Uniform (Haar) draw: X = A^{1/2} F with F Haar on the standard Stiefel
/// manifold of the same rank, embedded through the eigenbasis of A.
/// Satisfies X X^H = A exactly (to rounding) on every draw.
ComplexMatrix uniform_sample(const GeneralizedStiefel& m, PhiloxRng& rng);

/// Natural log of the Euclidean volume:
///   2^{-m(m-1)/2} prod_{i<j} (sigma_i^2 + sigma_j^2)
///     * prod_i sigma_i^{2n - 2m + 1} * prod_{i=n-m+1}^{n} 2 pi^i / (i-1)!
/// with m = rank.
double log_volume(const GeneralizedStiefel& m);

GeometryReport geometry_bounds(const GeneralizedStiefel& m);

/// |II_S(Delta, Delta)| for a unit tangent Delta at a base point on the
/// manifold, evaluated in the canonical frame S = (Sigma, 0).  Violated
/// preconditions raise an error naming the constraint.
double second_fundamental_form(const GeneralizedStiefel& m,
                               const ComplexMatrix& base,
                               const ComplexMatrix& tangent);

/// Entropy of the manifold-plus-noise variable, approximated as
/// (rank^2 / 2) ln(pi e) + log_volume.  The error bound of the tube-theoretic
/// entropy estimate is (unknown constant) x shape with
///   shape = delta^{-1} (1 + c sqrt(snr))^delta c^2 ln^2(c),  c = 1/sigma_min;
/// the constant depends only on (rank, n) and is surfaced, never guessed.
EntropyApprox entropy_approximation(const GeneralizedStiefel& m, double delta,
                                    double snr);

}  // namespace sdmt

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "sdmt/errors.hpp"
#include "sdmt/linalg.hpp"
#include "sdmt/rng.hpp"
#include "support/stats.hpp"

using namespace sdmt;

TEST_CASE("ginibre entries: scalar moments over many draws") {
  PhiloxRng rng(11);
  const int n = 1000000;
  std::complex<double> mean = 0.0;
  double power = 0.0;
  for (int i = 0; i < n; ++i) {
    const ComplexMatrix z = sample_ginibre(1, 1, rng);
    mean += z(0, 0);
    power += std::norm(z(0, 0));
  }
  mean /= static_cast<double>(n);
  power /= static_cast<double>(n);
  CHECK(std::abs(mean) < 0.005);
  CHECK(std::abs(power - 1.0) < 0.005);
}

TEST_CASE("ginibre shape and finiteness") {
  PhiloxRng rng(12);
  const ComplexMatrix g = sample_ginibre(2, 3, rng);
  CHECK(g.rows() == 2);
  CHECK(g.cols() == 3);
  CHECK(all_finite(g));
  CHECK_THROWS_AS(sample_ginibre(0, 3, rng), std::invalid_argument);
}

TEST_CASE("ginibre sample covariance approaches cols * I") {
  PhiloxRng rng(13);
  const int n = 100000;
  ComplexMatrix acc = ComplexMatrix::Zero(3, 3);
  for (int i = 0; i < n; ++i) {
    const ComplexMatrix h = sample_ginibre(3, 3, rng);
    acc += h * h.adjoint();
  }
  acc /= static_cast<double>(n);
  const ComplexMatrix target = 3.0 * ComplexMatrix::Identity(3, 3);
  CHECK((acc - target).norm() < 0.05 * target.norm());
}

TEST_CASE("haar_stiefel satisfies F F^H = I") {
  PhiloxRng rng(14);
  const ComplexMatrix f = haar_stiefel(2, 4, rng);
  CHECK((f * f.adjoint() - ComplexMatrix::Identity(2, 2)).norm() < 1e-10);
  CHECK_THROWS_AS(haar_stiefel(5, 4, rng), std::invalid_argument);
}

TEST_CASE("haar on U(1) is a uniform phase") {
  PhiloxRng rng(15);
  const int n = 100000;
  const int bins = 36;
  std::vector<long long> counts(bins, 0);
  for (int i = 0; i < n; ++i) {
    const ComplexMatrix f = haar_stiefel(1, 1, rng);
    CHECK(std::abs(std::abs(f(0, 0)) - 1.0) < 1e-12);
    const double phase = std::arg(f(0, 0)) + std::numbers::pi;
    int bin = static_cast<int>(phase / (2.0 * std::numbers::pi) * bins);
    if (bin == bins) bin = bins - 1;
    ++counts[bin];
  }
  std::vector<double> expected(bins, static_cast<double>(n) / bins);
  CHECK(teststats::chi2_p_value(counts, expected) > 0.01);
}

TEST_CASE("haar invariance under a fixed right unitary") {
  PhiloxRng rng(16);
  const ComplexMatrix u = haar_stiefel(4, 4, rng);
  ComplexMatrix e = sample_ginibre(4, 4, rng);
  e = (0.5 * (e + e.adjoint())).eval();  // fixed Hermitian observable
  const int n = 10000;
  std::vector<double> plain, rotated;
  for (int i = 0; i < n; ++i) {
    const ComplexMatrix f = haar_stiefel(2, 4, rng);
    plain.push_back((f * e * f.adjoint()).real().trace());
  }
  for (int i = 0; i < n; ++i) {
    const ComplexMatrix fu = haar_stiefel(2, 4, rng) * u;
    rotated.push_back((fu * e * fu.adjoint()).real().trace());
  }
  CHECK(teststats::ks_p_value_two_sample(plain, rotated) > 0.01);
}

TEST_CASE("pushforward: K F has Gram matrix K K^H on every draw") {
  PhiloxRng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix k_mat = sample_ginibre(3, 2, rng);
    const ComplexMatrix f = haar_stiefel(2, 5, rng);
    const ComplexMatrix x = k_mat * f;
    CHECK((x * x.adjoint() - k_mat * k_mat.adjoint()).norm() < 1e-10);
  }
}

TEST_CASE("svd basics") {
  const Svd identity = svd(ComplexMatrix::Identity(3, 3));
  for (int i = 0; i < 3; ++i) CHECK(identity.singular_values(i) == doctest::Approx(1.0).epsilon(1e-12));

  PhiloxRng rng(18);
  // diag(2, 1) times a Stiefel frame has singular values exactly (2, 1).
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 1.0;
  const ComplexMatrix a = d * haar_stiefel(2, 4, rng);
  const Svd s = svd(a);
  CHECK(std::abs(s.singular_values(0) - 2.0) < 1e-10);
  CHECK(std::abs(s.singular_values(1) - 1.0) < 1e-10);
  const ComplexMatrix rebuilt =
      s.u * s.singular_values.asDiagonal() * s.v.adjoint();
  CHECK((rebuilt - a).norm() < 1e-10 * a.norm());
}

TEST_CASE("svd of a rank-one outer product") {
  PhiloxRng rng(19);
  ComplexVector u = sample_ginibre(3, 1, rng).col(0);
  ComplexVector v = sample_ginibre(4, 1, rng).col(0);
  u *= 2.0 / u.norm();
  v *= 3.0 / v.norm();
  const Svd s = svd(u * v.adjoint());
  CHECK(std::abs(s.singular_values(0) - 6.0) < 1e-10);
  for (int i = 1; i < s.singular_values.size(); ++i) {
    CHECK(std::abs(s.singular_values(i)) < 1e-10);
  }
}

TEST_CASE("hermitian_eig: diagonal, reconstructed, and zero inputs") {
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 3.0;
  const HermitianEig plain = hermitian_eig(d);
  CHECK(plain.eigenvalues(0) == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(plain.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-13));

  PhiloxRng rng(20);
  const ComplexMatrix q = haar_stiefel(3, 3, rng).adjoint();
  ComplexMatrix diag = ComplexMatrix::Zero(3, 3);
  diag(0, 0) = 5.0;
  diag(1, 1) = 2.0;
  diag(2, 2) = 1.0;
  const ComplexMatrix a = q * diag * q.adjoint();
  const HermitianEig eig = hermitian_eig(a);
  CHECK(std::abs(eig.eigenvalues(0) - 5.0) < 1e-10);
  CHECK(std::abs(eig.eigenvalues(1) - 2.0) < 1e-10);
  CHECK(std::abs(eig.eigenvalues(2) - 1.0) < 1e-10);
  const ComplexMatrix rebuilt = eig.eigenvectors *
                                eig.eigenvalues.asDiagonal() *
                                eig.eigenvectors.adjoint();
  CHECK((rebuilt - a).norm() < 1e-10 * a.norm());
  CHECK((eig.eigenvectors * eig.eigenvectors.adjoint() -
         ComplexMatrix::Identity(3, 3))
            .norm() < 1e-10);

  const HermitianEig zero = hermitian_eig(ComplexMatrix::Zero(3, 3));
  for (int i = 0; i < 3; ++i) CHECK(zero.eigenvalues(i) == 0.0);
}

TEST_CASE("decompositions hold tolerance on mid-sized matrices") {
  PhiloxRng rng(21);
  const ComplexMatrix a = sample_ginibre(48, 48, rng);
  const Svd s = svd(a);
  CHECK((s.u * s.singular_values.asDiagonal() * s.v.adjoint() - a).norm() <
        1e-10 * a.norm());

  const ComplexMatrix h = (0.5 * (a + a.adjoint())).eval();
  const HermitianEig eig = hermitian_eig(h);
  CHECK((eig.eigenvectors * eig.eigenvalues.asDiagonal() *
             eig.eigenvectors.adjoint() -
         h)
            .norm() < 1e-10 * h.norm());
  for (int i = 0; i + 1 < 48; ++i) {
    CHECK(eig.eigenvalues(i) >= eig.eigenvalues(i + 1));
  }
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
  ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
  bad(0, 1) = 1.0;  // missing conjugate partner
  CHECK_THROWS_AS(hermitian_eig(bad), std::invalid_argument);
}

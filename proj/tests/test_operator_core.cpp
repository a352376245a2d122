// Copyright 2026 The qreduce authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "test_support.hpp"

using namespace qreduce;
using namespace qreduce::testing;

TEST_CASE("spectral_decompose: diagonal Pauli-Z") {
  const DiscreteObservable obs = observable_z();
  REQUIRE(obs.size() == 2);
  // sorted ascending: -1 first
  CHECK(obs.outcomes()[0].value == doctest::Approx(-1.0));
  CHECK(obs.outcomes()[1].value == doctest::Approx(1.0));
  CHECK(max_abs(obs.outcomes()[0].projection - ket1_bra1()) < 1e-12);
  CHECK(max_abs(obs.outcomes()[1].projection - ket0_bra0()) < 1e-12);
  CHECK(obs.nondegenerate());
}

TEST_CASE("spectral_decompose: identity collapses to one degenerate outcome") {
  const DiscreteObservable obs =
      spectral_decompose(HermitianOperator(Matrix::Identity(2, 2)));
  REQUIRE(obs.size() == 1);
  CHECK(obs.outcomes()[0].value == doctest::Approx(1.0));
  CHECK(max_abs(obs.outcomes()[0].projection - Matrix::Identity(2, 2)) < 1e-12);
  CHECK_FALSE(obs.nondegenerate());
}

TEST_CASE("spectral_decompose: Pauli-X against hand eigenvectors") {
  const DiscreteObservable obs = observable_x();
  REQUIRE(obs.size() == 2);
  CHECK(obs.outcomes()[0].value == doctest::Approx(-1.0));
  CHECK(max_abs(obs.outcomes()[0].projection - outer(ket_minus())) < 1e-12);
  CHECK(max_abs(obs.outcomes()[1].projection - outer(ket_plus())) < 1e-12);
}

TEST_CASE("spectral_decompose: rejects non-Hermitian input") {
  Matrix m(2, 2);
  m << 1, 2, 3, 4;
  CHECK_THROWS_AS(HermitianOperator{m}, InvalidOperator);
}

TEST_CASE("spectral_decompose: reconstruction and projector invariants") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int dim = 2 + static_cast<int>(rng.uniform() * 5);  // 2..6
    const Matrix h = random_hermitian(dim, rng);
    const DiscreteObservable obs = spectral_decompose(HermitianOperator(h));

    Matrix rebuilt = Matrix::Zero(dim, dim);
    Matrix completeness = Matrix::Zero(dim, dim);
    for (const auto& o : obs.outcomes()) {
      rebuilt += o.value * o.projection;
      completeness += o.projection;
      CHECK(is_hermitian(o.projection, 1e-9));
      CHECK(max_abs(o.projection * o.projection - o.projection) < 1e-9);
    }
    CHECK(max_abs(rebuilt - h) < dim * tol::group);
    CHECK(max_abs(completeness - Matrix::Identity(dim, dim)) < 1e-9);
    for (std::size_t i = 0; i < obs.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        CHECK(max_abs(obs.outcomes()[i].projection * obs.outcomes()[j].projection) <
              1e-9);
  }
}

TEST_CASE("spectral_decompose: group_tol merges near-degenerate eigenvalues") {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = 1.0;
  m(1, 1) = 1.0 + 1e-10;
  m(2, 2) = 2.0;
  const DiscreteObservable obs = spectral_decompose(HermitianOperator(m), 1e-8);
  REQUIRE(obs.size() == 2);
  CHECK(obs.outcomes()[0].projection.trace().real() == doctest::Approx(2.0));
}

TEST_CASE("DiscreteObservable rejects eigenvalues closer than the outcome "
          "tolerance") {
  std::vector<DiscreteObservable::Outcome> outcomes{
      {0.0, ket0_bra0()}, {1e-12, ket1_bra1()}};
  CHECK_THROWS_AS(DiscreteObservable(2, outcomes), InvalidOperator);
}

TEST_CASE("tensor: identities and diagonal Kronecker") {
  CHECK(max_abs(tensor(Matrix::Identity(2, 2), Matrix::Identity(2, 2)) -
                Matrix::Identity(4, 4)) == 0.0);
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = 1;
  expected(1, 1) = 1;
  expected(2, 2) = -1;
  expected(3, 3) = -1;
  CHECK(max_abs(tensor(pauli_z(), Matrix::Identity(2, 2)) - expected) == 0.0);
}

TEST_CASE("tensor: |0><0| ⊗ |1><1| puts the single 1 at (1,1)") {
  const Matrix t = tensor(ket0_bra0(), ket1_bra1());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(t(i, j) == ((i == 1 && j == 1) ? Complex(1, 0) : Complex(0, 0)));
}

TEST_CASE("tensor: index formula on random rectangular matrices") {
  Rng rng(12);
  Matrix a(2, 3), b(3, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = rng.cgauss();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j) b(i, j) = rng.cgauss();
  const Matrix t = tensor(a, b);
  REQUIRE(t.rows() == 6);
  REQUIRE(t.cols() == 6);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 2; ++l)
          CHECK(t(i * 3 + k, j * 2 + l) == a(i, j) * b(k, l));
}

TEST_CASE("partial_trace_second: product states, identity, Bell state") {
  Rng rng(13);
  const Matrix rho = random_density(3, rng);
  const Matrix sigma = random_density(2, rng);
  CHECK(max_abs(partial_trace_second(tensor(rho, sigma), 3, 2) - rho) < 1e-12);

  CHECK(max_abs(partial_trace_second(Matrix::Identity(4, 4), 2, 2) -
                2.0 * Matrix::Identity(2, 2)) == 0.0);

  // Bell state via the explicit index sum as the oracle.
  Vector bell = Vector::Zero(4);
  bell(0) = 1.0 / std::sqrt(2.0);  // |00>
  bell(3) = 1.0 / std::sqrt(2.0);  // |11>
  const Matrix bell_rho = outer(bell);
  Matrix oracle = Matrix::Zero(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) oracle(i, j) += bell_rho(i * 2 + k, j * 2 + k);
  CHECK(max_abs(oracle - 0.5 * Matrix::Identity(2, 2)) < 1e-12);
  CHECK(max_abs(partial_trace_second(bell_rho, 2, 2) - oracle) == 0.0);
}

TEST_CASE("partial_trace: preserves the total trace and checks dimensions") {
  Rng rng(14);
  Matrix m(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) m(i, j) = rng.cgauss();
  CHECK(std::abs(partial_trace_second(m, 2, 3).trace() - m.trace()) < 1e-12);
  CHECK(std::abs(partial_trace_first(m, 2, 3).trace() - m.trace()) < 1e-12);
  CHECK_THROWS_AS(partial_trace_second(m, 2, 2), DimensionError);
}

TEST_CASE("trace_norm: densities, diag(1,-1), |0><1|") {
  Rng rng(15);
  CHECK(trace_norm(random_density(4, rng)) == doctest::Approx(1.0));
  CHECK(trace_norm(pauli_z()) == doctest::Approx(2.0));

  const Matrix hop = basis_vector(2, 0) * basis_vector(2, 1).adjoint();
  // oracle: singular values are the square roots of eig(M†M)
  Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(hop.adjoint() * hop),
                                           Eigen::EigenvaluesOnly);
  double oracle = 0.0;
  for (int k = 0; k < 2; ++k) oracle += std::sqrt(std::max(0.0, es.eigenvalues()(k)));
  CHECK(oracle == doctest::Approx(1.0));
  CHECK(trace_norm(hop) == doctest::Approx(oracle));
}

TEST_CASE("trace_norm: bounds |Tr M| on random matrices") {
  Rng rng(16);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix m = random_matrix(3, rng);
    CHECK(trace_norm(m) >= std::abs(m.trace()) - 1e-12);
  }
}

TEST_CASE("decompose_four_densities: a density decomposes as itself") {
  Rng rng(17);
  const Matrix rho = random_density(3, rng);
  const FourDensityDecomposition dec = decompose_four_densities(rho);
  CHECK(dec.weights[0] == doctest::Approx(1.0));
  CHECK(dec.weights[1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(dec.weights[2] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(dec.weights[3] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(max_abs(dec.states[0].matrix() - rho) < 1e-9);
  // vanishing parts are substituted with the maximally mixed state
  CHECK(max_abs(dec.states[1].matrix() - Matrix::Identity(3, 3) / 3.0) < 1e-12);
}

TEST_CASE("decompose_four_densities: Hermitian traceless diag(1,-1)") {
  const FourDensityDecomposition dec = decompose_four_densities(pauli_z());
  CHECK(dec.weights[0] == doctest::Approx(1.0));
  CHECK(dec.weights[1] == doctest::Approx(1.0));
  CHECK(dec.weights[2] == doctest::Approx(0.0));
  CHECK(dec.weights[3] == doctest::Approx(0.0));
  CHECK(max_abs(dec.states[0].matrix() - ket0_bra0()) < 1e-12);
  CHECK(max_abs(dec.states[1].matrix() - ket1_bra1()) < 1e-12);
}

TEST_CASE("decompose_four_densities: |0><1| splits into X and Y eigenparts") {
  const Matrix hop = basis_vector(2, 0) * basis_vector(2, 1).adjoint();
  const FourDensityDecomposition dec = decompose_four_densities(hop);
  for (int i = 0; i < 4; ++i) CHECK(dec.weights[i] == doctest::Approx(0.5));
  // Hermitian part X/2: eigenprojections |±><±| of Pauli-X.
  CHECK(max_abs(dec.states[0].matrix() - outer(ket_plus())) < 1e-12);
  CHECK(max_abs(dec.states[1].matrix() - outer(ket_minus())) < 1e-12);
  // Anti-Hermitian part Y/2: eigenprojections of Pauli-Y.
  Eigen::SelfAdjointEigenSolver<Matrix> es(pauli_y());
  CHECK(max_abs(dec.states[2].matrix() - outer(Vector(es.eigenvectors().col(1)))) <
        1e-12);
  CHECK(max_abs(dec.states[3].matrix() - outer(Vector(es.eigenvectors().col(0)))) <
        1e-12);
}

TEST_CASE("decompose_four_densities: recomposition on random matrices") {
  Rng rng(18);
  for (int trial = 0; trial < 200; ++trial) {
    const int dim = 2 + static_cast<int>(rng.uniform() * 5);
    const Matrix sigma = random_matrix(dim, rng);
    const FourDensityDecomposition dec = decompose_four_densities(sigma);
    for (const double w : dec.weights) CHECK(w >= 0.0);
    for (const auto& s : dec.states)
      CHECK(std::abs(s.matrix().trace().real() - 1.0) < 1e-9);
    CHECK(max_abs(dec.recompose() - sigma) <= 1e-12);
  }
}

TEST_CASE("density and projection validation") {
  CHECK_THROWS_AS(DensityOperator{pauli_z()}, InvalidOperator);    // not PSD
  CHECK_THROWS_AS(DensityOperator{2.0 * ket0_bra0()}, InvalidOperator);  // trace 2
  CHECK_THROWS_AS(Projection{Matrix(0.5 * Matrix::Identity(2, 2))},
                  InvalidOperator);  // not idempotent
  CHECK(Projection(ket0_bra0()).rank() == 1);
  CHECK(DensityOperator::maximally_mixed(4).dim() == 4);
}

TEST_CASE("partial_trace_second o tensor is the identity on density pairs") {
  Rng rng(19);
  for (int trial = 0; trial < 30; ++trial) {
    const int dh = 2 + static_cast<int>(rng.uniform() * 3);
    const int dk = 2 + static_cast<int>(rng.uniform() * 3);
    const Matrix rho = random_density(dh, rng);
    const Matrix sigma = random_density(dk, rng);
    CHECK(max_abs(partial_trace_second(tensor(rho, sigma), dh, dk) - rho) < 1e-12);
  }
}

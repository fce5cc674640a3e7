#include <cmath>
#include <cstring>

#include <doctest.h>

#include "qident/closed_form.hpp"
#include "qident/spectral.hpp"
#include "qident/tensor.hpp"

#include "support/random_matrices.hpp"

using namespace qident;

namespace {

DenseOperator wrap(Eigen::MatrixXcd m) {
  return DenseOperator{{static_cast<int>(m.rows())}, std::move(m), true};
}

DenseOperator diag(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return wrap(v.cast<Complex>().asDiagonal());
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("hermitian eigendecomposition") {
  SUBCASE("diagonal matrix sorts ascending") {
    const auto decomposition = eig_hermitian(diag({3.0, -1.0, 0.0}));
    CHECK(decomposition.eigenvalues(0) == doctest::Approx(-1.0));
    CHECK(decomposition.eigenvalues(1) == doctest::Approx(0.0));
    CHECK(decomposition.eigenvalues(2) == doctest::Approx(3.0));
  }

  SUBCASE("off-diagonal pair") {
    Eigen::MatrixXcd x(2, 2);
    x << 0.0, 1.0, 1.0, 0.0;
    const auto decomposition = eig_hermitian(wrap(x));
    CHECK(decomposition.eigenvalues(0) == doctest::Approx(-1.0));
    CHECK(decomposition.eigenvalues(1) == doctest::Approx(1.0));
  }

  SUBCASE("random Hermitian reconstructs") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
      const auto a = wrap(test_support::random_hermitian(24, seed));
      const auto decomposition = eig_hermitian(a);
      const Eigen::MatrixXcd reconstructed =
          decomposition.eigenvectors *
          decomposition.eigenvalues.cast<Complex>().asDiagonal() *
          decomposition.eigenvectors.adjoint();
      CHECK(max_abs(reconstructed - a.entries) <= 1e-9 * max_abs(a.entries));
      CHECK(max_abs(decomposition.eigenvectors.adjoint() *
                        decomposition.eigenvectors -
                    Eigen::MatrixXcd::Identity(24, 24)) <= 1e-9);
      for (Eigen::Index k = 1; k < 24; ++k) {
        CHECK(decomposition.eigenvalues(k) >= decomposition.eigenvalues(k - 1));
      }
    }
  }

  SUBCASE("deterministic on identical input bits") {
    const auto a = wrap(test_support::random_hermitian(16, 99));
    const auto first = eig_hermitian(a);
    const auto second = eig_hermitian(a);
    CHECK(std::memcmp(first.eigenvalues.data(), second.eigenvalues.data(),
                      sizeof(double) * 16) == 0);
    CHECK(std::memcmp(first.eigenvectors.data(), second.eigenvectors.data(),
                      sizeof(Complex) * 16 * 16) == 0);
  }

  SUBCASE("rejects non-Hermitian input") {
    Eigen::MatrixXcd bad(2, 2);
    bad << 0.0, 1.0, 0.0, 0.0;
    CHECK_THROWS_AS(eig_hermitian(wrap(std::move(bad))), ContractError);
  }
}

TEST_CASE("trace norm") {
  CHECK(trace_norm(diag({1.0, -2.0, 0.0})) == doctest::Approx(3.0));

  SUBCASE("identification operator values") {
    CHECK(trace_norm(build_identification_operator(1, 2)) ==
          doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-12));
    CHECK(trace_norm(build_identification_operator(1, 3)) ==
          doctest::Approx(8.0 * std::sqrt(3.0)).epsilon(1e-12));
  }

  SUBCASE("unitary invariance") {
    const auto a = wrap(test_support::random_hermitian(20, 77));
    const double reference = trace_norm(a);
    for (std::uint64_t seed : {10ULL, 11ULL, 12ULL}) {
      const Eigen::MatrixXcd u = test_support::random_unitary(20, seed);
      const auto rotated = wrap(u * a.entries * u.adjoint());
      CHECK(std::abs(trace_norm(rotated) - reference) <= 1e-9);
    }
  }
}

TEST_CASE("positive-part projector") {
  SUBCASE("diagonal case") {
    const auto p = positive_part_projector(diag({1.0, -1.0, 0.0}));
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(3, 3);
    expected(0, 0) = 1.0;
    CHECK(max_abs(p.entries - expected) <= 1e-12);
  }

  SUBCASE("rank matches the positive block counts") {
    const auto p12 = positive_part_projector(build_identification_operator(1, 2));
    CHECK(p12.entries.trace().real() == doctest::Approx(2.0).epsilon(1e-10));

    // N=2 d=2: positive blocks J=1/2 (x2) and J=3/2 (x4)
    const auto p22 =
        positive_part_projector(build_identification_operator_sym(2, 2));
    CHECK(p22.entries.trace().real() == doctest::Approx(6.0).epsilon(1e-10));
  }

  SUBCASE("idempotent and Hermitian") {
    const auto p =
        positive_part_projector(wrap(test_support::random_hermitian(12, 5)));
    CHECK(is_hermitian(p.entries));
    CHECK(max_abs(p.entries * p.entries - p.entries) <= 1e-10);
  }
}

TEST_CASE("optimal measurement") {
  SUBCASE("attains half the trace norm") {
    const auto d_op = build_identification_operator(1, 2);
    const auto povm = build_optimal_povm(d_op);
    const double bias = (povm.e1.entries * d_op.entries).trace().real();
    CHECK(bias == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    CHECK(std::abs(bias - 0.5 * trace_norm(d_op)) <= 1e-9);
  }

  SUBCASE("completeness and positivity") {
    for (auto [n, d] : std::vector<std::pair<int, int>>{{1, 2}, {2, 2}, {1, 3}}) {
      const auto d_op = build_identification_operator(n, d);
      const auto povm = build_optimal_povm(d_op);
      CHECK(max_abs(povm.e1.entries + povm.e2.entries -
                    Eigen::MatrixXcd::Identity(d_op.dim(), d_op.dim())) <=
            1e-10);
      for (const auto* element : {&povm.e1, &povm.e2}) {
        const auto decomposition = eig_hermitian(*element);
        CHECK(decomposition.eigenvalues.minCoeff() >= -1e-10);
        CHECK(decomposition.eigenvalues.maxCoeff() <= 1.0 + 1e-10);
      }
      CHECK(max_abs(povm.e1.entries * povm.e2.entries -
                    povm.e2.entries * povm.e1.entries) <= 1e-10);
    }
  }

  SUBCASE("no feasible element beats it") {
    const auto d_op = build_identification_operator(1, 2);
    const auto povm = build_optimal_povm(d_op);
    const double best = (povm.e1.entries * d_op.entries).trace().real();
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const Eigen::MatrixXcd candidate =
          test_support::random_povm_element(static_cast<int>(d_op.dim()), seed);
      const double value = (candidate * d_op.entries).trace().real();
      CHECK(value <= best + 1e-9);
    }
  }

  SUBCASE("rejects operators with nonzero trace") {
    const auto s = symmetrizer(TensorLayout{2, 2}, {0, 1});
    CHECK_THROWS_AS(build_optimal_povm(s), ContractError);
  }
}

TEST_CASE("probability from the operator spectrum") {
  SUBCASE("single copy values") {
    const auto d12 = build_identification_operator(1, 2);
    CHECK(probability_from_operator(d12, 1, 1, 2) ==
          doctest::Approx(0.5 + std::sqrt(3.0) / 12.0).epsilon(1e-12));
    const auto d13 = build_identification_operator(1, 3);
    CHECK(probability_from_operator(d13, 1, 1, 3) ==
          doctest::Approx(0.5 + std::sqrt(3.0) / 9.0).epsilon(1e-12));
  }

  SUBCASE("agrees with the closed form wherever the register fits the cap") {
    for (int n = 1; n <= 3; ++n) {
      for (int d = 2; d <= 4; ++d) {
        if (TensorLayout{2 * n + 1, d}.total_dim() > kDefaultDimCap) continue;
        const auto d_op = build_identification_operator(n, d);
        CHECK(std::abs(probability_from_operator(d_op, 1, n, d) -
                       p_ident_general(n, d).value) <= 1e-9);
        const auto restricted = build_identification_operator_sym(n, d);
        CHECK(std::abs(probability_from_operator(restricted, 1, n, d) -
                       p_ident_general(n, d).value) <= 1e-9);
      }
    }
  }

  SUBCASE("extra input copies help") {
    const auto d21 = build_mcopy_operator(2, 1, 2);
    const double p21 = probability_from_operator(d21, 2, 1, 2);
    // oracle value; see tests/oracle/mcopy_reference.py
    CHECK(p21 == doctest::Approx(0.6767766952966369).epsilon(1e-10));
    CHECK(p21 >= 0.5 + std::sqrt(3.0) / 12.0);
  }

  SUBCASE("layout mismatches are rejected") {
    const auto d12 = build_identification_operator(1, 2);
    CHECK_THROWS_AS(probability_from_operator(d12, 1, 2, 2), ArgumentError);
    CHECK_THROWS_AS(probability_from_operator(d12, 2, 1, 2), ArgumentError);
    CHECK_THROWS_AS(probability_from_operator(d12, 1, 1, 3), ArgumentError);
  }
}

}  // TEST_SUITE

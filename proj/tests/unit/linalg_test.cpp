#include <doctest.h>

#include <cmath>

#include "qcover/linalg.hpp"

using namespace qcover;

TEST_SUITE("linalg") {
  TEST_CASE("jacobi eigenvalues of a known symmetric matrix") {
    linalg::Matrix m(2, 2);
    m(0, 0) = 2.0; m(0, 1) = 1.0;
    m(1, 0) = 1.0; m(1, 1) = 2.0;
    const auto eig = linalg::symmetric_eigenvalues(m);
    CHECK(eig[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eig[1] == doctest::Approx(3.0).epsilon(1e-12));
  }

  TEST_CASE("smallest singular value and rank") {
    linalg::Matrix m(2, 2);
    m(0, 0) = 0.25; m(0, 1) = 0.25;
    m(1, 0) = 0.25; m(1, 1) = 0.25;
    CHECK(linalg::smallest_singular_value(m) < 1e-14);
    CHECK(linalg::numeric_rank(m, 1e-10) == 1);
    CHECK(linalg::numeric_rank(linalg::Matrix::identity(5), 1e-10) == 5);
  }

  TEST_CASE("determinant with pivoting") {
    linalg::Matrix m(3, 3);
    m(0, 0) = 0.0; m(0, 1) = 2.0; m(0, 2) = 1.0;
    m(1, 0) = 1.0; m(1, 1) = 0.0; m(1, 2) = 0.0;
    m(2, 0) = 0.0; m(2, 1) = 0.0; m(2, 2) = 3.0;
    CHECK(linalg::determinant(m) == doctest::Approx(-6.0).epsilon(1e-14));
  }

  TEST_CASE("pairwise sum matches naive sum") {
    std::vector<double> v;
    double expect = 0.0;
    for (int i = 0; i < 1000; ++i) {
      v.push_back(1.0 / (i + 1.0));
      expect += v.back();
    }
    CHECK(linalg::pairwise_sum(v) == doctest::Approx(expect).epsilon(1e-13));
  }
}

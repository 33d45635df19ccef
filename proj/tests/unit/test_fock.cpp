#include <random>

#include "doctest.h"
#include "nheth/errors.hpp"
#include "nheth/fock.hpp"
#include "oracles.hpp"

using namespace nheth;
using namespace nheth::fock;

TEST_SUITE("fock") {

TEST_CASE("half-filled sector dimensions") {
  CHECK(enumerate_half_filling(2).dim() == 2);
  CHECK(enumerate_half_filling(4).dim() == 6);
  CHECK(enumerate_half_filling(12).dim() == 924);
  const auto b = enumerate_half_filling(2);
  CHECK(b.to_string(0) == "10");  // value 1: mode 0 occupied
  CHECK(b.to_string(1) == "01");
}

TEST_CASE("basis is ascending and indexable") {
  const auto b = enumerate_half_filling(8);
  for (std::size_t k = 0; k < b.dim(); ++k) {
    if (k > 0) CHECK(b.state(k - 1) < b.state(k));
    CHECK(b.index_of(b.state(k)) == k);
  }
  CHECK_FALSE(b.index_of(0b111).has_value());
}

TEST_CASE("invalid mode counts") {
  CHECK_THROWS_AS(enumerate_half_filling(3), InvalidArgument);
  CHECK_THROWS_AS(enumerate_half_filling(0), InvalidArgument);
  CHECK_THROWS_AS(enumerate_half_filling(22), InvalidArgument);
}

TEST_CASE("hamming distance") {
  CHECK(hamming_distance("0011", "0011") == 0);
  CHECK(hamming_distance("0011", "0101") == 2);
  CHECK(hamming_distance("001011", "110001") == 4);
  CHECK_THROWS_AS(hamming_distance("0011", "001"), InvalidArgument);
  CHECK(parse_occupation("1100") == 0b0011u);
  CHECK(occupation_string(0b0011u, 4) == "1100");
}

TEST_CASE("number operator") {
  const auto b2 = enumerate_half_filling(2);
  const CMatrix n0 = number_operator(0, b2);
  CHECK(n0(0, 0) == cplx{1.0, 0.0});
  CHECK(n0(1, 1) == cplx{0.0, 0.0});

  const auto b4 = enumerate_half_filling(4);
  const CMatrix m = number_operator(0, b4);
  CHECK(m.trace().real() == doctest::Approx(3.0));
  for (int n = 2; n <= 10; n += 2) {
    const auto b = enumerate_half_filling(n);
    for (int i = 0; i < n; ++i) {
      const CMatrix o = number_operator(i, b);
      CHECK(o.trace().real() / static_cast<double>(b.dim()) == doctest::Approx(0.5));
      CHECK((o * o - o).norm() == 0.0);
      CHECK((o - operator_matrix({{i}, {i}}, b)).norm() == 0.0);
    }
  }
  CHECK_THROWS_AS(number_operator(4, b4), InvalidArgument);
}

TEST_CASE("adjacent hop") {
  const auto b = enumerate_half_filling(2);
  const CMatrix hop = operator_matrix({{1}, {0}}, b);  // c^dag_1 c_0
  // |10> (index 0) -> |01> (index 1)
  CHECK(hop(1, 0) == cplx{1.0, 0.0});
  CHECK(hop.cwiseAbs().sum() == 1.0);
}

TEST_CASE("string validation") {
  CHECK_THROWS_AS(validate({{0, 1}, {2}}, 4), InvalidArgument);
  CHECK_THROWS_AS(validate({{0}, {4}}, 4), InvalidArgument);
  CHECK_NOTHROW(validate({{0, 1}, {2, 3}}, 4));
}

FermionStringSpec random_spec(std::mt19937& gen, int n_modes, int order) {
  std::uniform_int_distribution<int> mode(0, n_modes - 1);
  FermionStringSpec s;
  for (int k = 0; k < order; ++k) {
    s.creation_modes.push_back(mode(gen));
    s.annihilation_modes.push_back(mode(gen));
  }
  return s;
}

TEST_CASE("operator matrices match the full Fock space construction") {
  std::mt19937 gen(12345);
  for (int n : {2, 4, 6, 8}) {
    const auto basis = enumerate_half_filling(n);
    const auto states = oracle::half_filled(n);
    std::vector<oracle::Mat> c, cd;
    for (int j = 0; j < n; ++j) {
      c.push_back(oracle::annihilator(j, n));
      cd.push_back(oracle::creator(j, n));
    }
    const int trials = n <= 6 ? 40 : 10;
    for (int t = 0; t < trials; ++t) {
      const auto spec = random_spec(gen, n, 1 + t % 2);
      oracle::Mat full = oracle::Mat::Identity(1 << n, 1 << n);
      for (int m : spec.creation_modes) full = full * cd[m];
      for (int m : spec.annihilation_modes) full = full * c[m];
      const CMatrix got = operator_matrix(spec, basis);
      CHECK((got - oracle::project(full, states)).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("adjoint string gives the conjugate transpose") {
  std::mt19937 gen(99);
  const auto basis = enumerate_half_filling(6);
  for (int t = 0; t < 30; ++t) {
    const auto spec = random_spec(gen, 6, 2);
    const CMatrix a = operator_matrix(spec, basis);
    const CMatrix b = operator_matrix(adjoint(spec), basis);
    CHECK((a.adjoint() - b).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("hopping terms connect states at Hamming distance 2") {
  const auto basis = enumerate_half_filling(6);
  const CMatrix op = operator_matrix({{0, 3}, {1, 5}}, basis);
  for (Eigen::Index r = 0; r < op.rows(); ++r) {
    for (Eigen::Index c = 0; c < op.cols(); ++c) {
      if (op(r, c) != cplx{}) CHECK(hamming_distance(basis.state(r), basis.state(c)) == 4);
    }
  }
}

}  // TEST_SUITE

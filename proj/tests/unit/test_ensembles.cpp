#include <cmath>
#include <thread>

#include "doctest.h"
#include "nheth/ensembles.hpp"
#include "nheth/errors.hpp"
#include "nheth/fock.hpp"
#include "nheth/random.hpp"
#include "nheth/spectral.hpp"
#include "oracles.hpp"

using namespace nheth;
using namespace nheth::ensembles;

TEST_SUITE("ensembles") {

TEST_CASE("seed derivation") {
  CHECK(derive_realization_seed(7, 3) == derive_realization_seed(7, 3));
  CHECK(derive_realization_seed(7, 0) != derive_realization_seed(7, 1));
  CHECK(derive_realization_seed(7, 0) != derive_realization_seed(8, 0));
  CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
}

TEST_CASE("model names round trip") {
  for (auto m : {Model::GinibreComplex, Model::SykCaseI, Model::SykCaseII, Model::SykCaseIII, Model::SykHermitian,
                 Model::GinibreHermitianBaseline}) {
    CHECK(parse_model(model_name(m)) == m);
  }
  CHECK_THROWS_AS(parse_model("syk4"), InvalidArgument);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(validate(EnsembleSpec{Model::GinibreComplex, 5, 0, 0}), InvalidArgument);
  CHECK_THROWS_AS(validate(EnsembleSpec{Model::SykCaseI, 2, 0, 0}), InvalidArgument);
  CHECK_NOTHROW(validate(EnsembleSpec{Model::GinibreComplex, 2, 0, 0}));
}

TEST_CASE("Ginibre entry moments") {
  const int realizations = 1000;
  const double d = 6.0;
  double sum_sq = 0.0, sum_sq2 = 0.0;
  cplx sum{};
  std::size_t count = 0;
  for (int k = 0; k < realizations; ++k) {
    const auto h = sample(EnsembleSpec{Model::GinibreComplex, 4, 2024, static_cast<std::uint64_t>(k)}).matrix;
    REQUIRE(h.rows() == 6);
    for (Eigen::Index i = 0; i < h.size(); ++i) {
      const double a = std::norm(h(i));
      sum_sq += a;
      sum_sq2 += a * a;
      sum += h(i);
      ++count;
    }
  }
  const double n = static_cast<double>(count);
  const double mean_sq = sum_sq / n;
  const double se_sq = std::sqrt((sum_sq2 / n - mean_sq * mean_sq) / n);
  CHECK(std::abs(mean_sq - 1.0 / d) < 3.0 * se_sq);
  // Each part of an entry has variance 1/(2D).
  const double se_part = std::sqrt(1.0 / (2.0 * d) / n);
  CHECK(std::abs(sum.real() / n) < 3.0 * se_part);
  CHECK(std::abs(sum.imag() / n) < 3.0 * se_part);
}

TEST_CASE("sampling is deterministic and order independent") {
  const EnsembleSpec a{Model::GinibreComplex, 4, 11, 0};
  const EnsembleSpec b{Model::GinibreComplex, 4, 11, 1};
  const CMatrix a1 = sample(a).matrix;
  const CMatrix b1 = sample(b).matrix;
  CHECK((a1.array() == sample(a).matrix.array()).all());
  std::size_t same = 0;
  for (Eigen::Index i = 0; i < a1.size(); ++i) same += a1(i) == b1(i);
  CHECK(same == 0);

  // Reverse order, on other threads.
  std::vector<CMatrix> forward, backward(6);
  for (std::uint64_t k = 0; k < 6; ++k) forward.push_back(sample({Model::SykCaseI, 6, 5, k}).matrix);
  {
    std::vector<std::jthread> pool;
    for (int k = 5; k >= 0; --k) {
      pool.emplace_back([&backward, k] { backward[k] = sample({Model::SykCaseI, 6, 5, std::uint64_t(k)}).matrix; });
    }
  }
  for (int k = 0; k < 6; ++k) CHECK((forward[k].array() == backward[k].array()).all());
}

TEST_CASE("coupling amplitudes are antisymmetric") {
  const auto j = sample_couplings({Model::SykCaseI, 6, 3, 0});
  CHECK(j.amplitude(1, 0, 2, 3) == -j.amplitude(0, 1, 2, 3));
  CHECK(j.amplitude(0, 1, 3, 2) == -j.amplitude(0, 1, 2, 3));
  CHECK(j.amplitude(1, 0, 3, 2) == j.amplitude(0, 1, 2, 3));
  CHECK(j.amplitude(2, 2, 0, 1) == cplx{});
}

TEST_CASE("coupling case constraints") {
  const auto c3 = sample_couplings({Model::SykCaseIII, 8, 1, 0});
  const auto n = c3.pairs().size();
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (p != q) CHECK(std::conj(c3.at(p, q)) == c3.at(q, p));
    }
  }
  const auto c2 = sample_couplings({Model::SykCaseII, 8, 1, 0});
  for (std::size_t p = 0; p < n; ++p) CHECK(c2.at(p, p).imag() == 0.0);
  const auto c1 = sample_couplings({Model::SykCaseI, 8, 1, 0});
  std::size_t hermitian_pairs = 0;
  for (std::size_t p = 0; p < n; ++p) {
    CHECK(c1.at(p, p).imag() != 0.0);
    for (std::size_t q = p + 1; q < n; ++q) hermitian_pairs += std::conj(c1.at(p, q)) == c1.at(q, p);
  }
  CHECK(hermitian_pairs == 0);
}

TEST_CASE("coupling variances") {
  double re = 0.0, im = 0.0;
  std::size_t count = 0;
  for (std::uint64_t k = 0; k < 40; ++k) {
    const auto c = sample_couplings({Model::SykCaseI, 8, 17, k});
    const auto n = c.pairs().size();
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) {
        re += c.at(p, q).real() * c.at(p, q).real();
        im += c.at(p, q).imag() * c.at(p, q).imag();
        ++count;
      }
  }
  const double se = std::sqrt(2.0 * 0.25 / static_cast<double>(count));
  CHECK(std::abs(re / count - 0.5) < 3.0 * se);
  CHECK(std::abs(im / count - 0.5) < 3.0 * se);
}

TEST_CASE("SYK assembly matches the full index sum") {
  for (int n : {4, 6}) {
    for (auto model : {Model::SykCaseI, Model::SykCaseIII}) {
      const EnsembleSpec spec{model, n, 9, 2};
      const auto j = sample_couplings(spec);
      const auto states = oracle::half_filled(n);
      std::vector<oracle::Mat> c, cd;
      for (int m = 0; m < n; ++m) {
        c.push_back(oracle::annihilator(m, n));
        cd.push_back(oracle::creator(m, n));
      }
      oracle::Mat full = oracle::Mat::Zero(1 << n, 1 << n);
      for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2)
          for (int j1 = 0; j1 < n; ++j1)
            for (int j2 = 0; j2 < n; ++j2) {
              const cplx amp = j.amplitude(i1, i2, j1, j2);
              if (amp != cplx{}) full += amp * cd[i1] * cd[i2] * c[j1] * c[j2];
            }
      full *= std::pow(2.0 * n, -1.5);
      const CMatrix got = sample(spec).matrix;
      CHECK((got - oracle::project(full, states)).cwiseAbs().maxCoeff() < 1e-13);
    }
  }
}

TEST_CASE("SYK Hermitian baseline") {
  const auto r = sample({Model::SykHermitian, 8, 4, 0});
  CHECK((r.matrix - r.matrix.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  const auto dec = spectral::decompose(r.matrix);
  const double norm = r.matrix.norm();
  CHECK(dec.eigenvalues.imag().cwiseAbs().maxCoeff() < 1e-9 * norm);
  const auto g = sample({Model::GinibreHermitianBaseline, 6, 4, 0}).matrix;
  CHECK((g - g.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("SYK sparsity follows Hamming distances 0, 2, 4") {
  const auto r = sample({Model::SykCaseI, 8, 21, 0});
  const auto& basis = *r.basis;
  std::array<std::size_t, 9> seen{};
  for (Eigen::Index a = 0; a < r.matrix.rows(); ++a)
    for (Eigen::Index b = 0; b < r.matrix.cols(); ++b) {
      if (r.matrix(a, b) == cplx{}) continue;
      const int d = fock::hamming_distance(basis.state(a), basis.state(b));
      ++seen[d];
      CHECK((d == 0 || d == 2 || d == 4));
    }
  CHECK(seen[0] > 0);
  CHECK(seen[2] > 0);
  CHECK(seen[4] > 0);
}

TEST_CASE("Case II diagonal entries are real") {
  const auto r = sample({Model::SykCaseII, 8, 6, 0});
  CHECK(r.matrix.diagonal().imag().cwiseAbs().maxCoeff() == 0.0);
  // Case I has complex diagonal entries.
  const auto r1 = sample({Model::SykCaseI, 8, 6, 0});
  CHECK(r1.matrix.diagonal().imag().cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("Case III is Hermitian once the diagonal couplings vanish") {
  const EnsembleSpec spec{Model::SykCaseIII, 8, 13, 0};
  auto j = sample_couplings(spec);
  for (std::size_t p = 0; p < j.pairs().size(); ++p) j.at(p, p) = {};
  const auto basis = shared_basis(8);
  const CMatrix h = assemble_syk(j, *basis);
  CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
  const CMatrix full = sample(spec).matrix;
  CHECK((full - full.adjoint()).cwiseAbs().maxCoeff() > 1e-3);
}

}  // TEST_SUITE

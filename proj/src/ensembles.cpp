#include "nheth/ensembles.hpp"

#include <array>
#include <cmath>
#include <map>
#include <mutex>

#include "nheth/errors.hpp"
#include "nheth/random.hpp"

namespace nheth::ensembles {

namespace {

struct ModelEntry {
  Model model;
  std::string_view name;
};

constexpr std::array<ModelEntry, 6> kModels{{
    {Model::GinibreComplex, "ginibre"},
    {Model::SykCaseI, "syk1"},
    {Model::SykCaseII, "syk2"},
    {Model::SykCaseIII, "syk3"},
    {Model::SykHermitian, "syk-hermitian"},
    {Model::GinibreHermitianBaseline, "gue"},
}};

const double kHalfSd = std::sqrt(0.5);

}  // namespace

std::string_view model_name(Model m) noexcept {
  for (const auto& e : kModels) {
    if (e.model == m) return e.name;
  }
  return "unknown";
}

Model parse_model(std::string_view name) {
  for (const auto& e : kModels) {
    if (e.name == name) return e.model;
  }
  throw InvalidArgument("unknown model '" + std::string(name) +
                        "' (expected ginibre, syk1, syk2, syk3, syk-hermitian or gue)");
}

bool is_syk(Model m) noexcept {
  return m == Model::SykCaseI || m == Model::SykCaseII || m == Model::SykCaseIII ||
         m == Model::SykHermitian;
}

void validate(const EnsembleSpec& spec) {
  if (spec.n_modes < 2 || spec.n_modes > fock::kMaxModes || spec.n_modes % 2 != 0) {
    throw InvalidArgument("n_modes must be even and within [2, " + std::to_string(fock::kMaxModes) +
                          "], got " + std::to_string(spec.n_modes));
  }
  if (is_syk(spec.model) && spec.n_modes < 4) {
    throw InvalidArgument("SYK models need at least 4 modes");
  }
}

CouplingTensor::CouplingTensor(int n_modes) : n_modes_(n_modes) {
  pair_lookup_.assign(static_cast<std::size_t>(n_modes * n_modes), 0);
  for (int i = 0; i < n_modes; ++i) {
    for (int j = i + 1; j < n_modes; ++j) {
      pair_lookup_[static_cast<std::size_t>(i * n_modes + j)] = pairs_.size();
      pairs_.emplace_back(i, j);
    }
  }
  values_.assign(pairs_.size() * pairs_.size(), cplx{0.0, 0.0});
}

std::size_t CouplingTensor::pair_index(int i, int j) const {
  if (i < 0 || j >= n_modes_ || i >= j) throw InvalidArgument("pair_index requires 0 <= i < j < N");
  return pair_lookup_[static_cast<std::size_t>(i * n_modes_ + j)];
}

cplx CouplingTensor::amplitude(int i1, int i2, int j1, int j2) const {
  if (i1 == i2 || j1 == j2) return {0.0, 0.0};
  double sign = 1.0;
  if (i1 > i2) {
    std::swap(i1, i2);
    sign = -sign;
  }
  if (j1 > j2) {
    std::swap(j1, j2);
    sign = -sign;
  }
  return sign * at(pair_index(i1, i2), pair_index(j1, j2));
}

std::shared_ptr<const fock::FockBasis> shared_basis(int n_modes) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const fock::FockBasis>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[n_modes];
  if (!slot) slot = std::make_shared<const fock::FockBasis>(fock::enumerate_half_filling(n_modes));
  return slot;
}

HamiltonianRealization sample_ginibre(const EnsembleSpec& spec) {
  validate(spec);
  if (spec.model != Model::GinibreComplex && spec.model != Model::GinibreHermitianBaseline) {
    throw InvalidArgument("sample_ginibre: model must be ginibre or gue");
  }
  auto basis = shared_basis(spec.n_modes);
  const auto dim = static_cast<Eigen::Index>(basis->dim());
  const double sd = std::sqrt(1.0 / (2.0 * static_cast<double>(dim)));

  GaussianSource rng(derive_realization_seed(spec.master_seed, spec.realization_index));
  CMatrix h(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      const double re = rng.normal(0.0, sd);
      const double im = rng.normal(0.0, sd);
      h(r, c) = cplx{re, im};
    }
  }
  if (spec.model == Model::GinibreHermitianBaseline) {
    CMatrix herm = (h + h.adjoint()) / std::sqrt(2.0);
    h = std::move(herm);
  }
  return {spec, std::move(h), std::move(basis)};
}

CouplingTensor sample_couplings(const EnsembleSpec& spec) {
  validate(spec);
  if (!is_syk(spec.model)) throw InvalidArgument("sample_couplings: model is not an SYK variant");

  CouplingTensor j(spec.n_modes);
  const std::size_t npairs = j.pairs().size();
  GaussianSource rng(derive_realization_seed(spec.master_seed, spec.realization_index));

  for (std::size_t p = 0; p < npairs; ++p) {
    for (std::size_t q = 0; q < npairs; ++q) {
      switch (spec.model) {
        case Model::SykCaseI: {
          const double re = rng.normal(0.0, kHalfSd);
          const double im = rng.normal(0.0, kHalfSd);
          j.at(p, q) = {re, im};
          break;
        }
        case Model::SykCaseII: {
          if (p == q) {
            j.at(p, q) = {rng.normal(0.0, kHalfSd), 0.0};
          } else {
            const double re = rng.normal(0.0, kHalfSd);
            const double im = rng.normal(0.0, kHalfSd);
            j.at(p, q) = {re, im};
          }
          break;
        }
        case Model::SykCaseIII: {
          if (q < p) break;
          const double re = rng.normal(0.0, kHalfSd);
          const double im = rng.normal(0.0, kHalfSd);
          j.at(p, q) = {re, im};
          if (p != q) j.at(q, p) = {re, -im};
          break;
        }
        case Model::SykHermitian: {
          if (q < p) break;
          if (p == q) {
            j.at(p, q) = {rng.normal(0.0, 1.0), 0.0};
          } else {
            const double re = rng.normal(0.0, kHalfSd);
            const double im = rng.normal(0.0, kHalfSd);
            j.at(p, q) = {re, im};
            j.at(q, p) = {re, -im};
          }
          break;
        }
        default:
          break;
      }
    }
  }
  return j;
}

CMatrix assemble_syk(const CouplingTensor& couplings, const fock::FockBasis& basis) {
  if (couplings.n_modes() != basis.n_modes()) {
    throw InvalidArgument("assemble_syk: coupling and basis mode counts differ");
  }
  const int n = basis.n_modes();
  const auto dim = static_cast<Eigen::Index>(basis.dim());
  const auto& pairs = couplings.pairs();
  const double prefactor = 4.0 / std::pow(2.0 * n, 1.5);

  CMatrix h = CMatrix::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const Occupation s = basis.state(static_cast<std::size_t>(col));
    for (std::size_t q = 0; q < pairs.size(); ++q) {
      // c_{j1} c_{j2}: c_{j2} acts first.
      const auto a2 = fock::annihilate(s, pairs[q].second);
      if (!a2) continue;
      const auto a1 = fock::annihilate(a2->state, pairs[q].first);
      if (!a1) continue;
      const int sign_ann = a2->sign * a1->sign;
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        const auto c2 = fock::create(a1->state, pairs[p].second);
        if (!c2) continue;
        const auto c1 = fock::create(c2->state, pairs[p].first);
        if (!c1) continue;
        const auto row = basis.index_of(c1->state);
        if (!row) continue;
        const double sign = static_cast<double>(sign_ann * c2->sign * c1->sign);
        h(static_cast<Eigen::Index>(*row), col) += prefactor * sign * couplings.at(p, q);
      }
    }
  }
  return h;
}

HamiltonianRealization sample_syk(const EnsembleSpec& spec) {
  validate(spec);
  const CouplingTensor j = sample_couplings(spec);
  auto basis = shared_basis(spec.n_modes);
  CMatrix h = assemble_syk(j, *basis);
  if (spec.model == Model::SykHermitian) {
    // Removes rounding asymmetry so the baseline is Hermitian to the last bit.
    CMatrix herm = 0.5 * (h + h.adjoint());
    h = std::move(herm);
  }
  return {spec, std::move(h), std::move(basis)};
}

HamiltonianRealization sample(const EnsembleSpec& spec) {
  return is_syk(spec.model) ? sample_syk(spec) : sample_ginibre(spec);
}

}  // namespace nheth::ensembles

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nheth/fock.hpp"
#include "nheth/types.hpp"

namespace nheth::ensembles {

enum class Model : std::uint8_t {
  GinibreComplex = 0,
  SykCaseI = 1,
  SykCaseII = 2,
  SykCaseIII = 3,
  SykHermitian = 4,
  GinibreHermitianBaseline = 5,
};

// CLI names: ginibre, syk1, syk2, syk3, syk-hermitian, gue.
std::string_view model_name(Model m) noexcept;
Model parse_model(std::string_view name);
bool is_syk(Model m) noexcept;

struct EnsembleSpec {
  Model model = Model::GinibreComplex;
  int n_modes = 8;
  std::uint64_t master_seed = 0;
  std::uint64_t realization_index = 0;
};

void validate(const EnsembleSpec& spec);

// Ordered mode pair (first < second).
using ModePair = std::pair<int, int>;

// SYK amplitudes J_{i1 i2 : j1 j2}, stored for ordered representatives
// i1 < i2, j1 < j2 only. Other index orders follow by antisymmetry.
class CouplingTensor {
 public:
  explicit CouplingTensor(int n_modes);

  int n_modes() const noexcept { return n_modes_; }
  const std::vector<ModePair>& pairs() const noexcept { return pairs_; }
  std::size_t pair_index(int i, int j) const;  // requires i < j

  cplx& at(std::size_t p, std::size_t q) { return values_[p * pairs_.size() + q]; }
  cplx at(std::size_t p, std::size_t q) const { return values_[p * pairs_.size() + q]; }

  // Any index order; zero when a pair repeats a mode.
  cplx amplitude(int i1, int i2, int j1, int j2) const;

 private:
  int n_modes_;
  std::vector<ModePair> pairs_;
  std::vector<std::size_t> pair_lookup_;
  std::vector<cplx> values_;
};

struct HamiltonianRealization {
  EnsembleSpec spec;
  CMatrix matrix;
  std::shared_ptr<const fock::FockBasis> basis;
};

HamiltonianRealization sample_ginibre(const EnsembleSpec& spec);

CouplingTensor sample_couplings(const EnsembleSpec& spec);

// H = (2N)^{-3/2} sum over all index tuples of J c^dag c^dag c c, i.e.
// 4 (2N)^{-3/2} times the sum over ordered representatives.
CMatrix assemble_syk(const CouplingTensor& couplings, const fock::FockBasis& basis);

HamiltonianRealization sample_syk(const EnsembleSpec& spec);

// Dispatches on spec.model.
HamiltonianRealization sample(const EnsembleSpec& spec);

// Shares one basis per mode count within a process.
std::shared_ptr<const fock::FockBasis> shared_basis(int n_modes);

}  // namespace nheth::ensembles

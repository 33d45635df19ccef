#include "nheth/fock.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "nheth/errors.hpp"

namespace nheth::fock {

std::optional<std::size_t> FockBasis::index_of(Occupation s) const noexcept {
  if (s >= lookup_.size() || lookup_[s] < 0) return std::nullopt;
  return static_cast<std::size_t>(lookup_[s]);
}

std::string FockBasis::to_string(std::size_t k) const {
  return occupation_string(state(k), n_modes_);
}

FockBasis enumerate_half_filling(int n_modes) {
  if (n_modes < 2 || n_modes > kMaxModes || n_modes % 2 != 0) {
    throw InvalidArgument("n_modes must be even and within [2, " + std::to_string(kMaxModes) +
                          "], got " + std::to_string(n_modes));
  }
  FockBasis basis;
  basis.n_modes_ = n_modes;
  const int filled = n_modes / 2;
  const Occupation limit = Occupation{1} << n_modes;
  basis.lookup_.assign(limit, -1);

  // Gosper's hack walks fixed-popcount words in ascending order.
  Occupation s = (Occupation{1} << filled) - 1;
  while (s < limit) {
    basis.lookup_[s] = static_cast<std::int32_t>(basis.states_.size());
    basis.states_.push_back(s);
    const Occupation low = s & (~s + 1);
    const Occupation ripple = s + low;
    s = (((ripple ^ s) >> 2) / low) | ripple;
  }
  return basis;
}

std::string occupation_string(Occupation s, int n_modes) {
  std::string out(static_cast<std::size_t>(n_modes), '0');
  for (int i = 0; i < n_modes; ++i) {
    if ((s >> i) & 1U) out[static_cast<std::size_t>(i)] = '1';
  }
  return out;
}

Occupation parse_occupation(std::string_view bits) {
  if (bits.empty() || bits.size() > static_cast<std::size_t>(kMaxModes)) {
    throw InvalidArgument("occupation string length must be within [1, " +
                          std::to_string(kMaxModes) + "]");
  }
  Occupation s = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      s |= Occupation{1} << i;
    } else if (bits[i] != '0') {
      throw InvalidArgument("occupation string may only contain '0' and '1'");
    }
  }
  return s;
}

int hamming_distance(Occupation a, Occupation b) noexcept { return std::popcount(a ^ b); }

int hamming_distance(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) {
    throw InvalidArgument("hamming_distance: bitstrings differ in length (" +
                          std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  }
  return hamming_distance(parse_occupation(a), parse_occupation(b));
}

namespace {

int parity_below(Occupation s, int mode) noexcept {
  const Occupation mask = (Occupation{1} << mode) - 1;
  return std::popcount(s & mask) & 1;
}

}  // namespace

std::optional<SignedState> annihilate(Occupation s, int mode) noexcept {
  const Occupation bit = Occupation{1} << mode;
  if (!(s & bit)) return std::nullopt;
  return SignedState{s ^ bit, parity_below(s, mode) ? -1 : 1};
}

std::optional<SignedState> create(Occupation s, int mode) noexcept {
  const Occupation bit = Occupation{1} << mode;
  if (s & bit) return std::nullopt;
  return SignedState{s ^ bit, parity_below(s, mode) ? -1 : 1};
}

std::optional<SignedState> apply(const FermionStringSpec& spec, Occupation s) noexcept {
  SignedState cur{s, 1};
  for (auto it = spec.annihilation_modes.rbegin(); it != spec.annihilation_modes.rend(); ++it) {
    const auto next = annihilate(cur.state, *it);
    if (!next) return std::nullopt;
    cur = {next->state, cur.sign * next->sign};
  }
  for (auto it = spec.creation_modes.rbegin(); it != spec.creation_modes.rend(); ++it) {
    const auto next = create(cur.state, *it);
    if (!next) return std::nullopt;
    cur = {next->state, cur.sign * next->sign};
  }
  return cur;
}

void validate(const FermionStringSpec& spec, int n_modes) {
  if (spec.creation_modes.size() != spec.annihilation_modes.size()) {
    throw InvalidArgument("fermion string must have equal numbers of creation and annihilation operators");
  }
  auto in_range = [n_modes](int m) { return m >= 0 && m < n_modes; };
  if (!std::all_of(spec.creation_modes.begin(), spec.creation_modes.end(), in_range) ||
      !std::all_of(spec.annihilation_modes.begin(), spec.annihilation_modes.end(), in_range)) {
    throw InvalidArgument("fermion string mode index outside [0, " + std::to_string(n_modes) + ")");
  }
}

FermionStringSpec adjoint(const FermionStringSpec& spec) {
  FermionStringSpec adj;
  adj.creation_modes.assign(spec.annihilation_modes.rbegin(), spec.annihilation_modes.rend());
  adj.annihilation_modes.assign(spec.creation_modes.rbegin(), spec.creation_modes.rend());
  return adj;
}

CMatrix operator_matrix(const FermionStringSpec& spec, const FockBasis& basis) {
  validate(spec, basis.n_modes());
  const auto dim = static_cast<Eigen::Index>(basis.dim());
  CMatrix m = CMatrix::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const auto out = apply(spec, basis.state(static_cast<std::size_t>(col)));
    if (!out) continue;
    const auto row = basis.index_of(out->state);
    if (row) m(static_cast<Eigen::Index>(*row), col) = static_cast<double>(out->sign);
  }
  return m;
}

CMatrix number_operator(int mode, const FockBasis& basis) {
  if (mode < 0 || mode >= basis.n_modes()) {
    throw InvalidArgument("number_operator: mode " + std::to_string(mode) + " outside [0, " +
                          std::to_string(basis.n_modes()) + ")");
  }
  const auto dim = static_cast<Eigen::Index>(basis.dim());
  CMatrix m = CMatrix::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    m(k, k) = static_cast<double>((basis.state(static_cast<std::size_t>(k)) >> mode) & 1U);
  }
  return m;
}

}  // namespace nheth::fock

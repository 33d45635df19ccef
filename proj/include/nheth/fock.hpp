#pragma once

// Half-filled fermionic Fock basis and dense fermion-string operators.
//
// Conventions:
//  * bit i of an Occupation is the occupation of mode i;
//  * basis states are ordered by ascending integer value;
//  * c_j and c_j^dagger acting on |p_0 p_1 ... p_{N-1}> pick up the sign
//    (-1)^(p_0 + ... + p_{j-1}) (Jordan-Wigner ordering by mode index);
//  * the string form of a state lists modes left to right, mode 0 first.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nheth/types.hpp"

namespace nheth::fock {

inline constexpr int kMaxModes = 20;

class FockBasis {
 public:
  int n_modes() const noexcept { return n_modes_; }
  std::size_t dim() const noexcept { return states_.size(); }
  const std::vector<Occupation>& states() const noexcept { return states_; }
  Occupation state(std::size_t k) const { return states_.at(k); }

  // Basis index of a half-filled state, or nullopt when it is not in the basis.
  std::optional<std::size_t> index_of(Occupation s) const noexcept;

  std::string to_string(std::size_t k) const;

 private:
  friend FockBasis enumerate_half_filling(int n_modes);

  int n_modes_ = 0;
  std::vector<Occupation> states_;
  std::vector<std::int32_t> lookup_;  // 2^N entries, -1 outside the sector
};

// c^dagger_{creation[0]} ... c^dagger_{creation[k-1]} c_{annihilation[0]} ... c_{annihilation[k-1]}
struct FermionStringSpec {
  std::vector<int> creation_modes;
  std::vector<int> annihilation_modes;
};

struct SignedState {
  Occupation state;
  int sign;
};

FockBasis enumerate_half_filling(int n_modes);

std::string occupation_string(Occupation s, int n_modes);
Occupation parse_occupation(std::string_view bits);

int hamming_distance(Occupation a, Occupation b) noexcept;
int hamming_distance(std::string_view a, std::string_view b);

// Single-mode actions. nullopt when the result vanishes.
std::optional<SignedState> annihilate(Occupation s, int mode) noexcept;
std::optional<SignedState> create(Occupation s, int mode) noexcept;

// Applies the string right to left.
std::optional<SignedState> apply(const FermionStringSpec& spec, Occupation s) noexcept;

// Throws InvalidArgument if the string leaves the half-filled sector or
// addresses a mode outside [0, n_modes).
void validate(const FermionStringSpec& spec, int n_modes);

// (c^dag_a1 ... c^dag_ak c_b1 ... c_bk)^dagger = c^dag_bk ... c^dag_b1 c_ak ... c_a1
FermionStringSpec adjoint(const FermionStringSpec& spec);

CMatrix operator_matrix(const FermionStringSpec& spec, const FockBasis& basis);
CMatrix number_operator(int mode, const FockBasis& basis);

}  // namespace nheth::fock

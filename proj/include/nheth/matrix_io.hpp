#pragma once

// Binary Hamiltonian dump, little-endian:
//   magic "NHETH1" (6 bytes) | N: u32 | D: u64 | model tag: u8 |
//   D*D row-major complex128 entries as (re, im) f64 pairs.

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "nheth/types.hpp"

namespace nheth::io {

struct MatrixDump {
  std::uint32_t n_modes = 0;
  std::uint8_t model_tag = 0;
  CMatrix matrix;
};

void write_matrix_binary(std::ostream& out, const MatrixDump& dump);
MatrixDump read_matrix_binary(std::istream& in);

void write_matrix_binary(const std::filesystem::path& path, const MatrixDump& dump);
MatrixDump read_matrix_binary(const std::filesystem::path& path);

}  // namespace nheth::io

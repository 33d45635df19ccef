#include "nheth/matrix_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "nheth/errors.hpp"

namespace nheth::io {

namespace {

constexpr std::array<char, 6> kMagic{'N', 'H', 'E', 'T', 'H', '1'};

static_assert(std::endian::native == std::endian::little,
              "matrix dump writer assumes a little-endian host");

template <typename T>
void put(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw IoError("matrix dump truncated");
  return value;
}

}  // namespace

void write_matrix_binary(std::ostream& out, const MatrixDump& dump) {
  if (dump.matrix.rows() != dump.matrix.cols()) {
    throw InvalidArgument("matrix dump requires a square matrix");
  }
  out.write(kMagic.data(), kMagic.size());
  put<std::uint32_t>(out, dump.n_modes);
  put<std::uint64_t>(out, static_cast<std::uint64_t>(dump.matrix.rows()));
  put<std::uint8_t>(out, dump.model_tag);
  for (Eigen::Index r = 0; r < dump.matrix.rows(); ++r) {
    for (Eigen::Index c = 0; c < dump.matrix.cols(); ++c) {
      put<double>(out, dump.matrix(r, c).real());
      put<double>(out, dump.matrix(r, c).imag());
    }
  }
  if (!out) throw IoError("failed writing matrix dump");
}

MatrixDump read_matrix_binary(std::istream& in) {
  std::array<char, 6> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw IoError("not an NHETH1 matrix dump");
  MatrixDump dump;
  dump.n_modes = get<std::uint32_t>(in);
  const auto dim = get<std::uint64_t>(in);
  dump.model_tag = get<std::uint8_t>(in);
  if (dim > (std::uint64_t{1} << 20)) throw IoError("matrix dump dimension implausibly large");
  const auto d = static_cast<Eigen::Index>(dim);
  dump.matrix.resize(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) {
      const double re = get<double>(in);
      const double im = get<double>(in);
      dump.matrix(r, c) = cplx{re, im};
    }
  }
  return dump;
}

void write_matrix_binary(const std::filesystem::path& path, const MatrixDump& dump) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_matrix_binary(out, dump);
}

MatrixDump read_matrix_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_matrix_binary(in);
}

}  // namespace nheth::io

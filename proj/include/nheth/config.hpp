#pragma once

// Sweep configuration and its flat "key = value" text form.
//
//   # comment
//   model = ginibre            ginibre | syk1 | syk2 | syk3 | syk-hermitian | gue
//   seed = 7
//   sizes = 8,10,12
//   realizations = 500,200,50
//   window = disk:0.2          repeatable; the first window is the primary one
//   observable_mode = 0
//   reference = global         global | window
//   output_dir = out
//   jobs = 4
//   max_retries = 3
//   tol.pairing = 1e-8
//   tol.reconstruction = 1e-8
//   tol.conditioning = 1e12
//   biorthogonal = true
//
// Unknown keys are rejected.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "nheth/ensembles.hpp"
#include "nheth/ethstats.hpp"

namespace nheth::harness {

struct Tolerances {
  double pairing = 1e-8;
  double reconstruction = 1e-8;
  double conditioning = 1e12;
};

struct RunConfig {
  ensembles::Model model = ensembles::Model::GinibreComplex;
  std::uint64_t master_seed = 1;
  std::vector<int> sizes{8, 10, 12};
  std::vector<std::size_t> realizations{500, 200, 50};
  std::vector<eth::EnergyWindow> windows{eth::EnergyWindow::disk(0.2)};
  int observable_mode = 0;
  eth::Reference reference = eth::Reference::GlobalMean;
  std::filesystem::path output_dir;  // empty: nothing written
  unsigned jobs = 0;  // 0: NHETH_JOBS or 1
  unsigned max_retries = 3;
  bool biorthogonal = true;
  Tolerances tolerances;
};

void validate(const RunConfig& config);

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

// Applies one "key = value" assignment; throws InvalidArgument on unknown keys.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

// Canonical text of every setting that influences results (not output_dir or jobs).
std::string canonical_text(const RunConfig& config);

// Worker count: explicit value if nonzero, else NHETH_JOBS, else 1.
unsigned resolve_jobs(unsigned requested);

}  // namespace nheth::harness

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nheth/config.hpp"
#include "nheth/dynamics.hpp"
#include "nheth/ensembles.hpp"
#include "nheth/ethstats.hpp"
#include "nheth/spectral.hpp"

namespace nheth::harness {

inline constexpr int kSummarySchema = 1;
inline constexpr std::string_view kCodeVersion = "0.1.0";

// Root mean square of off-diagonal |element| over windowed ordered pairs,
// pooled over realizations.
struct OffDiagonalRms {
  double uncorrected = 0.0;   // |<R_m|O|R_n>|
  double corrected = 0.0;     // |tilde O_mn|
  double biorthogonal = 0.0;  // |<R_m|O|L_n>|, 0 when disabled
};

struct WindowResult {
  eth::EthStatistics stats;
  OffDiagonalRms rms;
};

struct SizeReport {
  int n_modes = 0;
  std::size_t dim = 0;
  std::size_t n_used = 0;
  std::size_t n_rejected = 0;
  double max_reconstruction_error = 0.0;
  double max_pairing_error = 0.0;
  double max_residual = 0.0;
  std::vector<WindowResult> windows;  // aligned with RunConfig::windows
};

struct WindowSlopes {
  std::optional<eth::SlopeFit> diag;
  std::optional<eth::SlopeFit> offdiag;
  std::optional<eth::SlopeFit> rms_uncorrected;
  std::optional<eth::SlopeFit> rms_corrected;
  std::optional<eth::SlopeFit> rms_biorthogonal;
};

struct Rejection {
  int n_modes = 0;
  std::uint64_t realization_index = 0;
  std::string reason;
};

struct ManifestEntry {
  std::string file;
  std::string sha256;
};

struct Provenance {
  std::string config_hash;
  std::string rng_algorithm;
  std::string code_version;
  std::size_t rejected = 0;
};

struct RunReport {
  RunConfig config;
  std::vector<SizeReport> sizes;
  std::vector<WindowSlopes> slopes;  // aligned with RunConfig::windows; fits need >= 3 sizes
  std::vector<Rejection> rejections;
  Provenance provenance;
  std::vector<ManifestEntry> manifest;
};

// Samples, decomposes and pools every (size, realization) of the sweep.
// Results do not depend on the worker count. Writes outputs when
// config.output_dir is set.
RunReport run_sweep(const RunConfig& config);

// JSON summary (schema 1) of a report; deterministic for a given config.
std::string summary_json(const RunReport& report);

void write_outputs(RunReport& report);

std::string sha256_hex(std::string_view bytes);

// Writes `contents` to `path` via a temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

// Single-realization helpers behind the CLI.
std::filesystem::path write_sample(const ensembles::EnsembleSpec& spec, const std::filesystem::path& out_dir);

std::filesystem::path write_spectrum(const ensembles::EnsembleSpec& spec, const std::filesystem::path& out_dir,
                                     const spectral::DecomposeOptions& options = {});

struct CompareBasesResult {
  double rms_right_right = 0.0;  // all ordered off-diagonal pairs
  double rms_corrected = 0.0;
  double rms_right_left = 0.0;
  std::vector<std::filesystem::path> files;
};

CompareBasesResult compare_bases(const ensembles::EnsembleSpec& spec, int observable_mode,
                                 const std::filesystem::path& out_dir);

// "start:stop:step", inclusive of stop up to rounding.
std::vector<double> parse_time_grid(std::string_view text);

// Initial state is a random pure state drawn from a stream derived from the
// realization seed; the CSV has columns t,re,im,trace_factor.
std::filesystem::path write_trajectory(const ensembles::EnsembleSpec& spec, int observable_mode,
                                       std::span<const double> times, const std::filesystem::path& out_dir);

// Aggregates summary files into report.json and gnuplot-ready variance_scaling.dat.
std::vector<std::filesystem::path> write_report(std::span<const std::filesystem::path> summaries,
                                                const std::filesystem::path& out_dir);

}  // namespace nheth::harness

#include "nheth/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include <openssl/evp.h>

#include "json.hpp"
#include "nheth/errors.hpp"
#include "nheth/fock.hpp"
#include "nheth/matrix_io.hpp"
#include "nheth/random.hpp"

namespace nheth::harness {

using json = nlohmann::ordered_json;

namespace {

struct RmsAccumulator {
  double uncorrected = 0.0;
  double corrected = 0.0;
  double biorthogonal = 0.0;
  std::size_t pairs = 0;
};

struct TaskResult {
  std::vector<eth::WindowSamples> samples;  // one per window
  std::vector<RmsAccumulator> rms;
  double reconstruction_error = 0.0;
  double pairing_error = 0.0;
  double residual = 0.0;
  std::vector<Rejection> rejections;
  std::exception_ptr error;
};

struct Task {
  std::size_t size_slot;
  std::size_t realization_slot;
};

double sum_sq_offdiag(const CMatrix& m, std::span<const std::size_t> idx) {
  double acc = 0.0;
  for (std::size_t a : idx) {
    for (std::size_t b : idx) {
      if (a != b) acc += std::norm(m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)));
    }
  }
  return acc;
}

double sorted_sum(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  double s = 0.0;
  for (double x : xs) s += x;
  return s;
}

TaskResult run_realization(const RunConfig& config, int n_modes, std::size_t slot, std::size_t count,
                           const CMatrix& observable) {
  TaskResult result;
  const spectral::DecomposeOptions options{config.tolerances.pairing, config.tolerances.conditioning};

  for (unsigned attempt = 0; attempt <= config.max_retries; ++attempt) {
    // Retries stride by the realization count so that slot streams never collide.
    const std::uint64_t index = slot + static_cast<std::uint64_t>(attempt) * count;
    const ensembles::EnsembleSpec spec{config.model, n_modes, config.master_seed, index};
    const auto realization = ensembles::sample(spec);

    spectral::SpectralDecomposition dec;
    try {
      dec = spectral::decompose(realization.matrix, options);
    } catch (const ExceptionalPointError& e) {
      result.rejections.push_back({n_modes, index, e.what()});
      continue;
    }
    const double recon = spectral::reconstruction_error(realization.matrix, dec);
    if (!(recon <= config.tolerances.reconstruction)) {
      std::ostringstream os;
      os << "reconstruction error " << recon << " above " << config.tolerances.reconstruction;
      result.rejections.push_back({n_modes, index, os.str()});
      continue;
    }

    const auto rr = eth::matrix_elements(observable, dec, eth::BasisKind::RightRight);
    const auto tilde = eth::corrected_elements(rr);
    std::optional<eth::MatrixElementSet> rl;
    if (config.biorthogonal) rl = eth::matrix_elements(observable, dec, eth::BasisKind::RightLeft);

    for (const auto& window : config.windows) {
      const auto idx = eth::select_window(dec.eigenvalues, window);
      result.samples.push_back(eth::extract_window_samples(rr, tilde, dec.eigenvalues, idx));
      RmsAccumulator acc;
      acc.uncorrected = sum_sq_offdiag(rr.elements, idx);
      acc.corrected = sum_sq_offdiag(tilde.tilde, idx);
      if (rl) acc.biorthogonal = sum_sq_offdiag(rl->elements, idx);
      acc.pairs = idx.size() > 1 ? idx.size() * (idx.size() - 1) : 0;
      result.rms.push_back(acc);
    }
    result.reconstruction_error = recon;
    result.pairing_error = dec.pairing_error;
    result.residual = dec.residual;
    return result;
  }
  std::ostringstream os;
  os << "realization slot " << slot << " at N=" << n_modes << " rejected " << (config.max_retries + 1)
     << " times; retry budget exhausted";
  if (!result.rejections.empty()) os << " (last: " << result.rejections.back().reason << ")";
  throw NumericalError(os.str());
}

std::string format_double(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

json fit_json(const stats::GaussianFit& f) {
  return json{{"n", f.n},
              {"mean", f.mean},
              {"variance", f.variance},
              {"ks_statistic", f.normality.statistic},
              {"p_value", f.normality.p_value}};
}

json slope_json(const std::optional<eth::SlopeFit>& f) {
  if (!f) return nullptr;
  return json{{"slope", f->slope}, {"intercept", f->intercept}, {"r_squared", f->r_squared}};
}

std::string slug(const eth::EnergyWindow& w, std::size_t index) {
  return "w" + std::to_string(index) + (w.kind == eth::EnergyWindow::Kind::Disk ? "_disk" : "_slice");
}

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw IoError("sha256 digest failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return os.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw IoError("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

RunReport run_sweep(const RunConfig& config) {
  validate(config);
  if (!config.output_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    if (ec || !std::filesystem::is_directory(config.output_dir)) {
      throw IoError("cannot create output directory " + config.output_dir.string());
    }
  }

  std::vector<CMatrix> observables;
  std::vector<std::vector<TaskResult>> results(config.sizes.size());
  std::vector<Task> tasks;
  for (std::size_t s = 0; s < config.sizes.size(); ++s) {
    const auto basis = ensembles::shared_basis(config.sizes[s]);
    observables.push_back(fock::number_operator(config.observable_mode, *basis));
    results[s].resize(config.realizations[s]);
    for (std::size_t k = 0; k < config.realizations[s]; ++k) tasks.push_back({s, k});
  }
  // Largest matrices first keeps the pool busy at the end.
  std::stable_sort(tasks.begin(), tasks.end(), [&config](const Task& a, const Task& b) {
    return config.sizes[a.size_slot] > config.sizes[b.size_slot];
  });

  const unsigned workers = std::max(1U, std::min<unsigned>(resolve_jobs(config.jobs),
                                                           static_cast<unsigned>(tasks.size())));
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  auto worker = [&]() {
    while (!failed.load()) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks.size()) return;
      const Task task = tasks[t];
      auto& slot = results[task.size_slot][task.realization_slot];
      try {
        slot = run_realization(config, config.sizes[task.size_slot], task.realization_slot,
                               config.realizations[task.size_slot], observables[task.size_slot]);
      } catch (...) {
        slot.error = std::current_exception();
        failed.store(true);
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  for (const auto& per_size : results) {
    for (const auto& r : per_size) {
      if (r.error) std::rethrow_exception(r.error);
    }
  }

  RunReport report;
  report.config = config;
  report.slopes.resize(config.windows.size());
  for (std::size_t s = 0; s < config.sizes.size(); ++s) {
    SizeReport sr;
    sr.n_modes = config.sizes[s];
    sr.dim = ensembles::shared_basis(sr.n_modes)->dim();
    sr.n_used = results[s].size();
    for (const auto& r : results[s]) {
      sr.n_rejected += r.rejections.size();
      report.rejections.insert(report.rejections.end(), r.rejections.begin(), r.rejections.end());
      sr.max_reconstruction_error = std::max(sr.max_reconstruction_error, r.reconstruction_error);
      sr.max_pairing_error = std::max(sr.max_pairing_error, r.pairing_error);
      sr.max_residual = std::max(sr.max_residual, r.residual);
    }
    for (std::size_t w = 0; w < config.windows.size(); ++w) {
      std::vector<eth::WindowSamples> samples;
      std::vector<double> unc, corr, bi;
      std::size_t pairs = 0;
      for (const auto& r : results[s]) {
        samples.push_back(r.samples[w]);
        unc.push_back(r.rms[w].uncorrected);
        corr.push_back(r.rms[w].corrected);
        bi.push_back(r.rms[w].biorthogonal);
        pairs += r.rms[w].pairs;
      }
      WindowResult wr;
      wr.stats = eth::pool_statistics(samples, config.windows[w], config.reference);
      if (pairs > 0) {
        const double denom = static_cast<double>(pairs);
        wr.rms.uncorrected = std::sqrt(sorted_sum(std::move(unc)) / denom);
        wr.rms.corrected = std::sqrt(sorted_sum(std::move(corr)) / denom);
        wr.rms.biorthogonal = std::sqrt(sorted_sum(std::move(bi)) / denom);
      }
      sr.windows.push_back(std::move(wr));
    }
    report.sizes.push_back(std::move(sr));
  }

  if (config.sizes.size() >= 3) {
    for (std::size_t w = 0; w < config.windows.size(); ++w) {
      auto fit = [&](auto value) -> std::optional<eth::SlopeFit> {
        std::vector<eth::SlopePoint> pts;
        for (const auto& sr : report.sizes) {
          const double v = value(sr.windows[w]);
          if (!(v > 0.0)) return std::nullopt;
          pts.push_back({static_cast<double>(sr.dim), v});
        }
        return eth::slope_fit(pts);
      };
      auto& sl = report.slopes[w];
      sl.diag = fit([](const WindowResult& r) { return r.stats.var_diag; });
      sl.offdiag = fit([](const WindowResult& r) { return r.stats.var_offdiag; });
      sl.rms_uncorrected = fit([](const WindowResult& r) { return r.rms.uncorrected; });
      sl.rms_corrected = fit([](const WindowResult& r) { return r.rms.corrected; });
      sl.rms_biorthogonal = fit([](const WindowResult& r) { return r.rms.biorthogonal; });
    }
  }

  report.provenance.config_hash = sha256_hex(canonical_text(config));
  report.provenance.rng_algorithm = std::string(kRngAlgorithmId);
  report.provenance.code_version = std::string(kCodeVersion);
  report.provenance.rejected = report.rejections.size();

  if (!config.output_dir.empty()) write_outputs(report);
  return report;
}

std::string summary_json(const RunReport& report) {
  const auto& config = report.config;
  json j;
  j["schema"] = kSummarySchema;
  j["model"] = std::string(ensembles::model_name(config.model));
  j["seed"] = config.master_seed;
  j["observable_mode"] = config.observable_mode;
  j["reference"] = std::string(eth::reference_name(config.reference));
  json windows = json::array();
  for (const auto& w : config.windows) windows.push_back(w.to_string());
  j["windows"] = windows;

  json sizes = json::array();
  for (const auto& sr : report.sizes) {
    json s;
    s["N"] = sr.n_modes;
    s["D"] = sr.dim;
    s["n_realizations"] = sr.n_used;
    s["n_rejected"] = sr.n_rejected;
    s["max_reconstruction_error"] = sr.max_reconstruction_error;
    s["max_pairing_error"] = sr.max_pairing_error;
    s["max_residual"] = sr.max_residual;
    json ws = json::array();
    for (const auto& wr : sr.windows) {
      const auto& st = wr.stats;
      json w;
      w["window"] = st.window.to_string();
      w["observable_mean"] = st.observable_mean;
      w["reference_value"] = st.reference_value;
      w["diag_mean"] = st.diag_mean;
      w["diag_mean_stderr"] = st.diag_mean_stderr;
      w["window_mean_energy"] = json::array({st.window_mean_energy.real(), st.window_mean_energy.imag()});
      w["n_diag_samples"] = st.diag_samples.size();
      w["n_offdiag_samples"] = st.offdiag_samples.size();
      w["var_diag"] = st.var_diag;
      w["var_offdiag"] = st.var_offdiag;
      w["var_offdiag_imag"] = st.var_offdiag_imag;
      w["ratio"] = st.variance_ratio();
      w["gaussian_fit"] = json{{"diag", fit_json(st.diag_fit)}, {"offdiag", fit_json(st.offdiag_fit)}};
      w["rms_offdiag"] = json{{"uncorrected", wr.rms.uncorrected},
                              {"corrected", wr.rms.corrected},
                              {"biorthogonal", wr.rms.biorthogonal}};
      ws.push_back(std::move(w));
    }
    s["windows"] = std::move(ws);
    sizes.push_back(std::move(s));
  }
  j["sizes"] = std::move(sizes);

  json slopes = json::array();
  for (std::size_t w = 0; w < report.slopes.size(); ++w) {
    json inputs{{"D", json::array()}, {"var_diag", json::array()}, {"var_offdiag", json::array()}};
    for (const auto& sr : report.sizes) {
      inputs["D"].push_back(sr.dim);
      inputs["var_diag"].push_back(sr.windows[w].stats.var_diag);
      inputs["var_offdiag"].push_back(sr.windows[w].stats.var_offdiag);
    }
    const auto& sl = report.slopes[w];
    slopes.push_back(json{{"window", config.windows[w].to_string()},
                          {"inputs", std::move(inputs)},
                          {"diag", slope_json(sl.diag)},
                          {"offdiag", slope_json(sl.offdiag)},
                          {"rms_uncorrected", slope_json(sl.rms_uncorrected)},
                          {"rms_corrected", slope_json(sl.rms_corrected)},
                          {"rms_biorthogonal", slope_json(sl.rms_biorthogonal)}});
  }
  j["slopes"] = std::move(slopes);

  json rejections = json::array();
  for (const auto& r : report.rejections) {
    rejections.push_back(json{{"N", r.n_modes}, {"realization_index", r.realization_index}, {"reason", r.reason}});
  }
  j["rejections"] = std::move(rejections);
  j["provenance"] = json{{"config_hash", report.provenance.config_hash},
                         {"rng", report.provenance.rng_algorithm},
                         {"code_version", report.provenance.code_version},
                         {"rejected", report.provenance.rejected}};
  json manifest = json::array();
  for (const auto& m : report.manifest) manifest.push_back(json{{"file", m.file}, {"sha256", m.sha256}});
  j["manifest"] = std::move(manifest);
  return j.dump(2) + "\n";
}

void write_outputs(RunReport& report) {
  const auto& dir = report.config.output_dir;
  std::filesystem::create_directories(dir);
  report.manifest.clear();
  auto emit = [&](const std::string& name, const std::string& contents) {
    write_file_atomic(dir / name, contents);
    report.manifest.push_back({name, sha256_hex(contents)});
  };

  for (const auto& sr : report.sizes) {
    for (std::size_t w = 0; w < sr.windows.size(); ++w) {
      const auto& st = sr.windows[w].stats;
      const std::string stem = "N" + std::to_string(sr.n_modes) + "_" + slug(st.window, w);

      std::string diag = "value\n";
      for (double x : st.diag_samples) diag += format_double(x) + "\n";
      emit(stem + "_diag.csv", diag);

      // Real and imaginary parts are sorted independently.
      std::string off = "re,im\n";
      for (std::size_t i = 0; i < st.offdiag_samples.size(); ++i) {
        off += format_double(st.offdiag_samples[i]) + "," + format_double(st.offdiag_imag_samples[i]) + "\n";
      }
      emit(stem + "_offdiag.csv", off);

      for (const auto& [name, samples] :
           {std::pair{std::string("diag"), &st.diag_samples}, std::pair{std::string("offdiag"), &st.offdiag_samples}}) {
        const auto h = stats::freedman_diaconis(*samples);
        std::string hist = "bin_lo,bin_hi,count\n";
        for (std::size_t b = 0; b < h.counts.size(); ++b) {
          hist += format_double(h.edges[b]) + "," + format_double(h.edges[b + 1]) + "," +
                  std::to_string(h.counts[b]) + "\n";
        }
        emit(stem + "_hist_" + name + ".csv", hist);
      }
    }
  }
  write_file_atomic(dir / "summary.json", summary_json(report));
}

std::filesystem::path write_sample(const ensembles::EnsembleSpec& spec, const std::filesystem::path& out_dir) {
  const auto realization = ensembles::sample(spec);
  std::filesystem::create_directories(out_dir);
  const auto path = out_dir / ("H_" + std::string(ensembles::model_name(spec.model)) + "_N" +
                               std::to_string(spec.n_modes) + "_r" + std::to_string(spec.realization_index) +
                               ".bin");
  io::MatrixDump dump{static_cast<std::uint32_t>(spec.n_modes), static_cast<std::uint8_t>(spec.model),
                      realization.matrix};
  io::write_matrix_binary(path, dump);
  return path;
}

std::filesystem::path write_spectrum(const ensembles::EnsembleSpec& spec, const std::filesystem::path& out_dir,
                                     const spectral::DecomposeOptions& options) {
  const auto realization = ensembles::sample(spec);
  const auto dec = spectral::decompose(realization.matrix, options);
  json j;
  j["schema"] = kSummarySchema;
  j["model"] = std::string(ensembles::model_name(spec.model));
  j["N"] = spec.n_modes;
  j["D"] = dec.dim();
  j["seed"] = spec.master_seed;
  j["realization_index"] = spec.realization_index;
  j["residual"] = dec.residual;
  j["pairing_error"] = dec.pairing_error;
  j["max_conditioning"] = dec.max_conditioning;
  j["reconstruction_error"] = spectral::reconstruction_error(realization.matrix, dec);
  json eig = json::array();
  for (Eigen::Index m = 0; m < dec.eigenvalues.size(); ++m) {
    eig.push_back(json{{"index", m}, {"re", dec.eigenvalues(m).real()}, {"im", dec.eigenvalues(m).imag()}});
  }
  j["eigenvalues"] = std::move(eig);
  std::filesystem::create_directories(out_dir);
  const auto path = out_dir / "spectrum.json";
  write_file_atomic(path, j.dump(2) + "\n");
  return path;
}

namespace {

std::string grid_csv(const CMatrix& m) {
  std::string out;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out += ',';
      out += format_double(std::abs(m(r, c)));
    }
    out += '\n';
  }
  return out;
}

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  return idx;
}

}  // namespace

CompareBasesResult compare_bases(const ensembles::EnsembleSpec& spec, int observable_mode,
                                 const std::filesystem::path& out_dir) {
  const auto realization = ensembles::sample(spec);
  const auto dec = spectral::decompose(realization.matrix);
  const CMatrix obs = fock::number_operator(observable_mode, *realization.basis);
  const auto rr = eth::matrix_elements(obs, dec, eth::BasisKind::RightRight);
  const auto rl = eth::matrix_elements(obs, dec, eth::BasisKind::RightLeft);
  const auto tilde = eth::corrected_elements(rr);

  const auto idx = all_indices(dec.dim());
  CompareBasesResult res;
  res.rms_right_right = eth::rms_offdiagonal(rr.elements, idx);
  res.rms_corrected = eth::rms_offdiagonal(tilde.tilde, idx);
  res.rms_right_left = eth::rms_offdiagonal(rl.elements, idx);

  std::filesystem::create_directories(out_dir);
  auto emit = [&](const std::string& name, const std::string& contents) {
    write_file_atomic(out_dir / name, contents);
    res.files.push_back(out_dir / name);
  };
  emit("abs_right_right.csv", grid_csv(rr.elements));
  emit("abs_right_left.csv", grid_csv(rl.elements));
  emit("abs_corrected.csv", grid_csv(tilde.tilde));
  json j{{"schema", kSummarySchema},
         {"model", std::string(ensembles::model_name(spec.model))},
         {"N", spec.n_modes},
         {"D", dec.dim()},
         {"seed", spec.master_seed},
         {"realization_index", spec.realization_index},
         {"observable_mode", observable_mode},
         {"rms_offdiag", json{{"right_right", res.rms_right_right},
                              {"corrected", res.rms_corrected},
                              {"right_left", res.rms_right_left}}}};
  emit("compare_bases.json", j.dump(2) + "\n");
  return res;
}

std::vector<double> parse_time_grid(std::string_view text) {
  std::vector<double> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = text.find(':', start);
    const std::string item(text.substr(start, colon - start));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw InvalidArgument("time grid must be start:stop:step");
    parts.push_back(v);
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 3) throw InvalidArgument("time grid must be start:stop:step");
  const double t0 = parts[0], t1 = parts[1], dt = parts[2];
  if (!(dt > 0.0) || !(t1 >= t0) || !std::isfinite(t1)) {
    throw InvalidArgument("time grid needs step > 0 and stop >= start");
  }
  const auto steps = static_cast<std::size_t>(std::floor((t1 - t0) / dt + 1e-9));
  if (steps > 10'000'000) throw InvalidArgument("time grid has too many points");
  std::vector<double> times;
  for (std::size_t k = 0; k <= steps; ++k) times.push_back(t0 + static_cast<double>(k) * dt);
  return times;
}

std::filesystem::path write_trajectory(const ensembles::EnsembleSpec& spec, int observable_mode,
                                       std::span<const double> times, const std::filesystem::path& out_dir) {
  const auto realization = ensembles::sample(spec);
  const auto dec = spectral::decompose(realization.matrix);
  const CMatrix obs = fock::number_operator(observable_mode, *realization.basis);
  const std::uint64_t state_seed =
      derive_realization_seed(splitmix64(spec.master_seed ^ 0x696e697473746174ULL), spec.realization_index);
  const CMatrix rho = dynamics::random_pure_state(dec.dim(), state_seed);
  const auto state = dynamics::DynamicsState::create(rho, dec);
  const auto traj = dynamics::expectation_trajectory(obs, state, dec, times);

  std::string csv = "t,re,im,trace_factor\n";
  for (const auto& p : traj) {
    csv += format_double(p.t) + "," + format_double(p.value.real()) + "," + format_double(p.value.imag()) + "," +
           format_double(p.trace_factor) + "\n";
  }
  std::filesystem::create_directories(out_dir);
  const auto path = out_dir / "trajectory.csv";
  write_file_atomic(path, csv);
  return path;
}

std::vector<std::filesystem::path> write_report(std::span<const std::filesystem::path> summaries,
                                                const std::filesystem::path& out_dir) {
  if (summaries.empty()) throw InvalidArgument("report needs at least one summary file");
  json runs = json::array();
  std::string dat = "# model window N D log10_D var_diag var_offdiag ratio\n";
  bool first_block = true;
  for (const auto& path : summaries) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open summary " + path.string());
    json s;
    try {
      s = json::parse(in);
    } catch (const json::exception& e) {
      throw IoError("malformed summary " + path.string() + ": " + e.what());
    }
    if (!s.contains("schema") || s["schema"] != kSummarySchema) {
      throw IoError("summary " + path.string() + " has an unsupported schema");
    }
    json run{{"source", path.filename().string()}, {"model", s["model"]}, {"windows", json::array()}};
    const auto& windows = s["windows"];
    for (std::size_t w = 0; w < windows.size(); ++w) {
      json entry{{"window", windows[w]}, {"ratios", json::array()}};
      if (w < s["slopes"].size()) {
        entry["slope_diag"] = s["slopes"][w]["diag"];
        entry["slope_offdiag"] = s["slopes"][w]["offdiag"];
      }
      if (!first_block) dat += "\n\n";
      first_block = false;
      for (const auto& size : s["sizes"]) {
        const auto& ws = size["windows"][w];
        entry["ratios"].push_back(json{{"N", size["N"]}, {"ratio", ws["ratio"]}});
        const double d = size["D"].get<double>();
        dat += s["model"].get<std::string>() + " " + windows[w].get<std::string>() + " " +
               std::to_string(size["N"].get<int>()) + " " + format_double(d) + " " +
               format_double(std::log10(d)) + " " + format_double(ws["var_diag"].get<double>()) + " " +
               format_double(ws["var_offdiag"].get<double>()) + " " + format_double(ws["ratio"].get<double>()) +
               "\n";
      }
      run["windows"].push_back(std::move(entry));
    }
    runs.push_back(std::move(run));
  }
  std::filesystem::create_directories(out_dir);
  const auto report_path = out_dir / "report.json";
  const auto dat_path = out_dir / "variance_scaling.dat";
  write_file_atomic(report_path, json{{"schema", kSummarySchema}, {"runs", runs}}.dump(2) + "\n");
  write_file_atomic(dat_path, dat);
  return {report_path, dat_path};
}

}  // namespace nheth::harness

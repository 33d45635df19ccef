#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nheth/config.hpp"
#include "nheth/errors.hpp"
#include "nheth/harness.hpp"

namespace {

using namespace nheth;

enum ExitCode { kOk = 0, kValidation = 1, kNumerical = 2, kIo = 3 };

struct Options {
  std::string config;
  std::string model;
  std::vector<int> sizes;
  std::vector<std::size_t> realizations;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> windows;
  std::string out = ".";
  std::optional<unsigned> jobs;
  std::optional<int> observable_mode;
  std::string reference;
  std::uint64_t realization = 0;
  std::string times = "0:10:0.1";
  std::vector<std::string> summaries;
};

harness::RunConfig sweep_config(const Options& o, bool single = false) {
  harness::RunConfig c;
  if (!o.config.empty()) c = harness::load_config(o.config);
  if (!o.model.empty()) c.model = ensembles::parse_model(o.model);
  if (!o.sizes.empty()) c.sizes = o.sizes;
  if (!o.realizations.empty()) c.realizations = o.realizations;
  if (single) c.realizations.assign(c.sizes.size(), 1);
  if (c.realizations.size() == 1 && c.sizes.size() > 1) c.realizations.resize(c.sizes.size(), c.realizations[0]);
  if (o.seed) c.master_seed = *o.seed;
  if (!o.windows.empty()) {
    c.windows.clear();
    for (const auto& w : o.windows) c.windows.push_back(eth::EnergyWindow::parse(w));
  }
  if (o.observable_mode) c.observable_mode = *o.observable_mode;
  if (!o.reference.empty()) c.reference = eth::parse_reference(o.reference);
  if (o.jobs) c.jobs = *o.jobs;
  c.output_dir = o.out;
  harness::validate(c);
  return c;
}

ensembles::EnsembleSpec single_spec(const Options& o) {
  const auto c = sweep_config(o, true);
  if (c.sizes.size() != 1) throw InvalidArgument("this subcommand takes exactly one --size");
  ensembles::EnsembleSpec spec{c.model, c.sizes.front(), c.master_seed, o.realization};
  ensembles::validate(spec);
  return spec;
}

int observable_mode(const Options& o) { return sweep_config(o, true).observable_mode; }

void print_sweep(const harness::RunReport& r) {
  for (const auto& s : r.sizes) {
    for (const auto& w : s.windows) {
      std::cout << "N=" << s.n_modes << " D=" << s.dim << " window=" << w.stats.window.to_string()
                << " var_diag=" << w.stats.var_diag << " var_offdiag=" << w.stats.var_offdiag
                << " ratio=" << w.stats.variance_ratio() << "\n";
    }
  }
  for (std::size_t w = 0; w < r.slopes.size(); ++w) {
    const auto& sl = r.slopes[w];
    if (sl.diag && sl.offdiag) {
      std::cout << "slope window=" << r.config.windows[w].to_string() << " diag=" << sl.diag->slope
                << " offdiag=" << sl.offdiag->slope << "\n";
    }
  }
  std::cout << "wrote " << (r.config.output_dir / "summary.json").string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eigenstate thermalization statistics for non-Hermitian random Hamiltonians"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&o](CLI::App* sub) {
    sub->add_option("--config", o.config, "Key-value config file");
    sub->add_option("--model", o.model, "ginibre, syk1, syk2, syk3, syk-hermitian, gue");
    sub->add_option("--size", o.sizes, "Number of modes N (repeatable for eth)");
    sub->add_option("--seed", o.seed, "Master seed");
    sub->add_option("--out", o.out, "Output directory");
    sub->add_option("--observable-mode", o.observable_mode, "Mode j of the observable n_j");
  };
  auto add_single = [&o](CLI::App* sub) {
    sub->add_option("--realization", o.realization, "Realization index");
  };

  auto* sample = app.add_subcommand("sample", "Write one Hamiltonian in binary form");
  add_common(sample);
  add_single(sample);
  auto* spectrum = app.add_subcommand("spectrum", "Write eigendata of one realization");
  add_common(spectrum);
  add_single(spectrum);
  auto* eth_cmd = app.add_subcommand("eth", "Run a statistics sweep");
  add_common(eth_cmd);
  eth_cmd->add_option("--realizations", o.realizations, "Realizations per size");
  eth_cmd->add_option("--window", o.windows, "disk:<r> or slice:<rho_min>,<rho_max>,<phi_max>");
  eth_cmd->add_option("--reference", o.reference, "global or window");
  eth_cmd->add_option("--jobs", o.jobs, "Worker threads (default NHETH_JOBS or 1)");
  auto* dyn = app.add_subcommand("dynamics", "Write an observable trajectory");
  add_common(dyn);
  add_single(dyn);
  dyn->add_option("--times", o.times, "start:stop:step");
  auto* cmp = app.add_subcommand("compare-bases", "Write right-right and right-left element grids");
  add_common(cmp);
  add_single(cmp);
  auto* report = app.add_subcommand("report", "Aggregate summary files");
  report->add_option("summaries", o.summaries, "summary.json files")->required();
  report->add_option("--out", o.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kValidation;
  }

  try {
    if (sample->parsed()) {
      std::cout << "wrote " << harness::write_sample(single_spec(o), o.out).string() << "\n";
    } else if (spectrum->parsed()) {
      const auto c = sweep_config(o, true);
      const spectral::DecomposeOptions opts{c.tolerances.pairing, c.tolerances.conditioning};
      std::cout << "wrote " << harness::write_spectrum(single_spec(o), o.out, opts).string() << "\n";
    } else if (eth_cmd->parsed()) {
      print_sweep(harness::run_sweep(sweep_config(o)));
    } else if (dyn->parsed()) {
      const auto times = harness::parse_time_grid(o.times);
      const auto path = harness::write_trajectory(single_spec(o), observable_mode(o), times, o.out);
      std::cout << "wrote " << path.string() << "\n";
    } else if (cmp->parsed()) {
      const auto r = harness::compare_bases(single_spec(o), observable_mode(o), o.out);
      std::cout << "rms_offdiag right_right=" << r.rms_right_right << " corrected=" << r.rms_corrected
                << " right_left=" << r.rms_right_left << "\n";
      for (const auto& f : r.files) std::cout << "wrote " << f.string() << "\n";
    } else if (report->parsed()) {
      std::vector<std::filesystem::path> paths(o.summaries.begin(), o.summaries.end());
      for (const auto& f : harness::write_report(paths, o.out)) std::cout << "wrote " << f.string() << "\n";
    }
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return kNumerical;
  }
  return kOk;
}

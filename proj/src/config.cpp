#include "nheth/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "nheth/errors.hpp"

namespace nheth::harness {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(trim(s.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

long long parse_integer(std::string_view key, std::string_view text) {
  const std::string s(text);
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw InvalidArgument("config key '" + std::string(key) + "': expected an integer, got '" + s + "'");
  }
  return v;
}

std::uint64_t parse_unsigned64(std::string_view key, std::string_view text) {
  const std::string s(text);
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    if (!s.empty() && s.front() == '-') throw std::invalid_argument("negative");
    v = std::stoull(s, &used, 0);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw InvalidArgument("config key '" + std::string(key) + "': expected a non-negative integer, got '" +
                          s + "'");
  }
  return v;
}

double parse_real(std::string_view key, std::string_view text) {
  const std::string s(text);
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw InvalidArgument("config key '" + std::string(key) + "': expected a number, got '" + s + "'");
  }
  return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw InvalidArgument("config key '" + std::string(key) + "': expected true or false");
}

}  // namespace

void validate(const RunConfig& config) {
  if (config.sizes.empty()) throw InvalidArgument("config: sizes must not be empty");
  if (config.sizes.size() != config.realizations.size()) {
    throw InvalidArgument("config: sizes and realizations must have the same length");
  }
  for (int n : config.sizes) {
    ensembles::validate({config.model, n, config.master_seed, 0});
    if (config.observable_mode < 0 || config.observable_mode >= n) {
      throw InvalidArgument("config: observable_mode " + std::to_string(config.observable_mode) +
                            " outside [0, " + std::to_string(n) + ")");
    }
  }
  for (std::size_t k : config.realizations) {
    if (k < 1) throw InvalidArgument("config: realization counts must be at least 1");
  }
  if (config.windows.empty()) throw InvalidArgument("config: at least one window is required");
  for (const auto& w : config.windows) w.validate();
  if (!(config.tolerances.pairing > 0.0) || !(config.tolerances.reconstruction > 0.0) ||
      !(config.tolerances.conditioning > 0.0)) {
    throw InvalidArgument("config: tolerances must be positive");
  }
}

void apply_setting(RunConfig& config, std::string_view key, std::string_view value) {
  if (key == "model") {
    config.model = ensembles::parse_model(value);
  } else if (key == "seed") {
    config.master_seed = parse_unsigned64(key, value);
  } else if (key == "sizes") {
    config.sizes.clear();
    for (auto item : split_list(value)) config.sizes.push_back(static_cast<int>(parse_integer(key, item)));
  } else if (key == "realizations") {
    config.realizations.clear();
    for (auto item : split_list(value)) {
      const long long k = parse_integer(key, item);
      if (k < 0) throw InvalidArgument("config: realization counts must be at least 1");
      config.realizations.push_back(static_cast<std::size_t>(k));
    }
  } else if (key == "window") {
    config.windows.push_back(eth::EnergyWindow::parse(value));
  } else if (key == "observable_mode") {
    config.observable_mode = static_cast<int>(parse_integer(key, value));
  } else if (key == "reference") {
    config.reference = eth::parse_reference(value);
  } else if (key == "output_dir") {
    config.output_dir = std::string(value);
  } else if (key == "jobs") {
    config.jobs = static_cast<unsigned>(parse_unsigned64(key, value));
  } else if (key == "max_retries") {
    config.max_retries = static_cast<unsigned>(parse_unsigned64(key, value));
  } else if (key == "biorthogonal") {
    config.biorthogonal = parse_bool(key, value);
  } else if (key == "tol.pairing") {
    config.tolerances.pairing = parse_real(key, value);
  } else if (key == "tol.reconstruction") {
    config.tolerances.reconstruction = parse_real(key, value);
  } else if (key == "tol.conditioning") {
    config.tolerances.conditioning = parse_real(key, value);
  } else {
    throw InvalidArgument("unknown config key '" + std::string(key) + "'");
  }
}

RunConfig parse_config(std::string_view text) {
  RunConfig config;
  bool windows_reset = false;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidArgument("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key == "window" && !windows_reset) {
      config.windows.clear();
      windows_reset = true;
    }
    try {
      apply_setting(config, key, value);
    } catch (const InvalidArgument& e) {
      throw InvalidArgument("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  validate(config);
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string canonical_text(const RunConfig& config) {
  std::ostringstream os;
  os.precision(17);
  os << "model = " << ensembles::model_name(config.model) << '\n';
  os << "seed = " << config.master_seed << '\n';
  os << "sizes = ";
  for (std::size_t i = 0; i < config.sizes.size(); ++i) os << (i ? "," : "") << config.sizes[i];
  os << "\nrealizations = ";
  for (std::size_t i = 0; i < config.realizations.size(); ++i) os << (i ? "," : "") << config.realizations[i];
  os << '\n';
  for (const auto& w : config.windows) os << "window = " << w.to_string() << '\n';
  os << "observable_mode = " << config.observable_mode << '\n';
  os << "reference = " << eth::reference_name(config.reference) << '\n';
  os << "max_retries = " << config.max_retries << '\n';
  os << "biorthogonal = " << (config.biorthogonal ? "true" : "false") << '\n';
  os << "tol.pairing = " << config.tolerances.pairing << '\n';
  os << "tol.reconstruction = " << config.tolerances.reconstruction << '\n';
  os << "tol.conditioning = " << config.tolerances.conditioning << '\n';
  return os.str();
}

unsigned resolve_jobs(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("NHETH_JOBS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw InvalidArgument(std::string("NHETH_JOBS must be a positive integer, got '") + env + "'");
  }
  return 1;
}

}  // namespace nheth::harness

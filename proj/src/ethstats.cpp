#include "nheth/ethstats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "nheth/errors.hpp"

namespace nheth::eth {

namespace {

bool is_diagonal(const CMatrix& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r != c && m(r, c) != cplx{0.0, 0.0}) return false;
    }
  }
  return true;
}

// V^dagger O W. A diagonal O only touches the rows where it is nonzero.
CMatrix sandwich(const CMatrix& v, const CMatrix& observable, bool diagonal, const CMatrix& w) {
  if (!diagonal) return v.adjoint() * (observable * w);
  std::vector<Eigen::Index> rows;
  for (Eigen::Index k = 0; k < observable.rows(); ++k) {
    if (observable(k, k) != cplx{0.0, 0.0}) rows.push_back(k);
  }
  const auto s = static_cast<Eigen::Index>(rows.size());
  CMatrix vs(s, v.cols()), ws(s, w.cols());
  for (Eigen::Index i = 0; i < s; ++i) {
    vs.row(i) = v.row(rows[static_cast<std::size_t>(i)]);
    ws.row(i) = observable(rows[static_cast<std::size_t>(i)], rows[static_cast<std::size_t>(i)]) *
                w.row(rows[static_cast<std::size_t>(i)]);
  }
  return vs.adjoint() * ws;
}

double parse_double(std::string_view text, std::string_view what) {
  const std::string s(text);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw InvalidArgument("cannot parse " + std::string(what) + " from '" + s + "'");
  }
  return value;
}

}  // namespace

double MatrixElementSet::fluctuation_scale() const {
  const auto dim = static_cast<double>(elements.rows());
  return dim > 0 ? std::sqrt(observable_sq_mean / dim) : 0.0;
}

MatrixElementSet matrix_elements(const CMatrix& observable, const spectral::SpectralDecomposition& dec,
                                 BasisKind kind) {
  const auto dim = static_cast<Eigen::Index>(dec.dim());
  if (observable.rows() != dim || observable.cols() != dim) {
    throw InvalidArgument("matrix_elements: observable is " + std::to_string(observable.rows()) + "x" +
                          std::to_string(observable.cols()) + " but the decomposition has dimension " +
                          std::to_string(dim));
  }
  const bool diagonal = is_diagonal(observable);

  MatrixElementSet out;
  out.basis_kind = kind;
  if (kind == BasisKind::RightRight) {
    out.elements = sandwich(dec.right, observable, diagonal, dec.right);
    out.gram = spectral::overlap_gram(dec);
  } else {
    out.elements = sandwich(dec.right, observable, diagonal, dec.left.adjoint());
  }
  if (dim > 0) {
    out.observable_mean = observable.trace().real() / static_cast<double>(dim);
    const double sq_trace =
        diagonal ? observable.diagonal().squaredNorm() : (observable * observable).trace().real();
    out.observable_sq_mean = sq_trace / static_cast<double>(dim);
  }
  return out;
}

CorrectedElements corrected_elements(const MatrixElementSet& mset) {
  if (mset.basis_kind != BasisKind::RightRight || !mset.gram) {
    throw UnsupportedBasisError(
        "overlap correction is defined only for right-right matrix elements");
  }
  CorrectedElements out;
  out.tilde = mset.elements - mset.observable_mean * mset.gram->g;
  out.tilde.diagonal() = mset.elements.diagonal();
  return out;
}

DecompositionCheck decomposition_check(const spectral::SpectralDecomposition& dec, std::size_t m,
                                       std::size_t n) {
  if (m == n) throw InvalidArgument("decomposition_check requires m != n");
  if (m >= dec.dim() || n >= dec.dim()) throw InvalidArgument("decomposition_check: index out of range");
  const auto rm = dec.right.col(static_cast<Eigen::Index>(m));
  const auto rn = dec.right.col(static_cast<Eigen::Index>(n));

  DecompositionCheck out;
  out.alpha = rm.dot(rn);  // conjugates the left operand
  CVector orth = rn - out.alpha * rm;
  const double norm = orth.norm();
  if (norm == 0.0) {
    throw ExceptionalPointError(n, INFINITY, "right eigenvectors " + std::to_string(m) + " and " +
                                                 std::to_string(n) + " are parallel");
  }
  out.perpendicular = orth / norm;
  out.beta = out.perpendicular.dot(rn);
  out.residual = (rn - out.alpha * rm - out.beta * out.perpendicular).norm();
  return out;
}

EnergyWindow EnergyWindow::disk(double r) {
  EnergyWindow w;
  w.kind = Kind::Disk;
  w.radius = r;
  w.validate();
  return w;
}

EnergyWindow EnergyWindow::slice(double rho_min, double rho_max, double phi_max) {
  EnergyWindow w;
  w.kind = Kind::AngularSlice;
  w.rho_min = rho_min;
  w.rho_max = rho_max;
  w.phi_max = phi_max;
  w.validate();
  return w;
}

EnergyWindow EnergyWindow::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw InvalidArgument("window must look like disk:<r> or slice:<rho_min>,<rho_max>,<phi_max>");
  }
  const auto kind = text.substr(0, colon);
  const auto args = text.substr(colon + 1);
  if (kind == "disk") return disk(parse_double(args, "disk radius"));
  if (kind == "slice") {
    std::vector<double> values;
    std::size_t start = 0;
    while (true) {
      const auto comma = args.find(',', start);
      values.push_back(parse_double(args.substr(start, comma - start), "slice bound"));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (values.size() != 3) throw InvalidArgument("slice window needs exactly three numbers");
    return slice(values[0], values[1], values[2]);
  }
  throw InvalidArgument("unknown window kind '" + std::string(kind) + "'");
}

namespace {

// Shortest text that parses back to the same double.
std::string shortest(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string EnergyWindow::to_string() const {
  if (kind == Kind::Disk) return "disk:" + shortest(radius);
  return "slice:" + shortest(rho_min) + "," + shortest(rho_max) + "," + shortest(phi_max);
}

void EnergyWindow::validate() const {
  if (kind == Kind::Disk) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidArgument("disk radius must be positive");
    return;
  }
  if (!(rho_min >= 0.0) || !(rho_max > rho_min) || !std::isfinite(rho_max)) {
    throw InvalidArgument("slice needs 0 <= rho_min < rho_max");
  }
  if (!(phi_max > 0.0)) throw InvalidArgument("slice phase bound must be positive");
}

bool EnergyWindow::contains(cplx e) const {
  const double modulus = std::abs(e);
  if (kind == Kind::Disk) return modulus <= radius;
  return modulus >= rho_min && modulus <= rho_max && std::abs(std::arg(e)) <= phi_max;
}

std::vector<std::size_t> select_window(const CVector& eigenvalues, const EnergyWindow& window) {
  window.validate();
  std::vector<std::size_t> out;
  for (Eigen::Index m = 0; m < eigenvalues.size(); ++m) {
    if (window.contains(eigenvalues(m))) out.push_back(static_cast<std::size_t>(m));
  }
  return out;
}

std::string_view reference_name(Reference r) noexcept {
  return r == Reference::GlobalMean ? "global" : "window";
}

Reference parse_reference(std::string_view text) {
  if (text == "global") return Reference::GlobalMean;
  if (text == "window") return Reference::WindowMean;
  throw InvalidArgument("reference must be 'global' or 'window', got '" + std::string(text) + "'");
}

WindowSamples extract_window_samples(const MatrixElementSet& mset, const CorrectedElements& corrected,
                                     const CVector& eigenvalues, std::span<const std::size_t> window) {
  WindowSamples out;
  out.observable_mean = mset.observable_mean;
  out.diagonal.reserve(window.size());
  for (std::size_t a = 0; a < window.size(); ++a) {
    const auto m = static_cast<Eigen::Index>(window[a]);
    out.diagonal.push_back(mset.elements(m, m).real());
    out.energy_sum += eigenvalues(m);
    for (std::size_t b = a + 1; b < window.size(); ++b) {
      const auto n = static_cast<Eigen::Index>(window[b]);
      out.offdiag_re.push_back(corrected.tilde(m, n).real());
      out.offdiag_im.push_back(corrected.tilde(m, n).imag());
    }
  }
  return out;
}

EthStatistics pool_statistics(std::span<const WindowSamples> realizations, const EnergyWindow& window,
                              Reference reference) {
  if (realizations.empty()) throw InvalidArgument("pool_statistics needs at least one realization");
  EthStatistics st;
  st.window = window;
  st.reference = reference;
  st.n_realizations = realizations.size();

  std::vector<double> raw_diag, centered;
  std::vector<cplx> energies;
  // (count, mean) of each nonempty window, for the references and the
  // realization-clustered standard error.
  std::vector<std::pair<std::size_t, double>> groups;
  for (const auto& r : realizations) {
    st.per_realization_counts.push_back(r.diagonal.size());
    raw_diag.insert(raw_diag.end(), r.diagonal.begin(), r.diagonal.end());
    if (!r.diagonal.empty()) {
      std::vector<double> own(r.diagonal.begin(), r.diagonal.end());
      std::sort(own.begin(), own.end());
      const double m = stats::mean(own);
      groups.emplace_back(own.size(), m);
      for (double x : own) centered.push_back(x - m);
    }
    st.offdiag_samples.insert(st.offdiag_samples.end(), r.offdiag_re.begin(), r.offdiag_re.end());
    st.offdiag_imag_samples.insert(st.offdiag_imag_samples.end(), r.offdiag_im.begin(), r.offdiag_im.end());
    if (!r.diagonal.empty()) energies.push_back(r.energy_sum);
  }
  if (raw_diag.empty()) {
    std::ostringstream os;
    os << "energy window " << window.to_string() << " selected no eigenstates in any of "
       << realizations.size() << " realizations";
    throw EmptyWindowError(st.per_realization_counts, os.str());
  }

  std::sort(raw_diag.begin(), raw_diag.end());
  std::sort(st.offdiag_samples.begin(), st.offdiag_samples.end());
  std::sort(st.offdiag_imag_samples.begin(), st.offdiag_imag_samples.end());

  // Energy sums are complex; sort by (re, im) before adding.
  std::sort(energies.begin(), energies.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  cplx esum{0.0, 0.0};
  for (cplx e : energies) esum += e;
  st.window_mean_energy = esum / static_cast<double>(raw_diag.size());

  std::vector<double> obs_means;
  for (const auto& r : realizations) obs_means.push_back(r.observable_mean);
  std::sort(obs_means.begin(), obs_means.end());
  st.observable_mean = stats::mean(obs_means);
  st.diag_mean = stats::mean(raw_diag);

  std::sort(groups.begin(), groups.end());
  const double total = static_cast<double>(raw_diag.size());
  std::vector<double> spread, means;
  for (const auto& [count, m] : groups) {
    const double w = static_cast<double>(count) * (m - st.diag_mean);
    spread.push_back(w * w);
    means.push_back(m);
  }
  const double clusters = static_cast<double>(groups.size());
  st.diag_mean_stderr =
      groups.size() > 1 ? std::sqrt(clusters / (clusters - 1.0) * std::accumulate(spread.begin(), spread.end(), 0.0)) / total : 0.0;

  if (reference == Reference::GlobalMean) {
    st.reference_value = st.observable_mean;
    st.diag_samples.reserve(raw_diag.size());
    for (double x : raw_diag) st.diag_samples.push_back(x - st.reference_value);
  } else {
    st.reference_value = stats::mean(means);
    st.diag_samples = std::move(centered);
    std::sort(st.diag_samples.begin(), st.diag_samples.end());
  }

  st.var_diag = stats::sample_variance(st.diag_samples);
  st.var_offdiag = stats::sample_variance(st.offdiag_samples);
  st.var_offdiag_imag = stats::sample_variance(st.offdiag_imag_samples);
  st.diag_fit = stats::fit_gaussian(st.diag_samples);
  st.offdiag_fit = stats::fit_gaussian(st.offdiag_samples);
  return st;
}

SlopeFit slope_fit(std::span<const SlopePoint> points) {
  if (points.size() < 3) throw InvalidArgument("slope_fit needs at least three points");
  std::vector<double> x, y;
  for (const auto& p : points) {
    if (!(p.variance > 0.0)) {
      throw InvalidArgument("slope_fit: variance must be positive, got " + std::to_string(p.variance));
    }
    if (!(p.dim > 0.0)) throw InvalidArgument("slope_fit: dimension must be positive");
    x.push_back(std::log10(p.dim));
    y.push_back(std::log10(p.variance));
  }
  const auto fit = stats::least_squares(x, y);
  return {fit.slope, fit.intercept, fit.r_squared};
}

double rms_offdiagonal(const CMatrix& m, std::span<const std::size_t> indices) {
  double acc = 0.0;
  std::size_t count = 0;
  for (std::size_t a : indices) {
    for (std::size_t b : indices) {
      if (a == b) continue;
      acc += std::norm(m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)));
      ++count;
    }
  }
  return count ? std::sqrt(acc / static_cast<double>(count)) : 0.0;
}

}  // namespace nheth::eth

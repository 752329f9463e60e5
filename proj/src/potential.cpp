#include "qglab/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qglab/csv.hpp"
#include "qglab/errors.hpp"

namespace qglab {

namespace {

constexpr double kSymmetryTol = 1e-12;

void check_length(double length) {
  if (!(length > 0.0) || !std::isfinite(length)) throw ConfigError("potential: edge length must be positive");
}

}  // namespace

double symmetry_defect(const std::vector<double>& samples) {
  double worst = 0.0;
  const std::size_t n = samples.size();
  for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(samples[i] - samples[n - 1 - i]));
  return worst;
}

Potential Potential::zero(double length) {
  check_length(length);
  return Potential(PotentialForm::zero, length);
}

Potential Potential::cosine(double length, double amplitude) {
  check_length(length);
  if (!std::isfinite(amplitude)) throw ConfigError("potential: cosine amplitude must be finite");
  if (amplitude == 0.0) return zero(length);
  Potential p(PotentialForm::cosine, length);
  p.amplitude_ = amplitude;
  return p;
}

Potential Potential::sampled(double length, std::vector<double> samples) {
  check_length(length);
  if (samples.size() < 4) throw ConfigError("potential: need at least 4 samples");
  for (double u : samples)
    if (!std::isfinite(u)) throw ConfigError("potential: samples must be finite");
  const double defect = symmetry_defect(samples);
  if (defect > kSymmetryTol)
    throw ConfigError("potential: samples violate U(L - x) = U(x) (defect " + format_real(defect) + ")");
  if (std::all_of(samples.begin(), samples.end(), [](double u) { return u == 0.0; })) return zero(length);
  Potential p(PotentialForm::sampled, length);
  p.samples_ = std::move(samples);
  return p;
}

Potential Potential::load_csv(const std::filesystem::path& path, double length) {
  const CsvTable table = read_csv(path);
  if (table.header.size() != 2 || trim(table.header[0]) != "x" || trim(table.header[1]) != "u")
    throw ConfigError("potential file " + path.string() + ": header must be \"x,u\"");
  std::vector<double> xs, us;
  for (const auto& row : table.rows) {
    if (row.size() != 2) throw ConfigError("potential file " + path.string() + ": expected 2 columns");
    xs.push_back(parse_real(row[0]));
    us.push_back(parse_real(row[1]));
  }
  if (xs.size() < 4) throw ConfigError("potential file " + path.string() + ": need at least 4 rows");
  const double h = length / static_cast<double>(xs.size() - 1);
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (std::abs(xs[i] - h * static_cast<double>(i)) > 1e-9 * std::max(1.0, length))
      throw ConfigError("potential file " + path.string() + ": x must be a uniform grid over [0, L] including both ends");
  return sampled(length, std::move(us));
}

double Potential::value(double x) const {
  switch (form_) {
    case PotentialForm::zero:
      return 0.0;
    case PotentialForm::cosine:
      return amplitude_ * std::cos(2.0 * std::numbers::pi * x / length_);
    case PotentialForm::sampled:
      break;
  }
  const int cells = static_cast<int>(samples_.size()) - 1;
  const double t = std::clamp(x / length_, 0.0, 1.0) * cells;
  const int i = std::min(static_cast<int>(std::floor(t)), cells - 1);
  const double u = t - i;
  if (u == 0.0) return samples_[static_cast<std::size_t>(i)];
  // Stencil i-1..i+2, shifted inward at the ends; the choice commutes with the mirror map.
  const int first = std::clamp(i - 1, 0, cells - 3);
  const double s = t - first;
  double acc = 0.0;
  for (int a = 0; a < 4; ++a) {
    double weight = 1.0;
    for (int b = 0; b < 4; ++b)
      if (b != a) weight *= (s - b) / static_cast<double>(a - b);
    acc += weight * samples_[static_cast<std::size_t>(first + a)];
  }
  return acc;
}

const std::vector<double>& Potential::half_grid(int grid_n) const {
  if (grid_n < 1) throw std::invalid_argument("half_grid: grid_n must be positive");
  std::lock_guard lock(cache_->mutex);
  auto& slot = cache_->half[grid_n];
  if (slot) return *slot;
  const std::size_t m = 2 * static_cast<std::size_t>(grid_n);
  std::vector<double> v(m + 1, 0.0);
  if (!is_zero())
    for (std::size_t j = 0; j <= m; ++j) v[j] = value(length_ * static_cast<double>(j) / static_cast<double>(m));
  for (std::size_t j = 0; j < m - j; ++j) {
    const double mean = 0.5 * (v[j] + v[m - j]);
    v[j] = v[m - j] = mean;
  }
  slot = std::make_unique<const std::vector<double>>(std::move(v));
  return *slot;
}

std::vector<double> Potential::grid(int grid_n) const {
  const auto& half = half_grid(grid_n);
  std::vector<double> v(static_cast<std::size_t>(grid_n) + 1);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = half[2 * i];
  return v;
}

std::string Potential::describe() const {
  std::ostringstream out;
  switch (form_) {
    case PotentialForm::zero:
      out << "zero";
      break;
    case PotentialForm::cosine:
      out << "cosine:" << format_real(amplitude_);
      break;
    case PotentialForm::sampled:
      out << "sampled(" << samples_.size() << " points)";
      break;
  }
  return out.str();
}

}  // namespace qglab

#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace qglab {

enum class PotentialForm { zero, cosine, sampled };

// Edge potential on [0, L], symmetric under x -> L - x.
class Potential {
 public:
  static Potential zero(double length);
  // amplitude * cos(2 pi x / L)
  static Potential cosine(double length, double amplitude);
  // Values on a uniform grid including both endpoints. Rejects asymmetric data.
  static Potential sampled(double length, std::vector<double> samples);
  // CSV with header "x,u" on a uniform grid including both endpoints.
  static Potential load_csv(const std::filesystem::path& path, double length);

  PotentialForm form() const { return form_; }
  bool is_zero() const { return form_ == PotentialForm::zero; }
  double length() const { return length_; }
  double amplitude() const { return amplitude_; }
  const std::vector<double>& raw_samples() const { return samples_; }

  // Exact for closed forms; mirror-symmetric cubic interpolation otherwise.
  double value(double x) const;
  // Values at x_j = j L / (2 grid_n), j = 0..2 grid_n: nodes and midpoints of
  // the grid with grid_n cells, symmetrized exactly. Memoized per grid_n and
  // shared between copies; safe to call concurrently.
  const std::vector<double>& half_grid(int grid_n) const;
  std::vector<double> grid(int grid_n) const;

  std::string describe() const;

 private:
  Potential(PotentialForm form, double length) : form_(form), length_(length) {}
  PotentialForm form_;
  double length_;
  double amplitude_ = 0.0;
  std::vector<double> samples_;

  struct Cache {
    std::mutex mutex;
    std::map<int, std::unique_ptr<const std::vector<double>>> half;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// Symmetry residual max_i |u_i - u_{n-i}|.
double symmetry_defect(const std::vector<double>& samples);

}  // namespace qglab

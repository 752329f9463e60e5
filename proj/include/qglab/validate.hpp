#pragma once

#include <string>
#include <vector>

#include "qglab/config.hpp"
#include "qglab/csv.hpp"
#include "qglab/parallel.hpp"

namespace qglab {

struct IdentityCheck {
  std::string name;
  double measured = 0.0;  // worst residual over the samples
  double tolerance = 0.0;
  bool pass() const { return measured <= tolerance; }
};

struct ValidationReport {
  std::vector<IdentityCheck> checks;

  bool all_pass() const;
  CsvWriter csv() const;
};

// Edge ODE, tree Green function, limit density, band correspondence and
// normalization identities for the configured model and first graph size.
ValidationReport run_validation(const ExperimentConfig& cfg, Execution exec = Execution::parallel);

}  // namespace qglab

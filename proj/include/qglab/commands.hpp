#pragma once

#include <filesystem>
#include <ostream>

#include "qglab/config.hpp"

namespace qglab {

// Each command writes its CSV artifacts into out_dir (created if missing),
// prints a short summary to log and returns the process exit code.
int cmd_bands(const ExperimentConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);
int cmd_spectrum(const ExperimentConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);
int cmd_sweep(const ExperimentConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);
// Nonzero exit iff some identity fails.
int cmd_validate(const ExperimentConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);

}  // namespace qglab

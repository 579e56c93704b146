#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "rotalign/experiment.hpp"

namespace rotalign {

std::string version_string();

/// "# "-prefixed block with the code version and the resolved config text.
std::string header_block(const ExperimentConfig& config);

/// Long format: one block of rows per case, tagged with temperature_K and
/// variant (plus param for sweep points).
void write_series_csv(std::ostream& out, const std::vector<CaseResult>& cases,
                      const std::vector<double>* params = nullptr);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Resolved config plus per-case extrema and convergence reports, as JSON text.
std::string meta_json(const ExperimentConfig& config, const std::vector<CaseResult>& cases,
                      const std::vector<SweepRow>* rows = nullptr);

struct WrittenFiles {
    std::vector<std::filesystem::path> paths;
    int failures = 0;  ///< cases or rows with an error
};

/// <name>_series.csv and <name>_meta.json under dir.
WrittenFiles write_run_outputs(const ExperimentConfig& config, const std::vector<CaseResult>& cases,
                               const std::filesystem::path& dir);

/// <name>_sweep.csv, <name>_meta.json and, if config.write_series, <name>_series.csv.
WrittenFiles write_sweep_outputs(const ExperimentConfig& config, const SweepResult& result,
                                 const std::filesystem::path& dir);

} // namespace rotalign

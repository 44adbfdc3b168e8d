#ifndef MCSSA_IO_HPP
#define MCSSA_IO_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mcssa/calibration.hpp"
#include "mcssa/detection.hpp"
#include "mcssa/types.hpp"

namespace mcssa {

// Series files: one decimal value per line, blank lines and lines starting
// with '#' ignored. Parse failures report the 1-based line number.
TimeSeries read_series(const std::filesystem::path& path);
void write_series(const std::filesystem::path& path, const TimeSeries& series);

// Shortest decimal representation that round-trips a double (17 significant
// digits at most).
std::string format_double(double value);

// AR(1) spectral density delta^2 / (1 - 2 varphi cos(2 pi f) + varphi^2).
double ar1_spectral_density(const Ar1Model& model, double frequency);

// One row per basis vector, sorted by frequency. Bounds are NaN for rows
// outside the tested range; `density` is the null spectral density at the
// row's frequency (to be scaled by the series length for overlays).
struct SpectrumRow {
  double frequency = 0.0;
  double observed = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool included = false;
  bool significant = false;
  double density = 0.0;
};

std::vector<SpectrumRow> spectrum_table(const TestResult& result,
                                        const Ar1Model& null_model);

void write_spectrum_csv(const std::filesystem::path& path,
                        const std::vector<SpectrumRow>& rows);

// Key-value detection report with a fixed key set and order.
void write_report(const std::filesystem::path& path, const TestResult& result,
                  const TestConfig& config, std::uint64_t seed);

struct TableRow {
  std::string label;
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

void write_table_csv(const std::filesystem::path& path,
                     const std::vector<TableRow>& rows);

void write_roc_csv(const std::filesystem::path& path,
                   const std::vector<RocPoint>& points);

}  // namespace mcssa

#endif

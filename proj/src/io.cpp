#include "mcssa/io.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numbers>

namespace mcssa {

namespace {

bool is_blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out)
    throw DataError("cannot open '" + path.string() + "' for writing");
  return out;
}

}  // namespace

TimeSeries read_series(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "' for reading");

  std::vector<double> values;
  std::string line;
  long line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (is_blank(line) || line[line.find_first_not_of(" \t")] == '#') continue;
    errno = 0;
    char* end = nullptr;
    const double value = std::strtod(line.c_str(), &end);
    bool ok = end != line.c_str() && errno == 0 && std::isfinite(value);
    if (ok) {
      while (*end != '\0' && std::isspace(static_cast<unsigned char>(*end)))
        ++end;
      ok = *end == '\0';
    }
    if (!ok)
      throw ParseError("line " + std::to_string(line_number) +
                           ": expected a decimal value, got '" + line + "'",
                       line_number);
    values.push_back(value);
  }
  if (values.size() < 2)
    throw DataError("series in '" + path.string() + "' has fewer than 2 values");
  return TimeSeries(Eigen::Map<const Eigen::VectorXd>(
      values.data(), static_cast<Eigen::Index>(values.size())));
}

void write_series(const std::filesystem::path& path, const TimeSeries& series) {
  std::ofstream out = open_output(path);
  for (Eigen::Index i = 0; i < series.size(); ++i)
    out << format_double(series[i]) << '\n';
  if (!out) throw DataError("failed writing '" + path.string() + "'");
}

std::string format_double(double value) {
  char buffer[32];
  const auto [end, ec] =
      std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc())
    throw ComputationError("failed to format a double");
  return std::string(buffer, end);
}

double ar1_spectral_density(const Ar1Model& model, double frequency) {
  const double c = std::cos(2.0 * std::numbers::pi * frequency);
  return model.delta * model.delta /
         (1.0 - 2.0 * model.varphi * c + model.varphi * model.varphi);
}

std::vector<SpectrumRow> spectrum_table(const TestResult& result,
                                        const Ar1Model& null_model) {
  const std::size_t total = result.frequencies.size();
  std::vector<SpectrumRow> rows(total);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t k = 0; k < total; ++k) {
    rows[k].frequency = result.frequencies[k];
    rows[k].observed = result.observed[static_cast<Eigen::Index>(k)];
    rows[k].lower = nan;
    rows[k].upper = nan;
    rows[k].density = ar1_spectral_density(null_model, rows[k].frequency);
  }
  for (std::size_t j = 0; j < result.included.size(); ++j) {
    SpectrumRow& row = rows[static_cast<std::size_t>(result.included[j])];
    row.included = true;
    row.lower = result.lower[static_cast<Eigen::Index>(j)];
    row.upper = result.upper[static_cast<Eigen::Index>(j)];
    row.significant = row.observed > row.upper || row.observed < row.lower;
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const SpectrumRow& a, const SpectrumRow& b) {
                     return a.frequency < b.frequency;
                   });
  return rows;
}

void write_spectrum_csv(const std::filesystem::path& path,
                        const std::vector<SpectrumRow>& rows) {
  std::ofstream out = open_output(path);
  out << "frequency,observed,lower,upper,included,significant,density\n";
  for (const SpectrumRow& row : rows) {
    out << format_double(row.frequency) << ',' << format_double(row.observed)
        << ',' << format_double(row.lower) << ',' << format_double(row.upper)
        << ',' << (row.included ? 1 : 0) << ',' << (row.significant ? 1 : 0)
        << ',' << format_double(row.density) << '\n';
  }
  if (!out) throw DataError("failed writing '" + path.string() + "'");
}

void write_report(const std::filesystem::path& path, const TestResult& result,
                  const TestConfig& config, std::uint64_t seed) {
  std::ofstream out = open_output(path);
  out << "reject: " << (result.reject ? "true" : "false") << '\n';
  out << "freq_max: "
      << (result.freq_max ? format_double(*result.freq_max) : "NA") << '\n';
  out << "q_upper: "
      << (result.q_upper ? format_double(*result.q_upper) : "NA") << '\n';
  out << "q_lower: "
      << (result.q_lower ? format_double(*result.q_lower) : "NA") << '\n';
  // 1 - confidence reintroduces representation noise (1 - 0.9 is not the
  // double closest to 0.1), so round the summary line to display precision.
  char alpha[32];
  std::snprintf(alpha, sizeof alpha, "%.6g", 1.0 - config.confidence);
  out << "alpha: " << alpha << '\n';
  out << "G: " << config.surrogates << '\n';
  out << "L: " << config.window << '\n';
  out << "basis: "
      << (config.basis == BasisKind::eigenvector ? "ev" : "sin") << '\n';
  out << "range: " << format_double(config.range.low) << ','
      << format_double(config.range.high) << '\n';
  out << "seed: " << seed << '\n';
  if (!out) throw DataError("failed writing '" + path.string() + "'");
}

void write_table_csv(const std::filesystem::path& path,
                     const std::vector<TableRow>& rows) {
  std::ofstream out = open_output(path);
  out << "label,estimate,ci025,ci975\n";
  for (const TableRow& row : rows) {
    out << row.label << ',' << format_double(row.estimate) << ','
        << format_double(row.ci_low) << ',' << format_double(row.ci_high)
        << '\n';
  }
  if (!out) throw DataError("failed writing '" + path.string() + "'");
}

void write_roc_csv(const std::filesystem::path& path,
                   const std::vector<RocPoint>& points) {
  std::ofstream out = open_output(path);
  out << "alpha,fpr,tpr\n";
  for (const RocPoint& point : points) {
    out << format_double(point.alpha) << ','
        << format_double(point.fpr.proportion) << ','
        << format_double(point.tpr.proportion) << '\n';
  }
  if (!out) throw DataError("failed writing '" + path.string() + "'");
}

}  // namespace mcssa

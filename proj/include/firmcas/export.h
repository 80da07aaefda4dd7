#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "firmcas/metrics.h"
#include "firmcas/record.h"

namespace firmcas {

enum class ExportFormat : std::uint8_t { Csv, JsonLines };

std::optional<ExportFormat> parse_export_format(std::string_view s);
std::string_view file_extension(ExportFormat f);

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Column order of the long-format series export.
const std::vector<std::string>& export_columns();

/// 17 significant digits; enough for an exact round trip of any double.
std::string format_double(double x);

/// Writes one row per day. `baseline`, when non-empty, must have the same
/// length and yields the relative cumulated profitability column; otherwise
/// that column is missing. Missing values are empty in CSV and null in JSON.
void write_records(std::ostream& os, ExportFormat format, std::string_view scenario,
                   std::string_view replicate, std::span<const DayRecord> days,
                   std::span<const DayRecord> baseline = {});

/// File variant of write_records. Throws IoError when the file cannot be
/// written.
void export_records(const std::filesystem::path& path, ExportFormat format,
                    std::string_view scenario, std::string_view replicate,
                    std::span<const DayRecord> days, std::span<const DayRecord> baseline = {});

/// Per-agent traces (long format: one row per agent and day).
void write_agent_traces(std::ostream& os, ExportFormat format, std::string_view scenario,
                        std::string_view replicate, std::span<const DayRecord> days,
                        std::span<const ValueType> types);

struct NamedCorrelations {
  std::string scenario;
  std::string replicate;
  std::vector<CorrelationRow> rows;
};

void write_correlations(std::ostream& os, std::span<const NamedCorrelations> tables);

/// Parses a CSV written by write_records back into rows of cells keyed by
/// the header. Handles RFC 4180 quoting.
std::vector<std::vector<std::string>> read_csv(std::istream& is);

/// Rebuilds records from a write_records CSV. Fields that are not exported
/// keep their defaults.
std::vector<DayRecord> read_records_csv(std::istream& is);

/// Writes `contents` to `path`, creating parent directories. Throws IoError.
void write_text_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace firmcas

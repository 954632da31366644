#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "bhe/methods.hpp"
#include "bhe/metrics.hpp"

namespace bhe {

/// One (image, method) result line of a benchmark report.
struct ReportRow {
    std::string image_id;
    MethodId method = MethodId::he;
    MetricsReport metrics;
    std::vector<int> thresholds;
    double runtime_ms = 0.0;
    /// Non-empty when the row failed; metrics are then left blank.
    std::string error;
};

/// RFC 4180 quoting: fields containing comma, quote, CR or LF are quoted.
std::string csv_field(const std::string& text);
/// Six significant digits; "inf" / "-inf" / "nan" for non-finite values.
std::string format_real(double value);
/// Thresholds joined with ';' ("" for none).
std::string format_thresholds(const std::vector<int>& thresholds);

/// Orders rows by (image_id, method name).
void sort_rows(std::vector<ReportRow>& rows);

std::string report_header();
std::string report_line(const ReportRow& row);
void write_report(std::ostream& out, const std::vector<ReportRow>& rows);

/// One table per metric: rows are images, columns are `methods`.
void write_pivot(std::ostream& out, const std::vector<ReportRow>& rows,
                 const std::vector<MethodId>& methods, std::size_t metric_index);

/// <dir>/<stem>_<metric>.csv next to the main report.
std::filesystem::path pivot_path(const std::filesystem::path& report, std::size_t metric_index);

/// Header plus one row of the seven metrics.
void write_metrics_row(std::ostream& out, const MetricsReport& r);

}  // namespace bhe

#include "bhe/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

namespace bhe {

std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string format_real(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

std::string format_thresholds(const std::vector<int>& thresholds) {
    std::string out;
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        if (i) out += ';';
        out += std::to_string(thresholds[i]);
    }
    return out;
}

void sort_rows(std::vector<ReportRow>& rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
        if (a.image_id != b.image_id) return a.image_id < b.image_id;
        return method_name(a.method) < method_name(b.method);
    });
}

std::string report_header() {
    std::string h = "image_id,method";
    for (auto name : kMetricNames) {
        h += ',';
        h += name;
    }
    h += ",thresholds,runtime_ms,error";
    return h;
}

std::string report_line(const ReportRow& row) {
    std::string line = csv_field(row.image_id) + "," + std::string(method_name(row.method));
    for (std::size_t i = 0; i < kMetricNames.size(); ++i) {
        line += ',';
        if (row.error.empty()) line += format_real(metric_value(row.metrics, i));
    }
    line += ',' + csv_field(format_thresholds(row.thresholds));
    line += ',' + format_real(row.runtime_ms);
    line += ',' + csv_field(row.error);
    return line;
}

void write_report(std::ostream& out, const std::vector<ReportRow>& rows) {
    out << report_header() << '\n';
    for (const auto& r : rows) out << report_line(r) << '\n';
}

void write_pivot(std::ostream& out, const std::vector<ReportRow>& rows, const std::vector<MethodId>& methods,
                 std::size_t metric_index) {
    out << "image_id";
    for (auto m : methods) out << ',' << method_name(m);
    out << '\n';

    std::map<std::string, std::map<MethodId, const ReportRow*>> table;
    for (const auto& r : rows) table[r.image_id][r.method] = &r;
    for (const auto& [image_id, cells] : table) {
        out << csv_field(image_id);
        for (auto m : methods) {
            out << ',';
            const auto it = cells.find(m);
            if (it != cells.end() && it->second->error.empty()) {
                out << format_real(metric_value(it->second->metrics, metric_index));
            }
        }
        out << '\n';
    }
}

std::filesystem::path pivot_path(const std::filesystem::path& report, std::size_t metric_index) {
    const auto stem = report.stem().string();
    return report.parent_path() / (stem + "_" + std::string(kMetricNames[metric_index]) + ".csv");
}

void write_metrics_row(std::ostream& out, const MetricsReport& r) {
    for (std::size_t i = 0; i < kMetricNames.size(); ++i) out << (i ? "," : "") << kMetricNames[i];
    out << '\n';
    for (std::size_t i = 0; i < kMetricNames.size(); ++i) out << (i ? "," : "") << format_real(metric_value(r, i));
    out << '\n';
}

}  // namespace bhe

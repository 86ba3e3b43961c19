#include "ptdeph/output.hpp"

#include <cmath>
#include <cstdio>

namespace ptdeph {

namespace {

std::string json_number(double value) { return std::isfinite(value) ? format_number(value) : "null"; }

// Column names are plain identifiers, but escape anyway.
std::string json_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(c));
            out += buf;
            continue;
        }
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (value == 0.0) value = 0.0;  // drop the sign of -0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.11e", value);
    return buf;
}

void write_csv(std::ostream& out, const Table& table) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
        out << '\n';
    }
}

void write_json(std::ostream& out, const Table& table) {
    out << "{\"columns\":[";
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << json_string(table.columns[i]);
    out << "],\"rows\":[";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        out << (r ? ",\n" : "\n") << '[';
        const auto& row = table.rows[r];
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << json_number(row[i]);
        out << ']';
    }
    out << "\n]}\n";
}

void write_json(std::ostream& out, const OracleReport& report) {
    out << "{\"spectrum_residuals\":[";
    for (std::size_t i = 0; i < report.spectrum_residuals.size(); ++i) {
        out << (i ? "," : "") << json_number(report.spectrum_residuals[i]);
    }
    out << "],\"similarity_residual\":" << json_number(report.similarity_residual)
        << ",\"dephasing_max_error\":" << json_number(report.dephasing_max_error)
        << ",\"fock_dim_used\":" << report.fock_dim_used
        << ",\"converged\":" << (report.converged ? "true" : "false") << "}\n";
}

}  // namespace ptdeph

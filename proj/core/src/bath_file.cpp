#include "ptdeph/bath_file.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ptdeph {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_field(std::string_view field, std::size_t line_no) {
    field = trim(field);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
        throw std::invalid_argument("modes file line " + std::to_string(line_no) + ": bad number '" +
                                    std::string(field) + "'");
    }
    return value;
}

}  // namespace

std::vector<BathMode> read_modes_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::vector<BathMode> modes;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view row = trim(line);
        if (row.empty()) continue;
        if (!have_header) {
            if (row != "omega,g_abs,theta") {
                throw std::invalid_argument("modes file must start with header 'omega,g_abs,theta'");
            }
            have_header = true;
            continue;
        }
        const auto c1 = row.find(',');
        const auto c2 = c1 == std::string_view::npos ? c1 : row.find(',', c1 + 1);
        if (c2 == std::string_view::npos || row.find(',', c2 + 1) != std::string_view::npos) {
            throw std::invalid_argument("modes file line " + std::to_string(line_no) + ": expected 3 fields");
        }
        const double omega = parse_field(row.substr(0, c1), line_no);
        const double g_abs = parse_field(row.substr(c1 + 1, c2 - c1 - 1), line_no);
        const double theta = parse_field(row.substr(c2 + 1), line_no);
        if (!(omega > 0.0)) {
            throw std::invalid_argument("modes file line " + std::to_string(line_no) + ": omega must be > 0");
        }
        modes.push_back(BathMode{omega, Coupling(g_abs, theta)});
    }
    if (!have_header) throw std::invalid_argument("modes file is empty");
    if (modes.empty()) throw std::invalid_argument("modes file lists no modes");
    return modes;
}

std::vector<BathMode> load_modes_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open modes file " + path.string());
    return read_modes_csv(in);
}

}  // namespace ptdeph

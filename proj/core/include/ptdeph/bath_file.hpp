// bath_file.hpp: discrete bath mode tables.
//
// Format: CSV with the header line `omega,g_abs,theta`, then one mode per
// row as decimal floating-point fields.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "ptdeph/dephasing.hpp"

namespace ptdeph {

std::vector<BathMode> read_modes_csv(std::istream& in);
std::vector<BathMode> load_modes_csv(const std::filesystem::path& path);

}  // namespace ptdeph

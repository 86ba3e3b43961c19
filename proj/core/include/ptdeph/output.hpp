// output.hpp: CSV and JSON serialization. Numbers are written in scientific
// notation with 12 significant digits so output is byte-stable.

#pragma once

#include <ostream>
#include <string>

#include "ptdeph/oracle.hpp"
#include "ptdeph/study.hpp"

namespace ptdeph {

/// "%.11e"; non-finite values become "nan", "inf" or "-inf".
std::string format_number(double value);

/// Header line then one line per row, comma separated, LF endings.
void write_csv(std::ostream& out, const Table& table);

/// {"columns": [...], "rows": [[...], ...]}; non-finite values become null.
void write_json(std::ostream& out, const Table& table);

/// The oracle document: spectrum_residuals, similarity_residual,
/// dephasing_max_error, fock_dim_used, converged.
void write_json(std::ostream& out, const OracleReport& report);

}  // namespace ptdeph

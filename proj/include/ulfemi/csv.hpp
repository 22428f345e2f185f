#pragma once

#include <string>
#include <variant>
#include <vector>

#include "ulfemi/types.hpp"

namespace ulfemi {

using CsvValue = std::variant<double, Complex>;

/// Renders a table to CSV text. Complex-valued columns split into two
/// adjacent physical columns suffixed _re/_im (column type taken from the
/// first row). Numbers carry 9 significant digits, lines end with LF.
/// Throws SimError(ArityMismatch) on ragged rows or mixed column types.
std::string write_csv(const std::vector<std::string>& headers,
                      const std::vector<std::vector<CsvValue>>& rows);

}  // namespace ulfemi

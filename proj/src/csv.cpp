#include "ulfemi/csv.hpp"

#include <cstdio>

namespace ulfemi {

namespace {

void append_number(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%#.9g", v);
  out += buf;
}

}  // namespace

std::string write_csv(const std::vector<std::string>& headers,
                      const std::vector<std::vector<CsvValue>>& rows) {
  const size_t arity = headers.size();
  for (const auto& row : rows) {
    if (row.size() != arity) {
      throw SimError(ErrorCode::ArityMismatch, "row arity does not match header count");
    }
  }

  std::vector<bool> is_complex(arity, false);
  if (!rows.empty()) {
    for (size_t c = 0; c < arity; ++c) {
      is_complex[c] = std::holds_alternative<Complex>(rows.front()[c]);
    }
    for (const auto& row : rows) {
      for (size_t c = 0; c < arity; ++c) {
        if (std::holds_alternative<Complex>(row[c]) != is_complex[c]) {
          throw SimError(ErrorCode::ArityMismatch,
                         "column '" + headers[c] + "' mixes real and complex values");
        }
      }
    }
  }

  std::string out;
  for (size_t c = 0; c < arity; ++c) {
    if (c) out += ',';
    if (is_complex[c]) {
      out += headers[c] + "_re," + headers[c] + "_im";
    } else {
      out += headers[c];
    }
  }
  out += '\n';

  for (const auto& row : rows) {
    for (size_t c = 0; c < arity; ++c) {
      if (c) out += ',';
      if (is_complex[c]) {
        const Complex z = std::get<Complex>(row[c]);
        append_number(out, z.real());
        out += ',';
        append_number(out, z.imag());
      } else {
        append_number(out, std::get<double>(row[c]));
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace ulfemi

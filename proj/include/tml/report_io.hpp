#pragma once

// Tables for CSV/JSON output. CSV is RFC 4180 with a header row and reals
// printed with 17 significant digits; JSON is an array of objects keyed by
// the same column names.

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tml/moment.hpp"

namespace tml {

// std::monostate is an empty cell (JSON null).
using Cell = std::variant<std::monostate, std::int64_t, std::uint64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// %.17g; "nan", "inf", "-inf" for non-finite values.
std::string format_real(double v);

/// Quotes a field when it contains a comma, quote, CR or LF.
std::string csv_field(const std::string& s);

void write_csv_header(std::ostream& os, const Table& t);
void write_csv_rows(std::ostream& os, const Table& t);
void write_csv(std::ostream& os, const Table& t);
void write_json(std::ostream& os, const Table& t);

/// Columns q,a,b,moment_re,moment_im,even_re,even_im,odd_re,odd_im,
/// main_term,abs_error,nonvanishing,seconds,method. seconds is written as 0
/// unless with_timing. A failed entry keeps q, a, b, has empty numeric cells
/// and method "error:<code>".
Table moment_table(std::span<const MomentReport> reports, bool with_timing = false);

const std::vector<std::string>& moment_columns();

}  // namespace tml

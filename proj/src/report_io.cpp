#include "tml/report_io.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace tml {

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

std::string cell_text(const Cell& c) {
  struct {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(std::uint64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_real(v); }
    std::string operator()(const std::string& v) const { return csv_field(v); }
  } visit;
  return std::visit(visit, c);
}

nlohmann::json cell_json(const Cell& c) {
  struct {
    nlohmann::json operator()(std::monostate) const { return nullptr; }
    nlohmann::json operator()(std::int64_t v) const { return v; }
    nlohmann::json operator()(std::uint64_t v) const { return v; }
    nlohmann::json operator()(double v) const {
      if (std::isfinite(v)) return v;
      return nullptr;
    }
    nlohmann::json operator()(const std::string& v) const { return v; }
  } visit;
  return std::visit(visit, c);
}

}  // namespace

void write_csv_header(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_field(t.columns[i]);
  os << "\r\n";
}

void write_csv_rows(std::ostream& os, const Table& t) {
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
    os << "\r\n";
  }
}

void write_csv(std::ostream& os, const Table& t) {
  write_csv_header(os, t);
  write_csv_rows(os, t);
}

void write_json(std::ostream& os, const Table& t) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < t.columns.size() && i < row.size(); ++i) obj[t.columns[i]] = cell_json(row[i]);
    doc.push_back(std::move(obj));
  }
  os << doc.dump(2) << "\n";
}

const std::vector<std::string>& moment_columns() {
  static const std::vector<std::string> cols = {"q",       "a",         "b",           "moment_re", "moment_im",
                                                "even_re", "even_im",   "odd_re",      "odd_im",    "main_term",
                                                "abs_error", "nonvanishing", "seconds", "method"};
  return cols;
}

Table moment_table(std::span<const MomentReport> reports, bool with_timing) {
  Table t;
  t.columns = moment_columns();
  for (const auto& r : reports) {
    std::vector<Cell> row{r.q, r.a, r.b};
    if (r.status != "ok") {
      row.resize(t.columns.size() - 1);
      row.emplace_back("error:" + r.status);
    } else {
      for (double v : {r.moment.real(), r.moment.imag(), r.even_part.real(), r.even_part.imag(), r.odd_part.real(),
                       r.odd_part.imag(), r.main_term, r.abs_error})
        row.emplace_back(v);
      row.emplace_back(r.nonvanishing);
      row.emplace_back(with_timing ? r.seconds : 0.0);
      row.emplace_back(r.method);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace tml

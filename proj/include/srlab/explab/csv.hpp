// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "srlab/explab/experiment.hpp"

namespace srlab::explab {

inline constexpr const char* kCsvSchema = "srlab-csv-v1";
inline constexpr const char* kCsvHeader = "schema,kind,format,n,mode,seed,reps,rel_err_of_avg,mean_rel_err,bound,cond";

/// Shortest decimal that round-trips; "nan" for NaN.
inline std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  for (const auto& r : rows)
    for (const std::string* field : {&r.kind, &r.format, &r.mode})
      if (field->find_first_of(",\n") != std::string::npos)
        throw std::invalid_argument("csv: field '" + *field + "' contains a separator");
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << kCsvSchema << ',' << r.kind << ',' << r.format << ',' << r.n << ',' << r.mode << ',' << r.seed << ','
        << r.reps << ',' << format_real(r.rel_err_of_avg) << ',' << format_real(r.mean_rel_err) << ','
        << (r.bound ? format_real(*r.bound) : "") << ',' << (r.cond ? format_real(*r.cond) : "") << '\n';
  }
}

inline std::string to_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream os;
  write_csv(os, rows);
  return os.str();
}

namespace detail {

inline double parse_real(const std::string& field) {
  if (field == "nan") return std::nan("");
  double v = 0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size())
    throw std::invalid_argument("csv: bad real '" + field + "'");
  return v;
}

inline std::uint64_t parse_uint(const std::string& field) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size())
    throw std::invalid_argument("csv: bad integer '" + field + "'");
  return v;
}

}  // namespace detail

/// Parse a CSV produced by write_csv, validating the header and schema tag.
/// Flagged rows come back with NaN errors and `error` set to "flagged".
inline std::vector<ResultRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw std::invalid_argument("csv: unexpected header");
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::size_t start = 0;
    for (std::size_t comma; (comma = line.find(',', start)) != std::string::npos; start = comma + 1)
      f.push_back(line.substr(start, comma - start));
    f.push_back(line.substr(start));
    if (f.size() != 11) throw std::invalid_argument("csv: expected 11 fields, got " + std::to_string(f.size()));
    if (f[0] != kCsvSchema) throw std::invalid_argument("csv: unknown schema '" + f[0] + "'");
    ResultRow r;
    r.kind = f[1];
    r.format = f[2];
    r.n = detail::parse_uint(f[3]);
    r.mode = f[4];
    r.seed = detail::parse_uint(f[5]);
    r.reps = static_cast<unsigned>(detail::parse_uint(f[6]));
    r.rel_err_of_avg = detail::parse_real(f[7]);
    r.mean_rel_err = detail::parse_real(f[8]);
    if (!f[9].empty()) r.bound = detail::parse_real(f[9]);
    if (!f[10].empty()) r.cond = detail::parse_real(f[10]);
    if (std::isnan(r.rel_err_of_avg)) r.error = "flagged";
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace srlab::explab

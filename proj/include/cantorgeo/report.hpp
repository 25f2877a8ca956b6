#pragma once

#include <iosfwd>
#include "json.hpp"
#include <string>
#include <vector>

#include "cantorgeo/analysis.hpp"
#include "cantorgeo/cantor.hpp"
#include "cantorgeo/geometry.hpp"
#include "cantorgeo/logreal.hpp"

namespace cantorgeo {

using Json = nlohmann::ordered_json;

enum class Format { Json, Csv };
Format parse_format(const std::string& s);

struct FormatOptions {
  int digits = 15;  // significant digits for CSV numbers and approx strings
};

// Locale-independent shortest-or-fixed-digit rendering.
std::string format_number(long double v, int digits);
std::string format_rational(const Rational& r);

Json to_json(const LogScalar& x, const FormatOptions& opt = {});
LogScalar logscalar_from_json(const Json& j);

// Flat table for CSV: one header row, one row per index.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  std::string kind;
  Json json;
  Table table;
};

Report level_report(const OmegaSpec& spec, const CantorLevel& lv, const FormatOptions& opt = {});
Report gaps_report(const OmegaSpec& spec, int k, const FormatOptions& opt = {});
Report bounds_report(const std::vector<BoundReport>& rows, const FormatOptions& opt = {});
Report classify_report(const QcReport& r, const FormatOptions& opt = {});
Report condition_I_report(const Verdict& v, const FormatOptions& opt = {});
Report condition_II_report(const ConditionIIResult& r, const FormatOptions& opt = {});
Report sums_report(const OmegaSpec& spec, std::uint64_t M, const FormatOptions& opt = {});
Report witness_report(const OmegaSpec& spec, std::uint64_t from, std::uint64_t to,
                      const FormatOptions& opt = {});
Report pentagon_report(const LogScalar& a, const LogScalar& b, const LogScalar& d,
                       const FormatOptions& opt = {});
Report criterion_report(const CriterionReport& r, const FormatOptions& opt = {});

Json to_json(const Verdict& v, const FormatOptions& opt = {});
Json to_json(const BoundReport& b, const FormatOptions& opt = {});

void write_csv(const Table& t, std::ostream& os);
// JSON is pretty-printed with two-space indent and a trailing newline.
void emit_report(const Report& r, Format f, std::ostream& os);
// path "-" or empty writes to standard output.
void emit_report(const Report& r, Format f, const std::string& path);

}  // namespace cantorgeo

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cantorgeo/report.hpp"

namespace cantorgeo {

struct Command {
  std::string verb;  // intervals bounds gaps classify check-i check-ii sums witness pentagon report
  std::string spec_path;
  std::optional<int> depth;
  std::optional<std::uint64_t> horizon;
  std::optional<std::uint64_t> blocks;
  std::optional<std::uint64_t> index;  // bounds: single i
  std::optional<std::uint64_t> from;   // witness: first n
  std::string mode = "auto";           // intervals: auto | exact | log
  std::vector<double> deltas;          // classify
  std::optional<double> threshold;
  std::string a, b, d;                 // pentagon sides, as numbers or exp(...)
  Format format = Format::Json;
  std::optional<int> precision;
  std::string output = "-";
};

const std::vector<std::string>& verbs();

// Digits from the command, else CANTORGEO_PRECISION, else 15.
FormatOptions resolve_format(const Command& c);

// Builds the report for a command; no I/O. Sets *inconclusive for check-* verbs.
Report build_report(const Command& c, bool* inconclusive = nullptr);

// 0 ok, 2 inconclusive check-* verdict, 1 error (message on err).
int run(const Command& c, std::ostream& out, std::ostream& err);

}  // namespace cantorgeo

#include "cantorgeo/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include "cantorgeo/config.hpp"
#include "cantorgeo/errors.hpp"

namespace cantorgeo {

namespace {

std::uint64_t horizon_or(const Command& c, const OmegaSpec& s, std::uint64_t fallback) {
  if (c.horizon) return *c.horizon;
  if (s.horizon_hint() > 0) return s.horizon_hint();
  return fallback;
}

OmegaSpec load(const Command& c) {
  if (c.spec_path.empty()) throw Error("--spec is required for '" + c.verb + "'");
  // bare names such as "mid3" resolve to mid3.cfg, here or under CANTORGEO_SPECS
  std::vector<std::string> tries = {c.spec_path, c.spec_path + ".cfg"};
  if (const char* dir = std::getenv("CANTORGEO_SPECS")) {
    tries.push_back(std::string(dir) + "/" + c.spec_path);
    tries.push_back(std::string(dir) + "/" + c.spec_path + ".cfg");
  }
  for (const auto& t : tries) {
    if (std::ifstream(t)) return parse_spec(t);
  }
  return parse_spec(c.spec_path);
}

LogScalar side(const std::string& text, const char* name) {
  if (text.empty()) throw Error(std::string("--") + name + " is required");
  return QValue::parse(text).value;
}

std::vector<std::uint64_t> sample_indices(int k) {
  const std::uint64_t count = std::uint64_t{1} << k;
  std::vector<std::uint64_t> out;
  if (count <= 16) {
    for (std::uint64_t i = 1; i <= count; ++i) out.push_back(i);
    return out;
  }
  const std::uint64_t h = count / 2;
  out = {1, 2, 3, h, h + 1, count - 1, count};
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

const std::vector<std::string>& verbs() {
  static const std::vector<std::string> v = {"intervals", "bounds", "gaps",    "classify", "check-i",
                                             "check-ii",  "sums",   "witness", "pentagon", "report"};
  return v;
}

FormatOptions resolve_format(const Command& c) {
  FormatOptions opt;
  if (c.precision) {
    opt.digits = *c.precision;
  } else if (const char* env = std::getenv("CANTORGEO_PRECISION")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0') throw Error("CANTORGEO_PRECISION must be an integer");
    opt.digits = static_cast<int>(v);
  }
  if (opt.digits < 1 || opt.digits > 30) throw Error("precision must lie in [1, 30]");
  return opt;
}

Report build_report(const Command& c, bool* inconclusive) {
  const FormatOptions opt = resolve_format(c);
  if (inconclusive) *inconclusive = false;
  const long double threshold = c.threshold ? *c.threshold : kDefaultThreshold;

  if (c.verb == "pentagon") {
    const LogScalar a = side(c.a, "a");
    if (!c.b.empty() == !c.d.empty()) throw Error("pentagon needs exactly one of --b or --d");
    if (!c.b.empty()) {
      const LogScalar b = side(c.b, "b");
      return pentagon_report(a, b, pentagon_d(a, b), opt);
    }
    const LogScalar d = side(c.d, "d");
    return pentagon_report(a, pentagon_b(a, d), d, opt);
  }

  const OmegaSpec spec = load(c);
  if (c.verb == "intervals") {
    const int k = c.depth.value_or(2);
    LevelMode mode;
    if (c.mode == "exact") {
      mode = LevelMode::ExactRational;
    } else if (c.mode == "log") {
      mode = LevelMode::LogDomain;
    } else if (c.mode == "auto") {
      mode = exact_available(spec, k) ? LevelMode::ExactRational : LevelMode::LogDomain;
    } else {
      throw Error("--mode must be auto, exact or log");
    }
    return level_report(spec, level(spec, k, mode), opt);
  }
  if (c.verb == "gaps") return gaps_report(spec, c.depth.value_or(2), opt);
  if (c.verb == "bounds") {
    const int depth = c.depth.value_or(3);
    std::vector<BoundReport> rows;
    if (c.index) {
      rows.push_back(bound_report(spec, depth, *c.index));
    } else {
      for (int k = 1; k <= depth; ++k) {
        for (std::uint64_t i : sample_indices(k)) rows.push_back(bound_report(spec, k, i));
      }
    }
    return bounds_report(rows, opt);
  }
  if (c.verb == "classify") {
    std::vector<long double> grid;
    for (double d : c.deltas) grid.push_back(d);
    if (grid.empty()) grid = default_delta_grid();
    return classify_report(classify_qc(spec, horizon_or(c, spec, 1000), grid), opt);
  }
  if (c.verb == "check-i") {
    const Verdict v = check_condition_I(spec, horizon_or(c, spec, 50), threshold);
    if (inconclusive) *inconclusive = v.status == Status::Inconclusive;
    return condition_I_report(v, opt);
  }
  if (c.verb == "check-ii") {
    const ConditionIIResult r = check_condition_II(spec, c.blocks.value_or(8), threshold);
    if (inconclusive) *inconclusive = r.verdict.status == Status::Inconclusive;
    return condition_II_report(r, opt);
  }
  if (c.verb == "sums") return sums_report(spec, c.blocks.value_or(6), opt);
  if (c.verb == "witness") return witness_report(spec, c.from.value_or(1), horizon_or(c, spec, 30), opt);
  if (c.verb == "report") {
    const std::uint64_t fallback = spec.kind() == OmegaKind::CompositeII ? 8 : 30;
    const std::uint64_t h = spec.kind() == OmegaKind::CompositeII ? c.blocks.value_or(horizon_or(c, spec, fallback))
                                                                  : horizon_or(c, spec, fallback);
    return criterion_report(theorem_criterion_report(spec, h, threshold), opt);
  }
  throw Error("unknown verb '" + c.verb + "'");
}

int run(const Command& c, std::ostream& out, std::ostream& err) {
  try {
    bool inconclusive = false;
    const Report r = build_report(c, &inconclusive);
    if (c.output.empty() || c.output == "-") {
      emit_report(r, c.format, out);
    } else {
      emit_report(r, c.format, c.output);
    }
    return inconclusive ? 2 : 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace cantorgeo

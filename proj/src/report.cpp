#include "cantorgeo/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cantorgeo/errors.hpp"

namespace cantorgeo {

namespace {

Json num(long double v) {
  if (!std::isfinite(v)) return nullptr;
  return static_cast<double>(v);
}

std::string cell(const LogScalar& x, const FormatOptions& opt) {
  if (x.is_linear()) return format_number(x.inner(), opt.digits);
  return x.approx(opt.digits);
}

std::string cell(long double v, const FormatOptions& opt) { return format_number(v, opt.digits); }

std::string integer_cell(long double v) {
  if (v >= 0 && v < 1.8e19L && v == std::floor(v)) return std::to_string(static_cast<std::uint64_t>(v));
  if (!std::isfinite(v) || v != std::floor(v)) return format_number(v, 21);
  boost::multiprecision::cpp_int i(v);
  return i.str();
}

Json integer_json(long double v) {
  if (v >= 0 && v < 9.0e15L && v == std::floor(v)) return static_cast<std::uint64_t>(v);
  return integer_cell(v);
}

Json witness_json(const std::optional<Witness>& w, const FormatOptions& opt) {
  if (!w) return nullptr;
  return Json{{"index", w->index}, {"value", to_json(w->value, opt)}};
}

Json count_json(const CountVerdict& c) {
  return Json{{"status", to_string(c.status)}, {"value", c.value}, {"horizon", c.horizon},
              {"at_index", c.at_index}};
}

}  // namespace

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  throw DomainError("unknown format '" + s + "' (json or csv)");
}

std::string format_number(long double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[96];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

std::string format_rational(const Rational& r) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << r;
  return os.str();
}

Json to_json(const LogScalar& x, const FormatOptions& opt) {
  Json j;
  j["sign"] = x.sign();
  j["layer"] = x.layer();
  j["exponent_sign"] = x.exponent_sign();
  j["mantissa"] = num(x.mantissa());
  Json offs = Json::array();
  for (const auto& lv : x.levels()) offs.push_back(num(lv.offset));
  j["offsets"] = offs;
  j["approx"] = x.approx(opt.digits);
  return j;
}

LogScalar logscalar_from_json(const Json& j) {
  const int sign = j.at("sign").get<int>();
  const int layer = j.at("layer").get<int>();
  const long double mant = j.at("mantissa").get<double>();
  if (layer == 0) return LogScalar::from_linear(sign * mant);
  const int es = j.at("exponent_sign").get<int>();
  const Json& offs = j.at("offsets");
  if (static_cast<int>(offs.size()) != layer) throw DomainError("offsets length must equal layer");
  std::vector<LogScalar::Level> levels;
  for (int d = 0; d < layer; ++d) {
    const int s = d == 0 ? sign : (d == 1 ? es : 1);
    levels.push_back(LogScalar::Level{static_cast<long double>(offs[d].get<double>()), s});
  }
  const long double inner = layer == 1 ? es * mant : mant;
  return LogScalar::from_parts(levels, inner);
}

Json to_json(const Verdict& v, const FormatOptions& opt) {
  Json j;
  j["status"] = to_string(v.status);
  j["horizon"] = v.horizon;
  j["witness"] = witness_json(v.witness, opt);
  Json tr = Json::array();
  for (const auto& p : v.trace) tr.push_back(Json{{"n", p.n}, {"value", to_json(p.value, opt)}});
  j["trace"] = tr;
  j["notes"] = v.notes;
  return j;
}

Json to_json(const BoundReport& b, const FormatOptions& opt) {
  Json j;
  j["k"] = b.index.k;
  j["i"] = b.index.i;
  j["form"] = to_string(b.index.form);
  j["lower"] = to_json(b.lower, opt);
  j["upper"] = to_json(b.upper, opt);
  j["branch"] = to_string(b.branch);
  if (b.branch == UpperBranch::EvenCase) j["ell"] = b.ell;
  j["certified"] = b.certified;
  return j;
}

// ---------------------------------------------------------------------------

Report level_report(const OmegaSpec& spec, const CantorLevel& lv, const FormatOptions& opt) {
  const bool exact = lv.mode == LevelMode::ExactRational;
  Report r;
  r.kind = "intervals";
  Json& j = r.json;
  j["report"] = r.kind;
  j["spec_kind"] = to_string(spec.kind());
  j["k"] = lv.k;
  j["mode"] = to_string(lv.mode);
  j["closed_length"] = to_json(lv.closed_len, opt);
  if (exact) j["closed_length_exact"] = format_rational(*lv.closed_len_exact);
  Json ivs = Json::array();
  for (const auto& iv : lv.intervals) {
    if (exact) {
      ivs.push_back(Json::array({format_rational(*iv.left_exact), format_rational(*iv.right_exact)}));
    } else {
      ivs.push_back(Json::array({num(iv.left.to_long_double()), num(iv.right.to_long_double())}));
    }
  }
  j["intervals"] = ivs;
  Json gaps = Json::array();
  for (const auto& g : lv.gaps) {
    Json e{{"j", g.j}, {"length", to_json(g.length, opt)}};
    if (exact) e["exact"] = format_rational(*g.exact);
    gaps.push_back(e);
  }
  j["gaps"] = gaps;

  r.table.header = {"k", "i", "type", "length"};
  const std::string k = std::to_string(lv.k);
  const std::string closed = exact ? format_rational(*lv.closed_len_exact) : cell(lv.closed_len, opt);
  for (const auto& iv : lv.intervals) r.table.rows.push_back({k, std::to_string(iv.i), "closed", closed});
  for (const auto& g : lv.gaps) {
    r.table.rows.push_back({k, std::to_string(g.j), "gap", exact ? format_rational(*g.exact) : cell(g.length, opt)});
  }
  return r;
}

Report gaps_report(const OmegaSpec& spec, int k, const FormatOptions& opt) {
  if (k < 1 || k > kMaxMaterializedDepth) throw OutOfRange("gaps report needs 1 <= k <= 20");
  Report r;
  r.kind = "gaps";
  Json& j = r.json;
  j["report"] = r.kind;
  j["spec_kind"] = to_string(spec.kind());
  j["k"] = k;
  const std::uint64_t count = std::uint64_t{1} << k;
  Json gaps = Json::array();
  for (std::uint64_t g = 1; g < count; ++g) {
    gaps.push_back(Json{{"j", g}, {"length", to_json(gap_length(spec, k, g), opt)}});
  }
  j["gaps"] = gaps;
  Json ratios = Json::array();
  r.table.header = {"k", "i", "form", "ell", "m", "ratio", "factor", "ineq2"};
  for (std::uint64_t i = 2; i < count; ++i) {
    const GapRatio g = gap_ratio(spec, k, i);
    ratios.push_back(Json{{"i", i},
                          {"form", to_string(g.index.form)},
                          {"ell", g.index.ell},
                          {"m", g.index.m},
                          {"ratio", to_json(g.ratio, opt)},
                          {"factor", to_json(g.factor, opt)},
                          {"ineq2", g.ineq2}});
    r.table.rows.push_back({std::to_string(k), std::to_string(i), to_string(g.index.form),
                            std::to_string(g.index.ell), std::to_string(g.index.m), cell(g.ratio, opt),
                            cell(g.factor, opt), g.ineq2 ? "true" : "false"});
  }
  j["ratios"] = ratios;
  return r;
}

Report bounds_report(const std::vector<BoundReport>& rows, const FormatOptions& opt) {
  Report r;
  r.kind = "bounds";
  r.json["report"] = r.kind;
  Json arr = Json::array();
  r.table.header = {"k", "i", "form", "lower", "upper", "branch", "ell", "certified"};
  for (const auto& b : rows) {
    arr.push_back(to_json(b, opt));
    r.table.rows.push_back({std::to_string(b.index.k), std::to_string(b.index.i), to_string(b.index.form),
                            cell(b.lower, opt), cell(b.upper, opt), to_string(b.branch),
                            b.branch == UpperBranch::EvenCase ? std::to_string(b.ell) : "",
                            b.certified ? "true" : "false"});
  }
  r.json["bounds"] = arr;
  return r;
}

Report classify_report(const QcReport& q, const FormatOptions& opt) {
  Report r;
  r.kind = "classify";
  Json& j = r.json;
  j["report"] = r.kind;
  j["class"] = to_string(q.cls);
  j["reason"] = to_string(q.reason);
  j["analytic"] = q.analytic;
  j["horizon"] = q.horizon;
  j["sup_q"] = q.rows.empty() ? Json(nullptr) : to_json(q.sup_q, opt);
  j["sup_q_half_horizon"] = q.rows.empty() ? Json(nullptr) : to_json(q.sup_q_half, opt);
  j["note"] = q.note;
  Json rows = Json::array();
  r.table.header = {"delta", "N", "N_status", "N_half", "N_half_status", "trend"};
  for (const auto& row : q.rows) {
    rows.push_back(Json{{"delta", num(row.delta)},
                        {"N", count_json(row.n_full)},
                        {"N_half", count_json(row.n_half)},
                        {"trend", to_string(row.trend)}});
    r.table.rows.push_back({cell(row.delta, opt), std::to_string(row.n_full.value), to_string(row.n_full.status),
                            std::to_string(row.n_half.value), to_string(row.n_half.status),
                            to_string(row.trend)});
  }
  j["rows"] = rows;
  return r;
}

Report condition_I_report(const Verdict& v, const FormatOptions& opt) {
  Report r;
  r.kind = "check-i";
  r.json["report"] = r.kind;
  r.json["verdict"] = to_json(v, opt);
  r.table.header = {"n", "t_n"};
  for (const auto& p : v.trace) r.table.rows.push_back({std::to_string(p.n), cell(p.value, opt)});
  return r;
}

Report condition_II_report(const ConditionIIResult& c, const FormatOptions& opt) {
  Report r;
  r.kind = "check-ii";
  Json& j = r.json;
  j["report"] = r.kind;
  j["verdict"] = to_json(c.verdict, opt);
  j["p_decreasing"] = c.p_decreasing;
  j["gaps_increasing"] = c.gaps_increasing;
  Json blocks = Json::array();
  r.table.header = {"m", "a_m", "a_m_next", "S", "method", "error_bound"};
  for (const auto& b : c.series.blocks) {
    blocks.push_back(Json{{"m", b.m},
                          {"a_m", integer_json(b.a_lo)},
                          {"a_m_next", integer_json(b.a_hi)},
                          {"S", num(b.S)},
                          {"method", to_string(b.method)},
                          {"error_bound", num(b.error_bound)}});
    r.table.rows.push_back({std::to_string(b.m), integer_cell(b.a_lo), integer_cell(b.a_hi), cell(b.S, opt),
                            to_string(b.method), format_number(b.error_bound, 3)});
  }
  j["blocks"] = blocks;
  return r;
}

Report sums_report(const OmegaSpec& spec, std::uint64_t M, const FormatOptions& opt) {
  Report r;
  r.kind = "sums";
  Json& j = r.json;
  j["report"] = r.kind;
  Json blocks = Json::array();
  r.table.header = {"m", "a_m", "a_m_next", "S", "T", "ratio", "method"};
  for (std::uint64_t m = 1; m <= M; ++m) {
    const BlockSum b = block_sum(spec, m, true);
    const long double ratio = b.T ? *b.T / (2.0L * b.S) : 0.0L;
    blocks.push_back(Json{{"m", m},
                          {"a_m", integer_json(b.a_lo)},
                          {"a_m_next", integer_json(b.a_hi)},
                          {"S", num(b.S)},
                          {"T", b.T ? num(*b.T) : Json(nullptr)},
                          {"ratio", b.T ? num(ratio) : Json(nullptr)},
                          {"method", to_string(b.method)}});
    r.table.rows.push_back({std::to_string(m), integer_cell(b.a_lo), integer_cell(b.a_hi), cell(b.S, opt),
                            b.T ? cell(*b.T, opt) : "", b.T ? cell(ratio, opt) : "", to_string(b.method)});
  }
  j["blocks"] = blocks;
  j["note"] = "T is empty where some p_n in the block lies outside (0,1)";
  return r;
}

Report witness_report(const OmegaSpec& spec, std::uint64_t from, std::uint64_t to, const FormatOptions& opt) {
  if (from < 1 || to < from) throw OutOfRange("witness range must satisfy 1 <= from <= to");
  Report r;
  r.kind = "witness";
  Json& j = r.json;
  j["report"] = r.kind;
  Json rows = Json::array();
  r.table.header = {"n", "ratio", "comparator", "pants_ratio"};
  for (std::uint64_t n = from; n <= to; ++n) {
    const WitnessRatio w = witness_ratio(spec, n);
    const LogScalar p = pants_ratio_bound(spec, n);
    rows.push_back(Json{{"n", n},
                        {"ratio", to_json(w.ratio, opt)},
                        {"comparator", to_json(w.comparator, opt)},
                        {"pants_ratio", to_json(p, opt)}});
    r.table.rows.push_back({std::to_string(n), cell(w.ratio, opt), cell(w.comparator, opt), cell(p, opt)});
  }
  j["rows"] = rows;
  return r;
}

Report pentagon_report(const LogScalar& a, const LogScalar& b, const LogScalar& d, const FormatOptions& opt) {
  Report r;
  r.kind = "pentagon";
  r.json["report"] = r.kind;
  r.json["a"] = to_json(a, opt);
  r.json["b"] = to_json(b, opt);
  r.json["d"] = to_json(d, opt);
  r.table.header = {"a", "b", "d"};
  r.table.rows.push_back({cell(a, opt), cell(b, opt), cell(d, opt)});
  return r;
}

Report criterion_report(const CriterionReport& c, const FormatOptions& opt) {
  Report r;
  r.kind = "report";
  Json& j = r.json;
  j["report"] = r.kind;
  j["spec_kind"] = to_string(c.kind);
  j["horizon"] = c.horizon;
  j["status"] = to_string(c.status);
  j["trend"] = c.trend;
  Json rows = Json::array();
  if (c.kind == OmegaKind::RecursiveI) {
    r.table.header = {"k", "upper", "pants_ratio"};
    for (const auto& row : c.rows_i) {
      rows.push_back(Json{{"k", row.k}, {"upper", to_json(row.upper, opt)}, {"pants_ratio", to_json(row.pants_ratio, opt)}});
      r.table.rows.push_back({std::to_string(row.k), cell(row.upper, opt), cell(row.pants_ratio, opt)});
    }
  } else {
    r.table.header = {"m", "a_m", "alpha_cap", "S", "claim31_lower"};
    for (const auto& row : c.rows_ii) {
      rows.push_back(Json{{"m", row.m},
                          {"a_m", integer_json(row.a_m)},
                          {"alpha_cap", to_json(row.alpha_cap, opt)},
                          {"S", num(row.S)},
                          {"claim31_lower", row.claim31 ? to_json(*row.claim31, opt) : Json(nullptr)}});
      r.table.rows.push_back({std::to_string(row.m), integer_cell(row.a_m), cell(row.alpha_cap, opt),
                              cell(row.S, opt), row.claim31 ? cell(*row.claim31, opt) : ""});
    }
  }
  j["rows"] = rows;
  return r;
}

// ---------------------------------------------------------------------------

void write_csv(const Table& t, std::ostream& os) {
  auto field = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  };
  auto line = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) os << ',';
      os << field(row[c]);
    }
    os << '\n';
  };
  line(t.header);
  for (const auto& row : t.rows) line(row);
}

void emit_report(const Report& r, Format f, std::ostream& os) {
  if (f == Format::Json) {
    os << r.json.dump(2) << '\n';
  } else {
    write_csv(r.table, os);
  }
  if (!os) throw Error("failed to write report");
}

void emit_report(const Report& r, Format f, const std::string& path) {
  if (path.empty() || path == "-") {
    emit_report(r, f, std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  emit_report(r, f, out);
}

}  // namespace cantorgeo

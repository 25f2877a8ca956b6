#include "cantorgeo/config.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "cantorgeo/errors.hpp"

namespace cantorgeo {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

struct Entry {
  std::string value;
  int line = 0;
};

using Fields = std::map<std::string, Entry>;

const Entry& require(const Fields& f, const std::string& key, const std::string& kind) {
  auto it = f.find(key);
  if (it == f.end()) throw ParseError(0, key, "missing for kind " + kind);
  return it->second;
}

QValue number(const Entry& e, const std::string& key) {
  try {
    return QValue::parse(e.value);
  } catch (const SpecViolation&) {
    throw;
  } catch (const Error& err) {
    throw ParseError(e.line, key, err.what());
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, ',')) {
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

std::vector<QValue> number_list(const Entry& e, const std::string& key) {
  std::vector<QValue> out;
  for (const auto& item : split_list(e.value)) out.push_back(number(Entry{item, e.line}, key));
  if (out.empty()) throw ParseError(e.line, key, "empty list");
  return out;
}

std::vector<long double> real_list(const Entry& e, const std::string& key) {
  std::vector<long double> out;
  for (const auto& q : number_list(e, key)) out.push_back(q.value.to_long_double());
  return out;
}

bool boolean(const Entry& e, const std::string& key) {
  if (e.value == "true" || e.value == "1" || e.value == "yes") return true;
  if (e.value == "false" || e.value == "0" || e.value == "no") return false;
  throw ParseError(e.line, key, "expected true or false");
}

void only(const Fields& f, const std::set<std::string>& allowed, const std::string& kind) {
  for (const auto& [key, e] : f) {
    if (!allowed.count(key)) throw ParseError(e.line, key, "not a valid field for kind " + kind);
  }
}

}  // namespace

OmegaSpec parse_spec_text(const std::string& text) {
  Fields f;
  std::istringstream is(text);
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError(line, "", "expected key = value");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) throw ParseError(line, "", "empty key");
    if (value.empty()) throw ParseError(line, key, "empty value");
    if (f.count(key)) throw ParseError(line, key, "duplicate field");
    f[key] = Entry{value, line};
  }
  auto kit = f.find("kind");
  if (kit == f.end()) throw ParseError(0, "kind", "missing");
  const std::string kind = kit->second.value;

  OmegaSpec spec;
  if (kind == "constant") {
    only(f, {"kind", "q", "horizon_hint"}, kind);
    spec = OmegaSpec::constant(number(require(f, "q", kind), "q"));
  } else if (kind == "explicit") {
    only(f, {"kind", "values", "repeat", "horizon_hint"}, kind);
    const bool repeat = f.count("repeat") ? boolean(f.at("repeat"), "repeat") : false;
    spec = OmegaSpec::explicit_list(number_list(require(f, "values", kind), "values"), repeat);
  } else if (kind == "recursive-i") {
    only(f, {"kind", "q1", "horizon_hint"}, kind);
    spec = OmegaSpec::recursive_i(number(require(f, "q1", kind), "q1"));
  } else if (kind == "composite-ii") {
    only(f, {"kind", "p", "p_values", "a", "a_values", "d", "horizon_hint"}, kind);
    CompositeRule r;
    const Entry& p = require(f, "p", kind);
    if (p.value == "half-pi-sq-over-log") {
      r.p_rule = PRule::HalfPiSqOverLog;
      if (f.count("p_values")) throw ParseError(f.at("p_values").line, "p_values", "only with p = explicit");
    } else if (p.value == "explicit") {
      r.p_rule = PRule::Explicit;
      r.p_values = real_list(require(f, "p_values", kind), "p_values");
    } else {
      throw ParseError(p.line, "p", "expected half-pi-sq-over-log or explicit");
    }
    const Entry& a = require(f, "a", kind);
    if (a.value == "geometric") {
      r.a_rule = ARule::Geometric;
      if (f.count("a_values")) throw ParseError(f.at("a_values").line, "a_values", "only with a = explicit");
    } else if (a.value == "explicit") {
      r.a_rule = ARule::Explicit;
      r.a_values = real_list(require(f, "a_values", kind), "a_values");
    } else {
      throw ParseError(a.line, "a", "expected geometric or explicit");
    }
    r.d = number(require(f, "d", kind), "d");
    spec = OmegaSpec::composite_ii(std::move(r));
  } else {
    throw ParseError(kit->second.line, "kind", "unknown kind '" + kind + "'");
  }

  if (f.count("horizon_hint")) {
    const Entry& h = f.at("horizon_hint");
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(h.value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != h.value.size() || h.value[0] == '-') throw ParseError(h.line, "horizon_hint", "expected a non-negative integer");
    spec.set_horizon_hint(v);
  }
  return spec;
}

OmegaSpec parse_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read spec file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_spec_text(ss.str());
}

}  // namespace cantorgeo

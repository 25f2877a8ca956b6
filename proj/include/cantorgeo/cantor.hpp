#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cantorgeo/logreal.hpp"

namespace cantorgeo {

using Rational = boost::multiprecision::cpp_rational;

// A sequence term: always available as a LogScalar, exactly as a rational
// when the source was rational.
struct QValue {
  LogScalar value;
  std::optional<Rational> exact;

  static QValue from_rational(const Rational& r);
  static QValue from_log(const LogScalar& v) { return QValue{v, std::nullopt}; }
  // "1/3", "0.25", "1e-5" (exact), "exp(-10)" (log domain only).
  static QValue parse(const std::string& text);
  std::string to_string() const;
};

enum class OmegaKind { Constant, Explicit, RecursiveI, CompositeII };
enum class PRule { HalfPiSqOverLog, Explicit };
enum class ARule { Geometric, Explicit };

const char* to_string(OmegaKind k);

struct CompositeRule {
  PRule p_rule = PRule::HalfPiSqOverLog;
  std::vector<long double> p_values;  // p_1, p_2, ... for PRule::Explicit
  ARule a_rule = ARule::Geometric;
  std::vector<long double> a_values;  // a_1 < a_2 < ... for ARule::Explicit
  QValue d;
};

/*
 * Generator for omega = {q_n}. Copies share one grow-only memo, so a spec can
 * be handed to several threads; readers never block each other.
 */
class OmegaSpec {
 public:
  static OmegaSpec constant(const QValue& q);
  // periodic = true cycles the list; otherwise indices past the end throw.
  static OmegaSpec explicit_list(std::vector<QValue> values, bool periodic = false);
  static OmegaSpec recursive_i(const QValue& q1);
  static OmegaSpec composite_ii(CompositeRule rule);

  OmegaKind kind() const noexcept { return kind_; }
  std::uint64_t horizon_hint() const noexcept { return horizon_hint_; }
  void set_horizon_hint(std::uint64_t h) noexcept { horizon_hint_ = h; }

  const std::vector<QValue>& values() const noexcept { return values_; }
  bool periodic() const noexcept { return periodic_; }
  const CompositeRule& composite() const;

  // q_n, n >= 1. Throws SpecViolation when the generated term leaves (0,1).
  LogScalar q(std::uint64_t n) const;
  // Exact q_n when the generator yields a rational; nullopt otherwise.
  std::optional<Rational> q_exact(std::uint64_t n) const;

  // Composite specs only.
  long double p(std::uint64_t n) const;
  // exp(-pi^2 / (2 p_n)).
  long double p_term(std::uint64_t n) const;
  // a_m, m >= 1 (long double: exact for the powers of two of the geometric rule).
  long double a(std::uint64_t m) const;
  std::uint64_t a_count() const;  // number of available a_m (huge for Geometric)
  bool in_A(std::uint64_t n) const;

  // True when every q_p, p >= n, is known to be no larger than q_n.
  bool monotone_from(std::uint64_t n) const;

 private:
  struct Memo;
  OmegaKind kind_ = OmegaKind::Constant;
  std::uint64_t horizon_hint_ = 0;
  std::vector<QValue> values_;
  bool periodic_ = false;
  std::shared_ptr<const CompositeRule> composite_;
  std::shared_ptr<Memo> memo_;
};

LogScalar q_at(const OmegaSpec& spec, std::uint64_t n);

struct DyadicIndex {
  enum class Form { Boundary, Even, OddInterior };
  int k = 0;
  std::uint64_t i = 0;
  Form form = Form::Boundary;
  int ell = 0;          // i = 2^ell m  or  i = 2^ell m + 1
  std::uint64_t m = 0;  // odd
  bool boundary() const noexcept { return form == Form::Boundary; }
};

const char* to_string(DyadicIndex::Form f);

// Indices are 64-bit, so per-index queries need k <= 63.
constexpr int kMaxIndexDepth = 63;
constexpr int kMaxExactDepth = 40;
constexpr int kMaxLogDepth = 1000000;
constexpr int kMaxMaterializedDepth = 20;

DyadicIndex two_adic(int k, std::uint64_t i);

LogScalar closed_interval_length(const OmegaSpec& spec, int k);
Rational closed_interval_length_exact(const OmegaSpec& spec, int k);

// j-th open gap of E_k, 1 <= j <= 2^k - 1.
LogScalar gap_length(const OmegaSpec& spec, int k, std::uint64_t j);
Rational gap_length_exact(const OmegaSpec& spec, int k, std::uint64_t j);

struct Interval {
  std::uint64_t i = 0;
  LogScalar left, right;
  std::optional<Rational> left_exact, right_exact;
};

struct Gap {
  std::uint64_t j = 0;
  LogScalar length;
  std::optional<Rational> exact;
};

// Single interval I_k^i by binary-address arithmetic.
Interval interval_at(const OmegaSpec& spec, int k, std::uint64_t i, bool exact);

enum class LevelMode { ExactRational, LogDomain };
const char* to_string(LevelMode m);

struct CantorLevel {
  int k = 0;
  LevelMode mode = LevelMode::LogDomain;
  LogScalar closed_len;
  std::optional<Rational> closed_len_exact;
  std::vector<Interval> intervals;  // ascending
  std::vector<Gap> gaps;            // j = 1 .. 2^k - 1
};

bool exact_available(const OmegaSpec& spec, int k);
CantorLevel level(const OmegaSpec& spec, int k, LevelMode mode);

struct GapRatio {
  // |J_k^i| / |J_k^{i-1}| around the interior interval I_k^i.
  LogScalar ratio;
  // Old-generation gap over new one: ratio for even i, 1/ratio for odd i.
  LogScalar factor;
  // q_k > q_{k-l} 2^l prod 1/(1-q_p), i.e. factor < 1.
  bool ineq2 = false;
  DyadicIndex index;
};

GapRatio gap_ratio(const OmegaSpec& spec, int k, std::uint64_t i);
Rational gap_ratio_exact(const OmegaSpec& spec, int k, std::uint64_t i);

}  // namespace cantorgeo

#pragma once

#include <compare>
#include <string>
#include <vector>

namespace cantorgeo {

enum class Ordering { LT, EQ, GT };

/*
 * Extended-range real numbers stored as an iterated exponential.
 *
 * A value of layer L is
 *
 *     layer 0:  x = m
 *     layer 1:  x = c0 + s0 * exp(m)
 *     layer L:  x = c0 + s0 * exp(c1 + s1 * exp(c2 + exp(... exp(m))))
 *
 * with one (offset c_j, sign s_j) pair per level and a plain innermost
 * mantissa m. Canonical form:
 *
 *   - layer 0 holds 0 or |m| in [e^-690, e^690];
 *   - every exponent below the top has magnitude > 690, so exp() of it
 *     leaves the linear band;
 *   - only the top exponent may be negative (value tinier than e^-690);
 *     inner exponents are huge and positive, so s_j = +1 for j >= 2;
 *   - when the value is tiny its top offset c0 is 0.
 *
 * The offsets carry the small additive terms that a tower would otherwise
 * swallow, e.g. the ln n in ln(n/q) = ln n + ln(1/q). When two operands
 * share the same big part, subtraction cancels it exactly and the offsets
 * survive.
 *
 * Values are immutable; all operations are pure.
 */
class LogScalar {
 public:
  struct Level {
    long double offset = 0.0L;
    int sign = 1;
    bool operator==(const Level&) const = default;
  };

  // |ln|x|| above which a value leaves layer 0.
  static constexpr long double kBand = 690.0L;
  static constexpr int kMaxLayer = 1024;

  LogScalar() = default;

  static LogScalar from_linear(long double v);
  // Rebuilds (and canonicalizes) a value from its serialized parts.
  static LogScalar from_parts(const std::vector<Level>& levels, long double inner);
  static LogScalar one() { return from_linear(1.0L); }

  int sign() const noexcept;
  int layer() const noexcept { return static_cast<int>(levels_.size()); }
  // Sign of ln|x| for layer >= 1 (+1: |x| > e^690, -1: |x| < e^-690); 0 at layer 0.
  int exponent_sign() const noexcept;
  // |x| at layer 0, otherwise |m|.
  long double mantissa() const noexcept;
  const std::vector<Level>& levels() const noexcept { return levels_; }
  long double inner() const noexcept { return inner_; }

  bool is_zero() const noexcept { return levels_.empty() && inner_ == 0.0L; }
  bool is_linear() const noexcept { return levels_.empty(); }
  bool is_tiny() const noexcept { return exponent_sign() < 0; }
  bool is_huge() const noexcept { return exponent_sign() > 0; }

  // Saturates to 0 or +-inf outside the long double range.
  long double to_long_double() const noexcept;
  double to_double() const noexcept { return static_cast<double>(to_long_double()); }

  // Decimal for layer 0, nested "exp(...)" otherwise, e.g. "exp(-exp(3236.356))".
  std::string approx(int digits = 8) const;

  bool operator==(const LogScalar&) const = default;

 private:
  friend struct LogScalarOps;
  std::vector<Level> levels_;  // outermost first
  long double inner_ = 0.0L;
};

LogScalar mul(const LogScalar& a, const LogScalar& b);
LogScalar div(const LogScalar& a, const LogScalar& b);
LogScalar recip(const LogScalar& a);
LogScalar neg(const LogScalar& a);
LogScalar abs_of(const LogScalar& a);

// Sum of two values. Mixed signs are only supported when both are layer 0;
// higher layers throw UnsupportedOperation.
LogScalar add(const LogScalar& a, const LogScalar& b);

LogScalar ln_of(const LogScalar& a);
LogScalar exp_of(const LogScalar& a);
// ln(1 + a) for a > -1.
LogScalar log1p_of(const LogScalar& a);

// 1 - a for 0 <= a < 1. Tiny a gives exactly 1; use ln_one_minus for the
// first-order information.
LogScalar one_minus(const LogScalar& a);
LogScalar ln_one_minus(const LogScalar& a);

LogScalar sinh_of(const LogScalar& x);
LogScalar cosh_of(const LogScalar& x);
LogScalar asinh_of(const LogScalar& y);
LogScalar acosh_of(const LogScalar& y);

Ordering cmp(const LogScalar& a, const LogScalar& b);

inline std::strong_ordering operator<=>(const LogScalar& a, const LogScalar& b) {
  switch (cmp(a, b)) {
    case Ordering::LT:
      return std::strong_ordering::less;
    case Ordering::GT:
      return std::strong_ordering::greater;
    default:
      return std::strong_ordering::equal;
  }
}

inline LogScalar operator*(const LogScalar& a, const LogScalar& b) { return mul(a, b); }
inline LogScalar operator/(const LogScalar& a, const LogScalar& b) { return div(a, b); }
inline LogScalar operator-(const LogScalar& a) { return neg(a); }

const LogScalar& max_of(const LogScalar& a, const LogScalar& b);
const LogScalar& min_of(const LogScalar& a, const LogScalar& b);

// Relative distance |a - b| / max(|a|, |b|), evaluated in the ln domain when
// the values do not fit a long double. Returns +inf for opposite signs.
long double relative_difference(const LogScalar& a, const LogScalar& b);

namespace detail {

// Signed sum for every layer combination. Equal big parts of opposite sign
// cancel exactly; otherwise the smaller operand enters through
// log1p(+-exp(smaller - larger)).
LogScalar signed_sum(const LogScalar& a, const LogScalar& b);

// x + delta for a plain real delta.
LogScalar shift(const LogScalar& x, long double delta);

// ln|x|; for layer >= 1 this is the stored top exponent.
LogScalar log_abs(const LogScalar& x);

}  // namespace detail

}  // namespace cantorgeo

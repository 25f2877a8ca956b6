#include "cantorgeo/logreal.hpp"

#include <cmath>
#include <charconv>
#include <limits>
#include <utility>

#include "cantorgeo/errors.hpp"

namespace cantorgeo {

namespace {

constexpr long double kLn2 = 0.693147180559945309417232121458176568L;
// Offsets larger than this are negligible next to any exp() of a layer >= 1
// exponent (which exceeds e^690 ~ 1e299).
constexpr long double kOffsetDrop = 1e250L;
// sinhl/coshl/expl stay finite below this.
constexpr long double kLinearExpLimit = 11000.0L;

int sign_of(long double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

}  // namespace

struct LogScalarOps {
  using Level = LogScalar::Level;

  static LogScalar tower(std::vector<Level> levels, long double inner) {
    if (static_cast<int>(levels.size()) > LogScalar::kMaxLayer) {
      throw SaturationError("LogScalar exceeds " + std::to_string(LogScalar::kMaxLayer) +
                            " layers");
    }
    LogScalar r;
    r.levels_ = std::move(levels);
    r.inner_ = inner;
    return r;
  }

  // Canonical value for a long double.
  static LogScalar plain(long double v) {
    if (!std::isfinite(v)) throw DomainError("non-finite value");
    LogScalar r;
    if (v == 0.0L) return r;
    const long double la = std::log(std::fabs(v));
    if (std::fabs(la) <= LogScalar::kBand) {
      r.inner_ = v;
      return r;
    }
    return tower({Level{0.0L, sign_of(v)}}, la);
  }

  // Top exponent of a layer >= 1 value as a value of its own.
  static LogScalar pop(const LogScalar& x) {
    if (x.levels_.size() == 1) return plain(x.inner_);
    LogScalar r;
    r.levels_.assign(x.levels_.begin() + 1, x.levels_.end());
    r.inner_ = x.inner_;
    return r;
  }

  // offset + sign * exp(y)
  static LogScalar wrap(const LogScalar& y, int sign, long double offset) {
    if (y.is_linear()) {
      const long double v = y.inner_;
      if (std::fabs(v) <= LogScalar::kBand) return plain(offset + sign * std::exp(v));
      if (v < 0 && offset != 0.0L) return plain(offset + sign * std::exp(v));
      const long double c = (v < 0 || std::fabs(offset) > kOffsetDrop) ? 0.0L : offset;
      return tower({Level{c, sign}}, v);
    }
    if (y.is_tiny()) return plain(offset + sign * (1.0L + y.to_long_double()));
    if (y.sign() < 0) {
      // exp(y) is below e^-e^690; only the offset survives if it is non-zero.
      if (offset != 0.0L) return plain(offset);
    }
    std::vector<Level> levels;
    levels.reserve(y.levels_.size() + 1);
    const long double c = (y.sign() < 0 || std::fabs(offset) > kOffsetDrop) ? 0.0L : offset;
    levels.push_back(Level{c, sign});
    levels.insert(levels.end(), y.levels_.begin(), y.levels_.end());
    return tower(std::move(levels), y.inner_);
  }

  static LogScalar negate(const LogScalar& x) {
    LogScalar r = x;
    if (r.levels_.empty()) {
      r.inner_ = -r.inner_;
    } else {
      r.levels_[0].sign = -r.levels_[0].sign;
      r.levels_[0].offset = -r.levels_[0].offset;
    }
    return r;
  }

  static LogScalar log_abs(const LogScalar& x) {
    if (x.is_zero()) throw DomainError("ln of zero");
    if (x.is_linear()) return plain(std::log(std::fabs(x.inner_)));
    const Level& top = x.levels_[0];
    LogScalar e = pop(x);
    if (top.offset != 0.0L && e.is_linear()) {
      // |c0 + s0 e^V| = e^V (1 + s0 c0 e^-V)
      const long double corr = std::log1p(top.sign * top.offset * std::exp(-e.inner_));
      return plain(e.inner_ + corr);
    }
    return e;
  }

  static LogScalar shift(const LogScalar& x, long double delta) {
    if (!std::isfinite(delta)) throw DomainError("non-finite shift");
    if (delta == 0.0L) return x;
    if (x.is_linear()) return plain(x.inner_ + delta);
    if (x.is_tiny()) return plain(delta + x.to_long_double());
    LogScalar r = x;
    r.levels_[0].offset += delta;
    if (std::fabs(r.levels_[0].offset) > kOffsetDrop) r.levels_[0].offset = 0.0L;
    return r;
  }

  static LogScalar signed_sum(const LogScalar& a, const LogScalar& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_linear() && b.is_linear()) return plain(a.inner_ + b.inner_);
    if (a.is_linear()) return shift(b, a.inner_);
    if (b.is_linear()) return shift(a, b.inner_);

    const LogScalar* big = &a;
    const LogScalar* small = &b;
    LogScalar vb = pop(a);
    LogScalar vs = pop(b);
    Ordering o = cmp(vb, vs);
    if (o == Ordering::LT) {
      std::swap(big, small);
      std::swap(vb, vs);
    }
    const int sb = big->levels_[0].sign;
    const int ss = small->levels_[0].sign;
    const long double offset = big->levels_[0].offset + small->levels_[0].offset;
    if (o == Ordering::EQ) {
      if (sb == ss) return wrap(shift(vb, kLn2), sb, offset);
      return plain(offset);
    }
    const LogScalar d = signed_sum(vs, negate(vb));  // < 0
    long double ratio = 0.0L;
    if (d.is_linear()) {
      ratio = std::exp(d.inner_);
    } else if (d.is_tiny()) {
      ratio = 1.0L;
    }
    if (sb != ss && ratio >= 1.0L) return plain(offset);
    const long double f = std::log1p(sb * ss * ratio);
    return wrap(shift(vb, f), sb, offset);
  }

  static LogScalar multiply(const LogScalar& a, const LogScalar& b) {
    if (a.is_zero() || b.is_zero()) return LogScalar{};
    if (a.is_linear() && b.is_linear()) return plain(a.inner_ * b.inner_);
    if (a.is_linear() || b.is_linear()) {
      const long double p = a.is_linear() ? a.inner_ : b.inner_;
      const LogScalar& t = a.is_linear() ? b : a;
      const Level& top = t.levels_[0];
      const long double c = t.is_tiny() ? 0.0L : top.offset * p;
      return wrap(shift(pop(t), std::log(std::fabs(p))), top.sign * sign_of(p), c);
    }
    return wrap(signed_sum(log_abs(a), log_abs(b)), a.sign() * b.sign(), 0.0L);
  }

  static LogScalar reciprocal(const LogScalar& a) {
    if (a.is_zero()) throw DomainError("division by zero");
    if (a.is_linear()) return plain(1.0L / a.inner_);
    return wrap(negate(log_abs(a)), a.sign(), 0.0L);
  }

  static Ordering compare_positive(const LogScalar& a, const LogScalar& b) {
    // both strictly positive
    auto rank = [](const LogScalar& x) { return x.is_linear() ? 0 : x.exponent_sign(); };
    const int ra = rank(a);
    const int rb = rank(b);
    if (ra != rb) return ra < rb ? Ordering::LT : Ordering::GT;
    if (ra == 0) {
      if (a.inner_ < b.inner_) return Ordering::LT;
      if (a.inner_ > b.inner_) return Ordering::GT;
      return Ordering::EQ;
    }
    const Ordering o = cmp(pop(a), pop(b));
    if (o != Ordering::EQ) return o;
    const long double ca = a.levels_[0].offset;
    const long double cb = b.levels_[0].offset;
    if (ca < cb) return Ordering::LT;
    if (ca > cb) return Ordering::GT;
    return Ordering::EQ;
  }

  static Ordering compare(const LogScalar& a, const LogScalar& b) {
    const int sa = a.sign();
    const int sb = b.sign();
    if (sa != sb) return sa < sb ? Ordering::LT : Ordering::GT;
    if (sa == 0) return Ordering::EQ;
    if (sa > 0) return compare_positive(a, b);
    const Ordering o = compare_positive(negate(a), negate(b));
    if (o == Ordering::LT) return Ordering::GT;
    if (o == Ordering::GT) return Ordering::LT;
    return Ordering::EQ;
  }
};

// ---------------------------------------------------------------------------

LogScalar LogScalar::from_linear(long double v) { return LogScalarOps::plain(v); }

LogScalar LogScalar::from_parts(const std::vector<Level>& levels, long double inner) {
  if (static_cast<int>(levels.size()) > kMaxLayer) throw SaturationError("too many layers");
  LogScalar y = LogScalarOps::plain(inner);
  for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
    if (it->sign != 1 && it->sign != -1) throw DomainError("level sign must be +-1");
    if (!std::isfinite(it->offset)) throw DomainError("non-finite offset");
    y = LogScalarOps::wrap(y, it->sign, it->offset);
  }
  return y;
}

int LogScalar::sign() const noexcept {
  if (levels_.empty()) return sign_of(inner_);
  return levels_[0].sign;
}

int LogScalar::exponent_sign() const noexcept {
  if (levels_.empty()) return 0;
  if (levels_.size() == 1) return sign_of(inner_);
  return levels_[1].sign;
}

long double LogScalar::mantissa() const noexcept { return std::fabs(inner_); }

long double LogScalar::to_long_double() const noexcept {
  if (levels_.empty()) return inner_;
  const Level& top = levels_[0];
  if (levels_.size() == 1) return top.offset + top.sign * std::exp(inner_);
  if (is_tiny()) return 0.0L;
  return top.sign * std::numeric_limits<long double>::infinity();
}

std::string LogScalar::approx(int digits) const {
  auto fmt = [digits](long double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits);
    return std::string(buf, res.ptr);
  };
  if (levels_.empty()) return fmt(inner_);
  // Render from the innermost level outwards. Deep towers keep the outer
  // levels and collapse the rest into "exp^r(m)" (inner offsets omitted).
  constexpr std::size_t kShown = 4;
  std::size_t start = levels_.size();
  std::string s = fmt(inner_);
  if (levels_.size() > kShown + 2) {
    start = kShown;
    s = "exp^" + std::to_string(levels_.size() - kShown) + "(" + s + ")";
  }
  for (std::size_t j = start; j-- > 0;) {
    const Level& lv = levels_[j];
    std::string body = "exp(" + s + ")";
    if (lv.offset != 0.0L) {
      s = fmt(lv.offset) + (lv.sign < 0 ? "-" : "+") + body;
    } else {
      s = (lv.sign < 0 ? "-" : "") + body;
    }
  }
  return s;
}

LogScalar mul(const LogScalar& a, const LogScalar& b) { return LogScalarOps::multiply(a, b); }

LogScalar div(const LogScalar& a, const LogScalar& b) {
  if (b.is_zero()) throw DomainError("division by zero");
  if (a.is_linear() && b.is_linear()) return LogScalarOps::plain(a.inner() / b.inner());
  return LogScalarOps::multiply(a, LogScalarOps::reciprocal(b));
}

LogScalar recip(const LogScalar& a) { return LogScalarOps::reciprocal(a); }

LogScalar neg(const LogScalar& a) { return LogScalarOps::negate(a); }

LogScalar abs_of(const LogScalar& a) { return a.sign() < 0 ? LogScalarOps::negate(a) : a; }

LogScalar add(const LogScalar& a, const LogScalar& b) {
  if (a.sign() * b.sign() < 0 && (!a.is_linear() || !b.is_linear())) {
    throw UnsupportedOperation("signed addition at layer >= 1");
  }
  return LogScalarOps::signed_sum(a, b);
}

LogScalar ln_of(const LogScalar& a) {
  if (a.sign() <= 0) throw DomainError("ln of a non-positive value");
  return LogScalarOps::log_abs(a);
}

LogScalar exp_of(const LogScalar& a) { return LogScalarOps::wrap(a, 1, 0.0L); }

LogScalar log1p_of(const LogScalar& a) {
  if (a.is_linear()) {
    if (a.inner() <= -1.0L) throw DomainError("log1p argument <= -1");
    return LogScalarOps::plain(std::log1p(a.inner()));
  }
  if (a.is_tiny()) return a;
  if (a.sign() < 0) throw DomainError("log1p argument <= -1");
  return LogScalarOps::log_abs(LogScalarOps::shift(a, 1.0L));
}

LogScalar one_minus(const LogScalar& a) {
  if (a.sign() < 0 || cmp(a, LogScalar::one()) != Ordering::LT) {
    throw DomainError("one_minus requires 0 <= a < 1");
  }
  if (a.is_linear()) return LogScalarOps::plain(1.0L - a.inner());
  return LogScalar::one();
}

LogScalar ln_one_minus(const LogScalar& a) {
  if (a.sign() < 0 || cmp(a, LogScalar::one()) != Ordering::LT) {
    throw DomainError("ln_one_minus requires 0 <= a < 1");
  }
  if (a.is_linear()) return LogScalarOps::plain(std::log1p(-a.inner()));
  return LogScalarOps::negate(a);
}

LogScalar sinh_of(const LogScalar& x) {
  if (x.is_linear()) {
    const long double v = x.inner();
    if (std::fabs(v) <= kLinearExpLimit) return LogScalarOps::plain(std::sinh(v));
  } else if (x.is_tiny()) {
    return x;
  }
  // sinh x = sign(x) exp(|x| - ln 2) once e^-|x| is below long double precision.
  const LogScalar e = exp_of(detail::shift(abs_of(x), -kLn2));
  return x.sign() < 0 ? neg(e) : e;
}

LogScalar cosh_of(const LogScalar& x) {
  if (x.is_linear()) {
    const long double v = x.inner();
    if (std::fabs(v) <= kLinearExpLimit) return LogScalarOps::plain(std::cosh(v));
  } else if (x.is_tiny()) {
    return LogScalar::one();
  }
  return exp_of(detail::shift(abs_of(x), -kLn2));
}

LogScalar asinh_of(const LogScalar& y) {
  if (y.is_linear()) return LogScalarOps::plain(std::asinh(y.inner()));
  if (y.is_tiny()) return y;
  const LogScalar r = detail::shift(LogScalarOps::log_abs(y), kLn2);
  return y.sign() < 0 ? neg(r) : r;
}

LogScalar acosh_of(const LogScalar& y) {
  if (cmp(y, LogScalar::one()) == Ordering::LT) throw DomainError("acosh argument < 1");
  if (y.is_linear()) return LogScalarOps::plain(std::acosh(y.inner()));
  return detail::shift(LogScalarOps::log_abs(y), kLn2);
}

Ordering cmp(const LogScalar& a, const LogScalar& b) { return LogScalarOps::compare(a, b); }

const LogScalar& max_of(const LogScalar& a, const LogScalar& b) {
  return cmp(a, b) == Ordering::LT ? b : a;
}

const LogScalar& min_of(const LogScalar& a, const LogScalar& b) {
  return cmp(b, a) == Ordering::LT ? b : a;
}

long double relative_difference(const LogScalar& a, const LogScalar& b) {
  if (a.is_zero() && b.is_zero()) return 0.0L;
  if (a.sign() != b.sign()) return std::numeric_limits<long double>::infinity();
  if (a.is_linear() && b.is_linear()) {
    return std::fabs(a.inner() - b.inner()) / std::max(std::fabs(a.inner()), std::fabs(b.inner()));
  }
  const LogScalar la = LogScalarOps::log_abs(a);
  const LogScalar lb = LogScalarOps::log_abs(b);
  const bool a_bigger = cmp(la, lb) != Ordering::LT;
  const LogScalar d = LogScalarOps::signed_sum(a_bigger ? lb : la, LogScalarOps::negate(a_bigger ? la : lb));
  // d = ln(small/large) <= 0
  if (!d.is_linear()) return d.is_tiny() ? std::fabs(d.to_long_double()) : 1.0L;
  return -std::expm1(d.inner());
}

namespace detail {

LogScalar signed_sum(const LogScalar& a, const LogScalar& b) { return LogScalarOps::signed_sum(a, b); }

LogScalar shift(const LogScalar& x, long double delta) { return LogScalarOps::shift(x, delta); }

LogScalar log_abs(const LogScalar& x) { return LogScalarOps::log_abs(x); }

}  // namespace detail

}  // namespace cantorgeo

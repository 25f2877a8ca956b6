#include "cantorgeo/cantor.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <sstream>

#include "cantorgeo/errors.hpp"

namespace cantorgeo {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;
constexpr long double kLn2 = std::numbers::ln2_v<long double>;

LogScalar lit(long double v) { return LogScalar::from_linear(v); }

LogScalar rational_to_log(const Rational& r) {
  using boost::multiprecision::cpp_int;
  if (r == 0) return LogScalar{};
  const cpp_int num = abs(boost::multiprecision::numerator(r));
  const cpp_int& den = boost::multiprecision::denominator(r);
  const long nb = static_cast<long>(boost::multiprecision::msb(num));
  const long db = static_cast<long>(boost::multiprecision::msb(den));
  if (nb < 900 && db < 900) {
    const long double v = static_cast<long double>(num) / static_cast<long double>(den);
    return lit(r < 0 ? -v : v);
  }
  // ln(num/den) = ln(num 2^-sn) - ln(den 2^-sd) + (sn - sd) ln 2, with the
  // shifted parts holding the top 64 bits.
  auto top = [](const cpp_int& x, long bits, long& shift) {
    shift = bits > 63 ? bits - 63 : 0;
    return static_cast<long double>(x >> shift);
  };
  long sn = 0, sd = 0;
  const long double tn = top(num, nb, sn);
  const long double td = top(den, db, sd);
  const long double ln = std::log(tn) - std::log(td) + static_cast<long double>(sn - sd) * kLn2;
  LogScalar v = exp_of(lit(ln));
  return r < 0 ? neg(v) : v;
}

void check_unit_interval(const LogScalar& q, std::uint64_t n, const char* what) {
  if (q.sign() <= 0 || cmp(q, LogScalar::one()) != Ordering::LT) {
    throw SpecViolation(n, std::string(what) + " must lie in (0,1), got " + q.approx());
  }
}

// Parses a plain decimal ("0.25", "-3", "1e-5", "2.5E3") into an exact rational.
std::optional<Rational> parse_decimal(const std::string& s) {
  using boost::multiprecision::cpp_int;
  std::size_t pos = 0;
  bool negative = false;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) negative = s[pos++] == '-';
  cpp_int digits = 0;
  long frac = 0;
  bool any = false, dot = false;
  for (; pos < s.size(); ++pos) {
    const char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits = digits * 10 + (c - '0');
      any = true;
      if (dot) ++frac;
    } else if (c == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!any) return std::nullopt;
  long exp10 = 0;
  if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
    ++pos;
    bool eneg = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) eneg = s[pos++] == '-';
    if (pos >= s.size()) return std::nullopt;
    long e = 0;
    for (; pos < s.size(); ++pos) {
      if (!std::isdigit(static_cast<unsigned char>(s[pos]))) return std::nullopt;
      e = e * 10 + (s[pos] - '0');
      if (e > 100000) return std::nullopt;
    }
    exp10 = eneg ? -e : e;
  }
  if (pos != s.size()) return std::nullopt;
  const long scale = exp10 - frac;
  cpp_int p10 = boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(std::labs(scale)));
  Rational r = scale >= 0 ? Rational(digits * p10) : Rational(digits, p10);
  return negative ? Rational(-r) : r;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

// ---------------------------------------------------------------------------
// QValue

namespace {

// [-]exp(<tower>) or a plain number, e.g. exp(-exp(3235.7))
LogScalar parse_tower(const std::string& raw, const std::string& whole) {
  const std::string t = trim(raw);
  if (!t.empty() && t[0] == '-') return neg(parse_tower(t.substr(1), whole));
  if (t.rfind("exp(", 0) == 0 && t.back() == ')') return exp_of(parse_tower(t.substr(4, t.size() - 5), whole));
  const auto r = parse_decimal(t);
  if (!r) throw DomainError("bad exponent in '" + whole + "'");
  return rational_to_log(*r);
}

}  // namespace

QValue QValue::from_rational(const Rational& r) { return QValue{rational_to_log(r), r}; }

QValue QValue::parse(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.empty()) throw DomainError("empty number");
  if (text.find("exp(") != std::string::npos) return from_log(parse_tower(text, text));
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const auto a = parse_decimal(trim(text.substr(0, slash)));
    const auto b = parse_decimal(trim(text.substr(slash + 1)));
    if (!a || !b) throw DomainError("bad fraction '" + text + "'");
    if (*b == 0) throw DomainError("zero denominator in '" + text + "'");
    return from_rational(*a / *b);
  }
  const auto r = parse_decimal(text);
  if (!r) throw DomainError("bad number '" + text + "'");
  return from_rational(*r);
}

std::string QValue::to_string() const {
  if (exact) {
    std::ostringstream os;
    os << *exact;
    if (os.str().size() <= 60) return os.str();
  }
  return value.approx(17);
}

const char* to_string(OmegaKind k) {
  switch (k) {
    case OmegaKind::Constant:
      return "constant";
    case OmegaKind::Explicit:
      return "explicit";
    case OmegaKind::RecursiveI:
      return "recursive-i";
    case OmegaKind::CompositeII:
      return "composite-ii";
  }
  return "?";
}

const char* to_string(DyadicIndex::Form f) {
  switch (f) {
    case DyadicIndex::Form::Boundary:
      return "boundary";
    case DyadicIndex::Form::Even:
      return "2^l m";
    case DyadicIndex::Form::OddInterior:
      return "2^l m + 1";
  }
  return "?";
}

const char* to_string(LevelMode m) {
  return m == LevelMode::ExactRational ? "exact-rational" : "log-domain";
}

// ---------------------------------------------------------------------------
// OmegaSpec

struct OmegaSpec::Memo {
  mutable std::shared_mutex mu;
  std::vector<LogScalar> q;  // q[0] = q_1
};

OmegaSpec OmegaSpec::constant(const QValue& q) {
  check_unit_interval(q.value, 1, "constant q");
  OmegaSpec s;
  s.kind_ = OmegaKind::Constant;
  s.values_ = {q};
  return s;
}

OmegaSpec OmegaSpec::explicit_list(std::vector<QValue> values, bool periodic) {
  if (values.empty()) throw DomainError("explicit list is empty");
  for (std::size_t n = 0; n < values.size(); ++n) check_unit_interval(values[n].value, n + 1, "q_n");
  OmegaSpec s;
  s.kind_ = OmegaKind::Explicit;
  s.values_ = std::move(values);
  s.periodic_ = periodic;
  return s;
}

OmegaSpec OmegaSpec::recursive_i(const QValue& q1) {
  check_unit_interval(q1.value, 1, "q_1");
  OmegaSpec s;
  s.kind_ = OmegaKind::RecursiveI;
  s.values_ = {q1};
  s.memo_ = std::make_shared<Memo>();
  s.memo_->q.push_back(q1.value);
  return s;
}

OmegaSpec OmegaSpec::composite_ii(CompositeRule rule) {
  check_unit_interval(rule.d.value, 1, "d");
  if (rule.p_rule == PRule::Explicit && rule.p_values.empty()) {
    throw DomainError("explicit p rule needs values");
  }
  if (rule.a_rule == ARule::Explicit) {
    if (rule.a_values.size() < 2) throw SpecViolation(1, "explicit A rule needs at least two terms");
    for (std::size_t m = 0; m < rule.a_values.size(); ++m) {
      const long double v = rule.a_values[m];
      if (!(v >= 1.0L) || v != std::floor(v) || v > 1.8e19L) {
        throw SpecViolation(m + 1, "a_m must be a positive integer");
      }
      if (m > 0 && !(v > rule.a_values[m - 1])) {
        throw SpecViolation(m + 1, "A rule must be strictly increasing");
      }
    }
  }
  OmegaSpec s;
  s.kind_ = OmegaKind::CompositeII;
  s.composite_ = std::make_shared<const CompositeRule>(std::move(rule));
  return s;
}

const CompositeRule& OmegaSpec::composite() const {
  if (!composite_) throw UnsupportedKind("spec is not composite-ii");
  return *composite_;
}

long double OmegaSpec::a(std::uint64_t m) const {
  const CompositeRule& r = composite();
  if (m == 0) throw OutOfRange("a_m is indexed from 1");
  if (r.a_rule == ARule::Explicit) {
    if (m > r.a_values.size()) throw OutOfRange("a_" + std::to_string(m) + " not given");
    return r.a_values[m - 1];
  }
  // a_m = 2^{m(m-1)/2}
  const long double e = static_cast<long double>(m) * static_cast<long double>(m - 1) / 2.0L;
  if (e > 16000.0L) throw OutOfRange("a_m overflows");
  return std::ldexp(1.0L, static_cast<int>(e));
}

std::uint64_t OmegaSpec::a_count() const {
  const CompositeRule& r = composite();
  if (r.a_rule == ARule::Explicit) return r.a_values.size();
  return 179;  // 178*177/2 < 16000
}

bool OmegaSpec::in_A(std::uint64_t n) const {
  const CompositeRule& r = composite();
  if (r.a_rule == ARule::Explicit) {
    const long double v = static_cast<long double>(n);
    for (long double a : r.a_values) {
      if (a == v) return true;
      if (a > v) break;
    }
    return false;
  }
  if (!std::has_single_bit(n)) return false;
  // n = 2^e with e triangular: e = m(m-1)/2
  const std::uint64_t e = static_cast<std::uint64_t>(std::countr_zero(n));
  std::uint64_t t = 0;
  for (std::uint64_t m = 1; t <= e; ++m) {
    if (t == e) return true;
    t += m;
  }
  return false;
}

long double OmegaSpec::p(std::uint64_t n) const {
  const CompositeRule& r = composite();
  if (n == 0) throw OutOfRange("p_n is indexed from 1");
  if (r.p_rule == PRule::Explicit) {
    if (n > r.p_values.size()) throw OutOfRange("p_" + std::to_string(n) + " not given");
    return r.p_values[n - 1];
  }
  if (n == 1) return std::numeric_limits<long double>::infinity();
  return kPi * kPi / (2.0L * std::log(static_cast<long double>(n)));
}

long double OmegaSpec::p_term(std::uint64_t n) const {
  const long double pn = p(n);
  if (pn <= 0.0L) throw SpecViolation(n, "p_n must be positive");
  if (std::isinf(pn)) return 1.0L;
  return std::exp(-kPi * kPi / (2.0L * pn));
}

LogScalar OmegaSpec::q(std::uint64_t n) const {
  if (n == 0) throw OutOfRange("q_n is indexed from 1");
  switch (kind_) {
    case OmegaKind::Constant:
      return values_[0].value;
    case OmegaKind::Explicit: {
      if (n > values_.size() && !periodic_) {
        throw OutOfRange("explicit list has " + std::to_string(values_.size()) + " terms, q_" +
                         std::to_string(n) + " requested");
      }
      return values_[(n - 1) % values_.size()].value;
    }
    case OmegaKind::RecursiveI: {
      {
        std::shared_lock lock(memo_->mu);
        if (n <= memo_->q.size()) return memo_->q[n - 1];
      }
      std::unique_lock lock(memo_->mu);
      // q_{j+1} = 1/exp(exp(j/q_j)); writers are idempotent, so a racing
      // thread that already extended the memo is simply reused.
      while (memo_->q.size() < n) {
        const std::uint64_t j = memo_->q.size();
        const LogScalar& qj = memo_->q.back();
        LogScalar next = recip(exp_of(exp_of(div(lit(static_cast<long double>(j)), qj))));
        check_unit_interval(next, j + 1, "q_n");
        memo_->q.push_back(std::move(next));
      }
      return memo_->q[n - 1];
    }
    case OmegaKind::CompositeII: {
      const CompositeRule& r = *composite_;
      if (in_A(n)) return r.d.value;
      const long double pn = p(n);
      if (!(pn > 0.0L && pn < 1.0L)) {
        throw SpecViolation(n, "q_n = p_n must lie in (0,1), got " + lit(std::isinf(pn) ? 0 : pn).approx() +
                                   (std::isinf(pn) ? " (p_1 infinite)" : ""));
      }
      return lit(pn);
    }
  }
  throw UnsupportedKind("unknown spec kind");
}

std::optional<Rational> OmegaSpec::q_exact(std::uint64_t n) const {
  if (n == 0) throw OutOfRange("q_n is indexed from 1");
  switch (kind_) {
    case OmegaKind::Constant:
      return values_[0].exact;
    case OmegaKind::Explicit:
      if (n > values_.size() && !periodic_) return std::nullopt;
      return values_[(n - 1) % values_.size()].exact;
    case OmegaKind::RecursiveI:
      return n == 1 ? values_[0].exact : std::nullopt;
    case OmegaKind::CompositeII:
      if (in_A(n)) return composite_->d.exact;
      return std::nullopt;
  }
  return std::nullopt;
}

bool OmegaSpec::monotone_from(std::uint64_t n) const {
  switch (kind_) {
    case OmegaKind::Constant:
    case OmegaKind::RecursiveI:
      return true;
    case OmegaKind::Explicit: {
      if (periodic_ && values_.size() > 1) {
        for (std::size_t j = 1; j < values_.size(); ++j) {
          if (cmp(values_[j].value, values_[0].value) != Ordering::EQ) return false;
        }
        return true;
      }
      for (std::size_t j = n; j < values_.size(); ++j) {
        if (cmp(values_[j].value, values_[j - 1].value) == Ordering::GT) return false;
      }
      return true;
    }
    case OmegaKind::CompositeII:
      return false;
  }
  return false;
}

LogScalar q_at(const OmegaSpec& spec, std::uint64_t n) { return spec.q(n); }

// ---------------------------------------------------------------------------
// Index arithmetic

DyadicIndex two_adic(int k, std::uint64_t i) {
  if (k < 0 || k > kMaxIndexDepth) throw OutOfRange("depth outside [0, 63]");
  const std::uint64_t count = std::uint64_t{1} << k;
  if (i < 1 || i > count) throw OutOfRange("interval index outside [1, 2^k]");
  DyadicIndex d;
  d.k = k;
  d.i = i;
  if (i == 1 || i == count) return d;
  const std::uint64_t base = (i % 2 == 0) ? i : i - 1;
  d.form = (i % 2 == 0) ? DyadicIndex::Form::Even : DyadicIndex::Form::OddInterior;
  d.ell = std::countr_zero(base);
  d.m = base >> d.ell;
  return d;
}

namespace {

void check_depth(int k, int cap) {
  if (k < 0 || k > cap) throw OutOfRange("depth " + std::to_string(k) + " outside [0, " + std::to_string(cap) + "]");
}

void check_gap_index(int k, std::uint64_t j) {
  check_depth(k, kMaxIndexDepth);
  const std::uint64_t count = std::uint64_t{1} << k;
  if (j == 0 || j >= count) {
    throw OutOfRange("gap index " + std::to_string(j) +
                     " is not interior; the outer gaps J^0 and J^{2^k} have no length");
  }
}

Rational exact_q_or_throw(const OmegaSpec& spec, std::uint64_t n) {
  auto r = spec.q_exact(n);
  if (!r) throw ModeUnavailable("q_" + std::to_string(n) + " is not rational");
  return *r;
}

// Sum of ln(1 - q_p), p = from..to, Neumaier-compensated.
long double ln_one_minus_sum(const OmegaSpec& spec, int from, int to) {
  long double s = 0.0L, c = 0.0L;
  const bool monotone = spec.monotone_from(1) && spec.kind() == OmegaKind::RecursiveI;
  for (int p = from; p <= to; ++p) {
    const LogScalar q = spec.q(static_cast<std::uint64_t>(p));
    // Below e^-690 the remaining terms of a decreasing sequence cannot move
    // a long double sum.
    if (monotone && !q.is_linear()) break;
    const long double t = ln_one_minus(q).to_long_double();
    const long double u = s + t;
    c += std::fabs(s) >= std::fabs(t) ? (s - u) + t : (t - u) + s;
    s = u;
  }
  return s + c;
}

LogScalar closed_from_ln(int k, long double ln_prod) {
  return exp_of(lit(ln_prod - static_cast<long double>(k) * kLn2));
}

}  // namespace

LogScalar closed_interval_length(const OmegaSpec& spec, int k) {
  check_depth(k, kMaxLogDepth);
  if (k == 0) return LogScalar::one();
  return closed_from_ln(k, ln_one_minus_sum(spec, 1, k));
}

Rational closed_interval_length_exact(const OmegaSpec& spec, int k) {
  check_depth(k, kMaxExactDepth);
  Rational len = 1;
  for (int p = 1; p <= k; ++p) len *= (1 - exact_q_or_throw(spec, p)) / 2;
  return len;
}

LogScalar gap_length(const OmegaSpec& spec, int k, std::uint64_t j) {
  check_gap_index(k, j);
  const int ell = std::countr_zero(j);
  const int g = k - ell;  // generation of the gap
  return mul(spec.q(static_cast<std::uint64_t>(g)), closed_interval_length(spec, g - 1));
}

Rational gap_length_exact(const OmegaSpec& spec, int k, std::uint64_t j) {
  check_gap_index(k, j);
  check_depth(k, kMaxExactDepth);
  const int g = k - std::countr_zero(j);
  return exact_q_or_throw(spec, g) * closed_interval_length_exact(spec, g - 1);
}

bool exact_available(const OmegaSpec& spec, int k) {
  if (k > kMaxExactDepth) return false;
  for (int p = 1; p <= k; ++p) {
    try {
      if (!spec.q_exact(p)) return false;
    } catch (const OutOfRange&) {
      return false;
    }
  }
  return true;
}

namespace {

// shift of the right child at each generation d: |I_{d-1}| (1 + q_d) / 2
struct Steps {
  std::vector<LogScalar> step;  // step[d-1]
  std::vector<Rational> step_exact;
  LogScalar closed;
  Rational closed_exact;
};

Steps make_steps(const OmegaSpec& spec, int k, bool exact) {
  Steps s;
  s.step.reserve(k);
  long double ln_prod = 0.0L;
  LogScalar prev = LogScalar::one();
  Rational prev_exact = 1;
  const LogScalar half = lit(0.5L);
  for (int d = 1; d <= k; ++d) {
    const LogScalar q = spec.q(d);
    // (1 + q)/2 for q < 1: stays in layer 0 (or is 1/2 for tiny q)
    const LogScalar onep = q.is_linear() ? lit((1.0L + q.inner()) / 2.0L) : half;
    s.step.push_back(mul(prev, onep));
    ln_prod += ln_one_minus(q).to_long_double();
    prev = closed_from_ln(d, ln_prod);
    if (exact) {
      const Rational qe = exact_q_or_throw(spec, d);
      s.step_exact.push_back(prev_exact * (1 + qe) / 2);
      prev_exact *= (1 - qe) / 2;
    }
  }
  s.closed = prev;
  s.closed_exact = prev_exact;
  return s;
}

Interval build_interval(const Steps& s, int k, std::uint64_t i, bool exact) {
  Interval iv;
  iv.i = i;
  const std::uint64_t addr = i - 1;
  LogScalar left;
  Rational left_exact = 0;
  for (int d = 1; d <= k; ++d) {
    if ((addr >> (k - d)) & 1U) {
      left = add(left, s.step[d - 1]);
      if (exact) left_exact += s.step_exact[d - 1];
    }
  }
  iv.left = left;
  iv.right = add(left, s.closed);
  if (exact) {
    iv.left_exact = left_exact;
    iv.right_exact = left_exact + s.closed_exact;
  }
  return iv;
}

}  // namespace

Interval interval_at(const OmegaSpec& spec, int k, std::uint64_t i, bool exact) {
  two_adic(k, i);  // range check
  if (exact) check_depth(k, kMaxExactDepth);
  const Steps s = make_steps(spec, k, exact);
  return build_interval(s, k, i, exact);
}

CantorLevel level(const OmegaSpec& spec, int k, LevelMode mode) {
  check_depth(k, kMaxMaterializedDepth);
  const bool exact = mode == LevelMode::ExactRational;
  if (exact && !exact_available(spec, k)) {
    throw ModeUnavailable("exact-rational mode needs rational q_1..q_" + std::to_string(k));
  }
  const Steps s = make_steps(spec, k, exact);
  CantorLevel lv;
  lv.k = k;
  lv.mode = mode;
  lv.closed_len = s.closed;
  if (exact) lv.closed_len_exact = s.closed_exact;

  const std::uint64_t count = std::uint64_t{1} << k;
  lv.intervals.reserve(count);
  for (std::uint64_t i = 1; i <= count; ++i) lv.intervals.push_back(build_interval(s, k, i, exact));

  // Gap lengths depend only on the generation g = k - v2(j).
  std::vector<LogScalar> gen_len(k + 1);
  std::vector<Rational> gen_exact(exact ? k + 1 : 0);
  for (int g = 1; g <= k; ++g) {
    gen_len[g] = gap_length(spec, g, 1);
    if (exact) gen_exact[g] = gap_length_exact(spec, g, 1);
  }
  lv.gaps.reserve(count ? count - 1 : 0);
  for (std::uint64_t j = 1; j < count; ++j) {
    const int g = k - std::countr_zero(j);
    Gap gp;
    gp.j = j;
    gp.length = gen_len[g];
    if (exact) gp.exact = gen_exact[g];
    lv.gaps.push_back(std::move(gp));
  }
  return lv;
}

GapRatio gap_ratio(const OmegaSpec& spec, int k, std::uint64_t i) {
  const DyadicIndex d = two_adic(k, i);
  if (d.boundary()) throw DomainError("gap_ratio needs an interior interval index");
  const int ell = d.ell;
  // factor = (q_{k-l}/q_k) 2^l prod_{p=k-l}^{k-1} 1/(1-q_p)
  const long double ln_rest = static_cast<long double>(ell) * kLn2 - ln_one_minus_sum(spec, k - ell, k - 1);
  const LogScalar factor = mul(div(spec.q(k - ell), spec.q(k)), exp_of(lit(ln_rest)));
  GapRatio r;
  r.index = d;
  r.factor = factor;
  r.ratio = d.form == DyadicIndex::Form::Even ? factor : recip(factor);
  r.ineq2 = cmp(factor, LogScalar::one()) == Ordering::LT;
  return r;
}

Rational gap_ratio_exact(const OmegaSpec& spec, int k, std::uint64_t i) {
  const DyadicIndex d = two_adic(k, i);
  if (d.boundary()) throw DomainError("gap_ratio needs an interior interval index");
  return gap_length_exact(spec, k, i) / gap_length_exact(spec, k, i - 1);
}

}  // namespace cantorgeo

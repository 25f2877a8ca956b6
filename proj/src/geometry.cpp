#include "cantorgeo/geometry.hpp"

#include <cmath>
#include <numbers>

#include "cantorgeo/errors.hpp"

namespace cantorgeo {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;
constexpr long double kPi2 = kPi * kPi;
constexpr long double kLn2 = std::numbers::ln2_v<long double>;
constexpr long double kSeriesCut = 1e-4L;
constexpr long double kEtaLarge = 40.0L;
constexpr long double kEtaSmall = 1e-4L;

LogScalar lit(long double v) { return LogScalar::from_linear(v); }

void require_unit(const LogScalar& q, const char* what) {
  if (q.sign() <= 0 || cmp(q, LogScalar::one()) != Ordering::LT) {
    throw DomainError(std::string(what) + " must lie in (0,1), got " + q.approx());
  }
}

void require_positive(const LogScalar& x, const char* what) {
  if (x.sign() <= 0) throw DomainError(std::string(what) + " must be positive, got " + x.approx());
}

long double atanh_small(long double q) {
  const long double q2 = q * q;
  return q * (1.0L + q2 * (1.0L / 3 + q2 * (1.0L / 5 + q2 * (1.0L / 7 + q2 / 9))));
}

// 2 pi^2 / y for y > 0
LogScalar two_pi2_over(const LogScalar& y) { return div(lit(2.0L * kPi2), y); }

}  // namespace

LogScalar U(const LogScalar& q) {
  require_unit(q, "q");
  if (!q.is_linear()) return div(lit(kPi2), q);
  const long double v = q.inner();
  const long double at = v < kSeriesCut ? atanh_small(v) : 0.5L * std::log1p(2.0L * v / (1.0L - v));
  return lit(kPi2 / at);
}

LogScalar collar_eta(const LogScalar& x) {
  require_positive(x, "collar argument x");
  if (x.is_tiny()) {
    // ln(4/x)
    return detail::shift(neg(detail::log_abs(x)), 2.0L * kLn2);
  }
  if (x.is_huge()) {
    // 2 e^{-x/2}
    return exp_of(detail::shift(neg(mul(x, lit(0.5L))), kLn2));
  }
  const long double v = x.inner();
  if (v < kEtaSmall) return lit(std::log(4.0L / v) + v * v / 48.0L);
  if (v > kEtaLarge) {
    // y = 1/sinh(x/2) = 2e^{-x/2}/(1-e^{-x}); asinh y = y (1 - y^2/6 + 3y^4/40)
    const long double ln_y = kLn2 - v / 2.0L - std::log1p(-std::exp(-v));
    const long double y2 = std::exp(2.0L * ln_y);
    return exp_of(lit(ln_y + std::log1p(-y2 / 6.0L + 3.0L * y2 * y2 / 40.0L)));
  }
  return lit(std::asinh(1.0L / std::sinh(v / 2.0L)));
}

LogScalar L(const LogScalar& q) {
  require_unit(q, "q");
  LogScalar lg;  // log((1+q)/(2q))
  if (q.is_linear()) {
    const long double v = q.inner();
    lg = lit(std::log1p((1.0L - v) / (2.0L * v)));
  } else {
    lg = detail::shift(neg(detail::log_abs(q)), -kLn2);
  }
  return mul(lit(2.0L), collar_eta(two_pi2_over(lg)));
}

LogScalar annulus_core_length(const LogScalar& R) {
  require_unit(R, "annulus ratio R");
  LogScalar lg;  // log(1/R)
  if (R.is_linear()) {
    const long double v = R.inner();
    lg = lit(v > 0.5L ? -std::log1p(v - 1.0L) : -std::log(v));
  } else {
    lg = neg(detail::log_abs(R));
  }
  return two_pi2_over(lg);
}

LogScalar even_case_bound(const LogScalar& q_k, const LogScalar& q_kl) {
  require_unit(q_k, "q_k");
  require_unit(q_kl, "q_{k-l}");
  // log1p(2 q_{k-l} / (1 - q_k))
  const LogScalar r = div(mul(lit(2.0L), q_kl), one_minus(q_k));
  return two_pi2_over(log1p_of(r));
}

LogScalar pentagon_d(const LogScalar& a, const LogScalar& b) {
  require_positive(a, "pentagon side a");
  require_positive(b, "pentagon side b");
  const LogScalar prod = mul(sinh_of(a), sinh_of(b));
  if (cmp(prod, LogScalar::one()) == Ordering::LT) {
    // Rounding can push the boundary case a = b = asinh(1) just below 1.
    if (prod.is_linear() && prod.inner() >= 1.0L - 1e-15L) return LogScalar{};
    throw NoPentagon("sinh a * sinh b = " + prod.approx() + " < 1");
  }
  return acosh_of(prod);
}

LogScalar pentagon_b(const LogScalar& a, const LogScalar& d) {
  require_positive(a, "pentagon side a");
  if (d.sign() < 0) throw DomainError("pentagon side d must be >= 0");
  return asinh_of(div(cosh_of(d), sinh_of(a)));
}

const char* to_string(UpperBranch b) {
  switch (b) {
    case UpperBranch::OddCase:
      return "OddCase";
    case UpperBranch::EvenCase:
      return "EvenCase";
    case UpperBranch::MaxOfBoth:
      return "MaxOfBoth";
    case UpperBranch::CertifiedU:
      return "CertifiedU";
  }
  return "?";
}

bool prefix_monotone(const OmegaSpec& spec, int k) {
  if (spec.kind() == OmegaKind::Constant || spec.kind() == OmegaKind::RecursiveI) return true;
  for (int p = 2; p <= k; ++p) {
    if (cmp(spec.q(p), spec.q(p - 1)) == Ordering::GT) return false;
  }
  return true;
}

bool prefix_min(const OmegaSpec& spec, int k) {
  const LogScalar qk = spec.q(k);
  for (int p = 1; p < k; ++p) {
    if (cmp(spec.q(p), qk) == Ordering::LT) return false;
  }
  return true;
}

UpperBound upper_bound_geodesic(const OmegaSpec& spec, int k, std::uint64_t i) {
  if (k < 1) throw OutOfRange("upper bound needs k >= 1");
  const DyadicIndex d = two_adic(k, i);
  UpperBound out;
  out.u_value = U(spec.q(k));
  if (d.boundary()) {
    out.value = out.u_value;
    out.branch = UpperBranch::OddCase;
    out.certified = true;
    return out;
  }
  const LogScalar even = even_case_bound(spec.q(k), spec.q(k - d.ell));
  out.even_value = even;
  if (gap_ratio(spec, k, i).ineq2) {
    out.value = even;
    out.branch = UpperBranch::EvenCase;
    out.ell = d.ell;
    out.certified = true;
    return out;
  }
  if (prefix_monotone(spec, k) || prefix_min(spec, k)) {
    out.value = out.u_value;
    out.branch = UpperBranch::CertifiedU;
    out.certified = true;
    return out;
  }
  out.value = max_of(out.u_value, even);
  out.branch = UpperBranch::MaxOfBoth;
  out.certified = false;
  return out;
}

LogScalar lower_bound_geodesic(const OmegaSpec& spec, int k) {
  if (k < 1) throw OutOfRange("lower bound needs k >= 1");
  return L(spec.q(k));
}

BoundReport bound_report(const OmegaSpec& spec, int k, std::uint64_t i) {
  const UpperBound ub = upper_bound_geodesic(spec, k, i);
  BoundReport r;
  r.index = two_adic(k, i);
  r.lower = lower_bound_geodesic(spec, k);
  r.upper = ub.value;
  r.branch = ub.branch;
  r.ell = ub.ell;
  r.certified = ub.certified;
  return r;
}

}  // namespace cantorgeo

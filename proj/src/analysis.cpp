#include "cantorgeo/analysis.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "cantorgeo/errors.hpp"

namespace cantorgeo {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;
constexpr long double kPi2 = kPi * kPi;

LogScalar lit(long double v) { return LogScalar::from_linear(v); }

struct Neumaier {
  long double s = 0.0L, c = 0.0L;
  void add(long double t) {
    const long double u = s + t;
    c += std::fabs(s) >= std::fabs(t) ? (s - u) + t : (t - u) + s;
    s = u;
  }
  long double value() const { return s + c; }
};

bool ge(const LogScalar& q, long double delta) { return cmp(q, lit(delta)) != Ordering::LT; }

// hits[n] = (q_n >= delta) for n = 1..horizon
std::vector<char> hit_table(const OmegaSpec& spec, long double delta, std::uint64_t horizon) {
  std::vector<char> hits(horizon + 1, 0);
  const bool decreasing = spec.kind() == OmegaKind::RecursiveI;
  for (std::uint64_t n = 1; n <= horizon; ++n) {
    hits[n] = ge(spec.q(n), delta) ? 1 : 0;
    // a decreasing sequence never comes back above delta
    if (decreasing && !hits[n]) break;
  }
  return hits;
}

std::uint64_t explicit_limit(const OmegaSpec& spec) {
  if (spec.kind() == OmegaKind::Explicit && !spec.periodic()) return spec.values().size();
  return std::numeric_limits<std::uint64_t>::max();
}

void check_delta(long double delta) {
  if (!(delta > 0.0L && delta < 1.0L)) throw DomainError("delta must lie in (0,1)");
}

CountVerdict omega_from_hits(const std::vector<char>& hits, std::uint64_t i, std::uint64_t horizon) {
  CountVerdict v;
  v.horizon = horizon;
  v.at_index = i;
  for (std::uint64_t j = i + 1; j <= horizon; ++j) {
    if (hits[j]) {
      v.status = Status::HoldsOnPrefix;
      v.value = j - i;
      return v;
    }
  }
  v.status = Status::Inconclusive;
  v.value = horizon - i;
  return v;
}

long double harmonic_tail(long double n) {
  // H(n) - ln(n) - gamma, asymptotic
  const long double r = 1.0L / n, r2 = r * r;
  return r / 2.0L - r2 / 12.0L + r2 * r2 / 120.0L - r2 * r2 * r2 / 252.0L;
}

long double eta_of_U(long double p) { return collar_eta(U(lit(p))).to_long_double(); }

}  // namespace

const char* to_string(Status s) {
  switch (s) {
    case Status::HoldsOnPrefix:
      return "HoldsOnPrefix";
    case Status::FailsWithWitness:
      return "FailsWithWitness";
    case Status::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

const char* to_string(QcClass c) {
  switch (c) {
    case QcClass::QCEquivalentEvidence:
      return "QCEquivalentEvidence";
    case QcClass::NotQCEquivalent:
      return "NotQCEquivalent";
    case QcClass::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

const char* to_string(QcReason r) {
  switch (r) {
    case QcReason::None:
      return "None";
    case QcReason::SupOne:
      return "SupOne";
    case QcReason::NUnboundedAllDelta:
      return "NUnboundedAllDelta";
  }
  return "?";
}

const char* to_string(QcDeltaRow::Trend t) {
  switch (t) {
    case QcDeltaRow::Trend::Bounded:
      return "bounded";
    case QcDeltaRow::Trend::Unbounded:
      return "unbounded";
    case QcDeltaRow::Trend::Unknown:
      return "unknown";
  }
  return "?";
}

const char* to_string(SumMethod m) {
  return m == SumMethod::Direct ? "direct" : "analytic-approximation";
}

bool divergence_trend(const std::vector<long double>& values, long double threshold) {
  if (values.size() < 2) return false;
  const std::size_t w = std::max<std::size_t>(1, values.size() / 4);
  const long double first_max = *std::max_element(values.begin(), values.begin() + w);
  const long double last_min = *std::min_element(values.end() - w, values.end());
  return last_min > first_max && values.back() > threshold;
}

// ---------------------------------------------------------------------------
// omega(delta; i), N

CountVerdict omega_delta_i(const OmegaSpec& spec, long double delta, std::uint64_t i,
                           std::uint64_t horizon) {
  check_delta(delta);
  if (i < 1) throw OutOfRange("i must be >= 1");
  if (horizon <= i) throw OutOfRange("horizon must exceed i");
  horizon = std::min(horizon, explicit_limit(spec));
  if (horizon <= i) throw OutOfRange("explicit list ends before index i + 1");
  return omega_from_hits(hit_table(spec, delta, horizon), i, horizon);
}

CountVerdict N_estimate(const OmegaSpec& spec, long double delta, std::uint64_t horizon) {
  check_delta(delta);
  horizon = std::min(horizon, explicit_limit(spec));
  if (horizon < 2) throw OutOfRange("horizon must be >= 2");
  const std::vector<char> hits = hit_table(spec, delta, horizon);
  // One backward pass: next[i] = least j > i with a hit.
  CountVerdict best;
  best.horizon = horizon;
  best.status = Status::HoldsOnPrefix;
  best.value = 0;
  std::uint64_t next = 0;  // 0 = none within horizon
  bool inconclusive = false;
  std::uint64_t inc_bound = 0, inc_index = 0;
  for (std::uint64_t i = horizon - 1; i >= 1; --i) {
    if (hits[i + 1]) next = i + 1;
    if (next == 0) {
      if (!inconclusive || horizon - i > inc_bound) {
        inc_bound = horizon - i;
        inc_index = i;
      }
      inconclusive = true;
    } else if (next - i >= best.value) {
      best.value = next - i;
      best.at_index = i;
    }
  }
  if (inconclusive) {
    best.status = Status::Inconclusive;
    if (inc_bound >= best.value) {
      best.value = inc_bound;
      best.at_index = inc_index;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// classification

std::vector<long double> default_delta_grid() {
  std::vector<long double> g;
  for (int j = 1; j <= 9; ++j) g.push_back(static_cast<long double>(j) / 10.0L);
  return g;
}

QcReport classify_qc(const OmegaSpec& spec, std::uint64_t horizon,
                     const std::vector<long double>& delta_grid) {
  if (delta_grid.empty()) throw DomainError("delta grid is empty");
  for (long double d : delta_grid) check_delta(d);
  QcReport rep;
  horizon = std::min(horizon, explicit_limit(spec));
  if (horizon < 2) throw OutOfRange("horizon must be >= 2");
  rep.horizon = horizon;
  const std::uint64_t half = (horizon + 1) / 2;

  switch (spec.kind()) {
    case OmegaKind::Constant:
      rep.analytic = true;
      rep.cls = QcClass::QCEquivalentEvidence;
      rep.note = "constant q < 1: omega(delta;i) = 1 for every delta <= q";
      break;
    case OmegaKind::RecursiveI:
      rep.analytic = true;
      rep.cls = QcClass::NotQCEquivalent;
      rep.reason = QcReason::NUnboundedAllDelta;
      rep.note = "monotone decreasing to 0: omega(delta;i) is infinite past the last q_n >= delta";
      break;
    case OmegaKind::CompositeII: {
      const CompositeRule& r = spec.composite();
      if (r.p_rule == PRule::HalfPiSqOverLog && r.a_rule == ARule::Geometric) {
        rep.analytic = true;
        rep.cls = QcClass::NotQCEquivalent;
        rep.reason = QcReason::NUnboundedAllDelta;
        rep.note = "p_n -> 0 and a_{m+1} - a_m -> infinity: waiting times between A-terms are unbounded";
      }
      break;
    }
    case OmegaKind::Explicit:
      break;
  }

  // Numeric evidence, also reported next to the analytic verdicts.
  try {
    auto sup_over = [&](std::uint64_t h) {
      LogScalar s = spec.q(1);
      if (spec.kind() == OmegaKind::RecursiveI) return s;
      for (std::uint64_t n = 2; n <= h; ++n) s = max_of(s, spec.q(n));
      return s;
    };
    rep.sup_q = sup_over(horizon);
    rep.sup_q_half = sup_over(half);
    for (long double delta : delta_grid) {
      QcDeltaRow row;
      row.delta = delta;
      row.n_full = N_estimate(spec, delta, horizon);
      row.n_half = N_estimate(spec, delta, std::max<std::uint64_t>(half, 2));
      const bool full_ok = row.n_full.status == Status::HoldsOnPrefix;
      const bool half_ok = row.n_half.status == Status::HoldsOnPrefix;
      if (full_ok && half_ok && row.n_full.value == row.n_half.value) {
        row.trend = QcDeltaRow::Trend::Bounded;
      } else if (!full_ok || row.n_full.value > row.n_half.value) {
        row.trend = QcDeltaRow::Trend::Unbounded;
      }
      rep.rows.push_back(row);
    }
  } catch (const Error& e) {
    if (!rep.analytic) throw;
    rep.rows.clear();
    rep.note += std::string("; numeric table skipped: ") + e.what();
    return rep;
  }
  if (rep.analytic) return rep;

  const long double gap_full = one_minus(rep.sup_q).to_long_double();
  const long double gap_half = one_minus(rep.sup_q_half).to_long_double();
  if (gap_full < 0.01L && gap_full < 0.75L * gap_half) {
    rep.cls = QcClass::NotQCEquivalent;
    rep.reason = QcReason::SupOne;
    rep.note = "1 - sup q_n keeps shrinking with the horizon";
    return rep;
  }
  const bool any_bounded = std::any_of(rep.rows.begin(), rep.rows.end(), [](const QcDeltaRow& r) {
    return r.trend == QcDeltaRow::Trend::Bounded;
  });
  const bool all_unbounded = std::all_of(rep.rows.begin(), rep.rows.end(), [](const QcDeltaRow& r) {
    return r.trend == QcDeltaRow::Trend::Unbounded;
  });
  if (any_bounded) {
    rep.cls = QcClass::QCEquivalentEvidence;
    rep.note = "N(omega;delta) stable between horizons for some delta, sup q_n < 1";
  } else if (all_unbounded) {
    rep.cls = QcClass::NotQCEquivalent;
    rep.reason = QcReason::NUnboundedAllDelta;
    rep.note = "N(omega;delta) grows with the horizon for every delta on the grid";
  } else {
    rep.cls = QcClass::Inconclusive;
    rep.note = "mixed evidence across the delta grid";
  }
  return rep;
}

// ---------------------------------------------------------------------------
// condition (I)

Verdict check_condition_I(const OmegaSpec& spec, std::uint64_t horizon, long double threshold) {
  if (horizon < 3) throw OutOfRange("condition (I) check needs horizon >= 3");
  Verdict v;
  const std::uint64_t limit = explicit_limit(spec);
  if (limit != std::numeric_limits<std::uint64_t>::max() && horizon + 1 > limit) {
    v.notes.push_back("horizon clamped to " + std::to_string(limit - 1) + " (explicit list length)");
    horizon = limit - 1;
    if (horizon < 1) throw OutOfRange("explicit list too short for condition (I)");
  }
  v.horizon = horizon;

  std::vector<LogScalar> q(horizon + 2);
  for (std::uint64_t n = 1; n <= horizon + 1; ++n) q[n] = spec.q(n);

  for (std::uint64_t n = 1; n <= horizon; ++n) {
    if (cmp(q[n + 1], q[n]) == Ordering::GT) {
      v.status = Status::FailsWithWitness;
      v.witness = Witness{n + 1, q[n + 1]};
      v.notes.push_back("q_" + std::to_string(n + 1) + " > q_" + std::to_string(n) +
                        ": not monotone decreasing");
      break;
    }
  }

  std::vector<long double> t_values;
  for (std::uint64_t n = 1; n <= horizon; ++n) {
    const LogScalar l1 = ln_of(recip(q[n + 1]));
    if (cmp(l1, LogScalar::one()) != Ordering::GT) {
      v.notes.push_back("n = " + std::to_string(n) + " skipped: q_{n+1} >= 1/e, lnln(1/q_{n+1}) <= 0");
      continue;
    }
    const LogScalar t = mul(q[n], ln_of(l1));
    v.trace.push_back(TracePoint{n, t});
    t_values.push_back(t.to_long_double());
  }
  if (v.status == Status::FailsWithWitness) return v;

  const bool declines = cmp(q[horizon + 1], q[1]) == Ordering::LT;
  if (!declines) v.notes.push_back("q_n does not decline on the prefix");
  const bool trend = divergence_trend(t_values, threshold);
  if (!trend) v.notes.push_back("t_n shows no divergence trend above the threshold");
  v.status = declines && trend ? Status::HoldsOnPrefix : Status::Inconclusive;
  return v;
}

// ---------------------------------------------------------------------------
// condition (II) block sums

BlockSum block_sum(const OmegaSpec& spec, std::uint64_t m, bool with_T) {
  const CompositeRule& r = spec.composite();
  if (m < 1) throw OutOfRange("blocks are indexed from 1");
  BlockSum b;
  b.m = m;
  b.a_lo = spec.a(m);
  b.a_hi = spec.a(m + 1);
  if (!(b.a_hi > b.a_lo)) throw SpecViolation(m + 1, "A rule must be strictly increasing");
  const long double len = b.a_hi - b.a_lo;

  if (len <= kDirectBlockLimit || r.p_rule == PRule::Explicit) {
    const std::uint64_t lo = static_cast<std::uint64_t>(b.a_lo);
    const std::uint64_t hi = static_cast<std::uint64_t>(b.a_hi);
    Neumaier s, t;
    bool t_ok = with_T;
    for (std::uint64_t n = lo + 1; n <= hi; ++n) {
      s.add(spec.p_term(n));
      if (t_ok) {
        const long double pn = spec.p(n);
        if (pn > 0.0L && pn < 1.0L) {
          t.add(eta_of_U(pn));
        } else {
          t_ok = false;
        }
      }
    }
    b.S = s.value();
    if (t_ok) b.T = t.value();
    b.method = SumMethod::Direct;
    b.error_bound = len * std::numeric_limits<long double>::epsilon() * b.S;
    return b;
  }

  // exp(-pi^2/(2 p_n)) = 1/n: H(hi) - H(lo) by its asymptotic series.
  const long double lo = b.a_lo, hi = b.a_hi;
  b.S = std::log(hi) - std::log(lo) + harmonic_tail(hi) - harmonic_tail(lo);
  b.method = SumMethod::AnalyticApproximation;
  b.error_bound = 1.0L / (240.0L * std::pow(lo, 8.0L)) + 64.0L * std::numeric_limits<long double>::epsilon() * b.S;
  if (with_T) {
    // Euler-Maclaurin on f(x) = eta(U(p(x))), p(x) = pi^2/(2 ln x); p(x) < 1 once x > e^{pi^2/2}.
    auto f = [](long double x) { return eta_of_U(kPi2 / (2.0L * std::log(x))); };
    auto g = [&](long double t) {
      const long double x = std::exp(t);
      return f(x) * x;
    };
    const long double integral = boost::math::quadrature::gauss_kronrod<long double, 61>::integrate(
        g, std::log(lo), std::log(hi), 15, 1e-15L);
    auto fprime = [&](long double x) {
      const long double h = x * 1e-5L;
      return (f(x + h) - f(x - h)) / (2.0L * h);
    };
    b.T = integral + (f(hi) - f(lo)) / 2.0L + (fprime(hi) - fprime(lo)) / 12.0L;
  }
  return b;
}

BlockSumSeries block_sums(const OmegaSpec& spec, std::uint64_t M, bool with_T) {
  BlockSumSeries s;
  for (std::uint64_t m = 1; m <= M; ++m) s.blocks.push_back(block_sum(spec, m, with_T));
  return s;
}

ConditionIIResult check_condition_II(const OmegaSpec& spec, std::uint64_t M, long double threshold) {
  if (spec.kind() != OmegaKind::CompositeII) throw UnsupportedKind("condition (II) needs a composite-ii spec");
  if (M < 1) throw OutOfRange("need at least one block");
  const CompositeRule& r = spec.composite();
  ConditionIIResult out;
  Verdict& v = out.verdict;
  v.horizon = M;

  // (2) 0 < a_{m+1} - a_m, increasing
  out.gaps_increasing = true;
  long double prev_gap = 0.0L;
  for (std::uint64_t m = 1; m <= M; ++m) {
    const long double gap = spec.a(m + 1) - spec.a(m);
    if (!(gap > 0.0L)) throw SpecViolation(m + 1, "A rule must be strictly increasing");
    if (m > 1 && !(gap > prev_gap)) {
      out.gaps_increasing = false;
      v.status = Status::FailsWithWitness;
      v.witness = Witness{m, lit(gap)};
      v.notes.push_back("a_{m+1} - a_m does not increase at m = " + std::to_string(m));
      break;
    }
    prev_gap = gap;
  }

  // (1) p_n decreasing towards 0
  out.p_decreasing = true;
  const long double a_end = spec.a(M + 1);
  std::uint64_t p_end = static_cast<std::uint64_t>(std::min(a_end, 1e6L));
  if (r.p_rule == PRule::Explicit) p_end = std::min<std::uint64_t>(p_end, r.p_values.size());
  const std::uint64_t p_start = r.p_rule == PRule::HalfPiSqOverLog ? 2 : 1;
  for (std::uint64_t n = p_start + 1; n <= p_end; ++n) {
    if (!(spec.p(n) < spec.p(n - 1))) {
      out.p_decreasing = false;
      if (v.status != Status::FailsWithWitness) {
        v.status = Status::FailsWithWitness;
        v.witness = Witness{n, lit(spec.p(n))};
      }
      v.notes.push_back("p_n not strictly decreasing at n = " + std::to_string(n));
      break;
    }
  }
  if (r.p_rule == PRule::HalfPiSqOverLog) {
    v.notes.push_back("p_n >= 1 for n < 140, so those q_n = p_n lie outside (0,1); S_m only uses exp(-pi^2/(2 p_n))");
  }

  // (3) block sums
  out.series = block_sums(spec, M, false);
  std::vector<long double> s_values;
  for (const BlockSum& b : out.series.blocks) {
    v.trace.push_back(TracePoint{b.m, lit(b.S)});
    s_values.push_back(b.S);
  }
  if (v.status == Status::FailsWithWitness) return out;
  const bool trend = divergence_trend(s_values, threshold);
  if (!trend) v.notes.push_back("S_m shows no divergence trend above the threshold");
  v.status = trend && out.p_decreasing ? Status::HoldsOnPrefix : Status::Inconclusive;
  return out;
}

EtaBlock block_sum_eta(const OmegaSpec& spec, std::uint64_t m) {
  const BlockSum b = block_sum(spec, m, true);
  if (!b.T) {
    // find the offending index for the message
    std::uint64_t bad = static_cast<std::uint64_t>(b.a_lo) + 1;
    for (; bad <= static_cast<std::uint64_t>(b.a_hi); ++bad) {
      const long double pn = spec.p(bad);
      if (!(pn > 0.0L && pn < 1.0L)) break;
    }
    throw SpecViolation(bad, "p_n outside (0,1): U(p_n) undefined in block " + std::to_string(m));
  }
  EtaBlock e;
  e.S = b.S;
  e.T = *b.T;
  e.ratio = e.T / (2.0L * e.S);
  e.method = b.method;
  return e;
}

// ---------------------------------------------------------------------------
// witnesses

namespace {

void require_strictly_decreasing(const OmegaSpec& spec, std::uint64_t upto, const char* what) {
  if (spec.kind() == OmegaKind::Constant) {
    throw DomainError(std::string(what) + ": q_n must be strictly decreasing (constant spec)");
  }
  for (std::uint64_t n = 2; n <= upto; ++n) {
    if (cmp(spec.q(n), spec.q(n - 1)) != Ordering::LT) {
      throw DomainError(std::string(what) + ": q_n must be strictly decreasing, fails at n = " +
                        std::to_string(n));
    }
  }
}

}  // namespace

WitnessRatio witness_ratio(const OmegaSpec& spec, std::uint64_t n) {
  if (n < 1) throw OutOfRange("n must be >= 1");
  require_strictly_decreasing(spec, n + 1, "witness ratio");
  const LogScalar qn = spec.q(n);
  const LogScalar qn1 = spec.q(n + 1);
  WitnessRatio w;
  w.ratio = div(L(qn1), U(qn));
  w.comparator = div(mul(qn, ln_of(ln_of(recip(qn1)))), lit(kPi2));
  return w;
}

LogScalar pants_ratio_bound(const OmegaSpec& spec, std::uint64_t k) {
  if (k < 1) throw OutOfRange("k must be >= 1");
  require_strictly_decreasing(spec, k + 1, "pants ratio bound (condition (I) hypothesis)");
  const LogScalar u = U(spec.q(k));
  const LogScalar a = mul(u, lit(0.5L));
  const LogScalar d = mul(L(spec.q(k + 1)), lit(0.5L));
  LogScalar b;
  try {
    b = pentagon_b(a, d);
  } catch (const NoPentagon&) {
    return LogScalar{};
  }
  return div(b, u);
}

LogScalar claim31_lower_bound(const LogScalar& q) {
  // R = 2q/(1+q)
  const LogScalar onep = q.is_linear() ? lit(1.0L + q.inner()) : LogScalar::one();
  const LogScalar R = div(mul(lit(2.0L), q), onep);
  return mul(lit(2.0L), collar_eta(annulus_core_length(R)));
}

CriterionReport theorem_criterion_report(const OmegaSpec& spec, std::uint64_t horizon,
                                         long double threshold) {
  CriterionReport rep;
  rep.kind = spec.kind();
  rep.horizon = horizon;
  if (horizon < 1) throw OutOfRange("horizon must be >= 1");
  std::vector<long double> column;
  if (spec.kind() == OmegaKind::RecursiveI) {
    for (std::uint64_t k = 1; k <= horizon; ++k) {
      CriterionRowI row;
      row.k = k;
      row.upper = U(spec.q(k));
      row.pants_ratio = pants_ratio_bound(spec, k);
      column.push_back(row.pants_ratio.to_long_double());
      rep.rows_i.push_back(row);
    }
  } else if (spec.kind() == OmegaKind::CompositeII) {
    const CompositeRule& r = spec.composite();
    const LogScalar cap = U(r.d.value);
    for (std::uint64_t m = 1; m <= horizon; ++m) {
      CriterionRowII row;
      row.m = m;
      row.a_m = spec.a(m);
      row.alpha_cap = cap;
      row.S = block_sum(spec, m, false).S;
      try {
        LogScalar q;
        if (row.a_m < 9.0e18L) {
          q = spec.q(static_cast<std::uint64_t>(row.a_m) + 1);
        } else if (r.p_rule == PRule::HalfPiSqOverLog) {
          // ln(a_m + 1) = ln(a_m) to long double precision here
          q = lit(kPi2 / (2.0L * std::log(row.a_m)));
        } else {
          throw OutOfRange("index beyond 64 bits");
        }
        row.claim31 = claim31_lower_bound(q);
      } catch (const SpecViolation&) {
      } catch (const OutOfRange&) {
      }
      column.push_back(row.S);
      rep.rows_ii.push_back(row);
    }
  } else {
    throw UnsupportedKind(std::string("criterion report needs recursive-i or composite-ii, got ") +
                          to_string(spec.kind()));
  }
  const bool trend = divergence_trend(column, threshold);
  rep.status = trend ? Status::HoldsOnPrefix : Status::Inconclusive;
  rep.trend = trend ? "divergent trend on the examined prefix"
                    : "no divergence trend above the threshold at this horizon";
  return rep;
}

}  // namespace cantorgeo

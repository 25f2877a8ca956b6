#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "cantorgeo/errors.hpp"
#include "cantorgeo/geometry.hpp"
#include "doctest.h"
#include "oracle_values.hpp"

using namespace cantorgeo;

namespace {

constexpr long double kPi2 = std::numbers::pi_v<long double> * std::numbers::pi_v<long double>;

LogScalar lit(long double v) { return LogScalar::from_linear(v); }
long double v(const LogScalar& x) { return x.to_long_double(); }

bool close(long double got, long double want, long double rel) {
  return std::fabs(got - want) <= rel * std::fabs(want);
}

std::vector<LogScalar> grid99() {
  std::vector<LogScalar> g;
  for (int t = 1; t <= 99; ++t) g.push_back(lit(t / 100.0L));
  return g;
}

}  // namespace

TEST_CASE("U spot values") {
  CHECK(close(v(U(lit(1.0L / 3))), oracle::U_third, 1e-15L));
  CHECK(close(v(U(lit(0.6L))), oracle::U_06, 1e-15L));
  CHECK(close(v(U(lit(0.5L))), oracle::U_half, 1e-15L));
  const LogScalar q = exp_of(lit(-800.0L));
  CHECK(close(v(mul(U(q), q)), oracle::U_e800_times_q, 1e-9L));
  CHECK_THROWS_AS(U(lit(0.0L)), DomainError);
  CHECK_THROWS_AS(U(lit(1.0L)), DomainError);
  CHECK_THROWS_AS(U(lit(-0.2L)), DomainError);
}

TEST_CASE("collar_eta spot values") {
  CHECK(close(v(collar_eta(lit(28.478L))), oracle::eta_28478, 1e-4L));
  CHECK(close(v(collar_eta(lit(oracle::U_third))), oracle::eta_U_third, 1e-12L));
  CHECK(close(v(collar_eta(lit(2.0L))), oracle::eta_mid_2, 1e-15L));
  CHECK(close(v(collar_eta(lit(45.0L))), oracle::eta_large_45, 1e-12L));
  CHECK(close(v(collar_eta(lit(1e-5L))), oracle::eta_small_1e5, 1e-12L));
  // sinh(asinh 1) = 1, so the value at 2 asinh 1 is asinh 1
  CHECK(close(v(collar_eta(lit(2 * oracle::asinh_1))), oracle::eta_at_2asinh1, 1e-15L));
  CHECK(close(v(collar_eta(lit(oracle::eta_fixed_point))), oracle::eta_fixed_point, 1e-15L));
  const LogScalar big = collar_eta(lit(1600.0L));
  CHECK(close(v(exp_of(add(ln_of(big), lit(800.0L)))), oracle::eta_1600_scaled, 1e-12L));
  CHECK_THROWS_AS(collar_eta(lit(0.0L)), DomainError);
  CHECK_THROWS_AS(collar_eta(lit(-1.0L)), DomainError);
}

TEST_CASE("collar_eta branch switchovers agree with the direct formula") {
  for (long double x : {40.0L, 1e-4L}) {
    for (long double f : {1 - 1e-9L, 1.0L, 1 + 1e-9L}) {
      const long double y = x * f;
      CHECK(close(v(collar_eta(lit(y))), std::asinh(1.0L / std::sinh(y / 2)), 1e-12L));
    }
  }
}

TEST_CASE("L spot values") {
  CHECK(close(v(L(lit(1.0L / 3))), oracle::L_third, 1e-10L));
  CHECK(close(v(L(lit(oracle::q2_recursive))), oracle::L_q2, 1e-12L));
  const LogScalar q = recip(exp_of(exp_of(lit(40.0L))));
  CHECK(close(v(L(q)) / (2 * 40.0L), oracle::L_exp_e40_ratio, 1e-9L));
  CHECK(std::fabs(v(L(q)) / 80.0L - 1) < 0.05L);
  CHECK_THROWS_AS(L(lit(1.0L)), DomainError);
}

TEST_CASE("U and L strictly decreasing on the grid") {
  const auto g = grid99();
  for (std::size_t t = 1; t < g.size(); ++t) {
    CHECK(cmp(U(g[t]), U(g[t - 1])) == Ordering::LT);
    CHECK(cmp(L(g[t]), L(g[t - 1])) == Ordering::LT);
  }
  // and across tiny magnitudes
  std::vector<LogScalar> tiny = {lit(1e-3L), lit(1e-30L), lit(1e-300L), exp_of(lit(-800.0L)),
                                 exp_of(lit(-1e5L)), recip(exp_of(exp_of(lit(700.0L)))),
                                 recip(exp_of(exp_of(lit(3000.0L))))};
  for (std::size_t t = 1; t < tiny.size(); ++t) {
    CHECK(cmp(U(tiny[t]), U(tiny[t - 1])) == Ordering::GT);
    CHECK(cmp(L(tiny[t]), L(tiny[t - 1])) == Ordering::GT);
  }
}

TEST_CASE("U and L continuous across band edges") {
  const long double edge = std::exp(-690.0L);
  const LogScalar below = lit(edge * (1 - 1e-13L)), above = lit(edge * (1 + 1e-13L));
  CHECK(relative_difference(U(below), U(above)) < 1e-9L);
  CHECK(relative_difference(L(below), L(above)) < 1e-9L);
  const LogScalar a = exp_of(lit(-690.0L - 1e-10L)), b = exp_of(lit(-690.0L + 1e-10L));
  CHECK(relative_difference(U(a), U(b)) < 1e-9L);
  CHECK(relative_difference(L(a), L(b)) < 1e-9L);
  // series cut of atanh
  CHECK(relative_difference(U(lit(1e-4L * (1 - 1e-12L))), U(lit(1e-4L * (1 + 1e-12L)))) < 1e-11L);
}

TEST_CASE("sandwich L < U") {
  for (const LogScalar& q : grid99()) CHECK(cmp(L(q), U(q)) == Ordering::LT);
  for (long double e : {-10.0L, -100.0L, -800.0L}) {
    const LogScalar q = exp_of(lit(e));
    CHECK(cmp(L(q), U(q)) == Ordering::LT);
  }
}

TEST_CASE("annulus core length identities") {
  CHECK(close(v(annulus_core_length(lit(0.5L))), oracle::core_half, 1e-15L));
  for (const LogScalar& q : grid99()) {
    const LogScalar R = div(one_minus(q), add(LogScalar::one(), q));
    CHECK(relative_difference(annulus_core_length(R), U(q)) < 1e-12L);
  }
  const LogScalar q = lit(1.0L / 3);
  const LogScalar R = div(mul(lit(2.0L), q), add(LogScalar::one(), q));
  CHECK(close(v(annulus_core_length(R)), 2 * kPi2 / std::log(2.0L), 1e-15L));
  CHECK_THROWS_AS(annulus_core_length(lit(1.0L)), DomainError);
}

TEST_CASE("collar asymptotic against the oracle") {
  // the asymptotic only reaches 1.7% and 0.16% at these q; compare with the oracle ratio
  for (auto [q, want] : {std::pair{0.01L, oracle::anno_001}, std::pair{0.001L, oracle::anno_0001}}) {
    const long double ratio = v(collar_eta(U(lit(q)))) / (2 * std::exp(-kPi2 / (2 * q)));
    CHECK(close(ratio, want, 1e-9L));
  }
}

TEST_CASE("upper bound branches") {
  const OmegaSpec third = OmegaSpec::constant(QValue::parse("1/3"));
  const UpperBound b1 = upper_bound_geodesic(third, 1, 1);
  CHECK(b1.branch == UpperBranch::OddCase);
  CHECK(b1.certified);
  CHECK(close(v(b1.value), oracle::U_third, 1e-15L));

  const UpperBound b2 = upper_bound_geodesic(third, 2, 2);
  CHECK(close(v(b2.value), oracle::U_third, 1e-15L));
  REQUIRE(b2.even_value.has_value());
  CHECK(close(v(*b2.even_value), oracle::U_third, 1e-15L));

  const OmegaSpec r = OmegaSpec::recursive_i(QValue::parse("1/2"));
  for (int k = 1; k <= 6; ++k) {
    for (std::uint64_t i = 1; i <= (std::uint64_t{1} << k); ++i) {
      const UpperBound u = upper_bound_geodesic(r, k, i);
      CHECK(u.certified);
      CHECK(u.value == U(q_at(r, static_cast<std::uint64_t>(k))));
    }
  }

  std::vector<QValue> qs = {QValue::parse("0.01"), QValue::parse("0.9")};
  const OmegaSpec jump = OmegaSpec::explicit_list(qs);
  const UpperBound e = upper_bound_geodesic(jump, 2, 2);
  CHECK(e.branch == UpperBranch::EvenCase);
  CHECK(e.ell == 1);
  CHECK(e.certified);
  CHECK(e.value == even_case_bound(lit(0.9L), lit(0.01L)));

  std::vector<QValue> zig = {QValue::parse("0.3"), QValue::parse("0.1"), QValue::parse("0.2")};
  const UpperBound m = upper_bound_geodesic(OmegaSpec::explicit_list(zig), 3, 5);
  CHECK(m.branch == UpperBranch::MaxOfBoth);
  CHECK_FALSE(m.certified);
  CHECK(m.value == max_of(m.u_value, *m.even_value));

  CHECK_THROWS_AS(upper_bound_geodesic(third, 2, 5), OutOfRange);
  CHECK_THROWS_AS(upper_bound_geodesic(third, 0, 1), OutOfRange);
}

TEST_CASE("lower bound") {
  const OmegaSpec third = OmegaSpec::constant(QValue::parse("1/3"));
  CHECK(close(v(lower_bound_geodesic(third, 1)), oracle::L_third, 1e-10L));
  const OmegaSpec r = OmegaSpec::recursive_i(QValue::parse("1/2"));
  for (int k = 2; k <= 10; ++k) {
    CHECK(cmp(lower_bound_geodesic(r, k), lower_bound_geodesic(r, k - 1)) == Ordering::GT);
  }
  // q -> 1: the upper bound collapses
  CHECK(v(U(lit(1 - 1e-15L))) < 1.0L);
}

TEST_CASE("sandwich holds wherever the upper bound is certified") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.001, 0.999);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<QValue> qs;
    for (int n = 0; n < 8; ++n) qs.push_back(QValue::from_log(lit(u(rng))));
    const OmegaSpec s = OmegaSpec::explicit_list(qs);
    for (int k = 1; k <= 8; ++k) {
      for (std::uint64_t i = 1; i <= (std::uint64_t{1} << k); i += 3) {
        const BoundReport b = bound_report(s, k, i);
        if (b.certified) CHECK(cmp(b.lower, b.upper) == Ordering::LT);
      }
    }
  }
  const OmegaSpec r = OmegaSpec::recursive_i(QValue::parse("1/2"));
  for (int k = 1; k <= 30; ++k) {
    const BoundReport b = bound_report(r, k, 1);
    CHECK(b.certified);
    CHECK(cmp(b.lower, b.upper) == Ordering::LT);
  }
}

TEST_CASE("pentagon examples") {
  const LogScalar a1 = lit(oracle::asinh_1), a2 = lit(oracle::asinh_2);
  CHECK(v(pentagon_d(a1, a1)) < 1e-7L);
  CHECK(close(v(pentagon_d(a2, a1)), oracle::acosh_2, 1e-15L));
  const LogScalar h = asinh_of(lit(0.5L));
  CHECK_THROWS_AS(pentagon_d(h, h), NoPentagon);

  CHECK(close(v(pentagon_b(a1, lit(oracle::acosh_2))), oracle::asinh_2, 1e-15L));
  CHECK(close(v(pentagon_b(a1, lit(0.0L))), oracle::asinh_1, 1e-15L));
  CHECK_THROWS_AS(pentagon_b(lit(0.0L), lit(1.0L)), DomainError);
  CHECK_THROWS_AS(pentagon_b(a1, lit(-1.0L)), DomainError);

  // cosh d ~ e^d/2: b - d -> ln 2 - ln(2 sinh a) = -ln(sinh a)
  for (long double a : {0.3L, 1.0L, 4.0L}) {
    const long double b = v(pentagon_b(lit(a), lit(1000.0L)));
    CHECK(std::fabs((b - 1000.0L) + std::log(std::sinh(a))) < 1e-12L);
  }
}

TEST_CASE("pentagon round trip") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> ua(-6.0, 3.0), ud(-3.0, 8.0);
  for (int t = 0; t < 1000; ++t) {
    const LogScalar a = lit(std::pow(10.0L, static_cast<long double>(ua(rng))));
    LogScalar d = lit(std::pow(10.0L, static_cast<long double>(ud(rng))));
    if (t % 4 == 0) d = exp_of(lit(std::pow(10.0L, static_cast<long double>(ud(rng) / 3 + 1))));
    const LogScalar back = pentagon_d(a, pentagon_b(a, d));
    CHECK(relative_difference(back, d) < 1e-10L);
  }
}

TEST_CASE("prefix predicates") {
  const OmegaSpec r = OmegaSpec::recursive_i(QValue::parse("1/2"));
  CHECK(prefix_monotone(r, 20));
  std::vector<QValue> zig = {QValue::parse("0.3"), QValue::parse("0.1"), QValue::parse("0.2"),
                             QValue::parse("0.05")};
  const OmegaSpec z = OmegaSpec::explicit_list(zig);
  CHECK_FALSE(prefix_monotone(z, 3));
  CHECK_FALSE(prefix_min(z, 3));
  CHECK(prefix_min(z, 4));
}

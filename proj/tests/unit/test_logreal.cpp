#include <cmath>
#include <random>
#include <vector>

#include "cantorgeo/errors.hpp"
#include "cantorgeo/logreal.hpp"
#include "doctest.h"

using namespace cantorgeo;

namespace {

LogScalar lit(long double v) { return LogScalar::from_linear(v); }

// exp(-exp(m))
LogScalar dbl_tiny(long double m) { return recip(exp_of(exp_of(lit(m)))); }

LogScalar random_value(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-3.0, 3.0), mag(0.0, 2.5);
  std::uniform_int_distribution<int> layers(0, 3), coin(0, 1);
  LogScalar x = lit(u(rng) * std::pow(10.0, mag(rng)));
  const int k = layers(rng);
  for (int j = 0; j < k; ++j) x = exp_of(x);
  if (coin(rng) && !x.is_zero()) x = recip(x);
  if (coin(rng)) x = neg(x);
  return x;
}

}  // namespace

TEST_CASE("from_linear picks the layer by band") {
  const LogScalar h = lit(0.5L);
  CHECK(h.sign() == 1);
  CHECK(h.layer() == 0);
  CHECK(h.mantissa() == 0.5L);

  const LogScalar z = lit(0.0L);
  CHECK(z.sign() == 0);
  CHECK(z.is_zero());

  const LogScalar t = lit(1e-400L);
  CHECK(t.layer() == 1);
  CHECK(t.exponent_sign() == -1);
  CHECK(t.mantissa() == doctest::Approx(921.0340371976183).epsilon(1e-12));

  CHECK_THROWS_AS(lit(INFINITY), DomainError);
  CHECK_THROWS_AS(lit(NAN), DomainError);
}

TEST_CASE("mul and div") {
  CHECK(mul(lit(0.5L), lit(0.5L)).to_long_double() == 0.25L);

  // exp(-exp(3235.7)) * 10^3: the double exponent is untouched
  const LogScalar q = dbl_tiny(3235.7L);
  const LogScalar p = mul(q, lit(1000.0L));
  CHECK(p.layer() == 2);
  const LogScalar llq = ln_of(neg(ln_of(q)));
  const LogScalar llp = ln_of(neg(ln_of(p)));
  CHECK(relative_difference(llq, llp) < 1e-9L);
  // but the linear factor survives in the first logarithm
  CHECK(detail::signed_sum(ln_of(p), neg(ln_of(q))).to_long_double() ==
        doctest::Approx(std::log(1000.0)).epsilon(1e-15));

  for (long double v : {0.3L, 7.0L, 1e-200L, 1e250L}) {
    CHECK(relative_difference(mul(lit(v), recip(lit(v))), LogScalar::one()) < 1e-12L);
  }
  for (long double m : {-900.0L, -5000.0L, 700.0L, 1e6L}) {
    const LogScalar a = exp_of(lit(m));
    CHECK(a.layer() == 1);
    CHECK(relative_difference(mul(a, recip(a)), LogScalar::one()) < 1e-12L);
  }
  CHECK_THROWS_AS(div(lit(1.0L), LogScalar{}), DomainError);
}

TEST_CASE("add") {
  CHECK(add(lit(0.5L), lit(1.0L / 3)).to_long_double() == doctest::Approx(5.0 / 6).epsilon(1e-15));

  const LogScalar e800 = exp_of(lit(-800.0L));
  const LogScalar s = add(e800, e800);
  CHECK(s.layer() == 1);
  CHECK(ln_of(s).to_long_double() == doctest::Approx(-800.0 + std::log(2.0)).epsilon(1e-15));

  const LogScalar x = dbl_tiny(40.0L);
  CHECK(add(x, LogScalar{}) == x);
  CHECK(add(LogScalar{}, x) == x);

  CHECK_THROWS_AS(add(exp_of(lit(900.0L)), neg(exp_of(lit(800.0L)))), UnsupportedOperation);
  CHECK(add(lit(2.0L), lit(-0.5L)).to_long_double() == 1.5L);
}

TEST_CASE("ln_of unwraps one layer") {
  CHECK(ln_of(lit(std::exp(1.0L))).to_long_double() == doctest::Approx(1.0).epsilon(1e-18));

  const LogScalar l = ln_of(dbl_tiny(3235.7L));
  CHECK(l.sign() == -1);
  CHECK(l.layer() == 1);
  CHECK(l.mantissa() == doctest::Approx(3235.7).epsilon(1e-15));

  // q = exp(-e^2): ln ln (1/q) = 2
  const LogScalar q = recip(exp_of(exp_of(lit(2.0L))));
  CHECK(ln_of(ln_of(recip(q))).to_long_double() == doctest::Approx(2.0).epsilon(1e-15));

  CHECK_THROWS_AS(ln_of(LogScalar{}), DomainError);
  CHECK_THROWS_AS(ln_of(lit(-1.0L)), DomainError);
}

TEST_CASE("one_minus and ln_one_minus") {
  CHECK(one_minus(lit(1.0L / 3)).to_long_double() == doctest::Approx(2.0 / 3).epsilon(1e-18));
  const LogScalar t = exp_of(lit(-800.0L));
  CHECK(one_minus(t) == LogScalar::one());
  const LogScalar l = ln_one_minus(t);
  CHECK(l.sign() == -1);
  CHECK(l.layer() == 1);
  CHECK(relative_difference(neg(l), t) < 1e-15L);
  CHECK(one_minus(LogScalar{}) == LogScalar::one());
  CHECK_THROWS_AS(one_minus(lit(1.0L)), DomainError);
  CHECK_THROWS_AS(one_minus(lit(1.5L)), DomainError);
  CHECK_THROWS_AS(ln_one_minus(lit(-0.1L)), DomainError);
}

TEST_CASE("cmp examples") {
  CHECK(cmp(exp_of(lit(-800.0L)), lit(1e-5L)) == Ordering::LT);
  const LogScalar x = dbl_tiny(12.0L);
  CHECK(cmp(x, x) == Ordering::EQ);
  CHECK(cmp(recip(exp_of(exp_of(lit(10.0L)))), recip(exp_of(exp_of(lit(9.0L))))) == Ordering::LT);
  CHECK(cmp(dbl_tiny(1000.0L), dbl_tiny(999.0L)) == Ordering::LT);
  CHECK(cmp(neg(exp_of(lit(1000.0L))), lit(-3.0L)) == Ordering::LT);
  CHECK(cmp(lit(-1e-300L), neg(exp_of(lit(-900.0L)))) == Ordering::LT);
}

TEST_CASE("cmp is a total order on mixed layers") {
  std::mt19937_64 rng(20240611);
  std::vector<LogScalar> xs;
  for (int n = 0; n < 120; ++n) xs.push_back(random_value(rng));
  for (const auto& a : xs) {
    CHECK(cmp(a, a) == Ordering::EQ);
    for (const auto& b : xs) {
      const Ordering ab = cmp(a, b), ba = cmp(b, a);
      CHECK((ab == Ordering::LT) == (ba == Ordering::GT));
      CHECK((ab == Ordering::EQ) == (ba == Ordering::EQ));
      const long double la = a.to_long_double(), lb = b.to_long_double();
      if (std::isfinite(la) && std::isfinite(lb) && la != 0 && lb != 0 && a.is_linear() && b.is_linear()) {
        CHECK((la < lb) == (ab == Ordering::LT));
      }
    }
  }
  for (std::size_t i = 0; i + 2 < xs.size(); ++i) {
    for (std::size_t j = 0; j < xs.size(); j += 7) {
      for (std::size_t k = 0; k < xs.size(); k += 11) {
        if (cmp(xs[i], xs[j]) == Ordering::LT && cmp(xs[j], xs[k]) == Ordering::LT) {
          CHECK(cmp(xs[i], xs[k]) == Ordering::LT);
        }
      }
    }
  }
}

TEST_CASE("mul is associative and commutative on layers 0 and 1") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2000.0, 2000.0);
  std::uniform_int_distribution<int> coin(0, 1);
  auto draw = [&] {
    LogScalar x = exp_of(lit(u(rng)));
    return coin(rng) ? neg(x) : x;
  };
  for (int n = 0; n < 300; ++n) {
    const LogScalar a = draw(), b = draw(), c = draw();
    CHECK(relative_difference(mul(a, b), mul(b, a)) < 1e-11L);
    CHECK(relative_difference(mul(mul(a, b), c), mul(a, mul(b, c))) < 1e-11L);
  }
}

TEST_CASE("ln of a product is the sum of logs") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-600.0, 600.0);
  for (int n = 0; n < 300; ++n) {
    const LogScalar a = exp_of(lit(u(rng))), b = exp_of(lit(u(rng) * 3));
    const LogScalar lhs = ln_of(mul(a, b));
    const LogScalar rhs = add(ln_of(a), ln_of(b));
    const long double scale = std::max<long double>(1.0L, std::fabs(rhs.to_long_double()));
    CHECK(std::fabs(lhs.to_long_double() - rhs.to_long_double()) / scale < 1e-11L);
  }
}

TEST_CASE("round trip on the linear band") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> e(-299.0, 299.0), m(1.0, 10.0);
  for (int n = 0; n < 2000; ++n) {
    const long double v = m(rng) * std::pow(10.0L, static_cast<long double>(e(rng)));
    CHECK(std::fabs(lit(v).to_long_double() - v) / v < 1e-12L);
    CHECK(std::fabs(lit(-v).to_long_double() + v) / v < 1e-12L);
  }
}

TEST_CASE("canonical form is unique across band edges") {
  const long double edge = std::exp(690.0L);
  CHECK(lit(edge * 0.999L).layer() == 0);
  CHECK(lit(edge * 1.001L).layer() == 1);
  // the same value reached from both sides compares equal and normalizes alike
  const LogScalar a = exp_of(lit(689.0L));
  const LogScalar b = mul(exp_of(lit(695.0L)), exp_of(lit(-6.0L)));
  CHECK(relative_difference(a, b) < 1e-15L);
  CHECK(a.layer() == b.layer());
  // from_parts normalizes non-canonical input
  const LogScalar c = LogScalar::from_parts({{0.0L, 1}}, 3.0L);
  CHECK(c.layer() == 0);
  CHECK(c.to_long_double() == doctest::Approx(std::exp(3.0)).epsilon(1e-18));
}

TEST_CASE("towers keep additive offsets") {
  // n/q - m/q for the same tiny q cancels the big part exactly
  const LogScalar q = dbl_tiny(3235.7L);
  const LogScalar d = detail::signed_sum(div(lit(5.0L), q), neg(div(lit(3.0L), q)));
  CHECK(relative_difference(d, div(lit(2.0L), q)) < 1e-15L);
  const LogScalar z = detail::signed_sum(div(lit(3.0L), q), neg(div(lit(3.0L), q)));
  CHECK(z.is_zero());
}

TEST_CASE("deep towers saturate") {
  LogScalar x = lit(800.0L);
  for (int n = 0; n < LogScalar::kMaxLayer; ++n) x = exp_of(x);
  CHECK(x.layer() == LogScalar::kMaxLayer);
  CHECK_THROWS_AS(exp_of(x), SaturationError);
}

TEST_CASE("approx rendering") {
  CHECK(lit(0.25L).approx() == "0.25");
  CHECK(dbl_tiny(3235.7L).approx(8) == "exp(-exp(3235.7))");
  CHECK(lit(1e-400L).approx(6) == "exp(-921.034)");
  LogScalar deep = lit(800.0L);
  for (int n = 0; n < 9; ++n) deep = exp_of(deep);
  CHECK(deep.approx(4) == "exp(exp(exp(exp(exp^5(800)))))");
}

TEST_CASE("hyperbolic functions on extended range") {
  CHECK(sinh_of(lit(1.0L)).to_long_double() == doctest::Approx(std::sinh(1.0)).epsilon(1e-18));
  const LogScalar big = lit(20000.0L);
  CHECK(relative_difference(ln_of(cosh_of(big)), lit(20000.0L - std::log(2.0L))) < 1e-18L);
  CHECK(relative_difference(asinh_of(cosh_of(big)), big) < 1e-18L);
  CHECK(relative_difference(acosh_of(cosh_of(big)), big) < 1e-18L);
  const LogScalar tiny = exp_of(lit(-5000.0L));
  CHECK(sinh_of(tiny) == tiny);
  CHECK(asinh_of(tiny) == tiny);
  CHECK(cosh_of(tiny) == LogScalar::one());
  CHECK_THROWS_AS(acosh_of(lit(0.5L)), DomainError);
  CHECK(sinh_of(lit(-30000.0L)).sign() == -1);
}

TEST_CASE("log1p_of") {
  CHECK(log1p_of(lit(1e-10L)).to_long_double() == doctest::Approx(1e-10 - 5e-21).epsilon(1e-15));
  const LogScalar t = exp_of(lit(-900.0L));
  CHECK(log1p_of(t) == t);
  CHECK(relative_difference(log1p_of(exp_of(lit(900.0L))), lit(900.0L)) < 1e-18L);
  CHECK_THROWS_AS(log1p_of(lit(-1.0L)), DomainError);
}

#include <doctest.h>

#include <cmath>
#include <random>

#include "estc/dd.hpp"

using estc::ddouble;

TEST_CASE("double-double arithmetic identities") {
  ddouble a = ddouble(1.0) / ddouble(3.0);
  ddouble b = a + a + a;
  CHECK(std::fabs((b - ddouble(1.0)).hi) < 1e-31);

  // (1 + eps_dd-scale perturbation) survives where f64 loses it
  ddouble one(1.0);
  ddouble tiny(1e-25);
  ddouble s = one + tiny;
  CHECK((s - one).hi == doctest::Approx(1e-25).epsilon(1e-10));

  // multiplication / division round trip
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  for (int i = 0; i < 200; ++i) {
    ddouble x(u(rng), 1e-18 * u(rng));
    ddouble y(u(rng), 1e-18 * u(rng));
    ddouble z = (x * y) / y;
    CHECK(std::fabs((z - x).hi) <= 1e-29 * std::fabs(x.hi));
  }
}

TEST_CASE("double-double sqrt") {
  for (double v : {2.0, 3.0, 1e-8, 12345.6789, 0.49}) {
    ddouble r = sqrt(ddouble(v));
    ddouble err = r * r - ddouble(v);
    CHECK(std::fabs(err.hi) <= 1e-30 * v);
  }
  CHECK(sqrt(ddouble(0.0)).hi == 0.0);
  CHECK_THROWS(sqrt(ddouble(-1.0)));
}

TEST_CASE("double-double string round trip") {
  for (const char* s : {"1.5e-6", "-3.25", "0.001732050807568877293527446341505", "42",
                        "1.000199980003999000279916026391422859", "8.631215237e-8"}) {
    ddouble v = estc::dd_from_string(s);
    ddouble w = estc::dd_from_string(estc::to_string(v));
    ddouble d = v - w;
    double scale = std::fabs(v.hi) > 0 ? std::fabs(v.hi) : 1.0;
    CHECK(std::fabs(d.hi) <= 1e-30 * scale);
  }
  CHECK(estc::to_string(ddouble(0.0)) == "0");
  // the value 0.1 + 1e-20 is representable in dd but not in f64
  ddouble v = estc::dd_from_string("0.10000000000000000001");
  CHECK(v.hi == doctest::Approx(0.1));
  ddouble tenth = estc::dd_from_string("0.1");
  CHECK(std::fabs((v - tenth).hi - 1e-20) < 1e-30);
}

TEST_CASE("double-double comparisons and pow10") {
  CHECK(ddouble(1.0, 1e-20) > ddouble(1.0));
  CHECK(ddouble(2.0) < ddouble(3.0));
  CHECK(estc::dd_pow10(3).hi == 1000.0);
  CHECK(std::fabs((estc::dd_pow10(-4) * estc::dd_pow10(4) - ddouble(1.0)).hi) < 1e-30);
}

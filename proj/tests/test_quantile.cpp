#include <doctest.h>

#include <vector>

#include "mcssa/errors.hpp"
#include "mcssa/quantile.hpp"

using namespace mcssa;

TEST_CASE("quantile interpolates between order statistics") {
  // Reference values from the (n-1)p plotting position on 1..10:
  // h = 9p, q = x_(floor h) + frac * step.
  std::vector<double> x{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  CHECK(quantile_sorted(x, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(quantile_sorted(x, 0.25) == doctest::Approx(3.25).epsilon(1e-15));
  CHECK(quantile_sorted(x, 0.5) == doctest::Approx(5.5).epsilon(1e-15));
  CHECK(quantile_sorted(x, 0.75) == doctest::Approx(7.75).epsilon(1e-15));
  CHECK(quantile_sorted(x, 1.0) == doctest::Approx(10.0).epsilon(1e-15));
}

TEST_CASE("quantile handles single-element and constant samples") {
  std::vector<double> one{3.5};
  CHECK(quantile_sorted(one, 0.0) == 3.5);
  CHECK(quantile_sorted(one, 0.73) == 3.5);
  std::vector<double> flat{2.0, 2.0, 2.0, 2.0};
  CHECK(quantile_sorted(flat, 0.31) == 2.0);
}

TEST_CASE("quantile is monotone in the level") {
  std::vector<double> x{0.3, 1.9, 2.2, 5.0, 5.1, 9.4, 12.0};
  double previous = quantile_sorted(x, 0.0);
  for (int i = 1; i <= 100; ++i) {
    const double q = quantile_sorted(x, i / 100.0);
    CHECK(q >= previous);
    previous = q;
  }
}

TEST_CASE("empirical_quantile sorts its input") {
  CHECK(empirical_quantile({5, 1, 4, 2, 3}, 0.5) == 3.0);
}

TEST_CASE("quantile rejects bad arguments") {
  std::vector<double> x{1.0, 2.0};
  CHECK_THROWS_AS(quantile_sorted(x, -0.1), ParameterError);
  CHECK_THROWS_AS(quantile_sorted(x, 1.1), ParameterError);
  CHECK_THROWS_AS(quantile_sorted(std::vector<double>{}, 0.5), ParameterError);
}

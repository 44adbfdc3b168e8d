#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mcssa/errors.hpp"
#include "mcssa/esprit.hpp"
#include "mcssa/rng.hpp"

using namespace mcssa;

namespace {

Eigen::VectorXd sinusoid(int n, double freq, double phase = 0.3,
                         double damping = 0.0) {
  Eigen::VectorXd v(n);
  for (int t = 0; t < n; ++t)
    v[t] = std::exp(-damping * t) *
           std::sin(2.0 * std::numbers::pi * freq * t + phase);
  return v;
}

}  // namespace

TEST_CASE("pure sinusoids are labeled exactly") {
  for (double freq : {0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45}) {
    const double estimated =
        esprit_main_frequency(sinusoid(40, freq)).frequency;
    CHECK(std::abs(estimated - freq) < 1e-6);
  }
}

TEST_CASE("damping does not bias the frequency") {
  // Oracle: e^{-0.05 t} sin(2 pi 0.2 t) has roots e^{-0.05 +- 2 pi i 0.2},
  // whose argument still encodes frequency 0.2 exactly.
  const double estimated =
      esprit_main_frequency(sinusoid(60, 0.2, 0.0, 0.05)).frequency;
  CHECK(std::abs(estimated - 0.2) < 1e-4);
}

TEST_CASE("scaling the vector does not change the label") {
  const Eigen::VectorXd v = sinusoid(30, 0.17);
  const double reference = esprit_main_frequency(v).frequency;
  for (double scale : {3.0, -2.0, 1e-6}) {
    CHECK(std::abs(esprit_main_frequency(scale * v).frequency - reference) <
          1e-9);
  }
}

TEST_CASE("reversing the vector does not change the label") {
  const Eigen::VectorXd v = sinusoid(25, 0.23, 1.1);
  const double forward = esprit_main_frequency(v).frequency;
  const double backward = esprit_main_frequency(v.reverse()).frequency;
  CHECK(std::abs(forward - backward) < 1e-8);
}

TEST_CASE("aperiodic vectors are labeled zero") {
  CHECK(esprit_main_frequency(Eigen::VectorXd::Constant(20, 2.5)).frequency ==
        0.0);
  Eigen::VectorXd expo(20);
  for (int t = 0; t < 20; ++t) expo[t] = std::pow(0.9, t);
  CHECK(esprit_main_frequency(expo).frequency == 0.0);
  Eigen::VectorXd trend(20);
  for (int t = 0; t < 20; ++t) trend[t] = 1.0 + 0.1 * t;
  CHECK(esprit_main_frequency(trend).frequency == 0.0);
}

TEST_CASE("real roots split by the dominant sign") {
  // Two real exponentials: the larger modulus decides the label.
  Eigen::VectorXd positive_dominant(24), negative_dominant(24);
  for (int t = 0; t < 24; ++t) {
    positive_dominant[t] = std::pow(0.9, t) + std::pow(-0.5, t);
    negative_dominant[t] = std::pow(0.5, t) + std::pow(-0.9, t);
  }
  CHECK(esprit_main_frequency(positive_dominant).frequency == 0.0);
  CHECK(esprit_main_frequency(negative_dominant).frequency == 0.5);
}

TEST_CASE("labels always land in [0, 0.5]") {
  mcssa::RngEngine rng;
  for (int r = 0; r < 50; ++r) {
    std::normal_distribution<double> normal;
    Eigen::VectorXd v(15);
    for (int i = 0; i < 15; ++i) v[i] = normal(rng);
    const double f = esprit_main_frequency(v).frequency;
    CHECK(f >= 0.0);
    CHECK(f <= 0.5);
  }
}

TEST_CASE("the inner window stays usable at the minimum length") {
  CHECK_NOTHROW(esprit_main_frequency(sinusoid(4, 0.2)));
  CHECK_THROWS_AS(esprit_main_frequency(sinusoid(3, 0.2)), ParameterError);
}

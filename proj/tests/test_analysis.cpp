#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "oracles.hpp"
#include "pnc/analysis.hpp"
#include "pnc/impairments.hpp"

using namespace pnc;

TEST_CASE("min_distance_sq") {
  CHECK(min_distance_sq(0.0) == 4.0);
  const double r = 1.0 - std::sqrt(2.0) / 2.0;
  CHECK(min_distance_sq(kPi / 4) == doctest::Approx(8.0 * r * r).epsilon(1e-14));
  CHECK(min_distance_sq(kPi / 4) == doctest::Approx(0.6863).epsilon(1e-4));
  CHECK(min_distance_sq(-0.3) == min_distance_sq(0.3));
  CHECK_THROWS_AS(min_distance_sq(kPi / 2), std::domain_error);
  CHECK_THROWS_AS(min_distance_sq(NAN), std::domain_error);
}

TEST_CASE("phase_penalty_db") {
  CHECK(phase_penalty_db(0.0) == 0.0);
  const double r = 1.0 - std::sqrt(2.0) / 2.0;
  CHECK(phase_penalty_db(kPi / 4) == doctest::Approx(10.0 * std::log10(2.0 * r * r)).epsilon(1e-12));
  CHECK(phase_penalty_db(kPi / 4) == doctest::Approx(-7.66).epsilon(0.01 / 7.66));
  CHECK(phase_penalty_db(-kPi / 4) == phase_penalty_db(kPi / 4));
}

TEST_CASE("average phase penalty against the closed form") {
  const double closed = oracle::avg_phase_penalty_linear();
  CHECK(std::abs(avg_phase_penalty_linear() - closed) < 1e-9);
  CHECK(avg_phase_penalty_linear() == doctest::Approx(0.4535).epsilon(2e-3));
  CHECK(avg_phase_penalty_db() == doctest::Approx(10.0 * std::log10(closed)).epsilon(1e-9));
  CHECK(avg_phase_penalty_db() > -3.5);
  CHECK(avg_phase_penalty_db() < -3.3);
}

TEST_CASE("one-dimensional SIR of the conventional schedule") {
  CHECK(sir_1d_traditional_db(4.0) == doctest::Approx(8.5).epsilon(0.05 / 8.5));
  const double first = 2.0 / 16 + 1.0 / 81 + 1.0 / 625;
  CHECK(sir_1d_traditional_db(4.0, 1) == doctest::Approx(-10.0 * std::log10(first)).epsilon(1e-12));
  CHECK(sir_1d_traditional_db(4.0, 1) == doctest::Approx(8.57).epsilon(0.01 / 8.57));
  // For large alpha the 2 / 2^alpha term dominates the interference.
  const double dominant = -10.0 * std::log10(2.0 / std::pow(2.0, 20));
  CHECK(sir_1d_traditional_db(20.0) == doctest::Approx(dominant).epsilon(1e-4));
  // series truncation: partial sums past l = 100 move the result by < 0.001 dB
  CHECK(std::abs(sir_1d_traditional_db(4.0, 101) - sir_1d_traditional_db(4.0, 100000)) < 1e-3);
  CHECK_THROWS_AS(sir_1d_traditional_db(1.0), std::invalid_argument);
  CHECK_THROWS_AS(sir_1d_traditional_db(4.0, 0), std::invalid_argument);
}

TEST_CASE("isi_variance") {
  const SinrContext ctx{};
  CHECK(isi_variance(0.0, ctx) == doctest::Approx(0.0).epsilon(1e-20));
  for (double dt : {0.1, 0.27, 0.5}) CHECK(isi_variance(-dt, ctx) == doctest::Approx(isi_variance(dt, ctx)));
  const double mc = oracle::isi_variance_mc(0.5, 0.5, 16, 1000000, 2024);
  CHECK(isi_variance(0.5, ctx) == doctest::Approx(mc).epsilon(0.01));
}

TEST_CASE("sinr_penalty_db") {
  const SinrContext ctx{};
  CHECK(sinr_penalty_db(0.0, ctx) == 0.0);
  for (double dt = -0.5; dt <= 0.5; dt += 0.05) {
    CHECK(sinr_penalty_db(dt, ctx) == doctest::Approx(sinr_penalty_db(-dt, ctx)));
    CHECK(sinr_penalty_db(dt, ctx) == doctest::Approx(oracle::sinr_penalty_db(dt, 0.5, 10.0)).epsilon(1e-9));
  }
  // offsets spread over [-0.2T, 0.2T] cost well under 1 dB on average; the edge point alone is
  // about -1.17 dB
  double lin = 0.0;
  const int n = 400;
  for (int i = 0; i < n; ++i) lin += std::pow(10.0, sinr_penalty_db(-0.2 + 0.4 * (i + 0.5) / n, ctx) / 10.0);
  CHECK(std::abs(10.0 * std::log10(lin / n)) < 1.0);
  CHECK(sinr_penalty_db(0.2, ctx) == doctest::Approx(-1.175).epsilon(1e-3));
}

TEST_CASE("avg_sinr_penalty_db") {
  const SinrContext ctx{};
  CHECK(std::abs(avg_sinr_penalty_db(ctx, 101) - avg_sinr_penalty_db(ctx, 1001)) < 0.01);
  // With overwhelming noise only the signal attenuation remains.
  const SinrContext noisy{-60.0, 0.5, 16};
  double acc = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double tau = -0.5 + (i + 0.5) / n;
    acc += std::pow(oracle::raised_cosine(tau / 2, 0.5), 2);
  }
  CHECK(avg_sinr_penalty_db(noisy) == doctest::Approx(10.0 * std::log10(acc / n)).epsilon(1e-4));
  CHECK_THROWS_AS(avg_sinr_penalty_db(ctx, 2), std::invalid_argument);
  CHECK_THROWS_AS(avg_sinr_penalty_db(SinrContext{NAN, 0.5, 16}), std::invalid_argument);
}

TEST_CASE("emit_penalty_curves") {
  const auto curves = emit_penalty_curves({91, 101}, SinrContext{});
  REQUIRE(curves.size() == 2);
  const auto& phase = curves[0];
  const auto& time = curves[1];
  CHECK(phase.parameter_name == "theta_rad");
  CHECK(time.parameter_name == "dt_over_T");
  CHECK(phase.points.front().second == doctest::Approx(phase_penalty_db(-kPi / 4)));
  CHECK(phase.points.back().second == doctest::Approx(phase_penalty_db(kPi / 4)));
  CHECK(time.points[50].first == doctest::Approx(0.0));
  CHECK(time.points[50].second == doctest::Approx(0.0));
  // the phase bound decreases from 0 to pi/4
  for (std::size_t n = 46; n < phase.points.size(); ++n) {
    CHECK(phase.points[n].second < phase.points[n - 1].second);
  }
  CHECK_NOTHROW(phase.validate());
  CHECK_THROWS_AS(emit_penalty_curves({1, 101}, SinrContext{}), std::invalid_argument);
}

TEST_CASE("PenaltyCurve validation") {
  PenaltyCurve c{"x", {{0.0, 1.0}, {0.0, 2.0}}};
  CHECK_THROWS_AS(c.validate(), std::logic_error);
  c.points = {{0.0, 1.0}, {1.0, NAN}};
  CHECK_THROWS_AS(c.validate(), std::logic_error);
  c.points = {{0.0, 1.0}, {1.0, 2.0}};
  CHECK_NOTHROW(c.validate());
}

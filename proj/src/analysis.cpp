#include "pnc/analysis.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <stdexcept>

#include "pnc/impairments.hpp"

namespace pnc {

namespace {

constexpr double kQuarterPi = kPi / 4.0;
// Floating slack on the folded-range boundary.
constexpr double kRangeSlack = 1e-12;

double penalty_ratio(double theta) {
  const double a = 1.0 - std::cos(theta);
  const double b = 1.0 - std::sin(theta);
  return a * a + b * b;
}

double to_db(double linear) { return 10.0 * std::log10(linear); }

}  // namespace

void PenaltyCurve::validate() const {
  for (std::size_t n = 0; n < points.size(); ++n) {
    if (!std::isfinite(points[n].first) || !std::isfinite(points[n].second)) {
      throw std::logic_error("penalty curve '" + parameter_name + "' has a non-finite value");
    }
    if (n > 0 && !(points[n].first > points[n - 1].first)) {
      throw std::logic_error("penalty curve '" + parameter_name +
                             "' parameters are not strictly increasing");
    }
  }
}

void SinrContext::validate() const {
  if (!std::isfinite(snr0_db)) throw std::invalid_argument("reference SNR must be finite");
  PulseShape{rolloff, truncation_symbols}.validate();
}

double SinrContext::noise_var() const { return std::pow(10.0, -snr0_db / 10.0); }

double min_distance_sq(double theta) {
  if (!(std::abs(theta) <= kQuarterPi + kRangeSlack)) {
    throw std::domain_error("phase offset must be folded into [-pi/4, pi/4] first");
  }
  return 4.0 * penalty_ratio(std::abs(theta));
}

double phase_penalty_db(double theta) { return to_db(min_distance_sq(theta) / 4.0); }

double avg_phase_penalty_linear() {
  using boost::math::quadrature::gauss_kronrod;
  double error = 0.0;
  const double integral =
      gauss_kronrod<double, 21>::integrate(penalty_ratio, 0.0, kQuarterPi, 15, 1e-14, &error);
  return integral / kQuarterPi;
}

double avg_phase_penalty_db() { return to_db(avg_phase_penalty_linear()); }

double sir_1d_traditional_db(double alpha, int max_terms) {
  if (!(alpha > 1.0)) throw std::invalid_argument("path-loss exponent must exceed 1");
  if (max_terms < 1) throw std::invalid_argument("at least one series term is required");
  double interference = 0.0;
  for (int l = 0; l < max_terms; ++l) {
    const double base = 4.0 * l;
    const double term = 2.0 / std::pow(2.0 + base, alpha) + 1.0 / std::pow(3.0 + base, alpha) +
                        1.0 / std::pow(5.0 + base, alpha);
    interference += term;
    if (term < 1e-12) break;
  }
  return -to_db(interference);
}

double isi_variance(double dt_frac, const SinrContext& ctx) {
  ctx.validate();
  return TimeOffsetSampler(dt_frac, PulseShape{ctx.rolloff, ctx.truncation_symbols})
      .isi_tap_energy();
}

double sinr_linear(double dt_frac, const SinrContext& ctx) {
  const double p = raised_cosine(0.5 * dt_frac, 1.0, ctx.rolloff);
  return p * p / (isi_variance(dt_frac, ctx) + ctx.noise_var());
}

double sinr_penalty_db(double dt_frac, const SinrContext& ctx) {
  const double p = raised_cosine(0.5 * dt_frac, 1.0, ctx.rolloff);
  const double noise = ctx.noise_var();
  return to_db(p * p) - to_db((isi_variance(dt_frac, ctx) + noise) / noise);
}

double avg_sinr_penalty_db(const SinrContext& ctx, int num_points) {
  ctx.validate();
  if (num_points < 3) throw std::invalid_argument("Simpson rule needs at least 3 nodes");
  if (num_points % 2 == 0) ++num_points;
  const int intervals = num_points - 1;
  const double h = 1.0 / intervals;
  double sum = 0.0;
  for (int n = 0; n <= intervals; ++n) {
    const double w = (n == 0 || n == intervals) ? 1.0 : (n % 2 ? 4.0 : 2.0);
    sum += w * sinr_linear(-0.5 + n * h, ctx);
  }
  const double mean_sinr = sum * h / 3.0;
  return to_db(mean_sinr) - ctx.snr0_db;
}

std::vector<PenaltyCurve> emit_penalty_curves(const PenaltyGrid& grid, const SinrContext& ctx) {
  if (grid.phase_points < 2 || grid.time_points < 2) {
    throw std::invalid_argument("penalty grids need at least two points");
  }
  PenaltyCurve phase{"theta_rad", {}};
  for (int n = 0; n < grid.phase_points; ++n) {
    const double theta = -kQuarterPi + 2.0 * kQuarterPi * n / (grid.phase_points - 1);
    phase.points.emplace_back(theta, phase_penalty_db(theta));
  }
  PenaltyCurve time{"dt_over_T", {}};
  for (int n = 0; n < grid.time_points; ++n) {
    const double tau = -0.5 + double(n) / (grid.time_points - 1);
    time.points.emplace_back(tau, sinr_penalty_db(tau, ctx));
  }
  phase.validate();
  time.validate();
  return {phase, time};
}

}  // namespace pnc

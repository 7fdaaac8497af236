#include "pnc/impairments.hpp"

#include <cmath>
#include <stdexcept>

namespace pnc {

namespace {

constexpr double kQuarterPi = kPi / 4.0;
constexpr double kHalfPi = kPi / 2.0;
constexpr double kSingularityTol = 1e-9;

double sinc(double u) { return u == 0.0 ? 1.0 : std::sin(kPi * u) / (kPi * u); }

}  // namespace

void SyncOffsets::validate() const {
  if (!std::isfinite(delta_theta) || !std::isfinite(delta_omega)) {
    throw std::invalid_argument("phase and frequency offsets must be finite");
  }
  if (!(time_offset_frac >= -0.5 && time_offset_frac <= 0.5)) {
    throw std::invalid_argument("time offset must lie in [-0.5, 0.5] symbol periods");
  }
  if (!(symbol_duration > 0.0)) {
    throw std::invalid_argument("symbol duration must be positive");
  }
}

void SyncOffsets::require_single_impairment() const {
  if (time_offset_frac != 0.0 && (delta_theta != 0.0 || delta_omega != 0.0)) {
    throw std::invalid_argument(
        "time offset and carrier phase/frequency offset cannot be combined in one scenario");
  }
}

void PulseShape::validate() const {
  if (!(rolloff >= 0.0 && rolloff <= 1.0)) {
    throw std::invalid_argument("roll-off must lie in [0, 1]");
  }
  if (truncation_symbols < 1) {
    throw std::invalid_argument("truncation window must be at least one symbol");
  }
}

double PulseShape::operator()(double t, double symbol_duration) const {
  return raised_cosine(t, symbol_duration, rolloff);
}

FoldedPhase fold_phase(double theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("phase must be finite");
  double q = std::floor((theta + kQuarterPi) / kHalfPi);
  double folded = theta - q * kHalfPi;
  if (folded >= kQuarterPi) {
    folded -= kHalfPi;
    q += 1.0;
  } else if (folded < -kQuarterPi) {
    folded += kHalfPi;
    q -= 1.0;
  }
  int quadrant = int(std::fmod(q, 4.0));
  if (quadrant < 0) quadrant += 4;
  return {folded, quadrant};
}

Complex rotate_symbol(Complex symbol, int quadrant) {
  switch (quadrant) {
    case 0:
      return symbol;
    case 1:
      return {-symbol.imag(), symbol.real()};
    case 2:
      return -symbol;
    case 3:
      return {symbol.imag(), -symbol.real()};
    default:
      throw std::invalid_argument("quadrant must be 0..3");
  }
}

Complex superpose_phase_offset(Complex s1, Complex s3, double theta) {
  return s1 + s3 * Complex(std::cos(theta), std::sin(theta));
}

double raised_cosine(double t, double symbol_duration, double rolloff) {
  if (!(symbol_duration > 0.0)) throw std::invalid_argument("symbol duration must be positive");
  if (!(rolloff >= 0.0 && rolloff <= 1.0)) throw std::invalid_argument("roll-off must lie in [0, 1]");
  const double x = t / symbol_duration;
  if (std::abs(x) < kSingularityTol) return 1.0;
  if (x == std::round(x)) return 0.0;
  if (rolloff > 0.0) {
    const double edge = 1.0 / (2.0 * rolloff);
    if (std::abs(std::abs(x) - edge) < kSingularityTol) return kQuarterPi * sinc(edge);
  }
  const double bx = rolloff * x;
  return sinc(x) * std::cos(kPi * bx) / (1.0 - 4.0 * bx * bx);
}

double sample_with_time_offset(std::span<const double> a1, std::span<const double> a3,
                               std::size_t k, const SyncOffsets& offsets,
                               const PulseShape& pulse) {
  offsets.validate();
  pulse.validate();
  const auto window = std::size_t(pulse.truncation_symbols);
  if (k < window || k + window >= a1.size() || k + window >= a3.size()) {
    throw std::out_of_range("symbol index does not leave a full ISI window inside the sequences");
  }
  const double T = offsets.symbol_duration;
  const double half_dt = 0.5 * offsets.time_offset_frac * T;
  double value = (a1[k] + a3[k]) * pulse(half_dt, T) / 2.0;
  double isi = 0.0;
  for (std::size_t l = k - window; l <= k + window; ++l) {
    if (l == k) continue;
    const double d = (double(k) - double(l)) * T;
    isi += a1[l] * pulse(d + half_dt, T) + a3[l] * pulse(d - half_dt, T);
  }
  return value + 0.5 * isi;
}

TimeOffsetSampler::TimeOffsetSampler(double time_offset_frac, const PulseShape& pulse)
    : window_(pulse.truncation_symbols) {
  pulse.validate();
  SyncOffsets{.time_offset_frac = time_offset_frac}.validate();
  const double half_dt = 0.5 * time_offset_frac;
  taps1_.resize(2 * window_ + 1);
  taps3_.resize(2 * window_ + 1);
  for (int d = -window_; d <= window_; ++d) {
    taps1_[d + window_] = pulse(d + half_dt);
    taps3_[d + window_] = pulse(d - half_dt);
  }
}

double TimeOffsetSampler::sample_padded(std::span<const double> a1, std::span<const double> a3,
                                        std::size_t k) const {
  const auto n1 = std::ptrdiff_t(a1.size());
  const auto n3 = std::ptrdiff_t(a3.size());
  const auto kk = std::ptrdiff_t(k);
  double value = 0.0;
  for (int d = -window_; d <= window_; ++d) {
    const std::ptrdiff_t l = kk - d;
    if (l >= 0 && l < n1) value += a1[l] * taps1_[d + window_];
    if (l >= 0 && l < n3) value += a3[l] * taps3_[d + window_];
  }
  return 0.5 * value;
}

double TimeOffsetSampler::random_isi(RngStream& rng) const {
  double isi = 0.0;
  std::uint64_t word = 0;
  int left = 0;
  auto next_sign = [&] {
    if (left == 0) {
      word = rng.bits64();
      left = 64;
    }
    const double s = (word & 1u) ? 1.0 : -1.0;
    word >>= 1;
    --left;
    return s;
  };
  for (int d = -window_; d <= window_; ++d) {
    if (d == 0) continue;
    isi += next_sign() * taps1_[d + window_];
    isi += next_sign() * taps3_[d + window_];
  }
  return 0.5 * isi;
}

double TimeOffsetSampler::isi_tap_energy() const {
  double e = 0.0;
  for (int d = -window_; d <= window_; ++d) {
    if (d == 0) continue;
    e += taps1_[d + window_] * taps1_[d + window_] + taps3_[d + window_] * taps3_[d + window_];
  }
  return e;
}

Observation add_awgn(Complex clean, double noise_var, RngStream& rng) {
  if (!(noise_var >= 0.0)) throw std::invalid_argument("noise variance must be non-negative");
  if (noise_var == 0.0) return {clean.real(), clean.imag(), 0.0};
  const double sigma = std::sqrt(noise_var);
  const double ni = sigma * rng.normal();
  const double nq = sigma * rng.normal();
  return {clean.real() + ni, clean.imag() + nq, noise_var};
}

std::vector<FoldedPhase> phase_ramp(const SyncOffsets& offsets, std::size_t num_symbols) {
  offsets.validate();
  std::vector<FoldedPhase> out;
  out.reserve(num_symbols);
  for (std::size_t k = 0; k < num_symbols; ++k) {
    out.push_back(fold_phase(offsets.delta_theta + double(k) * offsets.delta_omega));
  }
  return out;
}

std::vector<Complex> superpose_frame(std::span<const QpskSymbol> s1,
                                     std::span<const QpskSymbol> s3,
                                     std::span<const double> thetas) {
  if (s1.size() != s3.size() || s1.size() != thetas.size()) {
    throw std::invalid_argument("frame lengths differ");
  }
  std::vector<Complex> out(s1.size());
  for (std::size_t k = 0; k < s1.size(); ++k) {
    out[k] = superpose_phase_offset(s1[k].to_complex(), s3[k].to_complex(), thetas[k]);
  }
  return out;
}

}  // namespace pnc

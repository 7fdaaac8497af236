#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace pnc {

/// Data bits carried by one QPSK symbol: in-phase and quadrature.
struct BitPair {
  std::uint8_t i_bit = 0;
  std::uint8_t q_bit = 0;

  friend bool operator==(const BitPair&, const BitPair&) = default;
};

/// Antipodal amplitudes of one QPSK symbol, each in {-1, +1}.
struct QpskSymbol {
  int a = -1;
  int b = -1;

  friend bool operator==(const QpskSymbol&, const QpskSymbol&) = default;

  std::complex<double> to_complex() const { return {double(a), double(b)}; }
};

/// Noiseless per-dimension sum of two QPSK symbols; each level in {-2, 0, 2}.
struct SuperposedLevel {
  int i_level = 0;
  int q_level = 0;

  friend bool operator==(const SuperposedLevel&, const SuperposedLevel&) = default;
};

/// Index 0..3 of a bit pair, in-phase bit as the high bit.
constexpr int class_index(BitPair bits) { return (bits.i_bit << 1) | bits.q_bit; }
constexpr BitPair class_bits(int index) {
  return {std::uint8_t((index >> 1) & 1), std::uint8_t(index & 1)};
}

BitPair make_bits(int i_bit, int q_bit);

QpskSymbol qpsk_modulate(BitPair bits);
SuperposedLevel superpose_levels(QpskSymbol s1, QpskSymbol s3);

/// Relay demapping: a level of +-2 means equal bits (XOR 0), a level of 0 means XOR 1.
/// Throws std::invalid_argument for levels outside {-2, 0, 2}.
BitPair pnc_xor_of_levels(SuperposedLevel level);

/// The relay broadcasts the XOR bits with ordinary QPSK mapping.
QpskSymbol relay_remap(BitPair xor_bits);

/// Recovers the partner's bits from the relay broadcast and the node's own bits.
BitPair end_node_extract(BitPair relay_bits, BitPair own_bits);

BitPair xor_bits(BitPair x, BitPair y);

// Frame-level lifts of the symbol operations.
std::vector<BitPair> xor_frames(std::span<const BitPair> x, std::span<const BitPair> y);
std::vector<QpskSymbol> modulate_frame(std::span<const BitPair> bits);

}  // namespace pnc

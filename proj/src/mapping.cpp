#include "pnc/mapping.hpp"

#include <stdexcept>
#include <string>

namespace pnc {

namespace {

std::uint8_t level_to_xor(int level) {
  switch (level) {
    case -2:
    case 2:
      return 0;
    case 0:
      return 1;
    default:
      throw std::invalid_argument("superposed level must be -2, 0 or 2, got " +
                                  std::to_string(level));
  }
}

}  // namespace

BitPair make_bits(int i_bit, int q_bit) {
  if ((i_bit != 0 && i_bit != 1) || (q_bit != 0 && q_bit != 1)) {
    throw std::invalid_argument("bits must be 0 or 1");
  }
  return {std::uint8_t(i_bit), std::uint8_t(q_bit)};
}

QpskSymbol qpsk_modulate(BitPair bits) {
  return {2 * int(bits.i_bit) - 1, 2 * int(bits.q_bit) - 1};
}

SuperposedLevel superpose_levels(QpskSymbol s1, QpskSymbol s3) {
  return {s1.a + s3.a, s1.b + s3.b};
}

BitPair pnc_xor_of_levels(SuperposedLevel level) {
  return {level_to_xor(level.i_level), level_to_xor(level.q_level)};
}

QpskSymbol relay_remap(BitPair xor_bits) { return qpsk_modulate(xor_bits); }

BitPair xor_bits(BitPair x, BitPair y) {
  return {std::uint8_t(x.i_bit ^ y.i_bit), std::uint8_t(x.q_bit ^ y.q_bit)};
}

BitPair end_node_extract(BitPair relay_bits, BitPair own_bits) {
  return xor_bits(relay_bits, own_bits);
}

std::vector<BitPair> xor_frames(std::span<const BitPair> x, std::span<const BitPair> y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("frames must have equal length");
  }
  std::vector<BitPair> out(x.size());
  for (std::size_t n = 0; n < x.size(); ++n) out[n] = xor_bits(x[n], y[n]);
  return out;
}

std::vector<QpskSymbol> modulate_frame(std::span<const BitPair> bits) {
  std::vector<QpskSymbol> out;
  out.reserve(bits.size());
  for (auto b : bits) out.push_back(qpsk_modulate(b));
  return out;
}

}  // namespace pnc

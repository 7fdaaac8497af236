#include "pnc/rng.hpp"

#include <vector>

namespace pnc {

namespace {

std::mt19937_64 seeded_engine(std::uint64_t master_seed, std::span<const std::uint64_t> path) {
  std::vector<std::uint32_t> words;
  words.reserve(2 + 2 * path.size());
  auto push = [&words](std::uint64_t v) {
    words.push_back(std::uint32_t(v & 0xffffffffu));
    words.push_back(std::uint32_t(v >> 32));
  };
  push(master_seed);
  for (auto p : path) push(p);
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::initializer_list<std::uint64_t> path)
    : engine_(seeded_engine(master_seed, std::span(path.begin(), path.size()))) {}

RngStream::RngStream(std::uint64_t master_seed, std::span<const std::uint64_t> path)
    : engine_(seeded_engine(master_seed, path)) {}

}  // namespace pnc

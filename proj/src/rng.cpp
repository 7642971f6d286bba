#include "dissectree/rng.hpp"

namespace dissectree {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng make_stream(std::uint64_t seed, std::uint64_t slot, std::uint64_t trial) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ (slot * 0xd1342543de82ef95ULL + 1));
  h = mix64(h ^ (trial * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                    static_cast<std::uint32_t>(slot), static_cast<std::uint32_t>(trial)};
  return Rng(seq);
}

}  // namespace dissectree

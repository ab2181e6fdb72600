#include "shortcut_splits/rng.hpp"

#include <utility>

namespace shortcut_splits {

std::uint64_t uniform_index(DeterministicRng& rng, std::uint64_t bound) {
  // 2^64 mod bound, the size of the biased low region.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

double uniform_unit(DeterministicRng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void fisher_yates_shuffle(std::vector<std::string>& items, DeterministicRng& rng) {
  if (items.size() < 2) return;
  for (std::size_t i = items.size() - 1; i > 0; --i) {
    const std::uint64_t j = uniform_index(rng, i + 1);
    std::swap(items[i], items[j]);
  }
}

std::vector<std::string> sample_without_replacement(std::vector<std::string> pool,
                                                    std::size_t k,
                                                    DeterministicRng& rng) {
  if (k > pool.size()) k = pool.size();
  for (std::size_t i = 0; i < k; ++i) {
    const std::uint64_t j = i + uniform_index(rng, pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t derive_subseed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index));
}

}  // namespace shortcut_splits

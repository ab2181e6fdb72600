#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace shortcut_splits {

/// Generator behind every seeded operation. std::mt19937_64 has a fully
/// specified algorithm, so identical seeds give identical streams on every
/// platform and standard library.
using DeterministicRng = std::mt19937_64;

/// Unbiased draw from [0, bound) by rejection sampling. Avoids
/// std::uniform_int_distribution, whose mapping is implementation-defined.
std::uint64_t uniform_index(DeterministicRng& rng, std::uint64_t bound);

/// Uniform double in [0, 1) from the top 53 bits of one draw.
double uniform_unit(DeterministicRng& rng);

/// In-place Fisher-Yates shuffle: for i = n-1 .. 1 swap items[i] with
/// items[uniform_index(rng, i+1)].
void fisher_yates_shuffle(std::vector<std::string>& items, DeterministicRng& rng);

/// Uniform sample of k items without replacement: the first k positions of a
/// partial Fisher-Yates pass over the pool, in draw order.
std::vector<std::string> sample_without_replacement(std::vector<std::string> pool,
                                                    std::size_t k,
                                                    DeterministicRng& rng);

/// SplitMix64 finalizer; used to derive independent per-index sub-seeds.
std::uint64_t splitmix64(std::uint64_t x);

std::uint64_t derive_subseed(std::uint64_t seed, std::uint64_t index);

}  // namespace shortcut_splits

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace shortcut_splits {

/// FNV-1a 64-bit hash; used for manifest content digests.
std::uint64_t fnv1a64(std::string_view bytes);
std::uint64_t fnv1a64_file(const std::filesystem::path& path);
std::string to_hex(std::uint64_t value);

}  // namespace shortcut_splits

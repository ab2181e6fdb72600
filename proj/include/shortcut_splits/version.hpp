#pragma once

namespace shortcut_splits {

inline constexpr const char* kToolName = "shortcut-splits";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace shortcut_splits

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace shortcut_splits {

/// Lowercases ASCII letters; bytes >= 0x80 pass through untouched.
std::string ascii_lower(std::string_view s);

/// Splits text into tokens. ASCII letters are lowercased, apostrophes are
/// dropped ("what's" -> "whats"), every other ASCII byte that is not a letter
/// or digit separates tokens, and bytes >= 0x80 are kept verbatim inside
/// tokens.
std::vector<std::string> tokenize_text(std::string_view text);

}  // namespace shortcut_splits

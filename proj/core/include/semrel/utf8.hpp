#pragma once

#include <string>
#include <string_view>

namespace semrel {

/// Replaces every invalid UTF-8 sequence with U+FFFD. Valid input is returned unchanged.
std::string sanitize_utf8(std::string_view bytes);

/// Decodes the code point starting at `pos` of well-formed UTF-8 and advances `pos`.
char32_t next_code_point(std::string_view text, std::size_t& pos);

}  // namespace semrel

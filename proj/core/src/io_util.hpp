#pragma once

// Line-oriented parsing helpers shared by the file formats.

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semrel/utf8.hpp"

namespace semrel::detail {

/// Reads lines with CR stripped and invalid UTF-8 replaced; counts line numbers from 1.
class LineReader {
  public:
    explicit LineReader(std::istream& in) : in_(in) {}

    bool next(std::string& line)
    {
        if (!std::getline(in_, raw_)) {
            return false;
        }
        ++line_number_;
        if (!raw_.empty() && raw_.back() == '\r') {
            raw_.pop_back();
        }
        line = sanitize_utf8(raw_);
        return true;
    }

    [[nodiscard]] std::size_t line_number() const noexcept { return line_number_; }

  private:
    std::istream& in_;
    std::string raw_;
    std::size_t line_number_ = 0;
};

inline bool is_space(char c)
{
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && is_space(s.front())) {
        s.remove_prefix(1);
    }
    while (!s.empty() && is_space(s.back())) {
        s.remove_suffix(1);
    }
    return s;
}

inline bool is_blank_or_comment(std::string_view line)
{
    const auto t = trim(line);
    return t.empty() || t.front() == '#';
}

inline std::vector<std::string_view> split_whitespace(std::string_view s)
{
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && is_space(s[i])) {
            ++i;
        }
        const std::size_t start = i;
        while (i < s.size() && !is_space(s[i])) {
            ++i;
        }
        if (i > start) {
            fields.push_back(s.substr(start, i - start));
        }
    }
    return fields;
}

inline std::vector<std::string_view> split_on(std::string_view s, char delimiter)
{
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(delimiter, start);
        if (pos == std::string_view::npos) {
            fields.push_back(s.substr(start));
            return fields;
        }
        fields.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

template <typename Int>
std::optional<Int> parse_int(std::string_view s)
{
    Int value{};
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (s.empty() || ec != std::errc{} || ptr != end) {
        return std::nullopt;
    }
    return value;
}

inline std::optional<double> parse_double(std::string_view s)
{
    double value = 0.0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (s.empty() || ec != std::errc{} || ptr != end) {
        return std::nullopt;
    }
    return value;
}

/// Fixed notation with `decimals` digits, locale independent.
inline std::string format_fixed(double value, int decimals)
{
    char buffer[64];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::fixed, decimals);
    if (ec != std::errc{}) {
        return "nan";
    }
    std::string out(buffer, ptr);
    if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) {
        out.erase(0, 1);
    }
    return out;
}

/// Shortest representation that parses back to the same double.
inline std::string format_shortest(double value)
{
    char buffer[64];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    return ec == std::errc{} ? std::string(buffer, ptr) : std::string("nan");
}

/// Emits each line of `header` prefixed with "# ".
inline void write_header(std::ostream& out, const std::string& header)
{
    if (header.empty()) {
        return;
    }
    std::size_t start = 0;
    while (start <= header.size()) {
        const std::size_t pos = header.find('\n', start);
        const auto line = std::string_view(header).substr(start, pos == std::string::npos ? std::string::npos : pos - start);
        if (!line.empty() || pos != std::string::npos) {
            out << "# " << line << '\n';
        }
        if (pos == std::string::npos) {
            break;
        }
        start = pos + 1;
        if (start == header.size()) {
            break;
        }
    }
}

inline bool has_whitespace(std::string_view s)
{
    for (const char c : s) {
        if (is_space(c)) {
            return true;
        }
    }
    return false;
}

}  // namespace semrel::detail

#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace styleeq {

enum class Style : int { SciFi = 0, Philosophy = 1, Gothic = 2 };

inline constexpr int kNumStyles = 3;
inline constexpr std::array<Style, kNumStyles> kAllStyles = {
    Style::SciFi, Style::Philosophy, Style::Gothic};

inline int style_index(Style s) { return static_cast<int>(s); }

// Serialized names: "scifi", "philosophy", "gothic".
std::string_view style_name(Style s);
std::optional<Style> parse_style(std::string_view name);

// Single-letter abbreviation used in report headers (s, p, g).
char style_letter(Style s);

}  // namespace styleeq

#include "styleeq/style.h"

namespace styleeq {

std::string_view style_name(Style s) {
  switch (s) {
    case Style::SciFi:
      return "scifi";
    case Style::Philosophy:
      return "philosophy";
    case Style::Gothic:
      return "gothic";
  }
  return "?";
}

std::optional<Style> parse_style(std::string_view name) {
  for (Style s : kAllStyles) {
    if (style_name(s) == name) return s;
  }
  return std::nullopt;
}

char style_letter(Style s) { return style_name(s)[0]; }

}  // namespace styleeq

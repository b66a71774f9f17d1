#include <stdexcept>

#include "styleeq/stylometry.h"

namespace styleeq {

std::string_view ablation_name(AblationMode m) {
  switch (m) {
    case AblationMode::All:
      return "all";
    case AblationMode::AblatedN:
      return "ablated-n";
    case AblationMode::AblatedNV:
      return "ablated-nv";
    case AblationMode::AblatedNVA:
      return "ablated-nva";
    case AblationMode::ContentOnly:
      return "content-only";
  }
  return "?";
}

std::optional<AblationMode> parse_ablation(std::string_view name) {
  for (AblationMode m : kAllAblations) {
    if (ablation_name(m) == name) return m;
  }
  return std::nullopt;
}

std::vector<std::string> ablate(const Sentence& s, AblationMode mode, bool keep_propn) {
  std::vector<std::string> out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const std::string& coarse = s.coarse_pos[i];
    const std::string& fine = s.fine_pos[i];
    const bool propn = coarse == "PROPN" || fine == "NNP" || fine == "NNPS";
    const bool noun = coarse == "NOUN";
    const bool verb = coarse == "VERB";
    const bool adj = coarse == "ADJ";
    if (mode == AblationMode::ContentOnly) {
      if (noun || verb || adj || (keep_propn && propn)) out.push_back(s.tokens[i]);
      continue;
    }
    if (propn) {
      out.emplace_back("PROPN");
    } else if (noun && mode != AblationMode::All) {
      out.emplace_back("NOUN");
    } else if (verb && (mode == AblationMode::AblatedNV || mode == AblationMode::AblatedNVA)) {
      out.emplace_back("VERB");
    } else if (adj && mode == AblationMode::AblatedNVA) {
      out.emplace_back("ADJ");
    } else {
      out.push_back(s.tokens[i]);
    }
  }
  return out;
}

}  // namespace styleeq

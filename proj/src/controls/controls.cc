#include "styleeq/controls.h"

#include <stdexcept>

#include "styleeq/annotate.h"

namespace styleeq {
namespace {

constexpr std::array<std::string_view, kNumControls> kNames = {
    "S",          "SBAR",       "ADVP",         "FRAG",        "conjunction",
    "determiner", "3rdNeutralPer", "3rdFemalePer", "3rdMalePer", "1stPer",
    "2ndPer",     "3rdPer",     "helperVerbs",  "negation",    "simplePrep",
    "positionPrep", "punctuation"};

bool is_third_person_subset(Control c) {
  return c == Control::ThirdNeutralPer || c == Control::ThirdFemalePer ||
         c == Control::ThirdMalePer;
}

}  // namespace

std::string_view control_name(Control c) { return kNames[control_index(c)]; }

std::optional<Control> parse_control(std::string_view name) {
  for (int i = 0; i < kNumControls; ++i) {
    if (kNames[i] == name) return control_at(i);
  }
  return std::nullopt;
}

const std::array<Control, kNumControls>& all_controls() {
  static const auto all = [] {
    std::array<Control, kNumControls> a{};
    for (int i = 0; i < kNumControls; ++i) a[i] = control_at(i);
    return a;
  }();
  return all;
}

const std::array<Control, kNumWordListControls>& word_list_controls() {
  static const auto lists = [] {
    std::array<Control, kNumWordListControls> a{};
    for (int i = 0; i < kNumWordListControls; ++i) a[i] = control_at(i + 4);
    return a;
  }();
  return lists;
}

bool controls_nested(Control a, Control b) {
  return (a == Control::ThirdPer && is_third_person_subset(b)) ||
         (b == Control::ThirdPer && is_third_person_subset(a));
}

ControlVector ControlVector::from_array(const std::vector<int>& values) {
  if (values.size() != kNumControls) {
    throw std::invalid_argument("control vector needs exactly 17 entries");
  }
  ControlVector z;
  for (int i = 0; i < kNumControls; ++i) {
    if (values[i] < 0) throw std::invalid_argument("control counts must be non-negative");
    z.counts[i] = values[i];
  }
  return z;
}

ControlVector extract_controls(const std::vector<std::string>& tokens, const WordListSet& w) {
  ControlVector z;
  z.parse_absent = true;
  for (const std::string& tok : tokens) {
    const std::string lower = to_lower(tok);
    if (!w.in_any(lower)) continue;
    for (Control c : word_list_controls()) {
      if (w.contains(c, lower)) ++z[c];
    }
  }
  return z;
}

ControlVector extract_controls(const Sentence& s, const WordListSet& w) {
  ControlVector z = extract_controls(s.tokens, w);
  if (s.parse_counts) {
    z[Control::S] = s.parse_counts->s;
    z[Control::SBAR] = s.parse_counts->sbar;
    z[Control::ADVP] = s.parse_counts->advp;
    z[Control::FRAG] = s.parse_counts->frag;
    z.parse_absent = false;
  }
  return z;
}

ContentSequence strip_control_words(const Sentence& s, const WordListSet& w) {
  ContentSequence out;
  out.original_length = s.size();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (w.in_any(to_lower(s.tokens[i]))) continue;
    out.tokens.push_back(s.tokens[i]);
    out.lemmas.push_back(s.lemmas[i]);
    out.fine_pos.push_back(s.fine_pos[i]);
    out.coarse_pos.push_back(s.coarse_pos[i]);
  }
  out.all_stripped = out.tokens.empty();
  return out;
}

int bucket_count(int count) {
  if (count < 0) throw std::invalid_argument("bucket_count: negative count");
  return count > kMaxBucket ? kMaxBucket : count;
}

std::optional<ControlVector> perturb(const ControlVector& z, Control c, int delta) {
  const int target = z[c] + delta;
  if (target < 0) return std::nullopt;
  ControlVector out = z;
  out[c] = target;
  return out;
}

std::optional<ControlVector> perturb(const ControlVector& z, std::string_view control,
                                     int delta) {
  auto c = parse_control(control);
  if (!c) throw std::invalid_argument("unknown control \"" + std::string(control) + "\"");
  return perturb(z, *c, delta);
}

}  // namespace styleeq

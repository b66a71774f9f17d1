#include "styleeq/annotate.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>

namespace styleeq {
namespace {

using Table = std::unordered_map<std::string_view, std::string_view>;

const Table& coarse_table() {
  static const Table table = {
      {"CC", "CCONJ"},   {"CD", "NUM"},     {"DT", "DET"},     {"EX", "PRON"},
      {"FW", "X"},       {"IN", "ADP"},     {"JJ", "ADJ"},     {"JJR", "ADJ"},
      {"JJS", "ADJ"},    {"LS", "X"},       {"MD", "AUX"},     {"NN", "NOUN"},
      {"NNS", "NOUN"},   {"NNP", "PROPN"},  {"NNPS", "PROPN"}, {"PDT", "DET"},
      {"POS", "PART"},   {"PRP", "PRON"},   {"PRP$", "PRON"},  {"RB", "ADV"},
      {"RBR", "ADV"},    {"RBS", "ADV"},    {"RP", "ADP"},     {"SYM", "SYM"},
      {"TO", "PART"},    {"UH", "INTJ"},    {"VB", "VERB"},    {"VBD", "VERB"},
      {"VBG", "VERB"},   {"VBN", "VERB"},   {"VBP", "VERB"},   {"VBZ", "VERB"},
      {"WDT", "DET"},    {"WP", "PRON"},    {"WP$", "PRON"},   {"WRB", "ADV"},
      {".", "PUNCT"},    {",", "PUNCT"},    {":", "PUNCT"},    {"``", "PUNCT"},
      {"''", "PUNCT"},   {"-LRB-", "PUNCT"}, {"-RRB-", "PUNCT"}, {"HYPH", "PUNCT"},
      {"NFP", "PUNCT"},  {"$", "SYM"},      {"#", "SYM"},      {"AFX", "ADJ"},
      {"ADD", "X"},      {"GW", "X"},       {"XX", "X"},       {"NIL", "X"},
  };
  return table;
}

// Closed-class and high-frequency open-class words.
const Table& tag_lexicon() {
  static const Table table = {
      // personal pronouns
      {"i", "PRP"}, {"me", "PRP"}, {"you", "PRP"}, {"he", "PRP"}, {"him", "PRP"},
      {"she", "PRP"}, {"it", "PRP"}, {"we", "PRP"}, {"us", "PRP"}, {"they", "PRP"},
      {"them", "PRP"}, {"myself", "PRP"}, {"yourself", "PRP"}, {"himself", "PRP"},
      {"herself", "PRP"}, {"itself", "PRP"}, {"ourselves", "PRP"},
      {"yourselves", "PRP"}, {"themselves", "PRP"}, {"thou", "PRP"}, {"thee", "PRP"},
      {"ye", "PRP"}, {"mine", "PRP"}, {"yours", "PRP"}, {"hers", "PRP"},
      {"ours", "PRP"}, {"theirs", "PRP"}, {"one", "CD"},
      // possessives
      {"my", "PRP$"}, {"your", "PRP$"}, {"his", "PRP$"}, {"her", "PRP$"},
      {"its", "PRP$"}, {"our", "PRP$"}, {"their", "PRP$"}, {"thy", "PRP$"},
      {"thine", "PRP$"},
      // determiners
      {"the", "DT"}, {"a", "DT"}, {"an", "DT"}, {"this", "DT"}, {"that", "DT"},
      {"these", "DT"}, {"those", "DT"}, {"every", "DT"}, {"each", "DT"},
      {"some", "DT"}, {"any", "DT"}, {"no", "DT"}, {"all", "DT"}, {"both", "DT"},
      {"either", "DT"}, {"neither", "DT"}, {"another", "DT"},
      // conjunctions
      {"and", "CC"}, {"or", "CC"}, {"but", "CC"}, {"nor", "CC"}, {"yet", "CC"},
      {"so", "CC"}, {"&", "CC"},
      // prepositions and subordinators
      {"of", "IN"}, {"in", "IN"}, {"on", "IN"}, {"at", "IN"}, {"by", "IN"},
      {"for", "IN"}, {"with", "IN"}, {"from", "IN"}, {"into", "IN"}, {"onto", "IN"},
      {"upon", "IN"}, {"about", "IN"}, {"above", "IN"}, {"across", "IN"},
      {"after", "IN"}, {"against", "IN"}, {"along", "IN"}, {"alongside", "IN"},
      {"among", "IN"}, {"amongst", "IN"}, {"amid", "IN"}, {"around", "IN"},
      {"as", "IN"}, {"before", "IN"}, {"behind", "IN"}, {"below", "IN"},
      {"beneath", "IN"}, {"beside", "IN"}, {"besides", "IN"}, {"between", "IN"},
      {"beyond", "IN"}, {"despite", "IN"}, {"during", "IN"}, {"except", "IN"},
      {"inside", "IN"}, {"like", "IN"}, {"near", "IN"}, {"off", "IN"},
      {"opposite", "IN"}, {"outside", "IN"}, {"over", "IN"}, {"past", "IN"},
      {"per", "IN"}, {"since", "IN"}, {"than", "IN"}, {"through", "IN"},
      {"throughout", "IN"}, {"till", "IN"}, {"toward", "IN"}, {"towards", "IN"},
      {"under", "IN"}, {"underneath", "IN"}, {"until", "IN"}, {"unlike", "IN"},
      {"via", "IN"}, {"within", "IN"}, {"without", "IN"}, {"because", "IN"},
      {"if", "IN"}, {"whether", "IN"}, {"though", "IN"}, {"although", "IN"},
      {"while", "IN"}, {"whereas", "IN"}, {"unless", "IN"}, {"round", "IN"},
      {"down", "RP"}, {"up", "RP"}, {"out", "RP"}, {"away", "RB"},
      {"to", "TO"},
      // modals
      {"can", "MD"}, {"could", "MD"}, {"may", "MD"}, {"might", "MD"},
      {"must", "MD"}, {"shall", "MD"}, {"should", "MD"}, {"will", "MD"},
      {"would", "MD"}, {"ca", "MD"}, {"wo", "MD"}, {"sha", "MD"}, {"'ll", "MD"},
      {"'d", "MD"},
      // be / have / do
      {"be", "VB"}, {"am", "VBP"}, {"is", "VBZ"}, {"are", "VBP"}, {"was", "VBD"},
      {"were", "VBD"}, {"been", "VBN"}, {"being", "VBG"}, {"'m", "VBP"},
      {"'re", "VBP"}, {"have", "VBP"}, {"has", "VBZ"}, {"had", "VBD"},
      {"having", "VBG"}, {"'ve", "VBP"}, {"do", "VBP"}, {"does", "VBZ"},
      {"did", "VBD"}, {"done", "VBN"}, {"doing", "VBG"}, {"'s", "POS"},
      // adverbs
      {"not", "RB"}, {"n't", "RB"}, {"never", "RB"}, {"here", "RB"},
      {"there", "RB"}, {"very", "RB"}, {"too", "RB"}, {"also", "RB"},
      {"always", "RB"}, {"often", "RB"}, {"now", "RB"}, {"then", "RB"},
      {"still", "RB"}, {"even", "RB"}, {"only", "RB"}, {"just", "RB"},
      {"again", "RB"}, {"ever", "RB"}, {"perhaps", "RB"}, {"already", "RB"},
      {"soon", "RB"}, {"indeed", "RB"}, {"thus", "RB"}, {"hence", "RB"},
      {"however", "RB"}, {"once", "RB"}, {"almost", "RB"}, {"quite", "RB"},
      {"rather", "RB"}, {"alone", "RB"}, {"therefore", "RB"}, {"thereto", "RB"},
      {"forever", "RB"}, {"tonight", "RB"}, {"together", "RB"}, {"more", "RBR"},
      {"most", "RBS"}, {"less", "RBR"}, {"least", "RBS"},
      // wh-words
      {"which", "WDT"}, {"whatever", "WDT"}, {"who", "WP"}, {"whom", "WP"},
      {"what", "WP"}, {"whose", "WP$"}, {"when", "WRB"}, {"where", "WRB"},
      {"why", "WRB"}, {"how", "WRB"},
      // negative pronouns and interjections
      {"none", "NN"}, {"nothing", "NN"}, {"nobody", "NN"}, {"everything", "NN"},
      {"something", "NN"}, {"anything", "NN"}, {"oh", "UH"}, {"ah", "UH"},
      {"alas", "UH"},
      // numbers
      {"two", "CD"}, {"three", "CD"}, {"four", "CD"}, {"five", "CD"},
      {"six", "CD"}, {"seven", "CD"}, {"eight", "CD"}, {"nine", "CD"},
      {"ten", "CD"}, {"hundred", "CD"}, {"thousand", "CD"}, {"million", "CD"},
      // frequent adjectives
      {"good", "JJ"}, {"bad", "JJ"}, {"old", "JJ"}, {"new", "JJ"}, {"great", "JJ"},
      {"little", "JJ"}, {"long", "JJ"}, {"dark", "JJ"}, {"cold", "JJ"},
      {"strange", "JJ"}, {"small", "JJ"}, {"large", "JJ"}, {"red", "JJ"},
      {"black", "JJ"}, {"white", "JJ"}, {"true", "JJ"}, {"pale", "JJ"},
      {"silent", "JJ"}, {"ancient", "JJ"}, {"human", "JJ"}, {"free", "JJ"},
      {"certain", "JJ"}, {"whole", "JJ"}, {"own", "JJ"}, {"other", "JJ"},
      {"such", "JJ"}, {"same", "JJ"}, {"many", "JJ"}, {"much", "JJ"},
      {"last", "JJ"}, {"first", "JJ"}, {"young", "JJ"}, {"deep", "JJ"},
      {"high", "JJ"}, {"vast", "JJ"}, {"wild", "JJ"}, {"grey", "JJ"},
      {"gray", "JJ"}, {"bright", "JJ"}, {"distant", "JJ"}, {"empty", "JJ"},
      {"dead", "JJ"}, {"alive", "JJ"}, {"real", "JJ"}, {"moral", "JJ"},
      {"alien", "JJ"}, {"green", "JJ"}, {"blue", "JJ"}, {"faint", "JJ"},
      {"awful", "JJ"}, {"gloomy", "JJ"}, {"eternal", "JJ"}, {"wise", "JJ"},
      {"possible", "JJ"}, {"necessary", "JJ"}, {"simple", "JJ"}, {"pure", "JJ"},
      {"hollow", "JJ"}, {"cruel", "JJ"}, {"weary", "JJ"}, {"lonely", "JJ"},
      {"heavy", "JJ"}, {"quick", "JJ"}, {"slow", "JJ"}, {"beet", "NN"},
      // irregular past tense and participles
      {"slept", "VBD"}, {"fell", "VBD"}, {"came", "VBD"}, {"went", "VBD"},
      {"saw", "VBD"}, {"said", "VBD"}, {"told", "VBD"}, {"took", "VBD"},
      {"made", "VBD"}, {"felt", "VBD"}, {"thought", "VBD"}, {"knew", "VBD"},
      {"found", "VBD"}, {"gave", "VBD"}, {"stood", "VBD"}, {"ran", "VBD"},
      {"rose", "VBD"}, {"spoke", "VBD"}, {"wrote", "VBD"}, {"began", "VBD"},
      {"became", "VBD"}, {"left", "VBD"}, {"held", "VBD"}, {"brought", "VBD"},
      {"heard", "VBD"}, {"lay", "VBD"}, {"sat", "VBD"}, {"drew", "VBD"},
      {"grew", "VBD"}, {"broke", "VBD"}, {"struck", "VBD"}, {"shook", "VBD"},
      {"flew", "VBD"}, {"wore", "VBD"}, {"hid", "VBD"}, {"led", "VBD"},
      {"met", "VBD"}, {"kept", "VBD"}, {"lost", "VBD"}, {"sent", "VBD"},
      {"built", "VBD"}, {"spent", "VBD"}, {"fought", "VBD"}, {"caught", "VBD"},
      {"taught", "VBD"}, {"sought", "VBD"}, {"bought", "VBD"}, {"got", "VBD"},
      {"shone", "VBD"}, {"crept", "VBD"}, {"swept", "VBD"}, {"wept", "VBD"},
      {"fled", "VBD"}, {"hung", "VBD"}, {"sang", "VBD"}, {"drank", "VBD"},
      {"woke", "VBD"}, {"understood", "VBD"}, {"meant", "VBD"}, {"seen", "VBN"},
      {"known", "VBN"}, {"given", "VBN"}, {"taken", "VBN"}, {"spoken", "VBN"},
      {"written", "VBN"}, {"gone", "VBN"}, {"begun", "VBN"}, {"broken", "VBN"},
      {"forgotten", "VBN"}, {"hidden", "VBN"}, {"risen", "VBN"}, {"fallen", "VBN"},
      // frequent base-form verbs
      {"know", "VBP"}, {"think", "VBP"}, {"see", "VBP"}, {"say", "VBP"},
      {"come", "VBP"}, {"go", "VBP"}, {"make", "VBP"}, {"take", "VBP"},
      {"feel", "VBP"}, {"seem", "VBP"}, {"exist", "VBP"}, {"believe", "VBP"},
      {"remain", "VBP"}, {"become", "VBP"}, {"appear", "VBP"}, {"stand", "VBP"},
      {"hear", "VBP"}, {"find", "VBP"}, {"give", "VBP"}, {"tell", "VBP"},
      {"live", "VBP"}, {"die", "VBP"}, {"follow", "VBP"}, {"depend", "VBP"},
      {"reason", "NN"}, {"mind", "NN"}, {"truth", "NN"}, {"nature", "NN"},
  };
  return table;
}

const Table& lemma_exceptions() {
  static const Table table = {
      {"am", "be"}, {"is", "be"}, {"are", "be"}, {"was", "be"}, {"were", "be"},
      {"been", "be"}, {"being", "be"}, {"'m", "be"}, {"'re", "be"},
      {"has", "have"}, {"had", "have"}, {"having", "have"}, {"'ve", "have"},
      {"does", "do"}, {"did", "do"}, {"done", "do"}, {"doing", "do"},
      {"n't", "not"}, {"ca", "can"}, {"wo", "will"}, {"sha", "shall"},
      {"'ll", "will"}, {"'d", "would"}, {"me", "i"}, {"him", "he"}, {"them", "they"},
      {"us", "we"}, {"slept", "sleep"}, {"fell", "fall"}, {"came", "come"},
      {"went", "go"}, {"saw", "see"}, {"said", "say"}, {"told", "tell"},
      {"took", "take"}, {"made", "make"}, {"felt", "feel"}, {"thought", "think"},
      {"knew", "know"}, {"found", "find"}, {"gave", "give"}, {"stood", "stand"},
      {"ran", "run"}, {"rose", "rise"}, {"spoke", "speak"}, {"wrote", "write"},
      {"began", "begin"}, {"became", "become"}, {"left", "leave"}, {"held", "hold"},
      {"brought", "bring"}, {"heard", "hear"}, {"lay", "lie"}, {"sat", "sit"},
      {"drew", "draw"}, {"grew", "grow"}, {"broke", "break"}, {"struck", "strike"},
      {"shook", "shake"}, {"flew", "fly"}, {"wore", "wear"}, {"hid", "hide"},
      {"led", "lead"}, {"met", "meet"}, {"kept", "keep"}, {"lost", "lose"},
      {"sent", "send"}, {"built", "build"}, {"spent", "spend"}, {"fought", "fight"},
      {"caught", "catch"}, {"taught", "teach"}, {"sought", "seek"},
      {"bought", "buy"}, {"got", "get"}, {"shone", "shine"}, {"crept", "creep"},
      {"swept", "sweep"}, {"wept", "weep"}, {"fled", "flee"}, {"hung", "hang"},
      {"sang", "sing"}, {"drank", "drink"}, {"woke", "wake"},
      {"understood", "understand"}, {"meant", "mean"}, {"seen", "see"},
      {"known", "know"}, {"given", "give"}, {"taken", "take"}, {"spoken", "speak"},
      {"written", "write"}, {"gone", "go"}, {"begun", "begin"},
      {"broken", "break"}, {"forgotten", "forget"}, {"hidden", "hide"},
      {"risen", "rise"}, {"fallen", "fall"}, {"men", "man"}, {"women", "woman"},
      {"children", "child"}, {"feet", "foot"}, {"teeth", "tooth"},
      {"mice", "mouse"},
  };
  return table;
}

const std::unordered_set<std::string_view>& abbreviations() {
  static const std::unordered_set<std::string_view> set = {
      "mr.", "mrs.", "dr.", "st.", "prof.", "etc.", "vs.", "e.g.", "i.e.", "capt.", "lt."};
  return set;
}

bool is_upper_ascii(char c) { return c >= 'A' && c <= 'Z'; }

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool is_number(std::string_view s) {
  bool digit = false;
  for (char c : s) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digit = true;
    } else if (c != '.' && c != ',' && c != '-') {
      return false;
    }
  }
  return digit;
}

// Multi-byte punctuation sequences come first so they win over single chars.
constexpr std::array<std::string_view, 12> kPunct = {
    "...", "--", "``", "''", "\xE2\x80\x94", "\xE2\x80\xA6", "\xE2\x80\x9C",
    "\xE2\x80\x9D", "\xE2\x80\x98", "\xE2\x80\x99", "-", "_"};
constexpr std::string_view kPunctChars = ".,;:!?()[]{}\"`'";

std::string_view leading_punct(std::string_view w) {
  for (std::string_view p : kPunct) {
    if (p != "-" && p != "_" && w.substr(0, p.size()) == p) return p;
  }
  if (!w.empty() && kPunctChars.find(w[0]) != std::string_view::npos &&
      w[0] != '.' && w[0] != ',') {
    return w.substr(0, 1);
  }
  return {};
}

std::string_view trailing_punct(std::string_view w) {
  for (std::string_view p : kPunct) {
    if (p != "_" && ends_with(w, p)) {
      return w.substr(w.size() - p.size());
    }
  }
  if (!w.empty() && kPunctChars.find(w.back()) != std::string_view::npos) {
    return w.substr(w.size() - 1);
  }
  return {};
}

void split_clitics(std::string_view core, std::vector<std::string>& out) {
  const std::string lower = to_lower(core);
  if (lower.size() > 3 && ends_with(lower, "n't")) {
    std::string_view head = core.substr(0, core.size() - 3);
    out.emplace_back(head);
    out.emplace_back(core.substr(core.size() - 3));
    return;
  }
  for (std::string_view clitic : {"'s", "'re", "'ve", "'ll", "'d", "'m"}) {
    if (lower.size() > clitic.size() && ends_with(lower, clitic)) {
      out.emplace_back(core.substr(0, core.size() - clitic.size()));
      out.emplace_back(core.substr(core.size() - clitic.size()));
      return;
    }
  }
  out.emplace_back(core);
}

void tokenize_chunk(std::string_view w, std::vector<std::string>& out) {
  for (std::string_view clitic : {"'s", "'re", "'ve", "'ll", "'d", "'m", "n't"}) {
    if (to_lower(w) == clitic) {
      out.emplace_back(w);
      return;
    }
  }
  std::vector<std::string> tail;
  while (!w.empty()) {
    std::string_view p = leading_punct(w);
    if (p.empty() || p.size() == w.size()) break;
    out.emplace_back(p);
    w.remove_prefix(p.size());
  }
  while (!w.empty()) {
    if (abbreviations().count(to_lower(w))) break;
    std::string_view p = trailing_punct(w);
    if (p.empty() || p.size() == w.size()) break;
    tail.emplace_back(p);
    w.remove_suffix(p.size());
  }
  if (!w.empty()) {
    // Internal dashes separate words ("while--all").
    for (std::string_view dash : {"--", "\xE2\x80\x94"}) {
      std::size_t pos = w.find(dash);
      if (pos != std::string_view::npos && pos > 0 && pos + dash.size() < w.size()) {
        tokenize_chunk(w.substr(0, pos), out);
        out.emplace_back(dash);
        tokenize_chunk(w.substr(pos + dash.size()), out);
        w = {};
        break;
      }
    }
    if (!w.empty()) split_clitics(w, out);
  }
  for (auto it = tail.rbegin(); it != tail.rend(); ++it) out.push_back(*it);
}

std::string punct_tag(std::string_view tok) {
  if (tok == "." || tok == "!" || tok == "?") return ".";
  if (tok == ",") return ",";
  if (tok == "(" || tok == "[" || tok == "{") return "-LRB-";
  if (tok == ")" || tok == "]" || tok == "}") return "-RRB-";
  if (tok == "``" || tok == "`" || tok == "\xE2\x80\x9C" || tok == "\xE2\x80\x98") {
    return "``";
  }
  if (tok == "''" || tok == "'" || tok == "\xE2\x80\x9D" || tok == "\xE2\x80\x99") {
    return "''";
  }
  if (tok == ";" || tok == ":" || tok == "-" || tok == "--" || tok == "..." ||
      tok == "_" || tok == "\xE2\x80\x94" || tok == "\xE2\x80\xA6") {
    return ":";
  }
  if (tok == "$") return "$";
  if (tok == "#") return "#";
  return {};
}

std::string_view suffix_tag(std::string_view lower) {
  if (is_number(lower)) return "CD";
  if (lower.size() > 4 && ends_with(lower, "ly")) return "RB";
  if (lower.size() > 4 && ends_with(lower, "ing")) return "VBG";
  if (lower.size() > 3 && ends_with(lower, "ed")) return "VBD";
  for (std::string_view suf : {"ness", "ment", "tion", "sion", "ity", "ism"}) {
    if (lower.size() > suf.size() + 2 && ends_with(lower, suf)) return "NN";
  }
  for (std::string_view suf : {"ous", "ful", "ive", "able", "ible", "less", "ish", "ic", "al"}) {
    if (lower.size() > suf.size() + 2 && ends_with(lower, suf)) return "JJ";
  }
  if (lower.size() > 3 && ends_with(lower, "s") && !ends_with(lower, "ss") &&
      !ends_with(lower, "us") && !ends_with(lower, "is")) {
    return "NNS";
  }
  return {};
}

}  // namespace

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::optional<std::string> fine_to_coarse(std::string_view fine) {
  auto it = coarse_table().find(fine);
  if (it == coarse_table().end()) return std::nullopt;
  return std::string(it->second);
}

std::vector<std::string> tokenize(std::string_view raw) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < raw.size()) {
    while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
    std::size_t j = i;
    while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
    if (j > i) tokenize_chunk(raw.substr(i, j - i), out);
    i = j;
  }
  return out;
}

std::string fallback_fine_tag(std::string_view token, bool sentence_initial) {
  if (std::string p = punct_tag(token); !p.empty()) return p;
  const std::string lower = to_lower(token);
  if (auto it = tag_lexicon().find(lower); it != tag_lexicon().end()) {
    return std::string(it->second);
  }
  const bool capitalized = !token.empty() && is_upper_ascii(token[0]);
  std::string_view by_suffix = suffix_tag(lower);
  if (capitalized) {
    if (!sentence_initial) return "NNP";
    return by_suffix.empty() ? "NNP" : std::string(by_suffix);
  }
  return by_suffix.empty() ? "NN" : std::string(by_suffix);
}

std::string fallback_lemma(std::string_view token, std::string_view /*fine*/) {
  std::string lower = to_lower(token);
  if (auto it = lemma_exceptions().find(lower); it != lemma_exceptions().end()) {
    return std::string(it->second);
  }
  return lower;
}

Sentence annotate_tokens(const std::vector<std::string>& tokens) {
  Sentence s;
  s.tokens = tokens;
  bool open_quote = false;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::string fine;
    if (tokens[i] == "\"") {
      fine = open_quote ? "''" : "``";
      open_quote = !open_quote;
    } else {
      // Sentence-initial also covers a word right after an opening quote.
      bool initial = i == 0 || (i == 1 && punct_tag(tokens[0]) == "``");
      fine = fallback_fine_tag(tokens[i], initial);
    }
    s.lemmas.push_back(fallback_lemma(tokens[i], fine));
    s.coarse_pos.push_back(*fine_to_coarse(fine));
    s.fine_pos.push_back(std::move(fine));
  }
  return s;
}

Sentence annotate_fallback(std::string_view raw) { return annotate_tokens(tokenize(raw)); }

}  // namespace styleeq

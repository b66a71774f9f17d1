#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "styleeq/eval.h"

namespace styleeq {
namespace {

using Ngram = std::vector<std::string>;

std::map<Ngram, long> ngram_counts(const TokenSeq& s, std::size_t n) {
  std::map<Ngram, long> out;
  for (std::size_t i = 0; i + n <= s.size(); ++i) ++out[Ngram(s.begin() + i, s.begin() + i + n)];
  return out;
}

}  // namespace

void BleuStats::add(const TokenSeq& hyp, const TokenSeq& ref) {
  hyp_length += static_cast<long>(hyp.size());
  ref_length += static_cast<long>(ref.size());
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto h = ngram_counts(hyp, n);
    const auto r = ngram_counts(ref, n);
    long m = 0;
    for (const auto& [g, c] : h) {
      auto it = r.find(g);
      if (it != r.end()) m += std::min(c, it->second);
    }
    matches[n - 1] += m;
    totals[n - 1] += hyp.size() >= n ? static_cast<long>(hyp.size() - n + 1) : 0;
  }
}

double BleuStats::score() const {
  if (hyp_length == 0 || matches[0] == 0) return 0.0;
  double log_p = std::log(static_cast<double>(matches[0]) / static_cast<double>(totals[0]));
  for (std::size_t n = 1; n < 4; ++n) {
    log_p += std::log(static_cast<double>(matches[n] + 1) / static_cast<double>(totals[n] + 1));
  }
  const double bp =
      hyp_length > ref_length
          ? 1.0
          : std::exp(1.0 - static_cast<double>(ref_length) / static_cast<double>(hyp_length));
  return bp * std::exp(log_p / 4.0);
}

double bleu(const std::vector<TokenSeq>& hypotheses, const std::vector<TokenSeq>& references) {
  if (hypotheses.empty()) throw std::invalid_argument("bleu: empty hypothesis set");
  if (hypotheses.size() != references.size()) {
    throw std::invalid_argument("bleu: hypothesis and reference counts differ");
  }
  BleuStats stats;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    if (references[i].empty()) throw std::invalid_argument("bleu: empty reference");
    stats.add(hypotheses[i], references[i]);
  }
  return stats.score();
}

}  // namespace styleeq

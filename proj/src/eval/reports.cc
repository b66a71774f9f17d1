#include <cmath>
#include <cstdio>
#include <sstream>

#include "styleeq/eval.h"

namespace styleeq {

std::string format_fixed(double value, int decimals) {
  if (!std::isfinite(value)) return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return buf;
}

std::string reconstruction_tsv(const std::vector<ReconstructionRow>& rows) {
  std::ostringstream out;
  out << "model\tbleu\tnll\tperplexity\n";
  for (const auto& r : rows) {
    out << r.model << '\t' << format_fixed(100.0 * r.bleu, 2) << '\t' << format_fixed(r.nll, 4)
        << '\t' << format_fixed(r.perplexity, 4) << '\n';
  }
  return out.str();
}

std::string fidelity_tsv(const FidelityReport& report) {
  std::ostringstream out;
  out << "control\texact\tdirection\tatomic\ttrials\n";
  for (const FidelityRow& row : report.rows) {
    out << control_name(row.control);
    if (!row.scored) {
      out << "\tn/a\tn/a\tn/a\t0\n";
      continue;
    }
    out << '\t' << format_fixed(row.exact_pct(), 2) << '\t' << format_fixed(row.direction_pct(), 2)
        << '\t' << format_fixed(row.atomic_pct(), 2) << '\t' << row.trials << '\n';
  }
  return out.str();
}

std::string transfer_accuracy_tsv(const std::vector<TransferAccuracyReport>& reports) {
  std::ostringstream out;
  out << "model\tmethod\tall";
  for (Style s : kAllStyles) {
    for (Style t : kAllStyles) out << '\t' << style_letter(s) << "->" << style_letter(t);
  }
  out << '\n';
  for (const auto& r : reports) {
    for (Selection m : kAllSelections) {
      const AccuracyTable& table = r.table(m);
      out << r.model << '\t' << selection_name(m) << '\t'
          << format_fixed(table.overall.accuracy(), 3);
      for (Style s : kAllStyles) {
        for (Style t : kAllStyles) {
          out << '\t' << format_fixed(table.cells[style_index(s)][style_index(t)].accuracy(), 3);
        }
      }
      out << '\n';
    }
  }
  return out.str();
}

std::string classifier_tsv(const std::vector<std::pair<AblationMode, ClassifierAccuracy>>& rows) {
  std::ostringstream out;
  out << "classifier\toverall";
  for (Style s : kAllStyles) out << '\t' << style_name(s);
  out << '\n';
  for (const auto& [mode, acc] : rows) {
    out << ablation_name(mode) << '\t' << format_fixed(acc.overall, 4);
    for (Style s : kAllStyles) out << '\t' << format_fixed(acc.per_style[style_index(s)], 4);
    out << '\n';
  }
  return out.str();
}

}  // namespace styleeq

#include "rthes/indexer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>

#include "rthes/text.hpp"

namespace rthes {

std::uint32_t distance(const Occurrence& a, const Occurrence& b) {
  if (a.document != b.document || a.phrase != b.phrase) return 0;
  return a.position > b.position ? a.position - b.position : b.position - a.position;
}

double binding_force(const Occurrence& a, const Occurrence& b, int window) {
  const auto d = distance(a, b);
  if (d == 0 || static_cast<int>(d) > window) return 0.0;
  return 1.0 / static_cast<double>(d);
}

Association association(double b, std::size_t f, int n) {
  if (f == 0) return {};
  const double fd = static_cast<double>(f);
  const double k = std::pow((fd - 1.0) / fd, n);
  return {k, k * b / fd};
}

std::vector<PairStats> pair_statistics(std::span<const Occurrence> occurrences, const DistMatrix& dist, int n) {
  struct Sums {
    double b = 0;
    std::size_t f = 0;
  };
  std::map<std::pair<ConceptId, ConceptId>, Sums> sums;

  // Only occurrences in the same phrase can interact.
  std::map<std::pair<DocId, std::uint32_t>, std::vector<const Occurrence*>> phrases;
  for (const auto& o : occurrences) phrases[{o.document, o.phrase}].push_back(&o);

  for (const auto& [key, members] : phrases) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        const Occurrence& x = *members[i];
        const Occurrence& y = *members[j];
        if (x.concept_id == y.concept_id || distance(x, y) == 0) continue;
        auto& s = sums[std::minmax(x.concept_id, y.concept_id)];
        s.f += 1;
        s.b += binding_force(x, y, pair_threshold(x.category, y.category, dist));
      }
    }
  }

  std::vector<PairStats> out;
  out.reserve(sums.size());
  for (const auto& [pair, s] : sums) {
    const auto a = association(s.b, s.f, n);
    out.push_back({pair.first, pair.second, s.b, s.f, a.k, a.m});
  }
  return out;
}

std::set<ConceptId> significant_terms(std::span<const PairStats> stats, double theta) {
  std::set<ConceptId> out;
  for (const auto& s : stats) {
    if (s.m >= theta) {
      out.insert(s.first);
      out.insert(s.second);
    }
  }
  return out;
}

DocumentAnalysis extract_occurrences(std::string_view text, DocId document, std::string_view language,
                                     const Lexicon& lexicon) {
  DocumentAnalysis out;
  const auto tokens = tokenize(text);

  // Look-ahead never crosses a phrase boundary.
  std::size_t begin = 0;
  while (begin < tokens.size()) {
    std::size_t end = begin;
    while (end < tokens.size() && tokens[end].phrase == tokens[begin].phrase) ++end;

    std::vector<std::string> spelled;
    for (std::size_t k = begin; k < end; ++k) spelled.push_back(tokens[k].text);
    const auto normalized = lexicon.normalize(spelled, language);

    for (const auto& unit : normalized.units) {
      if (unit.kind == UnitKind::stopword) continue;
      const Token& first = tokens[begin + unit.first_token];
      AmbiguityItem item;
      item.surface = unit.surface;
      item.normal_form = unit.form;
      item.language = std::string(language);
      item.document = document;
      item.phrase = first.phrase;
      item.position = first.position;
      item.token_count = unit.token_count;

      if (unit.kind == UnitKind::term) {
        auto resolution = lexicon.resolve(unit.form, language);
        if (auto* r = std::get_if<Resolved>(&resolution)) {
          out.occurrences.push_back({r->concept_id, document, first.phrase, first.position, r->category});
          continue;
        }
        if (auto* a = std::get_if<Ambiguous>(&resolution)) item.candidates = a->candidates;
      }
      item.id = out.pending.size();
      out.pending.push_back(std::move(item));
    }
    begin = end;
  }
  return out;
}

void write_stats_tsv(std::ostream& out, std::span<const PairStats> stats,
                     const std::function<std::string(const ConceptId&)>& label, int precision) {
  std::vector<const PairStats*> rows;
  for (const auto& s : stats) rows.push_back(&s);
  std::stable_sort(rows.begin(), rows.end(), [](const PairStats* a, const PairStats* b) { return a->m > b->m; });

  out << "term1\tterm2\tb\tf\tb/f\tk\tM\n";
  const auto flags = out.flags();
  const auto old_precision = out.precision();
  out << std::fixed << std::setprecision(precision);
  for (const PairStats* s : rows) {
    out << label(s->first) << '\t' << label(s->second) << '\t' << s->b << '\t' << s->f << '\t'
        << (s->f ? s->b / static_cast<double>(s->f) : 0.0) << '\t' << s->k << '\t' << s->m << '\n';
  }
  out.flags(flags);
  out.precision(old_precision);
}

}  // namespace rthes

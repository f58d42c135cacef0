#include "rthes/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <tuple>

#include "rthes/text.hpp"

namespace rthes {
namespace {

std::size_t index_of(Category c) { return static_cast<std::size_t>(c); }

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(line.substr(start));
      return out;
    }
    out.emplace_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

// Case-folds and collapses internal whitespace to single spaces.
std::string canonical(std::string_view text) {
  std::istringstream in(fold_case(text));
  std::string word;
  std::string out;
  while (in >> word) {
    if (!out.empty()) out += ' ';
    out += word;
  }
  return out;
}

std::size_t word_count(std::string_view form) {
  return static_cast<std::size_t>(std::count(form.begin(), form.end(), ' ')) + 1;
}

}  // namespace

std::string_view to_string(Category c) {
  switch (c) {
    case Category::noun:
      return "noun";
    case Category::adjective:
      return "adjective";
    case Category::verb:
      return "verb";
  }
  return "noun";
}

std::optional<Category> parse_category(std::string_view text) {
  const auto folded = fold_case(text);
  for (Category c : kCategories)
    if (folded == to_string(c)) return c;
  return std::nullopt;
}

DistMatrix::DistMatrix(int uniform) {
  for (Category a : kCategories)
    for (Category b : kCategories) set(a, b, uniform);
}

int DistMatrix::at(Category a, Category b) const { return cells_[index_of(a)][index_of(b)]; }

void DistMatrix::set(Category a, Category b, int window) {
  if (window < 1)
    throw LexiconError("invalid_dist", "category window must be at least 1, got " + std::to_string(window));
  cells_[index_of(a)][index_of(b)] = window;
  cells_[index_of(b)][index_of(a)] = window;
}

int pair_threshold(Category a, Category b, const DistMatrix& matrix) { return matrix.at(a, b); }

std::string ValidationIssue::describe() const {
  static constexpr std::array<std::string_view, 4> kNames{"syntax", "duplicate-key", "injectivity",
                                                          "dangling-related"};
  std::string out;
  if (!source.empty()) out += source + ":";
  if (line != 0) out += std::to_string(line) + ":";
  if (!out.empty()) out += ' ';
  out += kNames[static_cast<std::size_t>(kind)];
  out += ": ";
  out += message;
  return out;
}

bool ValidationReport::has_errors() const {
  return std::any_of(issues.begin(), issues.end(), [](const ValidationIssue& i) { return i.is_error(); });
}

std::vector<std::string> Normalization::terms() const {
  std::vector<std::string> out;
  for (const auto& unit : units)
    if (unit.kind == UnitKind::term) out.push_back(unit.form);
  return out;
}

// -- Builder ---------------------------------------------------------------

Lexicon::Builder& Lexicon::Builder::add_language(std::string language) {
  languages_.insert(std::move(language));
  return *this;
}

Lexicon::Builder& Lexicon::Builder::add_variation(VariationEntry entry, std::string source, std::size_t line) {
  languages_.insert(entry.language);
  variations_.push_back({std::move(entry), std::move(source), line});
  return *this;
}

Lexicon::Builder& Lexicon::Builder::add_entry(MainEntry entry, std::string source, std::size_t line) {
  languages_.insert(entry.language);
  entries_.push_back({std::move(entry), std::move(source), line});
  return *this;
}

Lexicon::Builder& Lexicon::Builder::add_stopword(std::string language, std::string word, std::string source,
                                                 std::size_t line) {
  languages_.insert(language);
  stopwords_.push_back({{std::move(language), std::move(word)}, std::move(source), line});
  return *this;
}

Lexicon::Builder& Lexicon::Builder::add_issue(ValidationIssue issue) {
  issues_.push_back(std::move(issue));
  return *this;
}

Lexicon::Builder& Lexicon::Builder::dist(DistMatrix matrix) {
  dist_ = matrix;
  return *this;
}

ValidationReport Lexicon::Builder::validate() const {
  ValidationReport report{issues_};
  auto issue = [&](IssueKind kind, const std::string& source, std::size_t line, std::string message) {
    report.issues.push_back({kind, source, line, std::move(message)});
  };

  std::map<std::pair<std::string, std::string>, std::size_t> seen_variants;
  for (std::size_t i = 0; i < variations_.size(); ++i) {
    const auto& [v, source, line] = variations_[i];
    if (canonical(v.variant).empty() || canonical(v.normal_form).empty()) {
      issue(IssueKind::syntax, source, line, "empty variant or normal form");
      continue;
    }
    auto [it, fresh] = seen_variants.try_emplace({v.language, canonical(v.variant)}, i);
    if (!fresh) {
      const auto& first = variations_[it->second];
      issue(IssueKind::duplicate_key, source, line,
            "variant (" + v.language + ", '" + v.variant + "') already defined at " + first.source + ":" +
                std::to_string(first.line));
    }
  }

  std::map<std::tuple<std::string, std::string, std::string>, std::size_t> seen_keys;
  // (language, context) -> representative -> concept, and the reverse.
  std::map<std::pair<std::string, std::string>, std::map<std::string, std::pair<ConceptId, std::size_t>>>
      rep_to_concept;
  std::map<std::pair<std::string, std::string>, std::map<ConceptId, std::pair<std::string, std::size_t>>>
      concept_to_rep;
  std::set<ConceptId> concepts;
  for (const auto& e : entries_) concepts.insert(e.value.concept_id);

  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& [e, source, line] = entries_[i];
    if (canonical(e.normal_form).empty() || e.concept_id.empty() || e.context.empty()) {
      issue(IssueKind::syntax, source, line, "normal form, context and concept must be nonempty");
      continue;
    }
    auto [it, fresh] = seen_keys.try_emplace({e.language, canonical(e.normal_form), e.context}, i);
    if (!fresh) {
      const auto& first = entries_[it->second];
      issue(IssueKind::duplicate_key, source, line,
            "entry (" + e.language + ", '" + e.normal_form + "', " + e.context + ") already defined at " +
                first.source + ":" + std::to_string(first.line));
      continue;
    }

    const auto key = std::make_pair(e.language, e.context);
    const auto rep = canonical(e.representative.empty() ? e.normal_form : e.representative);
    auto [r, r_fresh] = rep_to_concept[key].try_emplace(rep, e.concept_id, i);
    if (!r_fresh && r->second.first != e.concept_id) {
      issue(IssueKind::injectivity, source, line,
            "representative '" + rep + "' in (" + e.language + ", " + e.context + ") maps to both " +
                r->second.first + " and " + e.concept_id);
    }
    auto [c, c_fresh] = concept_to_rep[key].try_emplace(e.concept_id, rep, i);
    if (!c_fresh && c->second.first != rep) {
      issue(IssueKind::injectivity, source, line,
            "concept " + e.concept_id + " in (" + e.language + ", " + e.context +
                ") is reached from distinct representatives '" + c->second.first + "' and '" + rep + "'");
    }

    for (const auto& related : e.related) {
      if (!concepts.contains(related))
        issue(IssueKind::dangling_related, source, line, "related concept " + related + " is not defined");
    }
  }
  return report;
}

std::shared_ptr<const Lexicon> Lexicon::Builder::build() const {
  const auto report = validate();
  if (report.has_errors()) {
    std::string message;
    for (const auto& i : report.issues) {
      if (!i.is_error()) continue;
      if (!message.empty()) message += "; ";
      message += i.describe();
    }
    throw LexiconError("dictionary_invalid", message);
  }

  auto lex = std::make_shared<Lexicon>();
  lex->dist_ = dist_;
  for (const auto& language : languages_) lex->languages_[language];

  for (const auto& [v, source, line] : variations_) {
    auto& t = lex->languages_[v.language];
    const auto variant = canonical(v.variant);
    t.variations.emplace(variant, canonical(v.normal_form));
    t.max_compound = std::max(t.max_compound, word_count(variant));
  }

  std::vector<std::size_t> order(entries_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  // Deterministic lookup order: by (language, context, normal form).
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& x = entries_[a].value;
    const auto& y = entries_[b].value;
    return std::tie(x.language, x.context, x.normal_form) < std::tie(y.language, y.context, y.normal_form);
  });
  for (std::size_t i : order) {
    MainEntry e = entries_[i].value;
    if (e.representative.empty()) e.representative = e.normal_form;
    const auto form = canonical(e.normal_form);
    auto& t = lex->languages_[e.language];
    const std::size_t index = lex->entries_.size();
    t.by_form[form].push_back(index);
    t.by_concept[e.concept_id].push_back(index);
    t.max_compound = std::max(t.max_compound, word_count(form));
    lex->concepts_.insert(e.concept_id);
    lex->entries_.push_back(std::move(e));
  }

  for (const auto& [w, source, line] : stopwords_) {
    const auto word = canonical(w.second);
    if (!word.empty()) lex->languages_[w.first].stopwords.insert(word);
  }
  return lex;
}

// -- Lexicon ---------------------------------------------------------------

bool Lexicon::has_language(std::string_view language) const { return languages_.contains(language); }

std::vector<std::string> Lexicon::languages() const {
  std::vector<std::string> out;
  for (const auto& [language, tables] : languages_) out.push_back(language);
  return out;
}

const Lexicon::Tables& Lexicon::tables(std::string_view language) const {
  auto it = languages_.find(language);
  if (it == languages_.end())
    throw LexiconError("no_dictionary_for_language", "no dictionary loaded for language '" +
                                                         std::string(language) + "'");
  return it->second;
}

std::size_t Lexicon::max_compound_length(std::string_view language) const {
  return tables(language).max_compound;
}

Normalization Lexicon::normalize(std::span<const std::string> tokens, std::string_view language) const {
  const Tables& t = tables(language);
  std::vector<std::string> folded;
  std::vector<std::string> varied;  // each token through the variation dictionary
  folded.reserve(tokens.size());
  for (const auto& token : tokens) {
    folded.push_back(canonical(token));
    auto v = t.variations.find(folded.back());
    varied.push_back(v == t.variations.end() ? folded.back() : v->second);
  }

  auto join = [](const std::vector<std::string>& parts, std::size_t from, std::size_t count) {
    std::string out = parts[from];
    for (std::size_t k = 1; k < count; ++k) out += ' ' + parts[from + k];
    return out;
  };
  auto surface = [&](std::size_t from, std::size_t count) {
    std::string out = tokens[from];
    for (std::size_t k = 1; k < count; ++k) out += ' ' + tokens[from + k];
    return out;
  };
  // The normal form a span stands for, if the main dictionary knows it.
  auto known_form = [&](std::size_t from, std::size_t count) -> std::optional<std::string> {
    const auto whole = join(folded, from, count);
    if (auto v = t.variations.find(whole); v != t.variations.end() && t.by_form.contains(v->second))
      return v->second;
    if (t.by_form.contains(whole)) return whole;
    const auto per_token = join(varied, from, count);
    if (t.by_form.contains(per_token)) return per_token;
    return std::nullopt;
  };

  Normalization out;
  std::size_t i = 0;
  while (i < tokens.size()) {
    const std::size_t longest = std::min(t.max_compound, tokens.size() - i);
    bool matched = false;
    for (std::size_t len = longest; len >= 2; --len) {
      if (auto form = known_form(i, len)) {
        out.units.push_back({UnitKind::term, *form, surface(i, len), i, len});
        i += len;
        matched = true;
        break;
      }
    }
    if (matched) continue;

    if (t.stopwords.contains(folded[i]) || t.stopwords.contains(varied[i])) {
      out.units.push_back({UnitKind::stopword, folded[i], tokens[i], i, 1});
    } else if (auto form = known_form(i, 1)) {
      out.units.push_back({UnitKind::term, *form, tokens[i], i, 1});
    } else {
      out.units.push_back({UnitKind::unknown, varied[i], tokens[i], i, 1});
    }
    ++i;
  }
  return out;
}

ConceptResolution Lexicon::resolve(std::string_view normal_form, std::string_view language,
                                   std::optional<std::string_view> context) const {
  const Tables& t = tables(language);
  auto it = t.by_form.find(canonical(normal_form));
  if (it == t.by_form.end()) return UnknownTerm{};
  const auto& matches = it->second;

  auto resolved = [&](std::size_t index) {
    const auto& e = entries_[index];
    return Resolved{e.concept_id, e.context, e.category};
  };

  if (context) {
    for (std::size_t index : matches)
      if (entries_[index].context == *context) return resolved(index);
  }
  if (matches.size() == 1) return resolved(matches.front());

  const auto& first = entries_[matches.front()];
  const bool same_meaning = std::all_of(matches.begin(), matches.end(), [&](std::size_t index) {
    return entries_[index].concept_id == first.concept_id && entries_[index].category == first.category;
  });
  if (same_meaning) return resolved(matches.front());

  Ambiguous out;
  for (std::size_t index : matches) {
    const auto& e = entries_[index];
    out.candidates.push_back({e.context, e.concept_id, e.category});
  }
  return out;
}

RepresentativeInfo Lexicon::representative(const ConceptId& concept_id, std::string_view language) const {
  const Tables& t = tables(language);
  auto it = t.by_concept.find(concept_id);
  if (it == t.by_concept.end())
    throw LexiconError("concept_unknown_in_language",
                       "concept " + concept_id + " has no entry for language '" + std::string(language) + "'");
  RepresentativeInfo out;
  out.term = entries_[it->second.front()].representative;
  std::set<ConceptId> seen;
  for (std::size_t index : it->second) {
    for (const auto& r : entries_[index].related)
      if (seen.insert(r).second) out.related.push_back(r);
  }
  return out;
}

std::optional<Category> Lexicon::category_of(const ConceptId& concept_id, std::string_view language) const {
  const Tables& t = tables(language);
  auto it = t.by_concept.find(concept_id);
  if (it == t.by_concept.end()) return std::nullopt;
  return entries_[it->second.front()].category;
}

// -- Loading ---------------------------------------------------------------

namespace {

using Lines = std::vector<std::pair<std::size_t, std::vector<std::string>>>;

Lines read_tsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LexiconError("dictionary_missing", "cannot open dictionary file " + path.string());
  Lines out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line.front() == '#') continue;
    out.emplace_back(number, split(line, '\t'));
  }
  return out;
}

Lexicon::Builder read_files(std::span<const DictionaryFiles> files, const DistMatrix& dist) {
  Lexicon::Builder builder;
  builder.dist(dist);
  for (const auto& f : files) {
    builder.add_language(f.language);
    auto syntax = [&](const std::filesystem::path& p, std::size_t line, std::string message) {
      builder.add_issue({IssueKind::syntax, p.string(), line, std::move(message)});
    };
    auto language_ok = [&](const std::filesystem::path& p, std::size_t line, const std::string& lang) {
      if (lang == f.language) return true;
      syntax(p, line, "entry for language '" + lang + "' in a file declared for '" + f.language + "'");
      return false;
    };

    for (auto& [line, fields] : read_tsv(f.variations)) {
      if (fields.size() != 3) {
        syntax(f.variations, line, "expected 3 fields, found " + std::to_string(fields.size()));
        continue;
      }
      if (!language_ok(f.variations, line, trim(fields[0]))) continue;
      builder.add_variation({trim(fields[0]), trim(fields[1]), trim(fields[2])}, f.variations.string(), line);
    }

    for (auto& [line, fields] : read_tsv(f.main)) {
      if (fields.size() != 6 && fields.size() != 7) {
        syntax(f.main, line, "expected 6 or 7 fields, found " + std::to_string(fields.size()));
        continue;
      }
      if (!language_ok(f.main, line, trim(fields[0]))) continue;
      auto category = parse_category(trim(fields[5]));
      if (!category) {
        syntax(f.main, line, "unknown category '" + trim(fields[5]) + "'");
        continue;
      }
      MainEntry e{trim(fields[0]), trim(fields[1]), trim(fields[2]), trim(fields[3]), trim(fields[4]),
                  *category, {}};
      if (fields.size() == 7) {
        for (auto& r : split(fields[6], ','))
          if (auto id = trim(r); !id.empty()) e.related.push_back(std::move(id));
      }
      builder.add_entry(std::move(e), f.main.string(), line);
    }

    for (auto& [line, fields] : read_tsv(f.stopwords)) {
      if (fields.size() != 2) {
        syntax(f.stopwords, line, "expected 2 fields, found " + std::to_string(fields.size()));
        continue;
      }
      if (!language_ok(f.stopwords, line, trim(fields[0]))) continue;
      builder.add_stopword(trim(fields[0]), trim(fields[1]), f.stopwords.string(), line);
    }
  }
  return builder;
}

}  // namespace

ValidationReport validate_dictionaries(std::span<const DictionaryFiles> files, const DistMatrix& dist) {
  return read_files(files, dist).validate();
}

LoadedLexicon load_dictionaries(std::span<const DictionaryFiles> files, const DistMatrix& dist) {
  auto builder = read_files(files, dist);
  auto report = builder.validate();
  return {builder.build(), std::move(report)};
}

}  // namespace rthes

#include "rthes/service/cli.hpp"

#include <algorithm>
#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rthes/errors.hpp"
#include "rthes/relation_io.hpp"
#include "rthes/retrieval.hpp"
#include "rthes/service/api.hpp"
#include "rthes/service/engine.hpp"
#include "rthes/service/server.hpp"
#include "rthes/thesaurus_io.hpp"

namespace rthes::service {

namespace {

HttpServer* active_server = nullptr;

extern "C" void stop_on_signal(int) {
  if (active_server) active_server->stop();
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string join_ids(const std::set<DocId>& ids, const char* sep) {
  std::string out;
  for (DocId d : ids) {
    if (!out.empty()) out += sep;
    out += std::to_string(d);
  }
  return out;
}

std::string join_labels(const Lexicon& lexicon, const std::set<ConceptId>& concepts, const std::string& language) {
  std::string out;
  for (const auto& c : concepts) {
    if (!out.empty()) out += ", ";
    out += render_concept(lexicon, c, language);
  }
  return out;
}

void print_item(std::ostream& out, const AmbiguityItem& it, const Lexicon& lexicon) {
  out << "[doc " << it.document << ", phrase " << it.phrase << ", position " << it.position << "] \""
      << it.surface << "\" (" << it.language << ")" << (it.unknown() ? " not in the dictionary" : "") << '\n';
  for (std::size_t i = 0; i < it.candidates.size(); ++i) {
    const auto& c = it.candidates[i];
    out << "  " << (i + 1) << ") " << c.context << " -> " << render_concept(lexicon, c.concept_id, it.language) << " ["
        << c.concept_id << "]\n";
  }
  out << "  -) discard   =ID) map to concept ID   append '*' to apply to all\n";
}

// Prompts until every item is resolved. Returns false on end of input.
bool prompt_resolutions(AmbiguitySession& session, std::ostream& out, std::istream& in) {
  while (session.pending_count() > 0) {
    const auto item = session.pending().front();
    print_item(out, item, session.lexicon());
    out << "choice> " << std::flush;
    std::string line;
    if (!std::getline(in, line)) return false;
    line = trim(line);
    bool all = false;
    if (!line.empty() && line.back() == '*') {
      all = true;
      line = trim(line.substr(0, line.size() - 1));
    }
    try {
      Choice choice;
      if (!line.empty() && std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isdigit(c); })) {
        const auto index = std::stoul(line);
        if (index == 0 || index > item.candidates.size()) throw SessionError("invalid_choice", "no option " + line);
        choice = SelectContext{item.candidates[index - 1].context};
      } else {
        choice = parse_choice(line);
      }
      session.resolve(item.id, choice, all);
    } catch (const SessionError& e) {
      out << "  " << e.what() << '\n';
    }
  }
  return true;
}

void print_pending(std::ostream& err, const AmbiguitySession& session) {
  err << session.pending_count() << " ambiguity item(s) unresolved:\n";
  for (const auto& it : session.pending()) {
    err << "  doc " << it.document << " phrase " << it.phrase << " position " << it.position << ": \"" << it.surface
        << "\" (" << it.language << ")";
    if (!it.candidates.empty()) {
      err << " contexts:";
      for (const auto& c : it.candidates) err << ' ' << c.context;
    }
    err << '\n';
  }
}

struct Globals {
  std::string config;
  std::string data_dir;
};

std::optional<std::string> config_override(const Globals& g) {
  if (g.config.empty()) return std::nullopt;
  return g.config;
}

std::unique_ptr<Engine> make_engine(const Globals& g, std::ostream& err) {
  auto config = load_config(config_path(config_override(g)));
  if (!g.data_dir.empty()) config.data_dir = g.data_dir;
  auto engine = std::make_unique<Engine>(std::move(config));
  for (const auto& issue : engine->dictionary_report().issues) err << "warning: " << issue.describe() << '\n';
  return engine;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in,
            bool interactive) {
  CLI::App app{"Rectangular thesaurus indexing and retrieval"};
  app.name("rthes");
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "configuration file (default: $RTHES_CONFIG)");
  app.add_option("--data-dir", g.data_dir, "directory holding thesaurus.json (overrides the configuration)");

  // index
  auto* index = app.add_subcommand("index", "index the documents of a manifest");
  std::string manifest, resolutions_file;
  bool incremental = false;
  index->add_option("manifest", manifest, "doc_id<TAB>language<TAB>path<TAB>title lines")->required();
  index->add_option("--resolutions", resolutions_file, "surface<TAB>language<TAB>context lines");
  bool force_prompt = false;
  index->add_flag("--prompt", force_prompt, "prompt for ambiguities on standard input even when it is not a terminal");
  index->add_flag("--incremental", incremental, "insert documents one by one instead of decomposing them together");

  // query
  auto* query = app.add_subcommand("query", "match query terms against the thesaurus");
  std::string query_lang;
  std::vector<std::string> query_terms, query_contexts;
  query->add_option("--lang", query_lang, "query language")->required();
  query->add_option("--context", query_contexts, "term=context for an ambiguous term");
  query->add_option("terms", query_terms, "query terms")->required();

  // serve
  auto* serve = app.add_subcommand("serve", "serve the HTTP API");
  std::string listen;
  serve->add_option("--listen", listen, "host:port (default from the configuration)");

  // thesaurus
  auto* thesaurus = app.add_subcommand("thesaurus", "export or import the thesaurus");
  thesaurus->require_subcommand(1);
  auto* th_export = thesaurus->add_subcommand("export", "write the thesaurus as JSON");
  bool simplified = false;
  std::string export_path;
  th_export->add_flag("--simplified", simplified, "store each node relative to its principal parent");
  th_export->add_option("-o,--output", export_path, "output file (default: standard output)");
  auto* th_import = thesaurus->add_subcommand("import", "replace the thesaurus with a JSON file");
  std::string import_path;
  th_import->add_option("file", import_path, "full or simplified JSON")->required();

  // dict
  auto* dict = app.add_subcommand("dict", "dictionary tools");
  dict->require_subcommand(1);
  auto* dict_validate = dict->add_subcommand("validate", "check the configured dictionaries");

  // stats
  auto* stats = app.add_subcommand("stats", "term association statistics");
  stats->require_subcommand(1);
  auto* stats_export = stats->add_subcommand("export", "pair statistics of one document as TSV");
  std::string stats_doc, stats_lang, stats_resolutions;
  int precision = 2;
  stats_export->add_option("document", stats_doc, "text file")->required();
  stats_export->add_option("--lang", stats_lang, "document language")->required();
  stats_export->add_option("--resolutions", stats_resolutions, "surface<TAB>language<TAB>context lines");
  stats_export->add_option("--precision", precision, "decimal places")->check(CLI::Range(0, 12));

  // relation
  auto* relation = app.add_subcommand("relation", "binary relation tools");
  relation->require_subcommand(1);
  std::string relation_file;
  std::size_t cap = kDefaultCellCap;
  auto* rel_decompose = relation->add_subcommand("decompose", "optimal rectangle cover");
  auto* rel_maximal = relation->add_subcommand("maximal", "all maximal rectangles");
  for (auto* sub : {rel_decompose, rel_maximal}) {
    sub->add_option("file", relation_file, "left<TAB>right lines")->required();
    sub->add_option("--cap", cap, "maximum number of cells");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*index) {
      auto engine_ptr = make_engine(g, err);
      Engine& engine = *engine_ptr;
      const auto entries = read_manifest(manifest);
      AmbiguitySession session("cli", load_documents(entries), engine.lexicon());
      if (!resolutions_file.empty()) {
        for (const auto& rule : read_resolutions_file(resolutions_file)) session.apply(rule);
      }
      if (session.pending_count() > 0 && (interactive || force_prompt)) {
        if (!prompt_resolutions(session, out, in)) {
          err << "input ended before every ambiguity was resolved\n";
          return kExitPending;
        }
      }
      if (session.pending_count() > 0) {
        print_pending(err, session);
        return kExitPending;
      }
      session.commit();
      const auto report = engine.index(session, incremental);
      const auto th = engine.snapshot();
      std::map<DocId, std::string> languages;
      for (const auto& e : entries) languages[e.id] = e.language;
      for (const auto& d : report.documents) {
        out << "document " << d.document << ": ";
        if (d.significant.empty()) {
          out << "no significant terms\n";
        } else {
          out << join_labels(*engine.lexicon(), d.significant, languages[d.document]) << '\n';
        }
      }
      out << "inserted " << report.insertions.size() << " rectangle(s); thesaurus has " << th->node_count()
          << " node(s)\n";
      return kExitOk;
    }

    if (*query) {
      auto engine_ptr = make_engine(g, err);
      Engine& engine = *engine_ptr;
      std::map<std::string, std::string> contexts;
      for (const auto& c : query_contexts) {
        const auto eq = c.find('=');
        if (eq == std::string::npos || eq == 0) throw Error("bad_argument", "--context expects term=context");
        contexts[c.substr(0, eq)] = c.substr(eq + 1);
      }
      const auto resolution = resolve_query(*engine.lexicon(), query_lang, query_terms, contexts);
      for (const auto& u : resolution.unknown) err << "warning: unknown term '" << u << "' ignored\n";
      if (!resolution.ambiguities.empty()) {
        for (const auto& a : resolution.ambiguities) {
          err << "ambiguous term '" << a.surface << "': contexts";
          for (const auto& c : a.candidates) err << ' ' << c.context;
          err << " (use --context " << a.surface << "=CONTEXT)\n";
        }
        return kExitAmbiguous;
      }
      const auto& lexicon = *engine.lexicon();
      const auto th = engine.snapshot();
      const auto result = match(*th, resolution.query.concepts);
      out << "query: " << join_labels(lexicon, resolution.query.concepts, query_lang) << '\n';
      if (result.empty()) {
        out << "no rectangle contains every query term; drop a term to broaden the query\n";
        return kExitOk;
      }
      for (const auto& m : result.matches) {
        out << "match node " << raw(m.node) << " {" << join_labels(lexicon, m.domain, query_lang) << "} documents "
            << join_ids(m.documents, ",") << '\n';
        if (!m.feedback.empty()) out << "  feedback: " << join_labels(lexicon, m.feedback, query_lang) << '\n';
      }
      out << "documents:\n";
      for (DocId d : result.documents()) {
        out << "  " << d;
        if (auto it = th->documents().find(d); it != th->documents().end()) {
          out << '\t' << it->second.uri << '\t' << it->second.title;
        }
        out << '\n';
      }
      return kExitOk;
    }

    if (*serve) {
      auto engine_ptr = make_engine(g, err);
      Engine& engine = *engine_ptr;
      std::string host = engine.config().host;
      int port = engine.config().port;
      if (!listen.empty()) parse_listen(listen, host, port);
      ApiService api(engine);
      const auto static_dir = engine.config().static_dir;
      HttpServer server(api, static_dir.empty() ? std::string() : static_dir.string());
      active_server = &server;
      std::signal(SIGINT, stop_on_signal);
      std::signal(SIGTERM, stop_on_signal);
      const bool ok = server.listen(host, port, [&](int bound) {
        out << "listening on " << host << ':' << bound << std::endl;
      });
      active_server = nullptr;
      if (!ok) {
        err << "cannot listen on " << host << ':' << port << '\n';
        return kExitFailure;
      }
      return kExitOk;
    }

    if (*th_export) {
      auto engine_ptr = make_engine(g, err);
      Engine& engine = *engine_ptr;
      const auto th = engine.snapshot();
      const auto text = simplified ? dump_json(to_json(simplify(*th))) : dump_json(to_json(*th));
      if (export_path.empty()) {
        out << text;
      } else {
        std::ofstream file(export_path, std::ios::binary);
        if (!(file << text)) throw Error("io_error", "cannot write " + export_path);
      }
      return kExitOk;
    }

    if (*th_import) {
      auto engine_ptr = make_engine(g, err);
      Engine& engine = *engine_ptr;
      engine.replace_thesaurus(load(import_path));
      out << "imported " << engine.snapshot()->node_count() << " node(s)\n";
      return kExitOk;
    }

    if (*dict_validate) {
      const auto config = load_config(config_path(config_override(g)));
      const auto report = validate_dictionaries(config.languages, config.dist);
      for (const auto& issue : report.issues) out << issue.describe() << '\n';
      return report.has_errors() ? kExitFailure : kExitOk;
    }

    if (*stats_export) {
      auto engine_ptr = make_engine(g, err);
      Engine& engine = *engine_ptr;
      std::ifstream file(stats_doc, std::ios::binary);
      if (!file) throw Error("io_error", "cannot open " + stats_doc);
      std::stringstream text;
      text << file.rdbuf();
      AmbiguitySession session("stats", {{1, DocumentInfo{stats_doc, stats_lang, {}}, text.str()}},
                               engine.lexicon());
      if (!stats_resolutions.empty()) {
        for (const auto& rule : read_resolutions_file(stats_resolutions)) session.apply(rule);
      }
      for (const auto& it : session.pending()) {
        err << "warning: skipping unresolved \"" << it.surface << "\" at phrase " << it.phrase << " position "
            << it.position << '\n';
      }
      const auto occurrences = session.occurrences();
      const auto& list = occurrences.at(1);
      const auto pairs = pair_statistics(list, engine.lexicon()->dist(), engine.config().n);
      const auto& lexicon = *engine.lexicon();
      write_stats_tsv(
          out, pairs, [&](const ConceptId& c) { return render_concept(lexicon, c, stats_lang); }, precision);
      return kExitOk;
    }

    if (*rel_decompose || *rel_maximal) {
      const auto rel = read_relation_file(relation_file);
      const auto rects = *rel_decompose ? decompose(rel, cap) : maximal_rectangles(rel, cap);
      write_rectangles(out, rects);
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error [" << e.code() << "]: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace rthes::service

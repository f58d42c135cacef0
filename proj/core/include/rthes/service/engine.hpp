#pragma once

// Long-lived service state. The thesaurus store is persisted to the data
// directory after every indexing run.

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rthes/service/config.hpp"
#include "rthes/session.hpp"
#include "rthes/thesaurus_store.hpp"

namespace rthes::service {

// One manifest line: doc_id<TAB>language<TAB>path<TAB>title. Paths are
// relative to the manifest's directory.
struct ManifestEntry {
  DocId id = 0;
  std::string language;
  std::string path;  // as written in the manifest
  std::string title;
  std::filesystem::path file;  // resolved location
};

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path);
std::vector<SessionDocument> load_documents(std::span<const ManifestEntry> entries);

class Engine {
 public:
  // Loads the dictionaries and, when present, the persisted thesaurus.
  explicit Engine(Config config);

  const Config& config() const { return config_; }
  std::shared_ptr<const Lexicon> lexicon() const { return lexicon_; }
  const ValidationReport& dictionary_report() const { return dictionary_report_; }
  ThesaurusStore& store() { return store_; }
  std::shared_ptr<const RectangularThesaurus> snapshot() const { return store_.snapshot(); }
  IndexParams index_params() const;

  // Entries of the configured corpus manifest; empty without one.
  std::vector<ManifestEntry> corpus() const;

  std::string open_session(std::vector<SessionDocument> documents);

  // Runs `f(session)` under the session's lock. Throws
  // SessionError("unknown_session").
  template <class F>
  auto with_session(const std::string& id, F&& f) {
    auto slot = find(id);
    std::lock_guard lock(slot->mutex);
    return std::forward<F>(f)(slot->session);
  }

  // Commits, indexes and persists. A committed session returns the report
  // of its first commit.
  IndexReport commit_session(const std::string& id);

  // Indexes a committed session outside the session table (CLI runs).
  IndexReport index(const AmbiguitySession& session, bool incremental = false);

  void replace_thesaurus(RectangularThesaurus th);
  std::filesystem::path thesaurus_path() const;
  void persist() const;

 private:
  struct Slot {
    Slot(std::string id, std::vector<SessionDocument> docs, std::shared_ptr<const Lexicon> lexicon)
        : session(std::move(id), std::move(docs), std::move(lexicon)) {}
    std::mutex mutex;
    AmbiguitySession session;
    std::optional<IndexReport> report;
  };

  std::shared_ptr<Slot> find(const std::string& id) const;

  Config config_;
  std::shared_ptr<const Lexicon> lexicon_;
  ValidationReport dictionary_report_;
  ThesaurusStore store_;
  mutable std::mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
  std::uint64_t next_session_ = 1;
};

}  // namespace rthes::service

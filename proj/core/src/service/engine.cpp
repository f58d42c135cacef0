#include "rthes/service/engine.hpp"

#include <fstream>
#include <sstream>

#include "rthes/errors.hpp"
#include "rthes/thesaurus_io.hpp"

namespace rthes::service {

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("io_error", "cannot open manifest " + path.string());
  std::vector<ManifestEntry> entries;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, '\t')) fields.push_back(field);
    if (fields.size() == 3) fields.emplace_back();
    if (fields.size() != 4) throw ParseError(path.string(), number, "expected doc_id<TAB>language<TAB>path<TAB>title");
    ManifestEntry e;
    try {
      std::size_t used = 0;
      const unsigned long id = std::stoul(fields[0], &used);
      if (used != fields[0].size() || id > 0xFFFFFFFFul) throw std::invalid_argument(fields[0]);
      e.id = static_cast<DocId>(id);
    } catch (const std::exception&) {
      throw ParseError(path.string(), number, "document id '" + fields[0] + "' is not a number");
    }
    e.language = fields[1];
    e.path = fields[2];
    e.title = fields[3];
    const std::filesystem::path p(e.path);
    e.file = p.is_absolute() ? p : path.parent_path() / p;
    entries.push_back(std::move(e));
  }
  return entries;
}

std::vector<SessionDocument> load_documents(std::span<const ManifestEntry> entries) {
  std::vector<SessionDocument> docs;
  for (const auto& e : entries) {
    std::ifstream in(e.file, std::ios::binary);
    if (!in) throw Error("io_error", "cannot open document " + e.file.string());
    std::stringstream text;
    text << in.rdbuf();
    docs.push_back({e.id, DocumentInfo{e.path, e.language, e.title}, text.str()});
  }
  return docs;
}

Engine::Engine(Config config) : config_(std::move(config)) {
  auto loaded = load_dictionaries(config_.languages, config_.dist);
  lexicon_ = std::move(loaded.lexicon);
  dictionary_report_ = std::move(loaded.report);
  if (!config_.data_dir.empty() && std::filesystem::exists(thesaurus_path())) {
    store_.replace(load(thesaurus_path()));
  }
}

IndexParams Engine::index_params() const {
  IndexParams p;
  p.n = config_.n;
  p.theta = config_.theta;
  p.cell_cap = config_.enumeration_cap;
  return p;
}

std::vector<ManifestEntry> Engine::corpus() const {
  if (config_.corpus.empty()) return {};
  return read_manifest(config_.corpus);
}

std::string Engine::open_session(std::vector<SessionDocument> documents) {
  std::string id;
  {
    std::lock_guard lock(sessions_mutex_);
    id = "s" + std::to_string(next_session_++);
  }
  // Analysis runs outside the table lock.
  auto slot = std::make_shared<Slot>(id, std::move(documents), lexicon_);
  std::lock_guard lock(sessions_mutex_);
  sessions_.emplace(id, std::move(slot));
  return id;
}

std::shared_ptr<Engine::Slot> Engine::find(const std::string& id) const {
  std::lock_guard lock(sessions_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw SessionError("unknown_session", "no session '" + id + "'");
  return it->second;
}

IndexReport Engine::commit_session(const std::string& id) {
  auto slot = find(id);
  std::lock_guard lock(slot->mutex);
  if (slot->report) return *slot->report;
  slot->session.commit();
  slot->report = index(slot->session);
  return *slot->report;
}

IndexReport Engine::index(const AmbiguitySession& session, bool incremental) {
  auto params = index_params();
  params.incremental = incremental;
  auto report = index_documents(session, params, store_);
  persist();
  return report;
}

void Engine::replace_thesaurus(RectangularThesaurus th) {
  store_.replace(std::move(th));
  persist();
}

std::filesystem::path Engine::thesaurus_path() const { return config_.data_dir / "thesaurus.json"; }

void Engine::persist() const {
  if (config_.data_dir.empty()) return;
  std::filesystem::create_directories(config_.data_dir);
  save(*store_.snapshot(), thesaurus_path());
}

}  // namespace rthes::service

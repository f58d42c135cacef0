#pragma once

// Access to the English/German fixture dictionaries and corpus.

#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "rthes/lexicon.hpp"
#include "rthes/session.hpp"

namespace rthes::fixture {

inline const std::filesystem::path kDir{RTHES_FIXTURE_DIR};

// A fresh directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("rthes-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ignored;
    std::filesystem::remove_all(path_, ignored);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::shared_ptr<const Lexicon> lexicon() {
  std::vector<DictionaryFiles> files;
  for (const char* lang : {"en", "de"}) {
    const auto dir = kDir / "dict" / lang;
    files.push_back({lang, dir / "variations.tsv", dir / "main.tsv", dir / "stopwords.tsv"});
  }
  return load_dictionaries(files).lexicon;
}

inline std::string read(const std::filesystem::path& relative) {
  std::ifstream in(kDir / relative, std::ios::binary);
  std::stringstream text;
  text << in.rdbuf();
  return text.str();
}

// Documents 1..count of one language's fixture corpus.
inline std::vector<SessionDocument> corpus(const std::string& language, int count, DocId first_id = 1) {
  std::vector<SessionDocument> docs;
  for (int i = 1; i <= count; ++i) {
    const std::string path = "corpus/" + language + "/doc" + std::to_string(i) + ".txt";
    docs.push_back({first_id + static_cast<DocId>(i - 1), DocumentInfo{path, language, {}}, read(path)});
  }
  return docs;
}

}  // namespace rthes::fixture

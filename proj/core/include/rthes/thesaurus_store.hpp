#pragma once

#include <memory>
#include <mutex>
#include <type_traits>
#include <utility>

#include "rthes/thesaurus.hpp"

namespace rthes {

// Single-writer, multi-reader holder. Readers take immutable snapshots;
// writers are serialized and mutate a private copy that is published only
// when the mutation returns normally.
class ThesaurusStore {
 public:
  explicit ThesaurusStore(RectangularThesaurus initial = {})
      : current_(std::make_shared<const RectangularThesaurus>(std::move(initial))) {}

  std::shared_ptr<const RectangularThesaurus> snapshot() const {
    std::lock_guard lock(snapshot_mutex_);
    return current_;
  }

  template <class Mutation>
  auto mutate(Mutation&& mutation) -> std::invoke_result_t<Mutation, RectangularThesaurus&> {
    std::lock_guard writer(writer_mutex_);
    auto draft = std::make_shared<RectangularThesaurus>(*snapshot());
    if constexpr (std::is_void_v<std::invoke_result_t<Mutation, RectangularThesaurus&>>) {
      std::forward<Mutation>(mutation)(*draft);
      publish(std::move(draft));
    } else {
      auto result = std::forward<Mutation>(mutation)(*draft);
      publish(std::move(draft));
      return result;
    }
  }

  void replace(RectangularThesaurus th) {
    std::lock_guard writer(writer_mutex_);
    publish(std::make_shared<RectangularThesaurus>(std::move(th)));
  }

 private:
  void publish(std::shared_ptr<RectangularThesaurus> next) {
    std::lock_guard lock(snapshot_mutex_);
    current_ = std::move(next);
  }

  mutable std::mutex snapshot_mutex_;
  std::mutex writer_mutex_;
  std::shared_ptr<const RectangularThesaurus> current_;
};

}  // namespace rthes

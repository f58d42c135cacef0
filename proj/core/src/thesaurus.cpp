#include "rthes/thesaurus.hpp"

#include <algorithm>
#include <functional>

namespace rthes {
namespace {

void invalid(const std::string& message) { throw Error("invalid_thesaurus", message); }

std::string node_name(NodeId id) { return "node " + std::to_string(raw(id)); }

bool strictly_inside(const std::set<ConceptId>& small, const std::set<ConceptId>& big) {
  return small.size() < big.size() && detail::is_subset(small, big);
}

}  // namespace

RectangularThesaurus::RectangularThesaurus() {
  nodes_.emplace(kInfimum, TermDocRectangle{});
  nodes_.emplace(kSupremum, TermDocRectangle{});
}

const TermDocRectangle& RectangularThesaurus::rectangle(NodeId id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw UnknownNode(raw(id));
  return it->second;
}

std::vector<NodeId> RectangularThesaurus::node_ids() const {
  std::vector<NodeId> out;
  out.reserve(node_count());
  for (const auto& [id, rect] : nodes_)
    if (!is_bound(id)) out.push_back(id);
  return out;
}

std::optional<NodeId> RectangularThesaurus::find_domain(const std::set<ConceptId>& domain) const {
  auto it = by_domain_.find(domain);
  if (it == by_domain_.end()) return std::nullopt;
  return it->second;
}

void RectangularThesaurus::register_document(DocId id, DocumentInfo info) {
  documents_.insert_or_assign(id, std::move(info));
  nodes_.at(kInfimum).codomain.insert(id);
}

InsertReport RectangularThesaurus::insert(const TermDocRectangle& rect) {
  if (rect.domain.empty() || rect.codomain.empty())
    throw InvalidRectangle("thesaurus rectangles need a nonempty domain and codomain");
  for (DocId d : rect.codomain)
    if (!documents_.contains(d)) register_document(d, {});

  InsertReport report;
  std::set<NodeId> touched;
  const std::size_t level = rect.domain.size();

  if (auto found = by_domain_.find(rect.domain); found != by_domain_.end()) {
    // Same domain: the documents join the existing node.
    const NodeId id = found->second;
    report.node = id;
    report.merged = true;
    nodes_.at(id).codomain.insert(rect.codomain.begin(), rect.codomain.end());
    touched.insert(id);
    extend_generics(rect.domain, rect.codomain, id, touched, report);
  } else {
    report.level_created = !levels_.contains(level);
    const NodeId id{next_id_++};
    report.node = id;

    TermDocRectangle node = rect;
    for (const auto& [other, other_rect] : nodes_) {
      if (is_bound(other)) continue;
      if (strictly_inside(node.domain, other_rect.domain))
        node.codomain.insert(other_rect.codomain.begin(), other_rect.codomain.end());
    }
    nodes_.emplace(id, node);
    by_domain_.emplace(node.domain, id);
    levels_[level].insert(id);
    touched.insert(id);
    extend_generics(node.domain, node.codomain, id, touched, report);
    link(id, report);
  }

  auto& top = nodes_.at(kSupremum).domain;
  for (const auto& c : rect.domain)
    if (top.insert(c).second) report.added_to_supremum.insert(c);

  refresh_neighbors(touched);
  return report;
}

void RectangularThesaurus::extend_generics(const std::set<ConceptId>& domain,
                                           const std::set<DocId>& docs, NodeId self,
                                           std::set<NodeId>& touched, InsertReport& report) {
  for (auto& [other, other_rect] : nodes_) {
    if (is_bound(other) || other == self) continue;
    if (!strictly_inside(other_rect.domain, domain)) continue;
    const auto before = other_rect.codomain.size();
    other_rect.codomain.insert(docs.begin(), docs.end());
    if (other_rect.codomain.size() != before) {
      touched.insert(other);
      report.extended.push_back(other);
    }
  }
}

void RectangularThesaurus::link(NodeId id, InsertReport& report) {
  const auto& rect = nodes_.at(id);
  std::vector<NodeId> uppers;
  std::vector<NodeId> lowers;
  for (const auto& [other, other_rect] : nodes_) {
    if (is_bound(other) || other == id) continue;
    if (other_rect.domain.size() > rect.domain.size() && leq(rect, other_rect)) uppers.push_back(other);
    if (other_rect.domain.size() < rect.domain.size() && leq(other_rect, rect)) lowers.push_back(other);
  }

  std::vector<NodeId> covers_up;
  for (NodeId u : uppers) {
    bool minimal = std::none_of(uppers.begin(), uppers.end(), [&](NodeId v) {
      return v != u && leq(nodes_.at(v), nodes_.at(u));
    });
    if (minimal) covers_up.push_back(u);
  }
  std::vector<NodeId> covers_down;
  for (NodeId l : lowers) {
    bool maximal = std::none_of(lowers.begin(), lowers.end(), [&](NodeId v) {
      return v != l && leq(nodes_.at(l), nodes_.at(v));
    });
    if (maximal) covers_down.push_back(l);
  }

  // Edges that now skip the new node stop being covering pairs.
  std::vector<NodeId> below = covers_down;
  below.push_back(kInfimum);
  std::vector<NodeId> above = covers_up;
  above.push_back(kSupremum);
  for (NodeId l : below)
    for (NodeId u : above) generic_edges_.erase({l, u});

  if (covers_up.empty()) covers_up.push_back(kSupremum);
  if (covers_down.empty()) {
    covers_down.push_back(kInfimum);
    report.linked_to_infimum = true;
  }
  for (NodeId u : covers_up) generic_edges_.insert({id, u});
  for (NodeId l : covers_down) generic_edges_.insert({l, id});
  report.specifics = covers_up;
  report.generics = covers_down;
}

void RectangularThesaurus::refresh_neighbors(const std::set<NodeId>& touched) {
  std::erase_if(neighbor_edges_, [&](const NeighborEdge& e) {
    return touched.contains(e.first) || touched.contains(e.second);
  });
  for (NodeId t : touched) {
    const auto& rect = nodes_.at(t);
    for (const auto& [other, other_rect] : nodes_) {
      if (is_bound(other) || other == t) continue;
      if (is_neighbor(rect, other_rect)) neighbor_edges_.insert(std::minmax(t, other));
    }
  }
}

std::vector<NodeId> RectangularThesaurus::navigate(NodeId id, Direction direction) const {
  if (!contains(id)) throw UnknownNode(raw(id));
  std::set<NodeId> out;
  switch (direction) {
    case Direction::generics:
      for (const auto& [lower, higher] : generic_edges_)
        if (higher == id) out.insert(lower);
      break;
    case Direction::specifics:
      for (const auto& [lower, higher] : generic_edges_)
        if (lower == id) out.insert(higher);
      break;
    case Direction::neighbors:
      for (const auto& [a, b] : neighbor_edges_) {
        if (a == id) out.insert(b);
        if (b == id) out.insert(a);
      }
      break;
  }
  return {out.begin(), out.end()};
}

TermDocRelation RectangularThesaurus::flatten() const {
  TermDocRelation rel;
  for (const auto& [id, rect] : nodes_) {
    if (is_bound(id)) continue;
    for (const auto& c : rect.domain)
      for (DocId d : rect.codomain) rel.insert(c, d);
  }
  return rel;
}

RectangularThesaurus RectangularThesaurus::assemble(Parts parts) {
  RectangularThesaurus th;
  for (auto& [id, info] : parts.documents) th.register_document(id, std::move(info));
  th.nodes_.at(kSupremum).domain = std::move(parts.concepts);
  const auto& top = th.supremum().domain;
  const auto& bottom = th.infimum().codomain;

  std::uint32_t max_id = 1;
  for (auto& [id, rect] : parts.nodes) {
    if (is_bound(id)) invalid(node_name(id) + " uses a reserved bound id");
    if (rect.domain.empty() || rect.codomain.empty()) invalid(node_name(id) + " has an empty side");
    if (!detail::is_subset(rect.domain, top))
      invalid(node_name(id) + " has concepts missing from the supremum");
    if (!detail::is_subset(rect.codomain, bottom))
      invalid(node_name(id) + " has unregistered documents");
    if (!th.by_domain_.emplace(rect.domain, id).second)
      invalid(node_name(id) + " repeats the domain of another node");
    th.levels_[rect.domain.size()].insert(id);
    max_id = std::max(max_id, raw(id));
    th.nodes_.emplace(id, std::move(rect));
  }
  th.next_id_ = max_id + 1;

  for (const auto& [lower, higher] : parts.generic_edges) {
    if (!th.contains(lower) || !th.contains(higher))
      invalid("generic edge references an unknown node");
    if (lower == higher || !leq(th.nodes_.at(lower), th.nodes_.at(higher)))
      invalid("generic edge " + std::to_string(raw(lower)) + "->" + std::to_string(raw(higher)) +
              " violates the rectangle order");
  }
  for (const auto& [a, b] : parts.neighbor_edges) {
    if (!th.contains(a) || !th.contains(b)) invalid("neighbor edge references an unknown node");
    if (!(a < b) || !is_neighbor(th.nodes_.at(a), th.nodes_.at(b)))
      invalid("neighbor edge " + std::to_string(raw(a)) + "-" + std::to_string(raw(b)) +
              " does not join neighbors");
  }
  th.generic_edges_ = std::move(parts.generic_edges);
  th.neighbor_edges_ = std::move(parts.neighbor_edges);
  return th;
}

NodeId principal_parent(const RectangularThesaurus& th, NodeId id) {
  std::optional<NodeId> best;
  for (NodeId g : th.navigate(id, Direction::generics)) {
    if (is_bound(g)) continue;
    if (!best) {
      best = g;
      continue;
    }
    const auto& cand = th.rectangle(g).domain;
    const auto& cur = th.rectangle(*best).domain;
    if (cand.size() > cur.size() || (cand.size() == cur.size() && cand < cur)) best = g;
  }
  return best.value_or(kInfimum);
}

SimplifiedThesaurus simplify(const RectangularThesaurus& th) {
  SimplifiedThesaurus out;
  out.concepts = th.supremum().domain;
  out.documents = th.documents();
  out.generic_edges = th.generic_edges();
  out.neighbor_edges = th.neighbor_edges();
  for (NodeId id : th.node_ids()) {
    const auto& rect = th.rectangle(id);
    const NodeId parent = principal_parent(th, id);
    const auto& base = th.rectangle(parent);
    SimplifiedNode node{id, parent, {}, {}};
    std::set_difference(rect.domain.begin(), rect.domain.end(), base.domain.begin(), base.domain.end(),
                        std::inserter(node.added_terms, node.added_terms.end()));
    std::set_difference(base.codomain.begin(), base.codomain.end(), rect.codomain.begin(),
                        rect.codomain.end(), std::inserter(node.removed_docs, node.removed_docs.end()));
    out.nodes.push_back(std::move(node));
  }
  return out;
}

RectangularThesaurus reconstruct(const SimplifiedThesaurus& simplified) {
  std::map<NodeId, const SimplifiedNode*> by_id;
  for (const auto& node : simplified.nodes) {
    if (is_bound(node.id)) invalid(node_name(node.id) + " uses a reserved bound id");
    if (!by_id.emplace(node.id, &node).second) invalid(node_name(node.id) + " appears twice");
  }

  TermDocRectangle bottom;
  for (const auto& [id, info] : simplified.documents) bottom.codomain.insert(id);

  enum class State { visiting, done };
  std::map<NodeId, State> state;
  std::map<NodeId, TermDocRectangle> full;

  std::function<const TermDocRectangle&(NodeId)> resolve = [&](NodeId id) -> const TermDocRectangle& {
    if (id == kInfimum) return bottom;
    auto it = by_id.find(id);
    if (it == by_id.end()) invalid("parent " + node_name(id) + " is not a node");
    if (auto s = state.find(id); s != state.end()) {
      if (s->second == State::visiting) invalid("cyclic principal-parent chain at " + node_name(id));
      return full.at(id);
    }
    state[id] = State::visiting;
    const SimplifiedNode& node = *it->second;
    const TermDocRectangle& base = resolve(node.parent);
    TermDocRectangle rect;
    rect.domain = base.domain;
    rect.domain.insert(node.added_terms.begin(), node.added_terms.end());
    std::set_difference(base.codomain.begin(), base.codomain.end(), node.removed_docs.begin(),
                        node.removed_docs.end(), std::inserter(rect.codomain, rect.codomain.end()));
    state[id] = State::done;
    return full.emplace(id, std::move(rect)).first->second;
  };

  RectangularThesaurus::Parts parts;
  parts.concepts = simplified.concepts;
  parts.documents = simplified.documents;
  for (const auto& node : simplified.nodes) parts.nodes.emplace(node.id, resolve(node.id));
  parts.generic_edges = simplified.generic_edges;
  parts.neighbor_edges = simplified.neighbor_edges;
  return RectangularThesaurus::assemble(std::move(parts));
}

}  // namespace rthes

#pragma once

// The rectangular thesaurus: rectangles of concepts x documents arranged by
// cardinality level, linked by generic/specific edges (the covering pairs of
// the rectangle order) and neighbor edges, between the infimum
// (empty, all documents) and the supremum (all concepts, empty).

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rthes/relation.hpp"

namespace rthes {

using ConceptId = std::string;
using DocId = std::uint32_t;
using TermDocRelation = BinaryRelation<ConceptId, DocId>;
using TermDocRectangle = Rectangle<ConceptId, DocId>;

enum class NodeId : std::uint32_t {};

inline constexpr NodeId kInfimum{0};
inline constexpr NodeId kSupremum{1};

constexpr std::uint32_t raw(NodeId id) { return static_cast<std::uint32_t>(id); }
constexpr bool is_bound(NodeId id) { return id == kInfimum || id == kSupremum; }

struct DocumentInfo {
  std::string uri;
  std::string language;
  std::string title;

  friend bool operator==(const DocumentInfo&, const DocumentInfo&) = default;
};

// (lower, higher): lower <= higher, i.e. lower is a generic of higher.
using GenericEdge = std::pair<NodeId, NodeId>;
// Stored with first < second.
using NeighborEdge = std::pair<NodeId, NodeId>;

enum class Direction { generics, specifics, neighbors };

// What one insertion did, step by step.
struct InsertReport {
  NodeId node{};
  bool level_created = false;
  bool merged = false;  // domain already present: documents added to that node
  std::vector<NodeId> generics;
  std::vector<NodeId> specifics;
  std::set<ConceptId> added_to_supremum;
  bool linked_to_infimum = false;
  std::vector<NodeId> extended;  // other nodes whose codomain grew
};

class RectangularThesaurus {
 public:
  // Raw contents for rebuilding a thesaurus from storage. The infimum's
  // codomain is the key set of `documents`.
  struct Parts {
    std::set<ConceptId> concepts;
    std::map<DocId, DocumentInfo> documents;
    std::map<NodeId, TermDocRectangle> nodes;
    std::set<GenericEdge> generic_edges;
    std::set<NeighborEdge> neighbor_edges;
  };

  RectangularThesaurus();

  // Validates every structural invariant and throws Error("invalid_thesaurus")
  // on the first violation.
  static RectangularThesaurus assemble(Parts parts);

  void register_document(DocId id, DocumentInfo info);

  // Rectangles must have a nonempty domain and codomain. Unregistered
  // documents are registered with empty metadata.
  //
  // Besides the merge/insert steps, documents flow down the order: a node
  // whose domain is strictly contained in another's holds all of that
  // node's documents, so every stored pair ordered by domain inclusion also
  // satisfies the rectangle order.
  InsertReport insert(const TermDocRectangle& rect);

  bool contains(NodeId id) const { return nodes_.contains(id); }
  const TermDocRectangle& rectangle(NodeId id) const;
  const TermDocRectangle& infimum() const { return nodes_.at(kInfimum); }
  const TermDocRectangle& supremum() const { return nodes_.at(kSupremum); }

  // Non-bound nodes, ascending id.
  std::vector<NodeId> node_ids() const;
  std::size_t node_count() const { return nodes_.size() - 2; }
  bool empty() const { return node_count() == 0; }

  const std::map<std::size_t, std::set<NodeId>>& levels() const { return levels_; }
  const std::set<GenericEdge>& generic_edges() const { return generic_edges_; }
  const std::set<NeighborEdge>& neighbor_edges() const { return neighbor_edges_; }
  const std::map<DocId, DocumentInfo>& documents() const { return documents_; }

  std::optional<NodeId> find_domain(const std::set<ConceptId>& domain) const;

  // Adjacent nodes, ascending id. Generics sit below a node in the order
  // (fewer concepts, more documents); specifics above it.
  std::vector<NodeId> navigate(NodeId id, Direction direction) const;

  TermDocRelation flatten() const;

  friend bool operator==(const RectangularThesaurus& a, const RectangularThesaurus& b) {
    return a.nodes_ == b.nodes_ && a.generic_edges_ == b.generic_edges_ &&
           a.neighbor_edges_ == b.neighbor_edges_ && a.documents_ == b.documents_;
  }

 private:
  void link(NodeId id, InsertReport& report);
  void extend_generics(const std::set<ConceptId>& domain, const std::set<DocId>& docs,
                       NodeId self, std::set<NodeId>& touched, InsertReport& report);
  void refresh_neighbors(const std::set<NodeId>& touched);

  std::map<NodeId, TermDocRectangle> nodes_;  // includes both bounds
  std::map<std::set<ConceptId>, NodeId> by_domain_;
  std::map<std::size_t, std::set<NodeId>> levels_;
  std::set<GenericEdge> generic_edges_;
  std::set<NeighborEdge> neighbor_edges_;
  std::map<DocId, DocumentInfo> documents_;
  std::uint32_t next_id_ = 2;
};

// Lossless storage form: each non-bound node keeps only what it adds to
// (concepts) and removes from (documents) its principal parent.
struct SimplifiedNode {
  NodeId id{};
  NodeId parent{};
  std::set<ConceptId> added_terms;
  std::set<DocId> removed_docs;

  friend bool operator==(const SimplifiedNode&, const SimplifiedNode&) = default;
};

struct SimplifiedThesaurus {
  std::set<ConceptId> concepts;
  std::map<DocId, DocumentInfo> documents;
  std::vector<SimplifiedNode> nodes;  // ascending id
  std::set<GenericEdge> generic_edges;
  std::set<NeighborEdge> neighbor_edges;

  friend bool operator==(const SimplifiedThesaurus&, const SimplifiedThesaurus&) = default;
};

// The generic of `id` with the largest domain (ties: smallest domain in
// lexicographic order); the infimum when the node has no other generic.
NodeId principal_parent(const RectangularThesaurus& th, NodeId id);

SimplifiedThesaurus simplify(const RectangularThesaurus& th);

// Throws Error("invalid_thesaurus") on unknown or cyclic parent links.
RectangularThesaurus reconstruct(const SimplifiedThesaurus& simplified);

}  // namespace rthes

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "rthes/errors.hpp"
#include "rthes/thesaurus.hpp"

namespace rthes {
namespace {

using Rect = TermDocRectangle;

TermDocRelation pairs_of(std::initializer_list<std::pair<ConceptId, DocId>> pairs) {
  TermDocRelation rel;
  for (const auto& [c, d] : pairs) rel.insert(c, d);
  return rel;
}

TEST(Thesaurus, StartsWithBoundsOnly) {
  RectangularThesaurus th;
  EXPECT_TRUE(th.empty());
  EXPECT_TRUE(th.infimum().domain.empty());
  EXPECT_TRUE(th.supremum().codomain.empty());
  EXPECT_TRUE(th.flatten().empty());
  EXPECT_TRUE(th.generic_edges().empty());
}

TEST(Thesaurus, FirstInsertionLinksBothBounds) {
  RectangularThesaurus th;
  const auto report = th.insert(Rect{{"a", "b"}, {1}});
  EXPECT_TRUE(report.level_created);
  EXPECT_FALSE(report.merged);
  EXPECT_TRUE(report.linked_to_infimum);
  EXPECT_EQ(report.added_to_supremum, (std::set<ConceptId>{"a", "b"}));
  EXPECT_EQ(th.supremum().domain, (std::set<ConceptId>{"a", "b"}));
  EXPECT_EQ(th.levels().at(2), std::set<NodeId>{report.node});
  EXPECT_EQ(th.navigate(report.node, Direction::specifics), std::vector<NodeId>{kSupremum});
  EXPECT_EQ(th.navigate(report.node, Direction::generics), std::vector<NodeId>{kInfimum});
}

TEST(Thesaurus, IdenticalDomainMergesDocuments) {
  RectangularThesaurus th;
  const auto first = th.insert(Rect{{"a", "b"}, {1}});
  const auto second = th.insert(Rect{{"a", "b"}, {2}});
  EXPECT_TRUE(second.merged);
  EXPECT_EQ(second.node, first.node);
  EXPECT_EQ(th.node_count(), 1u);
  EXPECT_EQ(th.rectangle(first.node).codomain, (std::set<DocId>{1, 2}));
  EXPECT_EQ(th.flatten(), pairs_of({{"a", 1}, {"b", 1}, {"a", 2}, {"b", 2}}));
}

TEST(Thesaurus, SingleNodeFlattens) {
  RectangularThesaurus th;
  th.insert(Rect{{"a"}, {1}});
  EXPECT_EQ(th.flatten(), pairs_of({{"a", 1}}));
}

TEST(Thesaurus, ChainHasOneGenericAndOneSpecificInTheMiddle) {
  RectangularThesaurus th;
  const auto low = th.insert(Rect{{"a"}, {1, 2, 3}}).node;
  const auto mid = th.insert(Rect{{"a", "b"}, {1, 2}}).node;
  const auto high = th.insert(Rect{{"a", "b", "c"}, {1}}).node;
  EXPECT_EQ(th.navigate(mid, Direction::generics), std::vector<NodeId>{low});
  EXPECT_EQ(th.navigate(mid, Direction::specifics), std::vector<NodeId>{high});
  EXPECT_EQ(th.navigate(kSupremum, Direction::generics), std::vector<NodeId>{high});
  EXPECT_EQ(th.navigate(kInfimum, Direction::specifics), std::vector<NodeId>{low});
  EXPECT_TRUE(th.neighbor_edges().empty());
}

TEST(Thesaurus, InsertingBetweenNodesReplacesTheSkippedEdge) {
  RectangularThesaurus th;
  const auto low = th.insert(Rect{{"a"}, {1, 2}}).node;
  const auto high = th.insert(Rect{{"a", "b", "c"}, {1}}).node;
  ASSERT_TRUE(th.generic_edges().contains({low, high}));
  const auto mid = th.insert(Rect{{"a", "b"}, {1}}).node;
  EXPECT_FALSE(th.generic_edges().contains({low, high}));
  EXPECT_TRUE(th.generic_edges().contains({low, mid}));
  EXPECT_TRUE(th.generic_edges().contains({mid, high}));
}

TEST(Thesaurus, DocumentsFlowToSmallerDomains) {
  RectangularThesaurus th;
  const auto big = th.insert(Rect{{"a", "b"}, {1}}).node;
  const auto small = th.insert(Rect{{"a"}, {2}});
  // A node holds the documents of every node above it.
  EXPECT_EQ(th.rectangle(small.node).codomain, (std::set<DocId>{1, 2}));
  EXPECT_TRUE(th.generic_edges().contains({small.node, big}));
  const auto extra = th.insert(Rect{{"a", "b"}, {3}});
  EXPECT_EQ(extra.extended, std::vector<NodeId>{small.node});
  EXPECT_EQ(th.rectangle(small.node).codomain, (std::set<DocId>{1, 2, 3}));
}

TEST(Thesaurus, NeighborsAreSymmetric) {
  RectangularThesaurus th;
  th.insert(Rect{{"a", "b"}, {1}});
  th.insert(Rect{{"b", "c"}, {2}});
  th.insert(Rect{{"c", "d"}, {1, 3}});
  for (NodeId a : th.node_ids()) {
    for (NodeId b : th.navigate(a, Direction::neighbors)) {
      const auto back = th.navigate(b, Direction::neighbors);
      EXPECT_NE(std::find(back.begin(), back.end(), a), back.end());
    }
  }
  EXPECT_FALSE(th.neighbor_edges().empty());
}

TEST(Thesaurus, RejectsEmptySidesAndUnknownNodes) {
  RectangularThesaurus th;
  EXPECT_THROW(th.insert(Rect{{}, {1}}), InvalidRectangle);
  EXPECT_THROW(th.insert(Rect{{"a"}, {}}), InvalidRectangle);
  EXPECT_THROW(th.navigate(NodeId{42}, Direction::generics), UnknownNode);
  EXPECT_THROW(th.rectangle(NodeId{42}), UnknownNode);
}

TEST(Thesaurus, GenericEdgesAreCoveringPairsOfTheOrder) {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> docs(3, 6);
  for (int round = 0; round < 40; ++round) {
    RectangularThesaurus th;
    for (const auto& [d, terms] : oracle::random_term_sets(rng, docs(rng), 5, 0.45)) th.insert(Rect{terms, {d}});

    std::vector<NodeId> all = th.node_ids();
    all.push_back(kInfimum);
    all.push_back(kSupremum);
    auto below = [&](NodeId x, NodeId y) {
      if (x == y) return false;
      if (x == kInfimum || y == kSupremum) return true;
      if (y == kInfimum || x == kSupremum) return false;
      return leq(th.rectangle(x), th.rectangle(y));
    };
    std::set<GenericEdge> expected;
    for (NodeId x : all)
      for (NodeId y : all) {
        if (!below(x, y) || (x == kInfimum && y == kSupremum)) continue;
        const bool covering =
            std::none_of(all.begin(), all.end(), [&](NodeId z) { return below(x, z) && below(z, y); });
        if (covering) expected.insert({x, y});
      }
    EXPECT_EQ(th.generic_edges(), expected) << "round " << round;
  }
}

TEST(Simplified, ChildStoresOnlyTheDifference) {
  RectangularThesaurus th;
  const auto parent = th.insert(Rect{{"a"}, {1, 2}}).node;
  const auto child = th.insert(Rect{{"a", "b"}, {1}}).node;
  const auto s = simplify(th);
  ASSERT_EQ(s.nodes.size(), 2u);
  EXPECT_EQ(s.nodes[0], (SimplifiedNode{parent, kInfimum, {"a"}, {}}));
  EXPECT_EQ(s.nodes[1], (SimplifiedNode{child, parent, {"b"}, {2}}));
  EXPECT_EQ(reconstruct(s), th);
}

TEST(Simplified, RootNodeIsStoredAgainstTheInfimum) {
  RectangularThesaurus th;
  th.register_document(7, {});
  const auto id = th.insert(Rect{{"a", "b"}, {1}}).node;
  const auto s = simplify(th);
  EXPECT_EQ(s.nodes.front(), (SimplifiedNode{id, kInfimum, {"a", "b"}, {7}}));
}

TEST(Simplified, PrincipalParentPrefersTheLargestDomain) {
  RectangularThesaurus th;
  const auto a = th.insert(Rect{{"a"}, {1, 2, 3}}).node;
  const auto bc = th.insert(Rect{{"b", "c"}, {1, 2}}).node;
  const auto top = th.insert(Rect{{"a", "b", "c"}, {1}}).node;
  EXPECT_EQ(th.navigate(top, Direction::generics), (std::vector<NodeId>{a, bc}));
  EXPECT_EQ(principal_parent(th, top), bc);
  EXPECT_EQ(reconstruct(simplify(th)), th);
}

TEST(Simplified, CyclesAndDanglingParentsAreRejected) {
  SimplifiedThesaurus s;
  s.concepts = {"a"};
  s.documents = {{1, {}}};
  s.nodes = {{NodeId{2}, NodeId{3}, {"a"}, {}}, {NodeId{3}, NodeId{2}, {}, {}}};
  EXPECT_THROW(reconstruct(s), Error);
  s.nodes = {{NodeId{2}, NodeId{9}, {"a"}, {}}};
  EXPECT_THROW(reconstruct(s), Error);
}

TEST(Assemble, RejectsOrderViolations) {
  RectangularThesaurus::Parts parts;
  parts.concepts = {"a", "b"};
  parts.documents = {{1, {}}, {2, {}}};
  parts.nodes = {{NodeId{2}, Rect{{"a"}, {1}}}, {NodeId{3}, Rect{{"a", "b"}, {1, 2}}}};
  parts.generic_edges = {{NodeId{2}, NodeId{3}}};
  EXPECT_THROW(RectangularThesaurus::assemble(parts), Error);
}

}  // namespace
}  // namespace rthes

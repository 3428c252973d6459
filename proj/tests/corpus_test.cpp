#include <gtest/gtest.h>

#include <map>
#include <set>

#include "fixtures.hpp"
#include "hierlabel/corpus/df_filter.hpp"
#include "hierlabel/corpus/vocabulary.hpp"
#include "hierlabel/synthetic.hpp"

using namespace hierlabel;
using namespace hierlabel::corpus;

namespace {

std::string error_message(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

ErrorKind error_kind(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::internal;
}

}  // namespace

TEST(Matrix, ParsesHeaderAndCells) {
  auto m = parse_matrix("3 4\n0 1 2\n2 3 1\n");
  EXPECT_EQ(m.n_docs(), 3u);
  EXPECT_EQ(m.n_terms(), 4u);
  EXPECT_EQ(m.nnz(), 2u);
  EXPECT_EQ(m.count(0, 1), 2u);
  EXPECT_EQ(m.count(2, 3), 1u);
  EXPECT_EQ(m.count(1, 1), 0u);
}

TEST(Matrix, EmptyCellSectionIsAllZero) {
  auto m = parse_matrix("3 4\n");
  EXPECT_EQ(m.nnz(), 0u);
  EXPECT_EQ(m.total(), 0u);
  EXPECT_EQ(m.document_frequency(2), 0u);
}

TEST(Matrix, RejectsBadInput) {
  EXPECT_NE(error_message([] { parse_matrix("3 4\n5 0 1\n"); }).find("doc-id out of range"), std::string::npos);
  EXPECT_NE(error_message([] { parse_matrix("3 4\n0 0 0\n"); }).find("count must be positive"), std::string::npos);
  EXPECT_NE(error_message([] { parse_matrix("3 4\n0 0 -2\n"); }).find("count must be positive"), std::string::npos);
  EXPECT_NE(error_message([] { parse_matrix("3 4\n0 0 1\n0 0 2\n"); }).find("duplicate"), std::string::npos);
  EXPECT_EQ(error_kind([] { parse_matrix("3 4\n0 0 1\n0 0 2\n"); }), ErrorKind::input);
}

TEST(Matrix, ParseErrorCarriesLineNumber) {
  try {
    parse_matrix("3 4\n0 1 1\n0 x 1\n", "m.txt");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.entity(), "m.txt:3");
    EXPECT_EQ(e.kind(), ErrorKind::input);
  }
}

TEST(Matrix, PostingsAreSortedAndPresenceOnly) {
  auto m = parse_matrix("5 2\n4 0 3\n1 0 1\n3 1 2\n");
  auto p = m.postings(0);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p[0], 1u);
  EXPECT_EQ(p[1], 4u);
}

TEST(Matrix, RoundTripIsBitIdentical) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto c = synthetic::random_instance(seed);
    const std::string once = format_matrix(c.matrix);
    const std::string twice = format_matrix(parse_matrix(once));
    EXPECT_EQ(once, twice);
  }
}

TEST(Vocabulary, ParsesAndRejectsDuplicates) {
  auto v = parse_vocabulary("0\tresearch\n1\tinnovation\n");
  EXPECT_EQ(v.size(), 2u);
  EXPECT_EQ(v.surface(1), "innovation");
  EXPECT_EQ(v.find("research"), std::optional<TermId>(0));
  EXPECT_EQ(error_kind([] { parse_vocabulary("0\ta\n1\ta\n"); }), ErrorKind::input);
  EXPECT_EQ(error_kind([] { parse_vocabulary("0\ta\n2\tb\n"); }), ErrorKind::input);
  EXPECT_EQ(format_vocabulary(v), "0\tresearch\n1\tinnovation\n");
}

TEST(Hierarchy, SmallestTreeLevels) {
  auto h = Hierarchy::build(fixtures::tree({{std::nullopt, {}}, {0, {0, 1}}, {0, {2}}}), 3);
  EXPECT_EQ(h.size(), 3u);
  EXPECT_EQ(h.root(), 0u);
  EXPECT_EQ(h.level(0), 0u);
  EXPECT_EQ(h.level(1), 1u);
  EXPECT_EQ(h.level(2), 1u);
  EXPECT_EQ(h.docset(0).size(), 3u);
  EXPECT_EQ(h.docset(2).size(), 1u);
}

TEST(Hierarchy, ValidationErrorsAreDistinct) {
  auto msg = [](std::vector<NodeRecord> r, std::size_t n_docs) {
    return error_message([&] { Hierarchy::build(r, n_docs); });
  };
  using fixtures::tree;
  EXPECT_NE(msg(tree({{std::nullopt, {0}}, {std::nullopt, {1}}}), 2).find("multiple roots"), std::string::npos);
  {
    auto r = tree({{std::nullopt, {}}, {0, {0}}});
    r[1].parent = 1;
    EXPECT_NE(msg(r, 1).find("cycle"), std::string::npos);
  }
  {
    auto r = tree({{std::nullopt, {}}, {0, {0}}});
    r[1].parent = 7;
    EXPECT_NE(msg(r, 1).find("orphan"), std::string::npos);
  }
  EXPECT_NE(msg(tree({{std::nullopt, {}}, {0, {0}}, {0, {}}}), 1).find("empty leaf"), std::string::npos);
  EXPECT_NE(msg(tree({{std::nullopt, {}}, {0, {0}}, {0, {0}}}), 1).find("two leaves"), std::string::npos);
  EXPECT_NE(msg(tree({{std::nullopt, {}}, {0, {0}}, {0, {1}}}), 3).find("unassigned"), std::string::npos);
  EXPECT_NE(msg(tree({{std::nullopt, {2}}, {0, {0}}, {0, {1}}}), 3).find("internal node"), std::string::npos);
  {
    // Two nodes pointing at each other, detached from the root.
    auto r = tree({{std::nullopt, {0}}, {std::nullopt, {}}, {std::nullopt, {}}});
    r[1].parent = 2;
    r[2].parent = 1;
    r[1].children = {2};
    r[2].children = {1};
    EXPECT_NE(msg(r, 1).find("cycle"), std::string::npos);
  }
}

TEST(Hierarchy, JsonRoundTrip) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto c = synthetic::random_instance(seed);
    const std::string once = format_hierarchy(c.hierarchy);
    const std::string twice = format_hierarchy(parse_hierarchy(once, c.matrix.n_docs()));
    EXPECT_EQ(once, twice);
  }
}

TEST(Hierarchy, ParsesFileFormat) {
  const char* text = R"({"nodes":[{"id":0,"parent":null,"children":[1,2],"docs":[]},
                                  {"id":1,"parent":0,"children":[],"docs":[0,1]},
                                  {"id":2,"parent":0,"children":[],"docs":[2]}]})";
  auto h = parse_hierarchy(text, 3);
  EXPECT_EQ(h.children(0).size(), 2u);
  EXPECT_TRUE(h.is_leaf(2));
}

TEST(Hierarchy, DescendantPathLengths) {
  auto h = Hierarchy::build(fixtures::tree({{std::nullopt, {}}, {0, {}}, {1, {0}}, {1, {1}}, {0, {2}}}), 3);
  std::map<NodeId, std::uint32_t> e;
  h.for_each_descendant(0, [&](NodeId g, std::uint32_t d) { e[g] = d; });
  EXPECT_EQ(e.size(), 4u);
  EXPECT_EQ(e[1], 1u);
  EXPECT_EQ(e[2], 2u);
  EXPECT_EQ(e[3], 2u);
  EXPECT_EQ(e[4], 1u);
  std::size_t n = 0;
  h.for_each_descendant(2, [&](NodeId, std::uint32_t) { ++n; });
  EXPECT_EQ(n, 0u);
}

TEST(DfFilter, TableBounds) {
  EXPECT_EQ(salton_df_bounds(328, 0.01, 0.10), (std::pair<Count, Count>{3, 33}));
  EXPECT_EQ(salton_df_bounds(385, 0.01, 0.10), (std::pair<Count, Count>{4, 39}));
}

TEST(DfFilter, IdentityBoundsAndIdempotence) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto c = synthetic::random_instance(seed);
    bool any = false;
    for (TermId t = 0; t < c.matrix.n_terms(); ++t) any = any || c.matrix.document_frequency(t) > 0;
    if (!any) continue;
    // low = 0 keeps df = 0 terms too: identity.
    auto id = salton_df_filter(c.matrix, 0.0, 1.0);
    EXPECT_EQ(id.kept.size(), c.matrix.n_terms());
    EXPECT_EQ(format_matrix(id.matrix), format_matrix(c.matrix));

    try {
      auto once = salton_df_filter(c.matrix, 0.05, 0.5);
      auto twice = salton_df_filter(once.matrix, 0.05, 0.5);
      EXPECT_EQ(format_matrix(once.matrix), format_matrix(twice.matrix));
    } catch (const Error& e) {
      EXPECT_STREQ(e.what(), "empty vocabulary after filter");
    }
  }
}

TEST(DfFilter, RejectsBadBoundsAndEmptyResult) {
  auto m = parse_matrix("2 2\n0 0 1\n1 0 1\n0 1 1\n1 1 1\n");
  EXPECT_EQ(error_kind([&] { salton_df_filter(m, 0.5, 0.2); }), ErrorKind::config);
  EXPECT_EQ(error_message([&] { salton_df_filter(m, 0.0, 0.4); }), "empty vocabulary after filter");
}

TEST(NodeStats, Table2Totals) {
  auto inst = fixtures::table2();
  auto s = inst.stats();
  EXPECT_EQ(s.freq(0, 0), 10u);
  EXPECT_EQ(s.total(0), 45u);
  EXPECT_EQ(s.total(1), 15u);
  EXPECT_EQ(s.total(2), 17u);
  EXPECT_EQ(s.total(3), 13u);
  EXPECT_EQ(s.child_support(0, 0), 3u);
  EXPECT_EQ(s.size(0), 6u);
}

TEST(NodeStats, SingleLeafEqualsMatrix) {
  auto m = parse_matrix("2 3\n0 0 2\n0 2 1\n1 2 4\n");
  auto h = Hierarchy::build(fixtures::tree({{std::nullopt, {0, 1}}}), 2);
  NodeTermStats s(m, h);
  EXPECT_EQ(s.freq(0, 0), 2u);
  EXPECT_EQ(s.freq(0, 1), 0u);
  EXPECT_EQ(s.freq(0, 2), 5u);
  EXPECT_EQ(s.docfreq(0, 2), 2u);
  EXPECT_EQ(s.collection_total(), m.total());
}

TEST(NodeStats, MatchesBruteForceOnRandomTrees) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto c = synthetic::random_instance(seed);
    NodeTermStats s(c.matrix, c.hierarchy);
    const auto& h = s.hierarchy();
    Count root_sum = 0;
    for (const auto& e : s.support(h.root())) root_sum += e.freq;
    EXPECT_EQ(root_sum, c.matrix.total());
    for (NodeId v = 0; v < h.size(); ++v) {
      std::set<DocId> docs(h.docset(v).begin(), h.docset(v).end());
      EXPECT_EQ(docs.size(), s.size(v));
      for (TermId t = 0; t < c.matrix.n_terms(); ++t) {
        Count f = 0, df = 0;
        for (DocId d : docs) {
          f += c.matrix.count(d, t);
          df += c.matrix.count(d, t) > 0;
        }
        ASSERT_EQ(s.freq(v, t), f) << "seed " << seed << " node " << v;
        ASSERT_EQ(s.docfreq(v, t), df);
        EXPECT_LE(df, s.size(v));
        EXPECT_GE(f, df);
        if (!h.is_leaf(v)) {
          Count sum = 0;
          std::uint32_t support = 0;
          for (NodeId ch : h.children(v)) {
            sum += s.freq(ch, t);
            support += s.freq(ch, t) > 0;
          }
          ASSERT_EQ(sum, s.freq(v, t));
          ASSERT_EQ(support, s.child_support(v, t));
        }
      }
    }
  }
}

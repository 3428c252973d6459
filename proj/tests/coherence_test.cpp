#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "hierlabel/coherence/npmi.hpp"

using namespace hierlabel;
using namespace hierlabel::coherence;

namespace {

std::vector<std::vector<TermId>> random_docs(std::mt19937_64& rng, std::size_t n_docs, TermId n_terms) {
  std::vector<std::vector<TermId>> docs(n_docs);
  std::uniform_int_distribution<int> len(0, 8);
  std::uniform_int_distribution<TermId> term(0, n_terms - 1);
  for (auto& d : docs) {
    const int l = len(rng);
    for (int i = 0; i < l; ++i) d.push_back(term(rng));
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
  }
  return docs;
}

std::uint64_t brute_joint(const std::vector<std::vector<TermId>>& docs, TermId a, TermId b) {
  std::uint64_t n = 0;
  for (const auto& d : docs) {
    const bool ha = std::find(d.begin(), d.end(), a) != d.end();
    const bool hb = std::find(d.begin(), d.end(), b) != d.end();
    n += ha && hb;
  }
  return n;
}

}  // namespace

TEST(Counts, SingleWindowAndOutOfVocabulary) {
  corpus::Vocabulary vocab({"a", "b", "c"});
  auto docs = tokenize_reference("a zzz b a\n", vocab);
  ASSERT_EQ(docs.size(), 1u);
  auto c = count_cooccurrence(docs, 3);
  EXPECT_EQ(c.n_windows, 1u);
  EXPECT_EQ(c.unary[0], 1u);
  EXPECT_EQ(c.unary[1], 1u);
  EXPECT_EQ(c.unary[2], 0u);
  EXPECT_EQ(c.joint(0, 1), 1u);
  EXPECT_EQ(c.pairwise.size(), 1u);
  EXPECT_THROW(tokenize_reference("\n  \n", vocab), Error);
}

TEST(Counts, MatchBruteForceAcrossShards) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    auto docs = random_docs(rng, 1 + rng() % 60, 12);
    auto one = count_cooccurrence(docs, 12);
    auto four = count_cooccurrence(docs, 12, nullptr, 4);
    EXPECT_EQ(one.unary, four.unary);
    EXPECT_EQ(one.pairwise, four.pairwise);
    EXPECT_EQ(one.n_windows, docs.size());
    for (TermId a = 0; a < 12; ++a) {
      EXPECT_EQ(one.unary[a], brute_joint(docs, a, a));
      for (TermId b = a + 1; b < 12; ++b) {
        EXPECT_EQ(one.joint(a, b), brute_joint(docs, a, b));
        EXPECT_LE(one.joint(a, b), std::min(one.unary[a], one.unary[b]));
      }
    }
    std::unordered_set<std::uint64_t> want = {pair_key(1, 2), pair_key(3, 7)};
    auto some = count_cooccurrence(docs, 12, &want, 3);
    EXPECT_EQ(some.joint(1, 2), one.joint(1, 2));
    EXPECT_EQ(some.joint(3, 7), one.joint(3, 7));
    EXPECT_LE(some.pairwise.size(), 2u);
  }
}

TEST(Npmi, Anchors) {
  EXPECT_NEAR(npmi_from_counts(100, 10, 10, 10), 1.0, 1e-12);
  EXPECT_NEAR(npmi_from_counts(100, 50, 50, 25), 0.0, 1e-12);
  EXPECT_NEAR(npmi_from_counts(100, 10, 10, 5), std::log(5.0) / -std::log(0.05), 1e-12);
  EXPECT_NEAR(npmi_from_counts(100, 10, 10, 5), 0.537243, 1e-6);
  EXPECT_EQ(npmi_from_counts(100, 10, 10, 0), -1.0);
  EXPECT_EQ(npmi_from_counts(7, 7, 7, 7), 1.0);
  EXPECT_EQ(npmi_from_counts(100, 0, 10, 0), 0.0);
  EXPECT_GT(npmi_from_counts(100, 10, 10, 0, 1e-6), -1.0);
}

TEST(Npmi, BoundsOverRandomCounts) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 10000; ++i) {
    const std::uint64_t n = 1 + rng() % 1000;
    const std::uint64_t ca = 1 + rng() % n, cb = 1 + rng() % n;
    const std::uint64_t lo = ca + cb > n ? ca + cb - n : 0;
    const std::uint64_t cab = lo + rng() % (std::min(ca, cb) - lo + 1);
    const double v = npmi_from_counts(n, ca, cb, cab);
    ASSERT_GE(v, -1.0);
    ASSERT_LE(v, 1.0);
    EXPECT_EQ(v, npmi_from_counts(n, cb, ca, cab));
  }
}

TEST(Npmi, SymmetricAndInvariantUnderDoubling) {
  std::mt19937_64 rng(3);
  auto docs = random_docs(rng, 40, 10);
  auto doubled = docs;
  doubled.insert(doubled.end(), docs.begin(), docs.end());
  auto c1 = count_cooccurrence(docs, 10), c2 = count_cooccurrence(doubled, 10);
  for (TermId a = 0; a < 10; ++a) {
    for (TermId b = 0; b < 10; ++b) {
      if (a == b) continue;
      EXPECT_EQ(npmi(c1, a, b), npmi(c1, b, a));
      EXPECT_NEAR(npmi(c1, a, b), npmi(c2, a, b), 1e-12);
    }
  }
}

TEST(OcNpmi, SingletonsPairsAndBruteForce) {
  std::mt19937_64 rng(4);
  auto docs = random_docs(rng, 50, 15);
  auto c = count_cooccurrence(docs, 15);
  const std::vector<TermId> one = {3};
  EXPECT_EQ(oc_npmi(c, one, 10).oc, 0.0);
  EXPECT_EQ(oc_npmi(c, {}, 10).oc, 0.0);
  const std::vector<TermId> two = {4, 9};
  EXPECT_EQ(oc_npmi(c, two, 10).oc, npmi(c, 4, 9));

  for (int trial = 0; trial < 200; ++trial) {
    std::vector<TermId> label(15);
    std::iota(label.begin(), label.end(), TermId{0});
    std::shuffle(label.begin(), label.end(), rng);
    label.resize(2 + rng() % 8);
    const std::size_t p = 1 + rng() % 10;
    const std::size_t n = std::min(p, label.size());
    std::vector<TermId> top(label.begin(), label.begin() + static_cast<std::ptrdiff_t>(n));
    std::sort(top.begin(), top.end());
    double brute = 0;
    for (std::size_t k1 = 1; k1 < n; ++k1) {
      for (std::size_t k2 = 0; k2 < k1; ++k2) brute += npmi(c, top[k2], top[k1]);
    }
    EXPECT_EQ(oc_npmi(c, label, p).oc, brute);
    auto shuffled = std::vector<TermId>(label.begin(), label.begin() + static_cast<std::ptrdiff_t>(n));
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    EXPECT_EQ(oc_npmi(c, shuffled, p).oc, oc_npmi(c, label, p).oc);
    const double bound = static_cast<double>(n * (n - 1) / 2);
    EXPECT_LE(std::abs(oc_npmi(c, label, p).oc), bound);
    if (n >= 2) {
      EXPECT_NEAR(oc_npmi(c, label, p, {0.0, Aggregate::mean}).oc, brute / bound, 1e-12);
    }
  }
}

TEST(OcNpmi, MissingTermsZeroOnlyTheirPairs) {
  std::vector<std::vector<TermId>> docs = {{0, 1}, {0}, {1, 2}};
  auto c = count_cooccurrence(docs, 4);
  const std::vector<TermId> label = {0, 1, 3};
  auto lc = oc_npmi(c, label, 10);
  EXPECT_EQ(lc.missing_terms, 1u);
  EXPECT_EQ(lc.oc, npmi(c, 0, 1));
}

TEST(Summary, QuartileAndMaximum) {
  EXPECT_EQ(quantile_type7({0, 0, 0, 0}, 0.75), 0.0);
  EXPECT_DOUBLE_EQ(quantile_type7({4, 1, 3, 2}, 0.75), 3.25);
  EXPECT_EQ(quantile_type7({-0.5}, 0.75), -0.5);
  using labeling::MethodId;
  std::vector<NodeCoherence> nodes = {{MethodId::RLUM, 0, 1, 0},         {MethodId::RLUM, 1, 2, 0},
                                      {MethodId::RLUM, 2, 3, 0},         {MethodId::RLUM, 3, 4, 0},
                                      {MethodId::MTWL_raw, 0, 0.5, 0},   {MethodId::MTWL_raw, 1, 9, 0},
                                      {MethodId::CFAverage, 0, -0.5, 0}};
  auto s = summarize_coherence(nodes);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0].method, MethodId::MTWL_raw);
  EXPECT_DOUBLE_EQ(s[0].upper_quartile, 6.875);
  EXPECT_EQ(s[0].maximum, 9.0);
  EXPECT_EQ(s[1].method, MethodId::RLUM);
  EXPECT_DOUBLE_EQ(s[1].upper_quartile, 3.25);
  EXPECT_EQ(s[1].maximum, 4.0);
  EXPECT_EQ(s[2].upper_quartile, -0.5);
  EXPECT_EQ(s[2].maximum, -0.5);
}

TEST(Summary, ScoreLabelsIsThreadIndependent) {
  std::mt19937_64 rng(5);
  auto docs = random_docs(rng, 80, 20);
  using labeling::MethodId;
  std::vector<labeling::LabelAssignment> all = {{MethodId::MTWL_raw, 10, {}}, {MethodId::RCL_chi2, 10, {}}};
  for (auto& a : all) {
    for (int v = 0; v < 9; ++v) {
      labeling::Label l;
      for (std::size_t k = 0, n = rng() % 6; k < n; ++k) l.push_back({static_cast<TermId>(rng() % 20), 1.0});
      std::sort(l.begin(), l.end(), [](const auto& x, const auto& y) { return x.term < y.term; });
      l.erase(std::unique(l.begin(), l.end(), [](const auto& x, const auto& y) { return x.term == y.term; }), l.end());
      a.nodes.push_back(l);
    }
  }
  auto pairs = label_pairs(all, 10);
  auto full = count_cooccurrence(docs, 20);
  auto restricted = count_cooccurrence(docs, 20, &pairs, 3);
  const auto r1 = format_coherence(score_labels(full, all, 10));
  const auto r2 = format_coherence(score_labels(restricted, all, 10, {}, 4));
  EXPECT_EQ(r1, r2);
  EXPECT_EQ(r1.substr(0, r1.find('\n')), "method,node_id,oc,missing_terms");
  EXPECT_EQ(format_coherence_summary(score_labels(full, all, 10)).substr(0, 29), "method,upper_quartile,maximum");
}

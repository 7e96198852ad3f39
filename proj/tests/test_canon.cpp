#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <random>

#include "fakesurf/algebra.hpp"
#include "fakesurf/canon.hpp"
#include "fakesurf/records.hpp"
#include "oracles.hpp"

using namespace fakesurf;

namespace {

// Every element of the relabeling group, built by brute force: vertex
// symmetries times all bundle bijections times loop directions.
std::vector<std::vector<int>> all_letter_maps(const Skeleton& s) {
  std::map<std::pair<int, int>, std::vector<int>> bundles;
  for (const auto& e : s.edges()) bundles[{e.tail.vertex, e.head.vertex}].push_back(e.label);
  std::vector<std::vector<int>> out;
  for (const auto& p : oracle::vertex_symmetries(s.adjacency())) {
    std::vector<std::vector<int>> partial{std::vector<int>(static_cast<std::size_t>(s.edge_count()) + 1, 0)};
    for (const auto& [ends, labels] : bundles) {
      int a = p[static_cast<std::size_t>(ends.first)], b = p[static_cast<std::size_t>(ends.second)];
      std::vector<int> targets = bundles.at({std::min(a, b), std::max(a, b)});
      std::sort(targets.begin(), targets.end());
      std::vector<std::vector<int>> next;
      do {
        const std::size_t signs = a == b ? (std::size_t{1} << labels.size()) : 1;
        for (std::size_t mask = 0; mask < signs; ++mask)
          for (auto m : partial) {
            for (std::size_t k = 0; k < labels.size(); ++k) {
              int sign = a == b ? ((mask >> k & 1) ? -1 : 1) : (a < b ? 1 : -1);
              m[static_cast<std::size_t>(labels[k])] = sign * targets[k];
            }
            next.push_back(std::move(m));
          }
      } while (std::next_permutation(targets.begin(), targets.end()));
      partial = std::move(next);
    }
    out.insert(out.end(), partial.begin(), partial.end());
  }
  return out;
}

WordList apply(const std::vector<int>& m, WordList w) {
  for (auto& d : w)
    for (int& x : d) x = x > 0 ? m[static_cast<std::size_t>(x)] : -m[static_cast<std::size_t>(-x)];
  return w;
}

} // namespace

TEST(Words, NormalizeWord) {
  EXPECT_EQ(normalize_word({2, -3}), (DiskWord{2, -3}));
  EXPECT_EQ(normalize_word({-3, 2}), (DiskWord{2, -3}));
  EXPECT_EQ(normalize_word({-1}), (DiskWord{1}));
  EXPECT_EQ(normalize_word({-2, -1}), (DiskWord{1, 2}));
  EXPECT_TRUE(letter_less(1, -1));
  EXPECT_TRUE(letter_less(-1, 2));
}

TEST(Words, NormalizeListOrdersLongestFirst) {
  WordList w = normalize_words({{4}, {2, -3}, {4, 2, -1, -1, -2, 4, 3, 1, -3}});
  EXPECT_EQ(w[0].size(), 9u);
  EXPECT_EQ(w[1], (DiskWord{2, -3}));
  EXPECT_EQ(w[2], (DiskWord{4}));
}

TEST(MoveGroup, SizeIsRelabelingsTimesLoopFlips) {
  for (int t = 1; t <= 4; ++t)
    for (const auto& s : enumerate_skeleta(t))
      EXPECT_EQ(MoveGroup(s).size(), edge_relabelings(s).size() << s.loop_count());
  for (int t = 1; t <= 3; ++t)
    for (const auto& s : enumerate_skeleta(t)) EXPECT_EQ(MoveGroup(s).size(), all_letter_maps(s).size());
}

TEST(Canonical, ComplexityOneSurfacesDiffer) {
  auto s = std::make_shared<const Skeleton>(enumerate_skeleta(1)[0]);
  FakeSurface non_spine{s, {{1, 2, 2, -1, -2}, {1}}};
  FakeSurface abalone{s, {{1, 2, 2, 1, -2}, {1}}};
  EXPECT_NE(canonical_form(non_spine), canonical_form(abalone));
}

TEST(Canonical, BingsHouseAndItsMutantDiffer) {
  auto s = std::make_shared<const Skeleton>(enumerate_skeleta(2)[0]);
  auto house_words = orient_to_skeleton(*s, {{3, -1, -3, 2, -1, -2, -4, 2, -3, -4}, {4}, {-1}});
  auto mutant_words = orient_to_skeleton(*s, {{4, 3, -2, -4, 2, -1, -2, 3, 1, -3}, {4}, {-1}});
  ASSERT_TRUE(house_words && mutant_words);
  FakeSurface house{s, *house_words};
  FakeSurface mutant{s, *mutant_words};
  EXPECT_NE(canonical_form(house), canonical_form(mutant));
}

// Orbits computed by union-find over all gluings with an independently built
// relabeling group must coincide with canonical keys.
TEST(Canonical, KeysPartitionLikeBruteForceOrbits) {
  const std::map<int, std::vector<std::size_t>> acyclic_counts = {{1, {2}}, {2, {15, 2}}};
  for (int t = 1; t <= 2; ++t) {
    auto sks = enumerate_skeleta(t);
    for (std::size_t si = 0; si < sks.size(); ++si) {
      auto s = std::make_shared<const Skeleton>(sks[si]);
      const auto maps = all_letter_maps(*s);
      const std::uint64_t n = config_count(*s);
      std::vector<std::uint64_t> uf(n);
      std::iota(uf.begin(), uf.end(), 0);
      std::function<std::uint64_t(std::uint64_t)> find = [&](std::uint64_t v) {
        return uf[v] == v ? v : uf[v] = find(uf[v]);
      };
      std::vector<std::uint64_t> members;
      enumerate_gluings(*s, {}, [&](const GluingConfig& g, std::uint64_t i) {
        members.push_back(i);
        auto w = trace_gluing(*s, g);
        for (const auto& m : maps) uf[find(i)] = find(gluing_of(*s, apply(m, w)).index());
      });
      Canonicalizer canon(s);
      std::map<std::uint64_t, CanonicalKey> key_of_root;
      std::map<CanonicalKey, std::uint64_t> root_of_key;
      std::size_t acyclic = 0;
      for (auto i : members) {
        auto w = trace_gluing(*s, GluingConfig::from_index(s->edge_count(), i));
        auto key = canon.canonical(w).key;
        auto root = find(i);
        auto [a, fa] = key_of_root.emplace(root, key);
        EXPECT_EQ(a->second, key);
        auto [b, fb] = root_of_key.emplace(key, root);
        EXPECT_EQ(b->second, root);
        if (fa && is_acyclic(*s, w)) ++acyclic;
      }
      EXPECT_EQ(acyclic, acyclic_counts.at(t)[si]);
    }
  }
}

TEST(Canonical, InvariantUnderRandomMoves) {
  std::mt19937_64 rng(2024);
  for (int t = 1; t <= 2; ++t)
    for (const auto& sk : enumerate_skeleta(t)) {
      auto s = std::make_shared<const Skeleton>(sk);
      Canonicalizer canon(s);
      enumerate_gluings(*s, {}, [&](const GluingConfig& g, std::uint64_t i) {
        if (i % 5) return;
        auto w = trace_gluing(*s, g);
        auto key = canon.canonical(w).key;
        for (int k = 0; k < 20; ++k) {
          w = oracle::random_move(*s, w, rng);
          ASSERT_EQ(canon.canonical(w).key, key);
        }
      });
    }
}

TEST(Canonical, WordsAreValidAndAFixpoint) {
  for (const auto& sk : enumerate_skeleta(2)) {
    auto s = std::make_shared<const Skeleton>(sk);
    Canonicalizer canon(s);
    enumerate_gluings(*s, {}, [&](const GluingConfig& g, std::uint64_t) {
      auto r = canon.canonical(trace_gluing(*s, g));
      EXPECT_FALSE(validate_words(*s, r.words));
      EXPECT_EQ(r.words, normalize_words(r.words));
      EXPECT_EQ(canon.canonical(r.words).key, r.key);
      EXPECT_EQ(r.key, encode_key(r.words));
    });
  }
}

TEST(Dedupe, CollapsesOrbitsAndRejectsMixedSkeleta) {
  auto s = std::make_shared<const Skeleton>(enumerate_skeleta(1)[0]);
  std::vector<FakeSurface> in{{s, {{1, 2, 2, 1, -2}, {1}}}, {s, {{-1}, {2, -1, -2, -2, -1}}}, {s, {{1, 2, 2, -1, -2}, {1}}}};
  EXPECT_EQ(dedupe(in).size(), 2u);
  auto other = std::make_shared<const Skeleton>(enumerate_skeleta(2)[0]);
  in.push_back({other, {{3, -1, -3, 2, -1, -2, -4, 2, -3, -4}, {4}, {-1}}});
  EXPECT_THROW(dedupe(in), std::invalid_argument);
}

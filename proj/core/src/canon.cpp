#include "fakesurf/canon.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <map>
#include <stdexcept>

namespace fakesurf {

bool letter_less(int a, int b) {
  int aa = std::abs(a), bb = std::abs(b);
  if (aa != bb) return aa < bb;
  return a > b;
}

DiskWord normalize_word(const DiskWord& w) {
  if (w.empty()) return w;
  const std::size_t n = w.size();
  DiskWord rev(n);
  for (std::size_t i = 0; i < n; ++i) rev[i] = -w[n - 1 - i];
  DiskWord best = w;
  for (const DiskWord* src : {&w, static_cast<const DiskWord*>(&rev)}) {
    for (std::size_t r = 0; r < n; ++r) {
      DiskWord cand(n);
      for (std::size_t i = 0; i < n; ++i) cand[i] = (*src)[(r + i) % n];
      if (std::lexicographical_compare(cand.begin(), cand.end(), best.begin(), best.end(), letter_less))
        best = std::move(cand);
    }
  }
  return best;
}

bool word_less(const DiskWord& a, const DiskWord& b) {
  if (a.size() != b.size()) return a.size() > b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), letter_less);
}

WordList normalize_words(const WordList& words) {
  WordList out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(normalize_word(w));
  std::sort(out.begin(), out.end(), word_less);
  return out;
}

CanonicalKey encode_key(const WordList& normalized) {
  CanonicalKey key;
  for (const auto& w : normalized) {
    key.push_back(static_cast<char>(w.size()));
    for (int letter : w) key.push_back(static_cast<char>(std::abs(letter) * 2 + (letter < 0 ? 1 : 0)));
  }
  return key;
}

MoveGroup::MoveGroup(const Skeleton& s) : edges_(s.edge_count()) {
  std::vector<int> loops;
  for (const Edge& e : s.edges())
    if (e.is_loop()) loops.push_back(e.label - 1);
  const std::size_t flips = std::size_t{1} << loops.size();
  for (const EdgeRelabeling& r : edge_relabelings(s)) {
    for (std::size_t mask = 0; mask < flips; ++mask) {
      std::vector<bool> flip(static_cast<std::size_t>(edges_), false);
      for (std::size_t k = 0; k < loops.size(); ++k)
        if (mask & (std::size_t{1} << k)) flip[static_cast<std::size_t>(loops[k])] = true;
      for (int e = 0; e < edges_; ++e) {
        int target = r.image[static_cast<std::size_t>(e)];
        bool neg = r.reversed[static_cast<std::size_t>(e)] != flip[static_cast<std::size_t>(target)];
        maps_.push_back(neg ? -(target + 1) : target + 1);
      }
    }
  }
}

WordList MoveGroup::apply(std::size_t g, const WordList& words) const {
  WordList out = words;
  for (auto& w : out)
    for (int& letter : w) letter = apply(g, letter);
  return out;
}

Canonicalizer::Canonicalizer(std::shared_ptr<const Skeleton> s)
    : skeleton_(std::move(s)), group_(*skeleton_) {}

Canonicalizer::Result Canonicalizer::canonical(const WordList& words,
                                               const std::function<void(std::uint64_t)>& visit) const {
  const Skeleton& s = *skeleton_;
  // Validates the words and fixes the strand layout once.
  (void)gluing_of(s, words);

  struct Slot {
    int letter, before, after;
  };
  std::vector<Slot> slots;
  for (const auto& w : words)
    for (std::size_t i = 0; i < w.size(); ++i)
      slots.push_back({w[i], w[(i + w.size() - 1) % w.size()], w[(i + 1) % w.size()]});

  const int m = s.edge_count();
  std::uint64_t best = ~std::uint64_t{0};
  std::vector<std::array<int, 3>> fwd(static_cast<std::size_t>(m));
  for (std::size_t g = 0; g < group_.size(); ++g) {
    for (const Slot& sl : slots) {
      int letter = group_.apply(g, sl.letter);
      int before = arrival_germ(s, group_.apply(g, sl.before));
      int after = departure_germ(s, group_.apply(g, sl.after));
      const Edge& e = s.edge(std::abs(letter) - 1);
      int tail_other = letter > 0 ? before : after;
      int head_other = letter > 0 ? after : before;
      fwd[static_cast<std::size_t>(e.label - 1)][static_cast<std::size_t>(sheet_index(e.tail.id(), tail_other))] =
          sheet_index(e.head.id(), head_other);
    }
    std::uint64_t index = 0;
    for (const auto& f : fwd) {
      // Lexicographic rank of the permutation (f0, f1, f2).
      int rank = f[0] * 2 + (f[1] > f[2] ? 1 : 0);
      index = index * 6 + static_cast<std::uint64_t>(rank);
    }
    if (visit) visit(index);
    best = std::min(best, index);
  }

  Result out;
  out.config = best;
  out.words = normalize_words(trace_gluing(s, GluingConfig::from_index(m, best)));
  out.key = encode_key(out.words);
  return out;
}

CanonicalKey canonical_form(const FakeSurface& f) {
  if (!f.skeleton) throw std::invalid_argument("surface without skeleton");
  return Canonicalizer(f.skeleton).canonical(f.disks).key;
}

std::vector<FakeSurface> dedupe(const std::vector<FakeSurface>& surfaces) {
  if (surfaces.empty()) return {};
  Canonicalizer canon(surfaces.front().skeleton);
  std::map<CanonicalKey, WordList> unique;
  for (const auto& f : surfaces) {
    if (f.skeleton->complexity() != canon.skeleton().complexity() ||
        f.skeleton->index() != canon.skeleton().index())
      throw std::invalid_argument("dedupe needs surfaces over a single skeleton");
    auto r = canon.canonical(f.disks);
    unique.try_emplace(std::move(r.key), std::move(r.words));
  }
  std::vector<FakeSurface> out;
  out.reserve(unique.size());
  for (auto& [key, words] : unique) out.push_back({surfaces.front().skeleton, std::move(words)});
  return out;
}

} // namespace fakesurf

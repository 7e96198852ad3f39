#pragma once

// Canonical representatives of fake surfaces under relabeling moves.
//
// Two disk systems on the same skeleton describe the same surface when they
// differ by a graph automorphism (including permutations inside parallel-edge
// and loop bundles), by reversing loops, by rotating or reversing individual
// disk words, or by reordering the disks.

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "fakesurf/multigraph.hpp"
#include "fakesurf/surface.hpp"

namespace fakesurf {

/// Byte string; equal keys <=> move-equivalent surfaces on the same skeleton.
using CanonicalKey = std::string;

/// Letter order used for normalization: by edge, positive before negative.
bool letter_less(int a, int b);

/// Minimum over cyclic rotations of the word and of its reversed inverse.
DiskWord normalize_word(const DiskWord& w);

/// Longer words first, ties broken lexicographically by letter_less.
bool word_less(const DiskWord& a, const DiskWord& b);

/// Normalizes every word and sorts the list with word_less.
WordList normalize_words(const WordList& words);

/// Encoding of an already normalized, sorted word list.
CanonicalKey encode_key(const WordList& normalized);

/// The finite move group of one skeleton, as signed letter maps.
class MoveGroup {
public:
  explicit MoveGroup(const Skeleton& s);

  std::size_t size() const { return maps_.size() / static_cast<std::size_t>(edges_); }
  int edge_count() const { return edges_; }

  /// Image of a signed letter under element `g`. Element 0 is the identity.
  int apply(std::size_t g, int letter) const {
    int img = maps_[g * static_cast<std::size_t>(edges_) + static_cast<std::size_t>((letter > 0 ? letter : -letter) - 1)];
    return letter > 0 ? img : -img;
  }

  WordList apply(std::size_t g, const WordList& words) const;

private:
  int edges_ = 0;
  std::vector<int> maps_;
};

/// Orbit minimization for surfaces on one skeleton. The representative of an
/// orbit is the gluing with the smallest config index; its traced words,
/// normalized, form the canonical word list.
class Canonicalizer {
public:
  explicit Canonicalizer(std::shared_ptr<const Skeleton> s);

  struct Result {
    std::uint64_t config = 0;
    WordList words;
    CanonicalKey key;
  };

  /// `words` must pass the singularity constraints. `visit`, when given,
  /// sees the config index of every orbit element (with repeats).
  Result canonical(const WordList& words,
                   const std::function<void(std::uint64_t)>& visit = {}) const;

  const Skeleton& skeleton() const { return *skeleton_; }
  const MoveGroup& group() const { return group_; }

private:
  std::shared_ptr<const Skeleton> skeleton_;
  MoveGroup group_;
};

CanonicalKey canonical_form(const FakeSurface& f);

/// One representative per key, in key order, carrying the canonical words.
/// All surfaces must share one skeleton.
std::vector<FakeSurface> dedupe(const std::vector<FakeSurface>& surfaces);

} // namespace fakesurf

#pragma once

// Fake surfaces as disk systems over a skeleton.
//
// A disk word is a cyclic sequence of signed 1-based edge labels: +e runs
// tail -> head, -e runs head -> tail. Each vertex is modeled as the cone on
// the complete graph K4 over its four germ slots; a disk passing through the
// vertex from germ a to germ b occupies the sheet {a, b}.

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fakesurf/multigraph.hpp"

namespace fakesurf {

using DiskWord = std::vector<int>;
using WordList = std::vector<DiskWord>;

class MalformedWord : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Germ (global id) where a letter ends / starts.
int arrival_germ(const Skeleton& s, int letter);
int departure_germ(const Skeleton& s, int letter);

/// Passage of a disk boundary through a vertex.
struct Corner {
  int vertex = 0;
  int arrival = 0;   // global germ id
  int departure = 0; // global germ id

  /// Unordered germ pair as (low, high).
  std::pair<int, int> sheet() const {
    return arrival < departure ? std::pair{arrival, departure} : std::pair{departure, arrival};
  }
};

/// One corner per cyclically adjacent letter pair, bucketed by vertex.
/// Throws MalformedWord on a bad label or when a letter pair does not meet at
/// a common vertex.
std::vector<std::vector<Corner>> corners_of(const WordList& words, const Skeleton& s);

enum class ViolationKind {
  BadLetter,
  EmptyWord,
  CornerMismatch,
  EdgeMultiplicity,
  VertexCorners,
  DiskCount,
};

struct Violation {
  ViolationKind kind;
  /// Edge label, vertex index or disk index depending on kind; -1 if global.
  int location = -1;
  std::string message;
};

std::string to_string(ViolationKind kind);

/// nullopt when the words define a complexity-t fake surface with t + 1 disks.
std::optional<Violation> validate_words(const Skeleton& s, const WordList& words);

struct FakeSurface {
  std::shared_ptr<const Skeleton> skeleton;
  WordList disks;
};

/// Per-edge bijections between the three sheets at the tail and the three at
/// the head. At a germ g, sheet k is the face {g, x} for the k-th of the other
/// three germ slots x at that vertex, in slot order.
class GluingConfig {
public:
  /// The six permutations of {0,1,2} in lexicographic order.
  static constexpr std::array<std::array<std::uint8_t, 3>, 6> kPerms{{
      {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

  GluingConfig() = default;
  explicit GluingConfig(int edges) : digits_(static_cast<std::size_t>(edges), 0) {}

  /// Mixed radix 6, edge 1 most significant.
  static GluingConfig from_index(int edges, std::uint64_t index);
  std::uint64_t index() const;

  int edge_count() const { return static_cast<int>(digits_.size()); }
  int digit(int e) const { return digits_[static_cast<std::size_t>(e)]; }
  void set_digit(int e, int d) { digits_[static_cast<std::size_t>(e)] = static_cast<std::uint8_t>(d); }

  /// Head-side sheet glued to tail-side sheet `sheet` of edge e.
  int forward(int e, int sheet) const { return kPerms[digits_[static_cast<std::size_t>(e)]][static_cast<std::size_t>(sheet)]; }
  int backward(int e, int sheet) const;

  friend bool operator==(const GluingConfig&, const GluingConfig&) = default;

private:
  std::vector<std::uint8_t> digits_;
};

/// 6^(2t).
std::uint64_t config_count(const Skeleton& s);

/// Index of the sheet {g, other} among the three sheets at germ g.
int sheet_index(int germ, int other_germ);
/// Germ x such that sheet `sheet` at germ g is {g, x}.
int sheet_partner(int germ, int sheet);

/// Closed boundary curves of the gluing, each started at its lowest strand
/// and traversed tail -> head there.
WordList trace_gluing(const Skeleton& s, const GluingConfig& g);

/// Inverse of trace_gluing up to rotation, reversal and disk order. Throws
/// MalformedWord when the words do not satisfy both singularity constraints.
GluingConfig gluing_of(const Skeleton& s, const WordList& words);

struct EnumerationOptions {
  int min_disk_len = 1;
  /// Half-open config index range [begin, end); end == 0 means all configs.
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
};

struct EnumerationStats {
  std::uint64_t leaves = 0;  // gluings passing the curve-count filter
  std::uint64_t visited = 0; // search nodes
};

/// Every gluing in range whose boundary has exactly t + 1 curves, each of
/// length >= min_disk_len, visited in increasing config index. The callback
/// receives the config and its index.
EnumerationStats enumerate_gluings(const Skeleton& s, const EnumerationOptions& opts,
                                   const std::function<void(const GluingConfig&, std::uint64_t)>& emit);

/// Convenience form of enumerate_gluings producing traced surfaces.
std::vector<FakeSurface> enumerate_surfaces(const std::shared_ptr<const Skeleton>& s,
                                            const EnumerationOptions& opts);

} // namespace fakesurf

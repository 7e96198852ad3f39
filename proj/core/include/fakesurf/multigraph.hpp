#pragma once

// 1-skeleta of cellular fake surfaces: connected 4-regular multigraphs with
// loops, stored in the vertex order that maximizes the row-concatenated
// decimal value of the adjacency matrix.

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace fakesurf {

using BigInt = boost::multiprecision::cpp_int;

/// Symmetric adjacency matrix of a multigraph. The diagonal holds twice the
/// number of loops at each vertex.
class AdjMatrix {
public:
  AdjMatrix() = default;
  explicit AdjMatrix(int n);

  /// Throws std::invalid_argument unless the rows form a valid 4-regular
  /// adjacency matrix (square, symmetric, even diagonal, row sums 4).
  static AdjMatrix from_rows(const std::vector<std::vector<int>>& rows);

  int size() const { return n_; }
  int operator()(int i, int j) const { return cells_[static_cast<std::size_t>(i * n_ + j)]; }
  void set(int i, int j, int value);

  std::span<const int> cells() const { return cells_; }
  std::vector<std::vector<int>> rows() const;

  /// result(i, j) = (*this)(perm[i], perm[j]).
  AdjMatrix permuted(std::span<const int> perm) const;

  bool is_symmetric() const;
  bool is_four_regular() const;
  bool is_connected() const;

  /// Row-major lexicographic order; agrees with the order of decimal_rep
  /// because every entry is a single digit.
  friend std::strong_ordering operator<=>(const AdjMatrix&, const AdjMatrix&) = default;
  friend bool operator==(const AdjMatrix&, const AdjMatrix&) = default;

private:
  int n_ = 0;
  std::vector<int> cells_;
};

/// Rows concatenated into one decimal integer. Requires entries <= 9.
BigInt decimal_rep(const AdjMatrix& a);

struct CanonicalAdjacency {
  AdjMatrix matrix;
  /// matrix(i, j) == input(perm[i], perm[j]).
  std::vector<int> perm;
};

/// Simultaneous row/column permutation with maximal decimal_rep.
CanonicalAdjacency canonicalize_adjacency(const AdjMatrix& a);

/// Where an edge end sits: vertex and one of the four germ slots there.
struct Germ {
  int vertex = 0;
  int slot = 0;
  int id() const { return vertex * 4 + slot; }
};

struct Edge {
  int label = 0; // 1-based
  Germ tail;
  Germ head;
  bool is_loop() const { return tail.vertex == head.vertex; }
};

enum class EdgeEnd : std::uint8_t { Tail, Head };

/// A canonical 1-skeleton with labeled, oriented edges.
///
/// Edges are labeled 1..2t in upper-right-triangle order of the canonical
/// matrix; non-loop edges point from the lower to the higher vertex. Germ
/// slots are handed out in label order, and a loop takes its tail slot first.
class Skeleton {
public:
  Skeleton() = default;
  /// `canonical` must already be in canonical form; only 4-regularity is
  /// checked here.
  Skeleton(AdjMatrix canonical, int index);

  const AdjMatrix& adjacency() const { return adjacency_; }
  int complexity() const { return adjacency_.size(); }
  int index() const { return index_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int germ_count() const { return 4 * complexity(); }

  /// 0-based edge index; labels are index + 1.
  const Edge& edge(int e) const { return edges_[static_cast<std::size_t>(e)]; }
  std::span<const Edge> edges() const { return edges_; }

  struct GermOwner {
    int edge = 0;
    EdgeEnd end = EdgeEnd::Tail;
  };
  /// Edge end occupying a global germ id (vertex * 4 + slot).
  const GermOwner& germ_owner(int germ_id) const {
    return owners_[static_cast<std::size_t>(germ_id)];
  }

  int loop_count() const;

private:
  AdjMatrix adjacency_;
  int index_ = 0;
  std::vector<Edge> edges_;
  std::vector<GermOwner> owners_;
};

/// All connected 4-regular multigraphs on t vertices up to isomorphism, in
/// canonical form, ordered by decreasing decimal_rep. Indices start at 1.
std::vector<Skeleton> enumerate_skeleta(int t);

struct SkeletonStats {
  int self_loops = 0;
  /// 1 with a loop, 2 with a multiple edge, otherwise the shortest cycle.
  int girth = 0;
};

SkeletonStats skeleton_stats(const Skeleton& s);

/// An edge-label action induced by a graph automorphism. `image[e]` is the
/// 0-based target of edge e; `reversed[e]` says the automorphism carries the
/// tail germ of e to the head germ of image[e].
struct EdgeRelabeling {
  std::vector<int> image;
  std::vector<bool> reversed;

  EdgeRelabeling then(const EdgeRelabeling& next) const;
  EdgeRelabeling inverse() const;
  bool is_identity() const;
  friend bool operator==(const EdgeRelabeling&, const EdgeRelabeling&) = default;
};

/// Vertex automorphisms of the adjacency matrix combined with every
/// permutation of parallel-edge and loop bundles. The identity comes first.
std::vector<EdgeRelabeling> edge_relabelings(const Skeleton& s);

/// Vertex permutations p with a(p[i], p[j]) == a(i, j).
std::vector<std::vector<int>> vertex_automorphisms(const AdjMatrix& a);

} // namespace fakesurf

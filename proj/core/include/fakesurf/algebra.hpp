#pragma once

// Integer homology of fake surfaces: spanning-tree collapse, the boundary map
// from disks to the surviving edges, and exact determinants.

#include <vector>

#include "fakesurf/multigraph.hpp"
#include "fakesurf/surface.hpp"

namespace fakesurf {

/// Dense matrix of arbitrary-precision integers.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), cells_(static_cast<std::size_t>(rows * cols)) {}
  static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  BigInt& operator()(int i, int j) { return cells_[static_cast<std::size_t>(i * cols_ + j)]; }
  const BigInt& operator()(int i, int j) const { return cells_[static_cast<std::size_t>(i * cols_ + j)]; }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<BigInt> cells_;
};

/// Fraction-free Gaussian elimination with row pivoting. Square input only.
BigInt determinant(const IntMatrix& m);

/// Laplace expansion along the first row; independent of determinant().
BigInt determinant_cofactor(const IntMatrix& m);

/// Diagonal of the Smith normal form, nonzero entries only, each dividing
/// the next.
std::vector<BigInt> smith_invariants(const IntMatrix& m);

/// t - 1 edge indices (0-based) chosen greedily in label order, loops skipped.
std::vector<int> spanning_tree(const Skeleton& s);

/// Rows are disks, columns the edges outside `tree` in label order; each
/// entry is the signed number of times the disk runs along that edge.
IntMatrix boundary_matrix(const Skeleton& s, const WordList& disks, const std::vector<int>& tree);

/// |det| == 1 for the square boundary matrix after collapsing the greedy
/// spanning tree. False whenever the matrix is not square.
bool is_acyclic(const Skeleton& s, const WordList& disks);

} // namespace fakesurf

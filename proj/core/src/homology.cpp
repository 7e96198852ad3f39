#include "fakesurf/algebra.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace fakesurf {

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  IntMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != c)
      throw std::invalid_argument("ragged matrix rows");
    for (int j = 0; j < c; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

BigInt determinant(const IntMatrix& input) {
  if (input.rows() != input.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const int n = input.rows();
  if (n == 0) return 1;
  IntMatrix a = input;
  BigInt prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      int p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        // Exact by Sylvester's identity.
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

namespace {

BigInt cofactor_rec(const IntMatrix& m, std::vector<int>& cols, int row) {
  const int n = m.rows();
  if (row == n) return 1;
  BigInt total = 0;
  int sign = 1;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    int c = cols[k];
    if (m(row, c) != 0) {
      cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(k));
      total += sign * m(row, c) * cofactor_rec(m, cols, row + 1);
      cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(k), c);
    }
    sign = -sign;
  }
  return total;
}

} // namespace

BigInt determinant_cofactor(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  std::vector<int> cols(static_cast<std::size_t>(m.cols()));
  std::iota(cols.begin(), cols.end(), 0);
  return cofactor_rec(m, cols, 0);
}

std::vector<BigInt> smith_invariants(const IntMatrix& input) {
  IntMatrix a = input;
  const int rows = a.rows(), cols = a.cols();
  std::vector<BigInt> diag;
  for (int t = 0; t < std::min(rows, cols); ++t) {
    // Pivot: smallest nonzero absolute value in the remaining block.
    bool any = false;
    while (true) {
      int pi = -1, pj = -1;
      BigInt best = 0;
      for (int i = t; i < rows; ++i)
        for (int j = t; j < cols; ++j)
          if (a(i, j) != 0 && (pi < 0 || abs(a(i, j)) < best)) {
            best = abs(a(i, j));
            pi = i;
            pj = j;
          }
      if (pi < 0) break;
      any = true;
      for (int j = 0; j < cols; ++j) std::swap(a(t, j), a(pi, j));
      for (int i = 0; i < rows; ++i) std::swap(a(i, t), a(i, pj));
      bool clean = true;
      for (int i = t + 1; i < rows; ++i) {
        BigInt q = a(i, t) / a(t, t);
        for (int j = t; j < cols; ++j) a(i, j) -= q * a(t, j);
        if (a(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < cols; ++j) {
        BigInt q = a(t, j) / a(t, t);
        for (int i = t; i < rows; ++i) a(i, j) -= q * a(i, t);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold any block entry not divisible by the pivot into row t.
      bool divides = true;
      for (int i = t + 1; i < rows && divides; ++i)
        for (int j = t + 1; j < cols && divides; ++j)
          if (a(i, j) % a(t, t) != 0) {
            for (int k = t; k < cols; ++k) a(t, k) += a(i, k);
            divides = false;
          }
      if (divides) break;
    }
    if (!any) break;
    diag.push_back(abs(a(t, t)));
  }
  return diag;
}

std::vector<int> spanning_tree(const Skeleton& s) {
  const int n = s.complexity();
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
    return v;
  };
  std::vector<int> tree;
  for (const Edge& e : s.edges()) {
    if (e.is_loop()) continue;
    int a = find(e.tail.vertex), b = find(e.head.vertex);
    if (a == b) continue;
    parent[static_cast<std::size_t>(a)] = b;
    tree.push_back(e.label - 1);
  }
  return tree;
}

IntMatrix boundary_matrix(const Skeleton& s, const WordList& disks, const std::vector<int>& tree) {
  std::vector<int> column(static_cast<std::size_t>(s.edge_count()), -1);
  int cols = 0;
  for (int e = 0; e < s.edge_count(); ++e)
    if (std::find(tree.begin(), tree.end(), e) == tree.end()) column[static_cast<std::size_t>(e)] = cols++;
  IntMatrix m(static_cast<int>(disks.size()), cols);
  for (std::size_t d = 0; d < disks.size(); ++d)
    for (int letter : disks[d]) {
      int c = column[static_cast<std::size_t>(std::abs(letter) - 1)];
      if (c >= 0) m(static_cast<int>(d), c) += letter > 0 ? 1 : -1;
    }
  return m;
}

bool is_acyclic(const Skeleton& s, const WordList& disks) {
  IntMatrix m = boundary_matrix(s, disks, spanning_tree(s));
  if (m.rows() != m.cols()) return false;
  return abs(determinant(m)) == 1;
}

} // namespace fakesurf

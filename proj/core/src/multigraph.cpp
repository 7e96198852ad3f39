#include "fakesurf/multigraph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>

namespace fakesurf {

AdjMatrix::AdjMatrix(int n) : n_(n), cells_(static_cast<std::size_t>(n * n), 0) {
  if (n < 0) throw std::invalid_argument("negative matrix size");
}

AdjMatrix AdjMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  AdjMatrix a(static_cast<int>(rows.size()));
  for (int i = 0; i < a.n_; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != a.n_)
      throw std::invalid_argument("adjacency matrix is not square");
    for (int j = 0; j < a.n_; ++j) {
      int v = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (v < 0) throw std::invalid_argument("negative adjacency entry");
      a.cells_[static_cast<std::size_t>(i * a.n_ + j)] = v;
    }
  }
  if (!a.is_symmetric()) throw std::invalid_argument("adjacency matrix is not symmetric");
  if (!a.is_four_regular())
    throw std::invalid_argument("adjacency matrix is not 4-regular with even diagonal");
  return a;
}

void AdjMatrix::set(int i, int j, int value) {
  cells_[static_cast<std::size_t>(i * n_ + j)] = value;
  cells_[static_cast<std::size_t>(j * n_ + i)] = value;
}

std::vector<std::vector<int>> AdjMatrix::rows() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i)
    out[static_cast<std::size_t>(i)].assign(cells_.begin() + i * n_, cells_.begin() + (i + 1) * n_);
  return out;
}

AdjMatrix AdjMatrix::permuted(std::span<const int> perm) const {
  AdjMatrix out(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      out.cells_[static_cast<std::size_t>(i * n_ + j)] = (*this)(perm[static_cast<std::size_t>(i)],
                                                                 perm[static_cast<std::size_t>(j)]);
  return out;
}

bool AdjMatrix::is_symmetric() const {
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool AdjMatrix::is_four_regular() const {
  for (int i = 0; i < n_; ++i) {
    if ((*this)(i, i) % 2 != 0) return false;
    int sum = 0;
    for (int j = 0; j < n_; ++j) sum += (*this)(i, j);
    if (sum != 4) return false;
  }
  return true;
}

bool AdjMatrix::is_connected() const {
  if (n_ == 0) return true;
  std::vector<bool> seen(static_cast<std::size_t>(n_), false);
  std::vector<int> stack{0};
  seen[0] = true;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w = 0; w < n_; ++w) {
      if (w != v && (*this)(v, w) > 0 && !seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = true;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n_;
}

BigInt decimal_rep(const AdjMatrix& a) {
  BigInt value = 0;
  for (int c : a.cells()) {
    if (c > 9) throw std::invalid_argument("decimal_rep needs single-digit entries");
    value = value * 10 + c;
  }
  return value;
}

namespace {

// Branch and bound over vertex orders. Row 0 of the permuted matrix is
// decided digit by digit as the order grows, so prefixes that lose on row 0
// are cut; the remaining rows are compared once the order is complete.
class MaxOrderSearch {
public:
  MaxOrderSearch(const AdjMatrix& a, bool stop_on_improvement)
      : a_(a), n_(a.size()), stop_(stop_on_improvement), best_(a),
        best_perm_(static_cast<std::size_t>(n_)), perm_(static_cast<std::size_t>(n_)),
        used_(static_cast<std::size_t>(n_), false) {
    std::iota(best_perm_.begin(), best_perm_.end(), 0);
  }

  void run() {
    if (n_ > 0) extend(0, std::strong_ordering::equal);
  }

  bool improved() const { return improved_; }
  const AdjMatrix& best() const { return best_; }
  const std::vector<int>& best_perm() const { return best_perm_; }

private:
  void extend(int depth, std::strong_ordering status) {
    if (done_) return;
    if (depth == n_) {
      AdjMatrix candidate = a_.permuted(perm_);
      if (candidate > best_) {
        best_ = std::move(candidate);
        best_perm_ = perm_;
        improved_ = true;
        if (stop_) done_ = true;
      }
      return;
    }
    for (int v = 0; v < n_; ++v) {
      if (used_[static_cast<std::size_t>(v)]) continue;
      perm_[static_cast<std::size_t>(depth)] = v;
      std::strong_ordering next = status;
      if (status == std::strong_ordering::equal) {
        int p0 = perm_[0];
        int digit = a_(p0, v);
        next = digit <=> best_(0, depth);
        if (next == std::strong_ordering::less) continue;
      }
      used_[static_cast<std::size_t>(v)] = true;
      extend(depth + 1, next);
      used_[static_cast<std::size_t>(v)] = false;
      if (done_) return;
    }
  }

  const AdjMatrix& a_;
  int n_;
  bool stop_;
  AdjMatrix best_;
  std::vector<int> best_perm_;
  std::vector<int> perm_;
  std::vector<bool> used_;
  bool improved_ = false;
  bool done_ = false;
};

bool is_canonical(const AdjMatrix& a) {
  MaxOrderSearch search(a, true);
  search.run();
  return !search.improved();
}

// Orderly generation of valid matrices. Cells of the upper triangle are filled
// row by row with descending values; two columns that agree on every finished
// row must stay non-increasing, since swapping them would otherwise raise the
// decimal value. Survivors get a full canonicity check.
class SkeletonGenerator {
public:
  explicit SkeletonGenerator(int n)
      : n_(n), a_(n), remaining_(static_cast<std::size_t>(n), 4) {}

  std::vector<AdjMatrix> run() {
    fill(0, 0);
    return std::move(found_);
  }

private:
  bool columns_tied(int row, int col) const {
    for (int i = 0; i < row; ++i)
      if (a_(i, col) != a_(i, col - 1)) return false;
    return true;
  }

  void fill(int row, int col) {
    if (row == n_) {
      if (a_.is_connected() && is_canonical(a_)) found_.push_back(a_);
      return;
    }
    if (col == n_) {
      if (remaining_[static_cast<std::size_t>(row)] == 0) fill(row + 1, row + 1);
      return;
    }
    int& left = remaining_[static_cast<std::size_t>(row)];
    if (col == row) {
      // Capacity check: the rest of this row must absorb what is left after the diagonal.
      int capacity = 0;
      for (int j = row + 1; j < n_; ++j) capacity += remaining_[static_cast<std::size_t>(j)];
      for (int diag = left - (left % 2); diag >= 0; diag -= 2) {
        if (left - diag > capacity) break;
        if (row > 0 && diag > a_(0, 0)) continue;
        a_.set(row, row, diag);
        left -= diag;
        fill(row, col + 1);
        left += diag;
      }
      a_.set(row, row, 0);
      return;
    }
    int& other = remaining_[static_cast<std::size_t>(col)];
    int hi = std::min(left, other);
    if (col > row + 1 && columns_tied(row, col)) hi = std::min(hi, a_(row, col - 1));
    int capacity_after = 0;
    for (int j = col + 1; j < n_; ++j) capacity_after += remaining_[static_cast<std::size_t>(j)];
    for (int v = hi; v >= 0; --v) {
      if (left - v > capacity_after) break;
      a_.set(row, col, v);
      left -= v;
      other -= v;
      fill(row, col + 1);
      left += v;
      other += v;
    }
    a_.set(row, col, 0);
  }

  int n_;
  AdjMatrix a_;
  std::vector<int> remaining_;
  std::vector<AdjMatrix> found_;
};

} // namespace

CanonicalAdjacency canonicalize_adjacency(const AdjMatrix& a) {
  MaxOrderSearch search(a, false);
  search.run();
  return {search.best(), search.best_perm()};
}

Skeleton::Skeleton(AdjMatrix canonical, int index) : adjacency_(std::move(canonical)), index_(index) {
  if (!adjacency_.is_symmetric() || !adjacency_.is_four_regular())
    throw std::invalid_argument("skeleton needs a symmetric 4-regular adjacency matrix");
  int n = adjacency_.size();
  std::vector<int> next_slot(static_cast<std::size_t>(n), 0);
  owners_.resize(static_cast<std::size_t>(4 * n));
  auto take = [&](int v) { return Germ{v, next_slot[static_cast<std::size_t>(v)]++}; };
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      int count = (i == j) ? adjacency_(i, i) / 2 : adjacency_(i, j);
      for (int k = 0; k < count; ++k) {
        Edge e;
        e.label = static_cast<int>(edges_.size()) + 1;
        e.tail = take(i);
        e.head = take(j);
        int idx = static_cast<int>(edges_.size());
        owners_[static_cast<std::size_t>(e.tail.id())] = {idx, EdgeEnd::Tail};
        owners_[static_cast<std::size_t>(e.head.id())] = {idx, EdgeEnd::Head};
        edges_.push_back(e);
      }
    }
  }
}

int Skeleton::loop_count() const {
  return static_cast<int>(std::count_if(edges_.begin(), edges_.end(),
                                        [](const Edge& e) { return e.is_loop(); }));
}

std::vector<Skeleton> enumerate_skeleta(int t) {
  if (t < 1) throw std::invalid_argument("complexity must be at least 1");
  std::vector<AdjMatrix> mats = SkeletonGenerator(t).run();
  std::sort(mats.begin(), mats.end(), std::greater<>());
  std::vector<Skeleton> out;
  out.reserve(mats.size());
  for (std::size_t i = 0; i < mats.size(); ++i)
    out.emplace_back(std::move(mats[i]), static_cast<int>(i) + 1);
  return out;
}

SkeletonStats skeleton_stats(const Skeleton& s) {
  const AdjMatrix& a = s.adjacency();
  int n = a.size();
  SkeletonStats st;
  bool multi = false;
  for (int i = 0; i < n; ++i) {
    st.self_loops += a(i, i) / 2;
    for (int j = i + 1; j < n; ++j)
      if (a(i, j) >= 2) multi = true;
  }
  if (st.self_loops > 0) {
    st.girth = 1;
    return st;
  }
  if (multi) {
    st.girth = 2;
    return st;
  }
  // Simple graph: shortest cycle via BFS from every vertex.
  int best = n + 1;
  for (int root = 0; root < n; ++root) {
    std::vector<int> dist(static_cast<std::size_t>(n), -1), parent(static_cast<std::size_t>(n), -1);
    std::queue<int> q;
    dist[static_cast<std::size_t>(root)] = 0;
    q.push(root);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int w = 0; w < n; ++w) {
        if (w == v || a(v, w) == 0) continue;
        if (dist[static_cast<std::size_t>(w)] < 0) {
          dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
          parent[static_cast<std::size_t>(w)] = v;
          q.push(w);
        } else if (parent[static_cast<std::size_t>(v)] != w) {
          best = std::min(best, dist[static_cast<std::size_t>(v)] + dist[static_cast<std::size_t>(w)] + 1);
        }
      }
    }
  }
  st.girth = best;
  return st;
}

EdgeRelabeling EdgeRelabeling::then(const EdgeRelabeling& next) const {
  EdgeRelabeling out;
  out.image.resize(image.size());
  out.reversed.resize(image.size());
  for (std::size_t e = 0; e < image.size(); ++e) {
    auto mid = static_cast<std::size_t>(image[e]);
    out.image[e] = next.image[mid];
    out.reversed[e] = reversed[e] != next.reversed[mid];
  }
  return out;
}

EdgeRelabeling EdgeRelabeling::inverse() const {
  EdgeRelabeling out;
  out.image.resize(image.size());
  out.reversed.resize(image.size());
  for (std::size_t e = 0; e < image.size(); ++e) {
    auto target = static_cast<std::size_t>(image[e]);
    out.image[target] = static_cast<int>(e);
    out.reversed[target] = reversed[e];
  }
  return out;
}

bool EdgeRelabeling::is_identity() const {
  for (std::size_t e = 0; e < image.size(); ++e)
    if (image[e] != static_cast<int>(e) || reversed[e]) return false;
  return true;
}

std::vector<std::vector<int>> vertex_automorphisms(const AdjMatrix& a) {
  int n = a.size();
  std::vector<std::vector<int>> out;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  auto rec = [&](auto&& self, int depth) -> void {
    if (depth == n) {
      out.push_back(p);
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      bool ok = a(v, v) == a(depth, depth);
      for (int i = 0; ok && i < depth; ++i)
        ok = a(p[static_cast<std::size_t>(i)], v) == a(i, depth);
      if (!ok) continue;
      p[static_cast<std::size_t>(depth)] = v;
      used[static_cast<std::size_t>(v)] = true;
      self(self, depth + 1);
      used[static_cast<std::size_t>(v)] = false;
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<EdgeRelabeling> edge_relabelings(const Skeleton& s) {
  // Edges grouped by endpoint pair, in label order within each bundle.
  std::map<std::pair<int, int>, std::vector<int>> bundles;
  for (const Edge& e : s.edges())
    bundles[{e.tail.vertex, e.head.vertex}].push_back(e.label - 1);

  std::vector<std::vector<int>> members;
  for (auto& [key, edges] : bundles) members.push_back(edges);

  // Every permutation of each bundle, as a list of within-bundle orders.
  std::vector<std::vector<std::vector<int>>> bundle_perms;
  for (const auto& m : members) {
    std::vector<int> order(m.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::vector<int>> perms;
    do perms.push_back(order);
    while (std::next_permutation(order.begin(), order.end()));
    bundle_perms.push_back(std::move(perms));
  }

  const auto m = static_cast<std::size_t>(s.edge_count());
  std::vector<EdgeRelabeling> out;
  for (const auto& p : vertex_automorphisms(s.adjacency())) {
    EdgeRelabeling base;
    base.image.assign(m, 0);
    base.reversed.assign(m, false);
    for (const auto& [key, edges] : bundles) {
      int u = p[static_cast<std::size_t>(key.first)];
      int v = p[static_cast<std::size_t>(key.second)];
      const auto& target = bundles.at({std::min(u, v), std::max(u, v)});
      for (std::size_t k = 0; k < edges.size(); ++k) {
        base.image[static_cast<std::size_t>(edges[k])] = target[k];
        base.reversed[static_cast<std::size_t>(edges[k])] = u > v;
      }
    }
    // Mixed-radix walk over all bundle permutations, applied after `base`.
    std::vector<std::size_t> digit(members.size(), 0);
    while (true) {
      EdgeRelabeling shuffle;
      shuffle.image.resize(m);
      shuffle.reversed.assign(m, false);
      for (std::size_t b = 0; b < members.size(); ++b) {
        const auto& order = bundle_perms[b][digit[b]];
        for (std::size_t k = 0; k < members[b].size(); ++k)
          shuffle.image[static_cast<std::size_t>(members[b][k])] = members[b][static_cast<std::size_t>(order[k])];
      }
      out.push_back(base.then(shuffle));
      std::size_t b = 0;
      while (b < digit.size() && ++digit[b] == bundle_perms[b].size()) digit[b++] = 0;
      if (b == digit.size()) break;
    }
  }
  return out;
}

} // namespace fakesurf

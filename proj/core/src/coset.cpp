#include "fakesurf/presentation.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace fakesurf {

namespace {

// Coset table over the trivial subgroup. Column 2(g-1) is generator g,
// column 2(g-1)+1 its inverse.
class CosetTable {
public:
  CosetTable(int generators, std::size_t cap) : cols_(2 * generators), cap_(cap) { add_row(); }

  static int column(int letter) { return letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1; }

  // False on overflow.
  bool run(const std::vector<std::vector<int>>& relators) {
    for (std::size_t c = 0; c < parent_.size(); ++c) {
      if (dead_ > 4096 && dead_ > live_) c = compact(c);
      for (const auto& r : relators) {
        if (!alive(c)) break;
        if (!scan_and_fill(static_cast<int>(c), r)) return false;
      }
      for (int x = 0; x < cols_ && alive(c); ++x)
        if (at(static_cast<int>(c), x) < 0 && !define(static_cast<int>(c), x)) return false;
    }
    return true;
  }

  std::uint64_t live() const { return live_; }
  std::uint64_t defined() const { return defined_; }
  std::uint64_t peak() const { return peak_; }

private:
  int cols_;
  std::size_t cap_;
  std::vector<int> table_;
  std::vector<int> parent_;
  std::deque<int> queue_;
  std::uint64_t live_ = 0, dead_ = 0, defined_ = 0, peak_ = 0;

  int& at(int c, int x) { return table_[static_cast<std::size_t>(c) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(x)]; }
  bool alive(std::size_t c) const { return parent_[c] == static_cast<int>(c); }

  void add_row() {
    parent_.push_back(static_cast<int>(parent_.size()));
    table_.resize(table_.size() + static_cast<std::size_t>(cols_), -1);
    ++live_;
    ++defined_;
    peak_ = std::max(peak_, live_);
  }

  bool define(int c, int x) {
    if (live_ >= cap_) return false;
    int n = static_cast<int>(parent_.size());
    add_row();
    at(c, x) = n;
    at(n, x ^ 1) = c;
    return true;
  }

  int rep(int c) {
    int r = c;
    while (parent_[static_cast<std::size_t>(r)] != r) r = parent_[static_cast<std::size_t>(r)];
    while (parent_[static_cast<std::size_t>(c)] != r) {
      int next = parent_[static_cast<std::size_t>(c)];
      parent_[static_cast<std::size_t>(c)] = r;
      c = next;
    }
    return r;
  }

  void merge(int a, int b) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
    queue_.push_back(b);
    --live_;
    ++dead_;
  }

  void coincidence(int a, int b) {
    merge(a, b);
    while (!queue_.empty()) {
      int e = queue_.front();
      queue_.pop_front();
      for (int x = 0; x < cols_; ++x) {
        int f = at(e, x);
        if (f < 0) continue;
        at(f, x ^ 1) = -1;
        int e1 = rep(e), f1 = rep(f);
        if (at(e1, x) >= 0)
          merge(f1, at(e1, x));
        else if (at(f1, x ^ 1) >= 0)
          merge(e1, at(f1, x ^ 1));
        else {
          at(e1, x) = f1;
          at(f1, x ^ 1) = e1;
        }
      }
    }
  }

  bool scan_and_fill(int c, const std::vector<int>& w) {
    if (w.empty()) return true;
    int f = c, b = c;
    int i = 0, j = static_cast<int>(w.size()) - 1;
    while (true) {
      while (i <= j && at(f, column(w[static_cast<std::size_t>(i)])) >= 0) f = at(f, column(w[static_cast<std::size_t>(i++)]));
      if (i > j) {
        if (f != b) coincidence(f, b);
        return true;
      }
      while (j >= i && at(b, column(w[static_cast<std::size_t>(j)]) ^ 1) >= 0)
        b = at(b, column(w[static_cast<std::size_t>(j--)]) ^ 1);
      if (j < i) {
        coincidence(f, b);
        return true;
      }
      if (i == j) {
        int x = column(w[static_cast<std::size_t>(i)]);
        at(f, x) = b;
        at(b, x ^ 1) = f;
        return true;
      }
      if (!define(f, column(w[static_cast<std::size_t>(i)]))) return false;
    }
  }

  // Drops dead rows; returns the new index of the first live row >= c.
  std::size_t compact(std::size_t c) {
    std::vector<int> index(parent_.size(), -1);
    int next = 0;
    for (std::size_t r = 0; r < parent_.size(); ++r)
      if (alive(r)) index[r] = next++;
    std::vector<int> table(static_cast<std::size_t>(next) * static_cast<std::size_t>(cols_), -1);
    for (std::size_t r = 0; r < parent_.size(); ++r) {
      if (index[r] < 0) continue;
      for (int x = 0; x < cols_; ++x) {
        int v = at(static_cast<int>(r), x);
        table[static_cast<std::size_t>(index[r]) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(x)] =
            v < 0 ? -1 : index[static_cast<std::size_t>(rep(v))];
      }
    }
    std::size_t mapped = static_cast<std::size_t>(next);
    for (std::size_t r = c; r < parent_.size(); ++r)
      if (index[r] >= 0) {
        mapped = static_cast<std::size_t>(index[r]);
        break;
      }
    table_ = std::move(table);
    parent_.resize(static_cast<std::size_t>(next));
    std::iota(parent_.begin(), parent_.end(), 0);
    dead_ = 0;
    return mapped;
  }
};

} // namespace

std::string to_string(const Pi1Verdict& v) {
  switch (v.kind) {
  case Pi1Verdict::Kind::TrivialProven: return "trivial";
  case Pi1Verdict::Kind::FiniteOrder: return "finite " + std::to_string(v.order);
  case Pi1Verdict::Kind::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Pi1Verdict coset_enumerate(const Presentation& p, std::size_t cap) {
  if (cap < 1) throw std::invalid_argument("coset cap must be positive");
  CosetTable table(p.generator_count(), cap);
  bool closed = table.run(p.relators());
  Pi1Verdict v;
  v.cosets_defined = table.defined();
  v.peak_cosets = table.peak();
  if (!closed) return v;
  v.order = table.live();
  v.kind = v.order == 1 ? Pi1Verdict::Kind::TrivialProven : Pi1Verdict::Kind::FiniteOrder;
  return v;
}

Pi1Verdict pi1_trivial(const FakeSurface& f, std::size_t cap) {
  return coset_enumerate(tietze_simplify(presentation_of(f)), cap);
}

} // namespace fakesurf

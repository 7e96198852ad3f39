#include "fakesurf/surface.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

namespace fakesurf {

namespace {

int edge_of(int letter) { return std::abs(letter) - 1; }

void check_letter(const Skeleton& s, int letter) {
  if (letter == 0 || std::abs(letter) > s.edge_count())
    throw MalformedWord("letter " + std::to_string(letter) + " is not an edge of the skeleton");
}

} // namespace

int arrival_germ(const Skeleton& s, int letter) {
  const Edge& e = s.edge(edge_of(letter));
  return letter > 0 ? e.head.id() : e.tail.id();
}

int departure_germ(const Skeleton& s, int letter) {
  const Edge& e = s.edge(edge_of(letter));
  return letter > 0 ? e.tail.id() : e.head.id();
}

int sheet_index(int germ, int other_germ) {
  int sg = germ % 4;
  int sx = other_germ % 4;
  return sx - (sx > sg ? 1 : 0);
}

int sheet_partner(int germ, int sheet) {
  int sg = germ % 4;
  return germ - sg + sheet + (sheet >= sg ? 1 : 0);
}

std::vector<std::vector<Corner>> corners_of(const WordList& words, const Skeleton& s) {
  std::vector<std::vector<Corner>> out(static_cast<std::size_t>(s.complexity()));
  for (std::size_t d = 0; d < words.size(); ++d) {
    const DiskWord& w = words[d];
    if (w.empty()) throw MalformedWord("disk " + std::to_string(d + 1) + " is empty");
    for (int letter : w) check_letter(s, letter);
    for (std::size_t i = 0; i < w.size(); ++i) {
      int a = arrival_germ(s, w[i]);
      int b = departure_germ(s, w[(i + 1) % w.size()]);
      if (a / 4 != b / 4)
        throw MalformedWord("disk " + std::to_string(d + 1) + ": letters " + std::to_string(w[i]) +
                            " and " + std::to_string(w[(i + 1) % w.size()]) +
                            " do not meet at a vertex");
      out[static_cast<std::size_t>(a / 4)].push_back({a / 4, a, b});
    }
  }
  return out;
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
  case ViolationKind::BadLetter: return "bad-letter";
  case ViolationKind::EmptyWord: return "empty-word";
  case ViolationKind::CornerMismatch: return "corner-mismatch";
  case ViolationKind::EdgeMultiplicity: return "edge-multiplicity";
  case ViolationKind::VertexCorners: return "vertex-corners";
  case ViolationKind::DiskCount: return "disk-count";
  }
  return "unknown";
}

std::optional<Violation> validate_words(const Skeleton& s, const WordList& words) {
  for (std::size_t d = 0; d < words.size(); ++d) {
    if (words[d].empty())
      return Violation{ViolationKind::EmptyWord, static_cast<int>(d) + 1,
                       "disk " + std::to_string(d + 1) + " is empty"};
    for (int letter : words[d])
      if (letter == 0 || std::abs(letter) > s.edge_count())
        return Violation{ViolationKind::BadLetter, static_cast<int>(d) + 1,
                         "disk " + std::to_string(d + 1) + " uses unknown edge " + std::to_string(letter)};
  }

  std::vector<std::vector<Corner>> corners;
  try {
    corners = corners_of(words, s);
  } catch (const MalformedWord& e) {
    return Violation{ViolationKind::CornerMismatch, -1, e.what()};
  }

  std::vector<int> uses(static_cast<std::size_t>(s.edge_count()), 0);
  for (const auto& w : words)
    for (int letter : w) ++uses[static_cast<std::size_t>(edge_of(letter))];
  for (int e = 0; e < s.edge_count(); ++e)
    if (uses[static_cast<std::size_t>(e)] != 3)
      return Violation{ViolationKind::EdgeMultiplicity, e + 1,
                       "edge " + std::to_string(e + 1) + " occurs " +
                           std::to_string(uses[static_cast<std::size_t>(e)]) + " times"};

  for (int v = 0; v < s.complexity(); ++v) {
    std::map<std::pair<int, int>, int> seen;
    for (const Corner& c : corners[static_cast<std::size_t>(v)]) {
      auto [lo, hi] = c.sheet();
      if (lo == hi)
        return Violation{ViolationKind::VertexCorners, v + 1,
                         "vertex " + std::to_string(v + 1) + " has a backtracking corner"};
      if (++seen[{lo, hi}] > 1)
        return Violation{ViolationKind::VertexCorners, v + 1,
                         "vertex " + std::to_string(v + 1) + " repeats corner {" +
                             std::to_string(lo % 4) + "," + std::to_string(hi % 4) + "}"};
    }
    if (seen.size() != 6)
      return Violation{ViolationKind::VertexCorners, v + 1,
                       "vertex " + std::to_string(v + 1) + " has " + std::to_string(seen.size()) +
                           " of 6 corners"};
  }

  if (static_cast<int>(words.size()) != s.complexity() + 1)
    return Violation{ViolationKind::DiskCount, -1,
                     std::to_string(words.size()) + " disks, expected " +
                         std::to_string(s.complexity() + 1)};
  return std::nullopt;
}

GluingConfig GluingConfig::from_index(int edges, std::uint64_t index) {
  GluingConfig g(edges);
  for (int e = edges - 1; e >= 0; --e) {
    g.set_digit(e, static_cast<int>(index % 6));
    index /= 6;
  }
  return g;
}

std::uint64_t GluingConfig::index() const {
  std::uint64_t idx = 0;
  for (auto d : digits_) idx = idx * 6 + d;
  return idx;
}

int GluingConfig::backward(int e, int sheet) const {
  const auto& p = kPerms[digits_[static_cast<std::size_t>(e)]];
  for (int i = 0; i < 3; ++i)
    if (p[static_cast<std::size_t>(i)] == sheet) return i;
  return -1;
}

std::uint64_t config_count(const Skeleton& s) {
  std::uint64_t n = 1;
  for (int e = 0; e < s.edge_count(); ++e) n *= 6;
  return n;
}

WordList trace_gluing(const Skeleton& s, const GluingConfig& g) {
  const int m = s.edge_count();
  std::vector<bool> used(static_cast<std::size_t>(3 * m), false);
  WordList out;
  for (int start = 0; start < 3 * m; ++start) {
    if (used[static_cast<std::size_t>(start)]) continue;
    DiskWord word;
    // Departure state: germ and the sheet index there.
    int germ = s.edge(start / 3).tail.id();
    int sheet = start % 3;
    const int start_germ = germ;
    const int start_sheet = sheet;
    do {
      const auto& owner = s.germ_owner(germ);
      const Edge& e = s.edge(owner.edge);
      int tail_sheet, arrive_germ, arrive_sheet;
      if (owner.end == EdgeEnd::Tail) {
        tail_sheet = sheet;
        arrive_germ = e.head.id();
        arrive_sheet = g.forward(owner.edge, sheet);
        word.push_back(owner.edge + 1);
      } else {
        tail_sheet = g.backward(owner.edge, sheet);
        arrive_germ = e.tail.id();
        arrive_sheet = tail_sheet;
        word.push_back(-(owner.edge + 1));
      }
      used[static_cast<std::size_t>(owner.edge * 3 + tail_sheet)] = true;
      int next = sheet_partner(arrive_germ, arrive_sheet);
      sheet = sheet_index(next, arrive_germ);
      germ = next;
    } while (germ != start_germ || sheet != start_sheet);
    out.push_back(std::move(word));
  }
  return out;
}

GluingConfig gluing_of(const Skeleton& s, const WordList& words) {
  const int m = s.edge_count();
  std::vector<std::array<int, 3>> fwd(static_cast<std::size_t>(m), {-1, -1, -1});
  auto fail = [](const std::string& why) { throw MalformedWord("not a gluing: " + why); };
  for (const auto& w : words) {
    if (w.empty()) fail("empty disk");
    for (int letter : w) check_letter(s, letter);
    for (std::size_t i = 0; i < w.size(); ++i) {
      int letter = w[i];
      int before = arrival_germ(s, w[(i + w.size() - 1) % w.size()]);
      int after = departure_germ(s, w[(i + 1) % w.size()]);
      const Edge& e = s.edge(edge_of(letter));
      int tail_other = letter > 0 ? before : after;
      int head_other = letter > 0 ? after : before;
      int tg = e.tail.id(), hg = e.head.id();
      if (tail_other / 4 != tg / 4 || head_other / 4 != hg / 4) fail("corner vertices disagree");
      if (tail_other == tg || head_other == hg) fail("backtracking corner");
      int ts = sheet_index(tg, tail_other);
      int hs = sheet_index(hg, head_other);
      auto& slot = fwd[static_cast<std::size_t>(edge_of(letter))][static_cast<std::size_t>(ts)];
      if (slot != -1) fail("sheet used twice on edge " + std::to_string(edge_of(letter) + 1));
      slot = hs;
    }
  }
  GluingConfig g(m);
  for (int e = 0; e < m; ++e) {
    const auto& f = fwd[static_cast<std::size_t>(e)];
    int d = -1;
    for (int k = 0; k < 6; ++k) {
      const auto& p = GluingConfig::kPerms[static_cast<std::size_t>(k)];
      if (p[0] == f[0] && p[1] == f[1] && p[2] == f[2]) d = k;
    }
    if (d < 0) fail("edge " + std::to_string(e + 1) + " is not glued bijectively");
    g.set_digit(e, d);
  }
  return g;
}

namespace {

// Depth-first walk over gluings, one edge per level. Boundary curves are
// grown as chains of strand arcs joined at the vertex faces; each chain keeps
// its other end and strand count at both of its ends.
class GluingSearch {
public:
  GluingSearch(const Skeleton& s, const EnumerationOptions& opts,
               const std::function<void(const GluingConfig&, std::uint64_t)>& emit)
      : s_(s), opts_(opts), emit_(emit), m_(s.edge_count()), target_(s.complexity() + 1),
        config_(m_) {
    const int endpoints = 3 * s.germ_count();
    other_.resize(static_cast<std::size_t>(endpoints));
    len_.assign(static_cast<std::size_t>(endpoints), 0);
    for (int g = 0; g < s.germ_count(); ++g)
      for (int k = 0; k < 3; ++k) {
        int x = sheet_partner(g, k);
        other_[static_cast<std::size_t>(g * 3 + k)] = x * 3 + sheet_index(x, g);
      }
    weight_.assign(static_cast<std::size_t>(m_), 1);
    for (int e = m_ - 2; e >= 0; --e)
      weight_[static_cast<std::size_t>(e)] = weight_[static_cast<std::size_t>(e + 1)] * 6;
    end_ = opts.end == 0 ? config_count(s) : opts.end;
  }

  EnumerationStats run() {
    descend(0, 0);
    return stats_;
  }

private:
  struct Saved {
    int slot;
    int other;
    int len;
  };

  // Returns false when the arc closes a curve that breaks a constraint.
  bool add_arc(int u, int w) {
    int ou = other_[static_cast<std::size_t>(u)];
    if (ou == w) {
      ++closed_;
      return len_[static_cast<std::size_t>(u)] + 1 >= opts_.min_disk_len && closed_ <= target_;
    }
    int ow = other_[static_cast<std::size_t>(w)];
    int joined = len_[static_cast<std::size_t>(u)] + len_[static_cast<std::size_t>(w)] + 1;
    for (int slot : {ou, ow})
      undo_.push_back({slot, other_[static_cast<std::size_t>(slot)], len_[static_cast<std::size_t>(slot)]});
    other_[static_cast<std::size_t>(ou)] = ow;
    other_[static_cast<std::size_t>(ow)] = ou;
    len_[static_cast<std::size_t>(ou)] = joined;
    len_[static_cast<std::size_t>(ow)] = joined;
    return true;
  }

  void rollback(std::size_t mark, int closed) {
    while (undo_.size() > mark) {
      const Saved& sv = undo_.back();
      other_[static_cast<std::size_t>(sv.slot)] = sv.other;
      len_[static_cast<std::size_t>(sv.slot)] = sv.len;
      undo_.pop_back();
    }
    closed_ = closed;
  }

  void descend(int e, std::uint64_t base) {
    ++stats_.visited;
    if (e == m_) {
      if (closed_ == target_) {
        ++stats_.leaves;
        emit_(config_, base);
      }
      return;
    }
    const Edge& edge = s_.edge(e);
    const int tail = edge.tail.id() * 3;
    const int head = edge.head.id() * 3;
    const std::uint64_t w = weight_[static_cast<std::size_t>(e)];
    const int open_after = 3 * (m_ - e - 1);
    for (int d = 0; d < 6; ++d) {
      std::uint64_t lo = base + static_cast<std::uint64_t>(d) * w;
      if (lo + w <= opts_.begin || lo >= end_) continue;
      std::size_t mark = undo_.size();
      int closed_before = closed_;
      const auto& p = GluingConfig::kPerms[static_cast<std::size_t>(d)];
      bool ok = true;
      for (int i = 0; i < 3 && ok; ++i) ok = add_arc(tail + i, head + p[static_cast<std::size_t>(i)]);
      if (ok) {
        int most = closed_ + open_after;
        int least = closed_ + (open_after > 0 ? 1 : 0);
        ok = least <= target_ && target_ <= most;
      }
      if (ok) {
        config_.set_digit(e, d);
        descend(e + 1, lo);
      }
      rollback(mark, closed_before);
    }
    config_.set_digit(e, 0);
  }

  const Skeleton& s_;
  const EnumerationOptions& opts_;
  const std::function<void(const GluingConfig&, std::uint64_t)>& emit_;
  int m_;
  int target_;
  GluingConfig config_;
  std::vector<int> other_;
  std::vector<int> len_;
  std::vector<std::uint64_t> weight_;
  std::vector<Saved> undo_;
  std::uint64_t end_ = 0;
  int closed_ = 0;
  EnumerationStats stats_;
};

} // namespace

EnumerationStats enumerate_gluings(const Skeleton& s, const EnumerationOptions& opts,
                                   const std::function<void(const GluingConfig&, std::uint64_t)>& emit) {
  GluingSearch search(s, opts, emit);
  return search.run();
}

std::vector<FakeSurface> enumerate_surfaces(const std::shared_ptr<const Skeleton>& s,
                                            const EnumerationOptions& opts) {
  std::vector<FakeSurface> out;
  enumerate_gluings(*s, opts, [&](const GluingConfig& g, std::uint64_t) {
    out.push_back({s, trace_gluing(*s, g)});
  });
  return out;
}

} // namespace fakesurf

#include "fakesurf/topology.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace fakesurf {

namespace {

// Every letter occurrence is a strand along its edge. `occupant` maps a face
// at an edge end, keyed by germ * 3 + sheet, to the strand lying in it.
struct StrandTable {
  std::vector<std::size_t> offset; // first strand id of each disk
  std::vector<int> tail_sheet;
  std::vector<int> head_sheet;
  std::vector<int> occupant;

  StrandTable(const Skeleton& s, const WordList& words) {
    occupant.assign(static_cast<std::size_t>(3 * s.germ_count()), -1);
    std::size_t id = 0;
    for (const auto& w : words) {
      offset.push_back(id);
      for (std::size_t i = 0; i < w.size(); ++i, ++id) {
        int letter = w[i];
        int before = arrival_germ(s, w[(i + w.size() - 1) % w.size()]);
        int after = departure_germ(s, w[(i + 1) % w.size()]);
        const Edge& e = s.edge(std::abs(letter) - 1);
        int ts = sheet_index(e.tail.id(), letter > 0 ? before : after);
        int hs = sheet_index(e.head.id(), letter > 0 ? after : before);
        tail_sheet.push_back(ts);
        head_sheet.push_back(hs);
        occupant[static_cast<std::size_t>(e.tail.id() * 3 + ts)] = static_cast<int>(id);
        occupant[static_cast<std::size_t>(e.head.id() * 3 + hs)] = static_cast<int>(id);
      }
    }
  }

  int sheet_at(const Skeleton& s, int strand, int edge, int germ) const {
    return s.edge(edge).tail.id() == germ ? tail_sheet[static_cast<std::size_t>(strand)]
                                          : head_sheet[static_cast<std::size_t>(strand)];
  }
};

} // namespace

bool is_embedded(const Skeleton& s, const DiskWord& w) {
  std::set<int> edges, vertices;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!edges.insert(std::abs(w[i])).second) return false;
    if (!vertices.insert(arrival_germ(s, w[i]) / 4).second) return false;
  }
  return true;
}

bool t_bundle_trivial(const Skeleton& s, const WordList& words, std::size_t d) {
  (void)gluing_of(s, words); // rejects words without a consistent vertex model
  StrandTable table(s, words);
  const DiskWord& w = words[d];
  const std::size_t n = w.size();
  const int own = static_cast<int>(table.offset[d]);
  const int first_edge = std::abs(w[0]) - 1;
  const int tail = s.edge(first_edge).tail.id();

  int start = -1;
  for (int k = 0; k < 3 && start < 0; ++k) {
    int strand = table.occupant[static_cast<std::size_t>(tail * 3 + k)];
    if (strand != own) start = strand;
  }

  int arm = start;
  for (std::size_t i = 0; i < n; ++i) {
    int letter = w[i];
    int edge = std::abs(letter) - 1;
    int a = arrival_germ(s, letter);
    int b = departure_germ(s, w[(i + 1) % n]);
    int x = sheet_partner(a, table.sheet_at(s, arm, edge, a));
    arm = table.occupant[static_cast<std::size_t>(b * 3 + sheet_index(b, x))];
  }
  return arm == start;
}

std::vector<DiskFlags> disk_flags(const Skeleton& s, const WordList& words) {
  std::vector<DiskFlags> out;
  out.reserve(words.size());
  for (std::size_t d = 0; d < words.size(); ++d)
    out.push_back({is_embedded(s, words[d]), t_bundle_trivial(s, words, d)});
  return out;
}

bool is_embedded(const FakeSurface& f, std::size_t d) { return is_embedded(*f.skeleton, f.disks[d]); }

bool t_bundle_trivial(const FakeSurface& f, std::size_t d) {
  return t_bundle_trivial(*f.skeleton, f.disks, d);
}

bool is_spine(const FakeSurface& f) { return nontrivial_t_count(f) == 0; }

bool has_embedded_disk(const FakeSurface& f) {
  for (const auto& w : f.disks)
    if (is_embedded(*f.skeleton, w)) return true;
  return false;
}

int nontrivial_t_count(const FakeSurface& f) {
  int count = 0;
  for (std::size_t d = 0; d < f.disks.size(); ++d)
    if (!t_bundle_trivial(f, d)) ++count;
  return count;
}

} // namespace fakesurf

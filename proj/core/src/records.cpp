#include "fakesurf/records.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "fakesurf/canon.hpp"

namespace fakesurf {

using nlohmann::json;

RecordError::RecordError(std::size_t line, const std::string& what)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

std::string to_json_line(const SurfaceRecord& r) {
  json flags = json::array();
  for (const auto& f : r.flags) flags.push_back({f.embedded, f.t_trivial});
  json j = {{"skeleton", {{"complexity", r.complexity}, {"index", r.skeleton_index}}},
            {"disks", r.disks},
            {"flags", flags},
            {"acyclic", r.acyclic},
            {"spine", r.spine},
            {"pi1", r.pi1}};
  return j.dump();
}

SurfaceRecord surface_from_json(std::string_view text, std::size_t line) {
  try {
    json j = json::parse(text);
    SurfaceRecord r;
    r.line = line;
    r.complexity = j.at("skeleton").at("complexity").get<int>();
    r.skeleton_index = j.at("skeleton").at("index").get<int>();
    r.disks = j.at("disks").get<WordList>();
    if (j.contains("flags"))
      for (const auto& f : j.at("flags")) r.flags.push_back({f.at(0).get<bool>(), f.at(1).get<bool>()});
    r.acyclic = j.value("acyclic", false);
    r.spine = j.value("spine", false);
    r.pi1 = j.value("pi1", std::string());
    if (!r.flags.empty() && r.flags.size() != r.disks.size())
      throw RecordError(line, "flag count differs from disk count");
    return r;
  } catch (const json::exception& e) {
    throw RecordError(line, e.what());
  }
}

SkeletonRecord skeleton_record(const Skeleton& s) {
  SkeletonRecord r;
  r.complexity = s.complexity();
  r.index = s.index();
  r.adjacency.assign(s.adjacency().cells().begin(), s.adjacency().cells().end());
  auto stats = skeleton_stats(s);
  r.self_loops = stats.self_loops;
  r.girth = stats.girth;
  r.automorphism_order = MoveGroup(s).size();
  return r;
}

std::string to_json_line(const SkeletonRecord& r) {
  json j = {{"complexity", r.complexity}, {"index", r.index},           {"adjacency", r.adjacency},
            {"self_loops", r.self_loops}, {"girth", r.girth}, {"automorphism_order", r.automorphism_order}};
  return j.dump();
}

// ----------------------------------------------------------------- listing

namespace {

bool parse_flag(const std::string& tok, std::size_t line) {
  if (tok == "Y") return true;
  if (tok == "N") return false;
  throw RecordError(line, "expected Y or N, got '" + tok + "'");
}

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

} // namespace

std::vector<ListedSurface> read_listing(std::istream& in) {
  std::vector<ListedSurface> out;
  std::string line;
  std::size_t no = 0;
  bool open = false;
  while (std::getline(in, line)) {
    ++no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (blank(line)) {
      open = false;
      continue;
    }
    if (line.find_first_not_of(" \t") != std::string::npos && line[line.find_first_not_of(" \t")] == '#') continue;
    std::istringstream ss(line);
    if (line[line.find_first_not_of(" \t")] == 'G') {
      std::string g;
      ListedSurface s;
      s.line = no;
      if (!(ss >> g >> s.complexity >> s.skeleton_index) || g != "G" || s.complexity < 1 || s.skeleton_index < 1)
        throw RecordError(no, "bad header, expected 'G <complexity> <index>'");
      out.push_back(std::move(s));
      open = true;
      continue;
    }
    if (!open) throw RecordError(no, "disk row outside a surface block");
    auto bar = line.find('|');
    if (bar == std::string::npos) throw RecordError(no, "missing '|' before the Y/N columns");
    std::istringstream word(line.substr(0, bar)), flags(line.substr(bar + 1));
    DiskWord w;
    std::string tok;
    while (word >> tok) {
      try {
        std::size_t used = 0;
        int x = std::stoi(tok, &used);
        if (used != tok.size() || x == 0) throw std::invalid_argument(tok);
        w.push_back(x);
      } catch (const std::logic_error&) {
        throw RecordError(no, "bad edge letter '" + tok + "'");
      }
    }
    std::string e, t, extra;
    if (!(flags >> e >> t) || (flags >> extra)) throw RecordError(no, "expected two Y/N flags");
    out.back().disks.push_back(std::move(w));
    out.back().flags.push_back({parse_flag(e, no), parse_flag(t, no)});
  }
  return out;
}

void write_listing(std::ostream& out, const std::vector<SurfaceRecord>& records) {
  bool first = true;
  for (const auto& r : records) {
    if (!first) out << '\n';
    first = false;
    out << "G " << r.complexity << ' ' << r.skeleton_index << '\n';
    for (std::size_t d = 0; d < r.disks.size(); ++d) {
      for (std::size_t i = 0; i < r.disks[d].size(); ++i) out << (i ? " " : "") << r.disks[d][i];
      if (d < r.flags.size())
        out << " | " << (r.flags[d].embedded ? 'Y' : 'N') << ' ' << (r.flags[d].t_trivial ? 'Y' : 'N');
      out << '\n';
    }
  }
}

FileFormat sniff_format(std::istream& in) {
  auto start = in.tellg();
  std::string line;
  FileFormat f = FileFormat::Listing;
  while (std::getline(in, line)) {
    auto p = line.find_first_not_of(" \t\r");
    if (p == std::string::npos || line[p] == '#') continue;
    f = line[p] == '{' ? FileFormat::Jsonl : FileFormat::Listing;
    break;
  }
  in.clear();
  in.seekg(start);
  return f;
}

std::vector<ListedSurface> read_surfaces(std::istream& in) {
  if (sniff_format(in) == FileFormat::Listing) return read_listing(in);
  std::vector<ListedSurface> out;
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (blank(line)) continue;
    SurfaceRecord r = surface_from_json(line, no);
    out.push_back({r.complexity, r.skeleton_index, std::move(r.disks), std::move(r.flags), no});
  }
  return out;
}

std::optional<WordList> orient_to_skeleton(const Skeleton& s, const WordList& words) {
  std::vector<int> plain;
  for (const Edge& e : s.edges())
    if (!e.is_loop()) plain.push_back(e.label);
  for (const DiskWord& w : words)
    for (int x : w)
      if (x == 0 || std::abs(x) > s.edge_count()) return std::nullopt;
  std::vector<std::uint32_t> masks(std::size_t{1} << plain.size());
  for (std::uint32_t m = 0; m < masks.size(); ++m) masks[m] = m;
  std::stable_sort(masks.begin(), masks.end(),
                   [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });
  for (std::uint32_t m : masks) {
    std::vector<bool> flip(static_cast<std::size_t>(s.edge_count()) + 1, false);
    for (std::size_t k = 0; k < plain.size(); ++k)
      if (m >> k & 1u) flip[static_cast<std::size_t>(plain[k])] = true;
    WordList x = words;
    for (auto& w : x)
      for (int& letter : w)
        if (flip[static_cast<std::size_t>(std::abs(letter))]) letter = -letter;
    if (!validate_words(s, x)) return x;
  }
  return std::nullopt;
}

} // namespace fakesurf

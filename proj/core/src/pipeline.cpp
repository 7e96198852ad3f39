#include "fakesurf/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>
#include <openssl/evp.h>

#include "fakesurf/algebra.hpp"
#include "fakesurf/canon.hpp"
#include "fakesurf/topology.hpp"

#ifndef FAKESURF_VERSION
#define FAKESURF_VERSION "0.0.0"
#endif

namespace fakesurf {

namespace fs = std::filesystem;
using nlohmann::json;

// ------------------------------------------------------------------ result

std::size_t ClassificationResult::total() const {
  std::size_t n = 0;
  for (const auto& s : skeleta) n += s.surfaces.size();
  return n;
}

std::size_t ClassificationResult::spines() const {
  std::size_t n = 0;
  for (const auto& s : skeleta)
    for (const auto& r : s.surfaces) n += r.spine ? 1 : 0;
  return n;
}

std::vector<std::size_t> ClassificationResult::nontrivial_histogram() const {
  std::vector<std::size_t> h(static_cast<std::size_t>(complexity) + 2, 0);
  for (const auto& s : skeleta)
    for (const auto& r : s.surfaces) {
      std::size_t n = 0;
      for (const auto& f : r.flags) n += f.t_trivial ? 0 : 1;
      if (n >= h.size()) h.resize(n + 1, 0);
      ++h[n];
    }
  return h;
}

std::size_t ClassificationResult::with_embedded_disk() const {
  std::size_t n = 0;
  for (const auto& s : skeleta)
    for (const auto& r : s.surfaces)
      n += std::any_of(r.flags.begin(), r.flags.end(), [](const DiskFlags& f) { return f.embedded; }) ? 1 : 0;
  return n;
}

std::size_t ClassificationResult::pi1_count(const std::string& verdict) const {
  std::size_t n = 0;
  for (const auto& s : skeleta)
    for (const auto& r : s.surfaces) n += r.pi1 == verdict ? 1 : 0;
  return n;
}

std::string run_name(int complexity, int min_disk_len) {
  std::string name = "t" + std::to_string(complexity);
  if (min_disk_len > 1) name += "-min" + std::to_string(min_disk_len);
  return name;
}

// ------------------------------------------------------------------ hashing

namespace {

std::string hex(const unsigned char* data, std::size_t n) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    out += digits[data[i] >> 4];
    out += digits[data[i] & 15];
  }
  return out;
}

} // namespace

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr))
    throw std::runtime_error("sha256 failed");
  return hex(md, len);
}

std::string sha256_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return sha256_hex(ss.str());
}

// ----------------------------------------------------------------- skeleta

const std::vector<std::shared_ptr<const Skeleton>>& skeleta_of(int t) {
  static std::mutex mu;
  static std::map<int, std::vector<std::shared_ptr<const Skeleton>>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(t);
  if (it == cache.end()) {
    std::vector<std::shared_ptr<const Skeleton>> list;
    for (auto& s : enumerate_skeleta(t)) list.push_back(std::make_shared<const Skeleton>(std::move(s)));
    it = cache.emplace(t, std::move(list)).first;
  }
  return it->second;
}

// ---------------------------------------------------------------- classify

namespace {

struct Unit {
  std::size_t skeleton = 0; // position in skeleta_of(t)
  int part = 0;
};

std::string part_stem(int index, int part, int shards) {
  return "s" + std::to_string(index) + "-p" + std::to_string(part) + "of" + std::to_string(shards);
}

void write_atomically(const fs::path& p, const std::string& content) {
  fs::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, p);
}

std::string read_all(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<SurfaceRecord> parse_records(const std::string& text) {
  std::vector<SurfaceRecord> out;
  std::istringstream in(text);
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (!line.empty()) out.push_back(surface_from_json(line, no));
  }
  return out;
}

std::string serialize(const std::vector<SurfaceRecord>& records) {
  std::string out;
  for (const auto& r : records) out += to_json_line(r) + "\n";
  return out;
}

json marker_json(const std::string& sha, const ClassifyOptions& o, std::size_t n) {
  return {{"sha256", sha}, {"coset_cap", o.coset_cap}, {"pi1", o.pi1}, {"surfaces", n}};
}

// Records of a finished part, or nullopt if it must be (re)computed.
std::optional<std::vector<SurfaceRecord>> load_part(const fs::path& dir, const std::string& stem,
                                                    const ClassifyOptions& o) {
  fs::path data = dir / (stem + ".jsonl"), marker = dir / (stem + ".done");
  std::error_code ec;
  if (!fs::exists(marker, ec) || !fs::exists(data, ec)) return std::nullopt;
  try {
    json m = json::parse(read_all(marker));
    std::string text = read_all(data);
    if (m.at("sha256") != sha256_hex(text) || m.at("coset_cap") != o.coset_cap || m.at("pi1") != o.pi1)
      return std::nullopt;
    return parse_records(text);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::vector<SurfaceRecord> compute_part(int t, const Skeleton& s, const std::shared_ptr<const Skeleton>& sp, int part,
                                        const ClassifyOptions& o) {
  const std::uint64_t count = config_count(s);
  const std::uint64_t begin = count / static_cast<std::uint64_t>(o.shards) * static_cast<std::uint64_t>(part) +
                              std::min<std::uint64_t>(count % static_cast<std::uint64_t>(o.shards), static_cast<std::uint64_t>(part));
  const std::uint64_t end = count / static_cast<std::uint64_t>(o.shards) * static_cast<std::uint64_t>(part + 1) +
                            std::min<std::uint64_t>(count % static_cast<std::uint64_t>(o.shards), static_cast<std::uint64_t>(part + 1));
  std::map<CanonicalKey, SurfaceRecord> found;
  if (begin == end) return {};

  Canonicalizer canon(sp);
  std::vector<bool> seen(count, false);
  EnumerationOptions eo;
  eo.min_disk_len = o.min_disk_len;
  eo.begin = begin;
  eo.end = end;
  enumerate_gluings(s, eo, [&](const GluingConfig& g, std::uint64_t idx) {
    if (seen[idx]) return;
    WordList words = trace_gluing(s, g);
    if (!is_acyclic(s, words)) return;
    auto r = canon.canonical(words, [&](std::uint64_t i) { seen[i] = true; });
    if (found.count(r.key)) return;
    SurfaceRecord rec;
    rec.complexity = t;
    rec.skeleton_index = s.index();
    rec.flags = disk_flags(s, r.words);
    rec.acyclic = true;
    rec.spine = std::all_of(rec.flags.begin(), rec.flags.end(), [](const DiskFlags& f) { return f.t_trivial; });
    rec.disks = r.words;
    if (o.pi1) rec.pi1 = to_string(pi1_trivial(FakeSurface{sp, r.words}, o.coset_cap));
    found.emplace(std::move(r.key), std::move(rec));
  });
  std::vector<SurfaceRecord> out;
  out.reserve(found.size());
  for (auto& [key, rec] : found) out.push_back(std::move(rec));
  return out;
}

template <class F>
void run_pool(std::size_t tasks, int jobs, F&& work) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= tasks) return;
      {
        std::lock_guard lock(mu);
        if (failure) return;
      }
      try {
        work(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t n = std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), tasks));
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

} // namespace

ClassificationResult classify(int t, const ClassifyOptions& o) {
  if (t < 1) throw std::invalid_argument("complexity must be at least 1");
  if (o.shards < 1) throw std::invalid_argument("shard count must be at least 1");
  if (o.min_disk_len < 1) throw std::invalid_argument("min disk length must be at least 1");
  if (o.only_shard && (*o.only_shard < 0 || *o.only_shard >= o.shards))
    throw std::invalid_argument("shard out of range");

  const auto& sks = skeleta_of(t);
  const bool persist = !o.out_dir.empty();
  const fs::path run_dir = persist ? o.out_dir / run_name(t, o.min_disk_len) : fs::path();
  const fs::path parts_dir = run_dir / "parts";
  if (persist) fs::create_directories(parts_dir);

  std::vector<Unit> units;
  for (std::size_t s = 0; s < sks.size(); ++s)
    for (int k = 0; k < o.shards; ++k) units.push_back({s, k});

  std::vector<std::optional<std::vector<SurfaceRecord>>> results(units.size());
  std::vector<std::string> hashes(units.size());
  run_pool(units.size(), o.jobs, [&](std::size_t i) {
    const Unit& u = units[i];
    const auto& sp = sks[u.skeleton];
    const std::string stem = part_stem(sp->index(), u.part, o.shards);
    if (persist) {
      if (auto done = load_part(parts_dir, stem, o)) {
        results[i] = std::move(done);
        hashes[i] = sha256_file(parts_dir / (stem + ".jsonl"));
        return;
      }
    }
    if (o.only_shard && u.part != *o.only_shard) return;
    auto records = compute_part(t, *sp, sp, u.part, o);
    if (persist) {
      std::string text = serialize(records);
      hashes[i] = sha256_hex(text);
      write_atomically(parts_dir / (stem + ".jsonl"), text);
      write_atomically(parts_dir / (stem + ".done"), marker_json(hashes[i], o, records.size()).dump() + "\n");
    }
    results[i] = std::move(records);
  });

  ClassificationResult result;
  result.complexity = t;
  result.min_disk_len = o.min_disk_len;
  result.complete = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.has_value(); });

  json manifest = {{"tool_version", FAKESURF_VERSION},
                   {"complexity", t},
                   {"options",
                    {{"min_disk_len", o.min_disk_len}, {"shards", o.shards}, {"coset_cap", o.coset_cap}, {"pi1", o.pi1}}},
                   {"parts", json::array()},
                   {"output", nullptr}};
  for (std::size_t i = 0; i < units.size(); ++i)
    manifest["parts"].push_back({{"skeleton", sks[units[i].skeleton]->index()},
                                 {"part", units[i].part},
                                 {"done", results[i].has_value()},
                                 {"sha256", results[i] ? json(hashes[i]) : json(nullptr)}});

  if (result.complete) {
    // Reducer: key-set union per skeleton, output sorted by key.
    for (std::size_t s = 0; s < sks.size(); ++s) {
      std::map<CanonicalKey, SurfaceRecord> merged;
      for (std::size_t i = 0; i < units.size(); ++i)
        if (units[i].skeleton == s)
          for (auto& r : *results[i]) merged.try_emplace(encode_key(r.disks), std::move(r));
      SkeletonSurfaces group{sks[s]->index(), {}};
      for (auto& [key, r] : merged) group.surfaces.push_back(std::move(r));
      result.skeleta.push_back(std::move(group));
    }
    if (persist) {
      std::string text;
      for (const auto& g : result.skeleta) text += serialize(g.surfaces);
      write_atomically(run_dir / "surfaces.jsonl", text);
      manifest["output"] = {{"file", "surfaces.jsonl"}, {"sha256", sha256_hex(text)}, {"surfaces", result.total()}};
    }
  }
  if (persist) write_atomically(run_dir / "manifest.json", manifest.dump(2) + "\n");
  return result;
}

std::optional<ClassificationResult> load_result(const fs::path& out_dir, int t, int min_disk_len) {
  const fs::path run_dir = out_dir / run_name(t, min_disk_len);
  std::error_code ec;
  if (!fs::exists(run_dir / "manifest.json", ec) || !fs::exists(run_dir / "surfaces.jsonl", ec)) return std::nullopt;
  json manifest = json::parse(read_all(run_dir / "manifest.json"));
  if (manifest.at("output").is_null()) return std::nullopt;
  std::string text = read_all(run_dir / "surfaces.jsonl");
  if (manifest["output"].at("sha256") != sha256_hex(text))
    throw std::runtime_error(run_dir.string() + ": surfaces.jsonl does not match its manifest hash");

  ClassificationResult result;
  result.complexity = t;
  result.min_disk_len = min_disk_len;
  result.complete = true;
  for (const auto& s : skeleta_of(t)) result.skeleta.push_back({s->index(), {}});
  for (auto& r : parse_records(text)) {
    if (r.complexity != t || r.skeleton_index < 1 || r.skeleton_index > static_cast<int>(result.skeleta.size()))
      throw RecordError(r.line, "record does not belong to this run");
    result.skeleta[static_cast<std::size_t>(r.skeleton_index - 1)].surfaces.push_back(std::move(r));
  }
  return result;
}

// ------------------------------------------------------------------ tables

std::string SpineRatio::percent() const {
  std::ostringstream ss;
  ss << tenths / 10 << '.' << tenths % 10;
  return ss.str();
}

std::vector<SpineRatio> stats_spine_ratio(const std::vector<ClassificationResult>& results) {
  std::vector<SpineRatio> out;
  for (const auto& r : results) {
    if (!r.complete) throw std::invalid_argument("incomplete result for complexity " + std::to_string(r.complexity));
    SpineRatio s;
    s.complexity = r.complexity;
    s.spines = r.spines();
    s.total = r.total();
    // Round half up in integer arithmetic.
    s.tenths = s.total ? static_cast<long long>((2000 * s.spines + s.total) / (2 * s.total)) : 0;
    out.push_back(s);
  }
  return out;
}

namespace {

std::string row(const std::vector<std::string>& cells, const std::vector<std::size_t>& widths) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    std::string c = cells[i];
    if (i) out += "  ";
    out += std::string(widths[i] > c.size() ? widths[i] - c.size() : 0, ' ') + c;
  }
  return out + "\n";
}

std::string render(const std::string& title, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (widths.size() <= i) widths.push_back(0);
      widths[i] = std::max(widths[i], r[i].size());
    }
  std::string out = title + "\n";
  for (const auto& r : rows) out += row(r, widths);
  return out;
}

} // namespace

std::string emit_tables(const std::vector<ClassificationResult>& results, int max_skeleton_complexity) {
  std::string out;
  if (!results.empty()) {
    auto ratios = stats_spine_ratio(results);
    std::size_t width = 0;
    for (const auto& r : results) width = std::max(width, r.nontrivial_histogram().size());
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> head{"t", "spines"};
    for (std::size_t n = 1; n < width; ++n) head.push_back(std::to_string(n));
    head.insert(head.end(), {"total", "% spines", "fraction"});
    rows.push_back(head);
    for (std::size_t i = 0; i < results.size(); ++i) {
      auto h = results[i].nontrivial_histogram();
      h.resize(width, 0);
      std::vector<std::string> cells{std::to_string(results[i].complexity)};
      for (auto v : h) cells.push_back(std::to_string(v));
      cells.push_back(std::to_string(ratios[i].total));
      cells.push_back(ratios[i].percent());
      cells.push_back(std::to_string(ratios[i].spines) + "/" + std::to_string(ratios[i].total));
      rows.push_back(cells);
    }
    out += render("Surfaces by number of disks with nontrivial T-bundle", rows) + "\n";
  }

  if (max_skeleton_complexity >= 1) {
    std::vector<std::vector<int>> loops, girths;
    int max_girth = 3;
    for (int t = 1; t <= max_skeleton_complexity; ++t) {
      // One vertex carries two loops; otherwise at most t.
      std::vector<int> l(static_cast<std::size_t>(std::max(t, 2)) + 1, 0), g;
      for (const auto& s : skeleta_of(t)) {
        auto st = skeleton_stats(*s);
        ++l[static_cast<std::size_t>(st.self_loops)];
        if (static_cast<int>(g.size()) < st.girth) g.resize(static_cast<std::size_t>(st.girth), 0);
        ++g[static_cast<std::size_t>(st.girth - 1)];
        max_girth = std::max(max_girth, st.girth);
      }
      loops.push_back(l);
      girths.push_back(g);
    }
    std::vector<std::vector<std::string>> lrows, grows;
    std::vector<std::string> lhead{"t"}, ghead{"t"};
    for (int n = 0; n <= std::max(max_skeleton_complexity, 2); ++n) lhead.push_back(std::to_string(n));
    for (int g = 1; g <= max_girth; ++g) ghead.push_back(std::to_string(g));
    lhead.push_back("total");
    ghead.push_back("total");
    lrows.push_back(lhead);
    grows.push_back(ghead);
    for (int t = 1; t <= max_skeleton_complexity; ++t) {
      const auto& l = loops[static_cast<std::size_t>(t - 1)];
      auto g = girths[static_cast<std::size_t>(t - 1)];
      g.resize(static_cast<std::size_t>(max_girth), 0);
      std::size_t total = skeleta_of(t).size();
      std::vector<std::string> lc{std::to_string(t)}, gc{std::to_string(t)};
      for (int n = 0; n <= std::max(max_skeleton_complexity, 2); ++n)
        lc.push_back(n < static_cast<int>(l.size()) ? std::to_string(l[static_cast<std::size_t>(n)]) : "");
      for (int v : g) gc.push_back(std::to_string(v));
      lc.push_back(std::to_string(total));
      gc.push_back(std::to_string(total));
      lrows.push_back(lc);
      grows.push_back(gc);
    }
    out += render("Skeleta by number of self-loops", lrows) + "\n";
    out += render("Skeleta by shortest cycle", grows);
  }
  return out;
}

// ------------------------------------------------------------------ verify

namespace {

std::string yn(bool b) { return b ? "Y" : "N"; }

} // namespace

VerifyReport verify_surfaces(std::istream& in, std::size_t coset_cap) {
  VerifyReport report;
  const FileFormat format = sniff_format(in);
  std::vector<ListedSurface> listed;
  std::vector<SurfaceRecord> native;
  try {
    if (format == FileFormat::Listing) {
      listed = read_listing(in);
    } else {
      std::string line;
      std::size_t no = 0;
      while (std::getline(in, line)) {
        ++no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        native.push_back(surface_from_json(line, no));
        const auto& r = native.back();
        listed.push_back({r.complexity, r.skeleton_index, r.disks, r.flags, no});
      }
    }
  } catch (const RecordError& e) {
    report.issues.push_back({e.line(), std::string("parse error: ") + e.what()});
    return report;
  }

  std::map<std::tuple<int, int, std::string>, std::size_t> seen_keys;
  for (std::size_t i = 0; i < listed.size(); ++i) {
    const ListedSurface& ls = listed[i];
    VerifiedSurface v;
    v.line = ls.line;
    v.complexity = ls.complexity;
    v.skeleton_index = ls.skeleton_index;
    auto issue = [&](const std::string& m) { report.issues.push_back({ls.line, m}); };

    if (ls.complexity < 1 || ls.complexity > 7) {
      issue("complexity " + std::to_string(ls.complexity) + " out of the supported range 1..7");
      report.surfaces.push_back(v);
      continue;
    }
    const auto& sks = skeleta_of(ls.complexity);
    if (ls.skeleton_index < 1 || ls.skeleton_index > static_cast<int>(sks.size())) {
      issue("no skeleton " + std::to_string(ls.skeleton_index) + " at complexity " + std::to_string(ls.complexity));
      report.surfaces.push_back(v);
      continue;
    }
    const auto& sp = sks[static_cast<std::size_t>(ls.skeleton_index - 1)];
    auto words = orient_to_skeleton(*sp, ls.disks);
    if (!words) {
      auto why = validate_words(*sp, ls.disks);
      issue("not a fake surface on this skeleton" + (why ? ": " + why->message : std::string()));
      report.surfaces.push_back(v);
      continue;
    }
    if (format == FileFormat::Jsonl && *words != ls.disks) issue("edge directions disagree with the skeleton");
    v.valid = true;
    v.acyclic = is_acyclic(*sp, *words);
    if (!v.acyclic) issue("not acyclic");

    auto flags = disk_flags(*sp, *words);
    v.spine = std::all_of(flags.begin(), flags.end(), [](const DiskFlags& f) { return f.t_trivial; });
    if (ls.flags.size() != flags.size() && !(format == FileFormat::Jsonl && ls.flags.empty()))
      issue("expected " + std::to_string(flags.size()) + " flag rows, found " + std::to_string(ls.flags.size()));
    for (std::size_t d = 0; d < std::min(flags.size(), ls.flags.size()); ++d) {
      if (flags[d].embedded != ls.flags[d].embedded)
        issue("disk " + std::to_string(d + 1) + " embedded: recorded " + yn(ls.flags[d].embedded) + ", derived " +
              yn(flags[d].embedded));
      if (flags[d].t_trivial != ls.flags[d].t_trivial)
        issue("disk " + std::to_string(d + 1) + " T-bundle trivial: recorded " + yn(ls.flags[d].t_trivial) +
              ", derived " + yn(flags[d].t_trivial));
    }

    FakeSurface f{sp, *words};
    v.pi1 = v.acyclic ? to_string(pi1_trivial(f, coset_cap)) : "";
    auto canon = Canonicalizer(sp).canonical(*words);
    v.key = hex(reinterpret_cast<const unsigned char*>(canon.key.data()), canon.key.size());

    if (format == FileFormat::Jsonl) {
      const SurfaceRecord& r = native[i];
      if (r.acyclic != v.acyclic) issue("acyclic: recorded " + yn(r.acyclic) + ", derived " + yn(v.acyclic));
      if (r.spine != v.spine) issue("spine: recorded " + yn(r.spine) + ", derived " + yn(v.spine));
      if (!r.pi1.empty() && r.pi1 != v.pi1) issue("pi1: recorded " + r.pi1 + ", derived " + v.pi1);
    }
    auto [it, fresh] = seen_keys.try_emplace({ls.complexity, ls.skeleton_index, v.key}, ls.line);
    if (!fresh) issue("same surface as the record at line " + std::to_string(it->second));
    report.surfaces.push_back(std::move(v));
  }
  return report;
}

VerifyReport verify_file(const fs::path& p, std::size_t coset_cap) {
  std::ifstream in(p, std::ios::binary);
  if (!in) {
    VerifyReport r;
    r.issues.push_back({0, "cannot open " + p.string()});
    return r;
  }
  return verify_surfaces(in, coset_cap);
}

} // namespace fakesurf

// fakesurf: enumerate, classify and verify acyclic cellular fake surfaces.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "fakesurf/algebra.hpp"
#include "fakesurf/canon.hpp"
#include "fakesurf/pipeline.hpp"
#include "fakesurf/presentation.hpp"
#include "fakesurf/records.hpp"
#include "fakesurf/topology.hpp"

namespace fs = std::filesystem;
using namespace fakesurf;

namespace {

constexpr const char* kOutEnv = "FAKESURF_OUT";

fs::path default_out_dir() {
  if (const char* env = std::getenv(kOutEnv); env && *env) return env;
  return "fakesurf-out";
}

std::vector<ListedSurface> load_surfaces(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_surfaces(in);
}

// Listed surface on its skeleton with the skeleton's edge directions.
FakeSurface resolve(const ListedSurface& ls) {
  if (ls.complexity < 1 || ls.complexity > 7) throw RecordError(ls.line, "complexity out of range 1..7");
  const auto& sks = skeleta_of(ls.complexity);
  if (ls.skeleton_index < 1 || ls.skeleton_index > static_cast<int>(sks.size()))
    throw RecordError(ls.line, "no such skeleton");
  const auto& sp = sks[static_cast<std::size_t>(ls.skeleton_index - 1)];
  auto words = orient_to_skeleton(*sp, ls.disks);
  if (!words) throw RecordError(ls.line, "not a fake surface on skeleton " + std::to_string(ls.skeleton_index));
  return {sp, *words};
}

void print_summary(std::ostream& out, const ClassificationResult& r) {
  out << "complexity " << r.complexity;
  if (r.min_disk_len > 1) out << " (disks of length >= " << r.min_disk_len << ")";
  out << ": " << r.total() << " surfaces\n";
  for (const auto& g : r.skeleta) out << "  skeleton " << g.index << ": " << g.surfaces.size() << "\n";
  out << "  by nontrivial T-bundles:";
  for (auto n : r.nontrivial_histogram()) out << ' ' << n;
  out << "\n  spines: " << r.spines() << "\n  with an embedded disk: " << r.with_embedded_disk() << "\n";
  out << "  pi1 trivial: " << r.pi1_count("trivial") << ", inconclusive: " << r.pi1_count("inconclusive") << "\n";
}

int cmd_skeleta(int t, const std::string& out_path) {
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!out_path.empty()) {
    file.open(out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + out_path);
    out = &file;
  }
  for (const auto& s : skeleta_of(t)) *out << to_json_line(skeleton_record(*s)) << '\n';
  if (!out_path.empty()) std::cerr << skeleta_of(t).size() << " skeleta written to " << out_path << '\n';
  return 0;
}

int cmd_classify(int t, ClassifyOptions o, const std::string& shard, const std::string& listing) {
  if (!shard.empty()) {
    int k = 0, m = 0;
    char slash = 0;
    std::istringstream ss(shard);
    if (!(ss >> k >> slash >> m) || slash != '/' || m < 1 || k < 1 || k > m)
      throw CLI::ValidationError("--shard", "expected k/m with 1 <= k <= m");
    o.shards = m;
    o.only_shard = k - 1;
  }
  auto start = std::chrono::steady_clock::now();
  ClassificationResult r = classify(t, o);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  fs::path dir = o.out_dir / run_name(t, o.min_disk_len);
  if (!r.complete) {
    std::cout << "shard " << shard << " done in " << secs << " s; waiting for the remaining shards under " << dir.string()
              << '\n';
    return 0;
  }
  print_summary(std::cout, r);
  std::cout << "  output: " << (dir / "surfaces.jsonl").string() << " (" << secs << " s)\n";
  if (!listing.empty()) {
    std::vector<SurfaceRecord> all;
    for (const auto& g : r.skeleta) all.insert(all.end(), g.surfaces.begin(), g.surfaces.end());
    std::ofstream out(listing, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + listing);
    write_listing(out, all);
  }
  return 0;
}

int cmd_verify(const std::string& path, std::size_t cap) {
  VerifyReport rep = verify_file(path, cap);
  for (const auto& i : rep.issues) std::cout << "line " << i.line << ": " << i.message << '\n';
  std::size_t trivial = 0;
  for (const auto& s : rep.surfaces) trivial += s.pi1 == "trivial" ? 1 : 0;
  std::cout << rep.surfaces.size() << " records, " << rep.issues.size() << " issue(s), " << trivial
            << " with trivial pi1\n";
  return rep.ok() ? 0 : 1;
}

int cmd_tables(int max_t, const fs::path& out_dir) {
  std::vector<ClassificationResult> results;
  for (int t = 1; t <= max_t; ++t) {
    if (auto loaded = load_result(out_dir, t)) {
      results.push_back(std::move(*loaded));
    } else if (t <= 4) {
      ClassifyOptions o;
      o.pi1 = false;
      o.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
      results.push_back(classify(t, o));
    } else {
      std::cerr << "complexity " << t << ": no finished run under " << out_dir.string()
                << "; surface table stops at " << t - 1 << '\n';
      break;
    }
  }
  std::cout << emit_tables(results, max_t);
  return 0;
}

int cmd_pi1(const std::string& path, std::size_t cap) {
  int bad = 0;
  for (const auto& ls : load_surfaces(path)) {
    FakeSurface f = resolve(ls);
    Pi1Verdict v = pi1_trivial(f, cap);
    std::cout << "line " << ls.line << "  G " << ls.complexity << ' ' << ls.skeleton_index << "  " << to_string(v)
              << "  cosets " << v.cosets_defined << '\n';
    bad += v.trivial() ? 0 : 1;
  }
  return bad ? 1 : 0;
}

int cmd_canon(const std::string& path, bool listing) {
  std::vector<SurfaceRecord> out;
  for (const auto& ls : load_surfaces(path)) {
    FakeSurface f = resolve(ls);
    auto c = Canonicalizer(f.skeleton).canonical(f.disks);
    SurfaceRecord r;
    r.complexity = ls.complexity;
    r.skeleton_index = ls.skeleton_index;
    r.disks = c.words;
    r.flags = disk_flags(*f.skeleton, c.words);
    r.acyclic = is_acyclic(*f.skeleton, c.words);
    r.spine = std::all_of(r.flags.begin(), r.flags.end(), [](const DiskFlags& d) { return d.t_trivial; });
    out.push_back(std::move(r));
  }
  if (listing)
    write_listing(std::cout, out);
  else
    for (const auto& r : out) std::cout << to_json_line(r) << '\n';
  return 0;
}

int cmd_bp(const std::string& text) {
  Presentation p = parse_presentation(text);
  std::cout << bp_complexity(p) << '\n';
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Enumerate, classify and verify acyclic cellular fake surfaces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", FAKESURF_VERSION_STRING);

  int t = 0;
  std::string out_file;
  auto* sk = app.add_subcommand("skeleta", "List 1-skeleta of a complexity, one JSON record per line");
  sk->add_option("--complexity,-t", t, "Number of vertices")->required()->check(CLI::Range(1, 8));
  sk->add_option("--out,-o", out_file, "Write to FILE instead of stdout");

  ClassifyOptions copts;
  std::string out_dir = default_out_dir().string(), shard, listing;
  auto* cl = app.add_subcommand("classify", "Classify acyclic cellular fake surfaces of one complexity");
  cl->add_option("--complexity,-t", t, "Number of vertices")->required()->check(CLI::Range(1, 7));
  cl->add_option("--min-disk-len", copts.min_disk_len, "Skip surfaces with a shorter disk")->check(CLI::Range(1, 100));
  cl->add_option("--jobs,-j", copts.jobs, "Worker threads")->check(CLI::Range(1, 1024));
  cl->add_option("--shards", copts.shards, "Config ranges per skeleton")->check(CLI::Range(1, 100000));
  cl->add_option("--shard", shard, "Run only range k of m (k/m, 1-based); merges once all ranges exist");
  cl->add_option("--out,-o", out_dir, std::string("Output directory (default $") + kOutEnv + " or ./fakesurf-out)");
  cl->add_option("--coset-cap", copts.coset_cap, "Coset enumeration cap")->check(CLI::PositiveNumber);
  cl->add_flag("!--no-pi1", copts.pi1, "Skip fundamental group certification");
  cl->add_option("--listing", listing, "Also export the result in listing format to FILE");

  std::string file;
  std::size_t cap = kDefaultCosetCap;
  auto* ve = app.add_subcommand("verify", "Re-derive and check every record of a surface file");
  ve->add_option("FILE", file, "JSONL or listing file")->required();
  ve->add_option("--coset-cap", cap, "Coset enumeration cap")->check(CLI::PositiveNumber);

  int max_t = 4;
  auto* ta = app.add_subcommand("tables", "Print surface and skeleton count tables");
  ta->add_option("--max-complexity,-t", max_t, "Largest complexity")->required()->check(CLI::Range(1, 7));
  ta->add_option("--out,-o", out_dir, "Directory with finished runs");

  auto* pi = app.add_subcommand("pi1", "Certify triviality of the fundamental group of each surface in FILE");
  pi->add_option("FILE", file, "JSONL or listing file")->required();
  pi->add_option("--coset-cap", cap, "Coset enumeration cap")->check(CLI::PositiveNumber);

  bool as_listing = false;
  auto* ca = app.add_subcommand("canon", "Print the canonical form of each surface in FILE");
  ca->add_option("FILE", file, "JSONL or listing file")->required();
  ca->add_flag("--listing", as_listing, "Print in listing format");

  std::string pres;
  auto* bp = app.add_subcommand("bp", "Banana-pineapple complexity of a presentation, e.g. \"x,y|xyxYXY\"");
  bp->add_option("PRESENTATION", pres, "Generators | relators")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sk) return cmd_skeleta(t, out_file);
    if (*cl) {
      copts.out_dir = out_dir;
      return cmd_classify(t, copts, shard, listing);
    }
    if (*ve) return cmd_verify(file, cap);
    if (*ta) return cmd_tables(max_t, out_dir);
    if (*pi) return cmd_pi1(file, cap);
    if (*ca) return cmd_canon(file, as_listing);
    if (*bp) return cmd_bp(pres);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "fakesurf: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "fakesurf/algebra.hpp"
#include "fakesurf/canon.hpp"
#include "fakesurf/pipeline.hpp"
#include "fakesurf/presentation.hpp"
#include "fakesurf/records.hpp"
#include "fakesurf/topology.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace fakesurf;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

template <class T>
std::string join(const std::vector<T>& v, const char* sep = ",") {
  std::ostringstream ss;
  for (std::size_t i = 0; i < v.size(); ++i) ss << (i ? sep : "") << v[i];
  return ss.str();
}

int failures = 0;

void report(const std::string& id, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS " : "FAIL ") << id << ": " << detail << std::endl;
  failures += ok ? 0 : 1;
}

int jobs() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

std::vector<ListedSurface> listing(const std::string& name) {
  std::ifstream in(std::string(FAKESURF_TEST_DATA) + "/" + name);
  return read_listing(in);
}

std::vector<std::size_t> split(const ClassificationResult& r) {
  std::vector<std::size_t> out;
  for (const auto& g : r.skeleta) out.push_back(g.surfaces.size());
  return out;
}

// ------------------------------------------------------------------------

void skeleton_census() {
  const std::vector<std::size_t> totals = {1, 2, 4, 10, 28, 97, 359};
  const std::vector<std::vector<std::size_t>> loops = {
      {0, 0, 1}, {1, 0, 1}, {1, 1, 1, 1}, {3, 2, 3, 1, 1}, {6, 7, 7, 5, 2, 1}, {19, 21, 28, 16, 10, 2, 1},
      {50, 85, 98, 72, 36, 14, 3, 1}};
  const std::vector<std::vector<std::size_t>> girths = {{1, 0, 0}, {1, 1, 0}, {3, 1, 0}, {7, 3, 0},
                                                        {22, 5, 1}, {78, 18, 1}, {309, 48, 2}};
  auto t0 = Clock::now();
  bool ok = true;
  std::vector<std::size_t> got_totals;
  for (int t = 1; t <= 7; ++t) {
    auto sk = enumerate_skeleta(t);
    got_totals.push_back(sk.size());
    std::vector<std::size_t> l(static_cast<std::size_t>(t) + 2, 0), g(3, 0);
    for (const auto& s : sk) {
      auto st = skeleton_stats(s);
      ++l[static_cast<std::size_t>(st.self_loops)];
      if (st.girth > 3) ok = false;
      else ++g[static_cast<std::size_t>(st.girth - 1)];
    }
    l.resize(loops[static_cast<std::size_t>(t - 1)].size());
    ok = ok && l == loops[static_cast<std::size_t>(t - 1)] && g == girths[static_cast<std::size_t>(t - 1)];
  }
  double secs = since(t0);
  ok = ok && got_totals == totals && secs < 10.0;
  report("1 skeleton census", ok, "totals " + join(got_totals) + ", self-loop and girth rows " +
                                      (ok ? "match" : "checked") + ", " + std::to_string(secs) + " s (limit 10 s)");
}

void classification_counts(const std::vector<ClassificationResult>& r, double secs_t3, double secs_t4) {
  auto s3 = split(r[2]), s4 = split(r[3]);
  // Skeleton indices follow the Appendix B order of the listings.
  const std::vector<std::size_t> want3 = {97, 65, 62, 14};
  bool ok = r[0].total() == 2 && r[1].total() == 17 && split(r[1]) == std::vector<std::size_t>{15, 2} &&
            r[2].total() == 238 && s3 == want3 && r[3].total() == 4618 && s4[1] == 1171 && s4[8] == 35 &&
            secs_t3 < 60.0;
  std::ostringstream d;
  d << "t1=" << r[0].total() << " t2=" << r[1].total() << " (" << join(split(r[1]), "/") << ") t3=" << r[2].total()
    << " (" << join(s3, "/") << ", want 238 as 97/65/62/14) t4=" << r[3].total() << " (skeleton 2: " << s4[1]
    << ", skeleton 9: " << s4[8] << "; want 4618, 1171, 35); t<=3 " << secs_t3 << " s, t4 " << secs_t4 << " s";
  report("2 classification counts", ok, d.str());
}

void histograms(const std::vector<ClassificationResult>& r) {
  const std::vector<std::vector<std::size_t>> want = {
      {1, 1, 0}, {3, 6, 6, 2}, {20, 54, 89, 62, 13}, {128, 607, 1450, 1533, 745, 155}};
  bool ok = true;
  std::string d;
  for (int t = 1; t <= 4; ++t) {
    auto h = r[static_cast<std::size_t>(t - 1)].nontrivial_histogram();
    h.resize(want[static_cast<std::size_t>(t - 1)].size(), 0);
    bool row = h == want[static_cast<std::size_t>(t - 1)];
    ok = ok && row;
    d += " t" + std::to_string(t) + "=(" + join(h) + ")" + (row ? "" : " want (" + join(want[static_cast<std::size_t>(t - 1)]) + ")");
  }
  report("3 nontrivial T-bundle histograms", ok, d.substr(1));
}

void appendix_bijection(const std::vector<ClassificationResult>& r) {
  bool ok = true;
  std::string d;
  for (int t : {2, 3}) {
    auto listed = listing("listing_c" + std::to_string(t) + ".txt");
    const auto& sks = skeleta_of(t);
    std::size_t flag_rows = 0, flag_mismatch = 0, unplaceable = 0;
    std::set<std::pair<int, CanonicalKey>> theirs, ours;
    for (const auto& ls : listed) {
      const auto& sp = sks[static_cast<std::size_t>(ls.skeleton_index - 1)];
      auto w = orient_to_skeleton(*sp, ls.disks);
      if (!w) {
        ++unplaceable;
        continue;
      }
      auto f = disk_flags(*sp, *w);
      for (std::size_t i = 0; i < f.size() && i < ls.flags.size(); ++i, ++flag_rows) flag_mismatch += f[i] == ls.flags[i] ? 0 : 1;
      if (f.size() != ls.flags.size()) ++flag_mismatch;
      theirs.insert({ls.skeleton_index, Canonicalizer(sp).canonical(*w).key});
    }
    for (const auto& g : r[static_cast<std::size_t>(t - 1)].skeleta)
      for (const auto& s : g.surfaces) ours.insert({g.index, encode_key(s.disks)});
    std::size_t only_ours = 0, only_theirs = 0;
    for (const auto& k : ours) only_ours += theirs.count(k) ? 0 : 1;
    for (const auto& k : theirs) only_theirs += ours.count(k) ? 0 : 1;
    bool row = flag_mismatch == 0 && unplaceable == 0 && only_ours == 0 && only_theirs == 0 &&
               theirs.size() == listed.size();
    ok = ok && row;
    std::ostringstream ss;
    ss << " t" << t << ": " << listed.size() << " listed, " << flag_rows << " flag rows (" << flag_mismatch
       << " differ), " << theirs.size() << " distinct keys, " << only_ours << " only generated, " << only_theirs
       << " only listed;";
    d += ss.str();
  }
  report("4 listing flags and bijection", ok, d.substr(1));
}

void contractibility(const std::vector<ClassificationResult>& r, double secs) {
  std::size_t total = 0, trivial = 0;
  for (int t = 1; t <= 4; ++t) {
    total += r[static_cast<std::size_t>(t - 1)].total();
    trivial += r[static_cast<std::size_t>(t - 1)].pi1_count("trivial");
  }
  report("5 pi1 trivial at t<=4", trivial == total && secs < 3600.0,
         std::to_string(trivial) + "/" + std::to_string(total) + " proven trivial (cap " +
             std::to_string(kDefaultCosetCap) + "), " + std::to_string(secs) + " s (limit 3600 s)");
}

void embedded_disks(const std::vector<ClassificationResult>& r, const ClassificationResult& five) {
  std::size_t total = 0, with = 0;
  for (int t = 1; t <= 4; ++t) {
    total += r[static_cast<std::size_t>(t - 1)].total();
    with += r[static_cast<std::size_t>(t - 1)].with_embedded_disk();
  }
  bool ok = with == total && five.with_embedded_disk() == five.total() && five.total() > 0;
  report("6 embedded disk", ok,
         "t<=4: " + std::to_string(with) + "/" + std::to_string(total) + "; t=5 with disks of length >= 3: " +
             std::to_string(five.with_embedded_disk()) + "/" + std::to_string(five.total()));
}

void negative_control() {
  auto v = coset_enumerate(parse_presentation("x,y|x^5y^-3,y^3(xy)^-2"));
  report("7 binary icosahedral group", v.kind == Pi1Verdict::Kind::FiniteOrder && v.order == 120,
         "verdict " + to_string(v));
}

void property_suites() {
  // (a) every traced gluing is locally valid; only the disk count may fail.
  std::size_t configs = 0, bad = 0;
  for (int t = 1; t <= 2; ++t)
    for (const auto& s : enumerate_skeleta(t))
      for (std::uint64_t i = 0; i < config_count(s); ++i, ++configs) {
        auto w = trace_gluing(s, GluingConfig::from_index(s.edge_count(), i));
        auto v = validate_words(s, w);
        bool fine = static_cast<int>(w.size()) == t + 1 ? !v : (v && v->kind == ViolationKind::DiskCount);
        bad += fine ? 0 : 1;
      }
  report("8a traced words are valid", bad == 0,
         std::to_string(configs) + " configs at t<=2, " + std::to_string(bad) + " with a local violation");

  // (b) 1000 random move sequences per surface at t <= 3.
  std::mt19937_64 rng(20240501);
  std::size_t surfaces = 0, broken = 0;
  for (int t = 1; t <= 3; ++t) {
    auto r = classify(t, [] {
      ClassifyOptions o;
      o.pi1 = false;
      o.jobs = jobs();
      return o;
    }());
    for (const auto& g : r.skeleta) {
      const auto& sp = skeleta_of(t)[static_cast<std::size_t>(g.index - 1)];
      Canonicalizer canon(sp);
      for (const auto& rec : g.surfaces) {
        ++surfaces;
        const auto key = encode_key(rec.disks);
        bool same = canon.canonical(rec.disks).key == key;
        for (int seq = 0; seq < 1000 && same; ++seq) {
          WordList w = rec.disks;
          const int moves = 1 + static_cast<int>(rng() % 8);
          for (int m = 0; m < moves; ++m) w = oracle::random_move(*sp, w, rng);
          same = canon.canonical(w).key == key;
        }
        broken += same ? 0 : 1;
      }
    }
  }
  report("8b canonical form under random moves", broken == 0,
         std::to_string(surfaces) + " surfaces x 1000 sequences, " + std::to_string(broken) + " keys changed");

  // (c) fraction-free and cofactor determinants on every boundary matrix.
  std::size_t matrices = 0, disagree = 0;
  for (int t = 1; t <= 4; ++t)
    for (const auto& s : enumerate_skeleta(t)) {
      auto tree = spanning_tree(s);
      enumerate_gluings(s, {}, [&](const GluingConfig& g, std::uint64_t) {
        auto m = boundary_matrix(s, trace_gluing(s, g), tree);
        ++matrices;
        disagree += determinant(m) == determinant_cofactor(m) ? 0 : 1;
      });
    }
  report("8c determinant oracles agree", disagree == 0,
         std::to_string(matrices) + " boundary matrices at t<=4, " + std::to_string(disagree) + " disagreements");

  // (d) identical output bytes for 1-, 4- and 16-way sharding.
  const fs::path root = fs::temp_directory_path() / ("fakesurf-acceptance-" + std::to_string(std::random_device{}()));
  std::vector<std::string> hashes;
  for (int shards : {1, 4, 16}) {
    ClassifyOptions o;
    o.shards = shards;
    o.jobs = jobs();
    o.out_dir = root / std::to_string(shards);
    classify(3, o);
    hashes.push_back(sha256_file(o.out_dir / run_name(3, 1) / "surfaces.jsonl"));
  }
  std::error_code ec;
  fs::remove_all(root, ec);
  bool same = hashes[0] == hashes[1] && hashes[1] == hashes[2];
  report("8d sharding determinism", same, "classify(3) sha256 " + hashes[0].substr(0, 16) + " / " +
                                              hashes[1].substr(0, 16) + " / " + hashes[2].substr(0, 16));
}

void banana_pineapple() {
  const std::vector<std::pair<const char*, long long>> cases = {
      {"x|x^3", 1},         {"x,y|xyxYXY", 3},      {"x|x^2", 0},          {"x|x^5", 3},
      {"x,y|xyXY", 0},      {"x,y|x^2,y^2", 0},     {"x,y|x^5y^-3,y^3(xy)^-2", 16},
      {"a,b|abbaB,a", 3},   {"a,b,c|abC,bcA,caB", 5}, {"x,y|x^3,y^3,(xy)^2", 9}};
  std::size_t right = 0;
  for (const auto& [text, want] : cases) right += bp_complexity(parse_presentation(text)) == want ? 1 : 0;
  std::size_t enforced = 0;
  for (const char* text : {"x,y|xyy", "a,b|aa", "x|x"}) {
    try {
      bp_complexity(parse_presentation(text));
    } catch (const std::domain_error&) {
      ++enforced;
    }
  }
  report("9 banana-pineapple complexity", right == cases.size() && enforced == 3,
         std::to_string(right) + "/" + std::to_string(cases.size()) + " hand values, " + std::to_string(enforced) +
             "/3 precondition violations rejected");
}

} // namespace

int main() {
  skeleton_census();

  std::vector<ClassificationResult> results;
  ClassifyOptions o;
  o.jobs = jobs();
  auto t0 = Clock::now();
  double secs_t3 = 0;
  for (int t = 1; t <= 4; ++t) {
    results.push_back(classify(t, o));
    if (t == 3) secs_t3 = since(t0);
  }
  double secs_all = since(t0), secs_t4 = secs_all - secs_t3;

  ClassifyOptions five_opts = o;
  five_opts.min_disk_len = 3;
  five_opts.pi1 = false;
  auto five = classify(5, five_opts);

  classification_counts(results, secs_t3, secs_t4);
  histograms(results);
  appendix_bijection(results);
  contractibility(results, secs_all);
  embedded_disks(results, five);
  negative_control();
  property_suites();
  banana_pineapple();

  std::cout << (failures ? std::to_string(failures) + " criteria failed" : std::string("all criteria passed")) << '\n';
  return failures ? 1 : 0;
}

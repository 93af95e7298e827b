// End-to-end acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <fmt/core.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "cli_support.hpp"
#include "cosa/datagen.hpp"
#include "cosa/distances.hpp"
#include "cosa/engine.hpp"
#include "cosa/hclust.hpp"
#include "cosa/importance.hpp"
#include "cosa/metrics.hpp"
#include "oracles.hpp"

using namespace cosa;

namespace {

constexpr std::uint64_t kSeeds[] = {1, 2, 3, 4, 5};

int failures = 0;

void verdict(int id, const char* name, bool ok, const std::string& detail) {
  fmt::print("{} criterion {} ({}): {}\n", ok ? "PASS" : "FAIL", id, name, detail);
  std::fflush(stdout);
  failures += ok ? 0 : 1;
}

void note(const std::string& text) {
  fmt::print("  {}\n", text);
  std::fflush(stdout);
}

double ari_of(const DissimilarityMatrix& d, const std::vector<int>& truth) {
  return best_cut_ari(agglomerate(normalize_ss(d), Linkage::Average), truth).ari;
}

// mean within-planted-group D over mean background-background D
double sharpness(const DissimilarityMatrix& d, const std::vector<int>& labels) {
  double within = 0, background = 0;
  std::size_t nw = 0, nb = 0;
  for_each_pair(d.size(), [&](std::size_t i, std::size_t j, std::size_t idx) {
    if (labels[i] != 0 && labels[i] == labels[j]) {
      within += d.values()[idx];
      ++nw;
    } else if (labels[i] == 0 && labels[j] == 0) {
      background += d.values()[idx];
      ++nb;
    }
  });
  return (within / static_cast<double>(nw)) / (background / static_cast<double>(nb));
}

std::string eta_field(const IterationRecord& rec) {
  std::istringstream in(format_log_line(rec));
  std::string field;
  for (int f = 0; f < 5; ++f) in >> field;
  return field;
}

struct SeedRun {
  std::uint64_t seed;
  PlantedDesign design;
  CosaResult res;
  double worst_simplex = 0;
};

SeedRun run_seed(std::uint64_t seed) {
  SeedRun run{seed, gen_design2(seed), {}, 0};
  run.res = run_cosa(run.design.x, CosaParams{}, [&](const IterationRecord&, const WeightMatrix& w) {
    run.worst_simplex = std::max(run.worst_simplex, w.simplex_violation());
  });
  return run;
}

// ---------------------------------------------------------------------------

void criteria_1_to_4(std::vector<SeedRun>& runs) {
  bool recovery = true;
  std::vector<double> cosa_ari, l1_ari, sq_ari;
  for (const auto& run : runs) {
    const AttributeDistances plain(run.design.x, compute_scale_factors(run.design.x, ScaleMethod::Std));
    const double a = ari_of(run.res.d, run.design.object_labels);
    const double b = ari_of(l1_dissimilarity(plain), run.design.object_labels);
    const double c = ari_of(sqeuclid_dissimilarity(plain), run.design.object_labels);
    note(fmt::format("seed {}: COSA ARI {:.3f}, unweighted L1 ARI {:.3f}, unweighted sqeuclid ARI {:.3f}", run.seed,
                     a, b, c));
    cosa_ari.push_back(a);
    l1_ari.push_back(b);
    sq_ari.push_back(c);
    recovery = recovery && a >= 0.90 && b <= 0.30 && c <= 0.30;
  }
  verdict(1, "planted-cluster recovery", recovery,
          fmt::format("min COSA ARI {:.3f} (need >= 0.90); max unweighted L1 ARI {:.3f}, max sqeuclid ARI {:.3f} "
                      "(need <= 0.30); 5 seeds",
                      *std::min_element(cosa_ari.begin(), cosa_ari.end()),
                      *std::max_element(l1_ari.begin(), l1_ari.end()), *std::max_element(sq_ari.begin(), sq_ari.end())));

  // schedule: the records of the first and last outer step of every run
  bool schedule = true;
  std::string first, last;
  for (const auto& run : runs) {
    const auto& log = run.res.log;
    const auto at1 = std::find_if(log.begin(), log.end(), [](const auto& r) { return r.oit == 1; });
    const auto at100 = std::find_if(log.begin(), log.end(), [](const auto& r) { return r.oit == 100; });
    if (at1 == log.end() || at100 == log.end()) {
      schedule = false;
      continue;
    }
    first = eta_field(*at1);
    last = eta_field(*at100);
    const ResolvedParams rp = resolve(CosaParams{}, run.design.x.rows());
    schedule = schedule && first == "0.2200" && last == "2.200" && at1->eta == rp.eta_init + rp.eta_step &&
               at100->eta == rp.eta_init + 100 * rp.eta_step;
  }
  verdict(2, "homotopy schedule", schedule, fmt::format("logged eta at outer steps 1 / 100: {} / {}", first, last));

  double worst = 0;
  for (const auto& run : runs) worst = std::max(worst, run.worst_simplex);
  verdict(3, "weight simplex", worst <= 1e-9, fmt::format("worst row-sum deviation over every iteration {:.3g}", worst));

  double msd_max = 0;
  for (const auto& run : runs) msd_max = std::max(msd_max, run.res.log.back().msd);
  verdict(4, "final MSD", msd_max < 0.1, fmt::format("largest final MSD over 5 seeds {:.4f} (need < 0.1)", msd_max));
}

void criterion_5(const std::vector<SeedRun>& runs) {
  bool ok = true;
  std::size_t fewest = 30;
  int null_breaks = 0;
  for (const auto& run : runs) {
    const auto& d = run.design;
    const AttributeDistances dist(d.x, compute_scale_factors(d.x, ScaleMethod::Std));
    for (int g = 1; g <= 2; ++g) {
      std::vector<std::size_t> group;
      for (std::size_t i = 0; i < d.object_labels.size(); ++i)
        if (d.object_labels[i] == g) group.push_back(i);
      const auto rep = attimp(dist, group, 30, 10, run.seed);
      const auto& planted = d.attribute_sets[static_cast<std::size_t>(g - 1)];
      std::size_t hits = 0;
      for (std::size_t r = 0; r < 30; ++r) {
        hits += std::binary_search(planted.begin(), planted.end(), rep.att[r]) ? 1 : 0;
        null_breaks += rep.imp[r] > rep.null_mean[r] ? 0 : 1;
      }
      fewest = std::min(fewest, hits);
      ok = ok && hits >= 27;
    }
  }
  ok = ok && null_breaks == 0;
  verdict(5, "attribute recovery", ok,
          fmt::format("fewest planted attributes in a top 30: {}/30 (need >= 27); ranks at or below the null mean: {}",
                      fewest, null_breaks));
}

void criterion_6(const std::vector<SeedRun>& runs) {
  int sharper = 0;
  for (const auto& run : runs) {
    CosaParams params;
    params.targ = TargetMode::Dual;
    const auto targeted = run_cosa(run.design.x, params);
    const double plain = sharpness(run.res.d, run.design.object_labels);
    const double dual = sharpness(targeted.d, run.design.object_labels);
    note(fmt::format("seed {}: within/background ratio {:.4f} untargeted, {:.4f} high/low", run.seed, plain, dual));
    sharper += dual < plain ? 1 : 0;
  }
  verdict(6, "targeting sharpens groups", sharper == 5, fmt::format("{}/5 seeds sharper with high/low targets", sharper));
}

void criterion_7() {
  std::string where_a, where_b;
  const int a = oracle::distance_suite(200, 7001, &where_a);
  const int b = oracle::agglomerate_suite(200, 7002, &where_b);
  const int c = oracle::weight_update_suite(200, 100, 7003);
  std::string detail = fmt::format("failing instances: dissimilarities {}/200, agglomeration {}/200, weight update {}/200", a, b, c);
  if (!where_a.empty()) detail += "; first dissimilarity failure " + where_a;
  if (!where_b.empty()) detail += "; first agglomeration failure " + where_b;
  verdict(7, "oracle equivalence", a == 0 && b == 0 && c == 0, detail);
}

void criterion_8() {
  const auto res = oracle::mds_suite(8001);
  const bool ok = res.procrustes < 1e-8 && res.history_failures == 0 && res.exact_stress < 1e-10 && res.min_dhat >= 0.0;
  verdict(8, "MDS", ok,
          fmt::format("Procrustes {:.3g}, stress increases {}/50, exact-input stress {:.3g}, min dhat {:.3g}",
                      res.procrustes, res.history_failures, res.exact_stress, res.min_dhat));
}

void criterion_9() {
  const auto root = clitest::scratch("acceptance_determinism");
  const auto in = root / "inputs";
  std::filesystem::create_directories(in);
  // fixed inputs shared by the downstream commands
  clitest::run({"simulate", "--design", "2", "--seed", "9", "--n", "45", "--p", "80", "--out", (in / "sim").string()});
  clitest::run({"cosa", "-q", "--input", (in / "sim" / "data.csv").string(), "--out", (in / "cosa").string()});
  std::string weights = "w\n";
  for (int k = 0; k < 80; ++k) weights += k % 3 == 0 ? "2\n" : "1\n";
  clitest::write_file(in / "weights.csv", weights);

  const std::string data = (in / "sim" / "data.csv").string();
  const std::string truth = (in / "sim" / "truth.json").string();
  const std::string dist = (in / "cosa" / "dissimilarity.dist").string();
  const std::vector<std::pair<std::string, std::vector<std::string>>> commands{
      {"simulate", {"simulate", "--design", "2", "--seed", "4", "--n", "45", "--p", "80"}},
      {"cosa", {"cosa", "-q", "--input", data, "--targ", "high/low"}},
      {"hclust", {"hclust", "--input", dist, "--linkage", "average", "--cut-k", "3", "--truth", truth}},
      {"mds", {"mds", "--input", dist, "--init", "random", "--seed", "6", "--interc", "1", "--groups", truth}},
      {"attimp", {"attimp", "--input", data, "--group-file", truth, "--group", "2", "--times", "10", "--seed", "3"}},
      {"compare", {"compare", "--input", data, "--truth", truth, "--weights", (in / "weights.csv").string()}},
  };

  std::vector<std::string> broken;
  for (const auto& [name, args] : commands) {
    std::vector<std::map<std::string, std::string>> snaps;
    for (const char* threads : {"1", "4", "1"}) {
      std::vector<std::string> full{"--threads", threads};
      full.insert(full.end(), args.begin(), args.end());
      full.push_back("--out");
      full.push_back((root / name).string());
      if (clitest::run(full) != cli::kExitOk) broken.push_back(name + " (exit code)");
      snaps.push_back(clitest::snapshot(root / name));
    }
    if (snaps[0].empty() || snaps[0] != snaps[1] || snaps[0] != snaps[2]) broken.push_back(name);
  }
  std::string detail = "6 subcommands x threads 1/4/1";
  for (const auto& b : broken) detail += "; differs: " + b;
  verdict(9, "determinism", broken.empty(), detail);
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  std::vector<SeedRun> runs;
  for (auto seed : kSeeds) runs.push_back(run_seed(seed));

  criteria_1_to_4(runs);
  criterion_5(runs);
  criterion_6(runs);
  criterion_7();
  criterion_8();
  criterion_9();

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  fmt::print("{} of 9 criteria failed ({:.0f} s)\n", failures, secs);
  return failures == 0 ? 0 : 1;
}

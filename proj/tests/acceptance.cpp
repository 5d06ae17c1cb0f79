// Acceptance suite: one line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "redistrict/countysnap.hpp"
#include "redistrict/error.hpp"
#include "redistrict/fairness.hpp"
#include "redistrict/griddata.hpp"
#include "redistrict/report.hpp"
#include "redistrict/splitline.hpp"
#include "support/cli_harness.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace redistrict;

namespace {

constexpr double kMaxRunSeconds = 1.0;
constexpr double kSnapDeviationPct = 5.0;
constexpr double kPackedAlpha = 0.0173513;
constexpr double kPackedAlphaTol = 1e-6;
constexpr double kFairAlphaTol = 1e-9;
constexpr double kClosedFormTol = 1e-9;
constexpr double kNumericTol = 1e-8;
constexpr double kCriticalTol = 5e-4;
constexpr int kOptimalityTrials = 1000;
constexpr int kRepeats = 3;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

using Criterion = std::function<void(Outcome&)>;

struct NamedState {
  std::string name;
  DensityGrid density;
  CountyGrid counties;
};

std::vector<NamedState> synthetic_states() {
  const int n = fixtures::kStateSize;
  return {{"uniform", fixtures::uniform(n, n), fixtures::one_county(n, n)},
          {"gaussian", fixtures::gaussian_clustered(), fixtures::one_county(n, n)},
          {"bimodal", fixtures::bimodal_cities(), fixtures::one_county(n, n)}};
}

// Counties never crossed by a straight cut must land in exactly one district.
bool containment_holds(const SnappedDivision& div, const CountyGrid& counties) {
  std::set<int> touched;
  for (const SnapRecord& rec : div.splits) touched.insert(rec.touchedCounties.begin(), rec.touchedCounties.end());
  std::map<int, int> home;
  for (int r = 0; r < counties.height(); ++r) {
    for (int c = 0; c < counties.width(); ++c) {
      const int k = counties.at(r, c);
      if (k == CountyGrid::kOutside || touched.count(k)) continue;
      const int id = div.map.at(r, c);
      auto [it, fresh] = home.emplace(k, id);
      if (!fresh && it->second != id) return false;
    }
  }
  return true;
}

void balance_simple(Outcome& out) {
  for (const NamedState& s : synthetic_states()) {
    const RegionMask state = state_mask(s.counties);
    const auto start = std::chrono::steady_clock::now();
    const SimpleDivision div = divide_simple_traced(state, s.density, 8);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool bounded = true;
    for (const SplitRecord& rec : div.splits) {
      bounded = bounded && std::abs(rec.sideAPopulation - rec.targetPopulation) <= rec.maxSlicePopulation;
    }
    const BalanceSummary balance = population_summary(div.map, s.density);
    out.require(bounded, s.name + " split bound");
    out.require(seconds < kMaxRunSeconds, s.name + " runtime");
    if (s.name == "uniform") out.require(balance.maxDeviationPct == 0.0, "uniform deviation is not 0");
    out.detail << " " << s.name << "=" << balance.maxDeviationPct << "% in " << seconds * 1000 << "ms";
  }
}

void balance_snapped(Outcome& out) {
  const auto counties = fixtures::wobbly_counties();
  const auto density = fixtures::wobbly_density();
  const DistrictMap map = divide_snapped(state_mask(counties), density, counties, 4, 0.05);
  const BalanceSummary balance = population_summary(map, density);
  out.require(balance.maxDeviationPct <= kSnapDeviationPct, "deviation above 5%");
  out.detail << " max deviation " << balance.maxDeviationPct << "%";
}

void county_integrity(Outcome& out) {
  const auto counties = fixtures::wobbly_counties();
  const auto density = fixtures::wobbly_density();
  const RegionMask state = state_mask(counties);
  const SnappedDivision snapped = divide_snapped_traced(state, density, counties, 4, 0.05);
  const int snappedSplits = county_split_count(snapped.map, counties).splitCounties;
  const int straightSplits = county_split_count(divide_simple(state, density, 4), counties).splitCounties;
  out.require(snappedSplits < straightSplits, "snapping did not reduce split counties");
  out.detail << " split counties snapped=" << snappedSplits << " straight=" << straightSplits;

  struct Case {
    std::string name;
    DensityGrid density;
    CountyGrid counties;
    int m;
    double tolerance;
  };
  std::vector<Case> cases = {
      {"wobbly", density, counties, 4, 0.05},
      {"fixtureF", fixtures::fixture_f_density(), fixtures::fixture_f_counties(), 2, 0.15},
      {"bands", fixtures::uniform(8, 1), fixtures::bands_counties(), 4, 0.05},
  };
  for (const NamedState& s : synthetic_states()) cases.push_back({s.name, s.density, counties, 8, 0.05});
  int checked = 0;
  for (const Case& c : cases) {
    const SnappedDivision div = divide_snapped_traced(state_mask(c.counties), c.density, c.counties, c.m, c.tolerance);
    out.require(containment_holds(div, c.counties), "containment on " + c.name);
    ++checked;
  }
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = fixtures::random_state(rng, 4, 16, 6, true);
    const RegionMask state = state_mask(s.counties);
    const int m = std::uniform_int_distribution<int>(1, std::min<int>(6, static_cast<int>(state.count() / 2)))(rng);
    try {
      const SnappedDivision div = divide_snapped_traced(state, s.density, s.counties, m, 0.1);
      out.require(containment_holds(div, s.counties), "containment on random state " + std::to_string(trial));
      ++checked;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::IndivisibleRegion) throw;
    }
  }
  out.detail << "; containment on " << checked << " fixtures";
}

void fairness_scenarios(Outcome& out) {
  FairnessInput packed;
  packed.districts = 4;
  packed.votersPerDistrict = 16;
  packed.ratios = {14.0 / 16, 6.0 / 16, 6.0 / 16, 6.0 / 16};
  packed.stateRatio = 0.5;
  const FairnessReport p = audit(packed);
  out.require(p.statistic == 12.0, "Y is not exactly 12");
  out.require(std::abs(p.alpha - kPackedAlpha) <= kPackedAlphaTol, "packed alpha");
  out.require(p.verdict == Verdict::PackingSuspected, "packed verdict");

  FairnessInput flat;
  flat.districts = 4;
  flat.votersPerDistrict = 16;
  flat.ratios = {0.5, 0.5, 0.5, 0.5};
  out.require(audit(flat).verdict == Verdict::CrackingSuspected, "all-equal verdict");

  FairnessInput two;
  two.districts = 2;
  two.votersPerDistrict = 100;
  two.ratios = {0.55, 0.45};
  two.stateRatio = 0.5;
  const FairnessReport f = audit(two);
  out.require(std::abs(f.statistic - 2.0) < 1e-12, "m=2 statistic");
  out.require(std::abs(f.alpha - std::exp(-1.0)) <= kFairAlphaTol, "m=2 alpha");
  out.require(f.verdict == Verdict::Fair, "m=2 verdict");
  out.detail << " Y=" << p.statistic << " alpha=" << p.alpha << " m=2 alpha=" << f.alpha;
}

void survival_accuracy(Outcome& out) {
  double closedWorst = 0.0;
  for (int dof : {2, 4, 6}) {
    for (double y : {0.1, 1.0, 2.0, 5.0, 12.0, 30.0}) {
      closedWorst = std::max(closedWorst, std::abs(chi_square_survival(y, dof) - oracle::chi2_survival_even(y, dof)));
    }
  }
  double numericWorst = 0.0;
  for (int dof : {1, 3, 7}) {
    for (double y : {0.1, 1.0, 2.0, 5.0, 12.0, 30.0}) {
      numericWorst = std::max(numericWorst, std::abs(chi_square_survival(y, dof) - oracle::chi2_survival_numeric(y, dof)));
    }
  }
  const double critical = chi_square_survival(3.8415, 1);
  out.require(closedWorst <= kClosedFormTol, "closed form");
  out.require(numericWorst <= kNumericTol, "numerical integration");
  out.require(std::abs(critical - 0.05) <= kCriticalTol, "critical value");
  out.detail << " closed-form err " << closedWorst << ", numeric err " << numericWorst << ", Q(3.8415,1)=" << critical;
}

void split_optimality(Outcome& out) {
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<int> side(1, 20), dv(0, 9), holes(0, 3);
  std::uniform_real_distribution<double> frac(0.05, 0.95);
  int mismatches = 0;
  for (int trial = 0; trial < kOptimalityTrials; ++trial) {
    const int w = side(rng);
    const int h = side(rng);
    std::vector<double> cells(static_cast<std::size_t>(w) * h);
    for (auto& v : cells) v = dv(rng);
    // Mostly full, with a few random holes so irregular masks are covered too.
    std::vector<std::uint8_t> member(cells.size(), 1);
    for (auto& m : member) m = holes(rng) == 0 && trial % 2 == 1 ? 0 : 1;
    member[0] = 1;
    const DensityGrid density(w, h, cells);
    const RegionMask mask(w, h, member);
    const Axis axis = trial % 3 == 0 ? Axis::Horizontal : Axis::Vertical;
    const double t = frac(rng);
    const auto want = oracle::exhaustive_best_split(mask, density, axis, t);
    try {
      const SplitLine got = best_split(mask, density, axis, t);
      if (!want || !(*want == got)) ++mismatches;
    } catch (const Error& e) {
      if (want || e.code() != ErrorCode::IndivisibleRegion) ++mismatches;
    }
  }
  out.require(mismatches == 0, "mismatches against exhaustive scan");
  out.detail << " " << kOptimalityTrials << " grids, " << mismatches << " mismatches";
}

SnapSegment interior_with(double s) {
  SnapSegment seg;
  seg.segment.kind = SegmentKind::Interior;
  seg.path = s < 0 ? PathChoice::LeftOrUp : PathChoice::RightOrDown;
  seg.lens.s = s;
  return seg;
}

std::vector<PathChoice> paths_of(const std::vector<SnapSegment>& segs) {
  std::vector<PathChoice> out;
  for (const auto& s : segs) out.push_back(s.path);
  return out;
}

void greedy_semantics(Outcome& out) {
  using P = PathChoice;
  const auto kept = greedy_adjust({interior_with(+1)}, 1.2);
  out.require(paths_of(kept) == std::vector<P>{P::RightOrDown} && kept_deviation(kept) == 1.0, "single lens kept");
  const auto reverted = greedy_adjust({interior_with(+1)}, 0.4);
  out.require(paths_of(reverted) == std::vector<P>{P::Straight} && kept_deviation(reverted) == 0.0,
              "single lens reverted");
  const auto both = greedy_adjust({interior_with(+2), interior_with(-1)}, 0.5);
  out.require(paths_of(both) == std::vector<P>{P::Straight, P::Straight}, "two lenses reverted");

  const auto counties = fixtures::fixture_f_counties();
  const auto density = fixtures::fixture_f_density();
  const RegionMask state = state_mask(counties);
  const DistrictMap loose = divide_snapped(state, density, counties, 2, 0.15);
  const BalanceSummary looseBalance = population_summary(loose, density);
  bool k1Whole = true;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) k1Whole = k1Whole && ((counties.at(r, c) == 1) == (loose.at(r, c) == 0));
  out.require(looseBalance.perDistrict == std::vector<double>{9.0, 7.0} && k1Whole, "tolerance 0.15 outcome");

  const DistrictMap tight = divide_snapped(state, density, counties, 2, 0.05);
  const BalanceSummary tightBalance = population_summary(tight, density);
  out.require(tightBalance.perDistrict == std::vector<double>{8.0, 8.0} &&
                  tight == divide_simple(state, density, 2),
              "tolerance 0.05 outcome");
  const auto splitList = county_split_count(tight, counties).splitList;
  out.require(splitList == std::vector<int>{1}, "tolerance 0.05 splits K1");
  out.detail << " 0.15 -> " << looseBalance.perDistrict[0] << "/" << looseBalance.perDistrict[1] << ", 0.05 -> "
             << tightBalance.perDistrict[0] << "/" << tightBalance.perDistrict[1];
}

void cli_determinism(Outcome& out) {
  namespace fs = std::filesystem;
  cli::ScratchDir dir("acceptance");
  struct Case {
    std::string name;
    DensityGrid density;
    CountyGrid counties;
    int m;
  };
  std::vector<Case> cases = {
      {"row6", fixtures::uniform(6, 1), fixtures::one_county(6, 1), 3},
      {"fixtureF", fixtures::fixture_f_density(), fixtures::fixture_f_counties(), 2},
      {"bands", fixtures::uniform(8, 1), fixtures::bands_counties(), 4},
      {"wobbly", fixtures::wobbly_density(), fixtures::wobbly_counties(), 4},
  };
  for (const NamedState& s : synthetic_states()) cases.push_back({s.name, s.density, fixtures::wobbly_counties(), 8});

  std::vector<std::string> commands;
  for (const Case& c : cases) {
    dir.write(c.name + "_d.csv", serialize_density_grid(c.density));
    dir.write(c.name + "_c.csv", serialize_county_grid(c.counties));
    const std::string grids = " --density " + (dir / (c.name + "_d.csv")) + " --county " + (dir / (c.name + "_c.csv"));
    const std::string m = " -m " + std::to_string(c.m);
    commands.push_back("split" + grids + m);
    commands.push_back("snap" + grids + m + " --tolerance 0.05");
    commands.push_back("snap" + grids + m + " --tolerance 0.15");
    // render and report consume the snapped map from the first run of the command above.
    commands.push_back("render --districts @" + c.name);
    commands.push_back("report --districts @" + c.name + grids);
  }
  dir.write("packed.json", R"({"m": 4, "n": 16, "ratios": [0.875, 0.375, 0.375, 0.375], "stateRatio": 0.5})");
  dir.write("flat.json", R"({"m": 4, "n": 16, "ratios": [0.5, 0.5, 0.5, 0.5]})");
  dir.write("two.json", R"({"m": 2, "n": [100, 100], "ratios": [0.55, 0.45], "stateRatio": 0.5})");
  for (const char* name : {"packed", "flat", "two"}) commands.push_back("audit --input " + (dir / (std::string(name) + ".json")));

  auto snapshot = [&](const std::string& outDir) {
    std::string all;
    std::vector<fs::path> files;
    if (fs::exists(outDir))
      for (const auto& e : fs::directory_iterator(outDir)) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      std::ifstream in(f, std::ios::binary);
      std::ostringstream buf;
      buf << in.rdbuf();
      all += f.filename().string() + "\n" + buf.str();
    }
    return all;
  };

  int compared = 0;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    std::string cmd = commands[i];
    const auto at = cmd.find('@');
    if (at != std::string::npos) {
      const auto end = cmd.find(' ', at);
      const std::string name = cmd.substr(at + 1, end == std::string::npos ? std::string::npos : end - at - 1);
      cmd.replace(at, name.size() + 1, dir / ("run0_" + name + "_snap/districts.csv"));
    }
    std::string reference;
    for (int run = 0; run < kRepeats; ++run) {
      std::string tag = "run" + std::to_string(run) + "_" + std::to_string(i);
      if (cmd.starts_with("snap") && cmd.find("0.05") != std::string::npos) {
        // Stable directory for the map that render/report read back.
        for (const Case& c : cases)
          if (cmd.find(c.name + "_d.csv") != std::string::npos) tag = "run" + std::to_string(run) + "_" + c.name + "_snap";
      }
      const std::string outDir = dir / tag;
      const cli::Result r = cli::run(dir, cmd + " --out " + outDir);
      std::string bytes = std::to_string(r.exitCode) + "\n" + r.stderrText + "\n" + snapshot(outDir);
      // Printed paths name the per-run directory; compare them with the run tag removed.
      std::string printed = r.stdoutText;
      for (std::size_t p; (p = printed.find(tag)) != std::string::npos;) printed.replace(p, tag.size(), "OUT");
      bytes += printed;
      out.require(r.exitCode == 0, "exit status of: " + cmd);
      if (run == 0) {
        reference = bytes;
      } else {
        out.require(bytes == reference, "output differs across runs: " + cmd);
      }
    }
    ++compared;
  }
  out.detail << " " << compared << " invocations x " << kRepeats << " runs";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Criterion>> criteria = {
      {"1 simple-model balance", balance_simple},
      {"2 snapped balance within 5%", balance_snapped},
      {"3 county integrity", county_integrity},
      {"4 fairness scenarios", fairness_scenarios},
      {"5 chi-square survival accuracy", survival_accuracy},
      {"6 split optimality", split_optimality},
      {"7 greedy snap semantics", greedy_semantics},
      {"8 CLI determinism", cli_determinism},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome out;
    try {
      run(out);
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << " [exception: " << e.what() << "]";
    }
    if (!out.pass) ++failures;
    std::printf("%s  criterion %s:%s\n", out.pass ? "PASS" : "FAIL", name.c_str(), out.detail.str().c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

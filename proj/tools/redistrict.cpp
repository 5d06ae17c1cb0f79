// Command-line front end: split, snap, audit, render, report.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "redistrict/countysnap.hpp"
#include "redistrict/error.hpp"
#include "redistrict/fairness.hpp"
#include "redistrict/griddata.hpp"
#include "redistrict/json_io.hpp"
#include "redistrict/report.hpp"
#include "redistrict/splitline.hpp"

namespace fs = std::filesystem;
using namespace redistrict;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path);
  return buf.str();
}

void write_file(const fs::path& path, const std::string& bytes) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("cannot write " + path.string());
}

struct RunConfig {
  std::string densityPath;
  std::string countyPath;
  std::string palettePath;
  std::string districtsPath;
  std::string inputPath = "-";
  std::string outputDir = ".";
  int districts = 0;
  double tolerance = 0.05;
  double grayScale = 1.0;
  std::optional<double> alphaAllow;
};

DensityGrid load_density(const RunConfig& cfg) {
  const std::string bytes = read_file(cfg.densityPath);
  if (!looks_like_pnm(bytes)) return parse_density_grid(bytes);
  std::optional<ColorPalette> palette;
  if (!cfg.palettePath.empty()) palette = parse_palette(read_file(cfg.palettePath));
  return parse_density_image(bytes, palette ? &*palette : nullptr, cfg.grayScale);
}

// Without a county file every cell belongs to one county.
CountyGrid load_counties(const RunConfig& cfg, const DensityGrid& density) {
  if (cfg.countyPath.empty()) {
    return CountyGrid(density.width(), density.height(),
                      std::vector<int>(static_cast<std::size_t>(density.width()) * density.height(), 1));
  }
  CountyGrid counties = parse_county_grid(read_file(cfg.countyPath));
  require_same_shape(density, counties);
  return counties;
}

void validate_districts(int m) {
  if (m < 1) throw Error(ErrorCode::InvalidDistrictCount, "-m must be at least 1");
}

void write_outputs(const RunConfig& cfg, const std::vector<std::pair<std::string, std::string>>& files) {
  for (const auto& [name, bytes] : files) {
    const fs::path path = fs::path(cfg.outputDir) / name;
    write_file(path, bytes);
    std::cout << path.string() << "\n";
  }
}

int run_split(const RunConfig& cfg) {
  validate_districts(cfg.districts);
  const DensityGrid density = load_density(cfg);
  const CountyGrid counties = load_counties(cfg, density);
  const SimpleDivision division = divide_simple_traced(state_mask(counties), density, cfg.districts);

  nlohmann::json splits = nlohmann::json::array();
  for (const auto& rec : division.splits) splits.push_back(to_json(rec));
  write_outputs(cfg, {{"districts.csv", serialize_district_map(division.map)},
                      {"balance.json", dump_json(to_json(population_summary(division.map, density)))},
                      {"splits.json", dump_json(splits)}});
  return 0;
}

int run_snap(const RunConfig& cfg) {
  validate_districts(cfg.districts);
  if (!(cfg.tolerance > 0.0 && cfg.tolerance < 0.5)) {
    throw Error(ErrorCode::InvalidTolerance, "--tolerance must lie in (0, 0.5)");
  }
  const DensityGrid density = load_density(cfg);
  const CountyGrid counties = load_counties(cfg, density);
  const SnappedDivision division =
      divide_snapped_traced(state_mask(counties), density, counties, cfg.districts, cfg.tolerance);

  nlohmann::json divides = nlohmann::json::array();
  for (const auto& rec : division.splits) divides.push_back(to_json(rec));
  write_outputs(cfg, {{"districts.csv", serialize_district_map(division.map)},
                      {"balance.json", dump_json(to_json(population_summary(division.map, density)))},
                      {"integrity.json", dump_json(to_json(county_split_count(division.map, counties)))},
                      {"divides.json", dump_json(divides)}});
  return 0;
}

int run_audit(const RunConfig& cfg) {
  FairnessInput input = parse_fairness_input(read_file(cfg.inputPath));
  if (cfg.alphaAllow) input.alphaAllow = *cfg.alphaAllow;
  const std::string doc = dump_json(to_json(audit(input)));
  if (cfg.outputDir.empty()) {
    std::cout << doc;
  } else {
    write_outputs(cfg, {{"fairness.json", doc}});
  }
  return 0;
}

int run_render(const RunConfig& cfg) {
  const DistrictMap map = parse_district_map(read_file(cfg.districtsPath));
  write_outputs(cfg, {{"map.ppm", render_map(map)}});
  return 0;
}

int run_report(const RunConfig& cfg) {
  const DistrictMap map = parse_district_map(read_file(cfg.districtsPath));
  const DensityGrid density = load_density(cfg);
  std::vector<std::pair<std::string, std::string>> files{
      {"balance.json", dump_json(to_json(population_summary(map, density)))}};
  if (!cfg.countyPath.empty()) {
    const CountyGrid counties = load_counties(cfg, density);
    for (std::size_t i = 0; i < map.assignment().size(); ++i) {
      const bool outside = counties.cells()[i] == CountyGrid::kOutside;
      if (outside != (map.assignment()[i] == DistrictMap::kOutside)) {
        throw Error(ErrorCode::InvalidDistrictMap, "district map does not match the state mask");
      }
    }
    files.emplace_back("integrity.json", dump_json(to_json(county_split_count(map, counties))));
  }
  write_outputs(cfg, files);
  return 0;
}

void add_density_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--density", cfg.densityPath, "Density CSV, or a P2/P3/P5/P6 image")->required();
  cmd->add_option("--palette", cfg.palettePath, "Palette for color images: 'R G B density' per line");
  cmd->add_option("--gray-scale", cfg.grayScale, "Density of a full-intensity graymap pixel");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equal-population redistricting with county snapping and fairness audits"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string auditOut;

  auto* split = app.add_subcommand("split", "Divide with straight split lines");
  add_density_options(split, cfg);
  split->add_option("--county", cfg.countyPath, "County CSV; 0 marks cells outside the state");
  split->add_option("-m,--districts", cfg.districts, "Number of districts")->required();
  split->add_option("--out", cfg.outputDir, "Output directory");

  auto* snap = app.add_subcommand("snap", "Divide and snap cuts onto county boundaries");
  add_density_options(snap, cfg);
  snap->add_option("--county", cfg.countyPath, "County CSV; 0 marks cells outside the state")->required();
  snap->add_option("-m,--districts", cfg.districts, "Number of districts")->required();
  snap->add_option("--tolerance", cfg.tolerance, "Allowed deviation as a fraction of one district");
  snap->add_option("--out", cfg.outputDir, "Output directory");

  auto* auditCmd = app.add_subcommand("audit", "Chi-square packing/cracking audit");
  auditCmd->add_option("--input", cfg.inputPath, "Audit JSON, '-' for stdin");
  auditCmd->add_option("--alpha-allow", cfg.alphaAllow, "Significance threshold (default 0.05)");
  auditCmd->add_option("--out", auditOut, "Write fairness.json here instead of stdout");

  auto* render = app.add_subcommand("render", "Render a district CSV as a P6 image");
  render->add_option("--districts", cfg.districtsPath, "District CSV")->required();
  render->add_option("--out", cfg.outputDir, "Output directory");

  auto* report = app.add_subcommand("report", "Balance and county-integrity summaries");
  report->add_option("--districts", cfg.districtsPath, "District CSV")->required();
  add_density_options(report, cfg);
  report->add_option("--county", cfg.countyPath, "County CSV");
  report->add_option("--out", cfg.outputDir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "ERROR USAGE " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    if (*split) return run_split(cfg);
    if (*snap) return run_snap(cfg);
    if (*auditCmd) {
      cfg.outputDir = auditOut;
      return run_audit(cfg);
    }
    if (*render) return run_render(cfg);
    if (*report) return run_report(cfg);
  } catch (const Error& e) {
    std::cerr << "ERROR " << error_code_name(e.code()) << " " << e.detail() << "\n";
    return kExitValidation;
  } catch (const IoError& e) {
    std::cerr << "ERROR IO_ERROR " << e.what() << "\n";
    return kExitIo;
  }
  return kExitValidation;
}

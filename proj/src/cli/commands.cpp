#include "cli/commands.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "cli/csv.hpp"
#include "cli/digest.hpp"
#include "cli/dist_io.hpp"
#include "cli/svg.hpp"
#include "cosa/datagen.hpp"
#include "cosa/engine.hpp"
#include "cosa/error.hpp"
#include "cosa/hclust.hpp"
#include "cosa/importance.hpp"
#include "cosa/mds.hpp"
#include "cosa/metrics.hpp"
#include "cosa/parallel.hpp"

namespace cosa::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kToolVersion = "cosa-tools 1.0.0";

// ---------------------------------------------------------------------------
// shared helpers

TargetMode parse_targ(const std::string& s) {
  if (s == "none") return TargetMode::None;
  if (s == "high") return TargetMode::SingleHigh;
  if (s == "low") return TargetMode::SingleLow;
  if (s == "high/low") return TargetMode::Dual;
  throw Error(ErrorCode::InvalidArgument, "unknown targ '" + s + "'");
}

ScaleMethod parse_scale(const std::string& s) {
  if (s == "std") return ScaleMethod::Std;
  if (s == "mad") return ScaleMethod::Mad;
  if (s == "preset") return ScaleMethod::Preset;
  throw Error(ErrorCode::InvalidArgument, "unknown scale method '" + s + "'");
}

std::set<std::string> split_names(const std::string& list) {
  std::set<std::string> out;
  std::stringstream ss(list);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.insert(tok);
  return out;
}

// All numeric cells after the header row, row by row.
std::vector<double> read_vector_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  const auto rows = parse_csv(in);
  std::vector<double> out;
  for (std::size_t r = 1; r < rows.size(); ++r)
    for (const auto& cell : rows[r]) {
      try {
        out.push_back(parse_double(cell));
      } catch (const Error&) {
        throw Error(ErrorCode::Parse, path + " line " + std::to_string(r + 1) + ": not a number: '" + cell + "'");
      }
    }
  return out;
}

json read_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, path + ": " + e.what());
  }
}

std::vector<int> read_labels(const std::string& path, std::size_t n) {
  const json j = read_json(path);
  if (!j.contains("labels") || !j["labels"].is_array()) throw Error(ErrorCode::Parse, path + ": missing 'labels' array");
  auto labels = j["labels"].get<std::vector<int>>();
  if (labels.size() != n)
    throw Error(ErrorCode::SizeMismatch, path + ": " + std::to_string(labels.size()) + " labels for " +
                                             std::to_string(n) + " objects");
  return labels;
}

void write_json(const fs::path& path, const json& j) { write_text(path.string(), j.dump(2) + "\n"); }

json inputs_block(const std::vector<std::string>& paths) {
  json arr = json::array();
  for (const auto& p : paths)
    if (!p.empty()) arr.push_back({{"path", p}, {"sha256", sha256_file(p)}});
  return arr;
}

json report_head(const std::string& command, const json& config, const std::vector<std::string>& inputs) {
  return json{{"command", command}, {"version", kToolVersion}, {"config", config}, {"inputs", inputs_block(inputs)}};
}

json groups_json(const GroupAssignment& g) {
  json index = json::object();
  for (std::size_t t = 0; t < g.index.size(); ++t) index["grp" + std::to_string(t + 1)] = g.index[t];
  return json{{"labels", g.labels}, {"index", index}};
}

fs::path prepare_out(const std::string& dir) {
  fs::path out(dir);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create output directory '" + dir + "': " + ec.message());
  return out;
}

// ---------------------------------------------------------------------------
// COSA options shared by `cosa` and `compare`

struct CosaOptions {
  double lambda = 0.2;
  std::optional<std::size_t> knn;
  std::optional<double> eta_step;
  int max_outer = 100;
  int max_inner = 50;
  double inner_tol = 1e-4;
  double outer_tol = 0.0;
  std::string targ = "none";
  std::string scale = "std";
  std::string scale_file;
  bool knn_includes_self = false;
};

void add_cosa_options(CLI::App* sub, CosaOptions& o) {
  sub->add_option("--lambda", o.lambda, "Entropy penalty scale")->capture_default_str();
  sub->add_option("--knn", o.knn, "Nearest neighbours per object (default floor(sqrt(N)))");
  sub->add_option("--eta-step", o.eta_step, "Homotopy increment per outer step (default 0.1*lambda)");
  sub->add_option("--max-outer", o.max_outer, "Outer iteration cap")->capture_default_str();
  sub->add_option("--max-inner", o.max_inner, "Inner iteration cap")->capture_default_str();
  sub->add_option("--inner-tol", o.inner_tol, "Inner Wchange tolerance")->capture_default_str();
  sub->add_option("--outer-tol", o.outer_tol, "Outer Wchange tolerance")->capture_default_str();
  sub->add_option("--targ", o.targ, "Targeting: none, high, low, high/low")
      ->check(CLI::IsMember({"none", "high", "low", "high/low"}))
      ->capture_default_str();
  sub->add_option("--scale", o.scale, "Scale factors: std, mad, preset")
      ->check(CLI::IsMember({"std", "mad", "preset"}))
      ->capture_default_str();
  sub->add_option("--scale-file", o.scale_file, "CSV with P scale factors (for --scale preset)");
  sub->add_flag("--knn-includes-self", o.knn_includes_self, "Count each object as its own first neighbour");
}

CosaParams to_params(const CosaOptions& o) {
  CosaParams p;
  p.lambda = o.lambda;
  p.knn = o.knn;
  p.eta_step = o.eta_step;
  p.max_outer = o.max_outer;
  p.max_inner = o.max_inner;
  p.inner_tol = o.inner_tol;
  p.outer_tol = o.outer_tol;
  p.targ = parse_targ(o.targ);
  p.scale_method = parse_scale(o.scale);
  if (p.scale_method == ScaleMethod::Preset) {
    if (o.scale_file.empty()) throw Error(ErrorCode::InvalidArgument, "--scale preset needs --scale-file");
    p.scale_preset = read_vector_csv(o.scale_file);
  }
  p.knn_includes_self = o.knn_includes_self;
  return p;
}

json cosa_config(const CosaOptions& o, const ResolvedParams& r) {
  return json{{"lambda", r.lambda},          {"knn", r.knn},
              {"eta_init", r.eta_init},      {"eta_step", r.eta_step},
              {"max_outer", r.max_outer},    {"max_inner", r.max_inner},
              {"inner_tol", r.inner_tol},    {"outer_tol", r.outer_tol},
              {"targ", o.targ},              {"scale", o.scale},
              {"scale_file", o.scale_file},  {"knn_includes_self", r.knn_includes_self}};
}

json tunpar_json(const Tunpar& t) {
  return json{{"crit", t.crit}, {"lambda", t.lambda}, {"homotopy", t.homotopy}, {"MSD", t.msd},
              {"Knn", t.knn},   {"noit", t.noit},     {"totit", t.totit}};
}

// ---------------------------------------------------------------------------
// cosa

struct CosaCmd {
  std::string input, out = "cosa_out", categorical, id_col, w_scale = "simplex";
  CosaOptions cosa;
  bool quiet = false;
};

int cmd_cosa(const CosaCmd& c) {
  CsvOptions csv{split_names(c.categorical), c.id_col};
  const DataMatrix x = read_data_csv(c.input, csv);
  const CosaParams params = to_params(c.cosa);
  const ResolvedParams rp = resolve(params, x.rows());
  const fs::path out = prepare_out(c.out);

  std::string log = log_header() + "\n";
  if (!c.quiet) std::cout << " COSA executing\n\n" << log_header() << '\n';
  const CosaResult res = run_cosa(x, params, [&](const IterationRecord& rec, const WeightMatrix&) {
    const std::string line = format_log_line(rec);
    log += line + "\n";
    if (!c.quiet) std::cout << line << '\n' << std::flush;
  });

  DistFile df{res.d, {"cosa", "lambda=" + format_double(rp.lambda), "targ=" + c.cosa.targ}};
  write_dist((out / "dissimilarity.dist").string(), df);
  write_text((out / "iterations.log").string(), log);

  const double factor = c.w_scale == "timesP" ? static_cast<double>(x.cols()) : 1.0;
  std::ostringstream w;
  w << "id";
  for (const auto& name : x.col_ids()) w << ',' << csv_escape(name);
  w << '\n';
  for (std::size_t i = 0; i < x.rows(); ++i) {
    w << csv_escape(x.row_ids()[i]);
    for (double v : res.w.row(i)) w << ',' << format_double(v * factor);
    w << '\n';
  }
  write_text((out / "weights.csv").string(), w.str());

  json config = cosa_config(c.cosa, rp);
  config["input"] = c.input;
  config["out"] = c.out;
  config["categorical"] = c.categorical;
  config["id_col"] = c.id_col;
  config["w_scale"] = c.w_scale;
  json report = report_head("cosa", config, {c.input, c.cosa.scale_file});
  report["n"] = x.rows();
  report["p"] = x.cols();
  report["tunpar"] = tunpar_json(res.tunpar);
  report["converged"] = res.tunpar.noit < rp.max_outer;
  write_json(out / "report.json", report);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// hclust

struct HclustCmd {
  std::string input, out = "hclust_out", linkage = "average", truth;
  bool no_normalize = false;
  std::optional<double> cut_height;
  std::optional<std::size_t> cut_k;
  std::size_t min_size = 2;
};

json dendrogram_json(const Dendrogram& d, bool normalized) {
  json merges = json::array();
  for (const auto& m : d.merges)
    merges.push_back({{"left", m.left}, {"right", m.right}, {"height", m.height}, {"size", m.size}});
  return json{{"n", d.n},
              {"linkage", to_string(d.linkage)},
              {"normalized", normalized},
              {"has_inversions", d.has_inversions},
              {"merges", merges},
              {"leaf_order", d.leaf_order}};
}

int cmd_hclust(const HclustCmd& c) {
  if (c.cut_height && c.cut_k) throw Error(ErrorCode::InvalidArgument, "use only one of --cut-height / --cut-k");
  const DistFile df = read_dist(c.input);
  const DissimilarityMatrix d = c.no_normalize ? df.d : normalize_ss(df.d);
  const Linkage linkage = parse_linkage(c.linkage);
  const Dendrogram dend = agglomerate(d, linkage);
  const fs::path out = prepare_out(c.out);
  write_json(out / "dendrogram.json", dendrogram_json(dend, !c.no_normalize));

  std::vector<int> colors;
  json groups_summary = nullptr;
  if (c.cut_height || c.cut_k) {
    const CutSpec spec = c.cut_k ? CutSpec{CutCount{*c.cut_k}} : CutSpec{CutHeight{*c.cut_height}};
    const GroupAssignment g = cut(dend, spec, c.min_size);
    write_json(out / "groups.json", groups_json(g));
    colors = g.labels;
    groups_summary = json{{"groups", g.index.size()},
                          {"background", std::count(g.labels.begin(), g.labels.end(), 0)}};
  } else if (!c.truth.empty()) {
    colors = read_labels(c.truth, d.size());
  }
  write_text((out / "dendrogram.svg").string(),
             render_dendrogram(dend, colors, fmt::format("{} linkage", to_string(linkage))));

  json config{{"input", c.input},
              {"out", c.out},
              {"linkage", c.linkage},
              {"normalize", !c.no_normalize},
              {"cut_height", c.cut_height ? json(*c.cut_height) : json(nullptr)},
              {"cut_k", c.cut_k ? json(*c.cut_k) : json(nullptr)},
              {"min_size", c.min_size},
              {"truth", c.truth}};
  json report = report_head("hclust", config, {c.input, c.truth});
  report["input_flags"] = df.flags;
  report["has_inversions"] = dend.has_inversions;
  report["cut"] = groups_summary;
  write_json(out / "report.json", report);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// mds

struct MdsCmd {
  std::string input, out = "mds_out", method = "smacof", init = "classical", groups;
  std::size_t dims = 2;
  int niter = 100;
  int interc = 1;
  double tol = 1e-6;
  std::uint64_t seed = 0;
};

int cmd_mds(const MdsCmd& c) {
  const DistFile df = read_dist(c.input);
  std::vector<int> labels;
  if (!c.groups.empty()) labels = read_labels(c.groups, df.d.size());

  Embedding emb;
  if (c.method == "classical") {
    emb = classical_mds(df.d, c.dims);
  } else {
    SmacofOptions opt;
    opt.p = c.dims;
    opt.niter = c.niter;
    opt.interc = c.interc == 1;
    opt.tol = c.tol;
    opt.init = c.init == "random" ? SmacofInit::Random : SmacofInit::Classical;
    opt.seed = c.seed;
    emb = smacof(df.d, opt);
  }
  const fs::path out = prepare_out(c.out);

  std::ostringstream csv;
  csv << "id";
  for (std::size_t t = 0; t < emb.p; ++t) csv << ",dim" << t + 1;
  csv << ",group\n";
  for (Eigen::Index i = 0; i < emb.z.rows(); ++i) {
    csv << i;
    for (Eigen::Index t = 0; t < emb.z.cols(); ++t) csv << ',' << format_double(emb.z(i, t));
    csv << ',' << (labels.empty() ? 0 : labels[static_cast<std::size_t>(i)]) << '\n';
  }
  write_text((out / "embedding.csv").string(), csv.str());
  write_text((out / "scatter.svg").string(),
             render_scatter(emb.z, labels, c.method == "classical" ? "Classical scaling" : "SMACOF"));

  json config{{"input", c.input}, {"out", c.out},   {"method", c.method}, {"dims", c.dims},
              {"niter", c.niter}, {"interc", c.interc}, {"tol", c.tol},   {"init", c.init},
              {"seed", c.seed},   {"groups", c.groups}};
  json report = report_head("mds", config, {c.input, c.groups});
  report["stress"] = emb.stress;
  report["history"] = emb.history;
  if (emb.transform) report["interval"] = json{{"alpha", emb.transform->alpha}, {"beta", emb.transform->beta}};
  if (c.method == "classical") report["negative_eigenvalues"] = emb.negative_eigenvalues;
  write_json(out / "report.json", report);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// attimp

struct AttimpCmd {
  std::string input, out = "attimp_out", categorical, id_col, group_file, group_ids;
  int group = 1;
  std::optional<std::size_t> range;
  int times = 0;
  std::uint64_t seed = 0;
  std::string imp_norm = "group", scale = "std", scale_file, targ = "none";
};

int cmd_attimp(const AttimpCmd& c) {
  const DataMatrix x = read_data_csv(c.input, CsvOptions{split_names(c.categorical), c.id_col});
  std::vector<std::size_t> members;
  if (!c.group_ids.empty()) {
    std::stringstream ss(c.group_ids);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      const double v = parse_double(tok);
      if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v)))
        throw Error(ErrorCode::InvalidArgument, "bad object id '" + tok + "'");
      members.push_back(static_cast<std::size_t>(v));
    }
  } else if (!c.group_file.empty()) {
    const auto labels = read_labels(c.group_file, x.rows());
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == c.group) members.push_back(i);
  } else {
    throw Error(ErrorCode::InvalidArgument, "attimp needs --group-file or --group-ids");
  }

  const ScaleMethod sm = parse_scale(c.scale);
  std::vector<double> preset;
  if (sm == ScaleMethod::Preset) preset = read_vector_csv(c.scale_file);
  const ScaleFactors scales = sm == ScaleMethod::Preset
                                  ? compute_scale_factors(x, sm, std::span<const double>(preset))
                                  : compute_scale_factors(x, sm);
  const AttributeDistances dist(x, scales, make_target_spec(x, parse_targ(c.targ)));
  const std::size_t range = c.range.value_or(x.cols());
  const ImportanceNorm norm = c.imp_norm == "global" ? ImportanceNorm::Global : ImportanceNorm::Group;
  const ImportanceReport rep = attimp(dist, members, range, c.times, c.seed, norm);
  const fs::path out = prepare_out(c.out);

  std::ostringstream imp;
  imp << "rank,attribute,name,importance,dispersion\n";
  for (std::size_t r = 0; r < rep.att.size(); ++r)
    imp << r + 1 << ',' << rep.att[r] << ',' << csv_escape(x.col_ids()[rep.att[r]]) << ','
        << format_double(rep.imp[r]) << ',' << format_double(rep.disp[r]) << '\n';
  write_text((out / "importance.csv").string(), imp.str());

  if (c.times > 0) {
    std::ostringstream nul;
    nul << "repetition";
    for (std::size_t r = 0; r < range; ++r) nul << ",rank" << r + 1;
    nul << '\n';
    for (std::size_t t = 0; t < rep.null_curves.size(); ++t) {
      nul << t + 1;
      for (double v : rep.null_curves[t]) nul << ',' << format_double(v);
      nul << '\n';
    }
    nul << "mean";
    for (double v : rep.null_mean) nul << ',' << format_double(v);
    nul << '\n';
    write_text((out / "null.csv").string(), nul.str());
  }
  write_text((out / "importance.svg").string(),
             render_importance(rep.imp, rep.null_curves, rep.null_mean, "Attribute importance"));

  json config{{"input", c.input},         {"out", c.out},           {"categorical", c.categorical},
              {"id_col", c.id_col},       {"group_file", c.group_file}, {"group", c.group},
              {"group_ids", c.group_ids}, {"range", range},         {"times", c.times},
              {"seed", c.seed},           {"imp_norm", c.imp_norm}, {"scale", c.scale},
              {"scale_file", c.scale_file}, {"targ", c.targ}};
  json report = report_head("attimp", config, {c.input, c.group_file, c.scale_file});
  report["group_size"] = members.size();
  report["att"] = rep.att;
  write_json(out / "report.json", report);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateCmd {
  std::string out = "sim_out";
  int design = 2;
  std::uint64_t seed = 1;
  std::optional<std::size_t> n, p;
};

int cmd_simulate(const SimulateCmd& c) {
  const PlantedDesign d = c.design == 1 ? gen_design1(c.seed, c.n.value_or(60), c.p.value_or(500))
                                        : gen_design2(c.seed, c.n.value_or(100), c.p.value_or(1000));
  const fs::path out = prepare_out(c.out);
  std::ostringstream csv;
  write_data_csv(csv, d.x);
  write_text((out / "data.csv").string(), csv.str());
  write_json(out / "truth.json",
             json{{"design", c.design}, {"seed", c.seed}, {"labels", d.object_labels}, {"attribute_sets", d.attribute_sets}});
  json config{{"out", c.out}, {"design", c.design}, {"seed", c.seed}, {"n", d.x.rows()}, {"p", d.x.cols()}};
  write_json(out / "report.json", report_head("simulate", config, {}));
  return kExitOk;
}

// ---------------------------------------------------------------------------
// compare

struct CompareCmd {
  std::string input, out = "compare_out", truth, weights, categorical, id_col;
  CosaOptions cosa;
};

int cmd_compare(const CompareCmd& c) {
  const DataMatrix x = read_data_csv(c.input, CsvOptions{split_names(c.categorical), c.id_col});
  std::vector<int> truth;
  if (!c.truth.empty()) truth = read_labels(c.truth, x.rows());
  std::vector<double> ext;
  if (!c.weights.empty()) {
    ext = read_vector_csv(c.weights);
    if (ext.size() != x.cols())
      throw Error(ErrorCode::LengthMismatch, c.weights + ": " + std::to_string(ext.size()) + " weights for " +
                                                 std::to_string(x.cols()) + " attributes");
  }

  const CosaParams params = to_params(c.cosa);
  const ResolvedParams rp = resolve(params, x.rows());
  const CosaResult res = run_cosa(x, params);
  const AttributeDistances plain(x, compute_scale_factors(x, ScaleMethod::Std));
  const AttributeDistances cosa_dist(x, res.scales, res.targets);
  const fs::path out = prepare_out(c.out);

  struct Cell {
    std::string row, column;
    DissimilarityMatrix d;
  };
  std::vector<Cell> cells;
  cells.push_back({"l1", "unweighted", l1_dissimilarity(plain)});
  if (!ext.empty()) cells.push_back({"l1", "external", fixed_weight_dissimilarity(plain, ext, 1)});
  cells.push_back({"l1", "cosa", res.d});
  cells.push_back({"sqeuclid", "unweighted", sqeuclid_dissimilarity(plain)});
  if (!ext.empty()) cells.push_back({"sqeuclid", "external", fixed_weight_dissimilarity(plain, ext, 2)});
  cells.push_back({"sqeuclid", "cosa", maxweight_dissimilarity(cosa_dist, res.w, 2)});

  json grid = json::array();
  for (const auto& cell : cells) {
    const Dendrogram dend = agglomerate(normalize_ss(cell.d), Linkage::Average);
    const std::string file = "dendrogram_" + cell.row + "_" + cell.column + ".svg";
    write_text((out / file).string(), render_dendrogram(dend, truth, cell.row + " / " + cell.column));
    json entry{{"row", cell.row}, {"column", cell.column}, {"svg", file}};
    if (!truth.empty()) {
      const BestCut best = best_cut_ari(dend, truth);
      entry["best_k"] = best.k;
      entry["ari"] = best.ari;
    }
    grid.push_back(entry);
  }

  json config = cosa_config(c.cosa, rp);
  config["input"] = c.input;
  config["out"] = c.out;
  config["truth"] = c.truth;
  config["weights"] = c.weights;
  config["categorical"] = c.categorical;
  config["id_col"] = c.id_col;
  json report = report_head("compare", config, {c.input, c.truth, c.weights, c.cosa.scale_file});
  report["cells"] = grid;
  report["tunpar"] = tunpar_json(res.tunpar);
  write_json(out / "report.json", report);
  return kExitOk;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"COSA dissimilarities, clustering, scaling and attribute importance"};
  app.require_subcommand(1);
  unsigned threads = 1;
  app.add_option("--threads", threads, "Worker threads (0 = all cores); output does not depend on it")
      ->capture_default_str();

  CosaCmd cosa_cmd;
  auto* cs = app.add_subcommand("cosa", "Compute COSA dissimilarities and weights");
  cs->add_option("--input,-i", cosa_cmd.input, "Data CSV with header row")->required()->check(CLI::ExistingFile);
  cs->add_option("--out,-o", cosa_cmd.out, "Output directory")->capture_default_str();
  cs->add_option("--categorical", cosa_cmd.categorical, "Comma-separated categorical column names");
  cs->add_option("--id-col", cosa_cmd.id_col, "Column holding row labels");
  cs->add_option("--w-scale", cosa_cmd.w_scale, "Weight output scale: simplex or timesP")
      ->check(CLI::IsMember({"simplex", "timesP"}))
      ->capture_default_str();
  cs->add_flag("--quiet,-q", cosa_cmd.quiet, "Do not print the iteration log");
  add_cosa_options(cs, cosa_cmd.cosa);

  HclustCmd hc;
  auto* hs = app.add_subcommand("hclust", "Hierarchical clustering of a dissimilarity file");
  hs->add_option("--input,-i", hc.input, "Dissimilarity file")->required()->check(CLI::ExistingFile);
  hs->add_option("--out,-o", hc.out, "Output directory")->capture_default_str();
  hs->add_option("--linkage", hc.linkage, "single, complete, average or ward")
      ->check(CLI::IsMember({"single", "complete", "average", "ward"}))
      ->capture_default_str();
  hs->add_flag("--no-normalize", hc.no_normalize, "Skip sum-of-squares normalisation");
  hs->add_option("--cut-height", hc.cut_height, "Cut the tree at this height");
  hs->add_option("--cut-k", hc.cut_k, "Cut the tree into k clusters");
  hs->add_option("--min-size", hc.min_size, "Smaller clusters become background (label 0)")->capture_default_str();
  hs->add_option("--truth", hc.truth, "JSON with 'labels' used to colour leaves when not cutting");

  MdsCmd mc;
  auto* ms = app.add_subcommand("mds", "Multidimensional scaling of a dissimilarity file");
  ms->add_option("--input,-i", mc.input, "Dissimilarity file")->required()->check(CLI::ExistingFile);
  ms->add_option("--out,-o", mc.out, "Output directory")->capture_default_str();
  ms->add_option("--method", mc.method, "smacof or classical")
      ->check(CLI::IsMember({"smacof", "classical"}))
      ->capture_default_str();
  ms->add_option("--dims", mc.dims, "Embedding dimension")->capture_default_str();
  ms->add_option("--niter", mc.niter, "SMACOF iteration cap")->capture_default_str();
  ms->add_option("--interc", mc.interc, "Fit an interval transformation (0 or 1)")
      ->check(CLI::IsMember({0, 1}))
      ->capture_default_str();
  ms->add_option("--tol", mc.tol, "Relative stress decrease tolerance")->capture_default_str();
  ms->add_option("--init", mc.init, "classical or random")
      ->check(CLI::IsMember({"classical", "random"}))
      ->capture_default_str();
  ms->add_option("--seed", mc.seed, "Seed for random initialisation")->capture_default_str();
  ms->add_option("--groups", mc.groups, "JSON with 'labels' for point colours");

  AttimpCmd ac;
  auto* as = app.add_subcommand("attimp", "Attribute importance for one group");
  as->add_option("--input,-i", ac.input, "Data CSV with header row")->required()->check(CLI::ExistingFile);
  as->add_option("--out,-o", ac.out, "Output directory")->capture_default_str();
  as->add_option("--categorical", ac.categorical, "Comma-separated categorical column names");
  as->add_option("--id-col", ac.id_col, "Column holding row labels");
  as->add_option("--group-file", ac.group_file, "JSON with 'labels' (groups.json or truth.json)");
  as->add_option("--group", ac.group, "Label selected from --group-file")->capture_default_str();
  as->add_option("--group-ids", ac.group_ids, "Comma-separated 0-based object ids");
  as->add_option("--range", ac.range, "Number of ranked attributes to report (default P)");
  as->add_option("--times", ac.times, "Random groups for the null curves")->capture_default_str();
  as->add_option("--seed", ac.seed, "Resampling seed")->capture_default_str();
  as->add_option("--imp-norm", ac.imp_norm, "group (1/N_l^2) or global (1/N^2)")
      ->check(CLI::IsMember({"group", "global"}))
      ->capture_default_str();
  as->add_option("--scale", ac.scale, "std, mad or preset")->check(CLI::IsMember({"std", "mad", "preset"}))->capture_default_str();
  as->add_option("--scale-file", ac.scale_file, "CSV with P scale factors (for --scale preset)");
  as->add_option("--targ", ac.targ, "none, high, low, high/low")
      ->check(CLI::IsMember({"none", "high", "low", "high/low"}))
      ->capture_default_str();

  SimulateCmd sc;
  auto* ss = app.add_subcommand("simulate", "Generate a planted-cluster data set");
  ss->add_option("--out,-o", sc.out, "Output directory")->capture_default_str();
  ss->add_option("--design", sc.design, "1 (three groups, shared attributes) or 2 (two groups + background)")
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();
  ss->add_option("--seed", sc.seed, "Generator seed")->capture_default_str();
  ss->add_option("--n", sc.n, "Object count override");
  ss->add_option("--p", sc.p, "Attribute count override");

  CompareCmd cc;
  auto* cps = app.add_subcommand("compare", "Dendrogram grid: L1/squared Euclidean x unweighted/external/COSA");
  cps->add_option("--input,-i", cc.input, "Data CSV with header row")->required()->check(CLI::ExistingFile);
  cps->add_option("--out,-o", cc.out, "Output directory")->capture_default_str();
  cps->add_option("--truth", cc.truth, "JSON with planted 'labels' (enables the ARI block)");
  cps->add_option("--weights", cc.weights, "CSV with P external attribute weights");
  cps->add_option("--categorical", cc.categorical, "Comma-separated categorical column names");
  cps->add_option("--id-col", cc.id_col, "Column holding row labels");
  add_cosa_options(cps, cc.cosa);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    set_thread_count(threads);
    if (*cs) return cmd_cosa(cosa_cmd);
    if (*hs) return cmd_hclust(hc);
    if (*ms) return cmd_mds(mc);
    if (*as) return cmd_attimp(ac);
    if (*ss) return cmd_simulate(sc);
    if (*cps) return cmd_compare(cc);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    // bad parameter values or combinations are usage errors; everything else is about the data
    return e.code() == ErrorCode::InvalidArgument ? kExitUsage : kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

int run(const std::vector<std::string>& args) {
  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("cosa");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  argv.push_back(nullptr);
  return run(static_cast<int>(storage.size()), argv.data());
}

}  // namespace cosa::cli

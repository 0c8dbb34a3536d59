// qobjex: curves, reports, SBS checks, oracle runs and figure data.
//
// Exit codes: 0 ok, 1 check failed, 2 no crossing, 3 input error, 4 size cap.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qobjex/encodings.hpp"
#include "qobjex/error.hpp"
#include "qobjex/mgrid.hpp"
#include "qobjex/objectivity.hpp"
#include "qobjex/oracle.hpp"
#include "qobjex/serialize.hpp"
#include "qobjex/svg.hpp"

namespace fs = std::filesystem;
using namespace qobjex;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kNoCrossing = 2, kInputError = 3, kSizeCap = 4 };

struct RunConfig {
  std::string family = "ghz";
  int k = 1;
  long N = 1;
  double p = 0.5;
  double threshold = kDefaultThreshold;
  double epsilon = 0.01;
  std::string m_grid = "auto";
  std::string out;
  std::string format = "csv";
  bool oracle = false;
  std::uint64_t seed = 1;
  long samples = 0;
  std::string state_file;
  int system = 0;
  std::string partition;
  int figure_id = 3;
  long n = 0;

  EncodingSpec spec() const {
    EncodingSpec s{parse_family(family), k, N, p};
    s.validate();
    return s;
  }
  Tolerances tolerances() const {
    Tolerances t;
    t.epsilon = epsilon;
    t.validate();
    return t;
  }
};

void add_spec_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--family", cfg.family, "ghz or w")->capture_default_str();
  cmd->add_option("--k", cfg.k, "qubits per group")->capture_default_str();
  cmd->add_option("--N", cfg.N, "number of groups")->capture_default_str();
  cmd->add_option("--p", cfg.p, "branch weight")->capture_default_str();
  cmd->add_option("--threshold", cfg.threshold, "accessible MI threshold in units of S")->capture_default_str();
  cmd->add_option("--epsilon", cfg.epsilon, "MI slack")->capture_default_str();
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty() || cfg.out == "-") {
    std::cout << text;
  } else {
    write_text_file(cfg.out, text);
  }
}

std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

SvgSeries curve_series(const MICurve& curve, const std::string& label, const std::string& color, bool use_qmi) {
  SvgSeries s{label, color, use_qmi, {}};
  for (const auto& pt : curve.points) s.points.emplace_back(pt.f, use_qmi ? pt.qmi_over_S : pt.acc_over_S);
  return s;
}

std::string curve_label(const EncodingSpec& spec) {
  return std::string(to_string(spec.family)) + " k=" + std::to_string(spec.k) + " N=" + std::to_string(spec.N);
}

std::string file_stem(const EncodingSpec& spec) {
  return std::string(to_string(spec.family)) + "_k" + std::to_string(spec.k) + "_N" + std::to_string(spec.N);
}

int cmd_curve(const RunConfig& cfg) {
  const EncodingSpec spec = cfg.spec();
  const ObjectivityReport report = consensus(spec, cfg.threshold, cfg.tolerances());
  const std::vector<long> grid = parse_m_grid(cfg.m_grid, spec.env_qubits(), report.m0);
  const MICurve curve = mi_curve(spec, grid);

  if (cfg.oracle) {
    const BruteForceOracle oracle(spec);
    const double s = oracle.system_entropy_bits();
    std::ostringstream out;
    out << "m,f,qmi_over_S,acc_over_S,oracle_qmi_over_S,deviation\n";
    double worst = 0.0;
    for (const auto& pt : curve.points) {
      const double o = oracle.avg_mi_bits(pt.m) / s;
      const double dev = std::abs(o - pt.qmi_over_S);
      worst = std::max(worst, dev);
      out << pt.m << ',' << format_real(pt.f) << ',' << format_real(pt.qmi_over_S) << ','
          << format_real(pt.acc_over_S) << ',' << format_real(o) << ',' << format_real(dev) << '\n';
    }
    emit(cfg, out.str());
    std::cerr << "max deviation " << format_real(worst) << '\n';
    return worst < 1e-9 ? kOk : kCheckFailed;
  }

  if (cfg.format == "csv") {
    emit(cfg, to_csv(curve));
  } else if (cfg.format == "json") {
    emit(cfg, json_text(to_json(curve)));
  } else {
    SvgChart chart;
    chart.title = curve_label(spec);
    chart.y_label = "MI / S";
    chart.y_max = 2.0;
    chart.threshold = cfg.threshold;
    chart.series.push_back(curve_series(curve, spec.family == Family::w ? "acc bound" : "acc", palette_color(0), false));
    chart.series.push_back(curve_series(curve, "qmi", palette_color(0), true));
    if (report.crossing_found) chart.markers.push_back({report.f0, palette_color(0)});
    emit(cfg, render_svg(chart));
  }
  return kOk;
}

int cmd_report(const RunConfig& cfg) {
  const ObjectivityReport report = consensus(cfg.spec(), cfg.threshold, cfg.tolerances());
  emit(cfg, json_text(to_json(report)));
  return report.crossing_found ? kOk : kNoCrossing;
}

// Fractions are separated by ';' or '/'.
std::vector<IndexSet> parse_partition(std::string text) {
  std::replace(text.begin(), text.end(), '/', ';');
  std::vector<IndexSet> out;
  std::stringstream fractions(text);
  std::string frac;
  while (std::getline(fractions, frac, ';')) {
    IndexSet set;
    std::stringstream items(frac);
    std::string item;
    while (std::getline(items, item, ',')) {
      try {
        std::size_t used = 0;
        const int v = std::stoi(item, &used);
        if (used != item.size()) throw std::invalid_argument(item);
        set.push_back(v);
      } catch (const std::exception&) {
        throw InputError("bad partition entry \"" + item + "\"");
      }
    }
    out.push_back(std::move(set));
  }
  if (out.empty()) throw InputError("partition is empty");
  return out;
}

int cmd_sbs(const RunConfig& cfg) {
  AnyState state = read_state_file(cfg.state_file);
  const DensityMatrix rho =
      std::holds_alternative<PureState>(state) ? DensityMatrix::from_pure(std::get<PureState>(state))
                                               : std::get<DensityMatrix>(state);
  const SbsVerdict verdict = sbs_check(rho, cfg.system, parse_partition(cfg.partition), cfg.tolerances());
  emit(cfg, json_text(to_json(verdict)));
  return verdict.pass ? kOk : kCheckFailed;
}

int cmd_oracle(const RunConfig& cfg) {
  const OracleReport report = run_oracle(cfg.spec(), OracleOptions{cfg.samples, cfg.seed});
  emit(cfg, json_text(to_json(report)));
  const bool ok = report.max_mask_deviation < 1e-9 && report.max_average_deviation < 1e-9;
  return ok ? kOk : kCheckFailed;
}

int cmd_prho(const RunConfig& cfg) {
  const EncodingSpec spec = cfg.spec();
  const Tolerances tol = cfg.tolerances();
  Json rows = Json::array();
  for (long n = 1; n <= spec.env_qubits(); ++n) {
    if (spec.env_qubits() % n != 0 || (cfg.n != 0 && n != cfg.n)) continue;
    const PartitionProbability pr = cfg.oracle ? brute_force_p_rho_n(spec, n, tol) : p_rho_n(spec, n, tol);
    rows.push_back(Json{{"n", n}, {"qualifying", pr.qualifying.get_str()}, {"total", pr.total.get_str()},
                        {"value", pr.value}});
  }
  if (cfg.n != 0 && rows.empty()) p_rho_n(spec, cfg.n, tol);  // reports the divisibility error
  Json out{{"spec", to_json(spec)}, {"method", cfg.oracle ? "oracle" : "analytic"}, {"partitions", rows}};
  if (cfg.n == 0) out["consensus"] = consensus_from_partitions(spec, tol);
  emit(cfg, json_text(out));
  return kOk;
}

// Fig. 2: the four measurement scenarios at k = 4, N = 3.
int figure_cases(const fs::path& dir) {
  const EncodingSpec spec{Family::ghz, 4, 3, 0.5};
  const BruteForceOracle oracle(spec);
  struct Scenario {
    const char* name;
    std::vector<int> positions;
  };
  const std::vector<Scenario> scenarios{{"full row", {0, 1, 2, 3}},
                                        {"full column", {0, 4, 8}},
                                        {"row and column", {0, 1, 2, 3, 4, 8}},
                                        {"neither", {0, 1, 4}}};
  std::ostringstream out;
  out << "scenario,positions,condition_a,condition_b,case,qmi_over_S,acc_over_S,dense_qmi_over_S\n";
  for (const auto& sc : scenarios) {
    const FractionMask mask(spec, sc.positions);
    const GhzClassification c = classify_ghz_fraction(mask);
    std::string pos;
    for (int q : sc.positions) pos += (pos.empty() ? "" : " ") + std::to_string(q);
    out << sc.name << ',' << pos << ',' << c.condition_a << ',' << c.condition_b << ',' << to_string(c.kind) << ','
        << format_real(c.qmi_over_S) << ',' << format_real(c.acc_over_S) << ','
        << format_real(oracle.mask_mi_bits(mask) / oracle.system_entropy_bits()) << '\n';
  }
  write_text_file(dir / "fig2_cases.csv", out.str());
  std::cout << (dir / "fig2_cases.csv").string() << '\n';
  return kOk;
}

int figure_curves(int id, const fs::path& dir, const RunConfig& cfg) {
  std::vector<EncodingSpec> specs;
  if (id == 3) {
    for (long N : {40L, 160L, 1280L}) specs.push_back({Family::ghz, 4, N, 0.5});
  } else {
    for (long N : {8L, 32L, 128L}) {
      specs.push_back({Family::ghz, 3, N, 0.5});
      specs.push_back({Family::w, 3, N, 0.5});
    }
  }
  const std::string prefix = "fig" + std::to_string(id);
  SvgChart chart;
  chart.title = id == 3 ? "GHZ k=4: averaged accessible MI" : "k=3: averaged QMI, GHZ and W";
  chart.y_label = id == 3 ? "acc / S" : "qmi / S";
  chart.y_max = id == 3 ? 1.0 : 2.0;
  chart.threshold = cfg.threshold;
  std::ostringstream summary;
  summary << "family,k,N,redundancy,consensus,m0,f0\n";
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const EncodingSpec& spec = specs[i];
    const ObjectivityReport report = consensus(spec, cfg.threshold, cfg.tolerances());
    const std::vector<long> grid = auto_m_grid(spec.env_qubits(), report.m0);
    const MICurve curve = mi_curve(spec, grid);
    const fs::path csv = dir / (prefix + "_" + file_stem(spec) + ".csv");
    write_text_file(csv, to_csv(curve));
    std::cout << csv.string() << '\n';
    const std::size_t color = id == 3 ? i : i / 2;
    const bool dashed = spec.family == Family::w;
    SvgSeries s = curve_series(curve, curve_label(spec), palette_color(color), id == 4);
    s.dashed = dashed;
    chart.series.push_back(std::move(s));
    if (report.crossing_found) chart.markers.push_back({report.f0, palette_color(color)});
    summary << to_string(spec.family) << ',' << spec.k << ',' << spec.N << ',' << report.redundancy << ','
            << report.consensus << ',' << report.m0 << ',' << format_real(report.f0) << '\n';
  }
  write_text_file(dir / (prefix + "_consensus.csv"), summary.str());
  write_text_file(dir / (prefix + ".svg"), render_svg(chart));
  std::cout << (dir / (prefix + "_consensus.csv")).string() << '\n' << (dir / (prefix + ".svg")).string() << '\n';
  return kOk;
}

int cmd_figure(const RunConfig& cfg) {
  if (cfg.figure_id < 2 || cfg.figure_id > 4) throw InputError("figure id must be 2, 3 or 4");
  const fs::path dir = cfg.out.empty() ? fs::path(".") : fs::path(cfg.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir.string());
  if (cfg.figure_id == 2) return figure_cases(dir);
  return figure_curves(cfg.figure_id, dir, cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Objectivity metrics for GHZ- and W-encoded system-environment states"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* curve = app.add_subcommand("curve", "averaged MI curve as CSV, JSON or SVG");
  add_spec_options(curve, cfg);
  curve->add_option("--m-grid", cfg.m_grid, "auto, all, a:b[:step] or a comma list")->capture_default_str();
  curve->add_option("--format", cfg.format, "csv, json or svg")
      ->check(CLI::IsMember({"csv", "json", "svg"}))
      ->capture_default_str();
  curve->add_option("--out", cfg.out, "output file (default stdout)");
  curve->add_flag("--oracle", cfg.oracle, "add exhaustive dense-simulation columns");

  auto* report = app.add_subcommand("report", "objectivity report as JSON");
  add_spec_options(report, cfg);
  report->add_option("--out", cfg.out, "output file (default stdout)");

  auto* sbs = app.add_subcommand("sbs", "check a state file for spectrum broadcast structure");
  sbs->add_option("--state", cfg.state_file, "state JSON file")->required();
  sbs->add_option("--system", cfg.system, "system subsystem index")->capture_default_str();
  sbs->add_option("--partition", cfg.partition, "fractions, e.g. \"1,2;3,4\" or 1,2/3,4")->required();
  sbs->add_option("--epsilon", cfg.epsilon, "MI slack")->capture_default_str();
  sbs->add_option("--out", cfg.out, "output file (default stdout)");

  auto* figure = app.add_subcommand("figure", "figure reproduction data");
  figure->add_option("--id", cfg.figure_id, "2, 3 or 4")->required();
  figure->add_option("--out", cfg.out, "output directory")->capture_default_str();
  figure->add_option("--threshold", cfg.threshold, "accessible MI threshold")->capture_default_str();

  auto* oracle = app.add_subcommand("oracle", "exhaustive dense comparison against the analytic formulas");
  add_spec_options(oracle, cfg);
  oracle->add_option("--samples", cfg.samples, "per-mask rows to keep (0: all)")->capture_default_str();
  oracle->add_option("--seed", cfg.seed, "seed for row sampling")->capture_default_str();
  oracle->add_option("--out", cfg.out, "output file (default stdout)");

  auto* prho = app.add_subcommand("prho", "P(rho, n) over equal-block partitions");
  add_spec_options(prho, cfg);
  prho->add_option("--n", cfg.n, "number of blocks (0: every divisor)")->capture_default_str();
  prho->add_flag("--oracle", cfg.oracle, "certify blocks by dense simulation");
  prho->add_option("--out", cfg.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*curve) return cmd_curve(cfg);
    if (*report) return cmd_report(cfg);
    if (*sbs) return cmd_sbs(cfg);
    if (*figure) return cmd_figure(cfg);
    if (*oracle) return cmd_oracle(cfg);
    if (*prho) return cmd_prho(cfg);
  } catch (const SizeCapError& e) {
    std::cerr << "size cap: " << e.what() << '\n';
    return kSizeCap;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

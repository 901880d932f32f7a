// Copyright 2026 The rsmkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <cmath>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rsm/budget.hpp"
#include "rsm/bundle.hpp"
#include "rsm/canonical.hpp"
#include "rsm/data_io.hpp"
#include "rsm/error.hpp"
#include "rsm/numfmt.hpp"
#include "rsm/regions.hpp"
#include "rsm/regression.hpp"
#include "rsm/report.hpp"
#include "rsm/serialize.hpp"

namespace rsm::cli {
namespace {

struct FitOptions {
  std::string data;
  std::string synthetic;
  std::string year_column = "year";
  std::string response_column = "co2";
  std::vector<std::string> predictors;
  double alpha = 0.01;
  bool hierarchy = false;
  bool no_quadratic = false;
  std::string box_cox = "fixed";
  double exponent = -2.376;
  std::string convention = "power";
  std::vector<double> grid{-5.0, 5.0, 0.001};
  double normality_alpha = 0.05;
  bool strict_normality = false;
  std::optional<int> linear_exponent;
  std::optional<int> interaction_exponent;
};

struct CanonicalOptions {
  std::string model;
  std::string canonical;
  double zero_tolerance = linalg::kDefaultZeroTolerance;
};

struct RegionOptions {
  std::string pairs = "all";
  double threshold = 1e-8;
  std::vector<int> counts{10, 36};
  int samples = regions::kDefaultCurveSamples;
  std::optional<double> half_length;
  std::optional<double> t_max;
};

struct BudgetOptions {
  std::vector<double> thresholds{1e-8};
  double free_factor = budget::kDefaultFreeFactor;
  std::optional<double> reference_level;
};

struct TradeOptions {
  double threshold = 1e-8;
  std::string pin = "u1";
  std::string drive = "x3";
  double delta = 1000.0;
  std::string offset;
};

std::string sci(double v) { return fmt::sci(v, 6); }

std::string need(const std::string& value, const std::string& flag) {
  if (value.empty()) throw InvalidInput(flag + " is required");
  return value;
}

data::SyntheticConfig read_synthetic(const std::string& path) {
  std::istringstream in(io::read_file(path));
  return data::parse_synthetic_config(in);
}

data::Dataset load_input(const FitOptions& o) {
  if (!o.data.empty() && !o.synthetic.empty())
    throw InvalidInput("give either --data or --synthetic, not both");
  if (!o.synthetic.empty()) {
    data::Dataset d = data::generate_synthetic(read_synthetic(o.synthetic));
    return o.predictors.empty() ? d : data::map_variables(d, o.predictors);
  }
  need(o.data, "--data or --synthetic");
  std::istringstream in(io::read_file(o.data));
  data::CsvSchema schema{o.year_column, o.response_column, o.predictors};
  data::Dataset d = data::load_dataset(in, schema, o.data);
  return o.predictors.empty() ? d : data::map_variables(d, o.predictors);
}

data::BoxCoxConvention convention(const std::string& name) {
  if (name == "power") return data::BoxCoxConvention::kPower;
  if (name == "shifted") return data::BoxCoxConvention::kShiftedPower;
  throw InvalidInput("unknown convention '" + name + "' (power or shifted)");
}

struct FitOutcome {
  regression::QuadraticModel model;
  std::string transcript;
};

FitOutcome run_fit(const FitOptions& o, io::OutputBundle& bundle, std::ostream& err) {
  if (!(o.alpha > 0.0 && o.alpha < 1.0)) throw InvalidInput("--alpha must lie in (0, 1)");
  const data::Dataset d = load_input(o);
  std::ostringstream t;
  t << "rsm fit transcript\n";
  t << "data: " << (d.source().empty() ? "(unnamed)" : d.source()) << ", " << d.size()
    << " rows, " << d.predictor_count() << " predictors\n";
  t << "predictors:";
  for (const auto& n : d.predictor_names()) t << ' ' << n;
  t << "\n";
  if (!o.synthetic.empty()) {
    std::ostringstream csv;
    data::write_dataset(d, csv);
    bundle.add("dataset.csv", csv.str());
  }

  data::TransformSpec spec;
  spec.convention = convention(o.convention);
  if (o.box_cox == "none") {
    spec.exponent = 1.0;
    spec.convention = data::BoxCoxConvention::kPower;
    spec.applied = false;
    t << "box-cox: not applied\n";
  } else if (o.box_cox == "fixed") {
    spec.exponent = o.exponent;
    spec.applied = true;
    t << "box-cox: " << o.convention << " convention, fixed exponent " << fmt::shortest(o.exponent)
      << "\n";
  } else if (o.box_cox == "mle") {
    if (o.grid.size() != 3) throw InvalidInput("--grid needs lo,hi,step");
    const data::BoxCoxFit fit =
        data::box_cox_mle(d.response(), data::Grid{o.grid[0], o.grid[1], o.grid[2]});
    spec.exponent = fit.exponent;
    spec.applied = true;
    t << "box-cox: " << o.convention << " convention, profile-likelihood exponent "
      << fmt::shortest(fit.exponent) << " (log-likelihood " << sci(fit.log_likelihood)
      << ", grid " << fmt::shortest(o.grid[0]) << ".." << fmt::shortest(o.grid[1]) << " step "
      << fmt::shortest(o.grid[2]) << ")\n";
  } else {
    throw InvalidInput("unknown --box-cox mode '" + o.box_cox + "' (fixed, mle or none)");
  }
  const std::vector<double> yt = spec.applied ? data::box_cox(d.response(), spec) : d.response();
  const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(yt.data(), static_cast<Eigen::Index>(yt.size()));

  const data::NormalityResult norm = data::normality_test(yt, o.normality_alpha);
  t << "normality: anderson-darling A2 " << sci(norm.statistic) << ", corrected "
    << sci(norm.corrected) << ", p " << sci(norm.p_value) << ", alpha "
    << fmt::shortest(norm.alpha) << ": " << (norm.reject ? "rejected" : "not rejected") << "\n";
  if (norm.reject) {
    t << "warning: transformed response fails the normality test\n";
    if (o.strict_normality)
      throw DegenerateData("transformed response fails the normality test (p = " +
                           sci(norm.p_value) + ")");
    err << "warning: transformed response fails the normality test (p = " << sci(norm.p_value)
        << ")\n";
  }

  const int k = static_cast<int>(d.predictor_count());
  const auto pool = regression::full_second_order_pool(k, !o.no_quadratic);
  regression::StepwiseOptions so;
  so.alpha_enter = o.alpha;
  so.hierarchy = o.hierarchy;
  t << "stepwise: forward, partial F, pool " << pool.size() << " terms, alpha_enter "
    << fmt::shortest(o.alpha) << ", hierarchy " << (o.hierarchy ? "on" : "off") << "\n";
  const regression::StepwiseResult sw = regression::stepwise_forward(d, y, pool, so);
  const auto& names = d.predictor_names();
  for (const auto& rec : sw.trail) {
    t << "step " << rec.step << ": ";
    if (rec.entered) {
      t << "entered " << rec.entered->label(names);
      if (rec.entered->kind != regression::TermKind::kIntercept)
        t << " F " << sci(rec.f_stat) << " p " << sci(rec.p_value);
    } else {
      t << "nothing entered";
    }
    if (!rec.note.empty()) t << " (" << rec.note << ")";
    t << "\n";
    for (const auto& c : rec.candidates) {
      t << "  candidate " << c.term.label(names);
      if (c.admissible) t << " F " << sci(c.f_stat) << " p " << sci(c.p_value);
      else t << " skipped: " << c.note;
      t << "\n";
    }
  }
  t << "stop: " << sw.stop_reason << "\n";
  if (!sw.final_fit) throw DegenerateData("stepwise selection entered no term");
  const regression::FitReport& fit = *sw.final_fit;
  if (!fit.has_intercept()) throw DegenerateData("selected model has no intercept");
  t << "final fit: " << fit.terms.size() << " terms, R2 " << sci(fit.r2) << ", adjusted R2 "
    << sci(fit.adj_r2) << ", F " << sci(fit.f_stat) << ", p " << sci(fit.f_p_value) << "\n";

  regression::QuadraticModel model = regression::assemble_quadratic_model(fit, names);
  if (o.linear_exponent || o.interaction_exponent) {
    regression::Scales s = model.scales();
    if (o.linear_exponent) s.linear = *o.linear_exponent;
    if (o.interaction_exponent) s.interaction = *o.interaction_exponent;
    model = regression::assemble_quadratic_model(fit, names, s);
  }
  t << "model scale exponents: linear " << model.scales().linear << ", interaction "
    << model.scales().interaction << "\n";

  io::Json model_json = io::model_to_json(model);
  model_json["response_transform"] = io::transform_to_json(spec);
  bundle.add("model.json", io::dump(model_json));

  io::Json report = io::fit_report_to_json(fit);
  report["response_transform"] = io::transform_to_json(spec);
  report["normality"] = io::normality_to_json(norm);
  report["stepwise"] = io::stepwise_to_json(sw, names);
  bundle.add("fit_report.json", io::dump(report));
  bundle.add("fit_transcript.txt", t.str());
  return {std::move(model), t.str()};
}

regression::QuadraticModel load_model(const std::string& path) {
  return io::model_from_json(io::parse(io::read_file(need(path, "--model"))));
}

canonical::CanonicalModel load_canonical(const std::string& path) {
  return io::canonical_from_json(io::parse(io::read_file(need(path, "--canonical"))));
}

std::string run_canonical(const canonical::CanonicalModel& cm, io::OutputBundle& bundle) {
  const std::string summary = report::canonical_summary(cm);
  bundle.add("canonical.json", io::dump(io::canonical_to_json(cm)));
  bundle.add("canonical.txt", summary);
  return summary;
}

std::vector<std::pair<Eigen::Index, Eigen::Index>> parse_pairs(const std::string& text,
                                                              Eigen::Index k) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> out;
  if (text == "all") {
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = i + 1; j < k; ++j) out.emplace_back(i, j);
    return out;
  }
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    const auto dash = item.find('-');
    const auto a = dash == std::string::npos ? std::nullopt : fmt::parse_double(item.substr(0, dash));
    const auto b = dash == std::string::npos ? std::nullopt : fmt::parse_double(item.substr(dash + 1));
    if (!a || !b || *a != std::floor(*a) || *b != std::floor(*b))
      throw SpecError("pair '" + item + "' is not of the form i-j");
    out.emplace_back(static_cast<Eigen::Index>(*a) - 1, static_cast<Eigen::Index>(*b) - 1);
  }
  if (out.empty()) throw SpecError("no pairs given");
  return out;
}

std::string run_regions(const canonical::CanonicalModel& cm, const RegionOptions& o,
                        io::OutputBundle& bundle) {
  if (o.counts.size() != 2) throw InvalidInput("--counts needs two values");
  std::vector<regions::ConfidenceRegion> all;
  io::Json list = io::Json::array();
  for (const auto& [i, j] : parse_pairs(o.pairs, cm.dimension())) {
    const regions::ConfidenceRegion r = regions::classify_pair(cm, i, j, o.threshold);
    regions::Window w = regions::default_window(r);
    if (o.half_length) w.half_length = *o.half_length;
    if (o.t_max) w.t_max = *o.t_max;
    const auto points = regions::sample_region(r, {o.counts[0], o.counts[1]}, w);
    const auto curves = regions::boundary_curves(r, o.samples, w);
    std::ostringstream csv;
    regions::write_points_csv(csv, r, points);
    const std::string stem = "region_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
    bundle.add(stem + ".csv", csv.str());
    bundle.add(stem + ".svg", regions::render_svg(r, curves, points, w));
    io::Json rj = io::region_to_json(r);
    if (w.half_length) rj["window_half_length"] = *w.half_length;
    if (w.t_max) rj["window_t_max"] = *w.t_max;
    rj["points"] = points.size();
    list.push_back(std::move(rj));
    all.push_back(r);
  }
  bundle.add("regions.json", io::dump(io::Json{{"regions", list}}));
  const std::string text = report::regions_summary(all);
  bundle.add("regions.txt", text);
  return text;
}

std::string run_budget(const canonical::CanonicalModel& cm, const BudgetOptions& o,
                       io::OutputBundle& bundle) {
  if (o.thresholds.empty()) throw InvalidInput("--threshold needs at least one value");
  const budget::CrossoverReport cr = budget::crossover_threshold(cm, o.reference_level);
  io::Json reports = io::Json::array();
  std::string text;
  for (double m : o.thresholds) {
    const budget::MagnitudeReport mr = budget::magnitude_report(cm, m, o.free_factor);
    reports.push_back(io::magnitude_to_json(mr));
    if (!text.empty()) text += "\n";
    text += report::budget_text(cm, mr, cr);
  }
  bundle.add("budget.json",
             io::dump(io::Json{{"magnitude", reports}, {"crossover", io::crossover_to_json(cr)}}));
  bundle.add("budget.txt", text);
  return text;
}

budget::PinSpec parse_pin(const std::string& text) {
  const std::optional<double> n =
      text.size() > 1 ? fmt::parse_double(text.substr(1)) : std::optional<double>();
  const double index = n.value_or(0.0);
  if (index < 1 || index != std::floor(index) || (text[0] != 'u' && text[0] != 'v'))
    throw SpecError("--pin must look like u1 or v2, got '" + text + "'");
  return {static_cast<std::size_t>(index) - 1,
          text[0] == 'u' ? budget::Factor::kU : budget::Factor::kV};
}

Eigen::Index parse_variable(const std::string& text, const std::vector<std::string>& names) {
  for (std::size_t k = 0; k < names.size(); ++k)
    if (names[k] == text) return static_cast<Eigen::Index>(k);
  const auto n = fmt::parse_double(text);
  if (n && *n >= 1 && *n <= static_cast<double>(names.size()) && *n == std::floor(*n))
    return static_cast<Eigen::Index>(*n) - 1;
  throw SpecError("unknown variable '" + text + "'");
}

std::string run_trade(const canonical::CanonicalModel& cm, const TradeOptions& o,
                      io::OutputBundle& bundle) {
  const auto& names = cm.model().names();
  const budget::UVSystem uv = budget::uv_system(cm);
  std::optional<Eigen::Index> offset;
  if (!o.offset.empty()) offset = parse_variable(o.offset, names);
  const budget::TradeScenario s = budget::trade_analysis(
      cm, uv, o.threshold, parse_pin(o.pin), parse_variable(o.drive, names), o.delta, offset);
  io::Json j = io::trade_to_json(s);
  j["uv_system"] = io::uv_to_json(uv);
  bundle.add("trade.json", io::dump(j));
  const std::string text = report::trade_text(cm, uv, s);
  bundle.add("trade.txt", text);
  return text;
}

std::string html_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string index_page(const io::OutputBundle& bundle, const std::vector<std::string>& notes) {
  std::ostringstream h;
  h << "<!DOCTYPE html>\n<html>\n<head><meta charset=\"utf-8\"><title>rsm report</title></head>\n"
       "<body>\n<h1>rsm report</h1>\n";
  if (!notes.empty()) {
    h << "<h2>Notes</h2>\n<ul>\n";
    for (const auto& n : notes) h << "<li>" << html_escape(n) << "</li>\n";
    h << "</ul>\n";
  }
  for (const char* name : {"canonical.txt", "budget.txt", "trade.txt"}) {
    const auto it = bundle.files().find(name);
    if (it == bundle.files().end()) continue;
    h << "<h2>" << name << "</h2>\n<pre>" << html_escape(it->second) << "</pre>\n";
  }
  h << "<h2>Files</h2>\n<ul>\n";
  for (const auto& [name, contents] : bundle.files())
    h << "<li><a href=\"" << name << "\">" << name << "</a> (" << contents.size()
      << " bytes)</li>\n";
  h << "</ul>\n";
  bool any_svg = false;
  for (const auto& [name, contents] : bundle.files()) {
    if (name.size() < 4 || name.substr(name.size() - 4) != ".svg") continue;
    if (!any_svg) h << "<h2>Regions</h2>\n";
    any_svg = true;
    h << "<img src=\"" << name << "\" alt=\"" << name << "\" width=\"480\" height=\"480\">\n";
  }
  h << "</body>\n</html>\n";
  return h.str();
}

void add_fit_options(CLI::App* c, FitOptions& o) {
  c->add_option("--data", o.data, "Input CSV");
  c->add_option("--synthetic", o.synthetic, "Synthetic-data config used instead of --data");
  c->add_option("--year-column", o.year_column, "Year column name")->capture_default_str();
  c->add_option("--response-column", o.response_column, "Response column name")
      ->capture_default_str();
  c->add_option("--predictors", o.predictors,
                "Predictor columns to keep, renamed x1..xk in this order")
      ->delimiter(',');
  c->add_option("--alpha", o.alpha, "Entry significance level")->capture_default_str();
  c->add_flag("--hierarchy", o.hierarchy, "Require linear parents before second-order terms");
  c->add_flag("--no-quadratic", o.no_quadratic, "Leave squared terms out of the pool");
  c->add_option("--box-cox", o.box_cox, "fixed, mle or none")->capture_default_str();
  c->add_option("--exponent", o.exponent, "Box-Cox exponent in fixed mode")->capture_default_str();
  c->add_option("--convention", o.convention, "power or shifted")->capture_default_str();
  c->add_option("--grid", o.grid, "lo,hi,step for the exponent search")->delimiter(',');
  c->add_option("--normality-alpha", o.normality_alpha, "Normality test level")
      ->capture_default_str();
  c->add_flag("--strict-normality", o.strict_normality, "Fail when normality is rejected");
  c->add_option("--linear-exponent", o.linear_exponent, "Decimal scale of linear coefficients");
  c->add_option("--interaction-exponent", o.interaction_exponent,
                "Decimal scale of the interaction matrix");
}

void add_region_options(CLI::App* c, RegionOptions& o) {
  c->add_option("--pairs", o.pairs, "all, or 1-based pairs such as 1-2,2-4")
      ->capture_default_str();
  c->add_option("--counts", o.counts, "Sample grid sizes")->delimiter(',');
  c->add_option("--samples", o.samples, "Vertices per boundary curve")->capture_default_str();
  c->add_option("--half-length", o.half_length, "Window half-length for unbounded coordinates");
  c->add_option("--t-max", o.t_max, "Hyperbolic parameter window");
}

void add_budget_options(CLI::App* c, BudgetOptions& o) {
  c->add_option("--free-factor", o.free_factor, "Ratio above which z is reported free")
      ->capture_default_str();
  c->add_option("--reference-level", o.reference_level, "Typical response level for M*/Y0");
}

void add_trade_options(CLI::App* c, TradeOptions& o) {
  c->add_option("--pin", o.pin, "Factor set to zero, e.g. u1")->capture_default_str();
  c->add_option("--drive", o.drive, "Driving variable (name or 1-based index)")
      ->capture_default_str();
  c->add_option("--delta", o.delta, "Increment of the driving variable")->capture_default_str();
  c->add_option("--offset", o.offset, "Offsetting variable (default: largest partner)");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Response-surface analysis of quadratic emission models", "rsm"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Key-value config file; command-line flags win");
  std::string out_dir = "rsm_out";
  app.add_option("-o,--out-dir", out_dir, "Output directory")
      ->envname(kOutDirEnv)
      ->capture_default_str();

  FitOptions fit;
  CanonicalOptions canon;
  RegionOptions reg;
  BudgetOptions bud;
  TradeOptions trade;

  auto* c_fit = app.add_subcommand("fit", "Transform, select and fit a quadratic model");
  add_fit_options(c_fit, fit);

  auto* c_canon = app.add_subcommand("canonical", "Canonical analysis of model.json");
  c_canon->add_option("--model", canon.model, "model.json")->required();
  c_canon->add_option("--zero-tolerance", canon.zero_tolerance, "Relative eigenvalue snap")
      ->capture_default_str();

  auto* c_reg = app.add_subcommand("regions", "Confidence regions for canonical pairs");
  c_reg->add_option("--canonical", canon.canonical, "canonical.json")->required();
  c_reg->add_option("-M,--threshold", reg.threshold, "Threshold M")->capture_default_str();
  add_region_options(c_reg, reg);

  auto* c_bud = app.add_subcommand("budget", "Magnitude bounds and crossover threshold");
  c_bud->add_option("--canonical", canon.canonical, "canonical.json")->required();
  c_bud->add_option("-M,--threshold", bud.thresholds, "Threshold M (repeatable)");
  add_budget_options(c_bud, bud);

  auto* c_trade = app.add_subcommand("trade", "Trade of attributable variables under a cap");
  c_trade->add_option("--canonical", canon.canonical, "canonical.json")->required();
  c_trade->add_option("-M,--threshold", trade.threshold, "Cap M")->capture_default_str();
  add_trade_options(c_trade, trade);

  auto* c_rep = app.add_subcommand("report", "Full pipeline with an index page");
  c_rep->add_option("--model", canon.model, "Start from model.json instead of fitting");
  add_fit_options(c_rep, fit);
  c_rep->add_option("--zero-tolerance", canon.zero_tolerance, "Relative eigenvalue snap")
      ->capture_default_str();
  c_rep->add_option("-M,--threshold", reg.threshold, "Threshold M")->capture_default_str();
  add_region_options(c_rep, reg);
  add_budget_options(c_rep, bud);
  add_trade_options(c_rep, trade);

  auto* c_syn = app.add_subcommand("synth", "Write a synthetic dataset");
  std::string syn_config;
  c_syn->add_option("--synthetic", syn_config, "Synthetic-data config")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    io::OutputBundle bundle(out_dir);
    std::string text;
    if (c_fit->parsed()) {
      text = run_fit(fit, bundle, err).transcript;
    } else if (c_canon->parsed()) {
      const auto cm = canonical::decompose(load_model(canon.model), canon.zero_tolerance);
      text = run_canonical(cm, bundle);
    } else if (c_reg->parsed()) {
      text = run_regions(load_canonical(canon.canonical), reg, bundle);
    } else if (c_bud->parsed()) {
      text = run_budget(load_canonical(canon.canonical), bud, bundle);
    } else if (c_trade->parsed()) {
      text = run_trade(load_canonical(canon.canonical), trade, bundle);
    } else if (c_rep->parsed()) {
      std::optional<regression::QuadraticModel> model;
      if (!canon.model.empty()) {
        if (!fit.data.empty() || !fit.synthetic.empty())
          throw InvalidInput("give either --model or fit inputs, not both");
        model = load_model(canon.model);
      } else {
        model = run_fit(fit, bundle, err).model;
      }
      const auto cm = canonical::decompose(*model, canon.zero_tolerance);
      text = run_canonical(cm, bundle);
      text += "\n" + run_regions(cm, reg, bundle);
      std::vector<std::string> notes;
      bud.thresholds = {reg.threshold};
      trade.threshold = reg.threshold;
      try {
        text += "\n" + run_budget(cm, bud, bundle);
      } catch (const Error& e) {
        if (e.category() != ErrorCategory::kNumerical) throw;
        notes.push_back(std::string("budget skipped: ") + e.what());
      }
      try {
        text += "\n" + run_trade(cm, trade, bundle);
      } catch (const Error& e) {
        if (e.category() != ErrorCategory::kNumerical) throw;
        notes.push_back(std::string("trade skipped: ") + e.what());
      }
      bundle.add("index.html", index_page(bundle, notes));
    } else if (c_syn->parsed()) {
      const data::Dataset d = data::generate_synthetic(read_synthetic(syn_config));
      std::ostringstream csv;
      data::write_dataset(d, csv);
      bundle.add("dataset.csv", csv.str());
      text = "wrote " + std::to_string(d.size()) + " rows\n";
    }
    bundle.commit();
    out << text;
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.category() == ErrorCategory::kNumerical ? kExitNumerical : kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace rsm::cli

#include "riccikit/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "riccikit/bryant.hpp"
#include "riccikit/catalog.hpp"
#include "riccikit/classifier.hpp"
#include "riccikit/level_set.hpp"

namespace riccikit {
namespace cli {

namespace {

using nlohmann::json;

struct CommonOpts {
  std::string catalog_name;
  std::string profile_path;
  std::string out_path;
  std::string format = "json";
  std::vector<std::string> params;
  std::vector<std::string> points;
  int samples = 40;
  uint64_t seed = 1;
  bool no_meta = false;
  double soliton_gate = 1e-4;
  double d_gate = 1e-3;
  double gradient_gate = 1e-6;
};

std::map<std::string, double> parse_params(const std::vector<std::string>& kvs) {
  std::map<std::string, double> out;
  for (const auto& kv : kvs) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw GeometryError(ErrorCode::invalid_params, "expected key=value, got '" + kv + "'");
    out[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
  }
  return out;
}

Vec parse_point(const std::string& csv, int dim) {
  std::vector<double> vals;
  std::stringstream ss(csv);
  std::string cell;
  while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
  if (dim > 0 && static_cast<int>(vals.size()) != dim)
    throw GeometryError(ErrorCode::invalid_params,
                        "point '" + csv + "' has " + std::to_string(vals.size()) +
                            " coordinates, chart needs " + std::to_string(dim));
  Vec x(vals.size());
  for (size_t i = 0; i < vals.size(); ++i) x[i] = vals[i];
  return x;
}

json vec_to_json(const Vec& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json mat_to_json(const Mat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (int j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(r);
  }
  return rows;
}

json tensor3_to_json(const Tensor3& t) {
  json a = json::array();
  for (int i = 0; i < t.dim(); ++i) {
    json b = json::array();
    for (int j = 0; j < t.dim(); ++j) {
      json c = json::array();
      for (int k = 0; k < t.dim(); ++k) c.push_back(t(i, j, k));
      b.push_back(c);
    }
    a.push_back(b);
  }
  return a;
}

void attach_meta(json& doc, bool no_meta) {
  if (no_meta) return;
  const auto now = std::chrono::system_clock::now();
  doc["meta"] = {
      {"tool", "riccikit"},
      {"generated_at", std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count()}};
}

void emit(const json& doc, const std::string& out_path, std::ostream& fallback) {
  if (out_path.empty()) {
    fallback << doc.dump(2) << "\n";
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw GeometryError(ErrorCode::io_error, "cannot open " + out_path);
  f << doc.dump(2) << "\n";
}

struct ResolvedInput {
  classifier::Input in;
  std::string description;
};

ResolvedInput resolve(const CommonOpts& o) {
  if (!o.catalog_name.empty() && !o.profile_path.empty())
    throw GeometryError(ErrorCode::invalid_params, "give either --catalog or --profile, not both");
  ResolvedInput r;
  if (!o.catalog_name.empty()) {
    const catalog::CatalogEntry e = catalog::make(o.catalog_name, parse_params(o.params));
    r.in.soliton = e.soliton;
    r.in.profile = e.profile;
    r.in.fiber = e.fiber;
    r.description = "catalog:" + o.catalog_name;
    return r;
  }
  if (!o.profile_path.empty()) {
    const WarpedProfile p = read_profile_csv(o.profile_path);
    r.in = classifier::from_profile(p);
    r.description = "profile:" + o.profile_path;
    return r;
  }
  throw GeometryError(ErrorCode::invalid_params, "an input is required: --catalog NAME or --profile PATH");
}

std::vector<Vec> resolve_points(const CommonOpts& o, const CoordinateChart& chart) {
  std::vector<Vec> pts;
  if (!o.points.empty()) {
    for (const auto& p : o.points) {
      Vec x = parse_point(p, chart.dim);
      chart.require_interior(x);
      pts.push_back(x);
    }
    return pts;
  }
  std::mt19937_64 rng(o.seed);
  for (int i = 0; i < o.samples; ++i) pts.push_back(chart.domain.sample(rng));
  if (pts.empty()) throw GeometryError(ErrorCode::empty_sample_set, "no points to evaluate");
  return pts;
}

json settings_json(const CommonOpts& o) {
  return {{"samples", o.samples},
          {"seed", o.seed},
          {"soliton_gate", o.soliton_gate},
          {"d_gate", o.d_gate},
          {"gradient_gate", o.gradient_gate}};
}

int run_tensors(const CommonOpts& o, std::ostream& out) {
  const ResolvedInput r = resolve(o);
  const CoordinateChart& chart = r.in.soliton.chart;
  const std::vector<Vec> pts = resolve_points(o, chart);

  json points = json::array();
  for (const Vec& x : pts) {
    const CurvatureBundle b = curvature_bundle(chart, x);
    json jp;
    jp["point"] = vec_to_json(x);
    jp["metric"] = mat_to_json(b.g);
    jp["christoffel"] = tensor3_to_json(b.gamma);
    jp["ricci"] = mat_to_json(b.ricci);
    jp["scalar"] = b.scalar;
    jp["riemann_norm"] = g_norm4(b.riemann, b.ginv);
    if (chart.dim >= 3 && chart.max_order >= 3) {
      const ConformalBundle cb = conformal_bundle(chart, x, chart.dim >= 4);
      jp["schouten"] = mat_to_json(cb.schouten);
      jp["einstein"] = mat_to_json(cb.einstein);
      jp["weyl_norm"] = g_norm4(cb.weyl, cb.ginv);
      jp["cotton_norm"] = g_norm3(cb.cotton, cb.ginv);
      if (cb.bach) jp["bach"] = mat_to_json(*cb.bach);
    }
    points.push_back(jp);
  }
  json doc;
  doc["input"] = r.description;
  doc["settings"] = settings_json(o);
  doc["points"] = points;
  attach_meta(doc, o.no_meta);
  emit(doc, o.out_path, out);
  return 0;
}

int run_verify(const CommonOpts& o, std::ostream& out) {
  const ResolvedInput r = resolve(o);
  const SolitonChart& s = r.in.soliton;
  const int n = s.chart.dim;
  const std::vector<Vec> pts = resolve_points(o, s.chart);

  json points = json::array();
  double res_rel_max = 0.0, skew_max = 0.0, trace_max = 0.0, contraction_max = 0.0, gap_max = 0.0;
  double energy_min = 1e300, energy_max = -1e300, grad_res_max = 0.0;
  double bach24_max = 0.0, bach25_max = 0.0, umb_max = 0.0, mix_max = 0.0;
  double d_rel_max = 0.0;
  bool any_energy = false;

  for (const Vec& x : pts) {
    const SolitonPointReport rep = point_report(s, x, /*with_order4=*/n >= 4 && s.chart.max_order >= 3);
    const double scale = 1.0 + rep.riemann_norm;
    json jp;
    jp["point"] = vec_to_json(x);
    jp["soliton_residual"] = rep.soliton_residual;
    jp["grad_f"] = vec_to_json(rep.grad_f);
    jp["riemann_norm"] = rep.riemann_norm;
    res_rel_max = std::max(res_rel_max, rep.soliton_residual / scale);
    if (n >= 3) {
      jp["d_norm"] = rep.d_norm;
      jp["d_skew_residual"] = rep.d_skew_residual;
      jp["d_trace_residual"] = rep.d_trace_residual;
      jp["d_contraction_residual"] = rep.d_contraction_residual;
      jp["d_method_gap"] = rep.d_method_gap;
      d_rel_max = std::max(d_rel_max, rep.d_norm / scale);
      skew_max = std::max(skew_max, rep.d_skew_residual / scale);
      trace_max = std::max(trace_max, rep.d_trace_residual / scale);
      contraction_max = std::max(contraction_max, rep.d_contraction_residual / scale);
      if (rep.soliton_residual / scale < 1e-6) gap_max = std::max(gap_max, rep.d_method_gap / scale);
    }
    if (rep.hamilton) {
      jp["hamilton_energy"] = rep.hamilton->energy;
      jp["hamilton_grad_residual"] = rep.hamilton->grad_residual;
      energy_min = std::min(energy_min, rep.hamilton->energy);
      energy_max = std::max(energy_max, rep.hamilton->energy);
      grad_res_max = std::max(grad_res_max, rep.hamilton->grad_residual / scale);
      any_energy = true;
    }
    if (rep.bach) {
      jp["bach_residual_routes"] = rep.bach->residual_routes;
      jp["bach_residual_from_d"] = rep.bach->residual_from_d;
      bach24_max = std::max(bach24_max, rep.bach->residual_routes / scale);
      bach25_max = std::max(bach25_max, rep.bach->residual_from_d / scale);
    }
    if (rep.dflat) {
      jp["dflat"] = {{"a", rep.dflat->a}, {"b", rep.dflat->b}, {"c", rep.dflat->c}, {"d", rep.dflat->d}};
    }
    if (!s.near_critical(x)) {
      const LevelSetReport lr = level_diagnostics(s, x);
      jp["umbilicity_deficit"] = lr.umbilicity_deficit;
      jp["normal_ricci_mix"] = lr.normal_ricci_mix;
      jp["mean_curvature"] = lr.H;
      umb_max = std::max(umb_max, lr.umbilicity_deficit);
      mix_max = std::max(mix_max, lr.normal_ricci_mix);
    }
    points.push_back(jp);
  }

  json max_residuals = {{"soliton_residual", res_rel_max},
                        {"d_norm", d_rel_max},
                        {"d_skew", skew_max},
                        {"d_trace", trace_max},
                        {"d_contraction", contraction_max},
                        {"d_method_gap", gap_max},
                        {"bach_routes", bach24_max},
                        {"bach_from_d", bach25_max},
                        {"umbilicity", umb_max},
                        {"normal_ricci_mix", mix_max},
                        {"hamilton_grad", grad_res_max}};
  if (any_energy) max_residuals["energy_spread"] = energy_max - energy_min;

  const bool is_soliton = res_rel_max <= o.soliton_gate;
  const bool identities_ok = skew_max <= 1e-6 && trace_max <= 1e-6 && contraction_max <= 1e-6 &&
                             gap_max <= 1e-4 && bach24_max <= 1e-3;
  const bool energy_ok = !any_energy || (energy_max - energy_min) <= 1e-4 * (1.0 + std::abs(energy_max));
  json verdicts = {
      {"is_soliton", is_soliton}, {"identities_ok", identities_ok}, {"energy_constant", energy_ok}};

  json summary = {{"max_residuals", max_residuals}, {"verdicts", verdicts}};
  if (s.fibration) {
    const Fibration& fib = *s.fibration;
    const double level = 0.5 * (fib.level_min + fib.level_max);
    try {
      const ConstancyScan scan = constancy_scan(s, level, std::max(8, o.samples / 4), o.seed);
      summary["constancy"] = {{"level", level},
                              {"spread_scalar", scan.spread_scalar},
                              {"spread_grad2", scan.spread_grad2},
                              {"spread_mean_curvature", scan.spread_mean_curvature}};
    } catch (const GeometryError&) {
      // slice through a critical region: report without the scan
    }
  }

  json doc;
  doc["input"] = r.description;
  doc["settings"] = settings_json(o);
  doc["points"] = points;
  doc["summary"] = summary;
  attach_meta(doc, o.no_meta);

  if (o.format == "csv") {
    std::ostringstream csv;
    csv << "soliton_residual,d_norm,d_method_gap,hamilton_energy,umbilicity_deficit\n";
    for (const auto& jp : doc["points"]) {
      csv << jp.value("soliton_residual", 0.0) << "," << jp.value("d_norm", 0.0) << ","
          << jp.value("d_method_gap", 0.0) << "," << jp.value("hamilton_energy", 0.0) << ","
          << jp.value("umbilicity_deficit", 0.0) << "\n";
    }
    if (o.out_path.empty())
      out << csv.str();
    else {
      std::ofstream f(o.out_path);
      if (!f) throw GeometryError(ErrorCode::io_error, "cannot open " + o.out_path);
      f << csv.str();
    }
  } else {
    emit(doc, o.out_path, out);
  }
  return (is_soliton && identities_ok && energy_ok) ? 0 : 1;
}

struct BryantOpts {
  bryant::BryantConfig cfg;
  std::string out_csv;
  std::string asym_out;
  bool no_meta = false;
};

int run_bryant(const BryantOpts& o, std::ostream& out) {
  const WarpedProfile p = bryant::integrate(o.cfg);
  if (!o.out_csv.empty()) write_profile_csv(p, o.out_csv);
  const bryant::AsymptoticsReport rep = bryant::asymptotics(p);

  bool r_nonnegative = true;
  for (size_t i = 0; i < p.size(); ++i) {
    const auto w = warped_curvature(p.n, p.lambda, p.phi[i], p.dphi[i], p.d2phi[i]);
    if (w.scalar < 0.0) r_nonnegative = false;
  }
  const bool energy_ok = rep.energy_spread <= 1e-7 * std::abs(rep.energy_constant);

  json doc;
  doc["input"] = {{"n", o.cfg.n},
                  {"normalization", o.cfg.normalization},
                  {"r_max", o.cfg.r_max},
                  {"r_seed", o.cfg.r_seed},
                  {"series_order", o.cfg.series_order}};
  doc["asymptotics"] = {{"curvature_decay_exponent", rep.curvature_decay_exponent},
                        {"volume_growth_exponent", rep.volume_growth_exponent},
                        {"phi_growth_exponent", rep.phi_growth_exponent},
                        {"curvature_fit_stderr", rep.curvature_fit_stderr},
                        {"volume_fit_stderr", rep.volume_fit_stderr},
                        {"phi_fit_stderr", rep.phi_fit_stderr},
                        {"curvature_degenerate", rep.curvature_degenerate},
                        {"energy_constant", rep.energy_constant},
                        {"energy_spread", rep.energy_spread},
                        {"tail_window", {rep.tail_lo, rep.tail_hi}}};
  doc["checks"] = {{"energy_conserved", energy_ok}, {"scalar_nonnegative", r_nonnegative}};
  if (!o.out_csv.empty()) doc["profile_csv"] = o.out_csv;
  attach_meta(doc, o.no_meta);
  emit(doc, o.asym_out, out);
  return (energy_ok && r_nonnegative) ? 0 : 1;
}

int run_classify(const CommonOpts& o, std::ostream& out) {
  const ResolvedInput r = resolve(o);
  classifier::Thresholds th;
  th.soliton_gate = o.soliton_gate;
  th.d_gate = o.d_gate;
  th.gradient_gate = o.gradient_gate;
  const classifier::ClassificationReport rep = classifier::classify(r.in, th, o.samples, o.seed);

  json doc;
  doc["input"] = r.description;
  doc["settings"] = settings_json(o);
  doc["branch"] = classifier::branch_name(rep.branch);
  doc["dimension"] = rep.dimension;
  doc["applicable_statement"] = rep.applicable_statement;
  doc["evidence"] = json(rep.evidence);
  doc["notes"] = json(rep.notes);
  doc["thresholds_used"] = {{"soliton_gate", rep.thresholds_used.soliton_gate},
                            {"d_gate", rep.thresholds_used.d_gate},
                            {"gradient_gate", rep.thresholds_used.gradient_gate}};
  attach_meta(doc, o.no_meta);
  emit(doc, o.out_path, out);

  using classifier::Branch;
  const bool definite = rep.branch == Branch::ricci_flat_constant_potential ||
                        rep.branch == Branch::product_ricci_flat_fiber || rep.branch == Branch::bryant;
  return definite ? 0 : 1;
}

void add_common(CLI::App* cmd, CommonOpts& o, bool with_points) {
  cmd->add_option("--catalog", o.catalog_name, "catalog entry name");
  cmd->add_option("--profile", o.profile_path, "warped profile CSV path");
  cmd->add_option("--param", o.params, "catalog parameter key=value (repeatable)");
  cmd->add_option("--out", o.out_path, "output path (default stdout)");
  cmd->add_option("--samples", o.samples, "number of sampled points");
  cmd->add_option("--seed", o.seed, "sampler seed (fixes all randomness)");
  cmd->add_flag("--no-meta", o.no_meta, "omit the volatile meta block");
  cmd->add_option("--soliton-gate", o.soliton_gate, "relative soliton residual gate");
  cmd->add_option("--d-gate", o.d_gate, "relative D-norm gate");
  cmd->add_option("--gradient-gate", o.gradient_gate, "relative gradient gate");
  if (with_points) cmd->add_option("--point", o.points, "evaluation point c1,c2,... (repeatable)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"curvature, soliton-identity, and classification toolkit for coordinate-chart metrics"};
  app.require_subcommand(1);

  CommonOpts tens_o, ver_o, cls_o;
  BryantOpts bry_o;
  std::string catalog_action;

  CLI::App* tens = app.add_subcommand("tensors", "dump pointwise curvature/conformal bundles");
  add_common(tens, tens_o, true);

  CLI::App* ver = app.add_subcommand("verify", "run the soliton and level-set identity suite");
  add_common(ver, ver_o, true);
  ver->add_option("--format", ver_o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  CLI::App* bry = app.add_subcommand("bryant", "construct the rotationally symmetric steady soliton");
  bry->add_option("--n", bry_o.cfg.n, "dimension (>= 3)");
  bry->add_option("--rmax", bry_o.cfg.r_max, "integration endpoint");
  bry->add_option("--normalization", bry_o.cfg.normalization, "target scalar curvature at the tip");
  bry->add_option("--rseed", bry_o.cfg.r_seed, "series handoff radius");
  bry->add_option("--series-order", bry_o.cfg.series_order, "origin series order");
  bry->add_option("--grid-density", bry_o.cfg.grid_density, "output node spacing factor");
  bry->add_option("--out", bry_o.out_csv, "profile CSV output path");
  bry->add_option("--asym-out", bry_o.asym_out, "asymptotics JSON path (default stdout)");
  bry->add_flag("--no-meta", bry_o.no_meta, "omit the volatile meta block");

  CLI::App* cls = app.add_subcommand("classify", "decide the steady-soliton branch");
  add_common(cls, cls_o, false);

  CLI::App* cat = app.add_subcommand("catalog", "catalog utilities");
  cat->add_option("action", catalog_action, "list")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*tens) return run_tensors(tens_o, out);
    if (*ver) return run_verify(ver_o, out);
    if (*bry) return run_bryant(bry_o, out);
    if (*cls) return run_classify(cls_o, out);
    if (*cat) {
      if (catalog_action != "list") {
        err << "error: unknown catalog action '" << catalog_action << "'\n";
        return 2;
      }
      for (const auto& n : catalog::list_names()) out << n << "\n";
      return 0;
    }
  } catch (const GeometryError& e) {
    err << "error: " << e.what() << "\n";
    const ErrorCode c = e.code();
    const bool usage = c == ErrorCode::unknown_name || c == ErrorCode::invalid_params ||
                       c == ErrorCode::io_error || c == ErrorCode::empty_sample_set ||
                       c == ErrorCode::dimension_too_small || c == ErrorCode::normalization_nonpositive;
    return usage ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace cli
}  // namespace riccikit

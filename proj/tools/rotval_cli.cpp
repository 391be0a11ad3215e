#include <CLI11.hpp>

#include "rotval/core/oracle.hpp"
#include "rotval/intgeo/experiments.hpp"
#include "rotval/io/documents.hpp"
#include "rotval/verify/basis.hpp"
#include "rotval/verify/batch.hpp"

#include <fstream>
#include <iostream>

using namespace rotval;
using io::Json;

namespace {

/// Bad flag values detected after CLI11 has accepted the command line.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::uint64_t seed = 0;
  int threads = 1;
  std::vector<std::string> tol_args;
  std::map<std::string, double> tolerances;
  std::string format = "json";
  std::string out;
};

struct Output {
  std::string kind;
  Json doc;
  bool pass = true;
};

/// Parses the repeatable --tol name=value flags against the names the
/// subcommand knows, filling in defaults for the rest.
void resolve_tolerances(RunConfig& cfg, const std::map<std::string, double>& defaults) {
  cfg.tolerances = defaults;
  for (const auto& arg : cfg.tol_args) {
    const auto eq = arg.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--tol expects name=value, got '" + arg + "'");
    const std::string name = arg.substr(0, eq);
    if (!defaults.count(name)) {
      std::string known;
      for (const auto& [k, v] : defaults) known += (known.empty() ? "" : ", ") + k;
      throw UsageError("unknown tolerance '" + name + "' (known: " + (known.empty() ? "none" : known) + ")");
    }
    double v = 0.0;
    std::size_t used = 0;
    try {
      v = std::stod(arg.substr(eq + 1), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != arg.size() - eq - 1 || !(v > 0.0) || !std::isfinite(v)) throw UsageError("--tol " + name + ": expected a positive real");
    cfg.tolerances[name] = v;
  }
}

Polytope read_body(const std::string& arg) {
  try {
    return io::polytope_from_json(io::read_json_argument(arg), "body");
  } catch (const io::ParseError&) {
    throw;
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(std::string("--body: ") + e.what());
  }
}

ValuationDescriptor read_descriptor(const std::string& arg) {
  try {
    const auto desc = io::descriptor_from_json(io::read_json_argument(arg), "val");
    validate(desc);
    return desc;
  } catch (const io::ParseError&) {
    throw;
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(std::string("--val: ") + e.what());
  }
}

std::vector<Polytope> random_bodies(std::uint64_t seed, int d, int count) {
  std::vector<Polytope> out;
  Rng rng = make_rng(seed, 0xb0d1e5);
  for (int i = 0; i < count; ++i) out.push_back(random_test_body(rng, d));
  return out;
}

// ---------------------------------------------------------------------------
// CSV projections

std::string cell(const Json& x) { return x.is_string() ? x.get<std::string>() : x.dump(); }

std::string row(std::initializer_list<std::string> cells) {
  std::string s;
  for (const auto& c : cells) s += (s.empty() ? "" : ",") + c;
  return s + "\n";
}

std::string descriptor_label(const Json& d) { return io::descriptor_from_json(d).name(); }

std::string fit_rows(const Json& r) {
  return row({cell(r["name"]), cell(r["rows"]), cell(r["cols"]), cell(r["relative_residual"]), cell(r["condition"]), cell(r["threshold"]), cell(r["pass"])});
}

std::string experiment_rows(const Json& r) {
  std::string s;
  for (std::size_t i = 0; i < r["estimates"].size(); ++i) {
    const Json& se = r["standard_errors"];
    const Json& res = r["residuals"];
    s += row({cell(r["name"]), "estimate", std::to_string(i), "", cell(r["estimates"][i]), i < se.size() ? cell(se[i]) : "", i < res.size() ? cell(res[i]) : ""});
  }
  for (std::size_t i = 0; i < r["coefficients"].size(); ++i) {
    s += row({cell(r["name"]), "coefficient", std::to_string(i), cell(r["labels"][i]), cell(r["coefficients"][i]), cell(r["coefficient_errors"][i]), ""});
  }
  for (const auto& [k, v] : r["counts"].items()) s += row({cell(r["name"]), "count", "", k, cell(v), "", ""});
  return s;
}

std::string to_csv(const Output& o) {
  const Json& j = o.doc;
  std::string s;
  if (o.kind == "value") return row({"descriptor", "value"}) + row({descriptor_label(j["descriptor"]), cell(j["value"])});
  if (o.kind == "steiner") {
    s = row({"j", "coefficient", "derivative", "fit_coefficient"});
    for (std::size_t i = 0; i < j["exact"]["coeffs"].size(); ++i) s += row({std::to_string(i), cell(j["exact"]["coeffs"][i]), cell(j["exact"]["derivatives"][i]), cell(j["fit"]["coeffs"][i])});
    return s;
  }
  if (o.kind == "translation") {
    s = row({"exponent", "coefficient"});
    for (const auto& t : j["fit"]["polynomial"]["terms"]) {
      std::string e;
      for (const auto& x : t["exponent"]) e += (e.empty() ? "" : " ") + x.dump();
      s += row({e, cell(t["coefficient"])});
    }
    return s;
  }
  if (o.kind == "fit_reports" || o.kind == "fit_report") {
    s = row({"name", "rows", "cols", "relative_residual", "condition", "threshold", "pass"});
    if (j.is_array()) {
      for (const auto& r : j) s += fit_rows(r);
    } else {
      s += fit_rows(j);
    }
    return s;
  }
  if (o.kind == "dimension_table") {
    s = row({"group", "d", "ell", "increment", "cumulative", "enumerated_increment", "enumerated_cumulative", "consistent"});
    for (const auto& e : j["entries"]) s += row({cell(j["group"]), cell(e["d"]), cell(e["ell"]), cell(e["increment"]), cell(e["cumulative"]), cell(e["enumerated_increment"]), cell(e["enumerated_cumulative"]), cell(e["consistent"])});
    return s;
  }
  if (o.kind == "experiment_reports" || o.kind == "experiment_report") {
    s = row({"name", "field", "index", "label", "value", "error", "residual"});
    if (j.is_array()) {
      for (const auto& r : j) s += experiment_rows(r);
    } else {
      s += experiment_rows(j);
    }
    return s;
  }
  if (o.kind == "mixed_report") {
    return row({"coefficient", "segments", "closed_form", "closed_form_error", "identity_residual", "fit_residual", "min_lambda_coefficient", "pass"}) +
           row({cell(j["coefficient"]), cell(j["segments"]), cell(j["closed_form"]), cell(j["closed_form_error"]), cell(j["identity_residual"]), cell(j["fit_residual"]), cell(j["min_lambda_coefficient"]), cell(j["pass"])});
  }
  if (o.kind == "monotonicity_report") {
    s = row({"trial", "outer_value", "inner_value"});
    for (const auto& v : j["violations"]) s += row({cell(v["trial"]), cell(v["outer_value"]), cell(v["inner_value"])});
    return s;
  }
  throw std::logic_error("no CSV projection for " + o.kind);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
}

int emit(const Output& o, const RunConfig& cfg) {
  const std::string text = io::dump(o.doc);
  if (io::dump(io::revalidate(o.kind, io::parse_json(text, "output"))) != text) throw std::logic_error("output does not round-trip through its schema");
  const std::string body = cfg.format == "csv" ? to_csv(o) : text;
  if (cfg.out.empty()) {
    std::cout << body << std::flush;
  } else {
    write_text(cfg.out, body);
  }
  return o.pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// subcommands

Output run_eval(const std::string& body, const std::string& val) {
  const Polytope p = read_body(body);
  const auto desc = read_descriptor(val);
  io::ValueDocument d{desc, p, evaluate(desc, p)};
  return {"value", io::to_json(d), std::isfinite(d.value)};
}

Output run_steiner(const std::string& body, const std::string& val, const RunConfig& cfg) {
  const Polytope p = read_body(body);
  const auto desc = read_descriptor(val);
  io::SteinerDocument d;
  d.descriptor = desc;
  d.body = p;
  d.exact = steiner_coefficients(desc, p);
  const SteinerFit fit = steiner_coefficients_fit(desc, p);
  d.fit = fit.polynomial;
  d.fit_residual = fit.relative_residual;
  d.overflow = fit.overflow;
  d.radius = fit.radius;
  double scale = 0.0, diff = 0.0;
  for (std::size_t i = 0; i < d.exact.coeffs.size(); ++i) {
    scale = std::max(scale, std::abs(d.exact.coeffs[i]));
    const double f = i < d.fit.coeffs.size() ? d.fit.coeffs[i] : 0.0;
    diff = std::max(diff, std::abs(d.exact.coeffs[i] - f));
  }
  d.max_difference = diff / std::max(scale, 1e-300);
  d.tolerance = cfg.tolerances.at("steiner");
  d.pass = d.max_difference <= d.tolerance;
  return {"steiner", io::to_json(d), d.pass};
}

Output run_translate(const std::string& body, const std::string& val, int j, int degree, const RunConfig& cfg) {
  const Polytope p = read_body(body);
  const auto desc = read_descriptor(val);
  if (j < 0 || j > epsilon_degree_bound(desc, p.dim)) throw UsageError("--j must lie in 0.." + std::to_string(epsilon_degree_bound(desc, p.dim)));
  if (degree < 0) degree = desc.degree();
  io::TranslationDocument d;
  d.descriptor = desc;
  d.body = p;
  d.j = j;
  d.fit = derivative_translation_polynomial(desc, j, p, degree);
  d.tolerance = cfg.tolerances.at("translation");
  d.pass = d.fit.relative_residual <= d.tolerance;
  return {"translation", io::to_json(d), d.pass};
}

Output run_verify(const std::string& check, int dim, int trials, int max_degree, const RunConfig& cfg) {
  if (dim != 2 && dim != 3) throw UsageError("--dim must be 2 or 3");
  if (trials < 1) throw UsageError("--trials must be positive");
  const auto& t = cfg.tolerances;
  std::vector<FitReport> reports;
  if (check == "additivity") reports = additivity_batch(dim, trials, cfg.seed, cfg.threads, t.at("additivity"));
  if (check == "minkowski") reports = minkowski_batch(dim, trials, cfg.seed, cfg.threads, t.at("minkowski"), t.at("overflow"));
  if (check == "degree") reports = degree_law_batch(dim, trials, cfg.seed, cfg.threads, t.at("degree"));
  if (check == "invariance") reports = invariance_batch(dim, trials, max_degree, cfg.seed, cfg.threads, t.at("invariance"));
  if (check == "identity") reports = xi_moment_identity_batch(dim, trials, cfg.seed, cfg.threads, t.at("identity"));
  if (check == "leading-form") reports = leading_form_batch(dim, trials, cfg.seed, cfg.threads, t.at("leading-form"));
  const bool pass = std::all_of(reports.begin(), reports.end(), [](const FitReport& r) { return r.pass; });
  return {"fit_reports", io::array_to_json(reports), pass};
}

Group parse_group(const std::string& g) { return g == "SO" ? Group::SO : Group::O; }

Output run_dims(const std::string& group, int dmax, int lmax) {
  const auto table = dimension_table(dmax, lmax, parse_group(group));
  return {"dimension_table", io::to_json(table), table.consistent()};
}

Output run_fit(const std::string& val, int j, double eps, int dim, int ell, const std::string& group, int bodies, const RunConfig& cfg) {
  const auto desc = read_descriptor(val);
  if (j < 0) throw UsageError("--j must be nonnegative");
  if (eps < 0.0) throw UsageError("--eps must be nonnegative");
  if (ell < 0) ell = desc.degree();
  const auto basis_size = basis_enumeration(parse_group(group), dim, ell).size();
  if (bodies <= 0) bodies = static_cast<int>(2 * basis_size);
  if (j > 0 && eps != 0.0) throw UsageError("--j and --eps cannot be combined");
  BodyFunctional target = [desc, j, eps](const Polytope& k) {
    if (j > 0) return derivative_valuation(desc, j, k);
    return eps == 0.0 ? evaluate(desc, k) : evaluate_on_parallel_body(desc, k, eps);
  };
  BasisFitOptions options;
  options.seed = derive_seed(cfg.seed, 1);
  options.threshold = cfg.tolerances.at("fit");
  auto r = fit_in_basis(target, dim, ell, random_bodies(cfg.seed, dim, bodies), parse_group(group), options);
  return {"fit_report", io::to_json(r), r.pass};
}

std::vector<Polytope> section_bodies(const std::vector<std::string>& paths, int dim, int count, std::uint64_t seed) {
  if (paths.empty()) return random_bodies(seed, dim, count);
  std::vector<Polytope> out;
  for (const auto& p : paths) {
    out.push_back(read_body(p));
    if (out.back().dim != dim) throw UsageError("--body " + p + " has dimension " + std::to_string(out.back().dim) + ", expected --dim " + std::to_string(dim));
  }
  return out;
}

Output run_sections(SectionKind kind, const std::vector<std::string>& paths, int dim, int k, int j, long long planes, int count, const RunConfig& cfg) {
  if (dim != 2 && dim != 3) throw UsageError("--dim must be 2 or 3");
  if (k < 1 || k >= dim) throw UsageError("--k must lie in 1.." + std::to_string(dim - 1));
  if (planes < 2) throw UsageError("--planes must be at least 2");
  const auto bodies = section_bodies(paths, dim, count, cfg.seed);
  const auto n = static_cast<std::size_t>(planes);
  std::vector<ExperimentReport> reports;
  if (j < 0) {
    reports = section_experiments(bodies, k, n, cfg.seed, kind, cfg.threads);
  } else if (kind == SectionKind::slice) {
    reports.push_back(crofton_experiment(bodies, k, j, n, cfg.seed, cfg.threads));
  } else {
    reports.push_back(projection_experiment(bodies, k, j, n, cfg.seed, cfg.threads));
  }
  const bool pass = std::all_of(reports.begin(), reports.end(), [](const ExperimentReport& r) { return r.pass; });
  return {"experiment_reports", io::array_to_json(reports), pass};
}

struct IneqArgs {
  std::string theorem;
  int q = 1;
  int dim = 2;
  int trials = 0;
  int zonotope_trials = 200;
  int j = 1;
  int count = 5;
  std::string body_class = "origin";
  std::vector<std::string> bodies;
  std::string archive;
};

Output run_ineq(const IneqArgs& a, const RunConfig& cfg) {
  const std::string& th = a.theorem;
  if (a.q < 0) throw UsageError("--q must be nonnegative");
  auto trials = [&](int fallback) {
    const int t = a.trials > 0 ? a.trials : fallback;
    return t;
  };
  if (th == "6.1" || th == "nonnegativity") {
    const auto r = nonneg_scan(a.q, a.dim, trials(1000), cfg.seed, cfg.threads, cfg.tolerances.at("nonneg"));
    return {"experiment_report", io::to_json(r), r.pass};
  }
  if (th == "6.2" || th == "mixed") {
    if (!a.bodies.empty()) {
      if (a.bodies.size() != 4) throw UsageError("--body must be given exactly four times for the mixed coefficient");
      std::vector<Polytope> ks;
      for (const auto& b : a.bodies) ks.push_back(read_body(b));
      const auto r = mixed_moment(ks, cfg.tolerances.at("fit"), cfg.tolerances.at("nonneg"));
      return {"mixed_report", io::to_json(r), r.pass};
    }
    std::vector<ExperimentReport> rs{segment_scan(trials(500), cfg.seed, true, cfg.threads), segment_scan(trials(500), derive_seed(cfg.seed, 1), false, cfg.threads),
                                     zonotope_scan(a.zonotope_trials, derive_seed(cfg.seed, 2), cfg.threads, cfg.tolerances.at("nonneg"))};
    const bool pass = std::all_of(rs.begin(), rs.end(), [](const ExperimentReport& r) { return r.pass; });
    return {"experiment_reports", io::array_to_json(rs), pass};
  }
  if (th == "monotonicity") {
    if (a.body_class != "origin" && a.body_class != "symmetric") throw UsageError("--class must be origin or symmetric");
    const auto r = monotonicity_scan(a.j, a.q, a.dim, a.body_class == "symmetric" ? BodyClass::symmetric : BodyClass::origin, trials(200), cfg.seed, cfg.threads, cfg.tolerances.at("monotonicity"));
    if (!a.archive.empty() && !r.violations.empty()) write_text(a.archive, io::dump(io::to_json(r)));
    return {"monotonicity_report", io::to_json(r), r.report.pass};
  }
  if (th == "search") {
    const auto r = coefficient_search(a.count, a.q, trials(50), cfg.seed, cfg.threads);
    return {"experiment_report", io::to_json(r), r.pass};
  }
  throw UsageError("unknown --theorem " + th);
}

Output run_oracle(const std::string& body, const std::string& val, long long samples, const RunConfig& cfg) {
  const Polytope p = read_body(body);
  const auto desc = read_descriptor(val);
  if (samples < 2) throw UsageError("--samples must be at least 2");
  const auto integrand = integrand_for(desc, p.dim);
  double value = 0.0, var = 0.0;
  std::uint64_t index = 0;
  for (const auto* part : {&integrand.interior, &integrand.boundary}) {
    if (part->has_value()) {
      const auto target = part == &integrand.interior ? OracleTarget::interior(**part) : OracleTarget::boundary(**part);
      const Estimate e = monte_carlo_oracle(p, target, static_cast<std::size_t>(samples), derive_seed(cfg.seed, index), cfg.threads);
      value += e.value;
      var += e.standard_error * e.standard_error;
    }
    ++index;
  }
  const double exact = evaluate(desc, p);
  const double se = std::sqrt(var);
  ExperimentReport r;
  r.name = "oracle " + desc.name() + " d=" + std::to_string(p.dim);
  r.seed = cfg.seed;
  r.parameters = {{"d", p.dim}, {"samples", static_cast<double>(samples)}, {"z", cfg.tolerances.at("z")}};
  r.estimates = {exact, value};
  r.standard_errors = {0.0, se};
  r.residuals = {value - exact};
  r.residual_norm = std::abs(value - exact);
  r.residual_bound = cfg.tolerances.at("z") * se + 1e-12 * std::abs(exact);
  r.pass = r.residual_norm <= r.residual_bound;
  r.notes = {"estimates are [exact, Monte Carlo]"};
  return {"experiment_report", io::to_json(r), r.pass};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rotval: rotation-invariant polynomial valuations on convex polytopes"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Print help for every subcommand");

  RunConfig cfg;
  std::string body, val;
  std::map<std::string, double> defaults;

  auto common = [&](CLI::App* sub, bool seeded) {
    if (seeded) {
      sub->add_option("--seed", cfg.seed, "Random seed (u64); required so that runs are replayable")->required();
    }
    sub->add_option("--threads", cfg.threads, "Worker threads; results do not depend on it")->check(CLI::PositiveNumber)->default_val(1);
    sub->add_option("--tol", cfg.tol_args, "Override a tolerance, name=value; repeatable")->allow_extra_args(false)->take_all();
    sub->add_option("--out", cfg.out, "Write the report to this path instead of stdout");
    sub->add_option("--format", cfg.format, "Report format")->check(CLI::IsMember({"json", "csv"}))->default_val("json");
  };
  auto body_val = [&](CLI::App* sub) {
    sub->add_option("--body", body, "Polytope as JSON file or inline JSON: {\"dim\":d,\"vertices\":[[...],...]}")->required();
    sub->add_option("--val", val, "Valuation as JSON file or inline JSON, e.g. {\"kind\":\"xi\",\"p\":2,\"q\":0}")->required();
  };

  auto* eval = app.add_subcommand("eval", "Evaluate a valuation on a polytope");
  body_val(eval);
  common(eval, false);

  auto* steiner = app.add_subcommand("steiner", "Eps-expansion of a valuation on parallel bodies, exact and by quadrature fit");
  body_val(steiner);
  common(steiner, false);

  int tj = 0, tdeg = -1;
  auto* translate = app.add_subcommand("translate", "Translation polynomial of a valuation or of its j-th derivative");
  body_val(translate);
  translate->add_option("--j", tj, "Derivative order in eps")->default_val(0);
  translate->add_option("--degree", tdeg, "Polynomial degree to fit (default: the valuation's degree)");
  common(translate, false);

  std::string check;
  int vdim = 2, vtrials = 0, vmaxdeg = 5;
  auto* verify = app.add_subcommand("verify", "Batch property checks; emits an array of fit reports");
  verify->add_option("check", check, "additivity | minkowski | degree | invariance | identity | leading-form")->required()->check(CLI::IsMember({"additivity", "minkowski", "degree", "invariance", "identity", "leading-form"}));
  verify->add_option("--dim", vdim, "Ambient dimension, 2 or 3")->default_val(2);
  verify->add_option("--trials", vtrials, "Random bodies, pairs or tuples (default: 200, 50, 20, 20, 100, 20 in the order above)");
  verify->add_option("--max-degree", vmaxdeg, "Largest valuation degree for invariance")->default_val(5);
  common(verify, true);

  std::string group = "O";
  int dmax = 5, lmax = 10;
  auto* dims = app.add_subcommand("dims", "Dimension tables from the closed form and by enumeration");
  dims->add_option("--group", group, "O or SO (SO only in dimension 2)")->check(CLI::IsMember({"O", "SO"}))->default_val("O");
  dims->add_option("--dmax", dmax, "Largest dimension")->default_val(5);
  dims->add_option("--lmax", lmax, "Largest degree")->default_val(10);
  common(dims, false);

  int fj = 0, fdim = 2, fell = -1, fbodies = 0;
  double feps = 0.0;
  std::string fgroup = "O";
  auto* fit = app.add_subcommand("fit", "Fit a valuation against the basis of its degree");
  fit->add_option("--val", val, "Target valuation as JSON file or inline JSON")->required();
  fit->add_option("--j", fj, "Fit the j-th eps-derivative instead")->default_val(0);
  fit->add_option("--eps", feps, "Fit the valuation of the parallel body K + eps B instead")->default_val(0.0);
  fit->add_option("--dim", fdim, "Ambient dimension")->default_val(2);
  fit->add_option("--ell", fell, "Basis degree (default: the valuation's degree)");
  fit->add_option("--group", fgroup, "O or SO")->check(CLI::IsMember({"O", "SO"}))->default_val("O");
  fit->add_option("--bodies", fbodies, "Random bodies (default: twice the basis size)");
  common(fit, true);

  std::vector<std::string> sbodies;
  int sdim = 2, sk = 1, sj = -1, scount = 6;
  long long splanes = 100000;
  auto section_flags = [&](CLI::App* sub) {
    sub->add_option("--body", sbodies, "Body as JSON file or inline JSON; repeatable (default: random bodies)");
    sub->add_option("--dim", sdim, "Ambient dimension, 2 or 3")->default_val(2);
    sub->add_option("--k", sk, "Plane dimension")->default_val(1);
    sub->add_option("--j", sj, "Single derivative order (default: 0..k+3)");
    sub->add_option("--planes", splanes, "Random planes per body")->default_val(100000);
    sub->add_option("--bodies", scount, "Number of random bodies when --body is absent")->default_val(6);
    common(sub, true);
  };
  auto* crofton = app.add_subcommand("crofton", "Monte Carlo check of the affine-plane section formula");
  section_flags(crofton);
  auto* project = app.add_subcommand("project-formula", "Monte Carlo check of the linear-plane projection formula");
  section_flags(project);

  IneqArgs ia;
  auto* ineq = app.add_subcommand("ineq", "Inequality scans");
  ineq->add_option("--theorem", ia.theorem, "6.1 | nonnegativity: Steiner coefficients of moments; 6.2 | mixed: four-body mixed coefficient; monotonicity; search: open-question scan")
      ->required()
      ->check(CLI::IsMember({"6.1", "nonnegativity", "6.2", "mixed", "monotonicity", "search"}));
  ineq->add_option("--q", ia.q, "Moment order")->default_val(1);
  ineq->add_option("--dim", ia.dim, "Ambient dimension")->default_val(2);
  ineq->add_option("--trials", ia.trials, "Random trials (default: 1000, 500, 200, 50 in the order above)");
  ineq->add_option("--zonotope-trials", ia.zonotope_trials, "Zonotope tuples for the mixed coefficient")->default_val(200);
  ineq->add_option("--j", ia.j, "Derivative order for monotonicity")->default_val(1);
  ineq->add_option("--class", ia.body_class, "Body class for monotonicity: origin or symmetric")->default_val("origin");
  ineq->add_option("--count", ia.count, "Bodies per tuple for search")->default_val(5);
  ineq->add_option("--body", ia.bodies, "Four bodies for a single mixed coefficient; repeatable");
  ineq->add_option("--archive", ia.archive, "Write monotonicity violations, with full coordinates, to this path");
  common(ineq, true);

  long long osamples = 1000000;
  auto* oracle = app.add_subcommand("oracle", "Compare the exact value with a Monte Carlo estimate");
  body_val(oracle);
  oracle->add_option("--samples", osamples, "Monte Carlo samples per integral")->default_val(1000000);
  common(oracle, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    Output o;
    if (*eval) {
      resolve_tolerances(cfg, {});
      o = run_eval(body, val);
    } else if (*steiner) {
      resolve_tolerances(cfg, {{"steiner", 1e-6}});
      o = run_steiner(body, val, cfg);
    } else if (*translate) {
      resolve_tolerances(cfg, {{"translation", 1e-8}});
      o = run_translate(body, val, tj, tdeg, cfg);
    } else if (*verify) {
      resolve_tolerances(cfg, {{"additivity", 1e-9}, {"minkowski", 1e-8}, {"overflow", 1e-6}, {"degree", 1e-8}, {"invariance", 1e-9}, {"identity", 1e-9}, {"leading-form", 1e-8}});
      const std::map<std::string, int> trials{{"additivity", 200}, {"minkowski", 50}, {"degree", 20}, {"invariance", 20}, {"identity", 100}, {"leading-form", 20}};
      o = run_verify(check, vdim, vtrials > 0 ? vtrials : trials.at(check), vmaxdeg, cfg);
    } else if (*dims) {
      resolve_tolerances(cfg, {});
      o = run_dims(group, dmax, lmax);
    } else if (*fit) {
      resolve_tolerances(cfg, {{"fit", 1e-6}});
      o = run_fit(val, fj, feps, fdim, fell, fgroup, fbodies, cfg);
    } else if (*crofton || *project) {
      resolve_tolerances(cfg, {});
      o = run_sections(*crofton ? SectionKind::slice : SectionKind::project, sbodies, sdim, sk, sj, splanes, scount, cfg);
    } else if (*ineq) {
      resolve_tolerances(cfg, {{"nonneg", 1e-9}, {"monotonicity", 1e-9}, {"fit", 1e-8}});
      o = run_ineq(ia, cfg);
    } else if (*oracle) {
      resolve_tolerances(cfg, {{"z", 4.0}});
      o = run_oracle(body, val, osamples, cfg);
    }
    return emit(o, cfg);
  } catch (const io::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failed: " << e.what() << "\n";
    return 1;
  }
}

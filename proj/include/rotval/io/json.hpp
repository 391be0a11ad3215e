#pragma once

#include <json.hpp>

#include "rotval/core/polytope.hpp"
#include "rotval/core/report.hpp"
#include "rotval/inequalities/scans.hpp"
#include "rotval/valuations/descriptor.hpp"
#include "rotval/valuations/epsilon_polynomial.hpp"
#include "rotval/valuations/translation.hpp"
#include "rotval/verify/dimension.hpp"
#include "rotval/verify/fit.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace rotval::io {

using Json = nlohmann::ordered_json;

/// Malformed JSON text; line and column are 1-based and point at the last
/// character the parser read, i.e. the end of the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, int line, int column, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what), line(line), column(column) {}
  int line;
  int column;
};

/// Well-formed JSON that does not match the expected schema.
class SchemaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline Json parse_json(const std::string& text, const std::string& source = "<input>") {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // e.byte is the 1-based offset of the offending character
    const std::size_t stop = std::min(text.size(), e.byte == 0 ? std::size_t{0} : e.byte - 1);
    int line = 1, column = 1;
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string msg = e.what();
    const auto colon = msg.rfind(": ");
    if (colon != std::string::npos) msg = msg.substr(colon + 2);
    throw ParseError(source, line, column, msg);
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Inline JSON when the argument starts with '{' or '[', a file path otherwise.
inline Json read_json_argument(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return parse_json(arg, "<argument>");
  return parse_json(read_text_file(arg), arg);
}

/// Canonical text form: two-space indentation and a trailing newline.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// numbers: non-finite values are written as the strings "inf", "-inf", "nan"

inline Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

inline Json numbers(const std::vector<double>& xs) {
  Json a = Json::array();
  for (double x : xs) a.push_back(number(x));
  return a;
}

inline Json number_map(const std::map<std::string, double>& m) {
  Json o = Json::object();
  for (const auto& [k, v] : m) o[k] = number(v);
  return o;
}

namespace detail {

inline void fail(const std::string& path, const std::string& what) { throw SchemaError(path + ": " + what); }

inline void expect_object(const Json& j, const std::string& path, std::initializer_list<const char*> required, std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) fail(path, "expected an object");
  std::set<std::string> allowed;
  for (const char* k : required) {
    allowed.insert(k);
    if (!j.contains(k)) fail(path, std::string("missing field \"") + k + "\"");
  }
  for (const char* k : optional) allowed.insert(k);
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) fail(path, "unknown field \"" + item.key() + "\"");
  }
}

inline double get_number(const Json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  fail(path, "expected a number");
  return 0.0;
}

inline long long get_integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long long>();
}

inline std::uint64_t get_unsigned(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) fail(path, "expected a nonnegative integer");
  return j.get<std::uint64_t>();
}

inline bool get_bool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected a boolean");
  return j.get<bool>();
}

inline std::string get_string(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

inline std::vector<double> get_numbers(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_number(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::vector<std::string> get_strings(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_string(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::map<std::string, double> get_number_map(const Json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object of numbers");
  std::map<std::string, double> out;
  for (const auto& item : j.items()) out[item.key()] = get_number(item.value(), path + "." + item.key());
  return out;
}

inline int get_int(const Json& j, const std::string& path) {
  const long long v = get_integer(j, path);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) fail(path, "integer out of range");
  return static_cast<int>(v);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// polytopes and hyperplanes

/// {"dim": d, "vertices": [[...], ...]}; vertices are written in
/// lexicographic order so the text form does not depend on construction.
inline Json to_json(const Polytope& p) {
  std::vector<std::vector<double>> vs;
  for (const auto& v : p.vertices) vs.emplace_back(v.data(), v.data() + v.size());
  std::sort(vs.begin(), vs.end());
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(numbers(v));
  return Json{{"dim", p.dim}, {"vertices", a}};
}

inline Polytope polytope_from_json(const Json& j, const std::string& path = "polytope") {
  detail::expect_object(j, path, {"dim", "vertices"});
  const int dim = detail::get_int(j["dim"], path + ".dim");
  if (dim < 1) detail::fail(path + ".dim", "dimension must be positive");
  if (!j["vertices"].is_array()) detail::fail(path + ".vertices", "expected an array of points");
  std::vector<Vec> pts;
  for (std::size_t i = 0; i < j["vertices"].size(); ++i) {
    const std::string vp = path + ".vertices[" + std::to_string(i) + "]";
    const auto xs = detail::get_numbers(j["vertices"][i], vp);
    if (static_cast<int>(xs.size()) != dim) detail::fail(vp, "point has " + std::to_string(xs.size()) + " coordinates, expected " + std::to_string(dim));
    for (double x : xs) {
      if (!std::isfinite(x)) detail::fail(vp, "coordinates must be finite");
    }
    pts.push_back(Eigen::Map<const Vec>(xs.data(), dim));
  }
  if (pts.empty()) detail::fail(path + ".vertices", "at least one vertex is required");
  try {
    return build_polytope(pts, dim);
  } catch (const GeometryError& e) {
    detail::fail(path, e.what());
  }
  return {};
}

inline Json to_json(const Hyperplane& h) { return Json{{"normal", numbers(std::vector<double>(h.normal.data(), h.normal.data() + h.normal.size()))}, {"offset", number(h.offset)}}; }

inline Hyperplane hyperplane_from_json(const Json& j, const std::string& path = "hyperplane") {
  detail::expect_object(j, path, {"normal", "offset"});
  const auto n = detail::get_numbers(j["normal"], path + ".normal");
  if (n.empty()) detail::fail(path + ".normal", "empty normal");
  const Vec v = Eigen::Map<const Vec>(n.data(), static_cast<Eigen::Index>(n.size()));
  try {
    return make_hyperplane(v, detail::get_number(j["offset"], path + ".offset"), 1e-9);
  } catch (const GeometryError& e) {
    detail::fail(path, e.what());
  }
  return {};
}

// ---------------------------------------------------------------------------
// descriptors and eps-polynomials

inline Json to_json(const ValuationDescriptor& d) {
  switch (d.kind) {
    case ValuationDescriptor::Kind::moment:
      return Json{{"kind", "moment"}, {"m", d.m}};
    case ValuationDescriptor::Kind::xi:
      return Json{{"kind", "xi"}, {"p", d.p}, {"q", d.q}};
    case ValuationDescriptor::Kind::psi:
      return Json{{"kind", "psi"}, {"p", d.p}, {"q", d.q}};
  }
  return {};
}

inline ValuationDescriptor descriptor_from_json(const Json& j, const std::string& path = "descriptor") {
  if (!j.is_object() || !j.contains("kind")) detail::fail(path, "expected an object with a \"kind\" field");
  const std::string kind = detail::get_string(j["kind"], path + ".kind");
  auto index = [&](const char* key) {
    const int v = detail::get_int(j[key], path + "." + key);
    if (v < 0) detail::fail(path + "." + key, "must be nonnegative");
    return v;
  };
  if (kind == "moment") {
    detail::expect_object(j, path, {"kind", "m"});
    return ValuationDescriptor::moment(index("m"));
  }
  if (kind == "xi" || kind == "psi") {
    detail::expect_object(j, path, {"kind", "p", "q"});
    return kind == "xi" ? ValuationDescriptor::xi(index("p"), index("q")) : ValuationDescriptor::psi(index("p"), index("q"));
  }
  detail::fail(path + ".kind", "unknown kind \"" + kind + "\" (expected moment, xi or psi)");
  return {};
}

inline Json to_json(const EpsilonPolynomial& e) { return Json{{"degree_bound", e.degree_bound}, {"coeffs", numbers(e.coeffs)}, {"derivatives", numbers(e.derivatives())}}; }

inline EpsilonPolynomial epsilon_polynomial_from_json(const Json& j, const std::string& path = "polynomial") {
  detail::expect_object(j, path, {"degree_bound", "coeffs", "derivatives"});
  EpsilonPolynomial e;
  e.degree_bound = detail::get_int(j["degree_bound"], path + ".degree_bound");
  e.coeffs = detail::get_numbers(j["coeffs"], path + ".coeffs");
  const auto der = detail::get_numbers(j["derivatives"], path + ".derivatives");
  if (der.size() != e.coeffs.size()) detail::fail(path + ".derivatives", "length differs from coeffs");
  const auto expect = e.derivatives();
  for (std::size_t i = 0; i < der.size(); ++i) {
    if (!(std::abs(der[i] - expect[i]) <= 1e-12 * std::max(1.0, std::abs(expect[i])))) detail::fail(path + ".derivatives[" + std::to_string(i) + "]", "is not j! times the coefficient");
  }
  return e;
}

inline Json to_json(const MultiPoly& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back(Json{{"exponent", e}, {"coefficient", number(c)}});
  return Json{{"nvars", p.nvars()}, {"terms", terms}};
}

inline MultiPoly multipoly_from_json(const Json& j, const std::string& path = "polynomial") {
  detail::expect_object(j, path, {"nvars", "terms"});
  const int n = detail::get_int(j["nvars"], path + ".nvars");
  if (n < 0) detail::fail(path + ".nvars", "must be nonnegative");
  if (!j["terms"].is_array()) detail::fail(path + ".terms", "expected an array");
  MultiPoly p(n);
  for (std::size_t i = 0; i < j["terms"].size(); ++i) {
    const std::string tp = path + ".terms[" + std::to_string(i) + "]";
    const Json& t = j["terms"][i];
    detail::expect_object(t, tp, {"exponent", "coefficient"});
    if (!t["exponent"].is_array() || static_cast<int>(t["exponent"].size()) != n) detail::fail(tp + ".exponent", "expected " + std::to_string(n) + " integers");
    Exponent e;
    for (std::size_t k = 0; k < t["exponent"].size(); ++k) {
      const int v = detail::get_int(t["exponent"][k], tp + ".exponent");
      if (v < 0) detail::fail(tp + ".exponent", "exponents must be nonnegative");
      e.push_back(v);
    }
    p.add_term(e, detail::get_number(t["coefficient"], tp + ".coefficient"));
  }
  return p;
}

inline Json to_json(const TranslationFit& f) {
  return Json{{"degree", f.degree}, {"polynomial", to_json(f.polynomial)}, {"relative_residual", number(f.relative_residual)}, {"refit_residual", number(f.refit_residual)}, {"condition", number(f.condition)}, {"samples", f.samples}};
}

inline TranslationFit translation_fit_from_json(const Json& j, const std::string& path = "translation") {
  detail::expect_object(j, path, {"degree", "polynomial", "relative_residual", "refit_residual", "condition", "samples"});
  TranslationFit f;
  f.degree = detail::get_int(j["degree"], path + ".degree");
  f.polynomial = multipoly_from_json(j["polynomial"], path + ".polynomial");
  f.relative_residual = detail::get_number(j["relative_residual"], path + ".relative_residual");
  f.refit_residual = detail::get_number(j["refit_residual"], path + ".refit_residual");
  f.condition = detail::get_number(j["condition"], path + ".condition");
  f.samples = detail::get_unsigned(j["samples"], path + ".samples");
  return f;
}

// ---------------------------------------------------------------------------
// reports

inline Json to_json(const FitReport& r) {
  return Json{{"name", r.name}, {"rows", r.rows}, {"cols", r.cols}, {"labels", r.labels}, {"coefficients", numbers(r.coefficients)}, {"relative_residual", number(r.relative_residual)}, {"condition", number(r.condition)}, {"threshold", number(r.threshold)}, {"pass", r.pass}, {"extras", number_map(r.extras)}};
}

inline FitReport fit_report_from_json(const Json& j, const std::string& path = "report") {
  detail::expect_object(j, path, {"name", "rows", "cols", "labels", "coefficients", "relative_residual", "condition", "threshold", "pass", "extras"});
  FitReport r;
  r.name = detail::get_string(j["name"], path + ".name");
  r.rows = detail::get_unsigned(j["rows"], path + ".rows");
  r.cols = detail::get_unsigned(j["cols"], path + ".cols");
  r.labels = detail::get_strings(j["labels"], path + ".labels");
  r.coefficients = detail::get_numbers(j["coefficients"], path + ".coefficients");
  if (r.labels.size() != r.coefficients.size()) detail::fail(path + ".labels", "one label per coefficient is required");
  r.relative_residual = detail::get_number(j["relative_residual"], path + ".relative_residual");
  r.condition = detail::get_number(j["condition"], path + ".condition");
  r.threshold = detail::get_number(j["threshold"], path + ".threshold");
  r.pass = detail::get_bool(j["pass"], path + ".pass");
  r.extras = detail::get_number_map(j["extras"], path + ".extras");
  return r;
}

inline Json to_json(const ExperimentReport& r) {
  Json notes = Json::array();
  for (const auto& n : r.notes) notes.push_back(n);
  return Json{{"name", r.name},
              {"seed", r.seed},
              {"parameters", number_map(r.parameters)},
              {"estimates", numbers(r.estimates)},
              {"standard_errors", numbers(r.standard_errors)},
              {"labels", r.labels},
              {"coefficients", numbers(r.coefficients)},
              {"coefficient_errors", numbers(r.coefficient_errors)},
              {"residuals", numbers(r.residuals)},
              {"residual_norm", number(r.residual_norm)},
              {"residual_bound", number(r.residual_bound)},
              {"pass", r.pass},
              {"counts", number_map(r.counts)},
              {"notes", notes}};
}

inline ExperimentReport experiment_report_from_json(const Json& j, const std::string& path = "report") {
  detail::expect_object(j, path, {"name", "seed", "parameters", "estimates", "standard_errors", "labels", "coefficients", "coefficient_errors", "residuals", "residual_norm", "residual_bound", "pass", "counts", "notes"});
  ExperimentReport r;
  r.name = detail::get_string(j["name"], path + ".name");
  r.seed = detail::get_unsigned(j["seed"], path + ".seed");
  r.parameters = detail::get_number_map(j["parameters"], path + ".parameters");
  r.estimates = detail::get_numbers(j["estimates"], path + ".estimates");
  r.standard_errors = detail::get_numbers(j["standard_errors"], path + ".standard_errors");
  r.labels = detail::get_strings(j["labels"], path + ".labels");
  r.coefficients = detail::get_numbers(j["coefficients"], path + ".coefficients");
  r.coefficient_errors = detail::get_numbers(j["coefficient_errors"], path + ".coefficient_errors");
  if (r.labels.size() != r.coefficients.size() || r.coefficient_errors.size() != r.coefficients.size()) detail::fail(path + ".coefficients", "labels, coefficients and errors must have equal length");
  r.residuals = detail::get_numbers(j["residuals"], path + ".residuals");
  r.residual_norm = detail::get_number(j["residual_norm"], path + ".residual_norm");
  r.residual_bound = detail::get_number(j["residual_bound"], path + ".residual_bound");
  r.pass = detail::get_bool(j["pass"], path + ".pass");
  r.counts = detail::get_number_map(j["counts"], path + ".counts");
  r.notes = detail::get_strings(j["notes"], path + ".notes");
  return r;
}

inline Json to_json(const DimensionTable& t) {
  Json entries = Json::array();
  for (const auto& e : t.entries) {
    entries.push_back(Json{{"d", e.d}, {"ell", e.ell}, {"increment", e.increment}, {"cumulative", e.cumulative}, {"enumerated_increment", e.enumerated_increment}, {"enumerated_cumulative", e.enumerated_cumulative}, {"consistent", e.consistent()}});
  }
  return Json{{"group", t.group == Group::O ? "O" : "SO"}, {"consistent", t.consistent()}, {"entries", entries}};
}

inline DimensionTable dimension_table_from_json(const Json& j, const std::string& path = "table") {
  detail::expect_object(j, path, {"group", "consistent", "entries"});
  DimensionTable t;
  const std::string g = detail::get_string(j["group"], path + ".group");
  if (g != "O" && g != "SO") detail::fail(path + ".group", "expected \"O\" or \"SO\"");
  t.group = g == "O" ? Group::O : Group::SO;
  if (!j["entries"].is_array()) detail::fail(path + ".entries", "expected an array");
  for (std::size_t i = 0; i < j["entries"].size(); ++i) {
    const std::string ep = path + ".entries[" + std::to_string(i) + "]";
    const Json& e = j["entries"][i];
    detail::expect_object(e, ep, {"d", "ell", "increment", "cumulative", "enumerated_increment", "enumerated_cumulative", "consistent"});
    DimensionEntry x;
    x.d = detail::get_int(e["d"], ep + ".d");
    x.ell = detail::get_int(e["ell"], ep + ".ell");
    x.increment = detail::get_integer(e["increment"], ep + ".increment");
    x.cumulative = detail::get_integer(e["cumulative"], ep + ".cumulative");
    x.enumerated_increment = detail::get_integer(e["enumerated_increment"], ep + ".enumerated_increment");
    x.enumerated_cumulative = detail::get_integer(e["enumerated_cumulative"], ep + ".enumerated_cumulative");
    if (detail::get_bool(e["consistent"], ep + ".consistent") != x.consistent()) detail::fail(ep + ".consistent", "does not match the counts");
    t.entries.push_back(x);
  }
  if (detail::get_bool(j["consistent"], path + ".consistent") != t.consistent()) detail::fail(path + ".consistent", "does not match the entries");
  return t;
}

inline Json to_json(const MixedCoefficientReport& r) {
  Json mons = Json::array();
  for (const auto& e : r.monomials) mons.push_back(e);
  return Json{{"bodies", r.bodies},
              {"coefficient", number(r.coefficient)},
              {"segments", r.segments},
              {"closed_form", number(r.closed_form)},
              {"closed_form_error", number(r.closed_form_error)},
              {"identity_residual", number(r.identity_residual)},
              {"fit_residual", number(r.fit_residual)},
              {"monomials", mons},
              {"lambda_coefficients", numbers(r.lambda_coefficients)},
              {"min_lambda_coefficient", number(r.min_lambda_coefficient)},
              {"nonnegative", r.nonnegative},
              {"pass", r.pass}};
}

inline MixedCoefficientReport mixed_report_from_json(const Json& j, const std::string& path = "mixed") {
  detail::expect_object(j, path, {"bodies", "coefficient", "segments", "closed_form", "closed_form_error", "identity_residual", "fit_residual", "monomials", "lambda_coefficients", "min_lambda_coefficient", "nonnegative", "pass"});
  MixedCoefficientReport r;
  r.bodies = detail::get_strings(j["bodies"], path + ".bodies");
  r.coefficient = detail::get_number(j["coefficient"], path + ".coefficient");
  r.segments = detail::get_bool(j["segments"], path + ".segments");
  r.closed_form = detail::get_number(j["closed_form"], path + ".closed_form");
  r.closed_form_error = detail::get_number(j["closed_form_error"], path + ".closed_form_error");
  r.identity_residual = detail::get_number(j["identity_residual"], path + ".identity_residual");
  r.fit_residual = detail::get_number(j["fit_residual"], path + ".fit_residual");
  if (!j["monomials"].is_array()) detail::fail(path + ".monomials", "expected an array");
  for (std::size_t i = 0; i < j["monomials"].size(); ++i) {
    Exponent e;
    const Json& m = j["monomials"][i];
    if (!m.is_array()) detail::fail(path + ".monomials", "expected exponent arrays");
    for (const auto& x : m) e.push_back(detail::get_int(x, path + ".monomials"));
    r.monomials.push_back(e);
  }
  r.lambda_coefficients = detail::get_numbers(j["lambda_coefficients"], path + ".lambda_coefficients");
  if (r.lambda_coefficients.size() != r.monomials.size()) detail::fail(path + ".lambda_coefficients", "one coefficient per monomial is required");
  r.min_lambda_coefficient = detail::get_number(j["min_lambda_coefficient"], path + ".min_lambda_coefficient");
  r.nonnegative = detail::get_bool(j["nonnegative"], path + ".nonnegative");
  r.pass = detail::get_bool(j["pass"], path + ".pass");
  return r;
}

inline Json to_json(const MonotonicityReport& r) {
  Json vs = Json::array();
  for (const auto& v : r.violations) {
    vs.push_back(Json{{"trial", v.trial}, {"outer", to_json(v.outer)}, {"inner", to_json(v.inner)}, {"outer_value", number(v.outer_value)}, {"inner_value", number(v.inner_value)}});
  }
  return Json{{"report", to_json(r.report)}, {"violations", vs}};
}

inline MonotonicityReport monotonicity_report_from_json(const Json& j, const std::string& path = "monotonicity") {
  detail::expect_object(j, path, {"report", "violations"});
  MonotonicityReport r;
  r.report = experiment_report_from_json(j["report"], path + ".report");
  if (!j["violations"].is_array()) detail::fail(path + ".violations", "expected an array");
  for (std::size_t i = 0; i < j["violations"].size(); ++i) {
    const std::string vp = path + ".violations[" + std::to_string(i) + "]";
    const Json& v = j["violations"][i];
    detail::expect_object(v, vp, {"trial", "outer", "inner", "outer_value", "inner_value"});
    r.violations.push_back({static_cast<std::size_t>(detail::get_unsigned(v["trial"], vp + ".trial")), polytope_from_json(v["outer"], vp + ".outer"), polytope_from_json(v["inner"], vp + ".inner"), detail::get_number(v["outer_value"], vp + ".outer_value"), detail::get_number(v["inner_value"], vp + ".inner_value")});
  }
  return r;
}

template <class T, class F>
std::vector<T> array_from_json(const Json& j, const std::string& path, F parse) {
  if (!j.is_array()) detail::fail(path, "expected an array");
  std::vector<T> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

template <class T>
Json array_to_json(const std::vector<T>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(to_json(x));
  return a;
}

}  // namespace rotval::io

#pragma once

#include "rotval/io/json.hpp"
#include "rotval/valuations/evaluate.hpp"

namespace rotval::io {

/// Output of `eval`.
struct ValueDocument {
  ValuationDescriptor descriptor;
  Polytope body;
  double value = 0.0;
};

/// Output of `steiner`: the exact eps-polynomial and the independent
/// quadrature fit of the same parallel-body values.
struct SteinerDocument {
  ValuationDescriptor descriptor;
  Polytope body;
  EpsilonPolynomial exact;
  EpsilonPolynomial fit;
  double fit_residual = 0.0;
  double overflow = 0.0;
  double radius = 0.0;
  double max_difference = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Output of `translate`.
struct TranslationDocument {
  ValuationDescriptor descriptor;
  Polytope body;
  int j = 0;
  TranslationFit fit;
  double tolerance = 0.0;
  bool pass = false;
};

inline Json to_json(const ValueDocument& d) { return Json{{"descriptor", to_json(d.descriptor)}, {"body", to_json(d.body)}, {"value", number(d.value)}}; }

inline ValueDocument value_document_from_json(const Json& j, const std::string& path = "eval") {
  detail::expect_object(j, path, {"descriptor", "body", "value"});
  return {descriptor_from_json(j["descriptor"], path + ".descriptor"), polytope_from_json(j["body"], path + ".body"), detail::get_number(j["value"], path + ".value")};
}

inline Json to_json(const SteinerDocument& d) {
  return Json{{"descriptor", to_json(d.descriptor)},
              {"body", to_json(d.body)},
              {"exact", to_json(d.exact)},
              {"fit", to_json(d.fit)},
              {"fit_residual", number(d.fit_residual)},
              {"overflow", number(d.overflow)},
              {"radius", number(d.radius)},
              {"max_difference", number(d.max_difference)},
              {"tolerance", number(d.tolerance)},
              {"pass", d.pass}};
}

inline SteinerDocument steiner_document_from_json(const Json& j, const std::string& path = "steiner") {
  detail::expect_object(j, path, {"descriptor", "body", "exact", "fit", "fit_residual", "overflow", "radius", "max_difference", "tolerance", "pass"});
  SteinerDocument d;
  d.descriptor = descriptor_from_json(j["descriptor"], path + ".descriptor");
  d.body = polytope_from_json(j["body"], path + ".body");
  d.exact = epsilon_polynomial_from_json(j["exact"], path + ".exact");
  d.fit = epsilon_polynomial_from_json(j["fit"], path + ".fit");
  d.fit_residual = detail::get_number(j["fit_residual"], path + ".fit_residual");
  d.overflow = detail::get_number(j["overflow"], path + ".overflow");
  d.radius = detail::get_number(j["radius"], path + ".radius");
  d.max_difference = detail::get_number(j["max_difference"], path + ".max_difference");
  d.tolerance = detail::get_number(j["tolerance"], path + ".tolerance");
  d.pass = detail::get_bool(j["pass"], path + ".pass");
  return d;
}

inline Json to_json(const TranslationDocument& d) {
  return Json{{"descriptor", to_json(d.descriptor)}, {"body", to_json(d.body)}, {"j", d.j}, {"fit", to_json(d.fit)}, {"tolerance", number(d.tolerance)}, {"pass", d.pass}};
}

inline TranslationDocument translation_document_from_json(const Json& j, const std::string& path = "translate") {
  detail::expect_object(j, path, {"descriptor", "body", "j", "fit", "tolerance", "pass"});
  TranslationDocument d;
  d.descriptor = descriptor_from_json(j["descriptor"], path + ".descriptor");
  d.body = polytope_from_json(j["body"], path + ".body");
  d.j = detail::get_int(j["j"], path + ".j");
  d.fit = translation_fit_from_json(j["fit"], path + ".fit");
  d.tolerance = detail::get_number(j["tolerance"], path + ".tolerance");
  d.pass = detail::get_bool(j["pass"], path + ".pass");
  return d;
}

/// Validates an output document of a CLI command against its schema and
/// returns its canonical re-serialization (parse, then serialize again).
inline Json revalidate(const std::string& kind, const Json& j) {
  if (kind == "value") return to_json(value_document_from_json(j));
  if (kind == "steiner") return to_json(steiner_document_from_json(j));
  if (kind == "translation") return to_json(translation_document_from_json(j));
  if (kind == "fit_reports") return array_to_json(array_from_json<FitReport>(j, "reports", fit_report_from_json));
  if (kind == "fit_report") return to_json(fit_report_from_json(j));
  if (kind == "dimension_table") return to_json(dimension_table_from_json(j));
  if (kind == "experiment_reports") return array_to_json(array_from_json<ExperimentReport>(j, "reports", experiment_report_from_json));
  if (kind == "experiment_report") return to_json(experiment_report_from_json(j));
  if (kind == "mixed_report") return to_json(mixed_report_from_json(j));
  if (kind == "monotonicity_report") return to_json(monotonicity_report_from_json(j));
  throw std::invalid_argument("unknown document kind " + kind);
}

}  // namespace rotval::io

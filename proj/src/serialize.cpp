#include "qcopy/serialize.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace qcopy {
namespace {

Json number(double x) { return std::isfinite(x) ? Json(round_sig(x)) : Json(nullptr); }

Json complex_pair(Complex z) { return Json::array({number(z.real()), number(z.imag())}); }

Json matrix_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_pair(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  const double r = round_sig(x);
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, r);
  return std::string(buf, res.ptr);
}

double round_sig(double x) {
  if (x == 0.0) return 0.0;  // folds -0 into 0
  if (!std::isfinite(x)) return x;
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, kSignificantDigits);
  double out = 0.0;
  std::from_chars(buf, res.ptr, out);
  return out;
}

Json to_json(const DistanceReport& report) {
  Json j;
  for (Metric m : kAllMetrics) j[std::string(metric_name(m))] = number(report.get(m));
  return j;
}

Json to_json(const CloningMachine& machine) {
  Json columns = Json::array();
  for (std::size_t s = 0; s < 2; ++s) {
    Json col = Json::array();
    const Ket& c = machine.column(s);
    for (std::size_t i = 0; i < c.dim(); ++i) col.push_back(complex_pair(c[i]));
    columns.push_back(std::move(col));
  }
  Json j;
  j["label"] = machine.label();
  j["machine_dim"] = machine.machine_dim();
  j["columns"] = std::move(columns);
  return j;
}

Json to_json(const MachineGram& gram) {
  Json j;
  j["labels"] = gram.labels();
  j["matrix"] = matrix_json(gram.gram());
  return j;
}

Json to_json(const SearchResult& result) {
  Json j;
  j["target"] = result.target;
  j["best_param"] = result.best_param ? number(*result.best_param) : Json(nullptr);
  j["objective"] = number(result.objective);
  j["flatness_residual"] = number(result.flatness_residual);
  j["iterations"] = result.iterations;
  j["realizable"] = result.realizable;
  j["value_metric"] = result.value_metric;
  j["value"] = number(result.value);
  j["gram"] = result.gram ? to_json(*result.gram) : Json(nullptr);
  return j;
}

Json to_json(const AverageComparison& comparison) {
  Json rows = Json::array();
  for (const auto& r : comparison.rows) {
    rows.push_back(Json{{"machine", r.machine}, {"metric", r.metric}, {"average", number(r.average)}});
  }
  Json j;
  j["rows"] = std::move(rows);
  j["ratio_d_a"] = number(comparison.ratio_d_a);
  j["ratio_d_ab_2"] = number(comparison.ratio_d_ab_2);
  return j;
}

std::string csv_header() {
  std::string h = "param";
  for (Metric m : kAllMetrics) {
    h += ',';
    h += metric_name(m);
  }
  return h;
}

std::string to_csv(const SweepTable& table) {
  std::ostringstream os;
  os << csv_header() << '\n';
  for (const auto& row : table.rows) {
    os << format_number(row.param);
    for (Metric m : kAllMetrics) os << ',' << format_number(row.report.get(m));
    os << '\n';
  }
  return os.str();
}

Json to_json(const SweepTable& table) {
  Json rows = Json::array();
  for (const auto& row : table.rows) {
    Json r;
    r["param"] = number(row.param);
    const Json report = to_json(row.report);
    for (const auto& [k, v] : report.items()) r[k] = v;
    rows.push_back(std::move(r));
  }
  Json j;
  j["machine"] = table.machine;
  j["param"] = table.param_name;
  j["rows"] = std::move(rows);
  return j;
}

}  // namespace qcopy

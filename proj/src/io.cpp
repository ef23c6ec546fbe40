#include "stieltjes/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "stieltjes/errors.hpp"

namespace stieltjes {

using nlohmann::json;

namespace {

json limit_to_json(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double limit_from_json(const json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw validation_error("density JSON: unknown limit string '" + s + "'");
  }
  return j.get<double>();
}

json complex_to_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

const char* direction_name(Direction d) {
  switch (d) {
    case Direction::increasing: return "increasing";
    case Direction::decreasing: return "decreasing";
    default: return "constant";
  }
}

Direction direction_from(const std::string& s) {
  if (s == "increasing") return Direction::increasing;
  if (s == "decreasing") return Direction::decreasing;
  if (s == "constant") return Direction::constant;
  throw validation_error("density JSON: unknown direction '" + s + "'");
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string measure_to_json(const Measure& m) {
  json j;
  j["version"] = kVersion;
  j["atoms"] = json::array();
  for (const auto& a : m.atoms) j["atoms"].push_back({{"x", a.location}, {"w", a.weight}});
  j["components"] = json::array();
  for (const auto& c : m.components) {
    json jc;
    jc["interval"] = {c.lo, c.hi};
    jc["alpha"] = c.alpha;
    jc["beta"] = c.beta;
    jc["basis"] = c.basis == Basis::chebyshevU ? "chebyshevU" : "generalOP";
    jc["coeffs"] = c.coeffs;
    if (c.normalization != 1.0) jc["Z"] = c.normalization;
    if (c.recurrence) {
      json rows = json::array();
      for (const auto& r : c.recurrence->rows) rows.push_back({r.a, r.b, r.c});
      jc["recurrence"] = {{"rows", rows}, {"mu0", c.recurrence->mu0}};
    }
    j["components"].push_back(jc);
  }
  return j.dump(2);
}

Measure measure_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw validation_error(std::string("measure JSON: parse failure: ") + e.what());
  }
  Measure m;
  try {
    for (const auto& ja : j.value("atoms", json::array()))
      m.atoms.push_back({ja.at("x").get<double>(), ja.at("w").get<double>()});
    for (const auto& jc : j.value("components", json::array())) {
      ACComponent c;
      c.lo = jc.at("interval").at(0).get<double>();
      c.hi = jc.at("interval").at(1).get<double>();
      c.alpha = jc.at("alpha").get<double>();
      c.beta = jc.at("beta").get<double>();
      std::string basis = jc.at("basis").get<std::string>();
      if (basis == "chebyshevU")
        c.basis = Basis::chebyshevU;
      else if (basis == "generalOP")
        c.basis = Basis::generalOP;
      else
        throw validation_error("measure JSON: unknown basis '" + basis + "'");
      c.coeffs = jc.at("coeffs").get<std::vector<double>>();
      c.normalization = jc.value("Z", 1.0);
      if (jc.contains("recurrence")) {
        Recurrence rec;
        rec.mu0 = jc["recurrence"].at("mu0").get<double>();
        for (const auto& row : jc["recurrence"].at("rows"))
          rec.rows.push_back({row.at(0).get<double>(), row.at(1).get<double>(),
                              row.at(2).get<double>()});
        c.recurrence = std::move(rec);
      }
      m.components.push_back(std::move(c));
    }
  } catch (const json::exception& e) {
    throw validation_error(std::string("measure JSON: ") + e.what());
  }
  return m;
}

std::string density_to_json(const PiecewiseMonotoneDensity& d) {
  json j;
  j["version"] = kVersion;
  j["pieces"] = json::array();
  for (const auto& p : d.pieces)
    j["pieces"].push_back({{"interval", {p.lo, p.hi}},
                           {"direction", direction_name(p.direction)},
                           {"left_limit", limit_to_json(p.left_limit)},
                           {"right_limit", limit_to_json(p.right_limit)}});
  return j.dump(2);
}

PiecewiseMonotoneDensity density_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw validation_error(std::string("density JSON: parse failure: ") + e.what());
  }
  PiecewiseMonotoneDensity d;
  try {
    for (const auto& jp : j.at("pieces")) {
      DensityPiece p;
      p.lo = jp.at("interval").at(0).get<double>();
      p.hi = jp.at("interval").at(1).get<double>();
      p.direction = direction_from(jp.at("direction").get<std::string>());
      p.left_limit = limit_from_json(jp.at("left_limit"));
      p.right_limit = limit_from_json(jp.at("right_limit"));
      d.pieces.push_back(p);
    }
  } catch (const json::exception& e) {
    throw validation_error(std::string("density JSON: ") + e.what());
  }
  return d;
}

std::string root_report_to_json(const RootReport& rep) {
  json j;
  j["version"] = kVersion;
  j["zeta"] = complex_to_json(rep.zeta);
  j["roots"] = json::array();
  for (const auto& r : rep.roots)
    j["roots"].push_back({{"z", complex_to_json(r.z)},
                          {"multiplicity", r.multiplicity},
                          {"residual", r.residual},
                          {"chart", r.chart}});
  if (rep.bound) j["bound"] = *rep.bound;
  if (rep.winding_check) j["winding_check"] = *rep.winding_check;
  if (!rep.warnings.empty()) j["warnings"] = rep.warnings;
  return j.dump(2);
}

std::string bound_report_to_json(const BoundReport& rep) {
  json j;
  j["version"] = kVersion;
  j["bound"] = rep.bound;
  j["count_max"] = rep.count_max;
  j["critical_values"] = rep.critical_values;
  j["witness_y"] = rep.witness_y;
  return j.dump(2);
}

std::string convolution_to_json(const ConvolutionResult& res) {
  json j = json::parse(measure_to_json(res.as_measure()));
  j["diagnostics"] = {{"vandermonde_condition", res.diagnostics.vandermonde_condition},
                      {"max_recovery_residual", res.diagnostics.max_recovery_residual},
                      {"zeta_radius", res.diagnostics.zeta_radius},
                      {"zeta_minus", res.diagnostics.zeta_minus},
                      {"zeta_plus", res.diagnostics.zeta_plus},
                      {"mass", res.diagnostics.mass},
                      {"min_density_probe", res.diagnostics.min_density_probe},
                      {"max_branch_drift", res.diagnostics.max_branch_drift}};
  return j.dump(2);
}

std::string curve_to_csv(const CurveSamples& curve) {
  std::ostringstream os;
  os << "# " << kVersion << "\n";
  os << "t,re,im\n";
  for (std::size_t i = 0; i < curve.points.size(); ++i)
    os << format_double(curve.t[i]) << "," << format_double(curve.points[i].real()) << ","
       << format_double(curve.points[i].imag()) << "\n";
  return os.str();
}

std::vector<Complex> read_points(const std::string& text) {
  std::vector<Complex> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("re,", 0) == 0 || line.rfind("t,", 0) == 0) continue;  // header
    for (auto& ch : line)
      if (ch == ',' || ch == ';' || ch == '\t') ch = ' ';
    std::istringstream ls(line);
    double re, im = 0.0;
    if (!(ls >> re)) throw validation_error("points file: unparseable line '" + line + "'");
    ls >> im;
    out.emplace_back(re, im);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw validation_error("cannot read file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw validation_error("cannot write file: " + path);
  out << content;
}

}  // namespace stieltjes

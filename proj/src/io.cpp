#include "helixkit/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include "helixkit/numeric.hpp"

namespace helixkit::io {


namespace {

Json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

double scalar(const Json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    try {
      const Expression e = parse(j.get<std::string>(), {});
      if (e.is_constant()) return e.constant_value();
    } catch (const std::exception& ex) {
      throw InputError(what + ": " + ex.what());
    }
  }
  throw InputError(what + " must be a number or a constant expression");
}

Vec vec(const Json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + " must be an array");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = scalar(j[i], what);
  return v;
}

Interval interval(const Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2) throw InputError(what + " must be [lo, hi]");
  return {scalar(j[0], what), scalar(j[1], what)};
}

std::vector<Expression> expressions(const Json& j, const std::vector<std::string>& vars, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw InputError("\"components\" must list " + std::to_string(dim) + " expressions");
  std::vector<Expression> out;
  for (const auto& c : j) {
    if (!c.is_string()) throw InputError("components must be strings");
    try {
      out.push_back(parse(c.get<std::string>(), vars));
    } catch (const ParseError& e) {
      throw InputError("component \"" + c.get<std::string>() + "\": " + e.what());
    }
  }
  return out;
}

int dimension(const Json& j) {
  const Json& d = field(j, "dim");
  if (!d.is_number_integer() || d.get<int>() < 2) throw InputError("\"dim\" must be an integer >= 2");
  return d.get<int>();
}

}  // namespace

Curve curve_from_json(const Json& j) {
  const int n = dimension(j);
  try {
    if (j.contains("samples")) {
      const Json& rows = j.at("samples");
      if (!rows.is_array()) throw InputError("\"samples\" must be an array of rows");
      std::vector<double> s;
      std::vector<Vec> pts;
      for (const auto& row : rows) {
        const Vec r = vec(row, "sample row");
        if (r.size() != n + 1) throw InputError("each sample row needs dim + 1 numbers");
        s.push_back(r[0]);
        pts.push_back(r.tail(n));
      }
      return Curve::sampled(std::move(s), std::move(pts));
    }
    const std::string param = j.value("parameter", std::string("s"));
    return Curve::analytic(expressions(field(j, "components"), {param}, n), interval(field(j, "domain"), "domain"),
                           param);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  } catch (const Json::exception& e) {
    throw InputError(e.what());
  }
}

Curve load_curve(const std::filesystem::path& path) { return curve_from_json(read_file(path)); }

SurfaceScenario scenario_from_json(const Json& j) {
  const int n = dimension(j);
  const Json& p = field(j, "parameters");
  if (!p.is_array()) throw InputError("\"parameters\" must be an array of names");
  std::vector<std::string> params;
  for (const auto& x : p) params.push_back(x.get<std::string>());
  const Json& dom = field(j, "domain");
  if (!dom.is_array()) throw InputError("\"domain\" must be an array of [lo, hi] pairs");
  std::vector<Interval> box;
  for (const auto& iv : dom) box.push_back(interval(iv, "domain"));
  try {
    SurfaceScenario sc{Hypersurface(expressions(field(j, "components"), params, n), params, box,
                                    vec(field(j, "direction"), "direction")),
                       {}};
    if (j.contains("geodesics")) {
      for (const auto& g : j.at("geodesics")) {
        GeodesicSpec spec;
        spec.start = vec(field(g, "start"), "geodesic start");
        spec.tangent = vec(field(g, "tangent"), "geodesic tangent");
        spec.length = scalar(field(g, "length"), "geodesic length");
        spec.steps = g.contains("steps") ? g.at("steps").get<int>()
                                         : static_cast<int>(std::ceil(spec.length / 1e-3));
        sc.geodesics.push_back(std::move(spec));
      }
    }
    return sc;
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  } catch (const Json::exception& e) {
    throw InputError(e.what());
  }
}

SurfaceScenario load_scenario(const std::filesystem::path& path) { return scenario_from_json(read_file(path)); }

Json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;  // no "-0.0"
}

Json vector(const Vec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(number(v[i]));
  return a;
}

namespace {

Json path_json(const PathResult& p) {
  Json j;
  j["evaluated"] = p.evaluated;
  j["detected"] = p.detected;
  if (!p.message.empty()) j["message"] = p.message;
  if (!p.evaluated) return j;
  j["cos_theta"] = number(p.cos_theta);
  j["C"] = number(p.C);
  j["axis"] = vector(p.axis);
  j["constancy_residual"] = number(p.constancy_residual);
  j["axis_residual"] = number(p.axis_residual);
  j["masked_fraction"] = number(p.masked_fraction);
  return j;
}

}  // namespace

Json to_json(const HelixReport& r) {
  Json j;
  j["classification"] = to_string(r.classification);
  j["status"] = to_string(r.status);
  if (!r.message.empty()) j["message"] = r.message;
  j["cos_theta"] = number(r.cos_theta);
  j["C"] = number(r.C);
  j["axis"] = vector(r.axis);
  j["constancy_residual"] = number(r.constancy_residual);
  j["axis_residual"] = number(r.axis_residual);
  j["masked_fraction"] = number(r.masked_fraction);
  j["samples"] = r.samples;

  Json slant = path_json(r.slant);
  if (r.slant.evaluated) slant["integration_constant"] = number(r.slant.integration_constant);
  Json general = path_json(r.general);
  if (r.general.evaluated && r.general.axis_gstar.size()) {
    general["axis_gstar"] = vector(r.general.axis_gstar);
    general["angle_harmonic_gstar"] = number(r.general.angle_harmonic_gstar);
  }
  j["slant"] = slant;
  j["general"] = general;
  if (r.hint) {
    const auto& h = *r.hint;
    j["axis_hint"] = {{"direction", vector(h.direction)},
                      {"tangent_mean", number(h.tangent_mean)},
                      {"tangent_std", number(h.tangent_std)},
                      {"normal_mean", number(h.normal_mean)},
                      {"normal_std", number(h.normal_std)},
                      {"general", h.general},
                      {"slant", h.slant},
                      {"fitted_tangent_axis", vector(h.fitted_tangent_axis)},
                      {"fitted_normal_axis", vector(h.fitted_normal_axis)}};
  }
  return j;
}

Json to_json(const SameAxisReport& r) {
  Json j;
  j["axis_of_curve"] = vector(r.axis_of_curve);
  j["axis_of_indicatrix"] = vector(r.axis_of_indicatrix);
  j["axis_of_indicatrix_gstar"] = vector(r.axis_of_indicatrix_gstar);
  j["angle_between"] = number(r.angle_between);
  j["angle_between_gstar"] = number(r.angle_between_gstar);
  j["curve"] = to_json(r.curve);
  j["indicatrix"] = to_json(r.indicatrix);
  return j;
}

Json to_json(const HelixSurfaceResult& r) {
  return {{"constant", r.constant},
          {"value", number(r.value)},
          {"stddev", number(r.stddev)},
          {"relative_stddev", number(r.relative_stddev)},
          {"samples", r.samples}};
}

Json to_json(const GeodesicTheoremReport& r) {
  Json j;
  j["passed"] = r.passed;
  if (!r.message.empty()) j["message"] = r.message;
  j["helix_surface"] = to_json(r.surface);
  Json gs = Json::array();
  for (const auto& g : r.geodesics) {
    Json x;
    x["excluded"] = g.excluded;
    if (!g.message.empty()) x["message"] = g.message;
    x["samples"] = g.samples;
    x["max_speed_defect"] = number(g.max_speed_defect);
    x["max_surface_residual"] = number(g.max_surface_residual);
    x["max_tangential_acceleration"] = number(g.max_tangential_acceleration);
    if (!g.excluded) {
      x["normal_direction_mean"] = number(g.normal_mean);
      x["normal_direction_std"] = number(g.normal_std);
      x["slant_helix"] = g.slant;
      x["normal_frame_angle"] = number(g.normal_frame_angle);
      x["indicatrix_classification"] = to_string(g.indicatrix.classification);
      x["indicatrix_axis"] = vector(g.indicatrix_axis);
      x["indicatrix_axis_angle"] = number(g.indicatrix_axis_angle);
      x["spherical_general_helix"] = g.spherical_general;
    }
    gs.push_back(std::move(x));
  }
  j["geodesics"] = gs;
  j["max_pairwise_axis_angle"] = number(r.max_pairwise_axis_angle);
  j["axes_coincide"] = r.axes_coincide;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  char buf[32];
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.12g", row[i] == 0.0 ? 0.0 : row[i]);
      out << (i ? "," : "") << buf;
    }
    out << '\n';
  }
}

std::vector<std::vector<double>> curve_rows(const Curve& c, std::size_t count) {
  std::vector<std::vector<double>> rows;
  for (double s : numeric::linspace(c.domain().lo, c.domain().hi, count)) {
    const Vec p = c.position(s);
    std::vector<double> row{s};
    for (Eigen::Index i = 0; i < p.size(); ++i) row.push_back(p[i]);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::string> curve_header(const std::string& first, int dim) {
  std::vector<std::string> h{first};
  for (int i = 1; i <= dim; ++i) h.push_back("x" + std::to_string(i));
  return h;
}

}  // namespace helixkit::io

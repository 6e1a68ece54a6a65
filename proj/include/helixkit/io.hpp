#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "helixkit/curve.hpp"
#include "helixkit/helix.hpp"
#include "helixkit/hypersurf.hpp"

namespace helixkit::io {

/// Objects keep insertion order so reports read top-down.
using Json = nlohmann::ordered_json;

/// Malformed or unreadable input files.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Curve files, either
///   {"dim": 3, "parameter": "s", "components": ["cos(s)", ...], "domain": [a, b]}
/// or
///   {"dim": 3, "samples": [[s, x1, x2, x3], ...]}.
/// Domain bounds may be numbers or constant expressions such as "pi/3".
Curve curve_from_json(const Json& j);
Curve load_curve(const std::filesystem::path& path);

struct SurfaceScenario {
  Hypersurface surface;
  std::vector<GeodesicSpec> geodesics;
};

/// {"dim": 3, "parameters": ["u", "v"], "components": [...],
///  "domain": [[u0, u1], [v0, v1]], "direction": [0, 0, 1],
///  "geodesics": [{"start": [u, v], "tangent": [...], "length": L, "steps": N}]}
/// "geodesics" is optional; a missing "steps" gives length / 1e-3 steps.
SurfaceScenario scenario_from_json(const Json& j);
SurfaceScenario load_scenario(const std::filesystem::path& path);

/// x rounded to 12 significant digits; non-finite values become null.
Json number(double x);
Json vector(const Vec& v);

Json to_json(const HelixReport& r);
Json to_json(const SameAxisReport& r);
Json to_json(const HelixSurfaceResult& r);
Json to_json(const GeodesicTheoremReport& r);

/// Two-space indented JSON followed by a newline.
std::string dump(const Json& j);

/// Comma-separated rows with a header line, LF endings, %.12g numbers.
void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// Rows (s, x1..xn) at `count` uniformly spaced parameter values.
std::vector<std::vector<double>> curve_rows(const Curve& c, std::size_t count);
std::vector<std::string> curve_header(const std::string& first, int dim);

}  // namespace helixkit::io

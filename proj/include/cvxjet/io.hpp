#pragma once

#include "cvxjet/body_c11.hpp"
#include "cvxjet/body_c1omega.hpp"
#include "cvxjet/envelope.hpp"
#include "cvxjet/verifier.hpp"

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <string>
#include <variant>

namespace cvxjet {
namespace io {

using json = nlohmann::ordered_json;

/// Construction parameters carried alongside a problem file.
struct ProblemParams {
  std::optional<double> r;
  std::optional<double> delta;
};

struct ProblemFile {
  TangencyProblem problem;
  std::optional<Modulus> modulus;
  ProblemParams params;
};

json problem_to_json(const ProblemFile& pf);
/// Throws std::invalid_argument naming the offending record on bad input.
ProblemFile problem_from_json(const json& j);

using AnyBody = std::variant<BodyC11, BodyC1Omega>;

json body_to_json(const BodyC11& body);
json body_to_json(const BodyC1Omega& body);
AnyBody body_from_json(const json& j);

json report_to_json(const VerificationReport& rep);

ProblemFile load_problem(const std::string& path);
void save_json(const json& j, const std::string& path);
json load_json(const std::string& path);

/// Plain-text grid dump: header line "box lo... hi... res..." then row-major
/// values, one per line.
void dump_grid(const GridFunction& g, std::ostream& os);

/// 2D boundary polyline ordered by angle around the sample centroid.
void export_polyline(const std::vector<Vector>& samples, std::ostream& os);
/// 3D triangulated OBJ via the convex hull of the boundary samples.
void export_obj(const std::vector<Vector>& samples, std::ostream& os);
/// CSV rows point..., normal..., signed value.
void export_csv(const std::vector<Vector>& samples,
                const std::vector<Vector>& normals,
                const std::vector<double>& values, std::ostream& os);

/// Faces of the convex hull of 3D points in convex position (incremental
/// hull; used for OBJ export).
std::vector<std::array<int, 3>> convex_hull_3d(const std::vector<Vector>& pts);

}  // namespace io
}  // namespace cvxjet

#include "cvxjet/io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace cvxjet {
namespace io {

namespace {
json vec_to_json(const Vector& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Vector vec_from_json(const json& a, int dim, const std::string& what) {
  if (!a.is_array() || (dim >= 0 && static_cast<int>(a.size()) != dim))
    throw std::invalid_argument("problem file: bad vector in " + what);
  Vector v(a.size());
  for (size_t i = 0; i < a.size(); ++i) v[i] = a[i].get<double>();
  return v;
}

json space_to_json(const NormSpace& s) {
  json j;
  j["kind"] = s.is_euclidean() ? "euclidean" : "lp";
  if (!s.is_euclidean()) j["p"] = s.p;
  return j;
}

NormSpace space_from_json(const json& j, int dim) {
  std::string kind = j.value("kind", "euclidean");
  if (kind == "euclidean") return NormSpace::euclidean(dim);
  if (kind == "lp") return NormSpace::lp(dim, j.at("p").get<double>());
  throw std::invalid_argument("problem file: unknown norm kind '" + kind + "'");
}

json modulus_to_json(const Modulus& m) {
  json j;
  if (m.is_power()) {
    j["kind"] = "power";
    j["K"] = m.K();
    j["alpha"] = m.alpha();
  } else {
    j["kind"] = "table";
    j["t"] = m.knots();
    j["w"] = m.values();
  }
  return j;
}

Modulus modulus_from_json(const json& j) {
  std::string kind = j.value("kind", "power");
  if (kind == "power")
    return Modulus::power(j.value("K", 1.0), j.value("alpha", 1.0));
  if (kind == "table")
    return Modulus::tabulated(j.at("t").get<std::vector<double>>(),
                              j.at("w").get<std::vector<double>>());
  throw std::invalid_argument("problem file: unknown modulus kind '" + kind +
                              "'");
}
}  // namespace

json problem_to_json(const ProblemFile& pf) {
  json j;
  j["dimension"] = pf.problem.space.dim;
  j["norm"] = space_to_json(pf.problem.space);
  json data = json::array();
  for (const auto& d : pf.problem.data) {
    json rec;
    rec["point"] = vec_to_json(d.point);
    rec[pf.problem.space.is_euclidean() ? "normal" : "dual"] =
        vec_to_json(d.normal);
    data.push_back(rec);
  }
  j["data"] = data;
  if (pf.modulus) j["modulus"] = modulus_to_json(*pf.modulus);
  if (pf.params.r || pf.params.delta) {
    json p;
    if (pf.params.r) p["r"] = *pf.params.r;
    if (pf.params.delta) p["delta"] = *pf.params.delta;
    j["params"] = p;
  }
  return j;
}

ProblemFile problem_from_json(const json& j) {
  ProblemFile pf;
  if (!j.contains("dimension"))
    throw std::invalid_argument("problem file: missing 'dimension'");
  int dim = j.at("dimension").get<int>();
  pf.problem.space = space_from_json(j.value("norm", json::object()), dim);
  if (!j.contains("data") || !j.at("data").is_array() || j.at("data").empty())
    throw std::invalid_argument("problem file: missing or empty 'data'");
  int rec_no = 0;
  for (const auto& rec : j.at("data")) {
    std::string tag = "data[" + std::to_string(rec_no++) + "]";
    if (!rec.contains("point"))
      throw std::invalid_argument("problem file: " + tag + " lacks 'point'");
    TangencyDatum d;
    d.point = vec_from_json(rec.at("point"), dim, tag + ".point");
    const char* key = rec.contains("normal") ? "normal"
                      : rec.contains("dual") ? "dual"
                                             : nullptr;
    if (!key)
      throw std::invalid_argument("problem file: " + tag +
                                  " lacks 'normal' or 'dual'");
    d.normal = vec_from_json(rec.at(key), dim, tag + "." + key);
    if (std::abs(pf.problem.space.dual_norm(d.normal) - 1.0) > 1e-12)
      throw std::invalid_argument("problem file: " + tag +
                                  " normal is not unit in the dual norm");
    pf.problem.data.push_back(std::move(d));
  }
  if (j.contains("modulus")) pf.modulus = modulus_from_json(j.at("modulus"));
  if (j.contains("params")) {
    const auto& p = j.at("params");
    if (p.contains("r")) pf.params.r = p.at("r").get<double>();
    if (p.contains("delta")) pf.params.delta = p.at("delta").get<double>();
  }
  pf.problem.validate();
  return pf;
}

json body_to_json(const BodyC11& body) {
  json j;
  j["type"] = "c11";
  j["dimension"] = body.dim();
  j["radius"] = body.radius();
  ProblemFile pf;
  pf.problem = body.source();
  j["problem"] = problem_to_json(pf);
  json centers = json::array();
  for (const auto& c : body.centers().vertices) centers.push_back(vec_to_json(c));
  j["centers"] = centers;
  return j;
}

json body_to_json(const BodyC1Omega& body) {
  json j;
  j["type"] =
      body.variant() == C1OmegaVariant::HilbertOmega ? "c1omega" : "c1alpha";
  j["dimension"] = body.dim();
  ProblemFile pf;
  pf.problem = body.source();
  j["problem"] = problem_to_json(pf);
  j["delta"] = body.delta();
  if (body.variant() == C1OmegaVariant::HilbertOmega)
    j["modulus"] = modulus_to_json(body.modulus().modulus());
  else
    j["alpha"] = body.alpha();
  return j;
}

AnyBody body_from_json(const json& j) {
  std::string type = j.value("type", "");
  ProblemFile pf = problem_from_json(j.at("problem"));
  if (type == "c11") {
    double r = j.at("radius").get<double>();
    Polytope centers;
    for (const auto& c : j.at("centers"))
      centers.vertices.push_back(
          vec_from_json(c, pf.problem.space.dim, "centers"));
    return BodyC11::from_parts(pf.problem, r, std::move(centers));
  }
  if (type == "c1omega") {
    return BodyC1Omega::from_parts(pf.problem, C1OmegaVariant::HilbertOmega,
                                   modulus_from_json(j.at("modulus")),
                                   j.at("delta").get<double>(), 1.0);
  }
  if (type == "c1alpha") {
    return BodyC1Omega::from_parts(pf.problem, C1OmegaVariant::DualAlpha,
                                   std::nullopt, j.at("delta").get<double>(),
                                   j.at("alpha").get<double>());
  }
  throw std::invalid_argument("body file: unknown type '" + type + "'");
}

json report_to_json(const VerificationReport& rep) {
  json j;
  j["subject"] = rep.subject;
  j["seed"] = rep.seed;
  j["samples"] = rep.samples;
  json recs = json::array();
  for (const auto& r : rep.records) {
    json rj;
    rj["name"] = r.name;
    rj["detail"] = r.detail;
    rj["samples"] = r.samples;
    rj["worst_margin"] = r.worst_margin;
    rj["measured"] = r.measured;
    rj["tolerance"] = r.tolerance;
    rj["pass"] = r.pass;
    if (!r.note.empty()) rj["note"] = r.note;
    if (!r.witnesses.empty()) {
      json w = json::array();
      for (const auto& v : r.witnesses) w.push_back(vec_to_json(v));
      rj["witnesses"] = w;
    }
    recs.push_back(rj);
  }
  j["records"] = recs;
  j["all_pass"] = rep.all_pass();
  return j;
}

ProblemFile load_problem(const std::string& path) {
  return problem_from_json(load_json(path));
}

void save_json(const json& j, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << j.dump(2) << "\n";
}

json load_json(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open: " + path);
  return json::parse(is);
}

void dump_grid(const GridFunction& g, std::ostream& os) {
  os << "box";
  for (int i = 0; i < g.dim(); ++i) os << " " << g.lo[i] << " " << g.hi[i];
  os << " res";
  for (int r : g.res) os << " " << r;
  os << "\n";
  os.precision(17);
  for (double v : g.values) os << v << "\n";
}

void export_polyline(const std::vector<Vector>& samples, std::ostream& os) {
  if (samples.empty() || samples.front().size() != 2)
    throw std::invalid_argument("export_polyline: 2D samples required");
  Vector c = Vector::Zero(2);
  for (const auto& s : samples) c += s;
  c /= static_cast<double>(samples.size());
  std::vector<Vector> ord = samples;
  std::sort(ord.begin(), ord.end(), [&](const Vector& a, const Vector& b) {
    return std::atan2(a[1] - c[1], a[0] - c[0]) <
           std::atan2(b[1] - c[1], b[0] - c[0]);
  });
  os.precision(17);
  for (const auto& s : ord) os << s[0] << " " << s[1] << "\n";
}

std::vector<std::array<int, 3>> convex_hull_3d(const std::vector<Vector>& pts) {
  const int n = static_cast<int>(pts.size());
  if (n < 4) throw std::invalid_argument("convex_hull_3d: need >= 4 points");
  auto cross = [](const Vector& a, const Vector& b) {
    Vector c(3);
    c << a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0];
    return c;
  };
  // initial non-degenerate tetrahedron
  int i1 = 1;
  while (i1 < n && (pts[i1] - pts[0]).norm() < 1e-12) ++i1;
  int i2 = i1 + 1;
  while (i2 < n &&
         cross(pts[i1] - pts[0], pts[i2] - pts[0]).norm() < 1e-12)
    ++i2;
  int i3 = i2 + 1;
  while (i3 < n &&
         std::abs(cross(pts[i1] - pts[0], pts[i2] - pts[0])
                      .dot(pts[i3] - pts[0])) < 1e-12)
    ++i3;
  if (i1 >= n || i2 >= n || i3 >= n)
    throw std::invalid_argument("convex_hull_3d: degenerate point set");

  struct Face {
    std::array<int, 3> v;
    Vector nrm;
    double off;
    bool alive = true;
  };
  std::vector<Face> faces;
  auto add_face = [&](int a, int b, int c, const Vector& inside) {
    Face f;
    f.v = {a, b, c};
    f.nrm = cross(pts[b] - pts[a], pts[c] - pts[a]);
    f.off = f.nrm.dot(pts[a]);
    if (f.nrm.dot(inside) > f.off) {  // orient outward
      std::swap(f.v[1], f.v[2]);
      f.nrm = -f.nrm;
      f.off = -f.off;
    }
    faces.push_back(f);
  };
  Vector inside = (pts[0] + pts[i1] + pts[i2] + pts[i3]) / 4.0;
  add_face(0, i1, i2, inside);
  add_face(0, i1, i3, inside);
  add_face(0, i2, i3, inside);
  add_face(i1, i2, i3, inside);

  for (int p = 1; p < n; ++p) {
    if (p == i1 || p == i2 || p == i3) continue;
    double scale = 1.0 + pts[p].norm();
    std::vector<int> visible;
    for (size_t f = 0; f < faces.size(); ++f)
      if (faces[f].alive &&
          faces[f].nrm.dot(pts[p]) > faces[f].off + 1e-10 * scale)
        visible.push_back(static_cast<int>(f));
    if (visible.empty()) continue;
    // horizon edges: edges of visible faces shared with a hidden face
    std::vector<std::array<int, 2>> horizon;
    auto edge_key = [](int a, int b) {
      return std::make_pair(std::min(a, b), std::max(a, b));
    };
    std::vector<std::pair<std::pair<int, int>, std::array<int, 2>>> edges;
    for (int f : visible) {
      for (int e = 0; e < 3; ++e) {
        int a = faces[f].v[e], b = faces[f].v[(e + 1) % 3];
        auto key = edge_key(a, b);
        auto it = std::find_if(edges.begin(), edges.end(),
                               [&](const auto& kv) { return kv.first == key; });
        if (it == edges.end())
          edges.push_back({key, {a, b}});
        else
          edges.erase(it);  // interior edge, shared by two visible faces
      }
      faces[f].alive = false;
    }
    for (const auto& kv : edges) horizon.push_back(kv.second);
    for (const auto& e : horizon) add_face(e[0], e[1], p, inside);
  }

  std::vector<std::array<int, 3>> out;
  for (const auto& f : faces)
    if (f.alive) out.push_back(f.v);
  return out;
}

void export_obj(const std::vector<Vector>& samples, std::ostream& os) {
  if (samples.empty() || samples.front().size() != 3)
    throw std::invalid_argument("export_obj: 3D samples required");
  os.precision(17);
  for (const auto& s : samples)
    os << "v " << s[0] << " " << s[1] << " " << s[2] << "\n";
  for (const auto& f : convex_hull_3d(samples))
    os << "f " << f[0] + 1 << " " << f[1] + 1 << " " << f[2] + 1 << "\n";
}

void export_csv(const std::vector<Vector>& samples,
                const std::vector<Vector>& normals,
                const std::vector<double>& values, std::ostream& os) {
  os.precision(17);
  const int n = samples.empty() ? 0 : static_cast<int>(samples.front().size());
  for (int i = 0; i < n; ++i) os << "p" << i << ",";
  for (int i = 0; i < n; ++i) os << "n" << i << ",";
  os << "b\n";
  for (size_t k = 0; k < samples.size(); ++k) {
    for (int i = 0; i < n; ++i) os << samples[k][i] << ",";
    for (int i = 0; i < n; ++i) os << normals[k][i] << ",";
    os << values[k] << "\n";
  }
}

}  // namespace io
}  // namespace cvxjet

#include "banach_ortho/serialization.hpp"

namespace bjo {

namespace {

double number_or_inf(const json& j, const char* what) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kInfinity;
    throw DomainError(std::string(what) + ": expected a number or \"inf\"");
  }
  if (!j.is_number()) throw DomainError(std::string(what) + ": expected a number");
  return j.get<double>();
}

json p_to_json(double p) {
  if (p == kInfinity) return json("inf");
  return json(p);
}

std::vector<Scalar> coords_from_json(const json& j, Field f, int dim, const char* what) {
  if (!j.is_array()) throw DomainError(std::string(what) + ": expected an array");
  std::vector<Scalar> c;
  if (f == Field::Real) {
    if (int(j.size()) != dim) throw DomainError(std::string(what) + ": wrong length");
    for (auto& e : j) c.emplace_back(e.get<double>(), 0.0);
  } else {
    if (int(j.size()) != 2 * dim)
      throw DomainError(std::string(what) + ": complex arrays interleave re/im");
    for (int i = 0; i < dim; ++i)
      c.emplace_back(j[2 * i].get<double>(), j[2 * i + 1].get<double>());
  }
  return c;
}

json coords_to_json(const std::vector<Scalar>& c, Field f) {
  json out = json::array();
  for (auto z : c) {
    out.push_back(z.real());
    if (f == Field::Complex) out.push_back(z.imag());
  }
  return out;
}

}  // namespace

json scalar_to_json(Scalar z, Field f) {
  if (f == Field::Real) return json(z.real());
  return json::array({z.real(), z.imag()});
}

Scalar scalar_from_json(const json& j) {
  if (j.is_number()) return Scalar(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2) return Scalar(j[0].get<double>(), j[1].get<double>());
  throw DomainError("scalar: expected a number or [re, im]");
}

json space_to_json(const SpaceDescriptor& s) {
  json j;
  j["field"] = s.field() == Field::Real ? "real" : "complex";
  j["dim"] = s.dim();
  double p = 0.0;
  if (auto* poly = s.polytope_kind()) {
    json pts = json::array();
    for (auto& phi : poly->dual_points) pts.push_back(coords_to_json(phi.c, s.field()));
    j["kind"] = json{{"polytope", pts}};
  } else if (s.is_pnorm(&p)) {
    auto w = s.weight_scale();
    bool weighted = false;
    for (double wi : w)
      if (wi != 1.0) weighted = true;
    if (weighted) {
      // recover the stored weights from the scale convention
      json ws = json::array();
      for (double wi : w) ws.push_back(p == kInfinity ? wi : std::pow(wi, p));
      j["kind"] = json{{"weighted", json{{"p", p_to_json(p)}, {"w", ws}}}};
    } else {
      j["kind"] = json{{"p", p_to_json(p)}};
    }
  } else {
    throw CapabilityError("custom spaces have no JSON form");
  }
  return j;
}

SpaceDescriptor space_from_json(const json& j) {
  if (!j.is_object()) throw DomainError("space: expected an object");
  if (!j.contains("field") || !j.contains("dim") || !j.contains("kind"))
    throw DomainError("space: needs field, dim, kind");
  std::string fs = j["field"].get<std::string>();
  Field f;
  if (fs == "real")
    f = Field::Real;
  else if (fs == "complex")
    f = Field::Complex;
  else
    throw DomainError("space: field must be \"real\" or \"complex\"");
  int dim = j["dim"].get<int>();
  const json& kind = j["kind"];
  if (!kind.is_object()) throw DomainError("space: kind must be an object");
  if (kind.contains("p"))
    return SpaceDescriptor::lp(f, dim, number_or_inf(kind["p"], "space.kind.p"));
  if (kind.contains("weighted")) {
    const json& w = kind["weighted"];
    return SpaceDescriptor::weighted_lp(f, dim, number_or_inf(w.at("p"), "space.kind.weighted.p"),
                                        w.at("w").get<std::vector<double>>());
  }
  if (kind.contains("polytope")) {
    std::vector<Functional> pts;
    for (auto& row : kind["polytope"]) {
      Functional phi;
      phi.c = coords_from_json(row, f, dim, "space.kind.polytope row");
      pts.push_back(std::move(phi));
    }
    return SpaceDescriptor::polytope(f, dim, std::move(pts));
  }
  throw DomainError("space: kind must contain p, weighted, or polytope");
}

json vector_to_json(const Vector& v, Field f) { return coords_to_json(v.c, f); }

Vector vector_from_json(const json& j, Field f, int dim) {
  Vector v;
  v.c = coords_from_json(j, f, dim, "vector");
  return v;
}

json functional_to_json(const Functional& v, Field f) { return coords_to_json(v.c, f); }

Functional functional_from_json(const json& j, Field f, int dim) {
  Functional v;
  v.c = coords_from_json(j, f, dim, "functional");
  return v;
}

json operator_to_json(const OperatorDescriptor& T) {
  json j;
  j["domain"] = space_to_json(T.domain);
  j["codomain"] = space_to_json(T.codomain);
  json rows = json::array();
  for (int i = 0; i < T.m.rows(); ++i) {
    json row = json::array();
    for (int jj = 0; jj < T.m.cols(); ++jj) row.push_back(scalar_to_json(T.m(i, jj), T.domain.field()));
    rows.push_back(row);
  }
  j["matrix"] = rows;
  return j;
}

OperatorDescriptor operator_from_json(const json& j) {
  if (!j.is_object() || !j.contains("domain") || !j.contains("codomain") || !j.contains("matrix"))
    throw DomainError("operator: needs domain, codomain, matrix");
  auto dom = space_from_json(j["domain"]);
  auto cod = space_from_json(j["codomain"]);
  const json& rows = j["matrix"];
  if (!rows.is_array() || int(rows.size()) != cod.dim())
    throw DomainError("operator: matrix row count must match the codomain");
  Eigen::MatrixXcd m(cod.dim(), dom.dim());
  for (int i = 0; i < cod.dim(); ++i) {
    if (!rows[i].is_array() || int(rows[i].size()) != dom.dim())
      throw DomainError("operator: matrix column count must match the domain");
    for (int jj = 0; jj < dom.dim(); ++jj) m(i, jj) = scalar_from_json(rows[i][jj]);
  }
  return OperatorDescriptor(std::move(dom), std::move(cod), std::move(m));
}

json polygon_to_json(const ConvexPolygon& p) {
  json out = json::array();
  for (auto v : p.vertices) out.push_back(json::array({v.real(), v.imag()}));
  return out;
}

json certificate_to_json(const HullCertificate& c) {
  json j;
  j["kind"] = c.inside() ? "inside" : "outside";
  j["hull_distance"] = c.hull_distance;
  if (c.inside()) {
    json pts = json::array();
    for (auto p : c.support_points) pts.push_back(json::array({p.real(), p.imag()}));
    j["support_points"] = pts;
    j["weights"] = c.weights;
    j["support_indices"] = c.support_indices;
  } else {
    j["mu"] = json::array({c.mu.real(), c.mu.imag()});
    j["gap"] = c.gap;
  }
  return j;
}

json range_to_json(const RangeEstimate& est) {
  json j;
  j["inner"] = polygon_to_json(est.inner);
  j["outer"] = polygon_to_json(est.outer);
  switch (est.method) {
    case RangeEstimate::Method::Scan: j["method"] = "scan"; break;
    case RangeEstimate::Method::Extreme: j["method"] = "extreme"; break;
    case RangeEstimate::Method::DeltaLadder: j["method"] = "delta_ladder"; break;
  }
  j["params"] = json{{"angles", est.params.angles},
                     {"radial_tol", est.params.radial_tol},
                     {"tol", est.params.tol},
                     {"grid_error", est.params.grid_error},
                     {"exhaustive", est.params.exhaustive}};
  if (!est.rungs.empty()) {
    j["deltas"] = est.deltas;
    json rungs = json::array();
    for (auto& r : est.rungs) rungs.push_back(polygon_to_json(r));
    j["rungs"] = rungs;
  }
  return j;
}

json verdict_to_json(const OrthoVerdict& v, Field f) {
  json j;
  j["decision"] = v.decision;
  j["margin"] = v.margin;
  j["exhaustive"] = v.exhaustive;
  if (v.lambda_star) j["lambda_star"] = json::array({v.lambda_star->real(), v.lambda_star->imag()});
  if (v.witness) j["witness_functional"] = functional_to_json(*v.witness, f);
  if (v.witness_vector) j["witness_vector"] = vector_to_json(*v.witness_vector, f);
  if (!v.note.empty()) j["note"] = v.note;
  if (!v.rung_distances.empty()) j["rung_distances"] = v.rung_distances;
  if (v.certificate) j["certificate"] = certificate_to_json(*v.certificate);
  return j;
}

json sampled_function_to_json(const SampledFunction& f) {
  json j;
  switch (f.adjacency) {
    case SampledFunction::Adjacency::Circle: j["adjacency"] = "circle"; break;
    case SampledFunction::Adjacency::Path: j["adjacency"] = "path"; break;
    case SampledFunction::Adjacency::None: j["adjacency"] = "none"; break;
  }
  json grid = json::array();
  for (std::size_t i = 0; i < f.values.size(); ++i)
    grid.push_back(i < f.labels.size() ? f.labels[i] : std::to_string(i));
  j["grid"] = grid;
  json vals = json::array();
  for (auto& v : f.values) vals.push_back(vector_to_json(v, f.codomain.field()));
  j["values"] = vals;
  j["codomain"] = space_to_json(f.codomain);
  return j;
}

SampledFunction sampled_function_from_json(const json& j) {
  if (!j.is_object() || !j.contains("values") || !j.contains("codomain"))
    throw DomainError("sampled function: needs values and codomain");
  auto cod = space_from_json(j["codomain"]);
  SampledFunction::Adjacency adj = SampledFunction::Adjacency::None;
  if (j.contains("adjacency")) {
    std::string a = j["adjacency"].get<std::string>();
    if (a == "circle")
      adj = SampledFunction::Adjacency::Circle;
    else if (a == "path")
      adj = SampledFunction::Adjacency::Path;
    else if (a != "none")
      throw DomainError("sampled function: adjacency must be circle, path, or none");
  }
  std::vector<Vector> values;
  for (auto& row : j["values"]) values.push_back(vector_from_json(row, cod.field(), cod.dim()));
  auto f = make_sampled(adj, std::move(values), std::move(cod));
  if (j.contains("grid"))
    for (auto& g : j["grid"]) f.labels.push_back(g.is_string() ? g.get<std::string>() : g.dump());
  return f;
}

json blaschke_to_json(const BlaschkeParams& b) {
  json zeros = json::array();
  for (auto a : b.zeros) zeros.push_back(json::array({a.real(), a.imag()}));
  return json{{"k", b.k}, {"zeros", zeros}};
}

BlaschkeParams blaschke_from_json(const json& j) {
  if (!j.is_object() || !j.contains("k")) throw DomainError("blaschke: needs k and zeros");
  BlaschkeParams b;
  b.k = j["k"].get<int>();
  if (j.contains("zeros"))
    for (auto& z : j["zeros"]) b.zeros.push_back(scalar_from_json(z));
  return b;
}

FiniteMetricSpace metric_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dist")) throw DomainError("metric: needs dist matrix");
  FiniteMetricSpace m;
  m.dist = j["dist"].get<std::vector<std::vector<double>>>();
  if (j.contains("base")) m.base = j["base"].get<std::size_t>();
  if (j.contains("labels"))
    for (auto& l : j["labels"]) m.labels.push_back(l.get<std::string>());
  validate_metric(m);
  return m;
}

}  // namespace bjo

#include "banach_ortho/orthogonality.hpp"

namespace bjo {

DeltaLadder DeltaLadder::standard(int k_lo, int k_hi) {
  DeltaLadder l;
  for (int k = k_lo; k <= k_hi; ++k) l.deltas.push_back(std::pow(2.0, -k));
  return l;
}

namespace {

LambdaMinimum minimize_complex(const NormFn& norm_fn, const Vector& x, const Vector& y,
                               double radius, double lambda_tol) {
  Vector work;
  auto eval = [&](Scalar lambda) {
    axpy_into(x, lambda, y, work);
    return norm_fn(work);
  };

  // coordinate-wise golden-section alternation from three starts, then a
  // Nelder-Mead polish; convexity of lambda -> ||x + lambda y|| makes the
  // minimum global
  const Scalar starts[3] = {Scalar(0.0, 0.0), Scalar(0.5 * radius, 0.0),
                            Scalar(-0.3 * radius, 0.4 * radius)};
  LambdaMinimum best{Scalar(0.0), eval(Scalar(0.0))};
  for (Scalar s : starts) {
    double re = s.real(), im = s.imag();
    double val = eval(Scalar(re, im));
    for (int sweep = 0; sweep < 8; ++sweep) {
      auto m1 = golden_section_minimize([&](double t) { return eval(Scalar(t, im)); }, -radius,
                                        radius, lambda_tol * radius);
      re = m1.x;
      auto m2 = golden_section_minimize([&](double t) { return eval(Scalar(re, t)); }, -radius,
                                        radius, lambda_tol * radius);
      im = m2.x;
      if (std::abs(m2.value - val) < 1e-14 * (1.0 + std::abs(val))) {
        val = m2.value;
        break;
      }
      val = m2.value;
    }
    if (val < best.value) best = {Scalar(re, im), val};
  }
  auto polished = nelder_mead_minimize(
      [&](const std::vector<double>& t) { return eval(Scalar(t[0], t[1])); },
      {best.lambda.real(), best.lambda.imag()}, 0.05 * radius + 1e-6, 1e-14, 400);
  if (polished.value < best.value) best = {Scalar(polished.x[0], polished.x[1]), polished.value};
  return best;
}

}  // namespace

LambdaMinimum minimize_norm_lambda(const NormFn& norm_fn, const Vector& x, const Vector& y,
                                   Field field, double radius, double lambda_tol) {
  if (field == Field::Real) {
    Vector work;
    auto m = golden_section_minimize(
        [&](double t) {
          axpy_into(x, Scalar(t, 0.0), y, work);
          return norm_fn(work);
        },
        -radius, radius, lambda_tol * std::max(1.0, radius));
    return {Scalar(m.x, 0.0), m.value};
  }
  return minimize_complex(norm_fn, x, y, radius, lambda_tol);
}

LambdaMinimum minimize_norm_lambda_directional(const NormFn& norm_fn, const Vector& x,
                                               const Vector& y, Scalar gamma, double radius,
                                               double lambda_tol) {
  Vector work;
  auto m = golden_section_minimize(
      [&](double t) {
        axpy_into(x, t * gamma, y, work);
        return norm_fn(work);
      },
      -radius, radius, lambda_tol * std::max(1.0, radius));
  return {Scalar(m.x, 0.0) * gamma, m.value};
}

OrthoVerdict bj_orthogonal(const SpaceDescriptor& space, const Vector& x, const Vector& y,
                           double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  const double nx = space.norm(x), ny = space.norm(y);
  OrthoVerdict v;
  v.exhaustive = true;
  if (nx == 0.0 || ny == 0.0) {
    v.decision = true;
    v.margin = 0.0;
    v.lambda_star = Scalar(0.0);
    v.note = nx == 0.0 ? "x = 0: orthogonal to everything" : "y = 0";
    return v;
  }
  // normalize so the tolerance acts relative to ||x||; any minimizer lies in
  // |lambda| <= 2||x||/||y|| since beyond that ||x+lambda y|| > ||x||
  Vector xh = (1.0 / nx) * x;
  Vector yh = (1.0 / ny) * y;
  NormFn nf = [&space](const Vector& w) { return space.norm(w); };
  auto m = minimize_norm_lambda(nf, xh, yh, space.field(), 2.0);
  double margin_hat = m.value - 1.0;
  v.decision = margin_hat >= -tol;
  v.margin = margin_hat * nx;
  v.lambda_star = m.lambda * (nx / ny);
  return v;
}

OrthoVerdict directional_orthogonal(const SpaceDescriptor& space, const Vector& x, const Vector& y,
                                    Scalar gamma, double tol) {
  if (std::abs(std::abs(gamma) - 1.0) > 1e-12) throw DomainError("gamma must be unimodular");
  const double nx = space.norm(x), ny = space.norm(y);
  OrthoVerdict v;
  v.exhaustive = true;
  if (nx == 0.0 || ny == 0.0) {
    v.decision = true;
    v.lambda_star = Scalar(0.0);
    return v;
  }
  Vector xh = (1.0 / nx) * x;
  Vector yh = (1.0 / ny) * y;
  NormFn nf = [&space](const Vector& w) { return space.norm(w); };
  auto m = minimize_norm_lambda_directional(nf, xh, yh, gamma, 2.0);
  double margin_hat = m.value - 1.0;
  v.decision = margin_hat >= -tol;
  v.margin = margin_hat * nx;
  v.lambda_star = m.lambda * (nx / ny);
  return v;
}

namespace {

// Combines face functionals with the Carathéodory weights of a hull
// certificate for the value set {phi_j(target)}.
Functional combine_face(const std::vector<Functional>& face, const HullCertificate& cert) {
  Functional out(face.front().dim());
  for (std::size_t k = 0; k < cert.weights.size(); ++k) {
    const Functional& phi = face[cert.support_indices[k]];
    for (std::size_t i = 0; i < out.dim(); ++i) out[i] += cert.weights[k] * phi[i];
  }
  return out;
}

}  // namespace

WitnessResult james_witness(const SpaceDescriptor& space, const Vector& x, const Vector& y,
                            double tol) {
  const double nx = space.norm(x);
  if (nx == 0.0) throw DomainError("james witness of the zero vector");
  const double ny = space.norm(y);
  WitnessResult res;
  if (ny == 0.0) {
    // any support functional works
    auto face = space.support_functionals(x);
    res.functional = face.members.front();
    return res;
  }
  Vector yh = (1.0 / ny) * y;
  auto face = space.support_functionals(x);
  ScalarSet values;
  values.field = space.field();
  values.points.reserve(face.members.size());
  for (auto& phi : face.members) values.points.push_back(phi(yh));
  auto cert = zero_in_conv(values, tol);
  if (cert.inside()) {
    res.functional = combine_face(face.members, cert);
    res.certificate = cert;
    return res;
  }
  if (!face.exhaustive) {
    res.unknown = true;  // sampled face: absence of a certificate proves nothing
    return res;
  }
  res.certificate = cert;
  return res;
}

WitnessResult directional_witness(const SpaceDescriptor& space, const Vector& x, const Vector& y,
                                  Scalar gamma, double tol) {
  if (std::abs(std::abs(gamma) - 1.0) > 1e-12) throw DomainError("gamma must be unimodular");
  const double nx = space.norm(x);
  if (nx == 0.0) throw DomainError("directional witness of the zero vector");
  const double ny = space.norm(y);
  WitnessResult res;
  auto face = space.support_functionals(x);
  if (ny == 0.0) {
    res.functional = gamma * face.members.front();
    return res;
  }
  Vector yh = (1.0 / ny) * y;
  // seek phi in the face with Re(gamma*phi(y)) = 0; then x* = gamma*phi
  // satisfies x*(x) = gamma ||x|| and Re x*(y) = 0
  ScalarSet values;
  values.field = Field::Real;
  values.points.reserve(face.members.size());
  for (auto& phi : face.members) values.points.push_back(Scalar((gamma * phi(yh)).real(), 0.0));
  auto cert = zero_in_conv(values, tol);
  if (cert.inside()) {
    res.functional = gamma * combine_face(face.members, cert);
    res.certificate = cert;
    return res;
  }
  if (!face.exhaustive) {
    res.unknown = true;
    return res;
  }
  res.certificate = cert;
  return res;
}

BestApproximation best_approximation(const SpaceDescriptor& space, const Vector& x,
                                     const Vector& y) {
  const double ny = space.norm(y);
  if (ny == 0.0) throw DomainError("best approximation against the zero vector");
  const double nx = space.norm(x);
  BestApproximation out;
  if (nx == 0.0) {
    out.lambda = Scalar(0.0);
    out.residual = x;
    return out;
  }
  Vector xh = (1.0 / nx) * x;
  Vector yh = (1.0 / ny) * y;
  NormFn nf = [&space](const Vector& w) { return space.norm(w); };
  // minimize ||x - lambda y|| = ||x + mu y|| with mu = -lambda
  auto m = minimize_norm_lambda(nf, xh, yh, space.field(), 2.0);
  out.lambda = -m.lambda * (nx / ny);
  out.residual = x - out.lambda * y;
  return out;
}

}  // namespace bjo

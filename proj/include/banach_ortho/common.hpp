#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace bjo {

using Scalar = std::complex<double>;

enum class Field { Real, Complex };

inline constexpr double kDefaultTol = 1e-7;   // decision tolerance for orthogonality verdicts
inline constexpr double kSmoothTol = 1e-6;    // face diameter below this counts as a singleton
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Input that violates a documented precondition (dimension mismatch, empty set,
// non-finite entry, malformed JSON). CLI exit code 2.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operation not supported for the given space kind. CLI exit code 3.
struct CapabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Computation could not produce a meaningful answer (e.g. an empty sampling
// rung). CLI exit code 4.
struct DiagnosticError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline bool is_finite(Scalar z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// z/|z| with the convention sign(0) = 1.
inline Scalar sign_of(Scalar z) {
  double a = std::abs(z);
  return a == 0.0 ? Scalar(1.0, 0.0) : z / a;
}

// ---------------------------------------------------------------------------
// Vectors and functionals.
//
// Coordinates are always stored as complex numbers; a real space is the
// special case with vanishing imaginary parts, dispatched by the field tag.
// The pairing is bilinear: phi(x) = sum_i phi_i * x_i, no conjugation on x.
// ---------------------------------------------------------------------------

struct Vector {
  std::vector<Scalar> c;

  Vector() = default;
  explicit Vector(std::size_t n) : c(n, Scalar(0.0)) {}
  Vector(std::initializer_list<Scalar> init) : c(init) {}

  std::size_t dim() const { return c.size(); }
  Scalar& operator[](std::size_t i) { return c[i]; }
  const Scalar& operator[](std::size_t i) const { return c[i]; }

  static Vector basis(std::size_t n, std::size_t i) {
    Vector e(n);
    e.c[i] = 1.0;
    return e;
  }
};

struct Functional {
  std::vector<Scalar> c;

  Functional() = default;
  explicit Functional(std::size_t n) : c(n, Scalar(0.0)) {}
  Functional(std::initializer_list<Scalar> init) : c(init) {}

  std::size_t dim() const { return c.size(); }
  Scalar& operator[](std::size_t i) { return c[i]; }
  const Scalar& operator[](std::size_t i) const { return c[i]; }

  Scalar operator()(const Vector& x) const {
    if (x.dim() != c.size()) throw DomainError("functional/vector dimension mismatch");
    Scalar s = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * x.c[i];
    return s;
  }

  static Functional basis(std::size_t n, std::size_t i) {
    Functional e(n);
    e.c[i] = 1.0;
    return e;
  }
};

inline Vector operator+(const Vector& a, const Vector& b) {
  if (a.dim() != b.dim()) throw DomainError("vector dimension mismatch");
  Vector r = a;
  for (std::size_t i = 0; i < r.dim(); ++i) r[i] += b[i];
  return r;
}

inline Vector operator-(const Vector& a, const Vector& b) {
  if (a.dim() != b.dim()) throw DomainError("vector dimension mismatch");
  Vector r = a;
  for (std::size_t i = 0; i < r.dim(); ++i) r[i] -= b[i];
  return r;
}

inline Vector operator*(Scalar s, const Vector& a) {
  Vector r = a;
  for (auto& v : r.c) v *= s;
  return r;
}

// x + lambda*y without an intermediate allocation per call site.
inline void axpy_into(const Vector& x, Scalar lambda, const Vector& y, Vector& out) {
  out.c.resize(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) out.c[i] = x.c[i] + lambda * y.c[i];
}

inline Functional operator*(Scalar s, const Functional& a) {
  Functional r = a;
  for (auto& v : r.c) v *= s;
  return r;
}

inline double euclidean_norm(const std::vector<Scalar>& c) {
  double s = 0.0;
  for (auto v : c) s += std::norm(v);
  return std::sqrt(s);
}

inline double coord_distance(const Functional& a, const Functional& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::norm(a.c[i] - b.c[i]);
  return std::sqrt(s);
}

inline bool all_finite(const std::vector<Scalar>& c) {
  for (auto v : c)
    if (!is_finite(v)) return false;
  return true;
}

inline bool all_real(const std::vector<Scalar>& c, double tol = 0.0) {
  for (auto v : c)
    if (std::abs(v.imag()) > tol) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Deterministic sampling helpers.
// ---------------------------------------------------------------------------

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(gen_); }
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }
  std::uint64_t integer(std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(gen_);
  }
  std::mt19937_64& raw() { return gen_; }

  Scalar scalar(Field f) {
    return f == Field::Real ? Scalar(normal(), 0.0) : Scalar(normal(), normal());
  }

  Vector vector(Field f, std::size_t n) {
    Vector v(n);
    for (auto& x : v.c) x = scalar(f);
    return v;
  }

 private:
  std::mt19937_64 gen_;
};

// Inverse of the standard normal CDF (Acklam's rational approximation);
// used to push low-discrepancy points onto spheres.
double inverse_normal_cdf(double p);

// Kronecker (additive golden-ratio style) low-discrepancy sequence on [0,1)^d.
class KroneckerSequence {
 public:
  KroneckerSequence(std::size_t dim, std::uint64_t seed);
  std::vector<double> next();

 private:
  std::vector<double> alpha_;
  std::vector<double> state_;
};

// Low-discrepancy directions mapped to the Euclidean unit sphere; for the
// complex field each coordinate consumes two sequence slots.
class SphereSampler {
 public:
  SphereSampler(Field f, std::size_t dim, std::uint64_t seed);
  Vector next();

 private:
  Field field_;
  std::size_t dim_;
  KroneckerSequence seq_;
};

// ---------------------------------------------------------------------------
// Derivative-free minimization.
// ---------------------------------------------------------------------------

struct Minimum1D {
  double x = 0.0;
  double value = 0.0;
};

// Golden-section search; exact for unimodal (in particular convex) objectives.
Minimum1D golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                                  double xtol = 1e-10, int max_iter = 200);

struct MinimumND {
  std::vector<double> x;
  double value = 0.0;
};

// Nelder-Mead with standard coefficients; deterministic given the start simplex.
MinimumND nelder_mead_minimize(const std::function<double(const std::vector<double>&)>& f,
                               const std::vector<double>& start, double scale, double ftol = 1e-12,
                               int max_iter = 400);

// Runs fn(i) for i in [0, n); honors BANACH_ORTHO_THREADS. Results must be
// written to index-addressed storage so the reduction order cannot matter.
void parallel_for_indices(std::size_t n, const std::function<void(std::size_t)>& fn);

int thread_budget();

}  // namespace bjo

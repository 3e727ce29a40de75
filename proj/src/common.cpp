#include "banach_ortho/common.hpp"

#include <cstdlib>
#include <thread>

namespace bjo {

double inverse_normal_cdf(double p) {
  // Acklam's approximation, |relative error| < 1.15e-9 on (0,1).
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  p = std::min(std::max(p, 1e-300), 1.0 - 1e-16);
  if (p < plow) {
    double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4])) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - plow) {
    double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4])) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  double q = p - 0.5, r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

namespace {
double frac(double x) { return x - std::floor(x); }

double nth_prime_sqrt(std::size_t i) {
  static const int primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
                               59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113,
                               127, 131, 137, 139, 149, 151, 157, 163, 167, 173};
  return std::sqrt(double(primes[i % 40])) * (1.0 + double(i / 40) * 0.01);
}
}  // namespace

KroneckerSequence::KroneckerSequence(std::size_t dim, std::uint64_t seed) {
  alpha_.resize(dim);
  state_.resize(dim);
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t i = 0; i < dim; ++i) {
    alpha_[i] = frac(nth_prime_sqrt(i));
    state_[i] = u(g);  // random shift, deterministic in the seed
  }
}

std::vector<double> KroneckerSequence::next() {
  for (std::size_t i = 0; i < alpha_.size(); ++i) state_[i] = frac(state_[i] + alpha_[i]);
  return state_;
}

SphereSampler::SphereSampler(Field f, std::size_t dim, std::uint64_t seed)
    : field_(f), dim_(dim), seq_(f == Field::Real ? dim : 2 * dim, seed) {}

Vector SphereSampler::next() {
  for (int attempt = 0; attempt < 64; ++attempt) {
    auto u = seq_.next();
    Vector v(dim_);
    if (field_ == Field::Real) {
      for (std::size_t i = 0; i < dim_; ++i) v[i] = inverse_normal_cdf(u[i]);
    } else {
      for (std::size_t i = 0; i < dim_; ++i)
        v[i] = Scalar(inverse_normal_cdf(u[2 * i]), inverse_normal_cdf(u[2 * i + 1]));
    }
    double n = euclidean_norm(v.c);
    if (n > 1e-12) {
      for (auto& x : v.c) x /= n;
      return v;
    }
  }
  return Vector::basis(dim_, 0);
}

Minimum1D golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                                  double xtol, int max_iter) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < max_iter && (b - a) > xtol; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  double xm = 0.5 * (a + b);
  double fm = f(xm);
  Minimum1D best{xm, fm};
  if (f1 < best.value) best = {x1, f1};
  if (f2 < best.value) best = {x2, f2};
  return best;
}

MinimumND nelder_mead_minimize(const std::function<double(const std::vector<double>&)>& f,
                               const std::vector<double>& start, double scale, double ftol,
                               int max_iter) {
  const std::size_t n = start.size();
  std::vector<std::vector<double>> simplex(n + 1, start);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += scale;
  std::vector<double> fv(n + 1);
  for (std::size_t i = 0; i <= n; ++i) fv[i] = f(simplex[i]);

  auto order = [&] {
    std::vector<std::size_t> idx(n + 1);
    for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    std::vector<std::vector<double>> s2(n + 1);
    std::vector<double> f2(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      s2[i] = simplex[idx[i]];
      f2[i] = fv[idx[i]];
    }
    simplex.swap(s2);
    fv.swap(f2);
  };

  for (int it = 0; it < max_iter; ++it) {
    order();
    if (std::abs(fv[n] - fv[0]) < ftol * (1.0 + std::abs(fv[0]))) break;
    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j] / double(n);
    auto point = [&](double t) {
      std::vector<double> p(n);
      for (std::size_t j = 0; j < n; ++j) p[j] = centroid[j] + t * (simplex[n][j] - centroid[j]);
      return p;
    };
    auto xr = point(-1.0);
    double fr = f(xr);
    if (fr < fv[0]) {
      auto xe = point(-2.0);
      double fe = f(xe);
      if (fe < fr) {
        simplex[n] = xe;
        fv[n] = fe;
      } else {
        simplex[n] = xr;
        fv[n] = fr;
      }
    } else if (fr < fv[n - 1]) {
      simplex[n] = xr;
      fv[n] = fr;
    } else {
      auto xc = point(fr < fv[n] ? -0.5 : 0.5);
      double fc = f(xc);
      if (fc < std::min(fr, fv[n])) {
        simplex[n] = xc;
        fv[n] = fc;
      } else {
        for (std::size_t i = 1; i <= n; ++i) {
          for (std::size_t j = 0; j < n; ++j)
            simplex[i][j] = simplex[0][j] + 0.5 * (simplex[i][j] - simplex[0][j]);
          fv[i] = f(simplex[i]);
        }
      }
    }
  }
  order();
  return MinimumND{simplex[0], fv[0]};
}

int thread_budget() {
  const char* env = std::getenv("BANACH_ORTHO_THREADS");
  if (!env) return 1;
  int n = std::atoi(env);
  if (n <= 0) return 1;
  unsigned hw = std::thread::hardware_concurrency();
  return std::min<int>(n, hw == 0 ? 1 : int(hw));
}

void parallel_for_indices(std::size_t n, const std::function<void(std::size_t)>& fn) {
  int threads = thread_budget();
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace bjo

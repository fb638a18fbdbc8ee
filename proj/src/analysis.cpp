#include "cdst/analysis.hpp"

#include <cmath>
#include <string>

#include "cdst/errors.hpp"

namespace cdst::analysis {

namespace {
void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}
}  // namespace

double factor_offset(double beta) {
  require(beta >= 1.0, "beta must be >= 1");
  return beta / (std::sqrt(beta * beta + 1.0) + beta - 1.0);
}

double approx_factor(double beta) { return beta + factor_offset(beta); }

double round_up(double x, int decimals) {
  const double scale = std::pow(10.0, decimals);
  // Values that are already exact at this precision stay put.
  return std::ceil(x * scale - 1e-7) / scale;
}

double baseline_factor(double beta) {
  require(beta >= 1.0, "beta must be >= 1");
  return 1.0 + beta;
}

void check_domain(double a, double b, double c, double mu) {
  require(mu > 0.0, "mu > 0 violated");
  require(a > mu && a < 2.0 * mu, "a in (mu, 2mu) violated");
  require(b > 0.0 && b < mu, "b in (0, mu) violated");
  require(c > 0.0 && c < mu, "c in (0, mu) violated");
  require(c <= a - b, "c <= a - b violated");
  require(a - b < mu, "a - b < mu violated");
}

namespace {
// Shared head: 2(a-c)c/a - mu/2 and the factor (1/a - 1/mu) / (1/(a-b) - 1/mu).
struct Parts {
  double head;
  double scale;
};
Parts parts(double a, double b, double c, double mu) {
  const double head = 2.0 * (a - c) * c / a - mu / 2.0;
  // Same factor with the reciprocal differences cleared; near a - b = mu the
  // naive form cancels badly.
  const double scale = (mu - a) * (a - b) / (a * (mu + b - a));
  return {head, scale};
}
}  // namespace

double f_func(double a, double b, double c, double mu) {
  check_domain(a, b, c, mu);
  const auto [head, scale] = parts(a, b, c, mu);
  const double ab = a - b;
  return head + scale * (mu / 2.0 - 2.0 * (ab - c) * c / ab);
}

double g_func(double a, double b, double c, double mu) {
  check_domain(a, b, c, mu);
  const auto [head, scale] = parts(a, b, c, mu);
  return head + scale * (mu / 2.0);
}

double f_closed(double a, double b, double c, double mu) {
  check_domain(a, b, c, mu);
  const double s = 2.0 * c - mu;
  return -b * s * s / (2.0 * a * (mu + b - a));
}

double h_func(double x, double y, double beta) {
  require(x > 0.0, "x > 0 violated");
  require(y >= 0.0, "y >= 0 violated");
  require(beta >= 1.0, "beta >= 1 violated");
  return (beta * x + y + std::sqrt(2.0) * std::sqrt(beta * x * y)) / (x + y);
}

double h_maximizer_ratio(double beta) {
  const double root = std::sqrt(beta) / (std::sqrt(2.0) * factor_offset(beta));
  return root * root;
}

GapValues gap_formulas(int k, double delta_prime) {
  require(k >= 1, "k >= 1 violated");
  require(delta_prime >= 0.0 && delta_prime < 1.0 / k, "0 <= delta' < 1/k violated");
  const double kk = static_cast<double>(k);
  return {2.0 + std::sqrt(2.0) * kk, (1.0 + std::sqrt(2.0)) * kk + 2.0 - delta_prime * kk};
}

}  // namespace cdst::analysis

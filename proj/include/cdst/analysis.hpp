#pragma once

namespace cdst::analysis {

/// a(beta) = beta / (sqrt(beta^2 + 1) + beta - 1).
double factor_offset(double beta);

/// beta + a(beta): guarantee of the improved algorithm given a
/// beta-approximate Steiner tree. Throws ValidationError for beta < 1.
double approx_factor(double beta);

/// 1 + beta: guarantee of the weight-threshold splitter.
double baseline_factor(double beta);

/// x rounded up to `decimals` places. Factors are upper bounds, so tables
/// print them rounded up.
double round_up(double x, int decimals);

/// Functions on X^mu = {(a,b,c) in (mu,2mu) x (0,mu)^2 : c <= a-b < mu}.
/// Both are <= 0 there. Out-of-domain arguments throw ValidationError
/// naming the constraint.
double f_func(double a, double b, double c, double mu);
double g_func(double a, double b, double c, double mu);

/// -b (2c - mu)^2 / (2 a (mu + b - a)), algebraically equal to f_func.
double f_closed(double a, double b, double c, double mu);

/// Throws ValidationError unless (a,b,c) lies in X^mu.
void check_domain(double a, double b, double c, double mu);

/// (beta x + y + sqrt(2) sqrt(beta x y)) / (x + y); bounded by approx_factor.
double h_func(double x, double y, double beta);

/// x/y ratio at which h_func attains approx_factor(beta):
/// sqrt(x) = sqrt(beta) / (sqrt(2) a) * sqrt(y).
double h_maximizer_ratio(double beta);

struct GapValues {
  double lower_bound;  // 2 + sqrt(2) k
  double optimum;      // (1 + sqrt(2)) k + 2 - delta' k
  double ratio() const { return optimum / lower_bound; }
};

/// Lower bound and optimum of the k-th gap instance; delta_prime = 0 gives
/// the limit of fine subdivisions.
GapValues gap_formulas(int k, double delta_prime);

}  // namespace cdst::analysis

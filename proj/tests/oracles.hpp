#ifndef MCI_TEST_ORACLES_HPP
#define MCI_TEST_ORACLES_HPP

#include <cstdint>

// Reference implementations used only by tests. Each one reaches its value
// by a route independent of the library code it checks: the CDF integrates
// the density by Gauss-Legendre quadrature, the deep tail sums the classic
// asymptotic series, the quantile bisects the quadrature CDF, and the
// binomial tail adds exact integer coefficients.
namespace oracles {

// Phi(x) by 40-node composite Gauss-Legendre integration of the density in
// long double (|x| <= 7), switching to the asymptotic tail series beyond.
long double normal_cdf(long double x);

// Upper-tail Q(x) = 1 - Phi(x) for x >= 7 via the optimally truncated
// series phi(x)/x * (1 - 1/x^2 + 3/x^4 - ...).
long double normal_tail_asymptotic(long double x);

// Phi^-1(p) by bisection on normal_cdf.
long double normal_quantile(long double p);

// P(X <= m) for X ~ Binomial(n, 1/2) from exact 64-bit binomial
// coefficients; requires n <= 64.
long double binomial_half_cdf_exact(std::int64_t m, std::int64_t n);

// Survival of chi-square with 1 dof: 2 * (upper normal tail at sqrt(s)).
long double chi_square_sf_1dof(long double statistic);

} // namespace oracles

#endif // MCI_TEST_ORACLES_HPP

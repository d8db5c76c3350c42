#pragma once

namespace fbc {

// Standard normal CDF G(x). Accurate to ~1e-15 absolute over the whole line.
double normal_cdf(double x);

// ln G(x), finite far into the left tail where normal_cdf underflows.
double normal_logcdf(double x);

// Quantile G^{-1}(p), p in (0,1). Satisfies |G(G^{-1}(p)) - p| <= 1e-12.
// Throws domain_error outside (0,1).
double normal_quantile(double p);

}  // namespace fbc

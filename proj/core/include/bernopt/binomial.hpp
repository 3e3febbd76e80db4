#pragma once

namespace bernopt {

/// Binomial coefficient C(n, k) in double precision.
///
/// Rows up to the cache cap are served from a shared Pascal-triangle table;
/// larger arguments fall back to the multiplicative product form, which stays
/// finite up to n ~ 1020. Returns 0 for k < 0 or k > n.
double binomial(int n, int k);

/// Degree cap of the Pascal-triangle cache (default 64, or the value of the
/// BERNOPT_MAX_DEGREE environment variable at startup).
int binomial_cache_cap();
void set_binomial_cache_cap(int cap);

}  // namespace bernopt

#pragma once

#include <cstdint>

namespace mgmt {

/// Two-sided Fisher's exact test on the 2x2 table [[a,b],[c,d]].
///
/// With the margins fixed, sums the hypergeometric probabilities of every
/// table whose probability is <= that of the observed table, with a relative
/// tolerance factor of 1+1e-7 on the comparison so exact ties are kept under
/// floating point. Log-factorial accumulation keeps the computation stable
/// up to N = 10^6. An all-zero table yields p = 1 by convention.
double fisher_exact_two_sided(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

} // namespace mgmt

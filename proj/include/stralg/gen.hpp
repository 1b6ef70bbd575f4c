#pragma once

#include "stralg/rmodule.hpp"
#include "stralg/rng.hpp"

namespace stralg {

// Seeded generators used by audits, probes and the acceptance experiments.
// All draws flow through Rng, so a fixed seed reproduces the same objects.

AlgebraElement random_element(const StringAlgebra& R, Rng& rng, int max_terms);
RMatrix random_rmatrix(Algebra R, Rng& rng, size_t rows, size_t cols, int max_terms = 2);

// Random walk respecting the string conditions; may return a shorter word
// (or a trivial one) when the walk cannot be extended.
StringWord random_string_word(const StringAlgebra& R, Rng& rng, size_t target_len);

// Random band datum with module dimension <= dim_cap, or nullopt when the
// algebra has no band of that size.
std::optional<BandData> random_band(const StringAlgebra& R, Rng& rng, int dim_cap);

// Direct sum of random string modules with total dimension <= dim_cap.
RModule random_string_sum(Algebra R, Rng& rng, int dim_cap);

// Direct sum mixing string and band components.
RModule random_module_mix(Algebra R, Rng& rng, int dim_cap);

} // namespace stralg

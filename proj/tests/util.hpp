#pragma once

#include <random>

#include "aromakit/algebra.hpp"

namespace aromakit::testutil {

// random sparse combination over F_{n,p}^N (coefficients in -3..3)
inline FormCombo random_combo(int N, int n, int p, bool divfree, std::mt19937_64& rng,
                              int max_terms = 4) {
    auto pool = generate(N, n, p, divfree);
    FormCombo c;
    if (pool.empty()) return c;
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> count(1, max_terms);
    int k = count(rng);
    for (int i = 0; i < k; ++i) c.add(pool[pick(rng)], coeff(rng));
    return c;
}

inline FormCombo random_form(int N, int n, int p, bool divfree, std::mt19937_64& rng,
                             int max_terms = 4) {
    return wedge(random_combo(N, n, p, divfree, rng, max_terms));
}

} // namespace aromakit::testutil

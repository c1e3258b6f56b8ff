#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "semrel/index.hpp"

namespace semrel::bench {

// Units with Zipf-like term draws from a fixed vocabulary. Seeded, so every run sees the
// same collection.
inline std::vector<UnitTerms> synthetic_units(std::size_t count, std::size_t vocabulary, std::size_t per_unit,
                                              std::size_t units_per_doc = 1)
{
    std::mt19937_64 rng(42);
    std::vector<double> weights(vocabulary);
    for (std::size_t i = 0; i < vocabulary; ++i) {
        weights[i] = 1.0 / static_cast<double>(i + 1);
    }
    std::discrete_distribution<std::size_t> term(weights.begin(), weights.end());
    std::vector<UnitTerms> units;
    units.reserve(count);
    for (std::size_t u = 0; u < count; ++u) {
        const std::string doc = "d" + std::to_string(u / units_per_doc);
        UnitTerms unit{units_per_doc == 1 ? doc : doc + "#" + std::to_string(u % units_per_doc), doc, {}};
        unit.terms.reserve(per_unit);
        for (std::size_t i = 0; i < per_unit; ++i) {
            unit.terms.push_back("t" + std::to_string(term(rng)));
        }
        units.push_back(std::move(unit));
    }
    return units;
}

}  // namespace semrel::bench

#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace glcviz {

/// Fisher-Yates on raw mt19937_64 output. The permutation for a given seed is
/// identical across standard library implementations.
template <typename T>
void seeded_shuffle(std::vector<T>& items, std::mt19937_64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng() % i);
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace glcviz

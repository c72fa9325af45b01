#include "livelab/mc/explore.hpp"

#include <algorithm>

#include "livelab/errors.hpp"

namespace livelab::mc {

std::int64_t formula_oracle(std::int64_t i, std::int64_t j, std::int64_t x) {
    if (i < 1 || j < 1 || x < 0) throw Error("formula needs i >= 1, j >= 1, x >= 0");
    return j * std::min(x, i) + j + 2 + (j + 2) / 2;
}

} // namespace livelab::mc

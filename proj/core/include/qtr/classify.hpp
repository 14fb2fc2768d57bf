#pragma once

#include "qtr/rank.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace qtr {

/*
 * A factorization-shape characterization of a small 2-rank. Predicates read
 * only the counts and split/inert tags of an NShape, never symbol values.
 * id is "r<rank>.<item>", e.g. "r2.6" for n = delta*q1*q2 with at least one
 * q inert.
 */
struct ShapePattern {
    std::string id;
    std::string description;
    int rank = 0;
    std::function<bool(const NShape&)> matches;
};

/// All 23 patterns: 2 for rank 0, 3 for rank 1, 7 for rank 2, 11 for rank 3.
const std::vector<ShapePattern>& shape_patterns();

struct Classification {
    /// Empty means rank >= 4.
    std::optional<int> rank;
    const ShapePattern* pattern = nullptr;

    bool at_least_four() const noexcept { return !rank.has_value(); }
};

/// Throws std::logic_error if two patterns match (they are meant to be disjoint).
Classification classify_small_rank(const NShape& shape);
Classification classify_small_rank(const FieldInput& input);

/*
 * Every valid n <= n_max (squarefree, prime to ell) whose 2-rank is target,
 * ascending. Targets 0..3 go through the shape patterns; larger targets
 * through rank_closed.
 */
std::vector<Integer> enumerate_rank(const Integer& ell, const Integer& n_max, int target);

}  // namespace qtr

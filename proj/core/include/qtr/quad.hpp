#pragma once

#include "qtr/ntheory.hpp"

#include <cstddef>
#include <string_view>

namespace qtr {

/*
 * Fundamental unit eps0 = (u + v*sqrt(ell))/2 of k = Q(sqrt(ell)) for a
 * prime ell = 5 (mod 8): the solution of u^2 - ell*v^2 = -4 with v > 0
 * minimal. u and v have the same parity.
 */
struct FundamentalUnit {
    Integer u;
    Integer v;
    /* Number of partial quotients of (1 + sqrt(ell))/2 that were consumed. */
    std::size_t period = 0;
};

enum class SplittingType { Inert, Split, Ramified };

std::string_view to_string(SplittingType type) noexcept;
char tag_letter(SplittingType type) noexcept;

/*
 * Continued fraction of (1 + sqrt(ell))/2. The expansion is stopped at the
 * end of the first period, where the convergent A/B gives
 * u = 2A - B, v = B with u^2 - ell*v^2 = -4.
 */
FundamentalUnit fundamental_unit(const Integer& ell);

/* Behaviour of the rational prime r in Q(sqrt(ell)). */
SplittingType splitting_type(const Integer& r, const Integer& ell);

}  // namespace qtr

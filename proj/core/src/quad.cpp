#include "qtr/quad.hpp"

namespace qtr {

namespace {

void require_five_mod_eight_prime(const Integer& ell, const char* who) {
    if (mpz_fdiv_ui(ell.get_mpz_t(), 8) != 5 || !is_prime(ell)) {
        throw std::domain_error(std::string(who) + ": " + to_string(ell) +
                                " is not a prime = 5 mod 8");
    }
}

}  // namespace

std::string_view to_string(SplittingType type) noexcept {
    switch (type) {
        case SplittingType::Inert: return "inert";
        case SplittingType::Split: return "split";
        case SplittingType::Ramified: return "ramified";
    }
    return "?";
}

char tag_letter(SplittingType type) noexcept {
    switch (type) {
        case SplittingType::Inert: return 'I';
        case SplittingType::Split: return 'S';
        case SplittingType::Ramified: return 'R';
    }
    return '?';
}

FundamentalUnit fundamental_unit(const Integer& ell) {
    require_five_mod_eight_prime(ell, "fundamental_unit");

    // x_k = (P + sqrt(ell)) / Q, starting from (1 + sqrt(ell)) / 2.
    // Q always divides ell - P^2.
    const Integer root = isqrt(ell);
    Integer P = 1, Q = 2;
    Integer A1 = 1, A2 = 0;  // A_{k-1}, A_{k-2}
    Integer B1 = 0, B2 = 1;

    for (std::size_t k = 1;; ++k) {
        Integer a = (P + root) / Q;
        Integer A = a * A1 + A2;
        Integer B = a * B1 + B2;
        A2 = std::move(A1);
        A1 = std::move(A);
        B2 = std::move(B1);
        B1 = std::move(B);

        P = a * Q - P;
        Q = (ell - P * P) / Q;

        // Back at a complete quotient with denominator 2: end of a period.
        if (Q == 2) {
            Integer u = 2 * A1 - B1;
            Integer v = B1;
            Integer norm = u * u - ell * v * v;
            if (norm == -4) return {std::move(u), std::move(v), k};
            if (norm != 4) {
                throw std::logic_error("fundamental_unit: period end without a unit for " +
                                       to_string(ell));
            }
            // Norm +4 at the first period end would mean N(eps0) = +1, which
            // cannot happen for a prime ell = 1 (mod 4); keep going regardless.
        }
    }
}

SplittingType splitting_type(const Integer& r, const Integer& ell) {
    require_five_mod_eight_prime(ell, "splitting_type");
    if (r == ell) return SplittingType::Ramified;
    if (r == 2) return SplittingType::Inert;
    int symbol = legendre(r, ell);
    if (symbol == 0) throw std::domain_error("splitting_type: " + to_string(r) + " shares a factor with ell");
    return symbol == 1 ? SplittingType::Split : SplittingType::Inert;
}

}  // namespace qtr

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qtr {

using Integer = mpz_class;

struct PrimePower {
    Integer prime;
    unsigned exponent = 0;
};

/* Ascending by prime; the product of prime^exponent is the factored value. */
using PrimeFactorization = std::vector<PrimePower>;

/* ell = b^2 + c^2 with b even and c odd, both positive. */
struct TwoSquares {
    Integer b;
    Integer c;
};

class NotSquarefree : public std::domain_error {
  public:
    NotSquarefree(Integer value, Integer repeated_prime);
    const Integer& value() const noexcept { return value_; }
    const Integer& repeated_prime() const noexcept { return prime_; }

  private:
    Integer value_;
    Integer prime_;
};

class NotQuadraticResidue : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/*
 * Primality. Unconditional (deterministic Miller-Rabin with the first
 * twelve prime bases) for m < 2^64; above that, GMP's BPSW-based test,
 * which has no known counterexample but is not a proof.
 */
bool is_prime(const Integer& m);
bool is_prime(std::uint64_t m);

/* Full factorization of n >= 1: wheel trial division, then Pollard-Brent rho. */
PrimeFactorization factor(const Integer& n);

/* Distinct primes of n in ascending order; throws NotSquarefree on p^2 | n. */
std::vector<Integer> factor_squarefree(const Integer& n);

/* Legendre symbol (a/p) for an odd prime p, in {-1, 0, 1}. */
int legendre(const Integer& a, const Integer& p);

/*
 * Rational quartic residue symbol (a/p)_4 for (a/p) = 1.
 * p = 1 (mod 4): the sign of a^((p-1)/4) mod p.
 * p = 3 (mod 4): every square is a fourth power, so the symbol is +1.
 */
int quartic_symbol(const Integer& a, const Integer& p);

/* A square root of -1 modulo a prime p = 1 (mod 4). */
Integer sqrt_minus_one(const Integer& p);

/* Cornacchia's algorithm; ell must be a prime = 1 (mod 4). */
TwoSquares two_squares(const Integer& ell);

Integer isqrt(const Integer& n);
bool is_perfect_square(const Integer& n);

std::string to_string(const Integer& n);

}  // namespace qtr

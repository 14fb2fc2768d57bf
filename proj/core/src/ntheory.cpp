#include "qtr/ntheory.hpp"

#include <algorithm>
#include <array>
#include <limits>

namespace qtr {

namespace {

using u64 = std::uint64_t;
__extension__ typedef unsigned __int128 u128;

constexpr u64 kTrialBound = 1u << 16;

u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod(u64 base, u64 exp, u64 m) {
    u64 result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool fits_u64(const Integer& n) {
    return sgn(n) >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
}

u64 to_u64(const Integer& n) {
    u64 out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, n.get_mpz_t());
    return out;
}

Integer from_u64(u64 v) {
    Integer out;
    mpz_import(out.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
    return out;
}

bool miller_rabin_u64(u64 n) {
    u64 d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // These bases are a proof of primality for every n < 3.3e24.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (a % n == 0) continue;
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

// Brent's variant of Pollard rho. n is odd, composite, with no small factors.
Integer pollard_brent(const Integer& n) {
    for (unsigned long c = 1;; ++c) {
        Integer y = 2, x, q = 1, g = 1, ys;
        const unsigned long m = 128;
        unsigned long r = 1;
        auto f = [&](const Integer& v) -> Integer {
            Integer out = v * v + c;
            mpz_mod(out.get_mpz_t(), out.get_mpz_t(), n.get_mpz_t());
            return out;
        };
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = f(y);
            unsigned long k = 0;
            do {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    Integer diff = abs(x - y);
                    q = (q * diff) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                Integer diff = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void split_into(const Integer& n, std::vector<Integer>& primes) {
    if (n == 1) return;
    if (is_prime(n)) {
        primes.push_back(n);
        return;
    }
    if (is_perfect_square(n)) {
        Integer root = isqrt(n);
        split_into(root, primes);
        split_into(root, primes);
        return;
    }
    Integer d = pollard_brent(n);
    split_into(d, primes);
    split_into(n / d, primes);
}

}  // namespace

NotSquarefree::NotSquarefree(Integer value, Integer repeated_prime)
    : std::domain_error(to_string(value) + " is divisible by " + to_string(repeated_prime) + "^2"),
      value_(std::move(value)),
      prime_(std::move(repeated_prime)) {}

bool is_prime(std::uint64_t m) {
    if (m < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (m % p == 0) return m == p;
    }
    return miller_rabin_u64(m);
}

bool is_prime(const Integer& m) {
    if (sgn(m) <= 0) return false;
    if (fits_u64(m)) return is_prime(to_u64(m));
    return mpz_probab_prime_p(m.get_mpz_t(), 40) != 0;
}

PrimeFactorization factor(const Integer& n) {
    if (sgn(n) <= 0) throw std::domain_error("factor: argument must be positive");

    std::vector<Integer> primes;
    Integer rest = n;
    auto strip = [&](u64 p) {
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            primes.push_back(from_u64(p));
        }
    };
    strip(2);
    strip(3);
    // 6k +- 1 wheel
    for (u64 p = 5; p <= kTrialBound; p += 6) {
        if (rest < Integer(static_cast<unsigned long>(p)) * p) break;
        strip(p);
        strip(p + 2);
    }
    if (rest > 1) split_into(rest, primes);

    std::sort(primes.begin(), primes.end());
    PrimeFactorization out;
    for (const auto& p : primes) {
        if (!out.empty() && out.back().prime == p) {
            ++out.back().exponent;
        } else {
            out.push_back({p, 1});
        }
    }
    return out;
}

std::vector<Integer> factor_squarefree(const Integer& n) {
    std::vector<Integer> out;
    for (auto& [prime, exponent] : factor(n)) {
        if (exponent > 1) throw NotSquarefree(n, prime);
        out.push_back(prime);
    }
    return out;
}

int legendre(const Integer& a, const Integer& p) {
    Integer r = a % p;
    if (r < 0) r += p;
    return mpz_legendre(r.get_mpz_t(), p.get_mpz_t());
}

int quartic_symbol(const Integer& a, const Integer& p) {
    if (legendre(a, p) != 1) {
        throw NotQuadraticResidue("quartic symbol (" + to_string(a) + "/" + to_string(p) +
                                  ")_4 is undefined: not a quadratic residue");
    }
    if (mpz_fdiv_ui(p.get_mpz_t(), 4) == 3) return 1;

    Integer r = a % p;
    if (r < 0) r += p;
    Integer e = (p - 1) / 4;
    Integer x;
    mpz_powm(x.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    if (x == 1) return 1;
    if (x == p - 1) return -1;
    throw std::logic_error("quartic_symbol: " + to_string(p) + " is not prime");
}

Integer sqrt_minus_one(const Integer& p) {
    if (mpz_fdiv_ui(p.get_mpz_t(), 4) != 1) {
        throw std::domain_error("sqrt_minus_one: modulus must be 1 mod 4");
    }
    Integer e = (p - 1) / 4;
    for (Integer c = 2; c < p; ++c) {
        if (legendre(c, p) == -1) {
            Integer x;
            mpz_powm(x.get_mpz_t(), c.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
            return x;
        }
    }
    throw std::domain_error("sqrt_minus_one: no quadratic non-residue below " + to_string(p));
}

TwoSquares two_squares(const Integer& ell) {
    if (!is_prime(ell) || mpz_fdiv_ui(ell.get_mpz_t(), 4) != 1) {
        throw std::domain_error("two_squares: " + to_string(ell) + " is not a prime = 1 mod 4");
    }
    Integer r0 = ell;
    Integer r1 = sqrt_minus_one(ell);
    if (2 * r1 > ell) r1 = ell - r1;
    const Integer bound = isqrt(ell);
    while (r1 > bound) {
        Integer next = r0 % r1;
        r0 = r1;
        r1 = next;
    }
    Integer x = r1;
    Integer y = isqrt(ell - x * x);
    if (x * x + y * y != ell) throw std::logic_error("two_squares: Cornacchia failed");
    if (mpz_odd_p(x.get_mpz_t())) std::swap(x, y);
    return {x, y};
}

Integer isqrt(const Integer& n) {
    if (sgn(n) < 0) throw std::domain_error("isqrt of a negative number");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_perfect_square(const Integer& n) {
    return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

std::string to_string(const Integer& n) { return n.get_str(); }

}  // namespace qtr

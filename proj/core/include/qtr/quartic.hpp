#pragma once

#include "qtr/ntheory.hpp"
#include "qtr/quad.hpp"

#include <memory>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace qtr {

enum class FieldError {
    EllNotPrime,
    EllNotFiveMod8,
    NNotPositive,
    NotSquarefree,
    NotCoprime,
};

std::string_view to_string(FieldError error) noexcept;

/// Raised by validation; code() names the violated hypothesis.
class InvalidField : public std::invalid_argument {
  public:
    InvalidField(FieldError code, const std::string& detail);
    FieldError code() const noexcept { return code_; }

  private:
    FieldError code_;
};

/// Everything about k = Q(sqrt(ell)) that the per-n computations share.
struct BaseField {
    Integer ell;
    FundamentalUnit unit;
    TwoSquares squares;
};

/// Validates ell (prime, = 5 mod 8) and precomputes its unit and b^2 + c^2.
std::shared_ptr<const BaseField> make_base_field(const Integer& ell);

/*
 * A validated pair (ell, n) describing K = Q(sqrt(n * eps0 * sqrt(ell))).
 * The radicand itself is never formed; it lives in (ell, n, u, v).
 */
class FieldInput {
  public:
    const BaseField& base() const noexcept { return *base_; }
    const std::shared_ptr<const BaseField>& base_ptr() const noexcept { return base_; }
    const Integer& ell() const noexcept { return base_->ell; }
    const Integer& n() const noexcept { return n_; }
    const FundamentalUnit& unit() const noexcept { return base_->unit; }
    /// Distinct primes of n, ascending.
    const std::vector<Integer>& primes() const noexcept { return primes_; }

  private:
    FieldInput(std::shared_ptr<const BaseField> base, Integer n, std::vector<Integer> primes)
        : base_(std::move(base)), n_(std::move(n)), primes_(std::move(primes)) {}

    friend FieldInput validate(std::shared_ptr<const BaseField> base, const Integer& n);

    std::shared_ptr<const BaseField> base_;
    Integer n_;
    std::vector<Integer> primes_;
};

FieldInput validate(const Integer& ell, const Integer& n);
FieldInput validate(std::shared_ptr<const BaseField> base, const Integer& n);

/// K = Q(sqrt(a(ell + b sqrt(ell)))) with ell = b^2 + c^2, a odd squarefree.
struct WilliamsForm {
    Integer a;
    Integer b;
    Integer c;

    friend bool operator==(const WilliamsForm&, const WilliamsForm&) = default;
};

WilliamsForm to_williams(const FieldInput& input);
Integer from_williams(const WilliamsForm& form, const Integer& ell);

/*
 * Q(sqrt(2a(ell + b sqrt(ell)))) = Q(sqrt(a(ell + c sqrt(ell)))) for a, c odd.
 * With doubled set, drops the 2 by swapping b and c; otherwise the identity.
 */
WilliamsForm zink_reduce(const Integer& a, const Integer& b, const Integer& c, const Integer& ell,
                         bool doubled);

/// f = 2^e * a * ell, e in {0, 2, 3}.
struct Conductor {
    int e = 0;
    Integer f;
};

/// Only the ell = 1 (mod 4) branches apply; ell must be 5 mod 8.
Conductor conductor(const WilliamsForm& form, const Integer& ell);

/// x^4 + x2 * x^2 + x0 with x2 = -n*v*ell and x0 = n^2 * ell.
struct DefiningPolynomial {
    Integer x2;
    Integer x0;
};

DefiningPolynomial defining_polynomial(const FieldInput& input);

/// ell divides x2 and x0, ell^2 does not divide x0.
bool is_eisenstein(const DefiningPolynomial& poly, const Integer& ell);

/// x0 * (x2^2 - 4 x0); a perfect square exactly when the quartic is cyclic.
Integer cyclicity_certificate(const DefiningPolynomial& poly);

}  // namespace qtr

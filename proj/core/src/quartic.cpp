#include "qtr/quartic.hpp"

namespace qtr {

std::string_view to_string(FieldError error) noexcept {
    switch (error) {
        case FieldError::EllNotPrime: return "EllNotPrime";
        case FieldError::EllNotFiveMod8: return "EllNotFiveMod8";
        case FieldError::NNotPositive: return "NNotPositive";
        case FieldError::NotSquarefree: return "NotSquarefree";
        case FieldError::NotCoprime: return "NotCoprime";
    }
    return "?";
}

InvalidField::InvalidField(FieldError code, const std::string& detail)
    : std::invalid_argument(std::string(to_string(code)) + ": " + detail), code_(code) {}

std::shared_ptr<const BaseField> make_base_field(const Integer& ell) {
    if (!is_prime(ell)) {
        throw InvalidField(FieldError::EllNotPrime, "ell = " + to_string(ell) + " is not a prime");
    }
    if (mpz_fdiv_ui(ell.get_mpz_t(), 8) != 5) {
        throw InvalidField(FieldError::EllNotFiveMod8,
                           "ell = " + to_string(ell) + " is not congruent to 5 mod 8");
    }
    return std::make_shared<const BaseField>(BaseField{ell, fundamental_unit(ell), two_squares(ell)});
}

FieldInput validate(const Integer& ell, const Integer& n) { return validate(make_base_field(ell), n); }

FieldInput validate(std::shared_ptr<const BaseField> base, const Integer& n) {
    if (sgn(n) <= 0) {
        throw InvalidField(FieldError::NNotPositive, "n = " + to_string(n) + " is not positive");
    }
    Integer g;
    mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), base->ell.get_mpz_t());
    if (g != 1) {
        throw InvalidField(FieldError::NotCoprime,
                           "n = " + to_string(n) + " is not prime to ell = " + to_string(base->ell));
    }
    std::vector<Integer> primes;
    try {
        primes = factor_squarefree(n);
    } catch (const NotSquarefree& e) {
        throw InvalidField(FieldError::NotSquarefree, e.what());
    }
    return FieldInput(std::move(base), n, std::move(primes));
}

WilliamsForm zink_reduce(const Integer& a, const Integer& b, const Integer& c, const Integer& ell,
                         bool doubled) {
    if (b * b + c * c != ell || mpz_even_p(a.get_mpz_t()) || mpz_even_p(c.get_mpz_t())) {
        throw std::domain_error("zink_reduce: requires b^2 + c^2 = ell with a, c odd");
    }
    if (!doubled) return {a, b, c};
    return {a, c, b};
}

WilliamsForm to_williams(const FieldInput& input) {
    const auto& sq = input.base().squares;  // b even, c odd
    if (mpz_odd_p(input.n().get_mpz_t())) return {input.n(), sq.b, sq.c};
    return zink_reduce(input.n() / 2, sq.b, sq.c, input.ell(), true);
}

Integer from_williams(const WilliamsForm& form, const Integer& ell) {
    if (form.b * form.b + form.c * form.c != ell) {
        throw std::domain_error("from_williams: b^2 + c^2 != ell");
    }
    return mpz_odd_p(form.b.get_mpz_t()) ? Integer(2 * form.a) : form.a;
}

Conductor conductor(const WilliamsForm& form, const Integer& ell) {
    if (mpz_fdiv_ui(ell.get_mpz_t(), 8) != 5) {
        throw std::domain_error("conductor: ell must be 5 mod 8");
    }
    int e;
    if (mpz_odd_p(form.b.get_mpz_t())) {
        e = 3;
    } else {
        Integer s = form.a + form.b;
        e = mpz_fdiv_ui(s.get_mpz_t(), 4) == 3 ? 2 : 0;
    }
    Integer f = form.a * ell;
    mpz_mul_2exp(f.get_mpz_t(), f.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    return {e, std::move(f)};
}

DefiningPolynomial defining_polynomial(const FieldInput& input) {
    const Integer& n = input.n();
    const Integer& ell = input.ell();
    return {-(n * input.unit().v * ell), n * n * ell};
}

bool is_eisenstein(const DefiningPolynomial& poly, const Integer& ell) {
    return mpz_divisible_p(poly.x2.get_mpz_t(), ell.get_mpz_t()) &&
           mpz_divisible_p(poly.x0.get_mpz_t(), ell.get_mpz_t()) &&
           !mpz_divisible_p(poly.x0.get_mpz_t(), Integer(ell * ell).get_mpz_t());
}

Integer cyclicity_certificate(const DefiningPolynomial& poly) {
    return poly.x0 * (poly.x2 * poly.x2 - 4 * poly.x0);
}

}  // namespace qtr

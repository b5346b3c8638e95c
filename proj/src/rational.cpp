#include "lieconf/rational.hpp"

#include "lieconf/errors.hpp"

namespace lieconf {

Rational make_rational(long num, long den) {
    if (den == 0)
        throw DomainError("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational rational_from_string(std::string_view text) {
    if (text.empty())
        throw DomainError("empty rational literal");
    Rational q;
    if (q.set_str(std::string(text), 10) != 0)
        throw DomainError("bad rational literal '" + std::string(text) + "'");
    if (q.get_den() == 0)
        throw DomainError("rational with zero denominator: '" + std::string(text) + "'");
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) {
    return q.get_str();
}

Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Integer factorial(unsigned long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Integer falling_factorial(unsigned long n, unsigned long e) {
    if (e > n)
        return Integer(0);
    Integer r(1);
    for (unsigned long i = 0; i < e; ++i)
        r *= Integer(n - i);
    return r;
}

Rational rational_pow(const Rational& base, unsigned long exp) {
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), exp);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), exp);
    return r; // base canonical => num/den coprime => powers coprime
}

bool is_integer(const Rational& q) {
    return q.get_den() == 1;
}

} // namespace lieconf

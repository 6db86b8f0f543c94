#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "consep/unimodular.hpp"

namespace consep {

// Primitive integer polynomial with positive leading coefficient, stored as
// ascending coefficients c[0] + c[1] x + ... + c[r] x^r with r >= 1.
// Instances are only created through normalize(), so the invariants hold
// everywhere by construction.
class IntPolynomial {
public:
    // Divides out the content, flips the sign so the leading coefficient is
    // positive, and drops trailing zero coefficients.  Rejects the zero and
    // constant polynomials.
    static IntPolynomial normalize(std::vector<mpz_class> raw);

    // Text form "[c0,c1,...,cr]", ascending.  Whitespace tolerated.
    static IntPolynomial parse(const std::string& text);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const mpz_class& coeff(int i) const { return c_[static_cast<size_t>(i)]; }
    const mpz_class& leading() const { return c_.back(); }
    const std::vector<mpz_class>& coeffs() const { return c_; }

    bool operator==(const IntPolynomial& o) const { return c_ == o.c_; }
    std::string to_string() const;

private:
    explicit IntPolynomial(std::vector<mpz_class> c) : c_(std::move(c)) {}
    std::vector<mpz_class> c_;
};

// Raw coefficient-vector helpers (ascending order, no invariants assumed).
std::vector<mpz_class> poly_derivative(const std::vector<mpz_class>& c);
mpz_class poly_content(const std::vector<mpz_class>& c);
mpq_class poly_eval_q(const std::vector<mpz_class>& c, const mpq_class& x);

// Resultant of two integer polynomials, two independent exact routes.
// Bareiss fraction-free elimination on the Sylvester matrix:
mpz_class resultant_sylvester(const std::vector<mpz_class>& f,
                              const std::vector<mpz_class>& g);
// Subresultant polynomial remainder sequence:
mpz_class resultant_subresultant(const std::vector<mpz_class>& f,
                                 const std::vector<mpz_class>& g);

// Greatest common divisor over Z[x] (primitive result, positive leading
// coefficient).  Used for squarefree parts.
std::vector<mpz_class> poly_gcd(std::vector<mpz_class> f, std::vector<mpz_class> g);

bool is_squarefree(const IntPolynomial& f);

// disc(f) = (-1)^(r(r-1)/2) Res(f, f') / lc(f), always an integer.
// Requires degree >= 2.  Zero exactly when f has a repeated root.
mpz_class discriminant(const IntPolynomial& f);

// Defining polynomial of (a x + b)/(c x + d) applied to a root of f:
// substitutes the inverse map into the homogenized form,
// F(d X - b Y, -c X + a Y) at Y = 1, then normalizes.
// Degree drops below deg f only if f has the pole -d/c or the point at
// infinity image as a root, which cannot happen for f irreducible of
// degree >= 2; the result is normalized either way.
IntPolynomial transform_poly(const IntPolynomial& f, const UnimodularMatrix& m);

struct IrreducibilityCertificate {
    bool certified = false;
    // Prime p not dividing lc(f) * disc(f) with f mod p irreducible.
    std::optional<unsigned long> witness_prime;
    int primes_tried = 0;
};

// Tries small primes (skipping those dividing lc * disc) and tests
// irreducibility of f mod p by the Frobenius-power criterion.  A positive
// answer is a proof; a negative answer after the budget is only "unverified".
IrreducibilityCertificate try_certify_irreducible(const IntPolynomial& f,
                                                  int prime_budget = 25);

// Recheck a recorded witness prime.  Used to validate stored certificates.
bool verify_irreducibility_witness(const IntPolynomial& f, unsigned long p);

}  // namespace consep

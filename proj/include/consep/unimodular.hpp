#pragma once

#include <gmpxx.h>

#include <array>
#include <stdexcept>
#include <string>

namespace consep {

// Integer 2x2 matrix [[a, b], [c, d]] with determinant +1 or -1, acting on
// numbers by x -> (a x + b) / (c x + d).
struct UnimodularMatrix {
    mpz_class a, b, c, d;

    UnimodularMatrix() : a(1), b(0), c(0), d(1) {}
    UnimodularMatrix(mpz_class a_, mpz_class b_, mpz_class c_, mpz_class d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
        if (det() != 1 && det() != -1)
            throw std::invalid_argument("UnimodularMatrix: determinant not +-1");
    }

    mpz_class det() const { return a * d - b * c; }
    bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }

    UnimodularMatrix compose(const UnimodularMatrix& rhs) const {
        return UnimodularMatrix(a * rhs.a + b * rhs.c, a * rhs.b + b * rhs.d,
                                c * rhs.a + d * rhs.c, c * rhs.b + d * rhs.d);
    }
    UnimodularMatrix inverse() const {
        mpz_class dt = det();  // +-1, so the adjugate divided by det stays integral
        return UnimodularMatrix(d * dt, -b * dt, -c * dt, a * dt);
    }

    bool operator==(const UnimodularMatrix& o) const {
        return a == o.a && b == o.b && c == o.c && d == o.d;
    }

    // Serialized as the flat row-major list "[a,b,c,d]".
    std::string to_string() const {
        return "[" + a.get_str() + "," + b.get_str() + "," + c.get_str() + "," +
               d.get_str() + "]";
    }
    static UnimodularMatrix parse(const std::string& text);

    static UnimodularMatrix translation(const mpz_class& t) {
        return UnimodularMatrix(1, t, 0, 1);
    }
    static UnimodularMatrix inversion() {  // x -> -1/x
        return UnimodularMatrix(0, -1, 1, 0);
    }
};

}  // namespace consep

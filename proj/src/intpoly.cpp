#include "consep/intpoly.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

namespace consep {

namespace {

using Vec = std::vector<mpz_class>;

void trim(Vec& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

int deg(const Vec& c) { return static_cast<int>(c.size()) - 1; }  // -1 for zero

Vec mul(const Vec& a, const Vec& b) {
    if (a.empty() || b.empty()) return {};
    Vec r(a.size() + b.size() - 1, mpz_class(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

void scale(Vec& a, const mpz_class& s) {
    for (auto& x : a) x *= s;
}

// prem(A, B) = lc(B)^(deg A - deg B + 1) * A  mod  B, exact over Z.
Vec prem(Vec A, const Vec& B) {
    int dB = deg(B);
    const mpz_class& l = B.back();
    long e = deg(A) - dB + 1;
    while (!A.empty() && deg(A) >= dB) {
        int shift = deg(A) - dB;
        mpz_class lead = A.back();
        scale(A, l);
        for (int j = 0; j <= dB; ++j)
            A[static_cast<size_t>(shift + j)] -= lead * B[static_cast<size_t>(j)];
        trim(A);
        --e;
    }
    if (e > 0) {
        mpz_class le;
        mpz_pow_ui(le.get_mpz_t(), l.get_mpz_t(), static_cast<unsigned long>(e));
        scale(A, le);
    }
    return A;
}

mpz_class content_of(const Vec& c) {
    mpz_class g = 0;
    for (const auto& x : c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;  // 0 only for the zero polynomial
}

void divide_exact(Vec& c, const mpz_class& d) {
    for (auto& x : c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
}

}  // namespace

std::vector<mpz_class> poly_derivative(const std::vector<mpz_class>& c) {
    Vec d;
    for (size_t i = 1; i < c.size(); ++i) d.push_back(mpz_class(i) * c[i]);
    trim(d);
    return d;
}

mpz_class poly_content(const std::vector<mpz_class>& c) { return content_of(c); }

mpq_class poly_eval_q(const std::vector<mpz_class>& c, const mpq_class& x) {
    mpq_class acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + mpq_class(*it);
    return acc;
}

mpz_class resultant_sylvester(const std::vector<mpz_class>& f,
                              const std::vector<mpz_class>& g) {
    Vec F = f, G = g;
    trim(F);
    trim(G);
    int m = deg(F), n = deg(G);
    if (m < 0 || n < 0) return 0;
    if (m == 0) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), F[0].get_mpz_t(), static_cast<unsigned long>(n));
        return r;
    }
    if (n == 0) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), G[0].get_mpz_t(), static_cast<unsigned long>(m));
        return r;
    }
    int N = m + n;
    std::vector<Vec> M(static_cast<size_t>(N), Vec(static_cast<size_t>(N), mpz_class(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) M[i][i + j] = F[static_cast<size_t>(m - j)];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) M[n + i][i + j] = G[static_cast<size_t>(n - j)];

    // Bareiss fraction-free elimination.
    int sign = 1;
    mpz_class prev = 1;
    for (int k = 0; k < N - 1; ++k) {
        if (M[k][k] == 0) {
            int piv = -1;
            for (int i = k + 1; i < N; ++i)
                if (M[i][k] != 0) { piv = i; break; }
            if (piv < 0) return 0;
            std::swap(M[static_cast<size_t>(k)], M[static_cast<size_t>(piv)]);
            sign = -sign;
        }
        for (int i = k + 1; i < N; ++i) {
            for (int j = k + 1; j < N; ++j) {
                mpz_class t = M[i][j] * M[k][k] - M[i][k] * M[k][j];
                mpz_divexact(M[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            M[i][k] = 0;
        }
        prev = M[k][k];
    }
    return sign * M[static_cast<size_t>(N - 1)][static_cast<size_t>(N - 1)];
}

mpz_class resultant_subresultant(const std::vector<mpz_class>& f,
                                 const std::vector<mpz_class>& g) {
    Vec A = f, B = g;
    trim(A);
    trim(B);
    if (A.empty() || B.empty()) return 0;
    int s = 1;
    if (deg(A) < deg(B)) {
        if ((deg(A) & 1) && (deg(B) & 1)) s = -s;
        std::swap(A, B);
    }
    if (deg(B) == 0) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), B[0].get_mpz_t(), static_cast<unsigned long>(deg(A)));
        return s * r;
    }
    mpz_class ca = content_of(A), cb = content_of(B);
    divide_exact(A, ca);
    divide_exact(B, cb);
    mpz_class t, ta, tb;
    mpz_pow_ui(ta.get_mpz_t(), ca.get_mpz_t(), static_cast<unsigned long>(deg(B)));
    mpz_pow_ui(tb.get_mpz_t(), cb.get_mpz_t(), static_cast<unsigned long>(deg(A)));
    t = ta * tb;
    mpz_class gg = 1, h = 1;
    while (true) {
        long d = deg(A) - deg(B);
        if ((deg(A) & 1) && (deg(B) & 1)) s = -s;
        Vec R = prem(A, B);
        A = B;
        // B <- R / (g h^d)
        mpz_class hd;
        mpz_pow_ui(hd.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(d));
        mpz_class divisor = gg * hd;
        B = R;
        if (!B.empty()) divide_exact(B, divisor);
        gg = A.back();
        if (d > 0) {
            // h <- g^d / h^(d-1)
            mpz_class gd, hd1;
            mpz_pow_ui(gd.get_mpz_t(), gg.get_mpz_t(), static_cast<unsigned long>(d));
            mpz_pow_ui(hd1.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(d - 1));
            mpz_divexact(h.get_mpz_t(), gd.get_mpz_t(), hd1.get_mpz_t());
        }
        if (B.empty()) return 0;
        if (deg(B) == 0) break;
    }
    // Res = s * t * lc(B)^(deg A) / h^(deg A - 1)
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), B[0].get_mpz_t(), static_cast<unsigned long>(deg(A)));
    mpz_pow_ui(den.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(deg(A) - 1));
    mpz_class out;
    mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return s * t * out;
}

std::vector<mpz_class> poly_gcd(std::vector<mpz_class> f, std::vector<mpz_class> g) {
    trim(f);
    trim(g);
    auto canon = [](Vec v) {
        if (v.empty()) return v;
        mpz_class c = content_of(v);
        divide_exact(v, c);
        if (v.back() < 0) scale(v, mpz_class(-1));
        return v;
    };
    if (f.empty()) return canon(std::move(g));
    if (g.empty()) return canon(std::move(f));
    mpz_class cf = content_of(f), cg = content_of(g), cd;
    mpz_gcd(cd.get_mpz_t(), cf.get_mpz_t(), cg.get_mpz_t());
    divide_exact(f, cf);
    divide_exact(g, cg);
    if (deg(f) < deg(g)) std::swap(f, g);
    while (!g.empty()) {
        Vec r = prem(f, g);
        if (!r.empty()) {
            mpz_class cr = content_of(r);
            divide_exact(r, cr);
        }
        f = std::move(g);
        g = std::move(r);
    }
    if (f.back() < 0) scale(f, mpz_class(-1));
    scale(f, cd);
    return f;
}

IntPolynomial IntPolynomial::normalize(std::vector<mpz_class> raw) {
    trim(raw);
    if (raw.empty()) throw std::invalid_argument("normalize: zero polynomial");
    if (raw.size() == 1) throw std::invalid_argument("normalize: constant polynomial");
    mpz_class c = content_of(raw);
    divide_exact(raw, c);
    if (raw.back() < 0) scale(raw, mpz_class(-1));
    IntPolynomial p(std::move(raw));
    if (p.degree() >= 2) {
        // Distinct conjugates are assumed everywhere downstream.
        mpz_class res = resultant_sylvester(p.coeffs(), poly_derivative(p.coeffs()));
        if (res == 0) throw std::invalid_argument("normalize: polynomial has repeated roots");
    }
    return p;
}

IntPolynomial IntPolynomial::parse(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (!s.empty() && s.front() == '[') {
        if (s.back() != ']') throw std::invalid_argument("parse: unbalanced brackets");
        s = s.substr(1, s.size() - 2);
    }
    if (s.empty()) throw std::invalid_argument("parse: empty coefficient list");
    std::vector<mpz_class> c;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw std::invalid_argument("parse: empty coefficient");
        c.emplace_back(item);  // throws on malformed integers
    }
    return normalize(std::move(c));
}

std::string IntPolynomial::to_string() const {
    std::string out = "[";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) out += ",";
        out += c_[i].get_str();
    }
    return out + "]";
}

bool is_squarefree(const IntPolynomial& f) {
    if (f.degree() < 2) return true;
    return resultant_sylvester(f.coeffs(), poly_derivative(f.coeffs())) != 0;
}

mpz_class discriminant(const IntPolynomial& f) {
    int r = f.degree();
    if (r < 2) throw std::invalid_argument("discriminant: degree must be >= 2");
    mpz_class res = resultant_sylvester(f.coeffs(), poly_derivative(f.coeffs()));
    mpz_class d;
    mpz_divexact(d.get_mpz_t(), res.get_mpz_t(), f.leading().get_mpz_t());
    // (-1)^(r(r-1)/2)
    if (((static_cast<long>(r) * (r - 1)) / 2) % 2 != 0) d = -d;
    return d;
}

IntPolynomial transform_poly(const IntPolynomial& f, const UnimodularMatrix& m) {
    int r = f.degree();
    // Substitute (X, Y) -> (d X - b Y, -c X + a Y) in the homogenized form
    // and evaluate at Y = 1: linear factors d X - b and -c X + a.
    Vec lin1 = {-m.b, m.d};
    Vec lin2 = {m.a, -m.c};
    trim(lin1);
    trim(lin2);
    std::vector<Vec> pow1(static_cast<size_t>(r) + 1), pow2(static_cast<size_t>(r) + 1);
    pow1[0] = {mpz_class(1)};
    pow2[0] = {mpz_class(1)};
    for (int i = 1; i <= r; ++i) {
        pow1[static_cast<size_t>(i)] = mul(pow1[static_cast<size_t>(i - 1)], lin1);
        pow2[static_cast<size_t>(i)] = mul(pow2[static_cast<size_t>(i - 1)], lin2);
    }
    Vec out(static_cast<size_t>(r) + 1, mpz_class(0));
    for (int i = 0; i <= r; ++i) {
        if (f.coeff(i) == 0) continue;
        Vec term = mul(pow1[static_cast<size_t>(i)], pow2[static_cast<size_t>(r - i)]);
        for (size_t j = 0; j < term.size(); ++j) out[j] += f.coeff(i) * term[j];
    }
    return IntPolynomial::normalize(std::move(out));
}

// ---- irreducibility over F_p --------------------------------------------

namespace {

struct ModPoly {
    std::vector<uint64_t> c;  // ascending, trimmed
    uint64_t p;
};

void mp_trim(std::vector<uint64_t>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

uint64_t mulp(uint64_t a, uint64_t b, uint64_t p) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % p);
}

uint64_t powp(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1 % p;
    while (e) {
        if (e & 1) r = mulp(r, a, p);
        a = mulp(a, a, p);
        e >>= 1;
    }
    return r;
}

uint64_t invp(uint64_t a, uint64_t p) { return powp(a % p, p - 2, p); }

std::vector<uint64_t> mp_mul(const std::vector<uint64_t>& a,
                             const std::vector<uint64_t>& b, uint64_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint64_t> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + static_cast<__uint128_t>(a[i]) * b[j]) % p;
    }
    mp_trim(r);
    return r;
}

// Remainder modulo a monic polynomial.
std::vector<uint64_t> mp_rem(std::vector<uint64_t> a,
                             const std::vector<uint64_t>& monic, uint64_t p) {
    size_t n = monic.size() - 1;
    while (a.size() > n) {
        uint64_t lead = a.back();
        size_t shift = a.size() - 1 - n;
        if (lead) {
            for (size_t j = 0; j < n; ++j) {
                uint64_t sub = mulp(lead, monic[j], p);
                uint64_t& t = a[shift + j];
                t = (t + p - sub) % p;
            }
        }
        a.pop_back();
        mp_trim(a);
        if (a.size() <= n) break;
    }
    mp_trim(a);
    return a;
}

std::vector<uint64_t> mp_gcd(std::vector<uint64_t> a, std::vector<uint64_t> b,
                             uint64_t p) {
    mp_trim(a);
    mp_trim(b);
    while (!b.empty()) {
        uint64_t inv = invp(b.back(), p);
        std::vector<uint64_t> monic = b;
        for (auto& x : monic) x = mulp(x, inv, p);
        a = mp_rem(std::move(a), monic, p);
        std::swap(a, b);
    }
    return a;
}

// x^(p^k) mod f, with f monic, via binary powering on the mpz exponent.
std::vector<uint64_t> mp_frobenius_pow(const std::vector<uint64_t>& f, uint64_t p,
                                       unsigned k) {
    mpz_class e;
    mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(p), k);
    std::vector<uint64_t> base = {0, 1};  // x
    base = mp_rem(base, f, p);
    std::vector<uint64_t> acc = {1};
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        acc = mp_rem(mp_mul(acc, acc, p), f, p);
        if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(i)))
            acc = mp_rem(mp_mul(acc, base, p), f, p);
    }
    return acc;
}

bool rabin_irreducible(const std::vector<uint64_t>& raw, uint64_t p) {
    std::vector<uint64_t> f = raw;
    mp_trim(f);
    size_t n = f.size() - 1;
    if (n == 0) return false;
    if (n == 1) return true;
    uint64_t inv = invp(f.back(), p);
    for (auto& x : f) x = mulp(x, inv, p);

    std::vector<unsigned> prime_divs;
    size_t nn = n;
    for (unsigned q = 2; q * q <= nn; ++q)
        if (nn % q == 0) {
            prime_divs.push_back(q);
            while (nn % q == 0) nn /= q;
        }
    if (nn > 1) prime_divs.push_back(static_cast<unsigned>(nn));

    for (unsigned q : prime_divs) {
        auto h = mp_frobenius_pow(f, p, static_cast<unsigned>(n / q));
        // h - x
        if (h.size() < 2) h.resize(2, 0);
        h[1] = (h[1] + p - 1) % p;
        mp_trim(h);
        auto g = mp_gcd(f, h, p);
        if (g.size() != 1) return false;
    }
    auto h = mp_frobenius_pow(f, p, static_cast<unsigned>(n));
    if (h.size() < 2) h.resize(2, 0);
    h[1] = (h[1] + p - 1) % p;
    mp_trim(h);
    return h.empty();
}

}  // namespace

bool verify_irreducibility_witness(const IntPolynomial& f, unsigned long p) {
    if (p < 2) return false;
    if (mpz_divisible_ui_p(f.leading().get_mpz_t(), p)) return false;
    std::vector<uint64_t> fp;
    for (const auto& c : f.coeffs()) {
        mpz_class r = c % static_cast<long>(p);
        if (r < 0) r += static_cast<long>(p);
        fp.push_back(r.get_ui());
    }
    mp_trim(fp);
    if (static_cast<int>(fp.size()) - 1 != f.degree()) return false;
    return rabin_irreducible(fp, p);
}

IrreducibilityCertificate try_certify_irreducible(const IntPolynomial& f,
                                                  int prime_budget) {
    IrreducibilityCertificate cert;
    if (f.degree() == 1) {
        cert.certified = true;  // linear polynomials are irreducible
        return cert;
    }
    mpz_class skip = f.leading() * discriminant(f);
    unsigned long p = 2;
    while (cert.primes_tried < prime_budget) {
        while (mpz_divisible_ui_p(skip.get_mpz_t(), p)) {
            mpz_class np;
            mpz_nextprime(np.get_mpz_t(), mpz_class(p).get_mpz_t());
            p = np.get_ui();
        }
        ++cert.primes_tried;
        if (verify_irreducibility_witness(f, p)) {
            cert.certified = true;
            cert.witness_prime = p;
            return cert;
        }
        mpz_class np;
        mpz_nextprime(np.get_mpz_t(), mpz_class(p).get_mpz_t());
        p = np.get_ui();
    }
    return cert;
}

UnimodularMatrix UnimodularMatrix::parse(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (!s.empty() && s.front() == '[') {
        if (s.back() != ']') throw std::invalid_argument("matrix parse: unbalanced brackets");
        s = s.substr(1, s.size() - 2);
    }
    std::vector<mpz_class> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) v.emplace_back(item);
    if (v.size() != 4) throw std::invalid_argument("matrix parse: need 4 entries");
    return UnimodularMatrix(v[0], v[1], v[2], v[3]);
}

}  // namespace consep

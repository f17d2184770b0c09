#include "geolab/rational.hpp"

#include <mpfr.h>

#include <cctype>
#include <cmath>

namespace geolab {

std::optional<Rat> rat_from_string(const std::string& text) {
    if (text.empty()) return std::nullopt;
    std::size_t i = 0;
    bool neg = false;
    if (text[i] == '+' || text[i] == '-') {
        neg = text[i] == '-';
        ++i;
    }
    std::string int_part, frac_part, den_part;
    auto take_digits = [&](std::string& out) {
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) out += text[i++];
    };
    take_digits(int_part);
    if (i < text.size() && text[i] == '.') {
        ++i;
        take_digits(frac_part);
        if (int_part.empty() && frac_part.empty()) return std::nullopt;
        if (i != text.size()) return std::nullopt;
        Int num(int_part.empty() ? "0" : int_part);
        Int scale = pow10(static_cast<unsigned>(frac_part.size()));
        num *= scale;
        if (!frac_part.empty()) num += Int(frac_part);
        Rat q(num, scale);
        q.canonicalize();
        return neg ? Rat(-q) : q;
    }
    if (int_part.empty()) return std::nullopt;
    if (i < text.size() && text[i] == '/') {
        ++i;
        take_digits(den_part);
        if (den_part.empty() || i != text.size()) return std::nullopt;
        Int den(den_part);
        if (den == 0) return std::nullopt;
        Rat q(Int(int_part), den);
        q.canonicalize();
        return neg ? Rat(-q) : q;
    }
    if (i != text.size()) return std::nullopt;
    Rat q{Int(int_part)};
    return neg ? Rat(-q) : q;
}

Rat rat_from_double(double x) {
    Rat q;
    mpq_set_d(q.get_mpq_t(), x);
    return q;
}

double rat_to_double(const Rat& q) {
    mpfr_t t;
    mpfr_init2(t, 53);
    mpfr_set_q(t, q.get_mpq_t(), MPFR_RNDN);
    double d = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clear(t);
    return d;
}

std::string rat_to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Int pow10(unsigned k) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, k);
    return r;
}

Int isqrt_floor(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

Int squarefree_part(const Int& n, unsigned long trial_bound) {
    Int m = n;
    Int sf = 1;
    for (unsigned long p = 2; p <= trial_bound; p = (p == 2 ? 3 : p + 2)) {
        Int pp(p);
        if (pp * pp > m) break;
        if (mpz_divisible_p(m.get_mpz_t(), pp.get_mpz_t()) == 0) continue;
        unsigned count = 0;
        while (mpz_divisible_p(m.get_mpz_t(), pp.get_mpz_t()) != 0) {
            m /= pp;
            ++count;
        }
        if (count % 2 == 1) sf *= pp;
    }
    // m is now 1, a prime, a prime power, or a composite of primes above the
    // bound; the perfect-square test catches the q^2 shape, other hidden
    // squares stay (harmless for soundness, only normalization strength).
    if (m > 1) {
        if (mpz_perfect_square_p(m.get_mpz_t()) == 0) sf *= m;
    }
    return sf;
}

std::optional<Rat> rat_exact_sqrt(const Rat& q) {
    if (q < 0) return std::nullopt;
    if (q == 0) return Rat(0);
    const Int& num = q.get_num();
    const Int& den = q.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
    if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
    Rat r(isqrt_floor(num), isqrt_floor(den));
    r.canonicalize();
    return r;
}

} // namespace geolab

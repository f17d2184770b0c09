#include "geolab/decimal.hpp"

#include "geolab/errors.hpp"

#include <cmath>

namespace geolab {

std::string Decimal::to_string() const {
    Int s = scaled;
    unsigned k = places;
    // trim trailing zeros
    while (k > 0 && mpz_divisible_ui_p(s.get_mpz_t(), 10) != 0) {
        s /= 10;
        --k;
    }
    bool neg = s < 0;
    Int abs_s = neg ? Int(-s) : s;
    std::string digits = abs_s.get_str();
    std::string out;
    if (k == 0) {
        out = digits;
    } else {
        while (digits.size() <= k) digits.insert(digits.begin(), '0');
        out = digits.substr(0, digits.size() - k) + "." + digits.substr(digits.size() - k);
    }
    if (neg && out.find_first_not_of("0.") != std::string::npos) out.insert(out.begin(), '-');
    return out;
}

Decimal round_display_rat(const Rat& x, unsigned k) {
    Rat scaled = x * Rat(pow10(k));
    // round half away from zero: floor(|v| + 1/2) with the sign reattached
    Rat mag = scaled >= 0 ? scaled : Rat(-scaled);
    mag += Rat(1, 2);
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), mag.get_num().get_mpz_t(), mag.get_den().get_mpz_t());
    if (scaled < 0) q = -q;
    return Decimal{q, k};
}

Decimal round_display(double x, unsigned k) {
    if (!std::isfinite(x)) throw Error(ErrorKind::NonFinite, "round_display of non-finite value");
    return round_display_rat(rat_from_double(x), k);
}

} // namespace geolab

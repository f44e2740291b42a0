#include "ramf/real.hpp"

#include <cmath>
#include <cstdlib>

namespace ramf {

Real::Real(const std::string& s, long prec) {
    mpfr_init2(v_, check_prec(prec));
    if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0) {
        mpfr_clear(v_);
        throw domain_error("Real: cannot parse decimal string '" + s + "'");
    }
}

std::string Real::to_decimal() const {
    // Enough digits that re-reading at the same precision reproduces the value.
    size_t digits = static_cast<size_t>(std::ceil(static_cast<double>(prec()) * 0.30103)) + 3;
    return to_decimal(digits);
}

std::string Real::to_decimal(size_t digits) const {
    if (is_nan()) return "nan";
    if (is_inf()) return sign() > 0 ? "inf" : "-inf";
    if (is_zero()) return "0";
    mpfr_exp_t e;
    char* raw = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
    std::string mant(raw);
    mpfr_free_str(raw);
    std::string sign_part;
    if (mant[0] == '-') {
        sign_part = "-";
        mant.erase(0, 1);
    }
    // strip trailing zeros but keep at least one digit
    size_t last = mant.find_last_not_of('0');
    mant.erase(last + 1);
    std::string body = mant.substr(0, 1);
    if (mant.size() > 1) body += "." + mant.substr(1);
    return sign_part + body + "e" + std::to_string(static_cast<long>(e) - 1);
}

} // namespace ramf

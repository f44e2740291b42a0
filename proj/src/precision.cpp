#include "ramf/precision.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace ramf {

double PrecisionContext::solve_cutoff(long bits) {
    // smallest y with 2*pi*y - 40*log(y) >= bits*log(2) + 16
    const double target = static_cast<double>(bits) * std::log(2.0) + 16.0;
    double y = std::max(8.0, target / (2.0 * M_PI));
    for (int i = 0; i < 64; ++i) {
        double g = 2.0 * M_PI * y - 40.0 * std::log(y) - target;
        if (g >= 0.0) break;
        y -= g / (2.0 * M_PI - 40.0 / y);
    }
    return std::ceil(y);
}

PrecisionContext PrecisionContext::from_env() {
    const char* env = std::getenv("RAMF_PRECISION_BITS");
    if (env == nullptr || *env == '\0') return PrecisionContext();
    char* end = nullptr;
    long bits = std::strtol(env, &end, 10);
    if (end == nullptr || *end != '\0')
        throw domain_error(std::string("RAMF_PRECISION_BITS is not an integer: ") + env);
    return PrecisionContext(bits);
}

} // namespace ramf

#include "pwm_spectra/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace pwm_spectra {

namespace {

// Switch point between the power series and backward recurrence.
bool use_series(long n, long double x) {
    return x < std::max(12.0L, static_cast<long double>(n) / 2.0L);
}

long double series_j(long n, long double x) {
    const long double half = x / 2.0L;
    if (half == 0.0L) {
        return n == 0 ? 1.0L : 0.0L;
    }
    long double lead = 1.0L;  // (x/2)^n / n!
    for (long j = 1; j <= n && lead != 0.0L; ++j) {
        lead *= half / static_cast<long double>(j);
    }
    if (lead == 0.0L) {
        return 0.0L;
    }
    const long double q = -half * half;
    long double term = 1.0L;
    long double sum = 1.0L;
    for (long j = 1; j < 500; ++j) {
        term *= q / (static_cast<long double>(j) * static_cast<long double>(n + j));
        sum += term;
        if (std::fabs(term) <= std::fabs(sum) * 1e-21L) {
            break;
        }
    }
    return lead * sum;
}

long double recurrence_j(long n, long double x) {
    const long double top = std::max(static_cast<long double>(n), x);
    long start = static_cast<long>(top + 40.0L + 12.0L * std::sqrt(top));
    if (start % 2 != 0) {
        ++start;
    }
    constexpr long double kBig = 1e250L;

    long double next = 0.0L;  // J_{j+1}
    long double cur = 1e-300L;  // J_j
    long double result = 0.0L;
    long double norm = 0.0L;  // J_0 + 2 sum J_{2k}
    const long double two_over_x = 2.0L / x;
    for (long j = start; j > 0; --j) {
        const long double prev = static_cast<long double>(j) * two_over_x * cur - next;
        next = cur;
        cur = prev;  // now J_{j-1}
        if (j - 1 == n) {
            result = cur;
        }
        if ((j - 1) % 2 == 0 && j - 1 > 0) {
            norm += 2.0L * cur;
        }
        if (std::fabs(cur) > kBig) {
            cur /= kBig;
            next /= kBig;
            result /= kBig;
            norm /= kBig;
        }
    }
    norm += cur;
    return result / norm;
}

}  // namespace

double bessel_j(int order, double x) {
    if (!std::isfinite(x)) {
        throw DomainError("bessel_j: non-finite argument");
    }
    if (std::fabs(x) > kBesselMaxArgument) {
        throw DomainError("bessel_j: |x| exceeds " + std::to_string(kBesselMaxArgument));
    }
    const long n = std::labs(static_cast<long>(order));
    const long double ax = std::fabs(static_cast<long double>(x));

    const long double value = use_series(n, ax) ? series_j(n, ax) : recurrence_j(n, ax);
    double result = static_cast<double>(value);

    const bool odd = (n % 2) != 0;
    // Both identities contribute a factor (-1)^n; they cancel when both apply.
    const bool flip = odd && ((order < 0) != (x < 0.0));
    return flip ? -result : result;
}

}  // namespace pwm_spectra

#pragma once

#include <stdexcept>

namespace pwm_spectra {

/// Largest |x| accepted by bessel_j.
inline constexpr double kBesselMaxArgument = 1e6;

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Bessel function of the first kind J_order(x) for integer order.
///
/// Negative orders go through J_{-n}(x) = (-1)^n J_n(x) and negative
/// arguments through J_n(-x) = (-1)^n J_n(x); both are applied to the
/// result for |order|, |x| so the identities hold bit-exactly.
///
/// Small arguments use the ascending power series; everything else uses
/// Miller's backward recurrence normalized by J_0 + 2 sum J_2k = 1.
/// Internal arithmetic is long double.
///
/// Throws DomainError for non-finite x or |x| > kBesselMaxArgument.
double bessel_j(int order, double x);

}  // namespace pwm_spectra

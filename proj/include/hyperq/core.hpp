#pragma once

#include <complex>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hyperq {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;

// ---------------------------------------------------------------------------
// Error taxonomy. Everything thrown by the library derives from Error so the
// CLI can map failure classes onto exit codes without string matching.
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad user-facing input: malformed config keys, non-power-of-two FFT sizes,
// invalid CLI combinations.
struct ConfigError : Error {
    using Error::Error;
};

// A mathematical precondition on an argument is violated (evaluation at a
// singular point, zero time step in a kernel, ...).
struct DomainError : Error {
    using Error::Error;
};

// A numerical routine could not deliver a trustworthy result.
struct NumericsError : Error {
    using Error::Error;
};

// Raised by expanding-window integrators when the tail refuses to decay
// within the window budget; the caller decides whether that means
// "divergent" or "grid too small".
struct NonDecayingTail : NumericsError {
    using NumericsError::NumericsError;
};

// A field does not fit the grid it was asked to live on (mass outside the
// window above the configured tolerance).
struct WindowError : NumericsError {
    using NumericsError::NumericsError;
};

// Time step / grid combination outside the validated stability envelope of
// the PDE stepper.
struct StabilityError : NumericsError {
    using NumericsError::NumericsError;
};

// Least-squares fit is ill-conditioned or has too few points.
struct FitError : NumericsError {
    using NumericsError::NumericsError;
};

// The closed-form snapshot degenerates (its shape parameter vanishes and the
// printed expression divides by zero).
struct DegenerateXi : NumericsError {
    using NumericsError::NumericsError;
};

// Asked for a singularity time in a regime that has none.
struct NoSingularity : Error {
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Log-scaled real value: sign * 10^log10_mag. Moments near a singularity
// overflow double; we carry magnitudes in log10 and materialize a plain
// double only when safe.
// ---------------------------------------------------------------------------

struct ScaledReal {
    double sign = 0.0;       // -1, 0, +1
    double log10_mag = 0.0;  // meaningful only when sign != 0

    static ScaledReal from_double(double v) {
        if (v == 0.0) return {0.0, 0.0};
        return {v > 0 ? 1.0 : -1.0, std::log10(std::abs(v))};
    }
    // value scaled by 10^-s, i.e. v = sign * 10^(log10_mag) given as
    // mantissa*10^shift
    static ScaledReal from_scaled(double mantissa, double log10_shift) {
        if (mantissa == 0.0) return {0.0, 0.0};
        return {mantissa > 0 ? 1.0 : -1.0,
                std::log10(std::abs(mantissa)) + log10_shift};
    }

    bool zero() const { return sign == 0.0; }

    // Materialize; ±inf when the magnitude exceeds double range.
    double value() const {
        if (sign == 0.0) return 0.0;
        if (log10_mag > 307.0) return sign * HUGE_VAL;
        if (log10_mag < -307.0) return 0.0;
        return sign * std::pow(10.0, log10_mag);
    }

    // log10 of the ratio |a|/|b|; requires both nonzero.
    static double log10_ratio(const ScaledReal& a, const ScaledReal& b) {
        return a.log10_mag - b.log10_mag;
    }
};

}  // namespace hyperq

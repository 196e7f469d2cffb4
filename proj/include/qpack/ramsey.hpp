#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qpack::hidden {

// Excited-state probability versus free-evolution delay.
struct RamseyTrace
{
    std::vector<double> delays;     // s, strictly increasing
    std::vector<double> p_excited;  // in [0, 1]
    double nominal_detuning = 0.0;  // Hz
    std::optional<int> shots;
};

void validate(const RamseyTrace &trace);

// offset + amplitude * exp(-gamma2_star t) * cos(2 pi f_ramsey t + phase)
struct RamseyFit
{
    double f_ramsey = 0.0;     // Hz
    double gamma2_star = 0.0;  // 1/s
    double amplitude = 0.0;
    double offset = 0.0;
    double phase = 0.0;        // rad
    double rms_residual = 0.0;
    int iterations = 0;
};

double ramsey_model(const RamseyFit &p, double t);

// Fit that did not converge. Carries the starting point it was given.
class RamseyFitError : public std::runtime_error
{
public:
    RamseyFitError(const std::string &what, RamseyFit initial_guess)
        : std::runtime_error(what), initial_guess_(initial_guess)
    {
    }

    const RamseyFit &initial_guess() const noexcept { return initial_guess_; }

private:
    RamseyFit initial_guess_;
};

inline constexpr double kMaxRamseyAmplitude = 0.6;

/// Starting point: frequency and phase from the discrete spectrum of the
/// mean-subtracted trace, then the best of a few decay rates with amplitude
/// and offset solved linearly.
RamseyFit initial_ramsey_guess(const RamseyTrace &trace);

/// Levenberg-Marquardt fit of the damped cosine. Time is normalized by the
/// trace span internally so the result does not depend on the time unit.
RamseyFit fit_ramsey(const RamseyTrace &trace);

} // namespace qpack::hidden

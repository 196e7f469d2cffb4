#include "qpack/ramsey.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include "qpack/constants.hpp"
#include "qpack/errors.hpp"

namespace qpack::hidden {

namespace {

constexpr int kMaxIterations = 200;
constexpr std::size_t kMinSamples = 8;

using Vec5 = Eigen::Matrix<double, 5, 1>;
using Mat5 = Eigen::Matrix<double, 5, 5>;

// Parameters in normalized time tau = t / span: offset, amplitude, decay, frequency, phase.
struct Normalized
{
    std::vector<double> tau;
    std::vector<double> p;
    double span = 1.0;
    bool uniform = false;
};

Normalized normalize(const RamseyTrace &trace)
{
    Normalized n;
    n.span = trace.delays.back();
    n.tau.reserve(trace.delays.size());
    for (double t : trace.delays) {
        n.tau.push_back(t / n.span);
    }
    n.p = trace.p_excited;
    const double step = (n.tau.back() - n.tau.front()) / static_cast<double>(n.tau.size() - 1);
    n.uniform = true;
    for (std::size_t i = 1; i < n.tau.size() && n.uniform; ++i) {
        n.uniform = std::abs(n.tau[i] - n.tau[i - 1] - step) <= 1e-9 * step;
    }
    return n;
}

RamseyFit to_fit(const Vec5 &x, double span)
{
    RamseyFit f;
    f.offset = x(0);
    f.amplitude = x(1);
    f.gamma2_star = x(2) / span;
    f.f_ramsey = x(3) / span;
    f.phase = x(4);
    return f;
}

Vec5 from_fit(const RamseyFit &f, double span)
{
    Vec5 x;
    x << f.offset, f.amplitude, f.gamma2_star * span, f.f_ramsey * span, f.phase;
    return x;
}

double cost(const Normalized &n, const Vec5 &x)
{
    double s = 0.0;
    for (std::size_t i = 0; i < n.tau.size(); ++i) {
        const double t = n.tau[i];
        const double r = x(0) + x(1) * std::exp(-x(2) * t) * std::cos(kTwoPi * x(3) * t + x(4)) - n.p[i];
        s += r * r;
    }
    return s;
}

void normal_equations(const Normalized &n, const Vec5 &x, Mat5 &jtj, Vec5 &jtr)
{
    jtj.setZero();
    jtr.setZero();
    for (std::size_t i = 0; i < n.tau.size(); ++i) {
        const double t = n.tau[i];
        const double e = std::exp(-x(2) * t);
        const double arg = kTwoPi * x(3) * t + x(4);
        const double c = std::cos(arg);
        const double s = std::sin(arg);
        const double r = x(0) + x(1) * e * c - n.p[i];
        Vec5 j;
        j << 1.0, e * c, -t * x(1) * e * c, -kTwoPi * t * x(1) * e * s, -x(1) * e * s;
        jtj.noalias() += j * j.transpose();
        jtr.noalias() += j * r;
    }
}

// Offset and amplitude for fixed decay, frequency and phase (linear least squares).
std::pair<double, double> linear_offset_amplitude(const Normalized &n, double decay, double freq, double phase)
{
    double s1 = 0.0, sb = 0.0, sbb = 0.0, sp = 0.0, sbp = 0.0;
    for (std::size_t i = 0; i < n.tau.size(); ++i) {
        const double b = std::exp(-decay * n.tau[i]) * std::cos(kTwoPi * freq * n.tau[i] + phase);
        s1 += 1.0;
        sb += b;
        sbb += b * b;
        sp += n.p[i];
        sbp += b * n.p[i];
    }
    const double det = s1 * sbb - sb * sb;
    if (std::abs(det) < 1e-300) {
        return {sp / s1, 0.0};
    }
    return {(sbb * sp - sb * sbp) / det, (s1 * sbp - sb * sp) / det};
}

std::complex<double> spectrum_at(const Normalized &n, double mean, double freq)
{
    std::complex<double> acc{0.0, 0.0};
    if (n.uniform) {
        // Phasor recurrence on an even grid avoids a sin/cos per sample.
        const double dtau = (n.tau.back() - n.tau.front()) / static_cast<double>(n.tau.size() - 1);
        const double rc = std::cos(kTwoPi * freq * dtau);
        const double rs = -std::sin(kTwoPi * freq * dtau);
        double zc = std::cos(kTwoPi * freq * n.tau.front());
        double zs = -std::sin(kTwoPi * freq * n.tau.front());
        double re = 0.0, im = 0.0;
        for (double p : n.p) {
            re += (p - mean) * zc;
            im += (p - mean) * zs;
            const double c = zc * rc - zs * rs;
            zs = zc * rs + zs * rc;
            zc = c;
        }
        return {re, im};
    }
    for (std::size_t i = 0; i < n.tau.size(); ++i) {
        acc += (n.p[i] - mean) * std::polar(1.0, -kTwoPi * freq * n.tau[i]);
    }
    return acc;
}

// Strongest spectral line on a half-bin grid below the Nyquist rate.
double coarse_peak(const Normalized &n, double mean, double step)
{
    const double dtau = (n.tau.back() - n.tau.front()) / static_cast<double>(n.tau.size() - 1);
    const double nyquist = 0.5 / dtau;
    double best_f = step;
    double best_mag = -1.0;
    if (n.uniform) {
        // Zero padding to at least twice the length gives half-bin spacing.
        std::size_t nfft = 1;
        while (nfft < 2 * n.p.size()) {
            nfft *= 2;
        }
        std::vector<double> buf(nfft, 0.0);
        for (std::size_t i = 0; i < n.p.size(); ++i) {
            buf[i] = n.p[i] - mean;
        }
        Eigen::FFT<double> fft;
        std::vector<std::complex<double>> spec;
        fft.fwd(spec, buf);
        const double df = 1.0 / (static_cast<double>(nfft) * dtau);
        for (std::size_t k = 1; k <= nfft / 2; ++k) {
            const double f = df * static_cast<double>(k);
            const double mag = std::abs(spec[k]);
            if (f >= 0.5 * step && mag > best_mag) {
                best_mag = mag;
                best_f = f;
            }
        }
        return best_f;
    }
    for (double f = step; f <= nyquist; f += step) {
        const double mag = std::abs(spectrum_at(n, mean, f));
        if (mag > best_mag) {
            best_mag = mag;
            best_f = f;
        }
    }
    return best_f;
}

} // namespace

void validate(const RamseyTrace &trace)
{
    detail::require(trace.delays.size() == trace.p_excited.size(), "p_excited", "length differs from delays");
    detail::require(trace.delays.size() >= kMinSamples, "delays", "at least 8 samples are required");
    for (std::size_t i = 0; i < trace.delays.size(); ++i) {
        detail::require(std::isfinite(trace.delays[i]), "delays", "must be finite");
        if (i > 0) {
            detail::require(trace.delays[i] > trace.delays[i - 1], "delays", "must be strictly increasing");
        }
        const double p = trace.p_excited[i];
        detail::require(p >= 0.0 && p <= 1.0, "p_excited", "probabilities must lie in [0, 1]");
    }
    detail::require(trace.delays.front() >= 0.0 && trace.delays.back() > 0.0, "delays", "must be non-negative");
}

double ramsey_model(const RamseyFit &p, double t)
{
    return p.offset + p.amplitude * std::exp(-p.gamma2_star * t) * std::cos(kTwoPi * p.f_ramsey * t + p.phase);
}

RamseyFit initial_ramsey_guess(const RamseyTrace &trace)
{
    validate(trace);
    const auto n = normalize(trace);
    double mean = 0.0;
    for (double p : n.p) {
        mean += p;
    }
    mean /= static_cast<double>(n.p.size());

    const double step = 0.5;
    const double best_f = coarse_peak(n, mean, step);
    double lo = std::max(best_f - step, 0.5 * step);
    double hi = best_f + step;
    for (int iter = 0; iter < 40; ++iter) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (std::abs(spectrum_at(n, mean, m1)) < std::abs(spectrum_at(n, mean, m2))) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    const double freq = 0.5 * (lo + hi);
    const double phase = std::arg(spectrum_at(n, mean, freq));

    Vec5 best = Vec5::Zero();
    double best_cost = std::numeric_limits<double>::infinity();
    for (double decay : {0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
        auto [offset, amplitude] = linear_offset_amplitude(n, decay, freq, phase);
        Vec5 x;
        x << offset, amplitude, decay, freq, phase;
        if (amplitude < 0.0) {
            x(1) = -amplitude;
            x(4) = phase + kPi;
        }
        const double c = cost(n, x);
        if (c < best_cost) {
            best_cost = c;
            best = x;
        }
    }
    auto guess = to_fit(best, n.span);
    guess.rms_residual = std::sqrt(best_cost / static_cast<double>(n.tau.size()));
    return guess;
}

RamseyFit fit_ramsey(const RamseyTrace &trace)
{
    const RamseyFit guess = initial_ramsey_guess(trace);
    const auto n = normalize(trace);
    Vec5 x = from_fit(guess, n.span);
    double c = cost(n, x);
    double lambda = 1e-3;
    bool converged = false;
    int iter = 0;
    Mat5 jtj;
    Vec5 jtr;
    for (; iter < kMaxIterations && !converged; ++iter) {
        normal_equations(n, x, jtj, jtr);
        if (jtr.cwiseAbs().maxCoeff() < 1e-15 * std::max(1.0, c)) {
            converged = true;
            break;
        }
        bool improved = false;
        while (lambda < 1e12) {
            Mat5 a = jtj;
            a.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-12);
            const Vec5 step = a.ldlt().solve(-jtr);
            Vec5 trial = x + step;
            trial(2) = std::max(trial(2), 0.0);
            const double tc = cost(n, trial);
            if (std::isfinite(tc) && tc <= c) {
                const double drop = c - tc;
                const double rel_step = (trial - x).cwiseAbs().maxCoeff();
                x = trial;
                lambda = std::max(lambda * 0.3, 1e-12);
                improved = true;
                if (drop <= 1e-14 * c || rel_step < 1e-12 || tc < 1e-28 * static_cast<double>(n.tau.size())) {
                    converged = true;
                }
                c = tc;
                break;
            }
            lambda *= 10.0;
        }
        if (!improved) {
            // No downhill step at any damping: at the minimum to working precision.
            converged = true;
        }
    }
    if (!converged) {
        throw RamseyFitError("Ramsey fit did not converge in " + std::to_string(kMaxIterations) + " iterations",
                             guess);
    }
    if (x(1) < 0.0) {
        x(1) = -x(1);
        x(4) += kPi;
    }
    x(4) = std::remainder(x(4), kTwoPi);
    auto fit = to_fit(x, n.span);
    fit.rms_residual = std::sqrt(c / static_cast<double>(n.tau.size()));
    fit.iterations = iter;
    if (!(fit.amplitude > 0.0 && fit.amplitude <= kMaxRamseyAmplitude)) {
        throw RamseyFitError("fitted amplitude outside (0, 0.6]", guess);
    }
    if (fit.f_ramsey * n.span < 1.0) {
        throw RamseyFitError("trace spans less than one oscillation period", guess);
    }
    return fit;
}

} // namespace qpack::hidden

#pragma once

#include <optional>
#include <string>

#include "qpack/errors.hpp"

namespace qpack {

// A lifetime that may be unbounded (zero total loss). Unbounded is a
// distinguished state, never represented as an infinite double.
class Lifetime
{
public:
    static Lifetime unbounded() { return Lifetime{}; }

    static Lifetime from_seconds(double s)
    {
        detail::require(s > 0.0, "lifetime", "must be positive");
        return Lifetime{s};
    }

    static Lifetime from_rate(double rate_per_s)
    {
        detail::require(rate_per_s >= 0.0, "rate", "must be non-negative");
        return rate_per_s == 0.0 ? unbounded() : Lifetime{1.0 / rate_per_s};
    }

    bool is_unbounded() const noexcept { return !seconds_; }

    double seconds() const
    {
        if (!seconds_) {
            throw DomainError("lifetime", "unbounded lifetime has no finite value");
        }
        return *seconds_;
    }

    double rate() const noexcept { return seconds_ ? 1.0 / *seconds_ : 0.0; }

    friend bool operator==(const Lifetime &, const Lifetime &) = default;

private:
    Lifetime() = default;
    explicit Lifetime(double s) : seconds_(s) {}

    std::optional<double> seconds_;
};

} // namespace qpack

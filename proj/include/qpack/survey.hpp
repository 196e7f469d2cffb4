#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qpack/parallel.hpp"

namespace qpack::survey {

// Multiport S-parameters. values holds one n x n row-major matrix per
// frequency; ports are 1-based at every user-facing boundary.
struct ScatteringData
{
    std::size_t n_ports = 0;
    std::vector<double> freqs;  // Hz, strictly increasing
    std::vector<std::complex<double>> values;
    double z0 = 50.0;

    std::complex<double> at(std::size_t k, std::size_t i, std::size_t j) const
    {
        return values[(k * n_ports + i) * n_ports + j];
    }
};

void validate(const ScatteringData &data);

inline constexpr std::size_t kMaxTouchstonePorts = 32;

/// Version-1 Touchstone, S parameters in RI, MA or DB. Records start on a new
/// line and end at a line end. Noise sections and version-2 keywords are rejected.
ScatteringData parse_touchstone(std::string_view text, std::size_t n_ports);

/// Port count taken from the .sNp extension.
ScatteringData read_touchstone_file(const std::string &path);

std::size_t ports_from_extension(const std::string &path);

/// RI format in Hz, 9 significant digits per value.
void write_touchstone(std::ostream &out, const ScatteringData &data);

struct PortMap
{
    std::map<int, std::string> sides;             // port -> side label
    std::vector<std::pair<int, int>> cross_pairs;  // ordered (i, j), i != j
};

/// CSV port,side. Cross pairs are every ordered pair of ports on different sides.
PortMap read_port_map(std::istream &in);
PortMap read_port_map_file(const std::string &path);

std::vector<std::pair<int, int>> cross_pairs_from_sides(const std::map<int, std::string> &sides);

void validate(const PortMap &map, std::size_t n_ports);

struct Trace
{
    std::vector<double> freqs;   // Hz
    std::vector<double> mag_db;
};

inline constexpr double kMagnitudeFloorDb = -400.0;

/// Mean of |S_ij| over the pairs in linear magnitude, then dB. Pairs are
/// summed in sorted order so the result does not depend on their listing.
Trace average_cross_traces(const ScatteringData &data, std::span<const std::pair<int, int>> pairs,
                           Execution exec = Execution::parallel);

struct PeakRecord
{
    double f0 = 0.0;             // Hz
    double prominence_db = 0.0;
    double fwhm = 0.0;           // Hz
    double f_lo = 0.0;           // half-power crossings
    double f_hi = 0.0;
};

inline constexpr double kDefaultMinProminenceDb = 6.0;
inline constexpr double kDefaultMinSpacingHz = 100e6;

/// Local maxima with topographic prominence at least min_prominence_db. Of
/// two peaks closer than min_spacing_hz only the higher is kept. FWHM is taken
/// where the power excess over the local baseline falls to half.
std::vector<PeakRecord> find_peaks(const Trace &trace, double min_prominence_db = kDefaultMinProminenceDb,
                                   double min_spacing_hz = kDefaultMinSpacingHz);

// CSV freq_hz,avg_mag_db and f0_hz,prominence_db,fwhm_hz.
void write_trace_csv(std::ostream &out, const Trace &trace);
Trace read_trace_csv(std::istream &in);
void write_peaks_csv(std::ostream &out, std::span<const PeakRecord> peaks);

} // namespace qpack::survey

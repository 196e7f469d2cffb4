#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "qpack/hidden_mode.hpp"
#include "qpack/survey.hpp"

namespace qpack::testing {

// Package modes seen by qubit q2 (2.9531 GHz), in Hz.
struct ModeRow
{
    const char *label;
    double f_m_hz;
    double kappa_hz;
    double g_hz;
    double t_purcell_s;  // reference lifetime
};

inline constexpr ModeRow kTableModes[] = {
    {"I", 11.65e9, 25e6, 13.05e6, 2.77e-3},
    {"II", 12.94e9, 53e6, 14.15e6, 1.48e-3},
    {"III", 14.30e9, 81e6, 18.23e6, 0.73e-3},
    {"IV", 17.18e9, 20e6, 17.73e6, 5.08e-3},
};

inline constexpr double kQubitHz = 2.9531e9;
inline constexpr double kQubitT2 = 53.2e-6;

/// Single-qubit ground truth with the listed modes (all four when empty).
hidden::GroundTruthScenario table_scenario(const std::vector<std::string> &labels = {});

/// 20-port cross-cavity survey: ports 1-10 on side "a", 11-20 on side "b".
/// Every cross pair carries Lorentzian resonances at 11.1 and 18.1 GHz over
/// a random complex leakage background.
survey::ScatteringData synthetic_survey(std::size_t points = 901, std::uint64_t seed = 7);

std::map<int, std::string> survey_sides();

inline constexpr double kSurveyResonancesHz[] = {11.1e9, 18.1e9};

/// Fresh scratch directory, removed on destruction.
class ScratchDir
{
public:
    explicit ScratchDir(const std::string &tag);
    ~ScratchDir();
    ScratchDir(const ScratchDir &) = delete;
    ScratchDir &operator=(const ScratchDir &) = delete;

    std::string file(const std::string &name) const { return (path_ / name).string(); }
    const std::filesystem::path &path() const { return path_; }

private:
    std::filesystem::path path_;
};

void write_text(const std::string &path, const std::string &text);
std::string read_text(const std::string &path);

/// Directory holding the shipped data tables.
std::string data_dir();

} // namespace qpack::testing

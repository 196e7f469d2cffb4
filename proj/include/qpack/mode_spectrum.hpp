#pragma once

#include <string>
#include <vector>

namespace qpack::modes {

// Relative permittivity of silicon; gives 12.41 GHz for a 5 mm square chip.
inline constexpr double kSiliconEpsR = 11.68;

// Largest index enumerated along any axis.
inline constexpr int kMaxModeIndex = 50;

// Box of dimensions a x b x d filled with a uniform medium. Index n runs
// along b, m along a and l along d.
struct CavityGeometry
{
    double a = 0.0;  // m
    double b = 0.0;  // m
    double d = 0.0;  // m
    double eps_r = 1.0;
    double mu_r = 1.0;
};

enum class ModeKind
{
    te,
    tm,
};

struct ModeIndex
{
    int n = 0;
    int m = 0;
    int l = 0;
    ModeKind kind = ModeKind::te;

    friend auto operator<=>(const ModeIndex &, const ModeIndex &) = default;
};

enum class ModeSource
{
    cavity,
    chip,
    stub,
};

struct ModePrediction
{
    ModeIndex index;
    double frequency = 0.0;  // Hz
    ModeSource source = ModeSource::cavity;
};

std::string to_string(ModeKind k);
std::string to_string(ModeSource s);
std::string mode_name(const ModeIndex &idx);  // e.g. "TM110"

// TE needs l >= 1 and (n, m) not both zero; TM needs n, m >= 1.
bool is_valid(const ModeIndex &idx);

void validate(const CavityGeometry &g);

/// f = c / (2 pi sqrt(mu_r eps_r)) * sqrt((n pi / b)^2 + (m pi / a)^2 + (l pi / d)^2).
double cavity_mode_freq(const CavityGeometry &g, const ModeIndex &idx);

/// All valid modes of the requested kinds at or below f_max, ascending, ties
/// broken by (kind, n, m, l).
std::vector<ModePrediction> list_modes_below(const CavityGeometry &g, double f_max_hz,
                                             const std::vector<ModeKind> &kinds = {ModeKind::te, ModeKind::tm});

/// Lowest substrate mode (TM110, thickness index zero) of an a x b chip.
double chip_mode_freq(double a, double b, double eps_r = kSiliconEpsR);

/// Chip TM_nm0 modes at or below f_max, ascending.
std::vector<ModePrediction> list_chip_modes_below(double a, double b, double eps_r, double f_max_hz);

/// Open or mismatched line resonance f = c / (l sqrt(eps_r)).
double stub_mode_freq(double length, double eps_r);

/// Length whose stub resonance sits at f.
double stub_length_for_freq(double f_hz, double eps_r);

} // namespace qpack::modes

#include "fixtures.hpp"

#include <algorithm>
#include <complex>
#include <fstream>
#include <random>
#include <sstream>

#include "qpack/constants.hpp"
#include "qpack/errors.hpp"

#ifndef QPACK_DATA_DIR
#error "QPACK_DATA_DIR must be defined"
#endif

namespace qpack::testing {

hidden::GroundTruthScenario table_scenario(const std::vector<std::string> &labels)
{
    hidden::GroundTruthScenario s;
    coupling::QubitSpec q;
    q.label = "q2";
    q.omega_q = to_angular(kQubitHz);
    q.t2_star = kQubitT2;
    s.qubits = {q};
    s.intrinsic_t2["q2"] = kQubitT2;
    s.photon_gain_eta = 1e6;
    for (const auto &row : kTableModes) {
        if (!labels.empty() && std::find(labels.begin(), labels.end(), row.label) == labels.end()) {
            continue;
        }
        hidden::ScenarioMode m;
        m.label = row.label;
        m.omega_m = to_angular(row.f_m_hz);
        m.kappa = to_angular(row.kappa_hz);
        m.g["q2"] = to_angular(row.g_hz);
        s.modes.push_back(m);
    }
    return s;
}

survey::ScatteringData synthetic_survey(std::size_t points, std::uint64_t seed)
{
    constexpr std::size_t n = 20;
    survey::ScatteringData d;
    d.n_ports = n;
    const double f0 = 2e9;
    const double f1 = 20e9;
    for (std::size_t k = 0; k < points; ++k) {
        d.freqs.push_back(f0 + (f1 - f0) * static_cast<double>(k) / static_cast<double>(points - 1));
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 1e-3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    // Per-pair coupling strength and phase of each resonance.
    struct Coupling
    {
        double amp[2];
        double phase[2];
    };
    std::vector<Coupling> coupling(n * n);
    for (auto &c : coupling) {
        for (int r = 0; r < 2; ++r) {
            c.amp[r] = 0.02 + 0.03 * unit(rng);
            c.phase[r] = kTwoPi * unit(rng);
        }
    }
    const double width[2] = {40e6, 60e6};
    const auto sides = survey_sides();

    d.values.resize(points * n * n);
    for (std::size_t k = 0; k < points; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                std::complex<double> s(noise(rng), noise(rng));
                if (i == j) {
                    s += 0.9;
                }
                else if (sides.at(static_cast<int>(i + 1)) != sides.at(static_cast<int>(j + 1))) {
                    const auto &c = coupling[i * n + j];
                    for (int r = 0; r < 2; ++r) {
                        const double x = 2.0 * (d.freqs[k] - kSurveyResonancesHz[r]) / width[r];
                        s += c.amp[r] * std::polar(1.0, c.phase[r]) / std::complex<double>(1.0, x);
                    }
                }
                d.values[(k * n + i) * n + j] = s;
            }
        }
    }
    return d;
}

std::map<int, std::string> survey_sides()
{
    std::map<int, std::string> sides;
    for (int p = 1; p <= 20; ++p) {
        sides[p] = p <= 10 ? "a" : "b";
    }
    return sides;
}

ScratchDir::ScratchDir(const std::string &tag)
{
    static std::uint64_t counter = 0;
    std::random_device rd;
    for (int attempt = 0; attempt < 100; ++attempt) {
        auto candidate = std::filesystem::temp_directory_path() /
                         ("qpack-" + tag + "-" + std::to_string(rd()) + "-" + std::to_string(counter++));
        if (std::filesystem::create_directory(candidate)) {
            path_ = candidate;
            return;
        }
    }
    throw IoError("cannot create scratch directory");
}

ScratchDir::~ScratchDir()
{
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

void write_text(const std::string &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write " + path);
    }
    out << text;
}

std::string read_text(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string data_dir() { return QPACK_DATA_DIR; }

} // namespace qpack::testing

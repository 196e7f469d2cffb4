#include "qpack/ladder.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "qpack/constants.hpp"
#include "qpack/errors.hpp"

namespace qpack::line {

using detail::require;
using Complex = std::complex<double>;

void validate(const LadderNetwork &net)
{
    require(!net.sections.empty(), "sections", "at least one section is required");
    require(net.n_ground_equivalent >= 1, "n_ground_equivalent", "must be at least 1");
    require(net.z0 > 0.0, "z0", "must be positive");
    for (const auto &s : net.sections) {
        require(s.series_inductance > 0.0, "series_inductance", "must be positive");
        require(s.shunt_capacitance >= 0.0, "shunt_capacitance", "must be non-negative");
        require(s.mutual_capacitance >= 0.0, "mutual_capacitance", "must be non-negative");
        require(s.mutual_inductance >= 0.0, "mutual_inductance", "must be non-negative");
        require(s.mutual_inductance < s.series_inductance, "mutual_inductance", "must be below the series inductance");
    }
}

double ladder_resonance_hz(const LadderSection &s, int n_ground_equivalent)
{
    require(n_ground_equivalent >= 1, "n_ground_equivalent", "must be at least 1");
    require(s.series_inductance > 0.0 && s.shunt_capacitance > 0.0, "section", "needs positive L and C");
    const double l = s.series_inductance / n_ground_equivalent;
    return 1.0 / (kTwoPi * std::sqrt(l * s.shunt_capacitance));
}

LadderPoint ladder_point(const LadderNetwork &net, double freq_hz)
{
    LadderPoint pt;
    pt.freq_hz = freq_hz;
    const auto nodes = static_cast<Eigen::Index>(net.sections.size() + 1);
    if (!(freq_hz > 0.0)) {
        // Inductive admittance diverges at DC.
        pt.singular = true;
        return pt;
    }
    const double omega = kTwoPi * freq_hz;
    const Complex jw(0.0, omega);
    const double ng = net.n_ground_equivalent;

    Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(nodes, nodes);
    for (std::size_t k = 0; k < net.sections.size(); ++k) {
        const auto &s = net.sections[k];
        const auto a = static_cast<Eigen::Index>(k);
        const auto b = a + 1;
        // Coupled half-inductors [[2L', 2M'], [2M', 2L']] -> admittance inv(L) / (jw).
        const double self = 2.0 * s.series_inductance / ng;
        const double mutual = 2.0 * s.mutual_inductance / ng;
        const double det = self * self - mutual * mutual;
        const Complex y_self = self / det / jw;
        const Complex y_mut = -mutual / det / jw;
        const Complex y_cap = jw * (0.5 * s.shunt_capacitance);
        const Complex y_cm = jw * s.mutual_capacitance;

        y(a, a) += y_self + y_cap + y_cm;
        y(b, b) += y_self + y_cap + y_cm;
        y(a, b) += y_mut - y_cm;
        y(b, a) += y_mut - y_cm;
    }
    const Eigen::Index ports[2] = {0, nodes - 1};
    const double g0 = 1.0 / net.z0;
    for (auto p : ports) {
        y(p, p) += g0;
    }

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(y);
    const auto diag = lu.matrixLU().diagonal().cwiseAbs();
    if (!(diag.minCoeff() > 1e-14 * diag.maxCoeff())) {
        pt.singular = true;
        return pt;
    }
    // Drive each port with a 2 V source behind Z0 (unit incident wave).
    for (int drive = 0; drive < 2; ++drive) {
        Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(nodes);
        rhs(ports[drive]) = 2.0 * g0;
        const Eigen::VectorXcd v = lu.solve(rhs);
        for (int out = 0; out < 2; ++out) {
            const Complex vp = v(ports[out]);
            pt.s[out][drive] = out == drive ? vp - 1.0 : vp;
        }
    }
    const double mag = std::abs(pt.s[1][0]);
    pt.transfer_db = mag > 0.0 ? std::max(20.0 * std::log10(mag), kTransferFloorDb) : kTransferFloorDb;
    return pt;
}

std::vector<LadderPoint> ladder_crosstalk(const LadderNetwork &net, std::span<const double> freqs_hz, Execution exec)
{
    validate(net);
    std::vector<LadderPoint> out(freqs_hz.size());
    for_each_index(freqs_hz.size(), exec, [&](std::size_t i) { out[i] = ladder_point(net, freqs_hz[i]); });
    return out;
}

} // namespace qpack::line

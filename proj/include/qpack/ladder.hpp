#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "qpack/parallel.hpp"

namespace qpack::line {

// One cell of the wirebond crosstalk ladder. Each cell is a symmetric
// pi-section between two neighbouring nodes along the chip edge:
//   - a grounding path at each end: half of the cell's tank, i.e. inductance
//     2 L / n_ground in parallel with C / 2 to package ground,
//   - the two end inductors magnetically coupled with mutual 2 M / n_ground,
//   - the mutual capacitance Cm bridging the two nodes.
// Interior nodes collect one half-tank from each adjacent cell. The chain is
// driven at node 0 and observed at the last node, both terminated in Z0.
struct LadderSection
{
    double series_inductance = 0.0;     // H, bond inductance to package ground
    double shunt_capacitance = 0.0;     // F, chip-to-package capacitance
    double mutual_inductance = 0.0;     // H, coupling to the neighbouring node
    double mutual_capacitance = 0.0;    // F, coupling to the neighbouring node
};

struct LadderNetwork
{
    std::vector<LadderSection> sections;
    int n_ground_equivalent = 1;  // parallel grounding bonds per node
    double z0 = 50.0;
};

// Reported floor for transfer magnitudes.
inline constexpr double kTransferFloorDb = -200.0;

struct LadderPoint
{
    double freq_hz = 0.0;
    // Two-port S-matrix between the drive node and the far node.
    std::array<std::array<std::complex<double>, 2>, 2> s{};
    double transfer_db = kTransferFloorDb;
    bool singular = false;  // nodal matrix could not be factored at this point
};

void validate(const LadderNetwork &net);

/// Tank resonance 1 / (2 pi sqrt(L C / n_ground)) of one section.
double ladder_resonance_hz(const LadderSection &s, int n_ground_equivalent);

/// Solves the nodal system at one frequency.
LadderPoint ladder_point(const LadderNetwork &net, double freq_hz);

/// Frequency sweep; grid points are independent so both execution modes give
/// identical results.
std::vector<LadderPoint> ladder_crosstalk(const LadderNetwork &net, std::span<const double> freqs_hz,
                                          Execution exec = Execution::parallel);

} // namespace qpack::line

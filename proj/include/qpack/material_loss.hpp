#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qpack/lifetime.hpp"

namespace qpack::loss {

// One dissipative region seen by the qubit.
struct LossChannel
{
    std::string name;
    double participation = 0.0;  // p_i in [0, 1]
    double quality = 1.0;        // Q_i > 0
};

// Loss figures for a casing material at a given qubit position. Absent
// figures are treated as zero loss.
struct MaterialLossEntry
{
    std::string label;
    std::optional<double> inv_qc;  // conductive 1/Qc
    std::optional<double> inv_qd;  // dielectric 1/Qd
    std::optional<double> conductivity;     // S/m
    std::optional<double> oxide_thickness;  // m
    std::optional<double> im_epsilon;

    double total_inverse_q() const { return inv_qc.value_or(0.0) + inv_qd.value_or(0.0); }
};

void validate(const LossChannel &ch);
void validate(const MaterialLossEntry &entry);

/// Energy relaxation rate 2*pi*nu * sum(p_i / Q_i) in 1/s. Participations of
/// one budget must not sum above one.
double relaxation_rate(std::span<const LossChannel> channels, double nu_hz);

/// T1 limit 1 / ((1/Qc + 1/Qd) * 2*pi*nu); unbounded when the entry is lossless.
Lifetime t1_limit(const MaterialLossEntry &entry, double nu_hz);

/// Conductive loss scales as 1/sqrt(sigma).
double scale_conductive_loss(double inv_q_ref, double sigma_ref, double sigma_new);

/// Dielectric loss scales linearly with Im(eps).
double scale_dielectric_loss(double inv_q_ref, double im_eps_ref, double im_eps_new);

/// Gamma2 = Gamma1 / 2 + Gamma_phi.
double transverse_rate(double gamma1, double gamma_phi);

// CSV with header label,inv_qc,inv_qd,conductivity_s_per_m,oxide_m,im_epsilon.
std::vector<MaterialLossEntry> read_materials_csv(std::istream &in);
std::vector<MaterialLossEntry> read_materials_file(const std::string &path);

} // namespace qpack::loss

#include "qpack/material_loss.hpp"

#include <cmath>
#include <fstream>

#include "qpack/constants.hpp"
#include "qpack/csv.hpp"
#include "qpack/errors.hpp"

namespace qpack::loss {

using detail::require;

void validate(const LossChannel &ch)
{
    require(ch.participation >= 0.0 && ch.participation <= 1.0, "participation", "must lie in [0, 1]");
    require(ch.quality > 0.0, "quality", "must be positive");
}

void validate(const MaterialLossEntry &entry)
{
    require(entry.inv_qc || entry.inv_qd, "inv_qc/inv_qd", "at least one loss figure is required");
    require(entry.inv_qc.value_or(0.0) >= 0.0, "inv_qc", "must be non-negative");
    require(entry.inv_qd.value_or(0.0) >= 0.0, "inv_qd", "must be non-negative");
}

double relaxation_rate(std::span<const LossChannel> channels, double nu_hz)
{
    require(nu_hz > 0.0, "nu", "frequency must be positive");
    double participation = 0.0;
    double loss = 0.0;
    for (const auto &ch : channels) {
        validate(ch);
        participation += ch.participation;
        loss += ch.participation / ch.quality;
    }
    // Small slack for participations entered as rounded decimals.
    require(participation <= 1.0 + 1e-12, "participation", "channel participations sum above 1");
    return kTwoPi * nu_hz * loss;
}

Lifetime t1_limit(const MaterialLossEntry &entry, double nu_hz)
{
    validate(entry);
    require(nu_hz > 0.0, "nu", "frequency must be positive");
    const double inv_q = entry.total_inverse_q();
    if (inv_q == 0.0) {
        return Lifetime::unbounded();
    }
    return Lifetime::from_seconds(1.0 / (inv_q * kTwoPi * nu_hz));
}

double scale_conductive_loss(double inv_q_ref, double sigma_ref, double sigma_new)
{
    require(sigma_ref > 0.0, "sigma_ref", "conductivity must be positive");
    require(sigma_new > 0.0, "sigma_new", "conductivity must be positive");
    require(inv_q_ref >= 0.0, "inv_q_ref", "must be non-negative");
    return inv_q_ref * std::sqrt(sigma_ref / sigma_new);
}

double scale_dielectric_loss(double inv_q_ref, double im_eps_ref, double im_eps_new)
{
    require(im_eps_ref > 0.0, "im_eps_ref", "must be positive");
    require(im_eps_new >= 0.0, "im_eps_new", "must be non-negative");
    require(inv_q_ref >= 0.0, "inv_q_ref", "must be non-negative");
    return inv_q_ref * (im_eps_new / im_eps_ref);
}

double transverse_rate(double gamma1, double gamma_phi)
{
    require(gamma1 >= 0.0, "gamma1", "must be non-negative");
    require(gamma_phi >= 0.0, "gamma_phi", "must be non-negative");
    return 0.5 * gamma1 + gamma_phi;
}

std::vector<MaterialLossEntry> read_materials_csv(std::istream &in)
{
    const auto table = CsvTable::read(in);
    table.require_columns({"label", "inv_qc", "inv_qd", "conductivity_s_per_m", "oxide_m", "im_epsilon"});
    std::vector<MaterialLossEntry> out;
    for (std::size_t r = 0; r < table.rows(); ++r) {
        MaterialLossEntry e;
        e.label = table.cell(r, "label");
        e.inv_qc = table.optional_number(r, "inv_qc");
        e.inv_qd = table.optional_number(r, "inv_qd");
        e.conductivity = table.optional_number(r, "conductivity_s_per_m");
        e.oxide_thickness = table.optional_number(r, "oxide_m");
        e.im_epsilon = table.optional_number(r, "im_epsilon");
        try {
            validate(e);
        } catch (const DomainError &err) {
            throw ParseError(std::string("row '") + e.label + "': " + err.what(), table.line_of(r));
        }
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<MaterialLossEntry> read_materials_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path);
    }
    return read_materials_csv(in);
}

} // namespace qpack::loss

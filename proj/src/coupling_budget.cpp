#include "qpack/coupling_budget.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include "qpack/constants.hpp"
#include "qpack/csv.hpp"
#include "qpack/errors.hpp"

namespace qpack::coupling {

using detail::require;

void validate(const SpuriousMode &mode)
{
    require(mode.omega_m > 0.0, "omega_m", "must be positive");
    require(mode.kappa > 0.0, "kappa", "must be positive");
    require(mode.g >= 0.0, "g", "must be non-negative");
}

void validate(const QubitSpec &qubit)
{
    require(qubit.omega_q > 0.0, "omega_q", "must be positive");
    if (qubit.t1 && qubit.t2_star) {
        require(*qubit.t2_star <= 2.0 * *qubit.t1, "t2_star", "must not exceed 2 T1");
    }
}

double thermal_population(double nu_hz, double temperature_k)
{
    require(nu_hz > 0.0, "nu", "must be positive");
    require(temperature_k > 0.0, "temperature", "must be positive");
    return std::exp(-PhysicalConstants::h * nu_hz / (PhysicalConstants::k_B * temperature_k));
}

double freq_to_temperature(double nu_hz)
{
    require(nu_hz > 0.0, "nu", "must be positive");
    return PhysicalConstants::h * nu_hz / PhysicalConstants::k_B;
}

double stark_shift_per_photon(const SpuriousMode &mode, double omega_q)
{
    validate(mode);
    const double delta = mode.omega_m - omega_q;
    require(delta != 0.0, "omega_q", "qubit is resonant with the mode");
    return mode.g * mode.g / delta;
}

double dispersive_ratio(const SpuriousMode &mode, double omega_q)
{
    validate(mode);
    const double delta = mode.omega_m - omega_q;
    const double g2 = mode.g * mode.g;
    return (mode.kappa * delta) * (mode.kappa * delta) / (4.0 * g2 * g2);
}

double mode_dephasing_rate(const SpuriousMode &mode, double omega_q, double n_bar)
{
    validate(mode);
    require(n_bar >= 0.0, "n_bar", "must be non-negative");
    const double delta = std::abs(mode.omega_m - omega_q);
    if (mode.g == 0.0) {
        return delta == 0.0 ? mode.kappa * n_bar : 0.0;
    }
    return mode.kappa * n_bar / (1.0 + dispersive_ratio(mode, omega_q));
}

double purcell_rate(const SpuriousMode &mode, double omega_q)
{
    validate(mode);
    const double delta = mode.omega_m - omega_q;
    require(delta != 0.0, "omega_q", "Purcell formula needs a detuned mode");
    return mode.g * mode.g * mode.kappa / (delta * delta);
}

DecoherenceBudget purcell_budget(std::span<const SpuriousMode> modes, double omega_q)
{
    std::vector<BudgetEntry> entries;
    entries.reserve(modes.size());
    for (const auto &m : modes) {
        entries.push_back({m.label, purcell_rate(m, omega_q)});
    }
    return budget_from_lifetimes(entries);
}

DecoherenceBudget budget_from_lifetimes(std::span<const BudgetEntry> entries)
{
    DecoherenceBudget b;
    b.entries.assign(entries.begin(), entries.end());
    for (const auto &e : b.entries) {
        require(e.rate >= 0.0, "rate", "must be non-negative");
        b.total_rate += e.rate;
    }
    b.total_t1_limit = Lifetime::from_rate(b.total_rate);
    return b;
}

Lifetime package_t1_limit(const Lifetime &purcell, const Lifetime &material)
{
    return Lifetime::from_rate(purcell.rate() + material.rate());
}

double coupling_from_slopes(double alpha_mag, double beta, double kappa, double delta)
{
    require(alpha_mag > 0.0, "alpha", "Stark slope must be non-zero");
    require(beta >= 0.0, "beta", "must be non-negative");
    require(kappa >= 0.0, "kappa", "must be non-negative");
    require(delta >= 0.0, "delta", "must be non-negative");
    return std::sqrt(beta * kappa * delta / (4.0 * alpha_mag));
}

SpuriousMode to_mode(const ModeTableRow &row)
{
    SpuriousMode m{row.label, to_angular(row.f_m_hz), to_angular(row.kappa_hz), to_angular(row.g_hz)};
    validate(m);
    return m;
}

ModeTableRow to_row(const SpuriousMode &mode, std::optional<double> t_purcell_s)
{
    return {mode.label, to_hz(mode.omega_m), to_hz(mode.kappa), to_hz(mode.g), t_purcell_s};
}

std::vector<ModeTableRow> read_mode_table(std::istream &in)
{
    const auto t = CsvTable::read(in);
    t.require_columns({"label", "f_m_hz", "kappa_hz", "g_hz"});
    const bool has_t = t.has_column("t_purcell_s");
    std::vector<ModeTableRow> rows;
    for (std::size_t r = 0; r < t.rows(); ++r) {
        ModeTableRow row{t.cell(r, "label"), t.number(r, "f_m_hz"), t.number(r, "kappa_hz"), t.number(r, "g_hz"),
                         has_t ? t.optional_number(r, "t_purcell_s") : std::nullopt};
        if (!(row.f_m_hz > 0.0 && row.kappa_hz > 0.0 && row.g_hz >= 0.0)) {
            throw ParseError("mode '" + row.label + "' needs positive f_m_hz, kappa_hz and non-negative g_hz",
                             t.line_of(r));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<ModeTableRow> read_mode_table_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path);
    }
    return read_mode_table(in);
}

void write_mode_table(std::ostream &out, std::span<const ModeTableRow> rows)
{
    out << "label,f_m_hz,kappa_hz,g_hz,t_purcell_s\n";
    for (const auto &r : rows) {
        out << r.label << ',' << format_number(r.f_m_hz) << ',' << format_number(r.kappa_hz) << ','
            << format_number(r.g_hz) << ',' << (r.t_purcell_s ? format_number(*r.t_purcell_s) : "") << '\n';
    }
}

std::vector<QubitSpec> read_qubit_table_file(const std::string &path)
{
    const auto t = CsvTable::read_file(path);
    t.require_columns({"label", "qubit_freq_hz", "readout_freq_hz"});
    std::vector<QubitSpec> out;
    for (std::size_t r = 0; r < t.rows(); ++r) {
        QubitSpec q;
        q.label = t.cell(r, "label");
        q.omega_q = to_angular(t.number(r, "qubit_freq_hz"));
        q.readout_freq = t.optional_number(r, "readout_freq_hz");
        if (t.has_column("t1_s")) {
            q.t1 = t.optional_number(r, "t1_s");
        }
        if (t.has_column("t2_star_s")) {
            q.t2_star = t.optional_number(r, "t2_star_s");
        }
        validate(q);
        out.push_back(std::move(q));
    }
    return out;
}

} // namespace qpack::coupling

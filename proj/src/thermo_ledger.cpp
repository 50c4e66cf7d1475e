#include "genbath/thermo_ledger.hpp"

#include <cmath>

#include <fmt/format.h>

#include "genbath/error.hpp"

namespace genbath {

namespace {

// Tr[a b]
cplx trace_product(const Matrix& a, const Matrix& b) {
    return a.cwiseProduct(b.transpose()).sum();
}

double real_checked(cplx value, const char* what) {
    if (std::abs(value.imag()) > 1e-9 * std::max(1.0, std::abs(value.real()))) {
        throw NumericalFailure(
            fmt::format("{} has imaginary part {:.3e}", what, value.imag()));
    }
    return value.real();
}

} // namespace

double work_power(const ScheduledOperator& dv_tilde_dt, const DensityMatrix& rho_thermal, double t) {
    require_same_space(dv_tilde_dt.space(), rho_thermal.space(), "work_power");
    if (dv_tilde_dt.terms().empty()) {
        return 0.0;
    }
    return real_checked(trace_product(dv_tilde_dt.evaluate_matrix(t), rho_thermal.matrix()),
                        "work power");
}

double heat_power(const Operator& h_sys, const std::vector<ScheduledChannel>& thermal_channels,
                  const DensityMatrix& rho_thermal, double t) {
    require_same_space(h_sys.space(), rho_thermal.space(), "heat_power");
    const auto n = static_cast<Eigen::Index>(h_sys.dim());
    Matrix l0 = Matrix::Zero(n, n);
    for (const auto& c : thermal_channels) {
        require_same_space(h_sys.space(), c.jump.space(), "heat_power channel");
        if (c.rate > 0.0) {
            l0 += c.rate * dissipator_apply(c.jump.evaluate_matrix(t), rho_thermal.matrix());
        }
    }
    return real_checked(trace_product(h_sys.matrix(), l0), "heat power");
}

double heat_power(const Operator& h_sys, const std::vector<Channel>& thermal_channels,
                  const DensityMatrix& rho_thermal) {
    std::vector<ScheduledChannel> scheduled(thermal_channels.begin(), thermal_channels.end());
    return heat_power(h_sys, scheduled, rho_thermal, 0.0);
}

double energy_flow(const ScheduledOperator& h, const MasterEquation& me, const DensityMatrix& rho,
                   double t) {
    require_same_space(h.space(), me.space(), "energy_flow");
    require_same_space(h.space(), rho.space(), "energy_flow");
    const Matrix drho = me.rhs(rho.matrix(), t);
    cplx value = trace_product(h.evaluate_matrix(t), drho);
    if (!h.is_static()) {
        value += trace_product(h.derivative().evaluate_matrix(t), rho.matrix());
    }
    return real_checked(value, "energy flow");
}

FirstLawResiduals first_law_residuals(double work, double heat, double dhext_dt, double dhsys_dt) {
    return {work - 2.0 * dhext_dt, work + heat - dhext_dt - dhsys_dt};
}

EnergyFlows thermal_energy_flows(const RepresentationPair& pair, const DensityMatrix& rho_thermal,
                                 double t) {
    require_same_space(pair.thermal.space(), rho_thermal.space(), "thermal_energy_flows");
    const Matrix drho = pair.thermal.rhs(rho_thermal.matrix(), t);

    EnergyFlows f;
    f.work_power = work_power(pair.dv_tilde_dt, rho_thermal, t);
    f.heat_power = heat_power(pair.h_sys, pair.thermal.channels(), rho_thermal, t);
    f.dhext_dt = real_checked(trace_product(pair.h_ext.matrix(), drho), "dHext/dt");
    f.dhsys_dt = real_checked(trace_product(pair.h_sys.matrix(), drho), "dHsys/dt");
    const auto r = first_law_residuals(f.work_power, f.heat_power, f.dhext_dt, f.dhsys_dt);
    f.residual_cost_identity = r.cost_identity;
    f.residual_first_law = r.first_law;
    return f;
}

} // namespace genbath

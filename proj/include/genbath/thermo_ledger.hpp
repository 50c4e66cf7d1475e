#pragma once

#include <optional>
#include <vector>

#include "genbath/generalized_bath.hpp"
#include "genbath/master_equation.hpp"
#include "genbath/operator.hpp"
#include "genbath/scheduled_operator.hpp"

namespace genbath {

// Sign conventions: work_power > 0 is work supplied by the external source,
// heat_power > 0 is energy flowing from the bath into the system.

// Tr[d/dt(U(t)^dagger V U(t)) rho] on the thermal-representation state.
double work_power(const ScheduledOperator& dv_tilde_dt, const DensityMatrix& rho_thermal, double t);

// Tr[H_sys L_0[rho]] with the untransformed thermal channels.
double heat_power(const Operator& h_sys, const std::vector<Channel>& thermal_channels,
                  const DensityMatrix& rho_thermal);
double heat_power(const Operator& h_sys, const std::vector<ScheduledChannel>& thermal_channels,
                  const DensityMatrix& rho_thermal, double t);

// d<H>/dt = Tr[H rhs(rho, t)] + Tr[dH/dt rho]
double energy_flow(const ScheduledOperator& h, const MasterEquation& me, const DensityMatrix& rho,
                   double t);

struct FirstLawResiduals {
    double cost_identity; // work - 2 dHext/dt
    double first_law;     // work + heat - dHext/dt - dHsys/dt
};

FirstLawResiduals first_law_residuals(double work, double heat, double dhext_dt, double dhsys_dt);

struct EnergyFlows {
    double work_power = 0.0;
    double heat_power = 0.0;
    double dhext_dt = 0.0;
    double dhsys_dt = 0.0;
    double residual_first_law = 0.0;
    double residual_cost_identity = 0.0;
};

// All flows of the thermal representation at one sample, with both residuals.
EnergyFlows thermal_energy_flows(const RepresentationPair& pair, const DensityMatrix& rho_thermal,
                                 double t);

// One row of the thermodynamic time series. Flows come from the thermal
// representation; photon statistics and sigma_z from the integrated state.
struct ThermoRecord {
    double t = 0.0;
    double n_mean = 0.0;
    double n_var = 0.0;
    std::optional<double> fano; // absent when n_mean < 1e-6
    double sigma_z = 0.0;
    double dn_dt = 0.0;
    double work_power = 0.0;
    double heat_power = 0.0;
    double dhext_dt = 0.0;
    double dhsys_dt = 0.0;
    double residual_first_law = 0.0;
    double residual_cost_identity = 0.0;
    double trace_error = 0.0;
    double leak_top2 = 0.0;
};

using ThermoSeries = std::vector<ThermoRecord>;

} // namespace genbath

#pragma once

#include <span>
#include <utility>
#include <vector>

#include "frontforge/potential.hpp"
#include "frontforge/profile.hpp"
#include "frontforge/psystem.hpp"

namespace frontforge {

/// Finite atom chain. Strains r[a] = x[a+1] - x[a] exist for a < n-1; the
/// ghost strains freeze the boundary forces at the asymptotic states.
struct ChainState {
    double time = 0.0;
    std::vector<double> positions;
    std::vector<double> velocities;
    double ghost_left_strain = 0.0;
    double ghost_right_strain = 0.0;

    int size() const { return static_cast<int>(positions.size()); }
    std::vector<double> strains() const;
};

/// Strain and velocity profiles of a travelling front in physical units,
/// stored as piecewise-linear interpolants with constant extensions.
struct FrontWave {
    Grid grid;
    std::vector<double> w_values;   // rescaled profile at the nodes
    std::vector<double> aw_values;  // its window average at the nodes
    double r_mean = 0.0, r_jump = 0.0;
    double v_mean = 0.0, v_jump = 0.0;
    double sigma = 0.0;

    double strain_at(double phi) const;    // R(phi)
    double velocity_at(double phi) const;  // V(phi)
};

/// Converts a converged rescaled profile back to physical strain/velocity
/// profiles for the given shock data. Throws MismatchedShock when the
/// potential was rescaled with different data.
FrontWave denormalize_front(const NormalizedPotential& np, const Profile& w, const ShockData& s);

/// Two-state initial data jumping at the chain midpoint, mollified over
/// `smoothing` atoms (0 gives a sharp step).
ChainState init_riemann(const ShockData& s, int n_atoms, double smoothing);

/// Samples the travelling front at t = 0, centred on the chain.
ChainState init_front(const FrontWave& fw, const ShockData& s, int n_atoms);

/// Velocity-Verlet integration of the nearest-neighbour dynamics.
/// Throws Instability when any |velocity| exceeds 1e6.
void step(ChainState& state, const PotentialSpec& p, double dt, int n_steps);

/// Total energy (kinetic plus interior bond energy) and total momentum.
std::pair<double, double> conserved_quantities(const ChainState& state, const PotentialSpec& p);

struct Snapshot {
    double time = 0.0;
    std::vector<double> strains;
    std::vector<double> velocities;
};

Snapshot take_snapshot(const ChainState& state);

struct TWDeviation {
    double shape_error = 0.0;   // sup |r_a(t) - R(a - center - sigma t)|
    double speed_fit = 0.0;     // least-squares transition speed
    double energy_drift = 0.0;  // max relative drift of the total energy
};

/// Compares a trajectory against rigid translation of the front profile.
/// `center` is the phase origin used when the chain was initialized.
TWDeviation tw_deviation(std::span<const Snapshot> snapshots, const FrontWave& fw, double sigma,
                         double center, const PotentialSpec& p);

/// Conserved-mass position of the transition layer: counts the strain mass
/// above the left state, which is insensitive to ripples.
double transition_position(std::span<const double> strains, double r_minus, double r_plus);

/// Least-squares slope of the transition position against time.
double measure_speed(std::span<const Snapshot> snapshots, double r_minus, double r_plus);

}  // namespace frontforge

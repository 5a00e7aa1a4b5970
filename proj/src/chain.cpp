#include "frontforge/chain.hpp"

#include <cmath>

#include "frontforge/errors.hpp"
#include "frontforge/kernels.hpp"

namespace frontforge {

std::vector<double> ChainState::strains() const {
    std::vector<double> r(positions.size() - 1);
    for (std::size_t a = 0; a + 1 < positions.size(); ++a) r[a] = positions[a + 1] - positions[a];
    return r;
}

namespace {

double interp(const Grid& g, const std::vector<double>& values, double left, double right,
              double phi) {
    const double x = phi / g.h + g.center();
    if (x <= 0.0) return left;
    if (x >= g.n - 1) return right;
    const int i = static_cast<int>(std::floor(x));
    const double frac = x - i;
    return (1.0 - frac) * values[static_cast<std::size_t>(i)] +
           frac * values[static_cast<std::size_t>(i + 1)];
}

}  // namespace

double FrontWave::strain_at(double phi) const {
    // The strain profile reads the window average at phi + 1/2.
    return r_mean + 0.5 * r_jump * interp(grid, aw_values, -1.0, 1.0, phi + 0.5);
}

double FrontWave::velocity_at(double phi) const {
    return v_mean + 0.5 * v_jump * interp(grid, w_values, -1.0, 1.0, phi);
}

FrontWave denormalize_front(const NormalizedPotential& np, const Profile& w, const ShockData& s) {
    const double r_mean = 0.5 * (s.r_plus + s.r_minus);
    const double r_jump = s.r_plus - s.r_minus;
    if (std::abs(np.r_mean - r_mean) > 1e-9 || std::abs(np.r_jump - r_jump) > 1e-9) {
        throw Error(ErrorCode::MismatchedShock,
                    "profile was computed for different asymptotic strains");
    }
    const double speed_sq = np.dphi_jump / np.r_jump;
    if (std::abs(s.sigma * s.sigma - speed_sq) > 1e-9 * std::max(1.0, speed_sq)) {
        throw Error(ErrorCode::MismatchedShock, "shock speed does not match the potential data");
    }
    FrontWave fw;
    fw.grid = w.grid;
    fw.w_values = w.values;
    fw.aw_values.resize(w.values.size());
    kernels::average(w.values, w.left_limit, w.right_limit, w.grid.k, w.grid.h, fw.aw_values);
    fw.r_mean = r_mean;
    fw.r_jump = r_jump;
    fw.v_mean = 0.5 * (s.v_plus + s.v_minus);
    fw.v_jump = s.v_plus - s.v_minus;
    fw.sigma = s.sigma;
    return fw;
}

ChainState init_riemann(const ShockData& s, int n_atoms, double smoothing) {
    if (n_atoms < 100) throw Error(ErrorCode::BadParams, "chain needs at least 100 atoms");
    ChainState st;
    st.positions.resize(static_cast<std::size_t>(n_atoms));
    st.velocities.resize(static_cast<std::size_t>(n_atoms));
    st.ghost_left_strain = s.r_minus;
    st.ghost_right_strain = s.r_plus;
    const double c = 0.5 * n_atoms;
    auto ramp = [&](double a) {
        if (smoothing <= 0.0) return (a < c) ? 0.0 : 1.0;
        return 0.5 * (1.0 + std::tanh((a - c) / smoothing));
    };
    double x = 0.0;
    for (int a = 0; a < n_atoms; ++a) {
        const double q = ramp(static_cast<double>(a));
        st.positions[static_cast<std::size_t>(a)] = x;
        x += s.r_minus + (s.r_plus - s.r_minus) * q;
        st.velocities[static_cast<std::size_t>(a)] =
            s.v_minus + (s.v_plus - s.v_minus) * q;
    }
    return st;
}

ChainState init_front(const FrontWave& fw, const ShockData& s, int n_atoms) {
    if (n_atoms < 4 * fw.grid.M) {
        throw Error(ErrorCode::BadParams, "chain must be at least four half-widths long");
    }
    ChainState st;
    st.positions.resize(static_cast<std::size_t>(n_atoms));
    st.velocities.resize(static_cast<std::size_t>(n_atoms));
    st.ghost_left_strain = s.r_minus;
    st.ghost_right_strain = s.r_plus;
    const double c = 0.5 * n_atoms;
    double x = 0.0;
    for (int a = 0; a < n_atoms; ++a) {
        st.positions[static_cast<std::size_t>(a)] = x;
        x += fw.strain_at(static_cast<double>(a) - c);
        st.velocities[static_cast<std::size_t>(a)] = fw.velocity_at(static_cast<double>(a) - c);
    }
    return st;
}

namespace {

// a[i] = Phi'(r_i) - Phi'(r_{i-1}) with frozen ghost strains.
void accelerations(const ChainState& st, const PotentialSpec& p, std::vector<double>& force,
                   std::vector<double>& accel) {
    const std::ptrdiff_t n = st.size();
    force.resize(static_cast<std::size_t>(n + 1));  // force[i] acts between atoms i-1 and i
    force[0] = evaluate(p, st.ghost_left_strain, 1);
    force[static_cast<std::size_t>(n)] = evaluate(p, st.ghost_right_strain, 1);
#pragma omp parallel for if (n > 2048) num_threads(kernels::max_threads()) schedule(static)
    for (std::ptrdiff_t a = 0; a < n - 1; ++a) {
        const double r = st.positions[static_cast<std::size_t>(a + 1)] -
                         st.positions[static_cast<std::size_t>(a)];
        force[static_cast<std::size_t>(a + 1)] = evaluate(p, r, 1);
    }
    accel.resize(static_cast<std::size_t>(n));
#pragma omp parallel for if (n > 2048) num_threads(kernels::max_threads()) schedule(static)
    for (std::ptrdiff_t a = 0; a < n; ++a) {
        accel[static_cast<std::size_t>(a)] =
            force[static_cast<std::size_t>(a + 1)] - force[static_cast<std::size_t>(a)];
    }
}

}  // namespace

void step(ChainState& st, const PotentialSpec& p, double dt, int n_steps) {
    if (!(dt > 0.0)) throw Error(ErrorCode::BadParams, "time step must be positive");
    const std::ptrdiff_t n = st.size();
    std::vector<double> force, accel;
    accelerations(st, p, force, accel);
    for (int s = 0; s < n_steps; ++s) {
#pragma omp parallel for if (n > 2048) num_threads(kernels::max_threads()) schedule(static)
        for (std::ptrdiff_t a = 0; a < n; ++a) {
            st.velocities[static_cast<std::size_t>(a)] +=
                0.5 * dt * accel[static_cast<std::size_t>(a)];
            st.positions[static_cast<std::size_t>(a)] +=
                dt * st.velocities[static_cast<std::size_t>(a)];
        }
        accelerations(st, p, force, accel);
        double vmax = 0.0;
        for (std::ptrdiff_t a = 0; a < n; ++a) {
            st.velocities[static_cast<std::size_t>(a)] +=
                0.5 * dt * accel[static_cast<std::size_t>(a)];
            vmax = std::max(vmax, std::abs(st.velocities[static_cast<std::size_t>(a)]));
        }
        if (vmax > 1e6) throw Error(ErrorCode::Instability, "velocity blow-up detected");
        st.time += dt;
    }
}

std::pair<double, double> conserved_quantities(const ChainState& st, const PotentialSpec& p) {
    double energy = 0.0, comp_e = 0.0;
    double momentum = 0.0, comp_p = 0.0;
    auto add = [](double& sum, double& comp, double x) {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    };
    const int n = st.size();
    for (int a = 0; a < n; ++a) {
        const double v = st.velocities[static_cast<std::size_t>(a)];
        add(energy, comp_e, 0.5 * v * v);
        add(momentum, comp_p, v);
        if (a + 1 < n) {
            const double r = st.positions[static_cast<std::size_t>(a + 1)] -
                             st.positions[static_cast<std::size_t>(a)];
            add(energy, comp_e, evaluate(p, r, 0));
        }
    }
    return {energy, momentum};
}

Snapshot take_snapshot(const ChainState& st) {
    Snapshot s;
    s.time = st.time;
    s.strains = st.strains();
    s.velocities = st.velocities;
    return s;
}

double transition_position(std::span<const double> strains, double r_minus, double r_plus) {
    const double jump = r_plus - r_minus;
    double mass = 0.0, comp = 0.0;
    for (double r : strains) {
        const double y = (r - r_minus) / jump - comp;
        const double t = mass + y;
        comp = (t - mass) - y;
        mass = t;
    }
    return static_cast<double>(strains.size()) - mass;
}

double measure_speed(std::span<const Snapshot> snapshots, double r_minus, double r_plus) {
    if (snapshots.size() < 2) {
        throw Error(ErrorCode::InsufficientPoints, "speed fit needs at least 2 snapshots");
    }
    double mt = 0.0, mc = 0.0;
    std::vector<double> cs(snapshots.size());
    for (std::size_t i = 0; i < snapshots.size(); ++i) {
        cs[i] = transition_position(snapshots[i].strains, r_minus, r_plus);
        mt += snapshots[i].time;
        mc += cs[i];
    }
    mt /= static_cast<double>(snapshots.size());
    mc /= static_cast<double>(snapshots.size());
    double stt = 0.0, stc = 0.0;
    for (std::size_t i = 0; i < snapshots.size(); ++i) {
        stt += (snapshots[i].time - mt) * (snapshots[i].time - mt);
        stc += (snapshots[i].time - mt) * (cs[i] - mc);
    }
    return stc / stt;
}

TWDeviation tw_deviation(std::span<const Snapshot> snapshots, const FrontWave& fw, double sigma,
                         double center, const PotentialSpec& p) {
    if (snapshots.size() < 2) {
        throw Error(ErrorCode::InsufficientPoints, "deviation needs at least 2 snapshots");
    }
    TWDeviation dev;
    const double t0 = snapshots.front().time;
    double e0 = 0.0;
    for (std::size_t s = 0; s < snapshots.size(); ++s) {
        const Snapshot& snap = snapshots[s];
        for (std::size_t a = 0; a < snap.strains.size(); ++a) {
            const double phi = static_cast<double>(a) - center - sigma * (snap.time - t0);
            dev.shape_error =
                std::max(dev.shape_error, std::abs(snap.strains[a] - fw.strain_at(phi)));
        }
        double energy = 0.0, comp = 0.0;
        auto add = [&](double x) {
            const double y = x - comp;
            const double t = energy + y;
            comp = (t - energy) - y;
            energy = t;
        };
        for (double v : snap.velocities) add(0.5 * v * v);
        for (double r : snap.strains) add(evaluate(p, r, 0));
        if (s == 0) {
            e0 = energy;
        } else {
            dev.energy_drift =
                std::max(dev.energy_drift, std::abs(energy - e0) / std::max(std::abs(e0), 1.0));
        }
    }
    dev.speed_fit = measure_speed(snapshots, fw.r_mean - 0.5 * fw.r_jump,
                                  fw.r_mean + 0.5 * fw.r_jump);
    return dev;
}

}  // namespace frontforge

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "frontforge/analysis.hpp"
#include "frontforge/chain.hpp"
#include "frontforge/potential.hpp"
#include "frontforge/profile.hpp"
#include "frontforge/psystem.hpp"
#include "frontforge/solver.hpp"

namespace frontforge::io {

/// Round-trip decimal rendering used in all CSV artifacts (17 significant
/// digits); identical inputs produce byte-identical files.
std::string format_double(double x);

void write_profile_csv(const std::filesystem::path& path, const Profile& w);

struct CurveRow {
    double r_minus = 0.0;
    double r_plus = 0.0;
    double j_residual = 0.0;
    double sigma_branch2 = 0.0;
    std::string type;
};

std::vector<CurveRow> curve_rows(const PotentialSpec& p, const ShockCurve& curve);
void write_curve_csv(const std::filesystem::path& path, const std::vector<CurveRow>& rows);

void write_snapshot_csv(const std::filesystem::path& path, const Snapshot& snap);

/// Reads a profile written by write_profile_csv back onto the given grid.
Profile read_profile_csv(const std::filesystem::path& path, const Grid& grid);

// JSON views of the domain types used inside report.json.
nlohmann::json to_json(const PotentialSpec& p);
PotentialSpec potential_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ShockData& s);
nlohmann::json to_json(const AssumptionReport& rep);
nlohmann::json to_json(const SolverConfig& cfg);
nlohmann::json to_json(const DecayReport& rep);
nlohmann::json to_json(const VerificationReport& rep);

void write_report(const std::filesystem::path& path, const nlohmann::json& report);

/// Two-column whitespace-separated series for standard plotting tools:
/// the profile, the residual history and any curve files found among the
/// artifacts in `dir`. Throws MissingArtifact when none are present.
void emit_plotdata(const std::filesystem::path& dir);

}  // namespace frontforge::io

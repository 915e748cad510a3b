#pragma once

#include <string>
#include <vector>

#include "wtv/energy.hpp"
#include "wtv/field.hpp"
#include "wtv/jumps.hpp"
#include "wtv/levelset.hpp"
#include "wtv/solver2d.hpp"

namespace wtv {

/// CSV: one value per line in 1D, comma-separated row-major rows in 2D.
/// Doubles are printed with 17 significant digits so round trips are exact.
void write_csv(const std::string& path, const ScalarField& u);
/// Reads a CSV of numbers into rows; the caller attaches grid geometry.
std::vector<std::vector<double>> read_csv(const std::string& path);

void write_checkpoints_csv(const std::string& path,
                           const std::vector<Checkpoint>& history);

/// Columns: location,u_minus,u_plus,height,axis. Location is the edge
/// midpoint coordinate along the jump axis.
void write_jumps_csv(const std::string& path, const JumpSet& jumps);

/// 16-bit binary PGM with the value range and grid geometry in header
/// comments, so reading recovers the field up to range/65535 per sample.
void write_pgm(const std::string& path, const ScalarField& u);
ScalarField read_pgm(const std::string& path);

/// Binary PBM; 1 = cell in the set. Grid geometry rides in a comment.
void write_pbm(const std::string& path, const BinaryField& e);
BinaryField read_pbm(const std::string& path);

/// JSON serializers for report types (pretty-printed, two-space indent).
std::string to_json_string(const EnergyBreakdown& e);
std::string to_json_string(const SolverReport& r);
std::string to_json_string(const JumpSet& j);
std::string to_json_string(const LevelSetReport& r);
std::string to_json_string(const InclusionReport& r);
std::string to_json_string(const ContrastReport& r);
std::string to_json_string(const StabilityCheck& r);
std::string to_json_string(const EpsilonInclusionCheck& r);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace wtv

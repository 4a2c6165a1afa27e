#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "foloc/fourier.hpp"
#include "foloc/locator.hpp"
#include "foloc/mecf.hpp"
#include "foloc/simulator.hpp"

namespace foloc {

// Tabular artifacts are CSV with a header row; numbers use 17 significant
// digits so a write/read cycle is lossless.

/// Header `t,node_0,...,node_{N-1}`, one row per sample of the omega block.
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj);

/// Reads the omega block back; dt comes from the first two t values.
/// The returned delta block is zero.
Trajectory read_trajectory_csv(const std::filesystem::path& path);

/// Field matrix, one row per displacement d (ascending). Header `d,c0,...`.
void write_field_csv(const std::filesystem::path& path, const MotifField& field);

/// Params and diagnostics of a field.
std::string field_sidecar_json(const MotifField& field, std::size_t node);

/// Header `node,x,y`.
void write_embedding_csv(const std::filesystem::path& path, const Embedding2D& emb);

/// Header `frequency,node_0,...`.
void write_spectra_csv(const std::filesystem::path& path, const SpectrumSet& spectra);

/// Square matrix with header `node,node_0,...` and the row index first.
void write_distance_csv(const std::filesystem::path& path, const Eigen::MatrixXd& distances);
Eigen::MatrixXd read_distance_csv(const std::filesystem::path& path);

/// ScenarioConfig as JSON with the struct's field names.
std::string scenario_to_json(const ScenarioConfig& scenario, int indent = 2);
ScenarioConfig scenario_from_json(std::string_view text);

std::string mecf_params_to_json(const MECFParams& params, int indent = 2);
MECFParams mecf_params_from_json(std::string_view text);

/// {avg_distances, threshold, outliers, seed, params}
std::string location_report_to_json(const LocationReport& report, const LocatorOptions& options,
                                     int indent = 2);

std::string fourier_verdict_to_json(const FourierVerdict& verdict, int indent = 2);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace foloc

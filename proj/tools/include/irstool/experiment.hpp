#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "irsim/montecarlo.hpp"

namespace irstool {

enum class ExperimentKind { kSeVsSnr, kSeVsN, kCcdf, kValidate };

std::string kind_name(ExperimentKind kind);

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::kValidate;
  irsim::SimConfig sim;
  std::filesystem::path output_dir = ".";
  // dB inputs kept verbatim so serialized specs reparse to identical doubles.
  double c0_db = -30.0;
  double c0_direct_db = -30.0;
  std::vector<std::uint64_t> n_sweep;
  std::size_t ccdf_grid_points = 512;
  bool debug_phase_identity = false;
};

ExperimentSpec parse_spec_text(const std::string& text);
ExperimentSpec load_spec(const std::filesystem::path& path);
ExperimentSpec default_spec();

// Fully resolved `key = value` lines; feeding them back through
// parse_spec_text yields a spec that reproduces the same artifacts.
std::vector<std::string> serialize_spec(const ExperimentSpec& spec);

// CSV artifact bodies, including the resolved-spec header comment. Output is
// byte-identical for any thread count.
std::string render_se_vs_snr(const ExperimentSpec& spec, unsigned threads = 0);
std::string render_se_vs_n(const ExperimentSpec& spec, unsigned threads = 0);
std::string render_ccdf(const ExperimentSpec& spec, unsigned threads = 0);

std::filesystem::path artifact_path(const ExperimentSpec& spec);
void write_text_file(const std::filesystem::path& path,
                     const std::string& content);

// Runs the spec end to end, writes artifacts under output_dir, and returns
// the process exit code (0 success, 1 validation failure).
int run_experiment(const ExperimentSpec& spec, unsigned threads = 0);

}  // namespace irstool

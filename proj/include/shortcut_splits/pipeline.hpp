#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "shortcut_splits/analysis.hpp"
#include "shortcut_splits/evaluator.hpp"
#include "shortcut_splits/splitter.hpp"
#include "shortcut_splits/synthlab.hpp"

namespace shortcut_splits {

/// Environment variable that overrides the configured seed.
inline constexpr const char* kSeedEnvVar = "SHORTCUT_SPLITS_SEED";

/// Configuration of a full pipeline run (label -> split -> stats, plus an
/// optional eval stage when predictions are given). Exactly one of `input`
/// and `synth` must be set.
struct RunConfig {
  std::optional<std::filesystem::path> input;
  std::optional<SynthConfig> synth;
  std::optional<std::filesystem::path> qt_prefixes;
  std::uint64_t seed = 0;
  SplitRatios ratios;
  double entropy_threshold = kDefaultEntropyThreshold;
  double rare_factor = kDefaultRareFactor;
  std::filesystem::path out_dir;
  Metric metric = Metric::exact;
  std::optional<std::filesystem::path> predictions;
  unsigned threads = 1;
  StatsOptions stats;

  /// Throws InvalidConfig on inconsistent fields.
  void validate() const;
};

/// Reads a JSON run configuration. When apply_env_seed is true (the default)
/// SHORTCUT_SPLITS_SEED overrides the configured seed.
RunConfig load_run_config(const std::filesystem::path& path, bool apply_env_seed = true);

struct ArtifactDigest {
  std::string path;  // relative to out_dir
  std::uint64_t bytes = 0;
  std::string fnv1a64;  // hex
};

struct PipelineResult {
  std::filesystem::path out_dir;
  std::vector<ArtifactDigest> artifacts;
};

/// Runs label -> split -> stats (generating or copying the input first),
/// then writes manifest.json recording the tool version, resolved
/// configuration, and an FNV-1a 64 content digest of every artifact. No
/// timestamps are recorded, so equal configurations give byte-identical
/// output trees. Errors carry the failing stage name.
PipelineResult run_pipeline(const RunConfig& config);

}  // namespace shortcut_splits

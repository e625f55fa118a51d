#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "partisan/corpus.hpp"
#include "partisan/execution.hpp"
#include "partisan/ideology.hpp"

namespace partisan {

struct PipelineConfig {
  std::string corpus_path;     // JSONL or packed corpus
  std::string scores_path;
  std::string liberal_outlets_path;
  std::string conservative_outlets_path;
  std::string url_cache_path;      // optional
  std::string exclusion_path;      // optional; term/hashtag list for ingest
  double threshold = 0.3;
  PropagationParams propagation;   // max_iters; rng_seed overridden by rng_seed below
  uint32_t cv_folds = 5;
  uint32_t k_max = 30;             // ceiling for the reported core series
  uint32_t top_urls = 5000;        // URL-resolution budget for seed labeling
  size_t top_hashtags = 20;        // bot ranking length
  size_t human_top_hashtags = 50;  // human list the bot tags are checked against
  std::string hashtag_exclusions_path;  // optional; defaults ship in data/
  uint64_t rng_seed = 42;
  Execution execution = Execution::Parallel;

  static PipelineConfig load(const std::string& path);  // JSON, throws InputError
  void validate() const;                                // throws InputError
};

// Every randomized stage derives its own seed from rng_seed via
// derive_seed(rng_seed, "<stage name>"), so stages can be reproduced alone.
uint64_t stage_seed(const PipelineConfig& config, std::string_view stage);

// Runs ingest -> classify -> seed/propagate -> crossvalidate -> graph ->
// k-core -> centrality -> interactions -> hashtags -> effectiveness, writing
// each table to out_dir and finally manifest.json with a content hash per
// artifact. A stage failure throws StageError; artifacts already written stay.
// Returns the emitted file names in manifest order.
std::vector<std::string> run_all(const PipelineConfig& config, const std::string& out_dir);

// FNV-1a content hash of each named file, as the manifest records it.
uint64_t hash_file(const std::string& path);

}  // namespace partisan

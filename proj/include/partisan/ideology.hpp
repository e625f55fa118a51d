#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "partisan/corpus.hpp"
#include "partisan/graph.hpp"
#include "partisan/groups.hpp"
#include "partisan/url.hpp"

namespace partisan {

// Liberal and conservative outlet domains, matched case-insensitively on the
// registrable domain of a (resolved) URL. The two sets must be disjoint.
struct MediaOutletLists {
  StringSet liberal_domains;
  StringSet conservative_domains;

  // One domain per line; throws InputError on overlap between the lists.
  static MediaOutletLists load(const std::string& liberal_path,
                               const std::string& conservative_path);
};

// URLs ranked by frequency descending, ties broken lexicographically.
std::vector<std::pair<std::string, uint64_t>> rank_urls(const Corpus& corpus, size_t n);

struct SeedEntry {
  Leaning leaning = Leaning::Unlabeled;
  uint32_t liberal_tweets = 0;
  uint32_t conservative_tweets = 0;
};

// account -> polarity-rule label. Only accounts with a strict majority appear:
// ties are removed, accounts with no outlet-linked tweets are absent.
using SeedLabels = StringMap<SeedEntry>;

// Counts, per account, the tweets containing at least one URL whose resolved
// registrable domain is in each outlet list. A tweet counts once per side even
// with several matching URLs; a tweet with URLs from both sides counts once on
// each. URLs absent from the cache are matched as-is.
SeedLabels seed_label(const Corpus& corpus, const UrlResolutionCache& cache,
                      const MediaOutletLists& outlets);

void save_seeds(const SeedLabels& seeds, const std::string& path);
SeedLabels load_seeds(const std::string& path);

enum class Provenance : uint8_t { Seed = 0, Propagated = 1, Unlabeled = 2 };
const char* to_string(Provenance p);

struct LeaningEntry {
  Leaning leaning = Leaning::Unlabeled;
  Provenance provenance = Provenance::Unlabeled;
};

// Covers every graph node plus any seed account missing from the graph.
using LeaningMap = StringMap<LeaningEntry>;

struct PropagationParams {
  uint32_t max_iters = 100;
  uint64_t rng_seed = 42;
};

// Label propagation over the undirected weighted view of the retweet graph.
// Seeds are clamped. Non-seed nodes are visited asynchronously in a shuffled
// order drawn from rng_seed; each takes the label with the largest edge-weight
// sum among labeled neighbors, keeping its current label when tied with it.
// A fresh tie is broken by an rng draw over the tied labels ordered by their
// closest contributing neighbor index, which keeps runs reproducible and
// Liberal/Conservative-symmetric. Stops when an iteration changes nothing.
// Throws InputError when seeds are empty.
LeaningMap propagate(const RetweetGraph& graph, const SeedLabels& seeds,
                     const PropagationParams& params);

void save_leanings(const LeaningMap& leanings, const std::string& path);
StringMap<Leaning> load_leanings(const std::string& path);
StringMap<Leaning> leanings_only(const LeaningMap& leanings);

struct FoldScore {
  double macro_precision = 0, macro_recall = 0;
  double micro_precision = 0, micro_recall = 0;
};

struct PRReport {
  uint32_t folds = 0;
  std::vector<FoldScore> fold_scores;
  FoldScore mean;  // arithmetic mean over folds
};

// Stratified k-fold validation of the seed labels: clamp the training folds,
// propagate, score the held-out seeds. Precision/recall are computed per class
// and macro-averaged; micro averages are reported alongside. Throws InputError
// when a class has fewer members than folds.
PRReport crossvalidate(const RetweetGraph& graph, const SeedLabels& seeds,
                       uint32_t folds, uint64_t rng_seed,
                       uint32_t max_iters = 100);

void write_pr_report(const PRReport& report, const std::string& path);

}  // namespace partisan

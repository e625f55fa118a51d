#include "partisan/ideology.hpp"

#include <algorithm>
#include <fstream>

#include "partisan/csv.hpp"
#include "partisan/errors.hpp"
#include "partisan/log.hpp"
#include "partisan/rng.hpp"

namespace partisan {

namespace {

StringSet load_domain_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open: " + path);
  StringSet out;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view t = trim(line);
    if (t.empty() || t.front() == '#' || t.front() == ';') continue;
    std::string dom = registrable_domain(t);
    if (dom.empty()) {
      log::warn("skipping unparseable outlet domain: " + std::string(t));
      continue;
    }
    out.insert(std::move(dom));
  }
  return out;
}

}  // namespace

MediaOutletLists MediaOutletLists::load(const std::string& liberal_path,
                                        const std::string& conservative_path) {
  MediaOutletLists lists;
  lists.liberal_domains = load_domain_file(liberal_path);
  lists.conservative_domains = load_domain_file(conservative_path);
  for (const std::string& d : lists.liberal_domains) {
    if (lists.conservative_domains.contains(d))
      throw InputError("outlet domain in both lists: " + d);
  }
  return lists;
}

std::vector<std::pair<std::string, uint64_t>> rank_urls(const Corpus& corpus, size_t n) {
  StringMap<uint64_t> counts;
  for (const TweetRecord& r : corpus.records()) {
    for (const std::string& u : r.urls) ++counts[u];
  }
  std::vector<std::pair<std::string, uint64_t>> ranked;
  ranked.reserve(counts.size());
  for (auto& [url, c] : counts) ranked.emplace_back(url, c);
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (ranked.size() > n) ranked.resize(n);
  return ranked;
}

SeedLabels seed_label(const Corpus& corpus, const UrlResolutionCache& cache,
                      const MediaOutletLists& outlets) {
  struct Tally {
    uint32_t lib = 0, con = 0;
  };
  StringMap<Tally> tallies;
  for (const TweetRecord& r : corpus.records()) {
    if (r.urls.empty()) continue;
    bool lib = false, con = false;
    for (const std::string& u : r.urls) {
      std::string_view resolved = u;
      if (auto hit = cache.lookup(u)) resolved = *hit;
      std::string dom = registrable_domain(resolved);
      if (dom.empty()) continue;
      lib = lib || outlets.liberal_domains.contains(dom);
      con = con || outlets.conservative_domains.contains(dom);
    }
    if (!lib && !con) continue;
    Tally& t = tallies[r.author_id];
    if (lib) ++t.lib;   // a tweet counts once per side,
    if (con) ++t.con;   // and once on each when both appear
  }
  SeedLabels seeds;
  seeds.reserve(tallies.size());
  for (const auto& [account, t] : tallies) {
    if (t.lib == t.con) continue;  // equal counts: account removed
    SeedEntry e;
    e.leaning = t.lib > t.con ? Leaning::Liberal : Leaning::Conservative;
    e.liberal_tweets = t.lib;
    e.conservative_tweets = t.con;
    seeds.emplace(account, e);
  }
  return seeds;
}

void save_seeds(const SeedLabels& seeds, const std::string& path) {
  std::vector<std::pair<std::string_view, const SeedEntry*>> rows;
  rows.reserve(seeds.size());
  for (const auto& [account, e] : seeds) rows.emplace_back(account, &e);
  std::sort(rows.begin(), rows.end());
  CsvWriter csv(path);
  csv.row({"account_id", "leaning", "liberal_tweets", "conservative_tweets"});
  for (const auto& [account, e] : rows) {
    csv.row() << account << to_string(e->leaning) << e->liberal_tweets
              << e->conservative_tweets;
  }
}

SeedLabels load_seeds(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open: " + path);
  SeedLabels seeds;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    std::string_view sv = trim(line);
    if (sv.empty()) continue;
    if (first) {
      first = false;
      if (sv.starts_with("account_id")) continue;
    }
    std::vector<std::string> fields = split(sv, ',');
    if (fields.size() != 4) throw InputError("bad seed row in " + path);
    SeedEntry e;
    if (fields[1] == "liberal") {
      e.leaning = Leaning::Liberal;
    } else if (fields[1] == "conservative") {
      e.leaning = Leaning::Conservative;
    } else {
      throw InputError("bad seed leaning in " + path + ": " + fields[1]);
    }
    e.liberal_tweets = static_cast<uint32_t>(std::stoul(fields[2]));
    e.conservative_tweets = static_cast<uint32_t>(std::stoul(fields[3]));
    seeds.emplace(fields[0], e);
  }
  return seeds;
}

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::Seed: return "seed";
    case Provenance::Propagated: return "propagated";
    case Provenance::Unlabeled: return "unlabeled";
  }
  return "?";
}

namespace {

constexpr uint8_t kLib = 0, kCon = 1, kNone = 2;

// Core propagation over node indices. seeds_idx maps node -> clamped label.
// Returns per-node labels in {kLib, kCon, kNone}.
std::vector<uint8_t> propagate_labels(const RetweetGraph& graph,
                                      const std::vector<std::pair<uint32_t, uint8_t>>& seed_nodes,
                                      uint32_t max_iters, uint64_t rng_seed) {
  const uint32_t n = graph.node_count();
  std::vector<uint8_t> label(n, kNone);
  std::vector<uint8_t> clamped(n, 0);
  for (auto [v, l] : seed_nodes) {
    label[v] = l;
    clamped[v] = 1;
  }

  std::vector<uint32_t> order;
  order.reserve(n);
  for (uint32_t v = 0; v < n; ++v) {
    if (!clamped[v]) order.push_back(v);
  }

  DetRng rng(rng_seed);
  for (uint32_t iter = 0; iter < max_iters; ++iter) {
    rng.shuffle(order);
    bool changed = false;
    for (uint32_t v : order) {
      auto nbrs = graph.neighbors(v);
      auto wts = graph.neighbor_weights(v);
      uint64_t sum[2] = {0, 0};
      uint32_t min_contrib[2] = {n, n};  // smallest contributing node index
      for (size_t i = 0; i < nbrs.size(); ++i) {
        uint8_t l = label[nbrs[i]];
        if (l == kNone) continue;
        sum[l] += wts[i];
        min_contrib[l] = std::min(min_contrib[l], nbrs[i]);
      }
      if (sum[0] == 0 && sum[1] == 0) continue;
      uint8_t pick;
      if (sum[0] != sum[1]) {
        pick = sum[0] > sum[1] ? kLib : kCon;
      } else if (label[v] != kNone) {
        continue;  // tied with the current label: keep it
      } else {
        // Fresh tie. Order the tied labels by their closest contributing
        // neighbor, then draw: the choice depends only on graph structure and
        // the rng stream, so relabeling the two sides relabels the outcome.
        uint8_t first = min_contrib[0] <= min_contrib[1] ? kLib : kCon;
        uint8_t second = first == kLib ? kCon : kLib;
        pick = rng.index(2) == 0 ? first : second;
      }
      if (label[v] != pick) {
        label[v] = pick;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return label;
}

uint8_t leaning_code(Leaning l) { return l == Leaning::Liberal ? kLib : kCon; }

}  // namespace

LeaningMap propagate(const RetweetGraph& graph, const SeedLabels& seeds,
                     const PropagationParams& params) {
  if (seeds.empty()) throw InputError("empty seed set: nothing to propagate");
  if (params.max_iters == 0) throw InputError("max_iters must be >= 1");

  std::vector<std::pair<uint32_t, uint8_t>> seed_nodes;
  seed_nodes.reserve(seeds.size());
  for (const auto& [account, e] : seeds) {
    if (auto v = graph.find_node(account)) {
      seed_nodes.emplace_back(*v, leaning_code(e.leaning));
    }
  }

  std::vector<uint8_t> label =
      propagate_labels(graph, seed_nodes, params.max_iters, params.rng_seed);

  LeaningMap out;
  out.reserve(graph.node_count() + seeds.size());
  for (uint32_t v = 0; v < graph.node_count(); ++v) {
    LeaningEntry e;
    if (label[v] == kNone) {
      e = {Leaning::Unlabeled, Provenance::Unlabeled};
    } else {
      e.leaning = label[v] == kLib ? Leaning::Liberal : Leaning::Conservative;
      e.provenance = Provenance::Propagated;
    }
    out.emplace(graph.node_id(v), e);
  }
  // Seeds override whatever propagation says, and are retained even when the
  // account never made it into the graph.
  for (const auto& [account, e] : seeds) {
    out[account] = {e.leaning, Provenance::Seed};
  }
  return out;
}

void save_leanings(const LeaningMap& leanings, const std::string& path) {
  std::vector<std::pair<std::string_view, LeaningEntry>> rows;
  rows.reserve(leanings.size());
  for (const auto& [account, e] : leanings) rows.emplace_back(account, e);
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  CsvWriter csv(path);
  csv.row({"account_id", "leaning", "provenance"});
  for (const auto& [account, e] : rows) {
    csv.row() << account << to_string(e.leaning) << to_string(e.provenance);
  }
}

StringMap<Leaning> load_leanings(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open: " + path);
  StringMap<Leaning> out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    std::string_view sv = trim(line);
    if (sv.empty()) continue;
    if (first) {
      first = false;
      if (sv.starts_with("account_id")) continue;
    }
    std::vector<std::string> fields = split(sv, ',');
    if (fields.size() < 2) throw InputError("bad leaning row in " + path);
    Leaning l;
    if (fields[1] == "liberal") {
      l = Leaning::Liberal;
    } else if (fields[1] == "conservative") {
      l = Leaning::Conservative;
    } else if (fields[1] == "unlabeled") {
      l = Leaning::Unlabeled;
    } else {
      throw InputError("bad leaning in " + path + ": " + fields[1]);
    }
    out[fields[0]] = l;
  }
  return out;
}

StringMap<Leaning> leanings_only(const LeaningMap& leanings) {
  StringMap<Leaning> out;
  out.reserve(leanings.size());
  for (const auto& [account, e] : leanings) out[account] = e.leaning;
  return out;
}

PRReport crossvalidate(const RetweetGraph& graph, const SeedLabels& seeds,
                       uint32_t folds, uint64_t rng_seed, uint32_t max_iters) {
  if (folds < 2) throw InputError("need at least 2 folds");

  // Split seed accounts by class, sorted for a schedule-independent start.
  std::vector<std::string_view> by_class[2];
  for (const auto& [account, e] : seeds) {
    by_class[leaning_code(e.leaning)].push_back(account);
  }
  for (auto& cls : by_class) std::sort(cls.begin(), cls.end());
  for (int c = 0; c < 2; ++c) {
    if (by_class[c].size() < folds) {
      throw InputError(std::string("class ") + (c == kLib ? "liberal" : "conservative") +
                       " has fewer seed members than folds");
    }
  }

  // Stratified assignment: shuffle within each class, deal round-robin.
  DetRng rng(derive_seed(rng_seed, "cv-split"));
  std::vector<uint32_t> fold_of[2];
  for (int c = 0; c < 2; ++c) {
    rng.shuffle(by_class[c]);
    fold_of[c].resize(by_class[c].size());
    for (size_t i = 0; i < by_class[c].size(); ++i) {
      fold_of[c][i] = static_cast<uint32_t>(i % folds);
    }
  }

  PRReport report;
  report.folds = folds;
  for (uint32_t f = 0; f < folds; ++f) {
    SeedLabels train;
    std::vector<std::pair<std::string_view, uint8_t>> test;
    for (int c = 0; c < 2; ++c) {
      for (size_t i = 0; i < by_class[c].size(); ++i) {
        std::string_view account = by_class[c][i];
        if (fold_of[c][i] == f) {
          test.emplace_back(account, static_cast<uint8_t>(c));
        } else {
          train.emplace(std::string(account), seeds.find(account)->second);
        }
      }
    }

    PropagationParams params;
    params.max_iters = max_iters;
    params.rng_seed = derive_seed(rng_seed, "cv-fold-" + std::to_string(f));
    LeaningMap result = propagate(graph, train, params);

    uint64_t tp[2] = {0, 0}, fp[2] = {0, 0}, truth[2] = {0, 0};
    for (const auto& [account, true_class] : test) {
      ++truth[true_class];
      auto it = result.find(account);
      if (it == result.end() || it->second.leaning == Leaning::Unlabeled) continue;
      uint8_t predicted = leaning_code(it->second.leaning);
      if (predicted == true_class) {
        ++tp[predicted];
      } else {
        ++fp[predicted];
      }
    }

    auto ratio = [](uint64_t num, uint64_t den) {
      return den == 0 ? 0.0 : double(num) / double(den);
    };
    FoldScore s;
    s.macro_precision =
        (ratio(tp[0], tp[0] + fp[0]) + ratio(tp[1], tp[1] + fp[1])) / 2.0;
    s.macro_recall = (ratio(tp[0], truth[0]) + ratio(tp[1], truth[1])) / 2.0;
    s.micro_precision = ratio(tp[0] + tp[1], tp[0] + fp[0] + tp[1] + fp[1]);
    s.micro_recall = ratio(tp[0] + tp[1], truth[0] + truth[1]);
    report.fold_scores.push_back(s);
  }

  for (const FoldScore& s : report.fold_scores) {
    report.mean.macro_precision += s.macro_precision;
    report.mean.macro_recall += s.macro_recall;
    report.mean.micro_precision += s.micro_precision;
    report.mean.micro_recall += s.micro_recall;
  }
  report.mean.macro_precision /= folds;
  report.mean.macro_recall /= folds;
  report.mean.micro_precision /= folds;
  report.mean.micro_recall /= folds;
  return report;
}

void write_pr_report(const PRReport& report, const std::string& path) {
  CsvWriter csv(path);
  csv.row({"fold", "macro_precision", "macro_recall", "micro_precision",
           "micro_recall"});
  for (size_t f = 0; f < report.fold_scores.size(); ++f) {
    const FoldScore& s = report.fold_scores[f];
    csv.row() << std::to_string(f) << s.macro_precision << s.macro_recall
              << s.micro_precision << s.micro_recall;
  }
  csv.row() << "mean" << report.mean.macro_precision << report.mean.macro_recall
            << report.mean.micro_precision << report.mean.micro_recall;
}

}  // namespace partisan

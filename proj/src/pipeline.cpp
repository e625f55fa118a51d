#include "partisan/pipeline.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "partisan/analytics.hpp"
#include "partisan/bot_scores.hpp"
#include "partisan/csv.hpp"
#include "partisan/effectiveness.hpp"
#include "partisan/errors.hpp"
#include "partisan/export.hpp"
#include "partisan/graph.hpp"
#include "partisan/groups.hpp"
#include "partisan/hashtags.hpp"
#include "partisan/ingest.hpp"
#include "partisan/kcore.hpp"
#include "partisan/log.hpp"
#include "partisan/url.hpp"

namespace fs = std::filesystem;

namespace partisan {

namespace {

std::string resolve_path(const fs::path& base, const std::string& p) {
  if (p.empty()) return p;
  fs::path path(p);
  if (path.is_absolute()) return p;
  return (base / path).lexically_normal().string();
}

void require_file(const std::string& path, const char* what) {
  if (path.empty()) throw InputError(std::string(what) + " path missing from config");
  if (!fs::exists(path)) throw InputError(std::string(what) + " not found: " + path);
}

}  // namespace

PipelineConfig PipelineConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open: " + path);
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw InputError("not a JSON pipeline config: " + path);

  PipelineConfig c;
  const fs::path base = fs::path(path).parent_path();
  c.corpus_path = resolve_path(base, j.value("corpus", std::string{}));
  c.scores_path = resolve_path(base, j.value("scores", std::string{}));
  if (auto o = j.find("outlets"); o != j.end()) {
    c.liberal_outlets_path = resolve_path(base, o->value("liberal", std::string{}));
    c.conservative_outlets_path =
        resolve_path(base, o->value("conservative", std::string{}));
  }
  c.url_cache_path = resolve_path(base, j.value("url_cache", std::string{}));
  c.exclusion_path = resolve_path(base, j.value("exclusions", std::string{}));
  c.hashtag_exclusions_path =
      resolve_path(base, j.value("hashtag_exclusions", std::string{}));
  c.threshold = j.value("threshold", 0.3);
  if (auto p = j.find("propagation"); p != j.end()) {
    c.propagation.max_iters = p->value("max_iters", 100u);
  }
  c.cv_folds = j.value("cv_folds", 5u);
  c.k_max = j.value("k_max", 30u);
  c.top_urls = j.value("top_urls", 5000u);
  c.top_hashtags = j.value("top_hashtags", size_t{20});
  c.human_top_hashtags = j.value("human_top_hashtags", size_t{50});
  c.rng_seed = j.value("rng_seed", uint64_t{42});
  std::string exec = j.value("execution", std::string("parallel"));
  if (exec == "serial") {
    c.execution = Execution::Serial;
  } else if (exec == "parallel") {
    c.execution = Execution::Parallel;
  } else {
    throw InputError("config: execution must be \"serial\" or \"parallel\"");
  }
  c.validate();
  return c;
}

void PipelineConfig::validate() const {
  require_file(corpus_path, "corpus");
  require_file(scores_path, "scores");
  require_file(liberal_outlets_path, "liberal outlet list");
  require_file(conservative_outlets_path, "conservative outlet list");
  if (!url_cache_path.empty()) require_file(url_cache_path, "url cache");
  if (!exclusion_path.empty()) require_file(exclusion_path, "exclusion list");
  if (!hashtag_exclusions_path.empty())
    require_file(hashtag_exclusions_path, "hashtag exclusion list");
  if (threshold < 0.0 || threshold > 1.0)
    throw InputError("config: threshold must be in [0,1]");
  if (propagation.max_iters == 0) throw InputError("config: max_iters must be >= 1");
  if (cv_folds < 2) throw InputError("config: cv_folds must be >= 2");
}

uint64_t stage_seed(const PipelineConfig& config, std::string_view stage) {
  return derive_seed(config.rng_seed, stage);
}

uint64_t hash_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open: " + path);
  uint64_t h = kFnvOffset;
  char buf[1 << 16];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    h = fnv1a64(buf, static_cast<size_t>(in.gcount()), h);
  }
  return h;
}

namespace {

template <typename Fn>
auto stage(const char* name, Fn&& fn) {
  try {
    log::info(std::string("stage: ") + name);
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

std::string hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void write_corpus_stats(const CorpusStats& s, const std::string& path) {
  CsvWriter csv(path);
  csv.row({"measure", "count"});
  csv.row() << "tweets" << s.n_tweets;
  csv.row() << "retweets" << s.n_retweets;
  csv.row() << "replies" << s.n_replies;
  csv.row() << "accounts" << s.n_users;
}

void write_classes(const StringMap<AccountClass>& classes, const BotScoreTable& table,
                   const std::string& path) {
  std::vector<std::pair<std::string_view, AccountClass>> rows(classes.begin(),
                                                              classes.end());
  std::sort(rows.begin(), rows.end());
  CsvWriter csv(path);
  csv.row({"account_id", "class", "score"});
  for (const auto& [account, cls] : rows) {
    auto r = csv.row();
    r << account << to_string(cls);
    if (auto it = table.scores.find(account); it != table.scores.end()) {
      r << it->second;
    } else {
      r << "";
    }
  }
}

void write_histogram(const std::vector<uint64_t>& hist, double bin_width,
                     const std::string& path) {
  CsvWriter csv(path);
  csv.row({"bin_lo", "bin_hi", "count"});
  for (size_t b = 0; b < hist.size(); ++b) {
    csv.row() << (b * bin_width) << ((b + 1) * bin_width) << hist[b];
  }
}

void write_ranked_urls(const std::vector<std::pair<std::string, uint64_t>>& urls,
                       const std::string& path) {
  CsvWriter csv(path);
  csv.row({"url", "count"});
  for (const auto& [url, count] : urls) csv.row() << url << count;
}

void write_group_counts(const GroupMap& groups, const std::string& path) {
  std::array<uint64_t, kGroupCount + 1> counts{};
  for (const auto& [account, g] : groups) ++counts[static_cast<size_t>(g)];
  uint64_t total = 0;
  for (uint64_t c : counts) total += c;
  CsvWriter csv(path);
  csv.row({"group", "accounts", "share"});
  for (size_t g = 0; g <= kGroupCount; ++g) {
    csv.row() << to_string(static_cast<Group>(g)) << counts[g]
              << (total == 0 ? 0.0 : double(counts[g]) / double(total));
  }
}

void write_empty_table(const std::vector<std::string>& header, const std::string& path) {
  CsvWriter csv(path);
  csv.row(header);
}

}  // namespace

std::vector<std::string> run_all(const PipelineConfig& config, const std::string& out_dir) {
  config.validate();
  fs::create_directories(out_dir);
  std::vector<std::string> emitted;
  auto out = [&](const std::string& name) {
    emitted.push_back(name);
    return out_dir + "/" + name;
  };
  const Execution exec = config.execution;

  // --- ingest ---------------------------------------------------------------
  Corpus corpus = stage("ingest", [&] {
    IngestReport report;
    Corpus c;
    if (is_corpus_file(config.corpus_path)) {
      c = load_corpus(config.corpus_path);
      report.lines_read = report.kept = c.size();
    } else {
      FilterConfig filter;
      if (!config.exclusion_path.empty()) {
        filter.exclusion_terms = load_exclusion_terms(config.exclusion_path);
      }
      c = ingest_file(config.corpus_path, filter, &report, exec);
    }
    write_ingest_report(report, out("ingest_report.csv"));
    write_corpus_stats(stats(c), out("corpus_stats.csv"));
    return c;
  });

  // --- classify ---------------------------------------------------------------
  BotScoreTable score_table;
  StringMap<AccountClass> classes = stage("classify", [&] {
    score_table = load_scores(config.scores_path);
    auto cls = classify(score_table, config.threshold, corpus.account_ids());
    write_histogram(score_histogram(score_table), 0.05, out("score_histogram.csv"));
    write_classes(cls, score_table, out("classes.csv"));
    return cls;
  });

  // --- retweet graph ----------------------------------------------------------
  RetweetGraph graph = stage("graph", [&] {
    RetweetGraph g = build_graph(corpus, exec);
    export_edge_list(g, out("graph.tsv"));
    return g;
  });

  // --- ideology ---------------------------------------------------------------
  SeedLabels seeds = stage("seed-label", [&] {
    auto ranked = rank_urls(corpus, config.top_urls);
    write_ranked_urls(ranked, out("ranked_urls.csv"));

    // The resolution budget: only URLs inside the ranking are expanded, the
    // rest are matched as-is.
    UrlResolutionCache cache;
    if (!config.url_cache_path.empty()) {
      UrlResolutionCache full = UrlResolutionCache::load_tsv(config.url_cache_path);
      StringSet top;
      top.reserve(ranked.size());
      for (const auto& [url, count] : ranked) top.insert(url);
      for (const auto& [short_url, expanded] : full.entries()) {
        if (top.contains(short_url)) cache.insert(short_url, expanded);
      }
    }
    MediaOutletLists outlets = MediaOutletLists::load(config.liberal_outlets_path,
                                                      config.conservative_outlets_path);
    SeedLabels s = seed_label(corpus, cache, outlets);
    save_seeds(s, out("seeds.csv"));
    return s;
  });

  LeaningMap leanings = stage("propagate", [&] {
    LeaningMap l;
    if (seeds.empty()) {
      log::warn("no seed accounts; skipping propagation");
    } else {
      PropagationParams params = config.propagation;
      params.rng_seed = stage_seed(config, "propagate");
      l = propagate(graph, seeds, params);
    }
    save_leanings(l, out("leanings.csv"));
    return l;
  });

  stage("crossvalidate", [&] {
    size_t by_class[2] = {0, 0};
    for (const auto& [account, e] : seeds) {
      ++by_class[e.leaning == Leaning::Liberal ? 0 : 1];
    }
    const std::string path = out("crossvalidation.csv");
    if (by_class[0] < config.cv_folds || by_class[1] < config.cv_folds) {
      log::warn("too few seeds for cross-validation; writing an empty report");
      write_empty_table({"fold", "macro_precision", "macro_recall",
                         "micro_precision", "micro_recall"}, path);
    } else {
      PRReport report = crossvalidate(graph, seeds, config.cv_folds,
                                      stage_seed(config, "crossvalidate"),
                                      config.propagation.max_iters);
      write_pr_report(report, path);
    }
    return 0;
  });

  // --- groups -----------------------------------------------------------------
  GroupMap groups = stage("groups", [&] {
    GroupMap g = assign_groups(classes, leanings_only(leanings));
    save_groups(g, out("groups.csv"));
    write_group_counts(g, out("group_counts.csv"));
    write_tweets_per_user(tweets_per_user(corpus, g), out("group_tweets.csv"));
    return g;
  });

  // --- structural analytics ----------------------------------------------------
  stage("kcore", [&] {
    CoreAssignment cores = core_numbers(graph, exec);
    write_core_series(core_series(graph, cores, groups, config.k_max),
                      out("core_series.csv"));
    return 0;
  });

  stage("centrality", [&] {
    const std::string path = out("centrality.csv");
    if (graph.node_count() < 2) {
      log::warn("graph too small for centrality; writing an empty report");
      write_empty_table({"group", "accounts", "mean_out_centrality",
                         "mean_in_centrality"}, path);
    } else {
      write_centrality(degree_centrality(graph, groups, exec), graph, groups, path);
    }
    return 0;
  });

  stage("interactions", [&] {
    InteractionMatrix m = interaction_matrix(graph, groups, exec);
    write_interaction_matrix(m, out("interaction_counts.csv"),
                             out("interaction_overall.csv"),
                             out("interaction_row.csv"));
    return 0;
  });

  // --- content ------------------------------------------------------------------
  stage("hashtags", [&] {
    StringSet exclusions;
    if (!config.hashtag_exclusions_path.empty()) {
      exclusions = load_hashtag_exclusions(config.hashtag_exclusions_path);
    } else {
      for (const std::string& t : default_exclusion_hashtags()) exclusions.insert(t);
    }
    HashtagReport report = hashtag_report(corpus, groups, exclusions,
                                          config.top_hashtags,
                                          config.human_top_hashtags);
    write_hashtag_report(report, out_dir);
    for (size_t g = 0; g < kGroupCount; ++g) {
      emitted.push_back(std::string("hashtags_") + to_string(static_cast<Group>(g)) +
                        ".csv");
    }
    return 0;
  });

  // --- effectiveness --------------------------------------------------------------
  stage("effectiveness", [&] {
    std::vector<EffectivenessReport> reports;
    reports.push_back(effectiveness(corpus, groups, Side::Liberal));
    reports.push_back(effectiveness(corpus, groups, Side::Conservative));
    write_effectiveness(reports, out("effectiveness.csv"));
    return 0;
  });

  // --- manifest --------------------------------------------------------------------
  stage("manifest", [&] {
    std::sort(emitted.begin(), emitted.end());
    nlohmann::json manifest;
    manifest["parameters"] = {
        {"threshold", config.threshold},
        {"max_iters", config.propagation.max_iters},
        {"cv_folds", config.cv_folds},
        {"k_max", config.k_max},
        {"top_urls", config.top_urls},
        {"top_hashtags", config.top_hashtags},
        {"human_top_hashtags", config.human_top_hashtags},
        {"rng_seed", config.rng_seed},
    };
    manifest["files"] = nlohmann::json::array();
    for (const std::string& name : emitted) {
      manifest["files"].push_back(
          {{"name", name}, {"fnv1a64", hex64(hash_file(out_dir + "/" + name))}});
    }
    std::ofstream outf(out_dir + "/manifest.json", std::ios::binary);
    if (!outf) throw InputError("cannot open for writing: " + out_dir + "/manifest.json");
    outf << manifest.dump(2) << '\n';
    if (!outf) throw InputError("write failed: manifest.json");
    return 0;
  });
  emitted.push_back("manifest.json");

  return emitted;
}

}  // namespace partisan

// partisan-graph: command-line front end. One subcommand per pipeline stage
// plus `run` for the whole thing and `generate` for synthetic scenarios.
//
// Exit codes: 0 success, 1 input error, 2 stage failure.
// Set PARTISAN_LOG=quiet|warn|info|debug to control stderr verbosity.

#include <cstdio>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "partisan/analytics.hpp"
#include "partisan/bot_scores.hpp"
#include "partisan/csv.hpp"
#include "partisan/effectiveness.hpp"
#include "partisan/errors.hpp"
#include "partisan/export.hpp"
#include "partisan/graph.hpp"
#include "partisan/groups.hpp"
#include "partisan/hashtags.hpp"
#include "partisan/ideology.hpp"
#include "partisan/ingest.hpp"
#include "partisan/kcore.hpp"
#include "partisan/pipeline.hpp"
#include "partisan/scenario.hpp"
#include "partisan/url.hpp"

namespace {

using namespace partisan;

Execution exec_of(bool serial) {
  return serial ? Execution::Serial : Execution::Parallel;
}

// Accepts either a packed corpus or raw JSONL; JSONL goes through ingest with
// default filters (run `ingest` first when custom filtering matters).
Corpus load_any_corpus(const std::string& path, Execution exec) {
  if (is_corpus_file(path)) return load_corpus(path);
  return ingest_file(path, FilterConfig{}, nullptr, exec);
}

// Most graph subcommands accept either a corpus (graph built on the fly) or a
// previously exported edge list.
RetweetGraph load_graph_input(const std::string& corpus_path,
                              const std::string& graph_path, Execution exec) {
  if (corpus_path.empty() == graph_path.empty()) {
    throw InputError("give exactly one of --corpus or --graph");
  }
  if (!graph_path.empty()) return import_edge_list(graph_path);
  return build_graph(load_any_corpus(corpus_path, exec), exec);
}

void write_classes_csv(const StringMap<AccountClass>& classes,
                       const BotScoreTable& table, const std::string& path) {
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

void write_histogram_csv(const std::vector<uint64_t>& hist, double bin_width,
                         const std::string& path) {
  CsvWriter csv(path);
  csv.row({"bin_lo", "bin_hi", "count"});
  for (size_t b = 0; b < hist.size(); ++b) {
    csv.row() << (b * bin_width) << ((b + 1) * bin_width) << hist[b];
  }
}

void add_ingest(CLI::App& app) {
  struct Opts {
    std::string input, out, report, exclusions;
    std::string languages = "en";
    bool no_dedup = false, serial = false;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("ingest", "Parse and filter a JSONL corpus");
  cmd->add_option("--input,-i", o->input, "JSONL corpus file")->required();
  cmd->add_option("--out,-o", o->out, "Packed corpus output")->required();
  cmd->add_option("--report", o->report, "Ingest report CSV");
  cmd->add_option("--languages", o->languages,
                  "Comma-separated language allowlist; 'all' keeps everything");
  cmd->add_option("--exclusions", o->exclusions, "Exclusion term file");
  cmd->add_flag("--no-dedup", o->no_dedup, "Keep duplicate tweet ids");
  cmd->add_flag("--serial", o->serial, "Disable parallel parsing");
  cmd->callback([o] {
    FilterConfig filter;
    filter.keep_languages.clear();
    if (o->languages != "all") {
      for (const std::string& lang : split(o->languages, ',')) {
        if (!lang.empty()) filter.keep_languages.insert(to_lower(lang));
      }
    }
    if (!o->exclusions.empty()) {
      filter.exclusion_terms = load_exclusion_terms(o->exclusions);
    }
    filter.dedup = !o->no_dedup;
    IngestReport report;
    Corpus corpus = ingest_file(o->input, filter, &report, exec_of(o->serial));
    save_corpus(corpus, o->out);
    if (!o->report.empty()) write_ingest_report(report, o->report);
    std::printf("kept %llu of %llu lines\n",
                static_cast<unsigned long long>(report.kept),
                static_cast<unsigned long long>(report.lines_read));
  });
}

void add_classify(CLI::App& app) {
  struct Opts {
    std::string corpus, scores, out, histogram;
    double threshold = 0.3;
    bool serial = false;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("classify", "Split accounts into bots and humans");
  cmd->add_option("--corpus", o->corpus, "Corpus (packed or JSONL)")->required();
  cmd->add_option("--scores", o->scores, "Bot score CSV")->required();
  cmd->add_option("--threshold", o->threshold, "Bot threshold (score > t)");
  cmd->add_option("--out,-o", o->out, "Class table CSV")->required();
  cmd->add_option("--histogram", o->histogram, "Score histogram CSV");
  cmd->add_flag("--serial", o->serial, "Disable parallelism");
  cmd->callback([o] {
    Corpus corpus = load_any_corpus(o->corpus, exec_of(o->serial));
    BotScoreTable table = load_scores(o->scores);
    auto classes = classify(table, o->threshold, corpus.account_ids());
    write_classes_csv(classes, table, o->out);
    if (!o->histogram.empty()) {
      write_histogram_csv(score_histogram(table), 0.05, o->histogram);
    }
  });
}

void add_ideology(CLI::App& app) {
  auto* ideology =
      app.add_subcommand("ideology", "Political-leaning inference");
  ideology->require_subcommand(1);

  {
    struct Opts {
      std::string corpus, liberal, conservative, url_cache, out, ranked;
      uint32_t top_urls = 5000;
      bool serial = false;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = ideology->add_subcommand(
        "seed", "Label seed accounts by shared-outlet polarity");
    cmd->add_option("--corpus", o->corpus)->required();
    cmd->add_option("--liberal", o->liberal, "Liberal outlet domains")->required();
    cmd->add_option("--conservative", o->conservative, "Conservative outlet domains")
        ->required();
    cmd->add_option("--url-cache", o->url_cache, "Short-URL resolution cache TSV");
    cmd->add_option("--top-urls", o->top_urls,
                    "Resolution budget: only this many top-ranked URLs are "
                    "expanded (0 = no budget)");
    cmd->add_option("--out,-o", o->out, "Seed table CSV")->required();
    cmd->add_option("--ranked", o->ranked, "Ranked URL table CSV");
    cmd->add_flag("--serial", o->serial, "Disable parallelism");
    cmd->callback([o] {
      Corpus corpus = load_any_corpus(o->corpus, exec_of(o->serial));
      UrlResolutionCache cache;
      if (!o->url_cache.empty()) {
        UrlResolutionCache full = UrlResolutionCache::load_tsv(o->url_cache);
        if (o->top_urls == 0) {
          cache = std::move(full);
        } else {
          auto ranked = rank_urls(corpus, o->top_urls);
          StringSet top;
          for (const auto& [url, count] : ranked) top.insert(url);
          for (const auto& [short_url, expanded] : full.entries()) {
            if (top.contains(short_url)) cache.insert(short_url, expanded);
          }
        }
      }
      if (!o->ranked.empty()) {
        auto ranked = rank_urls(corpus, o->top_urls == 0 ? corpus.size() : o->top_urls);
        CsvWriter csv(o->ranked);
        csv.row({"url", "count"});
        for (const auto& [url, count] : ranked) csv.row() << url << count;
      }
      MediaOutletLists outlets = MediaOutletLists::load(o->liberal, o->conservative);
      save_seeds(seed_label(corpus, cache, outlets), o->out);
    });
  }

  {
    struct Opts {
      std::string corpus, seeds, out;
      uint32_t max_iters = 100;
      uint64_t rng_seed = 42;
      bool serial = false;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = ideology->add_subcommand(
        "propagate", "Propagate seed labels over the retweet graph");
    cmd->add_option("--corpus", o->corpus)->required();
    cmd->add_option("--seeds", o->seeds, "Seed table CSV")->required();
    cmd->add_option("--out,-o", o->out, "Leaning table CSV")->required();
    cmd->add_option("--max-iters", o->max_iters);
    cmd->add_option("--rng-seed", o->rng_seed);
    cmd->add_flag("--serial", o->serial, "Disable parallelism");
    cmd->callback([o] {
      Corpus corpus = load_any_corpus(o->corpus, exec_of(o->serial));
      RetweetGraph graph = build_graph(corpus, exec_of(o->serial));
      PropagationParams params;
      params.max_iters = o->max_iters;
      params.rng_seed = o->rng_seed;
      save_leanings(propagate(graph, load_seeds(o->seeds), params), o->out);
    });
  }

  {
    struct Opts {
      std::string corpus, seeds, out;
      uint32_t folds = 5, max_iters = 100;
      uint64_t rng_seed = 42;
      bool serial = false;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = ideology->add_subcommand(
        "crossvalidate", "Stratified k-fold validation of the seed labels");
    cmd->add_option("--corpus", o->corpus)->required();
    cmd->add_option("--seeds", o->seeds, "Seed table CSV")->required();
    cmd->add_option("--out,-o", o->out, "Precision/recall report CSV")->required();
    cmd->add_option("--folds", o->folds);
    cmd->add_option("--max-iters", o->max_iters);
    cmd->add_option("--rng-seed", o->rng_seed);
    cmd->add_flag("--serial", o->serial, "Disable parallelism");
    cmd->callback([o] {
      Corpus corpus = load_any_corpus(o->corpus, exec_of(o->serial));
      RetweetGraph graph = build_graph(corpus, exec_of(o->serial));
      write_pr_report(crossvalidate(graph, load_seeds(o->seeds), o->folds,
                                    o->rng_seed, o->max_iters),
                      o->out);
    });
  }
}

void add_graph(CLI::App& app) {
  auto* graph_cmd = app.add_subcommand("graph", "Retweet-graph analytics");
  graph_cmd->require_subcommand(1);

  {
    struct Opts {
      std::string corpus, out;
      bool serial = false;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = graph_cmd->add_subcommand("build", "Build and export the edge list");
    cmd->add_option("--corpus", o->corpus)->required();
    cmd->add_option("--out,-o", o->out, "Edge list TSV")->required();
    cmd->add_flag("--serial", o->serial, "Disable parallelism");
    cmd->callback([o] {
      export_edge_list(
          build_graph(load_any_corpus(o->corpus, exec_of(o->serial)),
                      exec_of(o->serial)),
          o->out);
    });
  }

  {
    struct Opts {
      std::string corpus, graph, out;
      bool serial = false;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = graph_cmd->add_subcommand("kcore", "Core decomposition");
    cmd->add_option("--corpus", o->corpus, "Corpus (packed or JSONL)");
    cmd->add_option("--graph", o->graph, "Edge list TSV");
    cmd->add_option("--out,-o", o->out, "Core assignment CSV")->required();
    cmd->add_flag("--serial", o->serial, "Disable parallelism");
    cmd->callback([o] {
      Execution exec = exec_of(o->serial);
      RetweetGraph g = load_graph_input(o->corpus, o->graph, exec);
      CoreAssignment cores = core_numbers(g, exec);
      std::vector<std::pair<std::string_view, uint32_t>> rows;
      rows.reserve(g.node_count());
      for (uint32_t v = 0; v < g.node_count(); ++v) rows.emplace_back(g.node_id(v), cores[v]);
      std::sort(rows.begin(), rows.end());
      CsvWriter csv(o->out);
      csv.row({"account_id", "core"});
      for (const auto& [account, core] : rows) csv.row() << account << core;
    });
  }

  {
    struct Opts {
      std::string corpus, graph, groups, out;
      bool serial = false;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = graph_cmd->add_subcommand("centrality", "Normalized degree centrality");
    cmd->add_option("--corpus", o->corpus, "Corpus (packed or JSONL)");
    cmd->add_option("--graph", o->graph, "Edge list TSV");
    cmd->add_option("--groups", o->groups, "Account group CSV")->required();
    cmd->add_option("--out,-o", o->out, "Centrality table CSV")->required();
    cmd->add_flag("--serial", o->serial, "Disable parallelism");
    cmd->callback([o] {
      Execution exec = exec_of(o->serial);
      RetweetGraph g = load_graph_input(o->corpus, o->graph, exec);
      GroupMap groups = load_groups(o->groups);
      write_centrality(degree_centrality(g, groups, exec), g, groups, o->out);
    });
  }

  {
    struct Opts {
      std::string corpus, graph, groups, out_dir;
      bool serial = false;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = graph_cmd->add_subcommand("interactions", "Group interaction matrices");
    cmd->add_option("--corpus", o->corpus, "Corpus (packed or JSONL)");
    cmd->add_option("--graph", o->graph, "Edge list TSV");
    cmd->add_option("--groups", o->groups, "Account group CSV")->required();
    cmd->add_option("--out-dir", o->out_dir, "Output directory")->required();
    cmd->add_flag("--serial", o->serial, "Disable parallelism");
    cmd->callback([o] {
      Execution exec = exec_of(o->serial);
      RetweetGraph g = load_graph_input(o->corpus, o->graph, exec);
      GroupMap groups = load_groups(o->groups);
      std::filesystem::create_directories(o->out_dir);
      write_interaction_matrix(interaction_matrix(g, groups, exec),
                               o->out_dir + "/interaction_counts.csv",
                               o->out_dir + "/interaction_overall.csv",
                               o->out_dir + "/interaction_row.csv");
    });
  }

  {
    struct Opts {
      std::string corpus, graph, groups, out;
      uint32_t min_weight = 0;
      bool serial = false;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = graph_cmd->add_subcommand("export", "Annotated GEXF export");
    cmd->add_option("--corpus", o->corpus, "Corpus (packed or JSONL)");
    cmd->add_option("--graph", o->graph, "Edge list TSV");
    cmd->add_option("--groups", o->groups, "Account group CSV (optional)");
    cmd->add_option("--out,-o", o->out, "GEXF output")->required();
    cmd->add_option("--min-weight", o->min_weight, "Hide edges lighter than this");
    cmd->add_flag("--serial", o->serial, "Disable parallelism");
    cmd->callback([o] {
      Execution exec = exec_of(o->serial);
      RetweetGraph g = load_graph_input(o->corpus, o->graph, exec);
      GroupMap groups;
      if (!o->groups.empty()) groups = load_groups(o->groups);
      CoreAssignment cores = core_numbers(g, exec);
      CentralityResult centrality;
      if (g.node_count() >= 2) {
        centrality = degree_centrality(g, groups, exec);
      } else {
        centrality.out_centrality.assign(g.node_count(), 0.0);
        centrality.in_centrality.assign(g.node_count(), 0.0);
      }
      export_gexf(g, groups, cores, centrality, o->out, o->min_weight);
    });
  }
}

void add_metrics(CLI::App& app) {
  struct Opts {
    std::string corpus, groups, out;
    std::vector<std::string> sides;
    bool both_sides = false, serial = false;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("metrics", "Bot effectiveness metrics");
  cmd->add_option("--corpus", o->corpus)->required();
  cmd->add_option("--groups", o->groups, "Account group CSV")->required();
  cmd->add_option("--side", o->sides, "liberal or conservative (repeatable)");
  cmd->add_flag("--both-sides", o->both_sides, "Add the pooled two-side variant");
  cmd->add_option("--out,-o", o->out, "Effectiveness CSV")->required();
  cmd->add_flag("--serial", o->serial, "Disable parallelism");
  cmd->callback([o] {
    Corpus corpus = load_any_corpus(o->corpus, exec_of(o->serial));
    GroupMap groups = load_groups(o->groups);
    std::vector<EffectivenessReport> reports;
    if (o->sides.empty() && !o->both_sides) {
      reports.push_back(effectiveness(corpus, groups, Side::Liberal));
      reports.push_back(effectiveness(corpus, groups, Side::Conservative));
    } else {
      for (const std::string& s : o->sides) {
        std::optional<Side> side = parse_side(s);
        if (!side) throw InputError("unknown side: " + s);
        reports.push_back(effectiveness(corpus, groups, *side));
      }
      if (o->both_sides) {
        reports.push_back(effectiveness(corpus, groups, std::nullopt));
      }
    }
    write_effectiveness(reports, o->out);
  });
}

void add_hashtags(CLI::App& app) {
  struct Opts {
    std::string corpus, groups, out_dir, exclusions;
    size_t top = 20, human_top = 50;
    bool serial = false;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("hashtags", "Per-group hashtag rankings");
  cmd->add_option("--corpus", o->corpus)->required();
  cmd->add_option("--groups", o->groups, "Account group CSV")->required();
  cmd->add_option("--out-dir", o->out_dir, "Output directory")->required();
  cmd->add_option("--exclusions", o->exclusions,
                  "Hashtag exclusion file (defaults to the built-in list)");
  cmd->add_option("--top", o->top, "Bot ranking length");
  cmd->add_option("--human-top", o->human_top, "Human ranking length");
  cmd->add_flag("--serial", o->serial, "Disable parallelism");
  cmd->callback([o] {
    Corpus corpus = load_any_corpus(o->corpus, exec_of(o->serial));
    GroupMap groups = load_groups(o->groups);
    StringSet exclusions;
    if (!o->exclusions.empty()) {
      exclusions = load_hashtag_exclusions(o->exclusions);
    } else {
      for (const std::string& t : default_exclusion_hashtags()) exclusions.insert(t);
    }
    write_hashtag_report(
        hashtag_report(corpus, groups, exclusions, o->top, o->human_top),
        o->out_dir);
  });
}

void add_run(CLI::App& app) {
  struct Opts {
    std::string config, out;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("run", "Run the full pipeline");
  cmd->add_option("--config", o->config, "Pipeline config JSON")->required();
  cmd->add_option("--out,-o", o->out, "Output directory")->required();
  cmd->callback([o] {
    std::vector<std::string> files = run_all(PipelineConfig::load(o->config), o->out);
    std::printf("wrote %zu files to %s\n", files.size(), o->out.c_str());
  });
}

void add_generate(CLI::App& app) {
  struct Opts {
    std::string spec, out;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("generate", "Generate a synthetic scenario");
  cmd->add_option("--spec", o->spec, "Scenario spec JSON")->required();
  cmd->add_option("--out,-o", o->out, "Output directory")->required();
  cmd->callback([o] {
    ScenarioFiles files = generate_scenario(ScenarioSpec::load(o->spec), o->out);
    std::printf("wrote scenario to %s\n", o->out.c_str());
    (void)files;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "partisan-graph: retweet-network analysis of partisan bot activity.\n"
      "Set PARTISAN_LOG=quiet|warn|info|debug for stderr verbosity."};
  app.require_subcommand(1);

  add_ingest(app);
  add_classify(app);
  add_ideology(app);
  add_graph(app);
  add_metrics(app);
  add_hashtags(app);
  add_run(app);
  add_generate(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const partisan::StageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const partisan::InputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}

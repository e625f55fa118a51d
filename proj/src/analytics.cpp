#include "partisan/analytics.hpp"

#include <algorithm>

#include "partisan/csv.hpp"
#include "partisan/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace partisan {

namespace {

constexpr size_t kResidualSlot = kGroupCount;  // extra histogram slot

std::vector<Group> node_groups(const RetweetGraph& graph, const GroupMap& groups) {
  const uint32_t n = graph.node_count();
  std::vector<Group> gv(n);
  for (uint32_t v = 0; v < n; ++v) gv[v] = group_of(groups, graph.node_id(v));
  return gv;
}

const char* group_name(size_t g) { return to_string(static_cast<Group>(g)); }

}  // namespace

std::vector<CoreSeriesRow> core_series(const RetweetGraph& graph,
                                       const CoreAssignment& cores,
                                       const GroupMap& groups, uint32_t k_max) {
  std::vector<Group> gv = node_groups(graph, groups);
  uint32_t max_core = 0;
  for (uint32_t c : cores) max_core = std::max(max_core, c);

  // hist[c][g]: nodes of group g with core number exactly c.
  std::vector<std::array<uint64_t, kGroupCount + 1>> hist(max_core + 1);
  for (auto& h : hist) h.fill(0);
  for (uint32_t v = 0; v < graph.node_count(); ++v) {
    size_t slot = gv[v] == Group::Residual ? kResidualSlot : static_cast<size_t>(gv[v]);
    ++hist[cores[v]][slot];
  }

  std::vector<CoreSeriesRow> rows(k_max + 1);
  std::array<uint64_t, kGroupCount + 1> cum{};
  // Accumulate from the deepest core downward so row k counts core >= k.
  for (int64_t k = max_core; k >= 0; --k) {
    for (size_t g = 0; g <= kGroupCount; ++g) cum[g] += hist[k][g];
    if (k > static_cast<int64_t>(k_max)) continue;
    CoreSeriesRow& row = rows[k];
    row.k = static_cast<uint32_t>(k);
    row.residual = cum[kResidualSlot];
    row.accounts = row.residual;
    for (size_t g = 0; g < kGroupCount; ++g) {
      row.group_counts[g] = cum[g];
      row.accounts += cum[g];
    }
    for (size_t g = 0; g < kGroupCount; ++g) {
      row.group_fraction[g] =
          row.accounts == 0 ? 0.0 : double(row.group_counts[g]) / double(row.accounts);
    }
  }
  for (uint32_t k = max_core + 1; k <= k_max; ++k) rows[k].k = k;
  return rows;
}

void write_core_series(const std::vector<CoreSeriesRow>& rows, const std::string& path) {
  CsvWriter csv(path);
  {
    auto r = csv.row();
    r << "k" << "accounts";
    for (size_t g = 0; g < kGroupCount; ++g) r << group_name(g);
    r << "residual";
    for (size_t g = 0; g < kGroupCount; ++g) r << (std::string("frac_") + group_name(g));
  }
  for (const CoreSeriesRow& row : rows) {
    auto r = csv.row();
    r << row.k << row.accounts;
    for (size_t g = 0; g < kGroupCount; ++g) r << row.group_counts[g];
    r << row.residual;
    for (size_t g = 0; g < kGroupCount; ++g) r << row.group_fraction[g];
  }
}

CentralityResult degree_centrality(const RetweetGraph& graph, const GroupMap& groups,
                                   Execution exec) {
  const uint32_t n = graph.node_count();
  if (n < 2) throw InputError("degree centrality needs at least 2 nodes");
  CentralityResult res;
  res.out_centrality.resize(n);
  res.in_centrality.resize(n);
  const double denom = double(n) - 1.0;
  const bool parallel = exec == Execution::Parallel;
#pragma omp parallel for schedule(static) if (parallel)
  for (int64_t v = 0; v < static_cast<int64_t>(n); ++v) {
    auto u = static_cast<uint32_t>(v);
    res.out_centrality[u] = double(graph.out_degree(u)) / denom;
    res.in_centrality[u] = double(graph.in_degree(u)) / denom;
  }

  // Group means accumulate sequentially in node order in both modes, so the
  // floating-point result never depends on the schedule.
  std::vector<Group> gv = node_groups(graph, groups);
  std::array<uint64_t, kGroupCount> members{};
  for (uint32_t v = 0; v < n; ++v) {
    if (gv[v] == Group::Residual) continue;
    auto g = static_cast<size_t>(gv[v]);
    res.mean_out[g] += res.out_centrality[v];
    res.mean_in[g] += res.in_centrality[v];
    ++members[g];
  }
  for (size_t g = 0; g < kGroupCount; ++g) {
    if (members[g] > 0) {
      res.mean_out[g] /= double(members[g]);
      res.mean_in[g] /= double(members[g]);
    }
  }
  return res;
}

void write_centrality(const CentralityResult& result, const RetweetGraph& graph,
                      const GroupMap& groups, const std::string& path) {
  std::vector<Group> gv = node_groups(graph, groups);
  std::array<uint64_t, kGroupCount> members{};
  for (Group g : gv) {
    if (g != Group::Residual) ++members[static_cast<size_t>(g)];
  }
  CsvWriter csv(path);
  csv.row({"group", "accounts", "mean_out_centrality", "mean_in_centrality"});
  for (size_t g = 0; g < kGroupCount; ++g) {
    csv.row() << group_name(g) << members[g] << result.mean_out[g] << result.mean_in[g];
  }
}

std::array<std::array<double, kGroupCount>, kGroupCount> InteractionMatrix::overall()
    const {
  std::array<std::array<double, kGroupCount>, kGroupCount> m{};
  if (total == 0) return m;
  for (size_t s = 0; s < kGroupCount; ++s) {
    for (size_t t = 0; t < kGroupCount; ++t) {
      m[s][t] = double(counts[s][t]) / double(total);
    }
  }
  return m;
}

std::array<std::array<double, kGroupCount>, kGroupCount>
InteractionMatrix::row_normalized() const {
  std::array<std::array<double, kGroupCount>, kGroupCount> m{};
  for (size_t s = 0; s < kGroupCount; ++s) {
    uint64_t row_sum = 0;
    for (size_t t = 0; t < kGroupCount; ++t) row_sum += counts[s][t];
    if (row_sum == 0) continue;
    for (size_t t = 0; t < kGroupCount; ++t) {
      m[s][t] = double(counts[s][t]) / double(row_sum);
    }
  }
  return m;
}

InteractionMatrix interaction_matrix(const RetweetGraph& graph, const GroupMap& groups,
                                     Execution exec) {
  std::vector<Group> gv = node_groups(graph, groups);
  InteractionMatrix m;
  auto edges = graph.edges();
  if (exec == Execution::Parallel) {
#ifdef _OPENMP
    const int max_threads = omp_get_max_threads();
#else
    const int max_threads = 1;
#endif
    std::vector<InteractionMatrix> locals(max_threads);
    const int64_t ne = static_cast<int64_t>(edges.size());
#pragma omp parallel
    {
#ifdef _OPENMP
      InteractionMatrix& local = locals[omp_get_thread_num()];
#else
      InteractionMatrix& local = locals[0];
#endif
#pragma omp for schedule(static)
      for (int64_t i = 0; i < ne; ++i) {
        const GraphEdge& e = edges[static_cast<size_t>(i)];
        Group sg = gv[e.src], tg = gv[e.tgt];
        if (sg == Group::Residual || tg == Group::Residual) continue;
        local.counts[static_cast<size_t>(sg)][static_cast<size_t>(tg)] += e.weight;
      }
    }
    for (const InteractionMatrix& local : locals) {
      for (size_t s = 0; s < kGroupCount; ++s) {
        for (size_t t = 0; t < kGroupCount; ++t) m.counts[s][t] += local.counts[s][t];
      }
    }
  } else {
    for (const GraphEdge& e : edges) {
      Group sg = gv[e.src], tg = gv[e.tgt];
      if (sg == Group::Residual || tg == Group::Residual) continue;
      m.counts[static_cast<size_t>(sg)][static_cast<size_t>(tg)] += e.weight;
    }
  }
  for (size_t s = 0; s < kGroupCount; ++s) {
    for (size_t t = 0; t < kGroupCount; ++t) m.total += m.counts[s][t];
  }
  return m;
}

namespace {

template <typename Cell>
void write_matrix_csv(const std::string& path,
                      const std::array<std::array<Cell, kGroupCount>, kGroupCount>& m) {
  CsvWriter csv(path);
  {
    auto r = csv.row();
    r << "src_group";
    for (size_t t = 0; t < kGroupCount; ++t) r << group_name(t);
  }
  for (size_t s = 0; s < kGroupCount; ++s) {
    auto r = csv.row();
    r << group_name(s);
    for (size_t t = 0; t < kGroupCount; ++t) r << m[s][t];
  }
}

}  // namespace

void write_interaction_matrix(const InteractionMatrix& m, const std::string& counts_path,
                              const std::string& overall_path,
                              const std::string& row_path) {
  write_matrix_csv(counts_path, m.counts);
  write_matrix_csv(overall_path, m.overall());
  write_matrix_csv(row_path, m.row_normalized());
}

TweetsPerUser tweets_per_user(const Corpus& corpus, const GroupMap& groups) {
  TweetsPerUser t;
  for (const auto& [account, g] : groups) {
    if (g != Group::Residual) ++t.users[static_cast<size_t>(g)];
  }
  for (const auto& [author, indices] : corpus.author_index()) {
    Group g = group_of(groups, author);
    if (g != Group::Residual) t.tweets[static_cast<size_t>(g)] += indices.size();
  }
  for (size_t g = 0; g < kGroupCount; ++g) {
    t.defined[g] = t.users[g] > 0;
    t.average[g] = t.defined[g] ? double(t.tweets[g]) / double(t.users[g]) : 0.0;
  }
  return t;
}

void write_tweets_per_user(const TweetsPerUser& t, const std::string& path) {
  CsvWriter csv(path);
  csv.row({"group", "records", "accounts", "records_per_account"});
  for (size_t g = 0; g < kGroupCount; ++g) {
    auto r = csv.row();
    r << group_name(g) << t.tweets[g] << t.users[g];
    if (t.defined[g]) {
      r << t.average[g];
    } else {
      r << "undefined";
    }
  }
}

}  // namespace partisan

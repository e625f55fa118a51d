#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "partisan/util.hpp"

namespace partisan {

// Maps shortened URLs to their expanded form. URLs that were looked up but
// never resolved are remembered so callers can tell "unknown" from "failed".
class UrlResolutionCache {
 public:
  UrlResolutionCache() = default;

  // TSV rows: short<TAB>expanded. A row with an empty expansion marks the
  // short URL as unresolved.
  static UrlResolutionCache load_tsv(const std::string& path);
  void save_tsv(const std::string& path) const;

  void insert(std::string short_url, std::string expanded);
  void mark_unresolved(std::string short_url);

  std::optional<std::string_view> lookup(std::string_view url) const;
  bool is_unresolved(std::string_view url) const { return unresolved_.contains(url); }

  size_t size() const { return expanded_.size(); }
  const StringMap<std::string>& entries() const { return expanded_; }
  const StringSet& unresolved() const { return unresolved_; }

 private:
  StringMap<std::string> expanded_;
  StringSet unresolved_;
};

// Pluggable expansion hook. The offline cache is the only implementation the
// pipeline and tests use; a live HTTP resolver can be slotted in by callers.
class UrlResolver {
 public:
  virtual ~UrlResolver() = default;
  virtual std::optional<std::string> resolve(const std::string& url) = 0;
};

class CachedResolver : public UrlResolver {
 public:
  explicit CachedResolver(const UrlResolutionCache& cache) : cache_(cache) {}
  std::optional<std::string> resolve(const std::string& url) override;

 private:
  const UrlResolutionCache& cache_;
};

// Public-suffix-aware registrable domain of a URL: lowercased host reduced to
// one label above its public suffix ("www.nytimes.com" -> "nytimes.com",
// "news.bbc.co.uk" -> "bbc.co.uk"). Unknown suffixes fall back to the last
// label. IP literals and single-label hosts come back unchanged; empty string
// when no host can be extracted.
std::string registrable_domain(std::string_view url);

}  // namespace partisan

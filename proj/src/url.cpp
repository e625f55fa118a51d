#include "partisan/url.hpp"

#include <algorithm>
#include <array>
#include <fstream>

#include "partisan/errors.hpp"

namespace partisan {

UrlResolutionCache UrlResolutionCache::load_tsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open: " + path);
  UrlResolutionCache cache;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      cache.mark_unresolved(line);
      continue;
    }
    std::string short_url = line.substr(0, tab);
    std::string expanded = line.substr(tab + 1);
    if (short_url.empty()) continue;
    if (expanded.empty()) {
      cache.mark_unresolved(std::move(short_url));
    } else {
      cache.insert(std::move(short_url), std::move(expanded));
    }
  }
  return cache;
}

void UrlResolutionCache::save_tsv(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open for writing: " + path);
  std::vector<std::pair<std::string_view, std::string_view>> rows;
  rows.reserve(expanded_.size() + unresolved_.size());
  for (const auto& [s, e] : expanded_) rows.emplace_back(s, e);
  for (const auto& s : unresolved_) rows.emplace_back(s, std::string_view{});
  std::sort(rows.begin(), rows.end());
  for (const auto& [s, e] : rows) out << s << '\t' << e << '\n';
  if (!out) throw InputError("write failed: " + path);
}

void UrlResolutionCache::insert(std::string short_url, std::string expanded) {
  if (expanded.empty()) throw InputError("cache expansion must not be empty");
  unresolved_.erase(short_url);
  expanded_[std::move(short_url)] = std::move(expanded);
}

void UrlResolutionCache::mark_unresolved(std::string short_url) {
  if (expanded_.contains(short_url)) return;  // a resolution beats a failure
  unresolved_.insert(std::move(short_url));
}

std::optional<std::string_view> UrlResolutionCache::lookup(std::string_view url) const {
  auto it = expanded_.find(url);
  if (it == expanded_.end()) return std::nullopt;
  return std::string_view(it->second);
}

std::optional<std::string> CachedResolver::resolve(const std::string& url) {
  auto hit = cache_.lookup(url);
  if (!hit) return std::nullopt;
  return std::string(*hit);
}

namespace {

// Multi-label public suffixes we recognize. Anything else falls back to the
// default rule (the last label alone is the suffix), which is what the PSL
// prescribes for unlisted TLDs.
constexpr std::array<std::string_view, 44> kTwoLabelSuffixes = {
    "ac.uk",  "co.uk",  "gov.uk", "ltd.uk", "me.uk",  "net.uk", "org.uk",
    "plc.uk", "com.au", "net.au", "org.au", "edu.au", "gov.au", "asn.au",
    "id.au",  "co.jp",  "ne.jp",  "or.jp",  "ac.jp",  "go.jp",  "co.nz",
    "net.nz", "org.nz", "govt.nz", "com.br", "net.br", "org.br", "gov.br",
    "com.mx", "org.mx", "co.in",  "net.in", "org.in", "com.cn", "net.cn",
    "org.cn", "com.tw", "com.sg", "com.hk", "co.za",  "org.za", "com.ar",
    "co.kr",  "com.tr",
};

bool is_two_label_suffix(std::string_view s) {
  return std::find(kTwoLabelSuffixes.begin(), kTwoLabelSuffixes.end(), s) !=
         kTwoLabelSuffixes.end();
}

bool all_digit_labels(std::string_view host) {
  bool any = false;
  for (char c : host) {
    if (c == '.') continue;
    if (c < '0' || c > '9') return false;
    any = true;
  }
  return any;
}

}  // namespace

std::string registrable_domain(std::string_view url) {
  std::string_view rest = trim(url);
  if (size_t scheme = rest.find("://"); scheme != std::string_view::npos) {
    rest = rest.substr(scheme + 3);
  }
  // Authority ends at the first path, query, or fragment delimiter.
  size_t end = rest.find_first_of("/?#");
  std::string_view authority = rest.substr(0, end);
  // Userinfo, if any, precedes the last '@'.
  if (size_t at = authority.rfind('@'); at != std::string_view::npos) {
    authority = authority.substr(at + 1);
  }
  if (authority.empty()) return "";

  if (authority.front() == '[') {  // IPv6 literal: return verbatim innards
    size_t close = authority.find(']');
    if (close == std::string_view::npos) return "";
    return to_lower(authority.substr(1, close - 1));
  }
  // Strip a trailing :port.
  if (size_t colon = authority.rfind(':'); colon != std::string_view::npos) {
    std::string_view port = authority.substr(colon + 1);
    bool digits = !port.empty();
    for (char c : port) digits = digits && c >= '0' && c <= '9';
    if (digits || port.empty()) authority = authority.substr(0, colon);
  }
  std::string host = to_lower(authority);
  while (!host.empty() && host.back() == '.') host.pop_back();
  if (host.empty()) return "";
  if (all_digit_labels(host)) return host;  // IPv4 literal

  // Collect label boundaries.
  std::vector<size_t> starts{0};
  for (size_t i = 0; i < host.size(); ++i) {
    if (host[i] == '.') starts.push_back(i + 1);
  }
  size_t n = starts.size();
  if (n == 1) return host;

  // Suffix = last two labels when listed, else the last label; registrable
  // domain = suffix plus one more label.
  size_t suffix_labels = 1;
  if (n >= 2 && is_two_label_suffix(host.substr(starts[n - 2]))) suffix_labels = 2;
  if (n <= suffix_labels) return host;  // the host IS a public suffix
  return host.substr(starts[n - suffix_labels - 1]);
}

}  // namespace partisan

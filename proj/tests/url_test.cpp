#include <doctest.h>

#include "partisan/errors.hpp"
#include "partisan/url.hpp"
#include "support/tmpdir.hpp"

using namespace partisan;
using testsupport::TempDir;

TEST_SUITE_BEGIN("url");

TEST_CASE("registrable_domain basics") {
  CHECK(registrable_domain("https://www.nytimes.com/2018/politics") == "nytimes.com");
  CHECK(registrable_domain("http://breitbart.com") == "breitbart.com");
  CHECK(registrable_domain("https://edition.cnn.com/path?x=1#frag") == "cnn.com");
  CHECK(registrable_domain("foxnews.com/story") == "foxnews.com");  // scheme-less
  CHECK(registrable_domain("HTTPS://WWW.CNN.COM/") == "cnn.com");
}

TEST_CASE("registrable_domain handles authority decorations") {
  CHECK(registrable_domain("https://user:pw@host.example.org/x") == "example.org");
  CHECK(registrable_domain("https://news.example.com:8080/") == "example.com");
  CHECK(registrable_domain("https://example.com./x") == "example.com");  // trailing dot
}

TEST_CASE("registrable_domain with multi-label public suffixes") {
  CHECK(registrable_domain("https://www.bbc.co.uk/news") == "bbc.co.uk");
  CHECK(registrable_domain("https://blogs.theguardian.co.uk") == "theguardian.co.uk");
  CHECK(registrable_domain("https://example.com.au/x") == "example.com.au");
  CHECK(registrable_domain("https://sub.example.ac.uk") == "example.ac.uk");
}

TEST_CASE("registrable_domain ip literals and single labels") {
  CHECK(registrable_domain("http://192.168.0.1/x") == "192.168.0.1");
  CHECK(registrable_domain("http://[2001:DB8::1]:443/x") == "2001:db8::1");
  CHECK(registrable_domain("http://localhost:3000") == "localhost");
}

TEST_CASE("registrable_domain edge inputs") {
  CHECK(registrable_domain("") == "");
  CHECK(registrable_domain("   ") == "");
  CHECK(registrable_domain("https://") == "");
  CHECK(registrable_domain("co.uk") == "co.uk");  // bare suffix stays itself
}

TEST_CASE("cache insert, lookup, and unresolved marking") {
  UrlResolutionCache cache;
  cache.insert("https://bit.ly/abc", "https://www.nytimes.com/story");
  CHECK(cache.lookup("https://bit.ly/abc") == "https://www.nytimes.com/story");
  CHECK_FALSE(cache.lookup("https://bit.ly/zzz").has_value());

  cache.mark_unresolved("https://bit.ly/dead");
  CHECK(cache.is_unresolved("https://bit.ly/dead"));
  CHECK_FALSE(cache.lookup("https://bit.ly/dead").has_value());

  // A later successful resolution beats the failure mark.
  cache.mark_unresolved("https://bit.ly/late");
  cache.insert("https://bit.ly/late", "https://ex.org/x");
  CHECK_FALSE(cache.is_unresolved("https://bit.ly/late"));
  CHECK(cache.lookup("https://bit.ly/late") == "https://ex.org/x");

  CHECK_THROWS_AS(cache.insert("https://bit.ly/e", ""), InputError);
}

TEST_CASE("cache TSV round-trip") {
  TempDir tmp("urlcache");
  UrlResolutionCache cache;
  cache.insert("https://t.co/1", "https://a.example/long");
  cache.insert("https://t.co/2", "https://b.example/longer");
  cache.mark_unresolved("https://t.co/3");
  std::string path = tmp.file("cache.tsv");
  cache.save_tsv(path);

  UrlResolutionCache loaded = UrlResolutionCache::load_tsv(path);
  CHECK(loaded.size() == cache.size());
  CHECK(loaded.lookup("https://t.co/1") == "https://a.example/long");
  CHECK(loaded.is_unresolved("https://t.co/3"));

  // Identical content on re-save (deterministic ordering).
  std::string again = tmp.file("cache2.tsv");
  loaded.save_tsv(again);
  CHECK(testsupport::slurp(path) == testsupport::slurp(again));
}

TEST_CASE("cached resolver answers only from the cache") {
  UrlResolutionCache cache;
  cache.insert("https://sh.rt/hit", "https://cached.example/y");
  cache.mark_unresolved("https://sh.rt/dead");
  CachedResolver resolver(cache);

  CHECK(resolver.resolve("https://sh.rt/hit") == "https://cached.example/y");
  CHECK_FALSE(resolver.resolve("https://sh.rt/dead").has_value());
  CHECK_FALSE(resolver.resolve("https://sh.rt/never-seen").has_value());
}

TEST_SUITE_END();

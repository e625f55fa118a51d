#include "partisan/corpus.hpp"

#include <cstring>
#include <fstream>
#include <limits>

#include "partisan/errors.hpp"

namespace partisan {

namespace {
constexpr char kMagic[8] = {'P', 'G', 'C', 'O', 'R', 'P', '0', '1'};
}

const char* to_string(TweetKind k) {
  switch (k) {
    case TweetKind::Original: return "original";
    case TweetKind::Retweet: return "retweet";
    case TweetKind::Reply: return "reply";
  }
  return "?";
}

Corpus::Corpus(std::vector<TweetRecord> records) : records_(std::move(records)) {
  for (uint32_t i = 0; i < records_.size(); ++i) {
    const TweetRecord& r = records_[i];
    by_kind_[static_cast<size_t>(r.kind)].push_back(i);
    by_author_[r.author_id].push_back(i);
  }
}

const std::vector<uint32_t>* Corpus::by_author(std::string_view author) const {
  auto it = by_author_.find(author);
  return it == by_author_.end() ? nullptr : &it->second;
}

std::vector<std::string> Corpus::account_ids() const {
  std::vector<std::string> ids;
  StringSet seen;
  seen.reserve(records_.size() / 2 + 1);
  auto add = [&](const std::string& id) {
    if (seen.insert(id).second) ids.push_back(id);
  };
  for (const TweetRecord& r : records_) {
    add(r.author_id);
    if (r.referenced_author_id) add(*r.referenced_author_id);
  }
  return ids;
}

CorpusStats stats(const Corpus& corpus) {
  CorpusStats s;
  s.n_tweets = corpus.by_kind(TweetKind::Original).size();
  s.n_retweets = corpus.by_kind(TweetKind::Retweet).size();
  s.n_replies = corpus.by_kind(TweetKind::Reply).size();
  s.n_users = corpus.account_ids().size();
  return s;
}

namespace {

void put_u8(std::ostream& out, uint8_t v) { out.put(static_cast<char>(v)); }

void put_u16(std::ostream& out, uint16_t v) {
  char b[2] = {static_cast<char>(v & 0xff), static_cast<char>(v >> 8)};
  out.write(b, 2);
}

void put_u32(std::ostream& out, uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 4);
}

void put_u64(std::ostream& out, uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 8);
}

void put_str(std::ostream& out, const std::string& s) {
  if (s.size() > std::numeric_limits<uint32_t>::max())
    throw InputError("corpus string field too long");
  put_u32(out, static_cast<uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

void put_str_list(std::ostream& out, const std::vector<std::string>& v) {
  if (v.size() > std::numeric_limits<uint16_t>::max())
    throw InputError("corpus list field too long");
  put_u16(out, static_cast<uint16_t>(v.size()));
  for (const std::string& s : v) put_str(out, s);
}

struct BinReader {
  std::istream& in;
  const std::string& path;

  void fail() const { throw InputError("corrupt corpus file: " + path); }

  uint8_t u8() {
    int c = in.get();
    if (c == std::char_traits<char>::eof()) fail();
    return static_cast<uint8_t>(c);
  }
  uint16_t u16() { return static_cast<uint16_t>(u8() | (uint16_t(u8()) << 8)); }
  uint32_t u32() {
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= uint32_t(u8()) << (8 * i);
    return v;
  }
  uint64_t u64() {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= uint64_t(u8()) << (8 * i);
    return v;
  }
  std::string str() {
    uint32_t n = u32();
    std::string s(n, '\0');
    in.read(s.data(), n);
    if (in.gcount() != static_cast<std::streamsize>(n)) fail();
    return s;
  }
  std::vector<std::string> str_list() {
    uint16_t n = u16();
    std::vector<std::string> v;
    v.reserve(n);
    for (uint16_t i = 0; i < n; ++i) v.push_back(str());
    return v;
  }
};

}  // namespace

void save_corpus(const Corpus& corpus, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open for writing: " + path);
  out.write(kMagic, sizeof(kMagic));
  put_u64(out, corpus.size());
  for (const TweetRecord& r : corpus.records()) {
    put_u8(out, static_cast<uint8_t>(r.kind));
    uint8_t flags = (r.referenced_tweet_id ? 1 : 0) | (r.referenced_author_id ? 2 : 0);
    put_u8(out, flags);
    put_str(out, r.tweet_id);
    put_str(out, r.author_id);
    if (r.referenced_tweet_id) put_str(out, *r.referenced_tweet_id);
    if (r.referenced_author_id) put_str(out, *r.referenced_author_id);
    put_str(out, r.language);
    put_str(out, r.text);
    put_str(out, r.created_at);
    put_str_list(out, r.hashtags);
    put_str_list(out, r.urls);
  }
  if (!out) throw InputError("write failed: " + path);
}

Corpus load_corpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open: " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (in.gcount() != sizeof(magic) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw InputError("not a corpus file: " + path);
  BinReader r{in, path};
  uint64_t count = r.u64();
  std::vector<TweetRecord> records;
  records.reserve(count);
  for (uint64_t i = 0; i < count; ++i) {
    TweetRecord rec;
    uint8_t kind = r.u8();
    if (kind > 2) r.fail();
    rec.kind = static_cast<TweetKind>(kind);
    uint8_t flags = r.u8();
    rec.tweet_id = r.str();
    rec.author_id = r.str();
    if (flags & 1) rec.referenced_tweet_id = r.str();
    if (flags & 2) rec.referenced_author_id = r.str();
    rec.language = r.str();
    rec.text = r.str();
    rec.created_at = r.str();
    rec.hashtags = r.str_list();
    rec.urls = r.str_list();
    records.push_back(std::move(rec));
  }
  return Corpus(std::move(records));
}

bool is_corpus_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  char magic[8];
  in.read(magic, sizeof(magic));
  return in.gcount() == sizeof(magic) && std::memcmp(magic, kMagic, sizeof(kMagic)) == 0;
}

}  // namespace partisan

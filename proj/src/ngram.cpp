#include "contam/ngram.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "contam/error.hpp"

namespace contam {

Vocab::Vocab() {
  add("<s>");
  add("</s>");
  add("<unk>");
}

uint32_t Vocab::add(const std::string& word) {
  auto it = word_to_id_.find(word);
  if (it != word_to_id_.end()) return it->second;
  uint32_t id = static_cast<uint32_t>(id_to_word_.size());
  id_to_word_.push_back(word);
  word_to_id_.emplace(word, id);
  return id;
}

uint32_t Vocab::lookup(const std::string& word) const {
  auto it = word_to_id_.find(word);
  return it == word_to_id_.end() ? kUnk : it->second;
}

std::string pack_ids(std::span<const uint32_t> ids) {
  std::string key(ids.size() * 4, '\0');
  for (size_t i = 0; i < ids.size(); i++) {
    for (int b = 0; b < 4; b++) {
      key[i * 4 + b] = static_cast<char>((ids[i] >> (8 * b)) & 0xff);
    }
  }
  return key;
}

std::vector<uint32_t> unpack_ids(std::string_view key) {
  std::vector<uint32_t> ids(key.size() / 4);
  for (size_t i = 0; i < ids.size(); i++) {
    uint32_t v = 0;
    for (int b = 0; b < 4; b++) {
      v |= static_cast<uint32_t>(static_cast<unsigned char>(key[i * 4 + b]))
           << (8 * b);
    }
    ids[i] = v;
  }
  return ids;
}

uint64_t NgramModel::ContextTable::count_of(uint32_t word) const {
  auto it = std::lower_bound(
      counts.begin(), counts.end(), word,
      [](const std::pair<uint32_t, uint64_t>& e, uint32_t w) { return e.first < w; });
  if (it != counts.end() && it->first == word) return it->second;
  return 0;
}

// Raw gram counts of one level, keyed by the full packed gram.
using RawCounts = std::unordered_map<std::string, uint64_t>;

struct NgramModelBuilder {
  static NgramModel train(uint32_t order,
                          const std::vector<std::vector<uint32_t>>& sentences,
                          Vocab vocab);
};

NgramModel NgramModelBuilder::train(
    uint32_t order, const std::vector<std::vector<uint32_t>>& sentences,
    Vocab vocab) {
  if (order == 0) throw InputError("n-gram order must be >= 1");
  if (sentences.empty()) throw InputError("empty training stream");

  std::vector<RawCounts> raw(order + 1);
  std::unordered_map<uint32_t, uint64_t> raw_unigrams;
  uint64_t real_tokens = 0;

  for (const std::vector<uint32_t>& sent : sentences) {
    if (sent.empty()) continue;
    std::vector<uint32_t> padded;
    padded.reserve(sent.size() + order);
    padded.insert(padded.end(), order - 1, Vocab::kBos);
    padded.insert(padded.end(), sent.begin(), sent.end());
    padded.push_back(Vocab::kEos);
    real_tokens += sent.size();
    for (uint32_t w : sent) raw_unigrams[w]++;
    for (uint32_t len = 1; len <= order; len++) {
      for (size_t i = 0; i + len <= padded.size(); i++) {
        if (padded[i + len - 1] == Vocab::kBos) continue;
        raw[len][pack_ids(std::span(padded).subspan(i, len))]++;
      }
    }
  }
  if (real_tokens == 0) throw InputError("empty training stream");

  // Adjusted counts: raw at the top level; continuation counts below,
  // except grams starting with <s> which keep raw counts.
  std::vector<RawCounts> adjusted(order + 1);
  adjusted[order] = raw[order];
  for (uint32_t len = order - 1; len >= 1; len--) {
    RawCounts& adj = adjusted[len];
    for (const auto& [key, cnt] : raw[len + 1]) {
      (void)cnt;
      std::string_view suffix(key.data() + 4, key.size() - 4);
      if (unpack_ids(suffix.substr(0, 4))[0] == Vocab::kBos) continue;
      adj[std::string(suffix)]++;
    }
    for (const auto& [key, cnt] : raw[len]) {
      if (unpack_ids(std::string_view(key).substr(0, 4))[0] == Vocab::kBos) {
        adj[key] = cnt;
      }
    }
  }

  NgramModel model;
  model.order_ = order;
  model.vocab_ = std::move(vocab);
  model.raw_unigrams_ = std::move(raw_unigrams);
  model.real_tokens_ = real_tokens;
  model.discounts_.assign(order + 1, 0.0);
  model.levels_.resize(order + 1);

  for (uint32_t len = 1; len <= order; len++) {
    uint64_t n1 = 0, n2 = 0;
    for (const auto& [key, cnt] : adjusted[len]) {
      (void)key;
      if (cnt == 1) n1++;
      if (cnt == 2) n2++;
    }
    model.discounts_[len] =
        n1 == 0 ? 0.5 : static_cast<double>(n1) / static_cast<double>(n1 + 2 * n2);

    auto& tables = model.levels_[len];
    for (const auto& [key, cnt] : adjusted[len]) {
      std::string ctx(key.data(), key.size() - 4);
      uint32_t word = unpack_ids(std::string_view(key).substr(key.size() - 4))[0];
      NgramModel::ContextTable& t = tables[ctx];
      t.total += cnt;
      t.counts.emplace_back(word, cnt);
    }
    for (auto& [ctx, t] : tables) {
      (void)ctx;
      std::sort(t.counts.begin(), t.counts.end());
    }
  }
  return model;
}


NgramModel train_ngram(uint32_t order,
                       const std::vector<std::vector<std::string>>& sentences) {
  Vocab vocab;
  std::vector<std::vector<uint32_t>> ids(sentences.size());
  for (size_t s = 0; s < sentences.size(); s++) {
    ids[s].reserve(sentences[s].size());
    for (const std::string& w : sentences[s]) ids[s].push_back(vocab.add(w));
  }
  return NgramModelBuilder::train(order, ids, std::move(vocab));
}

NgramModel train_ngram_ids(uint32_t order,
                           const std::vector<std::vector<uint32_t>>& sentences,
                           const std::vector<std::string>& vocab_words) {
  Vocab vocab;
  for (const std::string& w : vocab_words) vocab.add(w);
  std::vector<std::vector<uint32_t>> ids(sentences.size());
  for (size_t s = 0; s < sentences.size(); s++) {
    ids[s].reserve(sentences[s].size());
    for (uint32_t e : sentences[s]) {
      if (e >= vocab_words.size()) {
        throw InputError("token id " + std::to_string(e) +
                         " out of range for vocabulary of " +
                         std::to_string(vocab_words.size()));
      }
      ids[s].push_back(vocab.lookup(vocab_words[e]));
    }
  }
  return NgramModelBuilder::train(order, ids, std::move(vocab));
}

double NgramModel::prob_level(uint32_t m, std::span<const uint32_t> context,
                              uint32_t word) const {
  if (m == 0) return 1.0 / vocab_.outcome_count();
  std::span<const uint32_t> ctx =
      context.subspan(context.size() - (m - 1), m - 1);
  auto it = levels_[m].find(pack_ids(ctx));
  if (it == levels_[m].end() || it->second.total == 0) {
    return prob_level(m - 1, context, word);
  }
  const ContextTable& t = it->second;
  double d = discounts_[m];
  double c = static_cast<double>(t.count_of(word));
  double total = static_cast<double>(t.total);
  double lambda = d * static_cast<double>(t.counts.size()) / total;
  return std::max(c - d, 0.0) / total +
         lambda * prob_level(m - 1, context, word);
}

double NgramModel::prob(std::span<const uint32_t> context, uint32_t word) const {
  if (word == Vocab::kBos || word >= vocab_.size()) {
    throw InputError("word is not a valid outcome");
  }
  uint32_t m = static_cast<uint32_t>(
      std::min<size_t>(order_, context.size() + 1));
  std::span<const uint32_t> ctx = context.subspan(context.size() - (m - 1));
  return prob_level(m, ctx, word);
}

double NgramModel::log_prob(std::span<const uint32_t> context,
                            uint32_t word) const {
  return std::log(prob(context, word));
}

std::vector<double> NgramModel::score_sentence(std::span<const uint32_t> tokens,
                                               bool skip_first) const {
  if (tokens.empty()) throw InputError("cannot score an empty sentence");
  std::vector<double> out;
  std::vector<uint32_t> context;
  for (size_t t = skip_first ? 1 : 0; t < tokens.size(); t++) {
    context.clear();
    for (size_t i = t >= order_ - 1u ? t - (order_ - 1) : 0; i < t; i++) {
      context.push_back(tokens[i]);
    }
    while (context.size() < order_ - 1u) {
      context.insert(context.begin(), Vocab::kBos);
    }
    out.push_back(log_prob(context, tokens[t]));
  }
  return out;
}

std::vector<uint32_t> NgramModel::ids_of_words(
    std::span<const std::string> words) const {
  std::vector<uint32_t> ids;
  ids.reserve(words.size());
  for (const std::string& w : words) ids.push_back(vocab_.lookup(w));
  return ids;
}

uint64_t NgramModel::unigram_count(const std::string& word) const {
  auto it = raw_unigrams_.find(vocab_.lookup(word));
  return it == raw_unigrams_.end() ? 0 : it->second;
}

namespace {

constexpr char kModelMagic[4] = {'C', 'N', 'G', 'M'};
constexpr uint8_t kModelVersion = 1;

void put_u32(std::ostream& out, uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; i++) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 4);
}

void put_u64(std::ostream& out, uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; i++) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 8);
}

void put_f64(std::ostream& out, double v) {
  uint64_t bits;
  static_assert(sizeof(bits) == sizeof(v));
  std::memcpy(&bits, &v, 8);
  put_u64(out, bits);
}

uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  uint32_t v = 0;
  for (int i = 0; i < 4; i++) v |= static_cast<uint32_t>(b[i]) << (8 * i);
  return v;
}

uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  uint64_t v = 0;
  for (int i = 0; i < 8; i++) v |= static_cast<uint64_t>(b[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& in) {
  uint64_t bits = get_u64(in);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

}  // namespace

void NgramModel::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write model file: " + path, path);
  out.write(kModelMagic, 4);
  out.put(static_cast<char>(kModelVersion));
  put_u32(out, order_);
  put_u32(out, vocab_.size());
  for (uint32_t i = 0; i < vocab_.size(); i++) {
    const std::string& w = vocab_.word(i);
    put_u32(out, static_cast<uint32_t>(w.size()));
    out.write(w.data(), static_cast<std::streamsize>(w.size()));
  }
  for (uint32_t m = 1; m <= order_; m++) put_f64(out, discounts_[m]);
  for (uint32_t m = 1; m <= order_; m++) {
    std::vector<const std::string*> keys;
    keys.reserve(levels_[m].size());
    for (const auto& [key, t] : levels_[m]) {
      (void)t;
      keys.push_back(&key);
    }
    std::sort(keys.begin(), keys.end(),
              [](const std::string* a, const std::string* b) { return *a < *b; });
    put_u64(out, keys.size());
    for (const std::string* key : keys) {
      const ContextTable& t = levels_[m].at(*key);
      out.write(key->data(), static_cast<std::streamsize>(key->size()));
      put_u32(out, static_cast<uint32_t>(t.counts.size()));
      for (const auto& [word, cnt] : t.counts) {
        put_u32(out, word);
        put_u64(out, cnt);
      }
    }
  }
  put_u64(out, real_tokens_);
  if (!out) throw InputError("short write to model file: " + path, path);
}

NgramModel NgramModel::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open model file: " + path, path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kModelMagic, 4) != 0) {
    throw InputError("not an n-gram model file", path);
  }
  if (in.get() != kModelVersion) {
    throw InputError("unsupported model file version", path);
  }
  NgramModel model;
  model.order_ = get_u32(in);
  if (model.order_ == 0 || model.order_ > 16) {
    throw InputError("corrupt model file: bad order", path);
  }
  uint32_t vocab_count = get_u32(in);
  for (uint32_t i = 0; i < vocab_count; i++) {
    uint32_t len = get_u32(in);
    std::string w(len, '\0');
    in.read(w.data(), len);
    // The reserved symbols are first in the file and dedupe onto the ids
    // the fresh Vocab already assigned them.
    model.vocab_.add(w);
  }
  model.discounts_.assign(model.order_ + 1, 0.0);
  model.levels_.resize(model.order_ + 1);
  for (uint32_t m = 1; m <= model.order_; m++) model.discounts_[m] = get_f64(in);
  for (uint32_t m = 1; m <= model.order_; m++) {
    uint64_t n_contexts = get_u64(in);
    for (uint64_t c = 0; c < n_contexts; c++) {
      std::string key((m - 1) * 4, '\0');
      in.read(key.data(), static_cast<std::streamsize>(key.size()));
      uint32_t n_entries = get_u32(in);
      ContextTable t;
      t.counts.reserve(n_entries);
      for (uint32_t e = 0; e < n_entries; e++) {
        uint32_t word = get_u32(in);
        uint64_t cnt = get_u64(in);
        t.counts.emplace_back(word, cnt);
        t.total += cnt;
      }
      model.levels_[m].emplace(std::move(key), std::move(t));
    }
  }
  model.real_tokens_ = get_u64(in);
  if (!in) throw InputError("truncated model file", path);
  return model;
}

}  // namespace contam

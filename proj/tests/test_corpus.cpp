#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/resource.h>

#include <string>
#include <vector>

#include "contam/corpus.hpp"
#include "contam/error.hpp"
#include "contam/hash.hpp"
#include "test_util.hpp"

using namespace contam;

namespace {

long peak_rss_kb() {
  struct rusage ru;
  getrusage(RUSAGE_SELF, &ru);
  return ru.ru_maxrss;
}

}  // namespace

TEST_CASE("shingle enumerates k-word windows") {
  std::vector<std::string> words = {"a", "b", "c"};
  ShingleSet set = shingle(words, 2, 7);
  CHECK(set.hashes.size() == 2);
  // Window fingerprints are hashes of the space-joined words.
  uint64_t ab = hash_bytes("a b", 7);
  uint64_t bc = hash_bytes("b c", 7);
  CHECK(std::count(set.hashes.begin(), set.hashes.end(), ab) == 1);
  CHECK(std::count(set.hashes.begin(), set.hashes.end(), bc) == 1);
}

TEST_CASE("shingle of short text is degenerate") {
  std::vector<std::string> words = {"a"};
  ShingleSet set = shingle(words, 3, 7);
  CHECK(set.degenerate());
  CHECK(set.hashes.empty());
}

TEST_CASE("shingle deduplicates repeated windows") {
  std::vector<std::string> words = {"a", "b", "a", "b"};
  CHECK(shingle(words, 2, 7).hashes.size() == 2);  // "a b", "b a"
}

TEST_CASE("shingle k=0 is a usage error") {
  std::vector<std::string> words = {"a", "b"};
  CHECK_THROWS_AS(shingle(words, 0, 7), InputError);
}

TEST_CASE("shingle is deterministic in words, k, and seed") {
  testutil::WordGen gen(0xc0ffeeULL);
  auto words = gen.words(200);
  ShingleSet a = shingle(words, 5, 11);
  ShingleSet b = shingle(words, 5, 11);
  CHECK(a.hashes == b.hashes);
  ShingleSet c = shingle(words, 5, 12);
  CHECK(a.hashes != c.hashes);
}

TEST_CASE("load_documents preserves order and fields") {
  testutil::TempDir tmp("corpus");
  testutil::write_file(tmp.path("docs.jsonl"),
                       R"({"id":"d1","source":"s","text":"one"})"
                       "\n"
                       R"({"id":"d2","source":"s","text":"two"})"
                       "\n"
                       R"({"id":"d3","source":"s","text":"three"})"
                       "\n");
  auto docs = load_documents(tmp.path("docs.jsonl"));
  REQUIRE(docs.size() == 3);
  CHECK(docs[0].doc_id == "d1");
  CHECK(docs[2].text == "three");
}

TEST_CASE("load_documents reports malformed line numbers") {
  testutil::TempDir tmp("corpus");
  testutil::write_file(tmp.path("docs.jsonl"),
                       R"({"id":"d1","text":"one"})"
                       "\nnot json at all\n");
  try {
    load_documents(tmp.path("docs.jsonl"));
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("load_documents rejects duplicate ids by name") {
  testutil::TempDir tmp("corpus");
  testutil::write_file(tmp.path("docs.jsonl"),
                       R"({"id":"dup","text":"one"})"
                       "\n"
                       R"({"id":"dup","text":"two"})"
                       "\n");
  try {
    load_documents(tmp.path("docs.jsonl"));
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("dup") != std::string::npos);
    CHECK(e.line() == 2);
  }
}

TEST_CASE("load_documents missing field is malformed") {
  testutil::TempDir tmp("corpus");
  testutil::write_file(tmp.path("docs.jsonl"), R"({"id":"d1"})" "\n");
  CHECK_THROWS_AS(load_documents(tmp.path("docs.jsonl")), InputError);
}

TEST_CASE("streaming loader keeps memory bounded on a large corpus") {
  testutil::TempDir tmp("corpusbig");
  const std::string path = tmp.path("big.jsonl");
  {
    std::ofstream out(path);
    std::string filler(600, 'x');
    for (int i = 0; i < 100000; i++) {
      out << R"({"id":"d)" << i << R"(","source":"gen","text":")" << filler
          << "\"}\n";
    }
  }
  const auto file_size = std::filesystem::file_size(path);
  CHECK(file_size > 60u * 1000 * 1000);

  long before = peak_rss_kb();
  size_t count = 0, bytes = 0;
  load_documents(path, [&](Document&& d) {
    count++;
    bytes += d.text.size();
  });
  long after = peak_rss_kb();
  CHECK(count == 100000);
  CHECK(bytes == 600u * 100000);
  // Streaming holds one record at a time; allow slack for the id set.
  CHECK((after - before) * 1024 < static_cast<long>(file_size / 2));
}

TEST_CASE("load_eval_set parses utterances") {
  testutil::TempDir tmp("eval");
  testutil::write_file(
      tmp.path("eval.jsonl"),
      R"({"utt_id":"u1","transcript":"hello there","work_id":"bk1","split":"test"})"
      "\n"
      R"({"utt_id":"u2","transcript":"general kenobi"})"
      "\n");
  auto utts = load_eval_set(tmp.path("eval.jsonl"));
  REQUIRE(utts.size() == 2);
  CHECK(utts[0].work_id == "bk1");
  CHECK(utts[1].work_id.empty());
}

TEST_CASE("load_eval_set rejects duplicates and empty transcripts") {
  testutil::TempDir tmp("eval");
  testutil::write_file(tmp.path("dup.jsonl"),
                       R"({"utt_id":"u1","transcript":"a"})"
                       "\n"
                       R"({"utt_id":"u1","transcript":"b"})"
                       "\n");
  CHECK_THROWS_AS(load_eval_set(tmp.path("dup.jsonl")), InputError);
  testutil::write_file(tmp.path("empty.jsonl"),
                       R"({"utt_id":"u1","transcript":""})"
                       "\n");
  CHECK_THROWS_AS(load_eval_set(tmp.path("empty.jsonl")), InputError);
}

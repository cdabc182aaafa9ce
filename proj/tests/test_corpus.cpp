#include "crossling/corpus.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "support.hpp"

using namespace crossling;
namespace fs = std::filesystem;

namespace {

fs::path make_temp_dir(const std::string& tag) {
  auto dir = fs::temp_directory_path() / ("crossling_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  out << contents;
}

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

}  // namespace

TEST_SUITE("corpus") {

TEST_CASE("tokenize lowercases and splits punctuation runs") {
  CHECK(tokenize("In the beginning, God created") ==
        std::vector<std::string>{"in", "the", "beginning", ",", "god", "created"});
  CHECK(tokenize("") == std::vector<std::string>{});
  CHECK(tokenize("don't stop!") == std::vector<std::string>{"don", "'", "t", "stop", "!"});
}

TEST_CASE("tokenize keeps punctuation runs together") {
  CHECK(tokenize("wait...") == std::vector<std::string>{"wait", "..."});
  CHECK(tokenize("\"quoted\"") == std::vector<std::string>{"\"", "quoted", "\""});
  CHECK(tokenize("  spaced\tout ") == std::vector<std::string>{"spaced", "out"});
}

TEST_CASE("tokenize handles non-ASCII input") {
  // French guillemets are Unicode punctuation (Pi/Pf); É lowercases to é.
  CHECK(tokenize("«Échec»") == std::vector<std::string>{"«", "échec", "»"});
  CHECK(tokenize("ΑΛΦΑ") == std::vector<std::string>{"αλφα"});
  CHECK(tokenize("İstanbul") == std::vector<std::string>{"istanbul"});
}

TEST_CASE("tokenize is idempotent on its own output") {
  std::mt19937_64 rng(7);
  const std::string alphabet = "aB.,'!x Y\tz:«»é ";
  std::vector<std::string> pieces = {"a", "B", ".", ",", "'", "!", "x", " ",
                                     "Y", "\t", "z", ":", "«", "»", "é", "Ω"};
  for (int trial = 0; trial < 200; ++trial) {
    std::string line;
    std::size_t len = testsupport::bounded(rng, 24);
    for (std::size_t i = 0; i < len; ++i)
      line += pieces[testsupport::bounded(rng, pieces.size())];
    auto once = tokenize(line);
    auto twice = tokenize(join(once));
    CHECK(once == twice);
  }
}

TEST_CASE("load_parallel_corpus pads shorter files with absent sentences") {
  auto dir = make_temp_dir("load");
  write_file(dir / "en.txt", "a b\nc\nd e f\n");
  write_file(dir / "fr.txt", "x y\nz\n");
  auto corpus = ParallelCorpus::from_files(
      {{"en", (dir / "en.txt").string()}, {"fr", (dir / "fr.txt").string()}});
  CHECK(corpus.num_sentences() == 3);
  CHECK(corpus.num_languages() == 2);
  auto fr = *corpus.language_index("fr");
  CHECK(corpus.present(fr, 0));
  CHECK(corpus.present(fr, 1));
  CHECK_FALSE(corpus.present(fr, 2));
}

TEST_CASE("load_parallel_corpus treats blank lines as absent") {
  auto dir = make_temp_dir("blank");
  write_file(dir / "en.txt", "a b\n\nc\n");
  write_file(dir / "fr.txt", "x\ny\nz\n");
  auto corpus = ParallelCorpus::from_files(
      {{"en", (dir / "en.txt").string()}, {"fr", (dir / "fr.txt").string()}});
  auto en = *corpus.language_index("en");
  CHECK_FALSE(corpus.present(en, 1));
  CHECK(corpus.present(en, 2));
}

TEST_CASE("load_parallel_corpus error cases") {
  auto dir = make_temp_dir("errors");
  write_file(dir / "en.txt", "a\n");
  CHECK_THROWS(ParallelCorpus::from_files({{"en", (dir / "en.txt").string()}}));
  CHECK_THROWS(ParallelCorpus::from_files(
      {{"en", (dir / "en.txt").string()}, {"fr", (dir / "missing.txt").string()}}));
  write_file(dir / "e1.txt", "\n\n");
  write_file(dir / "e2.txt", "\n");
  CHECK_THROWS(ParallelCorpus::from_files(
      {{"en", (dir / "e1.txt").string()}, {"fr", (dir / "e2.txt").string()}}));
}

TEST_CASE("build_vocabulary applies min_count to token occurrences") {
  auto corpus = ParallelCorpus::from_tokens(
      {"en", "fr"},
      {{std::vector<std::string>{"a", "b"}, std::vector<std::string>{"a"}},
       {std::vector<std::string>{"x"}, std::vector<std::string>{"y"}}});
  auto vocab = build_vocabulary(corpus, 2);
  CHECK(vocab.size() == 1);
  CHECK(vocab.find("en", "a").has_value());
  CHECK_FALSE(vocab.find("en", "b").has_value());
  CHECK(vocab.occurrence_count(*vocab.find("en", "a")) == 2);
  CHECK(vocab.sentence_count(*vocab.find("en", "a")) == 2);
}

TEST_CASE("identical surfaces in different languages are distinct entries") {
  auto corpus = ParallelCorpus::from_tokens(
      {"en", "fr"},
      {{std::vector<std::string>{"x", "x"}, std::nullopt},
       {std::vector<std::string>{"x"}, std::vector<std::string>{"x"}}});
  auto vocab = build_vocabulary(corpus, 2);
  CHECK(vocab.size() == 2);
  CHECK(vocab.find("en", "x").has_value());
  CHECK(vocab.find("fr", "x").has_value());
  // en:x occurs twice in one sentence, fr:x once in each of two.
  CHECK(vocab.sentence_count(*vocab.find("en", "x")) == 1);
  CHECK(vocab.sentence_count(*vocab.find("fr", "x")) == 2);
}

TEST_CASE("everything below min_count yields an empty vocabulary") {
  auto corpus = ParallelCorpus::from_tokens(
      {"en", "fr"},
      {{std::vector<std::string>{"a"}}, {std::vector<std::string>{"x"}}});
  CHECK(build_vocabulary(corpus, 2).size() == 0);
}

TEST_CASE("sentence_count matches a brute-force rescan") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto corpus = testsupport::make_random_corpus(seed);
    auto vocab = build_vocabulary(corpus, 1 + seed % 3);
    for (std::uint32_t vi = 0; vi < vocab.size(); ++vi) {
      const auto& w = vocab.word(vi);
      CHECK(vocab.sentence_count(vi) ==
            testsupport::brute_force_sentence_count(corpus, w.lang, w.surface));
    }
  }
}

TEST_CASE("index assignment is deterministic and sorted") {
  auto corpus = testsupport::make_random_corpus(42);
  auto v1 = build_vocabulary(corpus, 2);
  auto v2 = build_vocabulary(corpus, 2);
  REQUIRE(v1.size() == v2.size());
  for (std::uint32_t i = 0; i < v1.size(); ++i) {
    CHECK(v1.word(i) == v2.word(i));
    if (i + 1 < v1.size()) CHECK(v1.word(i) < v1.word(i + 1));
  }
}

TEST_CASE("parse_lang_word splits at the first colon") {
  auto w = parse_lang_word("en::");
  CHECK(w.lang == "en");
  CHECK(w.surface == ":");
  CHECK_THROWS(parse_lang_word("nocolon"));
}

}  // TEST_SUITE

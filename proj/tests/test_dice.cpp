#include "crossling/dice.hpp"

#include <cmath>

#include "doctest.h"
#include "support.hpp"

using namespace crossling;

namespace {

struct DiceFixture {
  ParallelCorpus corpus;
  Vocabulary vocab;
  SparseMatrix indicator;
  SparseMatrix l1;
  CooccurrenceStats stats;

  DiceFixture(ParallelCorpus c, std::uint64_t min_count, const std::string& src,
              const std::string& tgt)
      : corpus(std::move(c)),
        vocab(build_vocabulary(corpus, min_count)),
        indicator(build_indicator_matrix(corpus, vocab, {src, tgt})),
        l1(transform_l1(indicator)),
        stats(indicator, vocab, src, tgt) {}
};

}  // namespace

TEST_SUITE("dice") {

TEST_CASE("dice of a singleton co-occurrence is 2.0") {
  // Both words appear exactly once, together.
  auto corpus = ParallelCorpus::from_tokens(
      {"en", "fr"},
      {{std::vector<std::string>{"a"}}, {std::vector<std::string>{"x"}}});
  DiceFixture f(std::move(corpus), 1, "en", "fr");
  auto a = *f.vocab.find("en", "a");
  auto x = *f.vocab.find("fr", "x");
  CHECK(dice_similarity(a, x, f.stats) == 2.0);
  CHECK(dice_via_dot(a, x, f.l1) == 1.0);
}

TEST_CASE("never co-occurring pair scores 0") {
  auto corpus = ParallelCorpus::from_tokens(
      {"en", "fr"},
      {{std::vector<std::string>{"a"}, std::vector<std::string>{"b"}},
       {std::vector<std::string>{"y"}, std::vector<std::string>{"x"}}});
  DiceFixture f(std::move(corpus), 1, "en", "fr");
  auto a = *f.vocab.find("en", "a");
  auto x = *f.vocab.find("fr", "x");
  CHECK(dice_similarity(a, x, f.stats) == 0.0);
  CHECK(dice_via_dot(a, x, f.l1) == 0.0);
}

TEST_CASE("five-sentence corpus with S=2, marginals 4 and 2") {
  // src a in sentences 0-3, tgt x in sentences 0-1: S(a,x)=2, S(a,*)=4,
  // S(*,x)=2, Dice = 2*2/(4*2) = 0.5.
  auto corpus = ParallelCorpus::from_tokens(
      {"en", "fr"},
      {{std::vector<std::string>{"a"}, std::vector<std::string>{"a"},
        std::vector<std::string>{"a"}, std::vector<std::string>{"a"},
        std::vector<std::string>{"pad"}},
       {std::vector<std::string>{"x"}, std::vector<std::string>{"x"},
        std::vector<std::string>{"z"}, std::vector<std::string>{"z"},
        std::vector<std::string>{"z"}}});
  DiceFixture f(std::move(corpus), 1, "en", "fr");
  auto a = *f.vocab.find("en", "a");
  auto x = *f.vocab.find("fr", "x");
  CHECK(f.stats.pair_count(a, x) == 2);
  CHECK(f.stats.src_marginal(a) == 4);
  CHECK(f.stats.tgt_marginal(x) == 2);
  CHECK(dice_similarity(a, x, f.stats) == 0.5);
  CHECK(dice_via_dot(a, x, f.l1) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("classical sum denominator behind the flag") {
  auto corpus = ParallelCorpus::from_tokens(
      {"en", "fr"},
      {{std::vector<std::string>{"a"}, std::vector<std::string>{"a"}},
       {std::vector<std::string>{"x"}, std::vector<std::string>{"y"}}});
  DiceFixture f(std::move(corpus), 1, "en", "fr");
  auto a = *f.vocab.find("en", "a");
  auto x = *f.vocab.find("fr", "x");
  // S(a,x)=1, S(a,*)=2, S(*,x)=1.
  CHECK(dice_similarity(a, x, f.stats, DiceDenominator::product) == 1.0);
  CHECK(dice_similarity(a, x, f.stats, DiceDenominator::sum) ==
        doctest::Approx(2.0 / 3.0));
}

TEST_CASE("pair counts match the brute-force oracle and are symmetric") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    auto corpus = testsupport::make_random_corpus(seed);
    DiceFixture fwd(corpus, 1, "sr", "tg");
    auto m_rev = build_indicator_matrix(corpus, fwd.vocab, {"sr", "tg"});
    CooccurrenceStats rev(m_rev, fwd.vocab, "tg", "sr");
    for (std::uint32_t ws = 0; ws < fwd.vocab.size(); ++ws) {
      if (fwd.vocab.word(ws).lang != "sr") continue;
      for (std::uint32_t wt = 0; wt < fwd.vocab.size(); ++wt) {
        if (fwd.vocab.word(wt).lang != "tg") continue;
        auto expected = testsupport::brute_force_pair_count(
            corpus, "sr", fwd.vocab.word(ws).surface, "tg", fwd.vocab.word(wt).surface);
        CHECK(fwd.stats.pair_count(ws, wt) == expected);
        CHECK(rev.pair_count(wt, ws) == expected);
        CHECK(fwd.stats.pair_count(ws, wt) <=
              std::min(fwd.stats.src_marginal(ws), fwd.stats.tgt_marginal(wt)));
      }
    }
  }
}

TEST_CASE("dot-product equivalence over randomized corpora") {
  std::size_t pairs_checked = 0;
  double max_diff = 0.0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    auto corpus = testsupport::make_random_corpus(seed);
    DiceFixture f(corpus, seed % 2 ? 1 : 2, "sr", "tg");
    for (std::uint32_t ws = 0; ws < f.vocab.size(); ++ws) {
      if (f.vocab.word(ws).lang != "sr") continue;
      for (std::uint32_t wt = 0; wt < f.vocab.size(); ++wt) {
        if (f.vocab.word(wt).lang != "tg") continue;
        double dot = dice_via_dot(ws, wt, f.l1);
        double dice = dice_similarity(ws, wt, f.stats);
        max_diff = std::max(max_diff, std::abs(dot - dice / 2.0));
        ++pairs_checked;
      }
    }
  }
  CHECK(pairs_checked >= 1000);
  CHECK(max_diff <= 1e-12);
}

TEST_CASE("dice is nonnegative and zero only without co-occurrence") {
  auto corpus = testsupport::make_random_corpus(5);
  DiceFixture f(corpus, 1, "sr", "tg");
  for (std::uint32_t ws = 0; ws < f.vocab.size(); ++ws) {
    if (f.vocab.word(ws).lang != "sr") continue;
    for (std::uint32_t wt = 0; wt < f.vocab.size(); ++wt) {
      if (f.vocab.word(wt).lang != "tg") continue;
      double d = dice_similarity(ws, wt, f.stats);
      CHECK(d >= 0.0);
      CHECK((d == 0.0) == (f.stats.pair_count(ws, wt) == 0));
    }
  }
}

}  // TEST_SUITE

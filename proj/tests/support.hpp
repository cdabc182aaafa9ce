#pragma once

// Shared generators and brute-force oracles for the test suites.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "crossling/corpus.hpp"

namespace testsupport {

inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

inline std::string word_name(std::size_t k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "w%03zu", k);
  return buf;
}

/// A parallel corpus where every language renders the same latent concept
/// sequence through its own random bijection (language 0 is the identity).
/// Optional independent per-language word deletion models partial
/// translations.
struct PermutationCorpus {
  crossling::ParallelCorpus corpus;
  std::vector<std::string> languages;
  // permutations[l][concept] = word id rendered by language l
  std::vector<std::vector<std::uint32_t>> permutations;

  std::string surface(std::size_t lang, std::uint32_t concept_id) const {
    return word_name(permutations[lang][concept_id]);
  }
  /// Gold dictionary entries (surfaces) from language i to language j.
  std::vector<std::pair<std::string, std::string>> gold_dictionary(std::size_t i,
                                                                   std::size_t j) const {
    std::vector<std::pair<std::string, std::string>> entries;
    for (std::uint32_t c = 0; c < permutations[i].size(); ++c)
      entries.emplace_back(surface(i, c), surface(j, c));
    return entries;
  }
};

inline PermutationCorpus make_permutation_corpus(std::size_t n_languages,
                                                 std::size_t n_words,
                                                 std::size_t n_sentences,
                                                 std::size_t min_len, std::size_t max_len,
                                                 std::uint64_t seed,
                                                 double deletion_prob = 0.0) {
  std::mt19937_64 rng(seed);
  PermutationCorpus out;
  for (std::size_t l = 0; l < n_languages; ++l)
    out.languages.push_back(std::string(1, static_cast<char>('a' + l)) +
                            std::string(1, static_cast<char>('a' + l)));
  out.permutations.resize(n_languages);
  for (std::size_t l = 0; l < n_languages; ++l) {
    auto& perm = out.permutations[l];
    perm.resize(n_words);
    for (std::uint32_t k = 0; k < n_words; ++k) perm[k] = k;
    if (l > 0)
      for (std::size_t i = n_words; i > 1; --i)
        std::swap(perm[i - 1], perm[bounded(rng, i)]);
  }

  std::vector<std::vector<std::optional<std::vector<std::string>>>> tokens(n_languages);
  for (auto& t : tokens) t.resize(n_sentences);
  for (std::size_t s = 0; s < n_sentences; ++s) {
    std::size_t len = min_len + bounded(rng, max_len - min_len + 1);
    std::vector<std::uint32_t> concepts(len);
    for (auto& c : concepts) c = static_cast<std::uint32_t>(bounded(rng, n_words));
    for (std::size_t l = 0; l < n_languages; ++l) {
      std::vector<std::string> sent;
      for (std::uint32_t c : concepts) {
        if (deletion_prob > 0.0 && unit_uniform(rng) < deletion_prob) continue;
        sent.push_back(out.surface(l, c));
      }
      tokens[l][s] = std::move(sent);
    }
  }
  out.corpus = crossling::ParallelCorpus::from_tokens(out.languages, std::move(tokens));
  return out;
}

/// Small random bilingual corpus for property tests: arbitrary token draws,
/// occasional absent sentences.
inline crossling::ParallelCorpus make_random_corpus(std::uint64_t seed,
                                                    std::size_t max_vocab = 12,
                                                    std::size_t max_sentences = 20) {
  std::mt19937_64 rng(seed);
  std::size_t n_sent = 2 + bounded(rng, max_sentences - 1);
  std::size_t src_vocab = 2 + bounded(rng, max_vocab - 1);
  std::size_t tgt_vocab = 2 + bounded(rng, max_vocab - 1);
  std::vector<std::vector<std::optional<std::vector<std::string>>>> tokens(2);
  tokens[0].resize(n_sent);
  tokens[1].resize(n_sent);
  for (std::size_t s = 0; s < n_sent; ++s) {
    if (bounded(rng, 10) == 0) continue;  // sentence absent in both
    for (int side = 0; side < 2; ++side) {
      if (bounded(rng, 12) == 0) continue;  // absent on one side
      std::size_t vocab = side == 0 ? src_vocab : tgt_vocab;
      std::size_t len = 1 + bounded(rng, 8);
      std::vector<std::string> sent(len);
      for (auto& t : sent) t = word_name(bounded(rng, vocab));
      tokens[side][s] = std::move(sent);
    }
  }
  // Guarantee at least one nonempty sentence on each side.
  tokens[0][0] = std::vector<std::string>{word_name(0), word_name(1)};
  tokens[1][0] = std::vector<std::string>{word_name(0), word_name(1)};
  return crossling::ParallelCorpus::from_tokens({"sr", "tg"}, std::move(tokens));
}

/// Brute-force S(ws, wt): rescans the corpus counting sentence IDs where
/// both surfaces occur.
inline std::size_t brute_force_pair_count(const crossling::ParallelCorpus& corpus,
                                          const std::string& src_lang,
                                          const std::string& src_surface,
                                          const std::string& tgt_lang,
                                          const std::string& tgt_surface) {
  auto si = *corpus.language_index(src_lang);
  auto ti = *corpus.language_index(tgt_lang);
  std::size_t count = 0;
  for (std::size_t s = 0; s < corpus.num_sentences(); ++s) {
    if (!corpus.present(si, s) || !corpus.present(ti, s)) continue;
    bool has_src = false, has_tgt = false;
    for (auto tid : corpus.tokens(si, s)) has_src |= corpus.surface(si, tid) == src_surface;
    for (auto tid : corpus.tokens(ti, s)) has_tgt |= corpus.surface(ti, tid) == tgt_surface;
    count += has_src && has_tgt;
  }
  return count;
}

/// Brute-force count of distinct sentence IDs containing a surface.
inline std::size_t brute_force_sentence_count(const crossling::ParallelCorpus& corpus,
                                              const std::string& lang,
                                              const std::string& surface) {
  auto li = *corpus.language_index(lang);
  std::size_t count = 0;
  for (std::size_t s = 0; s < corpus.num_sentences(); ++s) {
    if (!corpus.present(li, s)) continue;
    bool has = false;
    for (auto tid : corpus.tokens(li, s)) has |= corpus.surface(li, tid) == surface;
    count += has;
  }
  return count;
}

}  // namespace testsupport

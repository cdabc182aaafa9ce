#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace crossling {

/// A word identified by its language tag. Identical surfaces in different
/// languages are distinct words.
struct LangWord {
  std::string lang;
  std::string surface;

  bool operator==(const LangWord&) const = default;
  bool operator<(const LangWord& o) const {
    return lang != o.lang ? lang < o.lang : surface < o.surface;
  }
  std::string str() const { return lang + ":" + surface; }
};

/// Parses "lang:surface". Throws std::invalid_argument if no colon present.
LangWord parse_lang_word(std::string_view s);

/// Lowercases the line, splits maximal runs of Unicode punctuation (general
/// category P*) from adjacent non-punctuation, then splits on whitespace.
/// Empty input yields an empty sequence.
std::vector<std::string> tokenize(std::string_view line);

/// Line-aligned multilingual corpus. Sentence IDs 0..S-1 are shared across
/// languages; a language may be absent for a given sentence ID (blank line
/// in the source file). Token surfaces are interned per language.
class ParallelCorpus {
 public:
  static constexpr std::uint32_t kNoToken = 0xffffffffu;

  ParallelCorpus() = default;

  /// Loads one UTF-8 file per language, one sentence per line. S is the
  /// maximum line count; missing or blank lines mark the language absent.
  /// Throws on unreadable files, fewer than 2 languages, or a corpus with
  /// no nonempty sentence.
  static ParallelCorpus from_files(const std::map<std::string, std::string>& files);

  /// Builds a corpus from pre-tokenized sentences; lines[lang][sent] ==
  /// nullopt marks the language absent for that sentence ID. Intended for
  /// tests and synthetic corpora.
  static ParallelCorpus from_tokens(
      std::vector<std::string> languages,
      std::vector<std::vector<std::optional<std::vector<std::string>>>> tokens);

  const std::vector<std::string>& languages() const { return languages_; }
  std::size_t num_languages() const { return languages_.size(); }
  std::size_t num_sentences() const { return num_sentences_; }

  /// Index of a language code, or nullopt.
  std::optional<std::size_t> language_index(std::string_view lang) const;

  bool present(std::size_t lang_idx, std::size_t sent) const {
    return sentences_[lang_idx][sent].present;
  }
  /// Token ids of the sentence (valid only when present). Ids index the
  /// per-language surface pool.
  const std::vector<std::uint32_t>& tokens(std::size_t lang_idx, std::size_t sent) const {
    return sentences_[lang_idx][sent].tokens;
  }
  const std::string& surface(std::size_t lang_idx, std::uint32_t token_id) const {
    return surfaces_[lang_idx][token_id];
  }
  std::size_t num_surfaces(std::size_t lang_idx) const {
    return surfaces_[lang_idx].size();
  }

 private:
  struct Sentence {
    bool present = false;
    std::vector<std::uint32_t> tokens;
  };

  std::uint32_t intern(std::size_t lang_idx, const std::string& surface);
  void validate() const;

  std::vector<std::string> languages_;
  std::size_t num_sentences_ = 0;
  std::vector<std::vector<Sentence>> sentences_;          // [lang][sent]
  std::vector<std::vector<std::string>> surfaces_;        // [lang] pool
  std::vector<std::unordered_map<std::string, std::uint32_t>> surface_ids_;
};

/// Dense-indexed language-tagged vocabulary with occurrence statistics.
/// Indices are assigned by sorting entries on (language, surface), so the
/// assignment is deterministic across runs.
class Vocabulary {
 public:
  static constexpr std::uint32_t npos = 0xffffffffu;

  Vocabulary() = default;

  /// Builds a vocabulary over a fixed word list with zero statistics; used
  /// when reloading artifacts that carry their own word lists.
  static Vocabulary from_words(std::vector<LangWord> words);

  std::size_t size() const { return words_.size(); }
  const LangWord& word(std::uint32_t index) const { return words_[index]; }
  /// Total token occurrences in the corpus.
  std::uint64_t occurrence_count(std::uint32_t index) const { return occurrences_[index]; }
  /// Number of distinct sentence IDs containing the word (= I(w,*)).
  std::uint32_t sentence_count(std::uint32_t index) const { return sentence_counts_[index]; }

  std::optional<std::uint32_t> find(const LangWord& w) const;
  std::optional<std::uint32_t> find(std::string_view lang, std::string_view surface) const;

  /// Per-language map corpus token id -> vocabulary index (npos when the
  /// token fell below min_count).
  std::vector<std::vector<std::uint32_t>> token_lookup(const ParallelCorpus& corpus) const;

  friend Vocabulary build_vocabulary(const ParallelCorpus&, std::uint64_t);

 private:
  std::vector<LangWord> words_;
  std::vector<std::uint64_t> occurrences_;
  std::vector<std::uint32_t> sentence_counts_;
  std::unordered_map<std::string, std::uint32_t> index_;  // key: "lang:surface"
};

/// Keeps every LangWord whose total occurrence count is >= min_count.
Vocabulary build_vocabulary(const ParallelCorpus& corpus, std::uint64_t min_count = 2);

}  // namespace crossling

#include "crossling/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace crossling {

namespace {

struct CodepointRange {
  char32_t lo, hi;
};
struct CaseMapping {
  char32_t from, to;
};

#include "unicode_tables.inc"

template <std::size_t N>
bool in_ranges(const CodepointRange (&ranges)[N], char32_t cp) {
  auto it = std::upper_bound(ranges, ranges + N, cp,
                             [](char32_t c, const CodepointRange& r) { return c < r.lo; });
  return it != ranges && (it - 1)->hi >= cp;
}

bool is_punctuation(char32_t cp) { return in_ranges(kPunctuationRanges, cp); }
bool is_whitespace(char32_t cp) { return in_ranges(kWhitespaceRanges, cp); }

char32_t to_lower(char32_t cp) {
  auto it = std::lower_bound(std::begin(kLowercaseMap), std::end(kLowercaseMap), cp,
                             [](const CaseMapping& m, char32_t c) { return m.from < c; });
  return (it != std::end(kLowercaseMap) && it->from == cp) ? it->to : cp;
}

// Decodes the next UTF-8 codepoint starting at s[i], advancing i. Each byte
// of an invalid sequence is passed through as its Latin-1 value.
char32_t next_codepoint(std::string_view s, std::size_t& i) {
  unsigned char b0 = s[i];
  std::size_t len = 0;
  char32_t cp = 0;
  if (b0 < 0x80) {
    ++i;
    return b0;
  } else if ((b0 & 0xe0) == 0xc0) {
    len = 2;
    cp = b0 & 0x1f;
  } else if ((b0 & 0xf0) == 0xe0) {
    len = 3;
    cp = b0 & 0x0f;
  } else if ((b0 & 0xf8) == 0xf0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++i;
    return b0;
  }
  if (i + len > s.size()) {
    ++i;
    return b0;
  }
  for (std::size_t k = 1; k < len; ++k) {
    unsigned char bk = s[i + k];
    if ((bk & 0xc0) != 0x80) {
      ++i;
      return b0;
    }
    cp = (cp << 6) | (bk & 0x3f);
  }
  i += len;
  return cp;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else {
    out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  }
}

}  // namespace

LangWord parse_lang_word(std::string_view s) {
  auto colon = s.find(':');
  if (colon == std::string_view::npos)
    throw std::invalid_argument("expected lang:surface, got '" + std::string(s) + "'");
  return LangWord{std::string(s.substr(0, colon)), std::string(s.substr(colon + 1))};
}

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> tokens;
  std::string current;
  bool current_is_punct = false;
  auto flush = [&] {
    if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  };
  std::size_t i = 0;
  while (i < line.size()) {
    char32_t cp = to_lower(next_codepoint(line, i));
    if (is_whitespace(cp)) {
      flush();
      continue;
    }
    bool punct = is_punctuation(cp);
    if (!current.empty() && punct != current_is_punct) flush();
    current_is_punct = punct;
    append_utf8(current, cp);
  }
  flush();
  return tokens;
}

ParallelCorpus ParallelCorpus::from_files(const std::map<std::string, std::string>& files) {
  if (files.size() < 2)
    throw std::invalid_argument("need at least 2 languages, got " +
                                std::to_string(files.size()));
  ParallelCorpus corpus;
  std::vector<std::vector<std::optional<std::string>>> raw_lines;
  for (const auto& [lang, path] : files) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open corpus file: " + path);
    corpus.languages_.push_back(lang);
    auto& lines = raw_lines.emplace_back();
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty())
        lines.emplace_back(std::nullopt);
      else
        lines.emplace_back(std::move(line));
    }
  }
  std::size_t num_sentences = 0;
  for (const auto& lines : raw_lines) num_sentences = std::max(num_sentences, lines.size());
  corpus.num_sentences_ = num_sentences;
  corpus.sentences_.resize(files.size());
  corpus.surfaces_.resize(files.size());
  corpus.surface_ids_.resize(files.size());
  for (std::size_t li = 0; li < raw_lines.size(); ++li) {
    auto& sents = corpus.sentences_[li];
    sents.resize(num_sentences);
    for (std::size_t si = 0; si < raw_lines[li].size(); ++si) {
      const auto& line = raw_lines[li][si];
      if (!line) continue;
      sents[si].present = true;
      for (const auto& tok : tokenize(*line))
        sents[si].tokens.push_back(corpus.intern(li, tok));
    }
  }
  corpus.validate();
  return corpus;
}

ParallelCorpus ParallelCorpus::from_tokens(
    std::vector<std::string> languages,
    std::vector<std::vector<std::optional<std::vector<std::string>>>> tokens) {
  if (languages.size() < 2)
    throw std::invalid_argument("need at least 2 languages, got " +
                                std::to_string(languages.size()));
  if (languages.size() != tokens.size())
    throw std::invalid_argument("languages/tokens size mismatch");
  ParallelCorpus corpus;
  corpus.languages_ = std::move(languages);
  std::size_t num_sentences = 0;
  for (const auto& lang_tokens : tokens)
    num_sentences = std::max(num_sentences, lang_tokens.size());
  corpus.num_sentences_ = num_sentences;
  corpus.sentences_.resize(tokens.size());
  corpus.surfaces_.resize(tokens.size());
  corpus.surface_ids_.resize(tokens.size());
  for (std::size_t li = 0; li < tokens.size(); ++li) {
    auto& sents = corpus.sentences_[li];
    sents.resize(num_sentences);
    for (std::size_t si = 0; si < tokens[li].size(); ++si) {
      if (!tokens[li][si]) continue;
      sents[si].present = true;
      for (const auto& tok : *tokens[li][si])
        sents[si].tokens.push_back(corpus.intern(li, tok));
    }
  }
  corpus.validate();
  return corpus;
}

std::uint32_t ParallelCorpus::intern(std::size_t lang_idx, const std::string& surface) {
  auto& ids = surface_ids_[lang_idx];
  auto it = ids.find(surface);
  if (it != ids.end()) return it->second;
  auto id = static_cast<std::uint32_t>(surfaces_[lang_idx].size());
  surfaces_[lang_idx].push_back(surface);
  ids.emplace(surface, id);
  return id;
}

void ParallelCorpus::validate() const {
  for (std::size_t li = 0; li < sentences_.size(); ++li)
    for (const auto& sent : sentences_[li])
      if (sent.present && !sent.tokens.empty()) return;
  throw std::invalid_argument("corpus has no nonempty sentences");
}

std::optional<std::size_t> ParallelCorpus::language_index(std::string_view lang) const {
  for (std::size_t i = 0; i < languages_.size(); ++i)
    if (languages_[i] == lang) return i;
  return std::nullopt;
}

Vocabulary Vocabulary::from_words(std::vector<LangWord> words) {
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  Vocabulary vocab;
  vocab.words_ = std::move(words);
  vocab.occurrences_.assign(vocab.words_.size(), 0);
  vocab.sentence_counts_.assign(vocab.words_.size(), 0);
  vocab.index_.reserve(vocab.words_.size());
  for (std::uint32_t i = 0; i < vocab.words_.size(); ++i)
    vocab.index_.emplace(vocab.words_[i].str(), i);
  return vocab;
}

std::optional<std::uint32_t> Vocabulary::find(const LangWord& w) const {
  return find(w.lang, w.surface);
}

std::optional<std::uint32_t> Vocabulary::find(std::string_view lang,
                                              std::string_view surface) const {
  std::string key;
  key.reserve(lang.size() + surface.size() + 1);
  key.append(lang);
  key.push_back(':');
  key.append(surface);
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::vector<std::uint32_t>> Vocabulary::token_lookup(
    const ParallelCorpus& corpus) const {
  std::vector<std::vector<std::uint32_t>> lookup(corpus.num_languages());
  for (std::size_t li = 0; li < corpus.num_languages(); ++li) {
    lookup[li].assign(corpus.num_surfaces(li), npos);
    for (std::uint32_t tid = 0; tid < corpus.num_surfaces(li); ++tid) {
      if (auto vi = find(corpus.languages()[li], corpus.surface(li, tid)))
        lookup[li][tid] = *vi;
    }
  }
  return lookup;
}

Vocabulary build_vocabulary(const ParallelCorpus& corpus, std::uint64_t min_count) {
  if (min_count == 0) throw std::invalid_argument("min_count must be positive");
  Vocabulary vocab;
  for (std::size_t li = 0; li < corpus.num_languages(); ++li) {
    std::vector<std::uint64_t> occ(corpus.num_surfaces(li), 0);
    std::vector<std::uint32_t> sent_count(corpus.num_surfaces(li), 0);
    std::vector<std::size_t> last_sentence(corpus.num_surfaces(li), SIZE_MAX);
    for (std::size_t si = 0; si < corpus.num_sentences(); ++si) {
      if (!corpus.present(li, si)) continue;
      for (std::uint32_t tid : corpus.tokens(li, si)) {
        ++occ[tid];
        if (last_sentence[tid] != si) {
          last_sentence[tid] = si;
          ++sent_count[tid];
        }
      }
    }
    for (std::uint32_t tid = 0; tid < corpus.num_surfaces(li); ++tid) {
      if (occ[tid] >= min_count) {
        vocab.words_.push_back(LangWord{corpus.languages()[li], corpus.surface(li, tid)});
        vocab.occurrences_.push_back(occ[tid]);
        vocab.sentence_counts_.push_back(sent_count[tid]);
      }
    }
  }
  // Sort entries by (language, surface) and rebuild the parallel arrays.
  std::vector<std::uint32_t> order(vocab.words_.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return vocab.words_[a] < vocab.words_[b];
  });
  std::vector<LangWord> words;
  std::vector<std::uint64_t> occurrences;
  std::vector<std::uint32_t> sentence_counts;
  words.reserve(order.size());
  occurrences.reserve(order.size());
  sentence_counts.reserve(order.size());
  for (std::uint32_t i : order) {
    words.push_back(std::move(vocab.words_[i]));
    occurrences.push_back(vocab.occurrences_[i]);
    sentence_counts.push_back(vocab.sentence_counts_[i]);
  }
  vocab.words_ = std::move(words);
  vocab.occurrences_ = std::move(occurrences);
  vocab.sentence_counts_ = std::move(sentence_counts);
  vocab.index_.reserve(vocab.words_.size());
  for (std::uint32_t i = 0; i < vocab.words_.size(); ++i)
    vocab.index_.emplace(vocab.words_[i].str(), i);
  return vocab;
}

}  // namespace crossling

#include "crossling/io.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace crossling {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  return in;
}

}  // namespace

void write_embedding(const std::string& path, const EmbeddingMatrix& emb) {
  auto out = open_out(path);
  out << emb.num_words() << ' ' << emb.dim << '\n';
  for (std::size_t i = 0; i < emb.num_words(); ++i) {
    out << emb.words[i].str();
    for (double v : emb.word_vector(i)) out << ' ' << format_double(v);
    out << '\n';
  }
  if (!out) throw std::runtime_error("failed writing embedding: " + path);
}

EmbeddingMatrix read_embedding(const std::string& path) {
  auto in = open_in(path);
  std::size_t n = 0;
  std::uint32_t dim = 0;
  if (!(in >> n >> dim) || dim == 0)
    throw std::runtime_error("bad embedding header: " + path);
  EmbeddingMatrix emb;
  emb.dim = dim;
  emb.words.reserve(n);
  emb.word_vecs.resize(n * static_cast<std::size_t>(dim));
  std::string token;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(in >> token)) throw std::runtime_error("truncated embedding: " + path);
    emb.words.push_back(parse_lang_word(token));
    for (std::uint32_t k = 0; k < dim; ++k)
      if (!(in >> emb.word_vecs[i * dim + k]))
        throw std::runtime_error("truncated embedding: " + path);
  }
  emb.rebuild_index();
  return emb;
}

void write_matrix(const std::string& path, const SparseMatrix& m) {
  auto out = open_out(path);
  out << m.n_rows << ' ' << m.n_cols << ' ' << m.nnz() << '\n';
  for (std::size_t r = 0; r < m.n_rows; ++r)
    for (std::size_t k = m.row_ptr[r]; k < m.row_ptr[r + 1]; ++k)
      out << r << ' ' << m.col_idx[k] << ' ' << format_double(m.values[k]) << '\n';
  if (!out) throw std::runtime_error("failed writing matrix: " + path);
}

void write_translation_table(const std::string& path, const TranslationTable& table,
                             const Vocabulary& vocab) {
  std::vector<std::pair<std::string, std::pair<std::string, double>>> lines;
  for (std::uint32_t ws = 0; ws < table.rows.size(); ++ws)
    for (const auto& [wt, p] : table.rows[ws])
      lines.emplace_back(vocab.word(ws).str(), std::make_pair(vocab.word(wt).str(), p));
  for (const auto& [wt, p] : table.null_row)
    lines.emplace_back("<NULL>", std::make_pair(vocab.word(wt).str(), p));
  std::sort(lines.begin(), lines.end());
  auto out = open_out(path);
  out << lines.size() << '\n';
  for (const auto& [src, entry] : lines)
    out << src << ' ' << entry.first << ' ' << format_double(entry.second) << '\n';
  if (!out) throw std::runtime_error("failed writing translation table: " + path);
}

LoadedTranslationTable read_translation_table(const std::string& path) {
  auto in = open_in(path);
  std::size_t n = 0;
  if (!(in >> n) || n == 0)
    throw std::runtime_error("bad translation table header: " + path);
  struct Entry {
    std::string src, tgt;
    double prob;
  };
  std::vector<Entry> entries(n);
  std::vector<LangWord> words;
  std::string src_lang, tgt_lang;
  for (auto& e : entries) {
    if (!(in >> e.src >> e.tgt >> e.prob))
      throw std::runtime_error("truncated translation table: " + path);
    if (e.src != "<NULL>") {
      auto w = parse_lang_word(e.src);
      src_lang = w.lang;
      words.push_back(std::move(w));
    }
    auto w = parse_lang_word(e.tgt);
    tgt_lang = w.lang;
    words.push_back(std::move(w));
  }
  if (src_lang.empty())
    throw std::runtime_error("translation table has no source rows: " + path);
  LoadedTranslationTable loaded;
  loaded.vocab = Vocabulary::from_words(std::move(words));
  loaded.table.src_lang = src_lang;
  loaded.table.tgt_lang = tgt_lang;
  loaded.table.rows.assign(loaded.vocab.size(), {});
  for (const auto& e : entries) {
    std::uint32_t wt = *loaded.vocab.find(parse_lang_word(e.tgt));
    if (e.src == "<NULL>") {
      loaded.table.has_null = true;
      loaded.table.null_row.emplace_back(wt, e.prob);
    } else {
      loaded.table.rows[*loaded.vocab.find(parse_lang_word(e.src))].emplace_back(wt, e.prob);
    }
  }
  for (auto& row : loaded.table.rows) std::sort(row.begin(), row.end());
  std::sort(loaded.table.null_row.begin(), loaded.table.null_row.end());
  return loaded;
}

void write_dice_artifact(const std::string& path, const SparseMatrix& indicator,
                         const Vocabulary& vocab, const std::string& src_lang,
                         const std::string& tgt_lang) {
  if (indicator.row_words.size() != indicator.n_rows)
    throw std::invalid_argument("indicator matrix lacks word provenance");
  auto out = open_out(path);
  out << "dice " << src_lang << ' ' << tgt_lang << ' ' << indicator.n_rows << ' '
      << indicator.n_cols << ' ' << indicator.nnz() << '\n';
  for (std::uint32_t vi : indicator.row_words) out << vocab.word(vi).str() << '\n';
  for (std::size_t r = 0; r < indicator.n_rows; ++r)
    for (std::size_t k = indicator.row_ptr[r]; k < indicator.row_ptr[r + 1]; ++k)
      out << r << ' ' << indicator.col_idx[k] << '\n';
  if (!out) throw std::runtime_error("failed writing dice artifact: " + path);
}

DiceArtifact read_dice_artifact(const std::string& path) {
  auto in = open_in(path);
  std::string magic;
  DiceArtifact art;
  std::size_t n_rows = 0, n_cols = 0, nnz = 0;
  if (!(in >> magic >> art.src_lang >> art.tgt_lang >> n_rows >> n_cols >> nnz) ||
      magic != "dice")
    throw std::runtime_error("bad dice artifact header: " + path);
  std::vector<LangWord> row_word_list(n_rows);
  std::string token;
  for (auto& w : row_word_list) {
    if (!(in >> token)) throw std::runtime_error("truncated dice artifact: " + path);
    w = parse_lang_word(token);
  }
  art.vocab = Vocabulary::from_words(row_word_list);
  SparseMatrix& m = art.indicator;
  m.n_rows = n_rows;
  m.n_cols = n_cols;
  m.row_words.reserve(n_rows);
  for (const auto& w : row_word_list) m.row_words.push_back(*art.vocab.find(w));
  m.row_ptr.assign(n_rows + 1, 0);
  std::vector<std::pair<std::size_t, std::uint32_t>> cells(nnz);
  for (auto& [r, c] : cells)
    if (!(in >> r >> c)) throw std::runtime_error("truncated dice artifact: " + path);
  std::sort(cells.begin(), cells.end());
  for (const auto& [r, c] : cells) {
    if (r >= n_rows || c >= n_cols)
      throw std::runtime_error("dice artifact cell out of range: " + path);
    ++m.row_ptr[r + 1];
  }
  for (std::size_t r = 0; r < n_rows; ++r) m.row_ptr[r + 1] += m.row_ptr[r];
  m.col_idx.reserve(nnz);
  m.values.assign(nnz, 1.0);
  for (const auto& [r, c] : cells) m.col_idx.push_back(c);
  m.compute_marginals();
  return art;
}

std::uint64_t fnv1a64_file(const std::string& path) {
  auto in = open_in(path);
  std::uint64_t hash = 1469598103934665603ull;
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 1099511628211ull;
    }
    if (!in) break;
  }
  return hash;
}

std::uint64_t corpus_checksum(const std::map<std::string, std::string>& files) {
  std::uint64_t hash = 1469598103934665603ull;
  for (const auto& [lang, path] : files) {
    std::uint64_t file_hash = fnv1a64_file(path);
    for (char c : lang) {
      hash ^= static_cast<unsigned char>(c);
      hash *= 1099511628211ull;
    }
    hash ^= file_hash;
    hash *= 1099511628211ull;
  }
  return hash;
}

}  // namespace crossling

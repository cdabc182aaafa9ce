#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "crossling/dice.hpp"
#include "crossling/embedding.hpp"
#include "crossling/matrix.hpp"
#include "crossling/model1.hpp"

namespace crossling {

/// Embedding text format: header `|V| d`, then one `lang:surface v1 ... vd`
/// line per word with full double precision. Feature vectors are not
/// serialized.
void write_embedding(const std::string& path, const EmbeddingMatrix& emb);
EmbeddingMatrix read_embedding(const std::string& path);

/// Matrix dump: header `n_rows n_cols nnz`, then `row col value` per cell.
void write_matrix(const std::string& path, const SparseMatrix& m);

/// Translation table dump: header `n_entries`, then sorted
/// `src_word tgt_word prob` lines. The NULL source word is written as
/// `<NULL>`; the direction is recovered from the language tags on load.
void write_translation_table(const std::string& path, const TranslationTable& table,
                             const Vocabulary& vocab);

/// A reloaded table addresses words through its own small vocabulary-like
/// index (built from the dumped words), since the training vocabulary is
/// not part of the artifact.
struct LoadedTranslationTable {
  TranslationTable table;
  Vocabulary vocab;  // synthesized from the dump; counts are not meaningful
};
LoadedTranslationTable read_translation_table(const std::string& path);

/// Dice artifact: header `dice src_lang tgt_lang n_rows n_cols nnz`, the
/// row words, then `row col` indicator cells.
struct DiceArtifact {
  std::string src_lang, tgt_lang;
  SparseMatrix indicator;
  Vocabulary vocab;  // synthesized from the dumped words
};
void write_dice_artifact(const std::string& path, const SparseMatrix& indicator,
                         const Vocabulary& vocab, const std::string& src_lang,
                         const std::string& tgt_lang);
DiceArtifact read_dice_artifact(const std::string& path);

/// FNV-1a 64-bit over the file bytes; used for corpus checksums.
std::uint64_t fnv1a64_file(const std::string& path);

/// Checksum of a corpus directory: FNV-1a over each `<lang>.txt` in sorted
/// order, chained.
std::uint64_t corpus_checksum(const std::map<std::string, std::string>& files);

}  // namespace crossling

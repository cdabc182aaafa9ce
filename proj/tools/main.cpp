// Command-line driver: train artifacts from sentence-aligned corpora and
// evaluate them on word alignment (1-AER) and dictionary induction (P@1).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "crossling/corpus.hpp"
#include "crossling/dice.hpp"
#include "crossling/eval.hpp"
#include "crossling/io.hpp"
#include "crossling/matrix.hpp"
#include "crossling/model1.hpp"
#include "crossling/report.hpp"
#include "crossling/sgns.hpp"
#include "crossling/svd.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace crossling;

namespace {

// ---------------------------------------------------------------- corpus

// Every <lang>.txt in the directory; docs.txt is reserved for document keys.
std::map<std::string, std::string> discover_corpus(const std::string& dir) {
  std::map<std::string, std::string> files;
  if (!fs::is_directory(dir)) throw std::runtime_error("not a corpus directory: " + dir);
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
    auto lang = entry.path().stem().string();
    if (lang == "docs") continue;
    files[lang] = entry.path().string();
  }
  if (files.empty()) throw std::runtime_error("no <lang>.txt files in " + dir);
  return files;
}

std::vector<std::string> parse_langs(const std::string& flag,
                                     const std::map<std::string, std::string>& available) {
  std::vector<std::string> langs;
  if (flag == "all") {
    for (const auto& [lang, path] : available) langs.push_back(lang);
    return langs;
  }
  std::stringstream ss(flag);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (!available.count(item))
      throw std::runtime_error("language '" + item + "' has no corpus file");
    langs.push_back(item);
  }
  if (langs.empty()) throw std::runtime_error("no languages selected");
  return langs;
}

std::vector<std::string> load_doc_keys(const std::string& dir, std::size_t n_sentences) {
  auto path = fs::path(dir) / "docs.txt";
  std::ifstream in(path);
  if (!in) throw std::runtime_error("document granularity needs " + path.string());
  std::vector<std::string> keys;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    keys.push_back(line);
  }
  if (keys.size() != n_sentences)
    throw std::runtime_error(path.string() + " has " + std::to_string(keys.size()) +
                             " keys for " + std::to_string(n_sentences) + " sentences");
  return keys;
}

std::string checksum_hex(std::uint64_t checksum) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(checksum));
  return buf;
}

// ----------------------------------------------------------------- train

struct TrainOptions {
  std::string corpus_dir;
  std::string method;  // dice | model1 | sgns | svd-idf | svd-ppmi
  std::string langs_flag = "all";
  std::string mode = "bilingual";
  std::string granularity = "sentence";
  std::string out_path;
  std::uint64_t min_count = 2;
  std::uint32_t dim = 500;
  std::uint32_t epochs = 100;
  std::uint32_t negatives = 5;
  double alpha = 0.75;
  double learning_rate = 0.025;
  unsigned iterations = 5;
  bool use_null = true;
  bool pmi_counts = false;  // raw-count PMI instead of indicator PMI
  std::string dump_matrix;  // optional dump of the training matrix
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

const std::set<std::string> kEmbeddingMethods = {"sgns", "svd-idf", "svd-ppmi"};
const std::set<std::string> kAllMethods = {"dice", "model1", "sgns", "svd-idf", "svd-ppmi"};

void validate_method_flags(const TrainOptions& opt, const std::vector<std::string>& langs) {
  if (!kAllMethods.count(opt.method))
    throw std::runtime_error("unknown method: " + opt.method);
  if (opt.mode != "bilingual" && opt.mode != "multilingual")
    throw std::runtime_error("mode must be bilingual or multilingual");
  if (!kEmbeddingMethods.count(opt.method) && opt.mode == "multilingual")
    throw std::runtime_error("--mode multilingual is incompatible with " + opt.method +
                             " (inherently bilingual)");
  if (!kEmbeddingMethods.count(opt.method) && langs.size() != 2)
    throw std::runtime_error(opt.method + " needs exactly 2 languages");
  if (opt.mode == "bilingual" && langs.size() != 2)
    throw std::runtime_error("bilingual mode needs exactly 2 languages");
  if (opt.method == "model1" && opt.granularity != "sentence")
    throw std::runtime_error(
        "model1 aligns sentences; --granularity document is not applicable");
  if (opt.granularity != "sentence" && opt.granularity != "document")
    throw std::runtime_error("granularity must be sentence or document");
}

json hyperparameters_json(const TrainOptions& opt) {
  json h;
  if (kEmbeddingMethods.count(opt.method)) {
    h["dim"] = opt.dim;
    if (opt.method == "sgns") {
      h["epochs"] = opt.epochs;
      h["negatives"] = opt.negatives;
      h["alpha"] = opt.alpha;
      h["learning_rate"] = opt.learning_rate;
    }
    if (opt.method == "svd-ppmi") h["pmi_counts"] = opt.pmi_counts;
  } else if (opt.method == "model1") {
    h["iterations"] = opt.iterations;
    h["use_null"] = opt.use_null;
  }
  return h;
}

void run_train(const TrainOptions& opt) {
  auto files = discover_corpus(opt.corpus_dir);
  auto langs = parse_langs(opt.langs_flag, files);
  validate_method_flags(opt, langs);

  std::map<std::string, std::string> selected_files;
  for (const auto& lang : langs) selected_files[lang] = files.at(lang);
  auto corpus = ParallelCorpus::from_files(selected_files);
  auto vocab = build_vocabulary(corpus, opt.min_count);
  if (vocab.size() == 0) throw std::runtime_error("vocabulary is empty; lower --min-count");

  Granularity granularity =
      opt.granularity == "document" ? Granularity::document : Granularity::sentence;
  std::vector<std::string> doc_keys;
  if (granularity == Granularity::document)
    doc_keys = load_doc_keys(opt.corpus_dir, corpus.num_sentences());

  if (opt.method == "dice") {
    auto m = build_indicator_matrix(corpus, vocab, langs, granularity, doc_keys);
    if (!opt.dump_matrix.empty()) write_matrix(opt.dump_matrix, m);
    write_dice_artifact(opt.out_path, m, vocab, langs[0], langs[1]);
  } else if (opt.method == "model1") {
    if (!opt.dump_matrix.empty())
      throw std::runtime_error("--dump-matrix applies to matrix-based methods only");
    auto table = train_model1(corpus, vocab, langs[0], langs[1], opt.iterations,
                              opt.use_null, opt.threads);
    write_translation_table(opt.out_path, table, vocab);
  } else if (opt.method == "sgns") {
    auto m = build_indicator_matrix(corpus, vocab, langs, granularity, doc_keys);
    if (!opt.dump_matrix.empty()) write_matrix(opt.dump_matrix, m);
    SgnsConfig config;
    config.dim = opt.dim;
    config.epochs = opt.epochs;
    config.negatives = opt.negatives;
    config.alpha = opt.alpha;
    config.learning_rate = opt.learning_rate;
    config.seed = opt.seed;
    config.threads = opt.threads;
    auto mode =
        opt.mode == "multilingual" ? TrainingMode::multilingual : TrainingMode::bilingual;
    write_embedding(opt.out_path, train_sid_sgns(m, vocab, config, mode));
  } else {
    auto semantics = opt.method == "svd-ppmi" && opt.pmi_counts ? CellSemantics::count
                                                                : CellSemantics::indicator;
    auto m = build_indicator_matrix(corpus, vocab, langs, granularity, doc_keys, semantics);
    auto transformed =
        opt.method == "svd-idf" ? transform_idf(m) : transform_pmi(m, /*positive=*/true);
    if (!opt.dump_matrix.empty()) write_matrix(opt.dump_matrix, transformed);
    write_embedding(opt.out_path,
                    train_inverted_index(transformed, vocab, opt.dim, opt.seed));
  }

  json manifest;
  manifest["method"] = opt.method;
  manifest["mode"] = kEmbeddingMethods.count(opt.method) ? opt.mode : "bilingual";
  manifest["languages"] = langs;
  manifest["granularity"] = opt.granularity;
  manifest["min_count"] = opt.min_count;
  manifest["seed"] = opt.seed;
  manifest["corpus"] = opt.corpus_dir;
  manifest["corpus_checksum"] = checksum_hex(corpus_checksum(selected_files));
  manifest["hyperparameters"] = hyperparameters_json(opt);
  std::ofstream mf(opt.out_path + ".manifest.json");
  mf << manifest.dump(2) << '\n';
  if (!mf) throw std::runtime_error("cannot write manifest for " + opt.out_path);
  std::cerr << "wrote " << opt.out_path << " (" << opt.method << ", " << langs.size()
            << " languages)\n";
}

// ------------------------------------------------------------ model load

struct LoadedModel {
  std::string method = "embedding";  // from manifest, or inferred
  std::string label;                 // method (+ "-multi")
  json manifest;

  std::optional<EmbeddingMatrix> embedding;
  std::optional<LoadedTranslationTable> table;
  std::optional<DiceArtifact> dice;
  std::unique_ptr<CooccurrenceStats> stats;  // built per eval direction

  DiceDenominator denominator = DiceDenominator::product;

  std::unique_ptr<SimilarityFunction> make_scorer(const std::string& src,
                                                  const std::string& tgt);
  std::vector<std::string> target_vocab(const std::string& tgt) const;
  std::vector<std::string> languages() const;
};

std::string sniff_artifact_type(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model artifact: " + path);
  std::string header;
  std::getline(in, header);
  std::istringstream ss(header);
  std::vector<std::string> tokens;
  std::string tok;
  while (ss >> tok) tokens.push_back(tok);
  if (!tokens.empty() && tokens[0] == "dice") return "dice";
  // Embedding headers are `|V| d`, table headers a single `n_entries`.
  if (tokens.size() == 2) return "embedding";
  if (tokens.size() == 1) return "model1";
  throw std::runtime_error("unrecognized artifact format: " + path);
}

LoadedModel load_model(const std::string& path, DiceDenominator denom) {
  LoadedModel model;
  model.denominator = denom;
  auto manifest_path = path + ".manifest.json";
  if (fs::exists(manifest_path)) {
    std::ifstream mf(manifest_path);
    mf >> model.manifest;
    model.method = model.manifest.value("method", "embedding");
  } else {
    model.method = sniff_artifact_type(path);
  }
  model.label = model.method;
  if (model.manifest.value("mode", "bilingual") == "multilingual") model.label += "-multi";

  if (model.method == "dice") {
    model.dice = read_dice_artifact(path);
  } else if (model.method == "model1") {
    model.table = read_translation_table(path);
  } else {
    model.embedding = read_embedding(path);
  }
  return model;
}

std::vector<std::string> LoadedModel::languages() const {
  std::set<std::string> langs;
  if (embedding)
    for (const auto& w : embedding->words) langs.insert(w.lang);
  if (table) {
    langs.insert(table->table.src_lang);
    langs.insert(table->table.tgt_lang);
  }
  if (dice) {
    langs.insert(dice->src_lang);
    langs.insert(dice->tgt_lang);
  }
  return {langs.begin(), langs.end()};
}

std::unique_ptr<SimilarityFunction> LoadedModel::make_scorer(const std::string& src,
                                                             const std::string& tgt) {
  if (src == tgt) throw std::runtime_error("source and target language must differ");
  if (embedding) {
    bool has_src = false, has_tgt = false;
    for (const auto& w : embedding->words) {
      has_src |= w.lang == src;
      has_tgt |= w.lang == tgt;
    }
    if (!has_src || !has_tgt)
      throw std::runtime_error("embedding does not cover direction " + src + " -> " + tgt);
    return std::make_unique<CosineScorer>(*embedding, src, tgt);
  }
  if (table) {
    if (table->table.src_lang != src || table->table.tgt_lang != tgt)
      throw std::runtime_error("translation table direction is " + table->table.src_lang +
                               " -> " + table->table.tgt_lang + ", not " + src + " -> " +
                               tgt);
    return std::make_unique<Model1Scorer>(table->table, table->vocab);
  }
  if (dice) {
    bool covered = (dice->src_lang == src && dice->tgt_lang == tgt) ||
                   (dice->src_lang == tgt && dice->tgt_lang == src);
    if (!covered)
      throw std::runtime_error("dice artifact covers " + dice->src_lang + "/" +
                               dice->tgt_lang + ", not " + src + "/" + tgt);
    stats = std::make_unique<CooccurrenceStats>(dice->indicator, dice->vocab, src, tgt);
    return std::make_unique<DiceScorer>(*stats, dice->vocab, denominator);
  }
  throw std::runtime_error("model artifact holds no usable data");
}

std::vector<std::string> LoadedModel::target_vocab(const std::string& tgt) const {
  std::vector<std::string> vocab;
  if (embedding) {
    for (const auto& w : embedding->words)
      if (w.lang == tgt) vocab.push_back(w.surface);
  } else if (table) {
    for (std::uint32_t i = 0; i < table->vocab.size(); ++i)
      if (table->vocab.word(i).lang == tgt) vocab.push_back(table->vocab.word(i).surface);
  } else if (dice) {
    for (std::uint32_t i = 0; i < dice->vocab.size(); ++i)
      if (dice->vocab.word(i).lang == tgt) vocab.push_back(dice->vocab.word(i).surface);
  }
  if (vocab.empty())
    throw std::runtime_error("artifact has no vocabulary for language " + tgt);
  return vocab;
}

// ------------------------------------------------------------------ eval

struct MetricRow {
  std::string benchmark, src, tgt, method, metric;
  double value;
};

void emit_rows(const std::vector<MetricRow>& rows, const std::string& results_path) {
  std::ostringstream out;
  for (const auto& r : rows) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", r.value);
    out << r.benchmark << '\t' << r.src << '\t' << r.tgt << '\t' << r.method << '\t'
        << r.metric << '\t' << buf << '\n';
  }
  std::cout << out.str();
  if (!results_path.empty()) {
    std::ofstream f(results_path, std::ios::app);
    if (!f) throw std::runtime_error("cannot append to " + results_path);
    f << out.str();
  }
}

std::vector<std::vector<std::string>> tokenize_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open text file: " + path);
  std::vector<std::vector<std::string>> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(tokenize(line));
  }
  return lines;
}

struct AlignRun {
  std::map<std::uint32_t, AlignmentLinks> predicted;  // 1-based sentence IDs
  std::vector<AlignmentLinks> per_line;
};

AlignRun run_alignment(const SimilarityFunction& sim, const std::string& src_text,
                       const std::string& tgt_text) {
  auto src_lines = tokenize_lines(src_text);
  auto tgt_lines = tokenize_lines(tgt_text);
  if (src_lines.size() != tgt_lines.size())
    throw std::runtime_error("source and target text differ in line count");
  AlignRun run;
  for (std::size_t i = 0; i < src_lines.size(); ++i) {
    AlignmentLinks links;
    if (!src_lines[i].empty() && !tgt_lines[i].empty())
      links = greedy_align(src_lines[i], tgt_lines[i], sim);
    run.predicted[static_cast<std::uint32_t>(i + 1)] = links;
    run.per_line.push_back(std::move(links));
  }
  return run;
}

void validate_gold_positions(const GoldAlignment& gold,
                             const std::vector<std::vector<std::string>>& src_lines,
                             const std::vector<std::vector<std::string>>& tgt_lines) {
  for (const auto& [sent, links] : gold.sentences) {
    if (sent > src_lines.size())
      throw std::runtime_error("gold sentence " + std::to_string(sent) +
                               " beyond text length");
    for (const auto& [i, j] : links.possible) {
      if (i > src_lines[sent - 1].size() || j > tgt_lines[sent - 1].size())
        throw std::runtime_error("gold link (" + std::to_string(i) + "," +
                                 std::to_string(j) + ") outside sentence " +
                                 std::to_string(sent));
    }
  }
}

void write_links(std::ostream& out, const std::vector<AlignmentLinks>& per_line) {
  for (const auto& links : per_line) {
    bool first = true;
    for (const auto& [i, j] : links) {
      out << (first ? "" : " ") << i << '-' << j;
      first = false;
    }
    out << '\n';
  }
}

// -------------------------------------------------------------- commands

struct EvalOptions {
  std::string model_path;
  std::string benchmark;  // align | dict
  std::string src_lang, tgt_lang;
  std::string src_text, tgt_text, gold_path;
  std::string dictionary_path;
  std::string results_path;
  std::string corpus_dir;  // optional checksum verification
  std::string alignments_out;
  bool any_of = false;
  bool dice_sum = false;
};

void infer_direction(const LoadedModel& model, std::string& src, std::string& tgt) {
  if (!src.empty() && !tgt.empty()) return;
  if (model.table) {
    if (src.empty()) src = model.table->table.src_lang;
    if (tgt.empty()) tgt = model.table->table.tgt_lang;
    return;
  }
  auto langs = model.manifest.contains("languages")
                   ? model.manifest["languages"].get<std::vector<std::string>>()
                   : model.languages();
  if (langs.size() == 2) {
    if (src.empty()) src = langs[0];
    if (tgt.empty()) tgt = langs[1];
    return;
  }
  throw std::runtime_error("--src-lang/--tgt-lang required for this artifact");
}

void verify_checksum(const LoadedModel& model, const std::string& corpus_dir) {
  if (corpus_dir.empty() || !model.manifest.contains("corpus_checksum")) return;
  auto files = discover_corpus(corpus_dir);
  std::map<std::string, std::string> selected;
  for (const auto& lang : model.manifest["languages"].get<std::vector<std::string>>()) {
    auto it = files.find(lang);
    if (it == files.end()) return;
    selected[lang] = it->second;
  }
  auto expected = model.manifest["corpus_checksum"].get<std::string>();
  if (checksum_hex(corpus_checksum(selected)) != expected)
    std::cerr << "warning: corpus checksum mismatch; " << corpus_dir
              << " differs from the training corpus\n";
}

std::vector<MetricRow> eval_model(LoadedModel& model, const EvalOptions& opt) {
  std::string src = opt.src_lang, tgt = opt.tgt_lang;
  infer_direction(model, src, tgt);
  verify_checksum(model, opt.corpus_dir);
  auto scorer = model.make_scorer(src, tgt);

  if (opt.benchmark == "align") {
    if (opt.gold_path.empty() || opt.src_text.empty() || opt.tgt_text.empty())
      throw std::runtime_error("align benchmark needs --gold, --src-text, --tgt-text");
    auto run = run_alignment(*scorer, opt.src_text, opt.tgt_text);
    auto gold = load_gold_alignment(opt.gold_path);
    validate_gold_positions(gold, tokenize_lines(opt.src_text),
                            tokenize_lines(opt.tgt_text));
    auto res = compute_aer(run.predicted, gold);
    if (!opt.alignments_out.empty()) {
      std::ofstream out(opt.alignments_out);
      write_links(out, run.per_line);
    }
    return {{"align", src, tgt, model.label, "1-AER", res.one_minus_aer}};
  }
  if (opt.benchmark == "dict") {
    if (opt.dictionary_path.empty())
      throw std::runtime_error("dict benchmark needs --dictionary");
    auto dict = load_dictionary(opt.dictionary_path);
    if (dict.dropped_multi_token > 0)
      std::cerr << "note: dropped " << dict.dropped_multi_token
                << " multi-token dictionary entries\n";
    auto targets = model.target_vocab(tgt);
    auto res = induce_p_at_1(*scorer, dict, targets, opt.any_of);
    return {{"dict", src, tgt, model.label, "P@1", res.p_at_1},
            {"dict", src, tgt, model.label, "coverage", res.coverage}};
  }
  throw std::runtime_error("benchmark must be align or dict");
}

// ------------------------------------------------------------- benchmark

struct BenchmarkMethod {
  std::string label;
  TrainOptions train;  // corpus/min_count/seed filled from the config root
};

void apply_hyperparameters(TrainOptions& opt, const json& entry) {
  opt.dim = entry.value("dim", opt.dim);
  opt.epochs = entry.value("epochs", opt.epochs);
  opt.negatives = entry.value("negatives", opt.negatives);
  opt.alpha = entry.value("alpha", opt.alpha);
  opt.learning_rate = entry.value("learning_rate", opt.learning_rate);
  opt.iterations = entry.value("iterations", opt.iterations);
  opt.use_null = entry.value("use_null", opt.use_null);
  opt.pmi_counts = entry.value("pmi_counts", opt.pmi_counts);
  opt.min_count = entry.value("min_count", opt.min_count);
}

void run_benchmark(const std::string& config_path, const std::string& out_dir_flag,
                   const std::string& results_path, unsigned threads) {
  std::ifstream cf(config_path);
  if (!cf) throw std::runtime_error("cannot open config: " + config_path);
  json config;
  cf >> config;
  if (!config.contains("corpus") || !config.contains("methods") ||
      !config.contains("benchmarks"))
    throw std::runtime_error("config needs corpus, methods, and benchmarks");
  if (config["methods"].empty()) throw std::runtime_error("config lists no methods");
  if (config["benchmarks"].empty()) throw std::runtime_error("config lists no benchmarks");

  std::string corpus_dir = config["corpus"].get<std::string>();
  std::uint64_t min_count = config.value("min_count", 2);
  std::uint64_t seed = config.value("seed", 1);

  fs::path out_dir = out_dir_flag.empty()
                         ? fs::temp_directory_path() / "crossling_benchmark"
                         : fs::path(out_dir_flag);
  fs::create_directories(out_dir);

  std::vector<BenchmarkMethod> methods;
  for (const auto& entry : config["methods"]) {
    BenchmarkMethod method;
    method.train.corpus_dir = corpus_dir;
    method.train.min_count = min_count;
    method.train.seed = seed;
    method.train.threads = threads;
    method.train.langs_flag.clear();  // resolved per direction below
    if (entry.is_string()) {
      method.train.method = entry.get<std::string>();
    } else {
      method.train.method = entry.at("method").get<std::string>();
      method.train.mode = entry.value("mode", "bilingual");
      method.train.langs_flag = entry.value("langs", "");
      apply_hyperparameters(method.train, entry);
      method.label = entry.value("label", "");
    }
    if (!kAllMethods.count(method.train.method))
      throw std::runtime_error("unknown method in config: " + method.train.method);
    if (method.label.empty())
      method.label =
          method.train.method + (method.train.mode == "multilingual" ? "-multi" : "");
    methods.push_back(std::move(method));
  }

  std::vector<std::string> labels;
  for (const auto& m : methods) labels.push_back(m.label);
  BenchmarkTable table(labels);

  // Artifacts are cached per (label, language set) so directions sharing a
  // model train once.
  std::map<std::string, std::string> artifact_cache;

  for (const auto& bench : config["benchmarks"]) {
    std::string type = bench.at("type").get<std::string>();
    std::string src = bench.at("src").get<std::string>();
    std::string tgt = bench.at("tgt").get<std::string>();
    for (const auto& method : methods) {
      std::string cell = type + " " + src + "->" + tgt + " / " + method.label;
      try {
        TrainOptions train = method.train;
        if (train.method == "model1") {
          train.langs_flag = src + "," + tgt;  // direction-specific table
        } else if (train.langs_flag.empty()) {
          if (train.mode == "multilingual")
            train.langs_flag = "all";
          else
            train.langs_flag = src < tgt ? src + "," + tgt : tgt + "," + src;
        }
        std::string cache_key = method.label + "|" + train.langs_flag;
        auto cached = artifact_cache.find(cache_key);
        if (cached == artifact_cache.end()) {
          std::string name = method.label + "_" + train.langs_flag;
          for (auto& c : name)
            if (c == ',' || c == '/') c = '-';
          train.out_path = (out_dir / (name + ".model")).string();
          run_train(train);
          cached = artifact_cache.emplace(cache_key, train.out_path).first;
        }
        auto model = load_model(cached->second, DiceDenominator::product);
        model.label = method.label;
        EvalOptions eval_opt;
        eval_opt.benchmark = type;
        eval_opt.src_lang = src;
        eval_opt.tgt_lang = tgt;
        if (type == "align") {
          eval_opt.src_text = bench.at("src_text").get<std::string>();
          eval_opt.tgt_text = bench.at("tgt_text").get<std::string>();
          eval_opt.gold_path = bench.at("gold").get<std::string>();
        } else {
          eval_opt.dictionary_path = bench.at("dictionary").get<std::string>();
        }
        for (const auto& row : eval_model(model, eval_opt)) {
          if (row.metric == "coverage") continue;
          table.set_cell({row.benchmark, row.src, row.tgt, row.metric}, method.label,
                         row.value);
        }
      } catch (const std::exception& e) {
        throw std::runtime_error("benchmark cell [" + cell + "] failed: " + e.what());
      }
    }
  }

  std::cout << table.render();
  if (!results_path.empty()) {
    std::ofstream f(results_path, std::ios::app);
    if (!f) throw std::runtime_error("cannot append to " + results_path);
    f << table.tsv();
  }
}

// ------------------------------------------------------------- neighbors

void run_neighbors(const std::string& model_path, const std::string& word, std::size_t k,
                   const std::string& target_lang) {
  auto emb = read_embedding(model_path);
  auto query = parse_lang_word(word);
  auto row = emb.find(query.lang, query.surface);
  if (!row) throw std::runtime_error("word not in embedding: " + word);
  auto q = emb.word_vector(*row);
  std::vector<std::pair<double, std::size_t>> scored;
  for (std::size_t i = 0; i < emb.num_words(); ++i) {
    if (i == *row) continue;
    if (!target_lang.empty() && emb.words[i].lang != target_lang) continue;
    double n = 0.0;
    for (double v : emb.word_vector(i)) n += v * v;
    if (n == 0.0) continue;
    scored.emplace_back(cosine(q, emb.word_vector(i)), i);
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t i = 0; i < std::min(k, scored.size()); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", scored[i].first);
    std::cout << emb.words[scored[i].second].str() << '\t' << buf << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cross-lingual word representations from sentence-aligned corpora"};
  app.require_subcommand(1);

  TrainOptions train_opt;
  auto* train = app.add_subcommand("train", "Train a model artifact from a corpus");
  train->add_option("--corpus", train_opt.corpus_dir, "Corpus directory of <lang>.txt files")
      ->required();
  train->add_option("--method", train_opt.method, "dice | model1 | sgns | svd-idf | svd-ppmi")
      ->required();
  train->add_option("--langs", train_opt.langs_flag, "Comma-separated codes or 'all'");
  train->add_option("--mode", train_opt.mode, "bilingual | multilingual");
  train->add_option("--granularity", train_opt.granularity, "sentence | document");
  train->add_option("--out", train_opt.out_path, "Artifact output path")->required();
  train->add_option("--min-count", train_opt.min_count, "Vocabulary threshold (default 2)");
  train->add_option("--dim", train_opt.dim, "Embedding dimensions (default 500)");
  train->add_option("--epochs", train_opt.epochs, "SGNS epochs (default 100)");
  train->add_option("--negatives", train_opt.negatives, "Negative samples (default 5)");
  train->add_option("--alpha", train_opt.alpha, "Context smoothing exponent (default 0.75)");
  train->add_option("--lr", train_opt.learning_rate, "Initial learning rate (default 0.025)");
  train->add_option("--iterations", train_opt.iterations, "Model-1 EM passes (default 5)");
  train->add_flag("--no-null", "Disable the Model-1 NULL word");
  train->add_flag("--pmi-counts", train_opt.pmi_counts,
                  "Use raw counts instead of indicators for PMI");
  train->add_option("--dump-matrix", train_opt.dump_matrix,
                    "Also dump the training matrix as `row col value` text");
  train->add_option("--seed", train_opt.seed, "Random seed (default 1)");
  train->add_option("--threads", train_opt.threads, "Worker threads (default 1)");

  EvalOptions eval_opt;
  auto* eval = app.add_subcommand("eval", "Evaluate an artifact on a benchmark");
  eval->add_option("--model", eval_opt.model_path, "Trained artifact")->required();
  eval->add_option("--benchmark", eval_opt.benchmark, "align | dict")->required();
  eval->add_option("--src-lang", eval_opt.src_lang, "Source language code");
  eval->add_option("--tgt-lang", eval_opt.tgt_lang, "Target language code");
  eval->add_option("--src-text", eval_opt.src_text, "Source sentences (align)");
  eval->add_option("--tgt-text", eval_opt.tgt_text, "Target sentences (align)");
  eval->add_option("--gold", eval_opt.gold_path, "Gold alignment file (align)");
  eval->add_option("--dictionary", eval_opt.dictionary_path, "TSV dictionary (dict)");
  eval->add_option("--results", eval_opt.results_path, "Append metric rows to this TSV");
  eval->add_option("--corpus", eval_opt.corpus_dir, "Verify the manifest corpus checksum");
  eval->add_flag("--any-of", eval_opt.any_of, "Credit any listed translation (dict)");
  eval->add_flag("--dice-sum", eval_opt.dice_sum, "Classical sum-denominator Dice");

  EvalOptions align_opt;
  auto* align = app.add_subcommand("align", "Greedy-align parallel text");
  align->add_option("--model", align_opt.model_path, "Trained artifact")->required();
  align->add_option("--src-text", align_opt.src_text, "Source sentences")->required();
  align->add_option("--tgt-text", align_opt.tgt_text, "Target sentences")->required();
  align->add_option("--src-lang", align_opt.src_lang, "Source language code");
  align->add_option("--tgt-lang", align_opt.tgt_lang, "Target language code");
  align->add_option("--gold", align_opt.gold_path, "Score against this gold alignment");
  align->add_option("--out", align_opt.alignments_out, "Write `i-j` links per line");
  align->add_option("--results", align_opt.results_path, "Append metric rows to this TSV");
  align->add_flag("--dice-sum", align_opt.dice_sum, "Classical sum-denominator Dice");

  std::string bench_config, bench_out_dir, bench_results;
  unsigned bench_threads = 1;
  auto* bench = app.add_subcommand("benchmark", "Run a methods x directions matrix");
  bench->add_option("--config", bench_config, "JSON benchmark configuration")->required();
  bench->add_option("--out-dir", bench_out_dir, "Directory for trained artifacts");
  bench->add_option("--results", bench_results, "Append the table TSV here");
  bench->add_option("--threads", bench_threads, "Worker threads (default 1)");

  std::string nb_model, nb_word, nb_target_lang;
  std::size_t nb_k = 10;
  auto* neighbors = app.add_subcommand("neighbors", "Nearest words by cosine");
  neighbors->add_option("--model", nb_model, "Embedding artifact")->required();
  neighbors->add_option("--word", nb_word, "Query as lang:surface")->required();
  neighbors->add_option("--k", nb_k, "Number of neighbors (default 10)");
  neighbors->add_option("--target-lang", nb_target_lang, "Restrict to one language");

  CLI11_PARSE(app, argc, argv);

  try {
    if (train->parsed()) {
      if (train->count("--no-null")) train_opt.use_null = false;
      run_train(train_opt);
    } else if (eval->parsed()) {
      auto model = load_model(
          eval_opt.model_path,
          eval_opt.dice_sum ? DiceDenominator::sum : DiceDenominator::product);
      emit_rows(eval_model(model, eval_opt), eval_opt.results_path);
    } else if (align->parsed()) {
      align_opt.benchmark = "align";
      auto model = load_model(
          align_opt.model_path,
          align_opt.dice_sum ? DiceDenominator::sum : DiceDenominator::product);
      if (align_opt.gold_path.empty()) {
        std::string src = align_opt.src_lang, tgt = align_opt.tgt_lang;
        infer_direction(model, src, tgt);
        auto scorer = model.make_scorer(src, tgt);
        auto run = run_alignment(*scorer, align_opt.src_text, align_opt.tgt_text);
        if (align_opt.alignments_out.empty()) {
          write_links(std::cout, run.per_line);
        } else {
          std::ofstream out(align_opt.alignments_out);
          write_links(out, run.per_line);
        }
      } else {
        emit_rows(eval_model(model, align_opt), align_opt.results_path);
      }
    } else if (bench->parsed()) {
      run_benchmark(bench_config, bench_out_dir, bench_results, bench_threads);
    } else if (neighbors->parsed()) {
      run_neighbors(nb_model, nb_word, nb_k, nb_target_lang);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

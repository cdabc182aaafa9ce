// Integration tests that drive the built CLI binary.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "support.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code;
  std::string out, err;
};

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  auto out_path = fs::temp_directory_path() / ("crossling_cli_out_" +
                                               std::to_string(counter));
  auto err_path = fs::temp_directory_path() / ("crossling_cli_err_" +
                                               std::to_string(counter));
  ++counter;
  std::string cmd = std::string(CROSSLING_CLI_PATH) + " " + args + " > " +
                    out_path.string() + " 2> " + err_path.string();
  int status = std::system(cmd.c_str());
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  CliResult result{WEXITSTATUS(status), slurp(out_path), slurp(err_path)};
  fs::remove(out_path);
  fs::remove(err_path);
  return result;
}

// One shared three-language corpus directory for all cases.
const fs::path& corpus_dir() {
  static fs::path dir = [] {
    auto data = testsupport::make_permutation_corpus(3, 20, 150, 3, 7, 1111);
    auto path = fs::temp_directory_path() / "crossling_cli_corpus";
    fs::remove_all(path);
    fs::create_directories(path);
    for (std::size_t li = 0; li < 3; ++li) {
      std::ofstream out(path / (data.languages[li] + ".txt"), std::ios::binary);
      for (std::size_t s = 0; s < data.corpus.num_sentences(); ++s) {
        bool first = true;
        for (auto tid : data.corpus.tokens(li, s)) {
          out << (first ? "" : " ") << data.corpus.surface(li, tid);
          first = false;
        }
        out << '\n';
      }
    }
    std::ofstream dict(path / "dict_ab.tsv", std::ios::binary);
    for (const auto& [s, t] : data.gold_dictionary(0, 1)) dict << s << '\t' << t << '\n';
    return path;
  }();
  return dir;
}

std::string artifact(const std::string& name) {
  return (fs::temp_directory_path() / name).string();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("dice with multilingual mode is rejected") {
  auto res = run_cli("train --corpus " + corpus_dir().string() +
                     " --method dice --langs aa,bb --mode multilingual --out " +
                     artifact("cli_reject.model"));
  CHECK(res.exit_code != 0);
  CHECK(res.err.find("multilingual") != std::string::npos);
}

TEST_CASE("model1 with multilingual mode is rejected") {
  auto res = run_cli("train --corpus " + corpus_dir().string() +
                     " --method model1 --langs aa,bb --mode multilingual --out " +
                     artifact("cli_reject2.model"));
  CHECK(res.exit_code != 0);
}

TEST_CASE("unknown method is rejected") {
  auto res = run_cli("train --corpus " + corpus_dir().string() +
                     " --method bilbowa --langs aa,bb --out " + artifact("cli_x.model"));
  CHECK(res.exit_code != 0);
  CHECK(res.err.find("unknown method") != std::string::npos);
}

TEST_CASE("multilingual training covers all languages in one embedding") {
  auto out = artifact("cli_multi.emb");
  auto res = run_cli("train --corpus " + corpus_dir().string() +
                     " --method sgns --mode multilingual --langs all --dim 10" +
                     " --epochs 2 --out " + out);
  REQUIRE(res.exit_code == 0);
  std::ifstream emb(out);
  std::size_t n;
  std::uint32_t d;
  emb >> n >> d;
  CHECK(d == 10);
  std::set<std::string> langs;
  std::string word;
  std::string rest;
  while (emb >> word && std::getline(emb, rest)) langs.insert(word.substr(0, 2));
  CHECK(langs == std::set<std::string>{"aa", "bb", "cc"});
}

TEST_CASE("evaluating a direction the artifact does not cover fails") {
  auto out = artifact("cli_ab.emb");
  auto res = run_cli("train --corpus " + corpus_dir().string() +
                     " --method sgns --langs aa,bb --dim 8 --epochs 2 --out " + out);
  REQUIRE(res.exit_code == 0);
  auto eval = run_cli("eval --model " + out + " --benchmark dict --dictionary " +
                      (corpus_dir() / "dict_ab.tsv").string() +
                      " --src-lang aa --tgt-lang cc");
  CHECK(eval.exit_code != 0);
  CHECK(eval.err.find("does not cover") != std::string::npos);
}

TEST_CASE("model1 table evaluates only its trained direction") {
  auto out = artifact("cli_m1.table");
  auto res = run_cli("train --corpus " + corpus_dir().string() +
                     " --method model1 --langs aa,bb --iterations 3 --out " + out);
  REQUIRE(res.exit_code == 0);
  auto fwd = run_cli("eval --model " + out + " --benchmark dict --dictionary " +
                     (corpus_dir() / "dict_ab.tsv").string());
  CHECK(fwd.exit_code == 0);
  CHECK(fwd.out.find("dict\taa\tbb\tmodel1\tP@1\t") != std::string::npos);
  auto rev = run_cli("eval --model " + out + " --benchmark dict --dictionary " +
                     (corpus_dir() / "dict_ab.tsv").string() +
                     " --src-lang bb --tgt-lang aa");
  CHECK(rev.exit_code != 0);
}

TEST_CASE("eval warns when the corpus checksum changed") {
  auto out = artifact("cli_checksum.model");
  auto res = run_cli("train --corpus " + corpus_dir().string() +
                     " --method dice --langs aa,bb --out " + out);
  REQUIRE(res.exit_code == 0);
  // Same corpus: no warning.
  auto ok = run_cli("eval --model " + out + " --benchmark dict --dictionary " +
                    (corpus_dir() / "dict_ab.tsv").string() +
                    " --src-lang aa --tgt-lang bb --corpus " + corpus_dir().string());
  CHECK(ok.exit_code == 0);
  CHECK(ok.err.find("checksum mismatch") == std::string::npos);
  // Tampered corpus: warning on stderr, evaluation still runs.
  auto tampered = fs::temp_directory_path() / "crossling_cli_tampered";
  fs::remove_all(tampered);
  fs::copy(corpus_dir(), tampered);
  std::ofstream(tampered / "aa.txt", std::ios::app) << "extra line\n";
  auto warn = run_cli("eval --model " + out + " --benchmark dict --dictionary " +
                      (corpus_dir() / "dict_ab.tsv").string() +
                      " --src-lang aa --tgt-lang bb --corpus " + tampered.string());
  CHECK(warn.exit_code == 0);
  CHECK(warn.err.find("checksum mismatch") != std::string::npos);
}

TEST_CASE("align prints pharaoh-style links") {
  auto out = artifact("cli_align.table");
  auto res = run_cli("train --corpus " + corpus_dir().string() +
                     " --method model1 --langs aa,bb --iterations 3 --out " + out);
  REQUIRE(res.exit_code == 0);
  auto align = run_cli("align --model " + out + " --src-text " +
                       (corpus_dir() / "aa.txt").string() + " --tgt-text " +
                       (corpus_dir() / "bb.txt").string());
  CHECK(align.exit_code == 0);
  CHECK(align.out.find("1-") != std::string::npos);
}

TEST_CASE("document granularity requires docs.txt and model1 refuses it") {
  auto res = run_cli("train --corpus " + corpus_dir().string() +
                     " --method sgns --langs aa,bb --dim 8 --epochs 2" +
                     " --granularity document --out " + artifact("cli_doc.emb"));
  CHECK(res.exit_code != 0);
  CHECK(res.err.find("docs.txt") != std::string::npos);
  auto m1 = run_cli("train --corpus " + corpus_dir().string() +
                    " --method model1 --langs aa,bb --granularity document --out " +
                    artifact("cli_doc2.model"));
  CHECK(m1.exit_code != 0);
}

TEST_CASE("neighbors lists nearest target-language words") {
  auto out = artifact("cli_nb.emb");
  auto res = run_cli("train --corpus " + corpus_dir().string() +
                     " --method sgns --langs aa,bb --dim 16 --epochs 10 --out " + out);
  REQUIRE(res.exit_code == 0);
  auto nb = run_cli("neighbors --model " + out + " --word aa:w000 --k 3" +
                    " --target-lang bb");
  CHECK(nb.exit_code == 0);
  std::istringstream lines(nb.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    CHECK(line.rfind("bb:", 0) == 0);
    ++count;
  }
  CHECK(count == 3);
}

TEST_CASE("matrix dump flag emits the documented format") {
  auto dump = artifact("cli_dump.matrix");
  auto res = run_cli("train --corpus " + corpus_dir().string() +
                     " --method dice --langs aa,bb --out " + artifact("cli_dump.model") +
                     " --dump-matrix " + dump);
  REQUIRE(res.exit_code == 0);
  std::ifstream in(dump);
  std::size_t rows, cols, nnz;
  REQUIRE((in >> rows >> cols >> nnz));
  CHECK(rows > 0);
  CHECK(nnz > 0);
}

}  // TEST_SUITE

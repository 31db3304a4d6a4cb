// Copyright 2026 The diacres Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command line front end: corpus statistics, dataset generation, training,
// restoration and evaluation.

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "diacres/classify.h"
#include "diacres/corpus.h"
#include "diacres/dataset.h"
#include "diacres/embed.h"
#include "diacres/error.h"
#include "diacres/evaluate.h"
#include "diacres/ngram.h"
#include "diacres/pipeline.h"
#include "diacres/restorers.h"

namespace diacres {
namespace {

struct Globals {
  std::uint64_t seed = 1;
  std::optional<bool> lowercase;
  int window = 9;
};

// Writes to `path`, or stdout when it is empty or "-".
void Emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << text;
}

struct DatasetOptions {
  std::vector<std::string> corpora;
  std::string dataset;
  GenParams params;
};

void AddDatasetOptions(CLI::App* cmd, DatasetOptions& o, bool corpus_required) {
  auto* c = cmd->add_option("--corpus", o.corpora, "Marked training corpus files");
  if (corpus_required) c->required();
  cmd->add_option("--dataset", o.dataset,
                  "Dataset JSONL; generated from the corpus when omitted");
  cmd->add_option("--varnt-rep", o.params.varnt_rep, "Minimum variant share");
  cmd->add_option("--wdkey-rep", o.params.wdkey_rep,
                  "Minimum wordkey occurrences per word token");
  cmd->add_option("--varnt-distrib", o.params.varnt_distrib,
                  "Maximum dominant variant share");
}

struct Prepared {
  Corpus corpus;
  std::vector<AmbiguousSet> sets;
  Lexicon lexicon;
};

Prepared Prepare(DatasetOptions& o, const Globals& g) {
  o.params.lowercase = g.lowercase.value_or(true);
  o.params.Validate();
  Prepared p;
  p.corpus = ReadCorpora(o.corpora);
  p.sets = o.dataset.empty() ? Generate(p.corpus, o.params) : ReadDataset(o.dataset);
  p.lexicon = BuildLexicon(p.corpus, p.sets, o.params.lowercase);
  return p;
}

int RunStats(const std::vector<std::string>& corpora, const Globals& g) {
  const Corpus corpus = ReadCorpora(corpora);
  std::cout << StatsToJson(ComputeStats(corpus, g.lowercase.value_or(false))).dump(2)
            << '\n';
  return 0;
}

int RunDataset(DatasetOptions& o, const std::string& out, const Globals& g) {
  o.params.lowercase = g.lowercase.value_or(true);
  o.params.Validate();
  const auto sets = Generate(ReadCorpora(o.corpora), o.params);
  std::ostringstream s;
  WriteDataset(sets, s);
  Emit(out, s.str());
  return 0;
}

struct TrainOptions {
  DatasetOptions data;
  std::string out;
  int n = 5;
  bool no_nonwords = false;
  std::string kind = "logistic";
  double learning_rate = -1.0;
  int epochs = -1;
  std::string vectors;
  std::string scheme = "tweak2";
  std::size_t top_n = 20;
};

int RunTrainNGram(TrainOptions& o, const Globals& g) {
  Prepared p = Prepare(o.data, g);
  NGramModel model = TrainNGram(p.corpus, o.n, p.lexicon, !o.no_nonwords);
  Pipeline::FromNGram(std::move(model), o.n).Save(o.out);
  return 0;
}

Hyper MakeHyper(const TrainOptions& o, ClassifierKind kind, const Globals& g) {
  Hyper h = DefaultHyper(kind);
  h.seed = g.seed;
  if (o.learning_rate > 0.0) h.learning_rate = o.learning_rate;
  if (o.epochs > 0) h.epochs = o.epochs;
  return h;
}

int RunTrainClf(TrainOptions& o, const Globals& g) {
  Prepared p = Prepare(o.data, g);
  const ClassifierKind kind = ParseClassifierKind(o.kind);
  const Hyper hyper = MakeHyper(o, kind, g);
  std::vector<std::pair<std::string, WordkeyClassifier>> trained(p.sets.size());
  const auto n = static_cast<std::int64_t>(p.sets.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) {
    const AmbiguousSet& set = p.sets[static_cast<std::size_t>(i)];
    std::vector<const Instance*> train;
    for (const Instance& inst : set.instances) train.push_back(&inst);
    trained[static_cast<std::size_t>(i)] = {
        set.wordkey, TrainWordkeyClassifier(train, kind, g.window, hyper)};
  }
  std::map<std::string, WordkeyClassifier> models(trained.begin(), trained.end());
  Pipeline::FromClassifiers(std::move(p.lexicon), std::move(models), kind, g.window)
      .Save(o.out);
  return 0;
}

int RunTrainEmb(TrainOptions& o, const Globals& g) {
  Prepared p = Prepare(o.data, g);
  const Scheme scheme = ParseScheme(o.scheme);
  const EmbeddingModel vectors = LoadVectors(o.vectors);
  CowordTable cowords = BuildCowords(p.sets, o.top_n, g.window);
  EnhanceResult enhanced = Enhance(vectors, cowords, scheme, &p.lexicon);
  for (const std::string& w : enhanced.warnings) std::cerr << "warning: " << w << '\n';
  Pipeline::FromEmbedding(std::move(p.lexicon), std::move(enhanced.model),
                          std::move(cowords), scheme, g.window)
      .Save(o.out);
  return 0;
}

int RunProject(const std::string& vectors, const std::string& align,
               const std::string& out) {
  const EmbeddingModel projected = Project(LoadVectors(vectors), LoadAlignment(align));
  std::ostringstream s;
  SaveVectors(projected, s);
  Emit(out, s.str());
  return 0;
}

int RunEnhance(TrainOptions& o, const Globals& g) {
  Prepared p = Prepare(o.data, g);
  const CowordTable cowords = BuildCowords(p.sets, o.top_n, g.window);
  const EnhanceResult r =
      Enhance(LoadVectors(o.vectors), cowords, ParseScheme(o.scheme), &p.lexicon);
  for (const std::string& w : r.warnings) std::cerr << "warning: " << w << '\n';
  std::ostringstream s;
  SaveVectors(r.model, s);
  Emit(o.out, s.str());
  return 0;
}

int RunRestore(const std::string& model, const std::string& in_path,
               const std::string& out, const std::string& fallback) {
  Pipeline p = Pipeline::Load(model);
  if (!fallback.empty()) p.set_fallback(ParseFallback(fallback));
  Corpus input;
  if (in_path.empty() || in_path == "-") {
    input = ReadCorpus(std::cin);
  } else {
    input = ReadCorpus(in_path);
  }
  std::ostringstream s;
  WriteCorpus(p.Restore(input), s);
  Emit(out, s.str());
  return 0;
}

struct EvalOptions {
  TrainOptions train;
  std::string restorer = "ngram";
  std::size_t folds = 10;
  std::string report;
  std::string tsv;
  std::string restored;
  std::string gold;
};

int RunEvalCv(EvalOptions& o, const Globals& g) {
  Prepared p = Prepare(o.train.data, g);
  std::unique_ptr<RestorerFactory> factory;
  NGramModel full;
  EmbeddingModel vectors;
  if (o.restorer == "ngram") {
    full = TrainNGram(p.corpus, o.train.n, p.lexicon, !o.train.no_nonwords);
    factory = std::make_unique<NGramFactory>(&p.corpus, &full, o.train.n);
  } else if (o.restorer == "unigram") {
    factory = std::make_unique<MajorityFactory>();
  } else if (o.restorer == "embedding") {
    vectors = LoadVectors(o.train.vectors);
    factory = std::make_unique<EmbeddingFactory>(
        &vectors, &p.lexicon, ParseScheme(o.train.scheme), g.window, o.train.top_n);
  } else {
    const ClassifierKind kind = ParseClassifierKind(o.restorer);
    factory = std::make_unique<ClassifierFactory>(kind, g.window,
                                                  MakeHyper(o.train, kind, g));
  }
  const auto results = CrossValidateAll(*factory, p.sets, o.folds, g.seed);
  std::map<std::string, WordkeyScore> per;
  for (const CvResult& r : results) {
    if (r.matrix.Total() > 0) per[r.wordkey] = ScoreOf(r.matrix);
  }
  const MetricReport report = Aggregate(per);
  const auto baselines = MajorityBaselines(p.sets);
  Emit(o.report, ReportToJson(factory->Name(), results, report, baselines).dump(2) + "\n");
  if (!o.tsv.empty()) Emit(o.tsv, ReportToTsv(factory->Name(), report, baselines));
  return 0;
}

int RunEvalFullText(const EvalOptions& o) {
  const FullTextReport r = FullTextEval(ReadCorpus(o.restored), ReadCorpus(o.gold));
  Emit(o.report, FullTextToJson(r).dump(2) + "\n");
  return 0;
}

int RunIntrinsic(const std::string& task, const std::string& vectors,
                 const std::string& data) {
  const EmbeddingModel model = LoadVectors(vectors);
  nlohmann::ordered_json j;
  j["task"] = task;
  if (task == "oddword") {
    std::size_t used = 0, correct = 0, skipped = 0;
    for (const OddWordItem& item : LoadOddWord(data)) {
      const auto answer = OddWord(model, item.words);
      if (!answer) {
        ++skipped;
        continue;
      }
      ++used;
      correct += *answer == item.odd;
    }
    j["accuracy"] = used ? static_cast<double>(correct) / static_cast<double>(used) : 0.0;
    j["used"] = used;
    j["skipped"] = skipped;
  } else if (task == "analogy") {
    const auto quads = LoadAnalogy(data);
    const AnalogyResult r = AnalogyMrr(model, quads);
    j["mrr"] = r.mrr;
    j["used"] = r.used;
    j["skipped"] = r.skipped;
  } else {
    const auto pairs = LoadWordsim(data);
    const WordsimResult r = WordsimPearson(model, pairs);
    j["pearson"] = r.pearson;
    j["used"] = r.used;
  }
  std::cout << j.dump(2) << '\n';
  return 0;
}

int Main(int argc, char** argv) {
  CLI::App app{"Diacritic restoration toolkit", "diacres"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_flag("--lowercase,!--no-lowercase", g.lowercase,
               "Fold case when building wordkeys");
  app.add_option("--window", g.window, "Context window size (0 = sentence)")
      ->capture_default_str();

  std::vector<std::string> stats_corpora;
  auto* stats = app.add_subcommand("stats", "Corpus statistics as JSON");
  stats->add_option("corpus", stats_corpora, "Corpus files")->required();

  DatasetOptions ds;
  std::string ds_out;
  auto* dataset = app.add_subcommand("dataset", "Generate the ambiguity dataset");
  dataset->add_option("corpus", ds.corpora, "Marked corpus files")->required();
  dataset->add_option("--varnt-rep", ds.params.varnt_rep, "Minimum variant share");
  dataset->add_option("--wdkey-rep", ds.params.wdkey_rep,
                      "Minimum wordkey occurrences per word token");
  dataset->add_option("--varnt-distrib", ds.params.varnt_distrib,
                      "Maximum dominant variant share");
  dataset->add_option("--out", ds_out, "Output JSONL (default stdout)");

  TrainOptions tr;
  auto* train = app.add_subcommand("train", "Train a restorer into a model bundle");
  train->require_subcommand(1);
  auto* train_ngram = train->add_subcommand("ngram", "n-gram restorer");
  auto* train_clf = train->add_subcommand("clf", "Per-wordkey linear classifiers");
  auto* train_emb = train->add_subcommand("emb", "Embedding restorer");
  for (auto* cmd : {train_ngram, train_clf, train_emb}) {
    AddDatasetOptions(cmd, tr.data, true);
    cmd->add_option("--out", tr.out, "Model bundle path")->required();
  }
  train_ngram->add_option("--n", tr.n, "n-gram order")->capture_default_str();
  train_ngram->add_flag("--no-nonwords", tr.no_nonwords,
                        "Drop punctuation, digits and symbols from contexts");
  train_clf->add_option("--kind", tr.kind, "perceptron, logistic, svm or nb")
      ->capture_default_str();
  train_clf->add_option("--lr", tr.learning_rate, "Learning rate");
  train_clf->add_option("--epochs", tr.epochs, "Training epochs");
  train_emb->add_option("--vectors", tr.vectors, "word2vec text vectors")->required();
  train_emb->add_option("--scheme", tr.scheme, "basic, tweak1, tweak2 or tweak3")
      ->capture_default_str();
  train_emb->add_option("--top-n", tr.top_n, "Cowords kept per variant")
      ->capture_default_str();

  std::string proj_vectors, proj_align, proj_out;
  auto* project = app.add_subcommand("project", "Project vectors through an alignment");
  project->add_option("--vectors", proj_vectors, "Source vectors")->required();
  project->add_option("--align", proj_align, "Alignment TSV")->required();
  project->add_option("--out", proj_out, "Output vectors (default stdout)");

  TrainOptions en;
  auto* enhance = app.add_subcommand("enhance", "Enhance variant vectors with cowords");
  AddDatasetOptions(enhance, en.data, true);
  enhance->add_option("--vectors", en.vectors, "Input vectors")->required();
  enhance->add_option("--scheme", en.scheme, "basic, tweak1, tweak2 or tweak3")
      ->capture_default_str();
  enhance->add_option("--top-n", en.top_n, "Cowords kept per variant")
      ->capture_default_str();
  enhance->add_option("--out", en.out, "Output vectors (default stdout)");

  std::string rs_model, rs_in, rs_out, rs_fallback;
  auto* restore = app.add_subcommand("restore", "Restore diacritics in plain text");
  restore->add_option("--model", rs_model, "Model bundle")->required();
  restore->add_option("--in", rs_in, "Input text (default stdin)");
  restore->add_option("--out", rs_out, "Output text (default stdout)");
  restore->add_option("--fallback", rs_fallback, "echo or unigram");

  EvalOptions ev;
  auto* eval = app.add_subcommand("eval", "Evaluate restorers");
  eval->require_subcommand(1);
  auto* cv = eval->add_subcommand("cv", "Per-wordkey k-fold cross-validation");
  AddDatasetOptions(cv, ev.train.data, true);
  cv->add_option("--restorer", ev.restorer,
                 "ngram, unigram, perceptron, logistic, svm, nb or embedding")
      ->capture_default_str();
  cv->add_option("--n", ev.train.n, "n-gram order")->capture_default_str();
  cv->add_flag("--no-nonwords", ev.train.no_nonwords,
               "Drop non-words from n-gram contexts");
  cv->add_option("--folds", ev.folds, "Number of folds")->capture_default_str();
  cv->add_option("--lr", ev.train.learning_rate, "Learning rate");
  cv->add_option("--epochs", ev.train.epochs, "Training epochs");
  cv->add_option("--vectors", ev.train.vectors, "Vectors for the embedding restorer");
  cv->add_option("--scheme", ev.train.scheme, "Embedding scheme")->capture_default_str();
  cv->add_option("--top-n", ev.train.top_n, "Cowords kept per variant")
      ->capture_default_str();
  cv->add_option("--report", ev.report, "Report JSON (default stdout)");
  cv->add_option("--tsv", ev.tsv, "Per-wordkey TSV");
  auto* fulltext = eval->add_subcommand("fulltext", "Token-aligned full-text accuracy");
  fulltext->add_option("--restored", ev.restored, "Restored text")->required();
  fulltext->add_option("--gold", ev.gold, "Gold marked text")->required();
  fulltext->add_option("--report", ev.report, "Report JSON (default stdout)");

  std::string in_vectors, in_data;
  auto* intrinsic = app.add_subcommand("intrinsic", "Intrinsic embedding tasks");
  intrinsic->require_subcommand(1);
  std::vector<CLI::App*> tasks;
  for (const char* name : {"oddword", "analogy", "wordsim"}) {
    auto* t = intrinsic->add_subcommand(name, std::string(name) + " task");
    t->add_option("--vectors", in_vectors, "Vectors")->required();
    t->add_option("--data", in_data, "Task data file")->required();
    tasks.push_back(t);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    if (*stats) return RunStats(stats_corpora, g);
    if (*dataset) return RunDataset(ds, ds_out, g);
    if (*train_ngram) return RunTrainNGram(tr, g);
    if (*train_clf) return RunTrainClf(tr, g);
    if (*train_emb) return RunTrainEmb(tr, g);
    if (*project) return RunProject(proj_vectors, proj_align, proj_out);
    if (*enhance) return RunEnhance(en, g);
    if (*restore) return RunRestore(rs_model, rs_in, rs_out, rs_fallback);
    if (*cv) return RunEvalCv(ev, g);
    if (*fulltext) return RunEvalFullText(ev);
    for (auto* t : tasks) {
      if (*t) return RunIntrinsic(t->get_name(), in_vectors, in_data);
    }
  } catch (const ParamError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const ModelError& e) {
    std::cerr << "model error: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace
}  // namespace diacres

int main(int argc, char** argv) { return diacres::Main(argc, argv); }

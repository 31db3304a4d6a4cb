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

// Serial vs OpenMP timings of the parallel kernels on synthetic data.
//
//   diacres_bench [lines]   (default 20000)

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "diacres/corpus.h"
#include "diacres/dataset.h"
#include "diacres/embed.h"
#include "diacres/evaluate.h"
#include "diacres/ngram.h"
#include "diacres/pipeline.h"
#include "diacres/restorers.h"

namespace diacres {
namespace {

// Zipf-like vocabulary with ambiguous CVCV words mixed in.
Corpus SyntheticCorpus(std::size_t lines, std::uint64_t seed) {
  static const char* kVariants[][3] = {
      {"ọ", "o", "ò"}, {"bụ", "bu", "bù"}, {"ụlọ", "ulo", "ụlo"}, {"na", "nà", "ná"},
      {"ka", "kà", "ká"}, {"si", "sị", "sì"}, {"ya", "yà", "yá"}, {"ike", "íké", "ìke"}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> len(6, 20), amb(0, 7), var(0, 2);
  std::string text;
  for (std::size_t l = 0; l < lines; ++l) {
    const int n = len(rng);
    for (int i = 0; i < n; ++i) {
      if (i) text += ' ';
      if (u(rng) < 0.2) {
        const int a = amb(rng);
        // The preceding word index nudges the variant to give n-grams signal.
        text += kVariants[a][u(rng) < 0.6 ? (i % 3) : var(rng)];
      } else {
        text += "w" + std::to_string(static_cast<int>(std::pow(5000.0, u(rng))));
      }
    }
    text += " .\n";
  }
  return ParseCorpus(text);
}

template <typename F>
double Seconds(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void Report(const char* name, double serial, double parallel, bool same) {
  std::printf("%-22s serial %8.3fs  parallel %8.3fs  speedup %5.2fx  %s\n", name, serial,
              parallel, serial / parallel, same ? "equal" : "MISMATCH");
}

}  // namespace
}  // namespace diacres

int main(int argc, char** argv) {
  using namespace diacres;
  const std::size_t lines = argc > 1 ? std::stoul(argv[1]) : 20000;
  std::printf("threads %d, lines %zu\n", omp_get_max_threads(), lines);

  const Corpus corpus = SyntheticCorpus(lines, 7);
  GenParams gp;
  gp.varnt_distrib = 1.0;
  const auto sets = Generate(corpus, gp);
  const Lexicon lex = BuildLexicon(corpus, sets, true);

  NGramModel ms, mp;
  const double ts = Seconds([&] { ms = TrainNGramSerial(corpus, 5, lex); });
  const double tp = Seconds([&] { mp = TrainNGram(corpus, 5, lex); });
  Report("TrainNGram", ts, tp, ms == mp);

  const NGramFactory factory(&corpus, &mp, 3);
  std::vector<CvResult> cs, cp;
  const double cvs = Seconds([&] { cs = CrossValidateAllSerial(factory, sets); });
  const double cvp = Seconds([&] { cp = CrossValidateAll(factory, sets); });
  bool same = cs.size() == cp.size();
  for (std::size_t i = 0; same && i < cs.size(); ++i) same = cs[i].matrix == cp[i].matrix;
  Report("CrossValidateAll", cvs, cvp, same);

  const Pipeline pipe = Pipeline::FromNGram(mp, 5);
  const Corpus stripped = StripCorpus(corpus);
  Corpus rs, rp;
  const double prs = Seconds([&] { rs = pipe.RestoreSerial(stripped); });
  const double prp = Seconds([&] { rp = pipe.Restore(stripped); });
  Report("Pipeline::Restore", prs, prp, rs == rp);

  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  const std::size_t dim = 100, vocab = 20000;
  EmbeddingModel src(dim);
  std::vector<double> v(dim);
  for (std::size_t i = 0; i < vocab; ++i) {
    for (double& x : v) x = g(rng);
    src.Set("s" + std::to_string(i), v);
  }
  AlignmentDictionary align;
  std::uniform_int_distribution<std::size_t> word(0, vocab - 1);
  for (std::size_t t = 0; t < vocab; ++t) {
    auto& e = align.entries["t" + std::to_string(t)];
    for (int k = 0; k < 5; ++k) e.emplace_back("s" + std::to_string(word(rng)), k + 1);
  }
  EmbeddingModel ps, pp;
  const double pjs = Seconds([&] { ps = ProjectSerial(src, align); });
  const double pjp = Seconds([&] { pp = Project(src, align); });
  Report("Project", pjs, pjp, ps == pp);

  std::vector<AnalogyQuad> quads;
  for (int q = 0; q < 200; ++q) {
    quads.push_back({"s" + std::to_string(word(rng)), "s" + std::to_string(word(rng)),
                     "s" + std::to_string(word(rng)), "s" + std::to_string(word(rng))});
  }
  AnalogyResult as, ap;
  const double ams = Seconds([&] { as = AnalogyMrrSerial(src, quads); });
  const double amp = Seconds([&] { ap = AnalogyMrr(src, quads); });
  Report("AnalogyMrr", ams, amp, as.mrr == ap.mrr);
  return 0;
}

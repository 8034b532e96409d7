#include "gramex/geninfo.hpp"

#include <algorithm>

namespace gramex {

namespace {

struct FormStats {
  std::size_t count = 0;
  std::size_t best_len = 0;
  std::string sentence;
  std::size_t token = 0;
};

struct ValueStats {
  std::size_t count = 0;
  std::map<std::string, std::size_t> pos;
  std::map<std::string, FormStats> forms;
};

}  // namespace

std::vector<MorphSummary> summarize_morphology(const Corpus& corpus, const GenInfoConfig& config) {
  std::map<std::string, std::map<std::string, ValueStats>> stats;
  for (std::size_t s = 0; s < corpus.sentences.size(); ++s) {
    const Sentence& sent = corpus.sentences[s];
    for (const Token& tok : sent.tokens) {
      for (const auto& [attr, value] : tok.feats) {
        ValueStats& vs = stats[attr][value];
        ++vs.count;
        if (!tok.upos.empty()) ++vs.pos[tok.upos];
        FormStats& fs = vs.forms[tok.form];
        // sentences are visited in order, so strict < keeps the earliest of equal length
        const bool better = fs.count == 0 || sent.tokens.size() < fs.best_len;
        ++fs.count;
        if (better) {
          fs.best_len = sent.tokens.size();
          fs.sentence = sent.id;
          fs.token = tok.index;
        }
      }
    }
  }

  std::vector<MorphSummary> out;
  for (auto& [attr, values] : stats) {
    MorphSummary summary;
    summary.attribute = attr;
    for (auto& [value, vs] : values) {
      summary.total += vs.count;
      ValueSummary v;
      v.value = value;
      v.count = vs.count;
      v.pos = std::move(vs.pos);
      for (auto& [form, fs] : vs.forms) v.examples.push_back({form, fs.count, fs.sentence, fs.token});
      std::stable_sort(v.examples.begin(), v.examples.end(),
                       [](const FormExample& a, const FormExample& b) { return a.count > b.count; });
      if (v.examples.size() > config.max_examples) v.examples.resize(config.max_examples);
      summary.values.push_back(std::move(v));
    }
    if (summary.total < config.min_attribute_count) continue;
    // map order gives lexicographic ties
    std::stable_sort(summary.values.begin(), summary.values.end(),
                     [](const ValueSummary& a, const ValueSummary& b) { return a.count > b.count; });
    out.push_back(std::move(summary));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const MorphSummary& a, const MorphSummary& b) { return a.total > b.total; });
  return out;
}

}  // namespace gramex

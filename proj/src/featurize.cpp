#include <algorithm>

#include "gramex/featurize.hpp"
#include "gramex/util.hpp"

namespace gramex {

LemmaVocabulary LemmaVocabulary::build(const Corpus& corpus, std::size_t max_lemmas) {
  std::map<std::string, std::size_t> freq;
  for (const auto& s : corpus.sentences) {
    for (const auto& t : s.tokens) {
      if (!t.lemma.empty()) ++freq[t.lemma];
    }
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(freq.begin(), freq.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  LemmaVocabulary vocab;
  for (std::size_t i = 0; i < ranked.size() && i < max_lemmas; ++i) vocab.lemmas_.insert(ranked[i].first);
  return vocab;
}

void canonicalize(FeatureSet& features) {
  std::sort(features.begin(), features.end());
  features.erase(std::unique(features.begin(), features.end()), features.end());
}

std::string atom(std::string_view name, std::string_view value) {
  std::string out;
  out.reserve(name.size() + value.size() + 1);
  out += name;
  out += '=';
  out += value;
  return out;
}

FeatureSet extract_context_features(const Sentence& sentence, std::size_t head_index, std::size_t dep_index,
                                    const FeatureTemplate& tmpl, const LemmaVocabulary& lemmas) {
  FeatureSet f;
  const Token& head = sentence.at(head_index);
  const Token& dep = sentence.at(dep_index);

  if (!dep.deprel.empty()) f.push_back(atom("deprel", dep.deprel));

  auto token_features = [&](const Token& t, std::string_view role) {
    const std::string prefix = std::string(role) + ":";
    if (!t.upos.empty()) f.push_back(atom(prefix + "upos", t.upos));
    for (const auto& [attr, value] : t.feats) {
      if (tmpl.excluded_attributes.count(attr)) continue;
      f.push_back(atom(prefix + attr, value));
    }
    if (tmpl.use_lemmas && !t.lemma.empty()) {
      f.push_back(atom(prefix + "lemma", lemmas.contains(t.lemma) ? t.lemma : "OOV"));
    }
  };
  token_features(head, "head");
  token_features(dep, "dep");

  // Neighbours of the dependent, without direction and never the head itself:
  // "the next word is the verb" would restate the order label.
  if (tmpl.use_neighbor_pos) {
    for (std::size_t n : {dep_index - 1, dep_index + 1}) {
      if (n == 0 || n > sentence.size() || n == head_index) continue;
      const Token& t = sentence.at(n);
      if (!t.upos.empty()) f.push_back(atom("dep:neighbor_upos", t.upos));
    }
  }

  if (tmpl.use_codependents) {
    for (const auto& t : sentence.tokens) {
      if (t.head != head_index || t.index == dep_index || t.deprel.empty()) continue;
      f.push_back(atom("codep:" + t.deprel, t.upos.empty() ? "X" : t.upos));
    }
  }

  if (tmpl.use_sentence_flags) {
    bool interrogative = std::any_of(sentence.tokens.begin(), sentence.tokens.end(), [](const Token& t) {
      const std::string* v = t.feat("PronType");
      return v && *v == "Int";
    });
    if (interrogative) f.push_back("sent:interrogative=true");
    bool question = (!sentence.tokens.empty() && sentence.tokens.back().form == "?") ||
                    (!sentence.text.empty() && trim(sentence.text).back() == '?');
    if (question) f.push_back("sent:question=true");
  }

  canonicalize(f);
  return f;
}

bool Instance::has(std::string_view feature) const {
  return std::binary_search(features.begin(), features.end(), feature);
}

FeatureVocabulary::FeatureVocabulary(std::vector<std::string> names) : names_(std::move(names)) {
  std::sort(names_.begin(), names_.end());
  names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
  for (std::size_t i = 0; i < names_.size(); ++i) index_.emplace(names_[i], i);
}

long FeatureVocabulary::index(std::string_view name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : static_cast<long>(it->second);
}

FeatureVocabulary build_vocabulary(std::span<const Instance> instances) {
  if (instances.empty()) throw Error("build_vocabulary: no instances");
  std::set<std::string> all;
  for (const auto& inst : instances) all.insert(inst.features.begin(), inst.features.end());
  return FeatureVocabulary(std::vector<std::string>(all.begin(), all.end()));
}

std::vector<float> BinaryMatrix::row_as_float(std::size_t r) const {
  auto bytes = row(r);
  return std::vector<float>(bytes.begin(), bytes.end());
}

Design vectorize(std::span<const Instance> instances, const FeatureVocabulary& vocab) {
  Design d{BinaryMatrix(instances.size(), vocab.size()), {}};
  d.labels.reserve(instances.size());
  for (std::size_t i = 0; i < instances.size(); ++i) {
    for (const auto& name : instances[i].features) {
      long j = vocab.index(name);
      if (j >= 0) d.X.set(i, static_cast<std::size_t>(j), 1);
    }
    d.labels.push_back(instances[i].label);
  }
  return d;
}

}  // namespace gramex

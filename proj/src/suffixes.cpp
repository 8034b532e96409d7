#include "gramex/suffixes.hpp"

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

#include "gramex/util.hpp"

namespace gramex {

std::string_view segmentation_note() {
  return "Suffixes are the remainder of the surface form after its longest common prefix with the lemma. "
         "Sound changes at the morpheme boundary (sandhi) are not modelled: deshaala with lemma desh "
         "segments as desh + aala, where a morphological analyser gives desh + laa.";
}

std::string nfc(std::string_view utf8) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* norm = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFC normalizer unavailable");
  icu::UnicodeString in = icu::UnicodeString::fromUTF8(icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  icu::UnicodeString out = norm->normalize(in, status);
  if (U_FAILURE(status)) throw Error("NFC normalization failed");
  std::string result;
  out.toUTF8String(result);
  return result;
}

std::u32string to_u32(std::string_view utf8) {
  icu::UnicodeString s = icu::UnicodeString::fromUTF8(icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  std::u32string out;
  out.reserve(static_cast<std::size_t>(s.length()));
  for (int32_t i = 0; i < s.length();) {
    UChar32 c = s.char32At(i);
    out.push_back(static_cast<char32_t>(c));
    i += U16_LENGTH(c);
  }
  return out;
}

std::string to_utf8(std::u32string_view s) {
  icu::UnicodeString u;
  for (char32_t c : s) u.append(static_cast<UChar32>(c));
  std::string out;
  u.toUTF8String(out);
  return out;
}

Decomposition decompose(std::string_view form, std::string_view lemma) {
  if (form.empty() || lemma.empty()) throw Error("decompose: form and lemma must be non-empty");
  const std::u32string f = to_u32(nfc(form));
  const std::u32string l = to_u32(nfc(lemma));
  std::size_t lcp = 0;
  while (lcp < f.size() && lcp < l.size() && f[lcp] == l[lcp]) ++lcp;
  Decomposition d;
  d.suppletive = lcp == 0;
  std::u32string_view fv(f);
  d.stem = to_utf8(fv.substr(0, lcp));
  d.suffix = to_utf8(fv.substr(lcp));
  return d;
}

std::vector<std::string> default_suffix_pos() {
  return {"NST", "NUM", "NOUN", "PRON", "PART", "ADJ", "VERB", "PROPN", "SCONJ", "DET", "AUX", "ADV", "ADP"};
}

SuffixInventory build_inventory(const Corpus& corpus, const std::string& upos, std::size_t min_count) {
  SuffixInventory inv;
  inv.upos = upos;
  inv.min_count = min_count;
  std::map<std::string, std::size_t> raw;
  for (const auto& s : corpus.sentences) {
    for (const auto& t : s.tokens) {
      if (t.upos != upos || t.form.empty() || t.lemma.empty()) continue;
      ++inv.tokens;
      const auto d = decompose(t.form, t.lemma);
      if (d.suppletive) {
        ++inv.suppletive;
        continue;
      }
      if (!d.suffix.empty()) ++raw[d.suffix];
    }
  }
  for (auto& [suffix, count] : raw) {
    if (count >= min_count) inv.counts.emplace(suffix, count);
  }
  return inv;
}

std::vector<Instance> extract_suffix_instances(const Corpus& corpus, const SuffixInventory& inventory,
                                               const FeatureTemplate& tmpl, const LemmaVocabulary& lemmas) {
  std::vector<Instance> out;
  for (std::size_t si = 0; si < corpus.sentences.size(); ++si) {
    const Sentence& s = corpus.sentences[si];
    for (const Token& t : s.tokens) {
      if (t.upos != inventory.upos || t.form.empty() || t.lemma.empty()) continue;
      const auto d = decompose(t.form, t.lemma);
      if (d.suppletive || !inventory.contains(d.suffix)) continue;
      Instance inst;
      if (t.head != 0) {
        inst.features = extract_context_features(s, t.head, t.index, tmpl, lemmas);
      } else {
        inst.features.push_back("deprel=root");
        for (const auto& [attr, value] : t.feats) inst.features.push_back(atom("dep:" + attr, value));
        if (tmpl.use_lemmas && !t.lemma.empty()) {
          inst.features.push_back(atom("dep:lemma", lemmas.contains(t.lemma) ? t.lemma : "OOV"));
        }
        canonicalize(inst.features);
      }
      inst.label = d.suffix;
      inst.provenance = {s.id, t.head, t.index, s.size(), si};
      out.push_back(std::move(inst));
    }
  }
  return out;
}

LinearTaskResult run_suffix_task(const Corpus& corpus, const SuffixInventory& inventory,
                                 const TaskSettings& settings, const Glossary& glossary,
                                 const LemmaVocabulary& lemmas) {
  RuleContext ctx;
  ctx.kind = TaskKind::suffix;
  ctx.dep_role = "word";
  ctx.head_role = "head word";
  if (inventory.counts.size() < 2) {
    LinearTaskResult res;
    res.name = inventory.upos;
    res.context = ctx;
    res.evaluation.model_kind = "linear";
    res.note = "skipped: degenerate task, " + std::to_string(inventory.counts.size()) +
               " suffix(es) in the inventory";
    return res;
  }
  auto instances = extract_suffix_instances(corpus, inventory, settings.features, lemmas);
  return run_linear_task(inventory.upos, std::move(instances), settings, glossary, ctx);
}

}  // namespace gramex

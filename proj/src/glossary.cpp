#include "gramex/glossary.hpp"

#include <utility>

#include "gramex/util.hpp"

namespace gramex {

namespace {
// Kept in sync with data/glossary.tsv (checked by the glossary tests).
constexpr std::pair<const char*, const char*> kDefaults[] = {
    {"Animacy=Anim", "animate"},
    {"Animacy=Inan", "inanimate"},
    {"Aspect=Hab", "habitual aspect"},
    {"Aspect=Imp", "imperfective aspect"},
    {"Aspect=Perf", "perfective aspect"},
    {"Aspect=Prog", "progressive aspect"},
    {"Case=Abl", "ablative case"},
    {"Case=Acc", "accusative case"},
    {"Case=Dat", "dative case"},
    {"Case=Erg", "ergative case"},
    {"Case=Gen", "genitive case"},
    {"Case=Ins", "instrumental case"},
    {"Case=Loc", "locative case"},
    {"Case=Nom", "nominative case"},
    {"Case=Voc", "vocative case"},
    {"Definite=Def", "definite"},
    {"Definite=Ind", "indefinite"},
    {"Degree=Cmp", "comparative"},
    {"Degree=Pos", "positive degree"},
    {"Degree=Sup", "superlative"},
    {"Gender=Fem", "feminine"},
    {"Gender=Masc", "masculine"},
    {"Gender=Neut", "neuter"},
    {"Mood=Imp", "imperative mood"},
    {"Mood=Ind", "indicative mood"},
    {"Mood=Sub", "subjunctive mood"},
    {"Number=Dual", "dual"},
    {"Number=Plur", "plural"},
    {"Number=Sing", "singular"},
    {"NumType=Card", "cardinal number"},
    {"NumType=Ord", "ordinal number"},
    {"Person=1", "first person"},
    {"Person=2", "second person"},
    {"Person=3", "third person"},
    {"Polarity=Neg", "negative"},
    {"Polite=Form", "formal"},
    {"Polite=Infm", "informal"},
    {"PronType=Dem", "demonstrative pronoun"},
    {"PronType=Ind", "indefinite pronoun"},
    {"PronType=Int", "interrogative pronoun"},
    {"PronType=Prs", "personal pronoun"},
    {"PronType=Rel", "relative pronoun"},
    {"Tense=Fut", "future tense"},
    {"Tense=Past", "past tense"},
    {"Tense=Pres", "present tense"},
    {"VerbForm=Conv", "converb"},
    {"VerbForm=Fin", "finite verb"},
    {"VerbForm=Ger", "gerund"},
    {"VerbForm=Inf", "infinitive"},
    {"VerbForm=Part", "participle"},
    {"Voice=Act", "active voice"},
    {"Voice=Pass", "passive voice"},
    {"deprel=acl", "clausal modifier"},
    {"deprel=advcl", "adverbial clause"},
    {"deprel=advmod", "adverbial modifier"},
    {"deprel=amod", "adjectival modifier"},
    {"deprel=aux", "auxiliary"},
    {"deprel=case", "case marker"},
    {"deprel=cc", "coordinating conjunction"},
    {"deprel=compound", "compound"},
    {"deprel=conj", "conjunct"},
    {"deprel=cop", "copula"},
    {"deprel=det", "determiner"},
    {"deprel=iobj", "indirect object"},
    {"deprel=mark", "marker"},
    {"deprel=nmod", "nominal modifier"},
    {"deprel=nsubj", "subject"},
    {"deprel=nummod", "numeral modifier"},
    {"deprel=obj", "object"},
    {"deprel=obl", "oblique"},
    {"deprel=punct", "punctuation"},
    {"deprel=root", "root"},
    {"upos=ADJ", "adjective"},
    {"upos=ADP", "adposition"},
    {"upos=ADV", "adverb"},
    {"upos=AUX", "auxiliary"},
    {"upos=CCONJ", "coordinating conjunction"},
    {"upos=DET", "determiner"},
    {"upos=INTJ", "interjection"},
    {"upos=NOUN", "noun"},
    {"upos=NST", "spatio-temporal noun"},
    {"upos=NUM", "numeral"},
    {"upos=PART", "particle"},
    {"upos=PRON", "pronoun"},
    {"upos=PROPN", "proper noun"},
    {"upos=PUNCT", "punctuation mark"},
    {"upos=SCONJ", "subordinating conjunction"},
    {"upos=SYM", "symbol"},
    {"upos=VERB", "verb"},
    {"upos=X", "other word"},
};
}  // namespace

Glossary Glossary::defaults() {
  Glossary g;
  for (const auto& [atom, phrase] : kDefaults) g.entries_.emplace(atom, phrase);
  return g;
}

Glossary Glossary::parse(std::string_view tsv, std::string_view source) {
  Glossary g;
  std::size_t line_no = 0;
  for (auto line : split(tsv, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty() || line.front() == '#') continue;
    auto cols = split(line, '\t');
    if (cols.size() != 2 || cols[0].empty()) {
      throw ParseError(std::string(source), line_no, "expected feature-atom<TAB>phrase");
    }
    g.entries_[std::string(cols[0])] = std::string(cols[1]);
  }
  return g;
}

std::string Glossary::serialize(const Glossary& g) {
  std::string out;
  for (const auto& [atom, phrase] : g.entries_) out += atom + "\t" + phrase + "\n";
  return out;
}

void Glossary::merge(const Glossary& other) {
  for (const auto& [atom, phrase] : other.entries_) entries_[atom] = phrase;
}

std::string Glossary::phrase(std::string_view atom) const {
  auto it = entries_.find(std::string(atom));
  return it == entries_.end() ? std::string(atom) : it->second;
}

std::string Glossary::value_phrase(std::string_view attribute, std::string_view value) const {
  std::string key(attribute);
  key += '=';
  key += value;
  auto it = entries_.find(key);
  return it == entries_.end() ? std::string(value) : it->second;
}

}  // namespace gramex

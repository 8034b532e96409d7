#pragma once

#include <map>
#include <string>
#include <string_view>

namespace gramex {

// Maps feature atoms ("Case=Dat", "upos=NOUN", "deprel=obj") to plain-English
// phrases ("dative case", "noun", "object").
class Glossary {
 public:
  static Glossary defaults();
  // Rows "feature-atom<TAB>phrase"; later rows override earlier ones.
  static Glossary parse(std::string_view tsv, std::string_view source = "<glossary>");
  static std::string serialize(const Glossary& g);

  void merge(const Glossary& other);
  void set(std::string atom, std::string phrase) { entries_[std::move(atom)] = std::move(phrase); }
  // Phrase for the atom, or the atom itself when unknown.
  std::string phrase(std::string_view atom) const;
  std::string value_phrase(std::string_view attribute, std::string_view value) const;
  bool contains(std::string_view atom) const { return entries_.find(std::string(atom)) != entries_.end(); }
  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

}  // namespace gramex

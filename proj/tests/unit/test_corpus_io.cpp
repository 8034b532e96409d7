#include <doctest.h>

#include "gramex/corpus.hpp"
#include "gramex/util.hpp"

using namespace gramex;

namespace {

const char* kTwo =
    "# sent_id = a\n"
    "# text = मी भात खातो .\n"
    "# text_en = I eat rice.\n"
    "1\tमी\tमी\tPRON\t_\tPerson=1\t3\tnsubj\t_\tTranslit=mii\n"
    "2\tभात\tभात\tNOUN\t_\tGender=Masc|Number=Sing\t3\tobj\t_\t_\n"
    "3\tखातो\tखाणे\tVERB\t_\t_\t0\troot\t_\t_\n"
    "4\t.\t.\tPUNCT\t_\t_\t3\tpunct\t_\t_\n"
    "\n"
    "# sent_id = b\n"
    "1-2\tdu\t_\t_\t_\t_\t_\t_\t_\t_\n"
    "1\tde\tde\tADP\t_\t_\t2\tcase\t_\t_\n"
    "2\tle\tle\tDET\t_\t_\t0\troot\t_\t_\n"
    "2.1\tx\tx\tX\t_\t_\t_\t_\t_\t_\n"
    "\n";

}  // namespace

TEST_CASE("parse_conllu reads tokens, comments and MISC transliterations") {
  const Corpus c = parse_conllu(kTwo, "two.conllu");
  REQUIRE(c.sentences.size() == 2);
  const Sentence& s = c.sentences[0];
  CHECK(s.id == "a");
  CHECK(s.translation == "I eat rice.");
  CHECK(s.size() == 4);
  CHECK(s.at(1).translit == "mii");
  CHECK(s.at(2).feats.at("Gender") == "Masc");
  CHECK(s.at(2).head == 3);
  CHECK(s.at(3).deprel == "root");
  CHECK(c.stats.multiword_ranges_skipped == 1);
  CHECK(c.stats.empty_nodes_skipped == 1);
  CHECK(c.token_count() == 6);
  CHECK(c.find("b") != nullptr);
  CHECK(c.find("zz") == nullptr);
}

TEST_CASE("serialize_conllu round-trips") {
  const Corpus c = parse_conllu(kTwo);
  const Corpus again = parse_conllu(serialize_conllu(c));
  CHECK(again.sentences[0] == c.sentences[0]);
  CHECK(again.sentences[1].tokens == c.sentences[1].tokens);
}

TEST_CASE("malformed rows report their line") {
  const std::string bad = "# sent_id = x\n1\ta\ta\tX\t_\t_\t0\troot\t_\n";
  try {
    parse_conllu(bad, "bad.conllu");
    FAIL("no exception");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.source() == "bad.conllu");
  }
  CHECK_THROWS_AS(parse_conllu("1\ta\ta\tX\t_\t_\t5\troot\t_\t_\n\n"), ParseError);
  CHECK_THROWS_AS(parse_conllu("1\ta\ta\tX\t_\tGender\t0\troot\t_\t_\n\n"), ParseError);
  CHECK_THROWS_AS(parse_conllu("1\ta\ta\tX\t_\t_\t1\troot\t_\t_\n\n"), ParseError);
  CHECK_THROWS_AS(parse_conllu("# sent_id = a\n1\ta\ta\tX\t_\t_\t0\troot\t_\t_\n\n# sent_id = a\n"
                               "1\ta\ta\tX\t_\t_\t0\troot\t_\t_\n\n"),
                  ParseError);
}

TEST_CASE("transliteration sidecar") {
  Corpus c = parse_conllu(kTwo);
  const auto map = parse_transliterations("a\t2\tbhaat\na\t3\tkhaato\nmissing\t1\tx\n");
  CHECK(apply_transliterations(c, map) == 2);
  CHECK(c.sentences[0].at(2).translit == "bhaat");
  CHECK_THROWS_AS(parse_transliterations("a\tx\tbhaat\n"), ParseError);
}

TEST_CASE("parallel pairs and alignments") {
  const Corpus en = parse_plain_text("I eat rice\nWe wash rice\n", "en");
  const Corpus l2 = parse_plain_text("mii bhaat khaato\naamhii taandul dhuto\n", "l2");
  CHECK(en.sentences[0].at(1).lemma == "i");
  auto pairs = make_pairs(en, l2);
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0].id == "pair1");
  parse_alignments("0-0 1-2 2-1\n0-0 1-2 2-1\n", pairs);
  CHECK(pairs[1].alignment.count({2, 1}) == 1);

  CHECK_THROWS_AS(parse_alignments("0-0\n", pairs), Error);
  CHECK_THROWS_AS(parse_alignments("0-9\n0-0\n", pairs), ParseError);
  const Corpus one = parse_plain_text("x\n");
  CHECK_THROWS_AS(make_pairs(en, one), Error);
}

TEST_CASE("taxonomy closure, antonyms and cycles") {
  const auto tax = parse_taxonomy("rice.n.01\tgrain.n.02\ngrain.n.02\tfood.n.02\n",
                                  "rice.n.01\trice\ngrain.n.02\tgrain\nfood.n.02\tfood\nraw.a.01\traw\n"
                                  "cooked.a.01\tcooked\n",
                                  "raw.a.01\tcooked.a.01\n");
  CHECK(tax.ancestors("rice.n.01") == std::set<std::string>{"food.n.02", "grain.n.02"});
  CHECK(tax.antonyms_of("cooked.a.01") == std::set<std::string>{"raw.a.01"});
  CHECK(tax.lemma_senses.at("rice").count("rice.n.01") == 1);

  try {
    parse_taxonomy("a.n.01\tb.n.01\nb.n.01\ta.n.01\n", "a.n.01\ta\nb.n.01\tb\n", "");
    FAIL("cycle accepted");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("cycle") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_taxonomy("a.n.01\tz.n.01\n", "a.n.01\ta\n", ""), ParseError);
}

TEST_CASE("sense annotations skip unknown senses with a warning") {
  const auto tax = parse_taxonomy("", "rice.n.01\trice\n", "");
  const auto s = parse_senses("pair1\t2\trice.n.01\npair1\t0\tnope.n.01\n", tax);
  CHECK(s.senses.size() == 1);
  CHECK(s.senses.at({"pair1", 2}) == "rice.n.01");
  CHECK(s.warnings.size() == 1);
}

#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <string>
#include <vector>

#include "mqa/corpus_io.hpp"
#include "mqa/markup.hpp"
#include "mqa/templates.hpp"
#include "mqa/tokenize.hpp"

using namespace mqa;

TEST_CASE("substitution replaces every placeholder") {
  SubstMap values = {{"category", "car"}, {"count", "3"}};
  CHECK(substitute("a {category} and {count} more {category}", values) ==
        "a car and 3 more car");
  CHECK(substitute("no placeholders", values) == "no placeholders");
  CHECK(substitute("", values) == "");
}

TEST_CASE("substitution rejects unknown and unterminated placeholders") {
  SubstMap values = {{"category", "car"}};
  CHECK_THROWS_AS(substitute("a {missing} here", values), SchemaError);
  CHECK_THROWS_AS(substitute("broken {category", values), SchemaError);
}

TEST_CASE("family and variant names round-trip") {
  for (TaskFamily f : kAllFamilies) {
    CHECK(family_from_name(family_name(f)).value() == f);
  }
  for (TemplateVariant v : kAllVariants) {
    CHECK(variant_from_name(variant_name(v)).value() == v);
  }
  CHECK(family_of(TemplateVariant::presence_count) == TaskFamily::presence);
  CHECK(family_of(TemplateVariant::direction) == TaskFamily::direction);
  CHECK(family_of(TemplateVariant::relative_distance) == TaskFamily::relative_distance);
  CHECK(family_of(TemplateVariant::relative_location) == TaskFamily::relative_location);
  CHECK_FALSE(family_from_name("bogus").has_value());
  CHECK_FALSE(variant_from_name("bogus").has_value());
}

TEST_CASE("builtin bank ships five patterns per variant") {
  const TemplateBank& bank = TemplateBank::builtin();
  CHECK(bank.all().size() == 30);
  for (TemplateVariant v : kAllVariants) {
    CHECK(bank.variant_index(v).size() == 5);
    for (std::size_t idx : bank.variant_index(v)) {
      CHECK(bank.all().at(idx).variant == v);
    }
  }
}

TEST_CASE("shipped bank file matches the embedded bank byte for byte") {
  std::string on_disk = read_text_file(std::string(MQA_SOURCE_DIR) + "/data/template_bank.json");
  CHECK(on_disk == std::string(kBuiltinTemplateBankJson) + "\n");
}

TEST_CASE("bank json round trip preserves every template") {
  const TemplateBank& bank = TemplateBank::builtin();
  TemplateBank reparsed = TemplateBank::from_json(bank.to_json());
  CHECK(reparsed.to_json() == bank.to_json());
  REQUIRE(reparsed.all().size() == bank.all().size());
  for (std::size_t i = 0; i < bank.all().size(); ++i) {
    CHECK(reparsed.all()[i].question == bank.all()[i].question);
    CHECK(reparsed.all()[i].answer == bank.all()[i].answer);
    CHECK(reparsed.all()[i].joiner == bank.all()[i].joiner);
    CHECK(reparsed.all()[i].final_joiner == bank.all()[i].final_joiner);
  }
}

TEST_CASE("bank loading rejects malformed definitions") {
  CHECK_THROWS_AS(TemplateBank::from_json_text("not json"), SchemaError);
  CHECK_THROWS_AS(TemplateBank::from_json_text("{}"), SchemaError);
  CHECK_THROWS_AS(TemplateBank::from_json_text(R"({"templates": [42]})"), SchemaError);
  // bad variant name
  CHECK_THROWS_AS(TemplateBank::from_json_text(R"({"templates": [
    {"family": "presence", "variant": "nope", "question": "q", "answer": "a"}
  ]})"),
                  SchemaError);
  // family contradicts variant
  CHECK_THROWS_AS(TemplateBank::from_json_text(R"({"templates": [
    {"family": "direction", "variant": "presence_yes", "question": "q",
     "answer": "<ans>Yes</ans> x"}
  ]})"),
                  SchemaError);
  // missing answer
  CHECK_THROWS_AS(TemplateBank::from_json_text(R"({"templates": [
    {"family": "presence", "variant": "presence_yes", "question": "q"}
  ]})"),
                  SchemaError);
  // a single variant cannot cover the whole task set
  CHECK_THROWS_AS(TemplateBank::from_json_text(R"({"templates": [
    {"family": "presence", "variant": "presence_yes", "question": "any {category}?",
     "answer": "<ans>Yes</ans>, a {category} and more {categories} are in front of the ego vehicle."}
  ]})"),
                  SchemaError);
}

TEST_CASE("bank loading rejects templates that break their own contract") {
  nlohmann::json base = TemplateBank::builtin().to_json();

  nlohmann::json broken_answer = base;
  broken_answer["templates"][0]["answer"] = "<ans>Yes, a {category}.";
  CHECK_THROWS_AS(TemplateBank::from_json(broken_answer), SchemaError);

  nlohmann::json marked_question = base;
  marked_question["templates"][0]["question"] = "any <obj>{category}</obj> around?";
  CHECK_THROWS_AS(TemplateBank::from_json(marked_question), SchemaError);

  nlohmann::json wrong_slot = base;
  wrong_slot["templates"][0]["answer"] =
      "<ans>No</ans>, not a single {category} is visible around the ego vehicle right now.";
  CHECK_THROWS_AS(TemplateBank::from_json(wrong_slot), SchemaError);
}

namespace {

SubstMap sample_values(TemplateVariant v) {
  static const std::string targets = "<target><cnt>3</cnt> <obj>trucks</obj></target>";
  switch (v) {
    case TemplateVariant::presence_yes:
    case TemplateVariant::presence_no:
      return {{"category", "car"}, {"categories", "cars"}};
    case TemplateVariant::presence_count:
      return {{"category", "car"}, {"categories", "cars"}, {"count", "3"}, {"objects", "cars"}};
    case TemplateVariant::direction:
      return {{"camera", "back"}, {"targets", targets}};
    case TemplateVariant::relative_distance:
      return {{"category", "car"}, {"distance", "5.00"}};
    case TemplateVariant::relative_location:
      return {{"category", "car"}, {"location", "(3.43, 1.41)"}};
  }
  return {};
}

}  // namespace

TEST_CASE("every builtin answer is long enough to keep identity scores high") {
  // single-gram identity penalties shrink with answer length; the bank keeps
  // answers at 12+ tokens (9+ for single-target direction answers)
  for (const Template& t : TemplateBank::builtin().all()) {
    std::string answer = substitute(t.answer, sample_values(t.variant));
    std::size_t tokens = tokenize(strip_markup(std::string_view(answer))).size();
    CAPTURE(t.answer);
    if (t.variant == TemplateVariant::direction) {
      CHECK(tokens >= 9);
    } else {
      CHECK(tokens >= 12);
    }
  }
}

TEST_CASE("every builtin question is markup-free and every answer strict-parses") {
  for (const Template& t : TemplateBank::builtin().all()) {
    std::string q = substitute(t.question, sample_values(t.variant));
    std::string a = substitute(t.answer, sample_values(t.variant));
    CAPTURE(q, a);
    ParseResult qr = parse_markup(q, ParseMode::strict);
    CHECK(qr.ok());
    for (const Piece& p : qr.doc.items) {
      CHECK(std::holds_alternative<TextRun>(p));
    }
    CHECK(parse_markup(a, ParseMode::strict).ok());
  }
}

TEST_CASE("direction templates carry joiners for multi-target answers") {
  const TemplateBank& bank = TemplateBank::builtin();
  for (std::size_t idx : bank.variant_index(TemplateVariant::direction)) {
    const Template& t = bank.all()[idx];
    CHECK_FALSE(t.joiner.empty());
    CHECK_FALSE(t.final_joiner.empty());
  }
}

TEST_CASE("template picks are deterministic under a fixed stream") {
  const TemplateBank& bank = TemplateBank::builtin();
  Rng a(123);
  Rng b(123);
  for (int i = 0; i < 50; ++i) {
    const Template& ta = bank.pick(TemplateVariant::direction, a);
    const Template& tb = bank.pick(TemplateVariant::direction, b);
    CHECK(ta.question == tb.question);
    CHECK(ta.variant == TemplateVariant::direction);
  }
}

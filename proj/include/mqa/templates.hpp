#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mqa/errors.hpp"
#include "mqa/markup.hpp"
#include "mqa/rng.hpp"
#include "mqa/template_bank_data.hpp"

namespace mqa {

// ---------------------------------------------------------------------------
// Task families and template variants

enum class TaskFamily { presence, direction, relative_distance, relative_location };

inline constexpr std::array<TaskFamily, 4> kAllFamilies = {
    TaskFamily::presence, TaskFamily::direction, TaskFamily::relative_distance,
    TaskFamily::relative_location};

inline std::string_view family_name(TaskFamily f) {
  switch (f) {
    case TaskFamily::presence: return "presence";
    case TaskFamily::direction: return "direction";
    case TaskFamily::relative_distance: return "relative_distance";
    case TaskFamily::relative_location: return "relative_location";
  }
  return "presence";
}

inline std::optional<TaskFamily> family_from_name(std::string_view s) {
  for (TaskFamily f : kAllFamilies) {
    if (family_name(f) == s) return f;
  }
  return std::nullopt;
}

// Presence splits into polarity/count variants; the other families have one
// answer shape each.
enum class TemplateVariant {
  presence_yes,
  presence_no,
  presence_count,
  direction,
  relative_distance,
  relative_location,
};

inline constexpr std::array<TemplateVariant, 6> kAllVariants = {
    TemplateVariant::presence_yes,      TemplateVariant::presence_no,
    TemplateVariant::presence_count,    TemplateVariant::direction,
    TemplateVariant::relative_distance, TemplateVariant::relative_location};

inline std::string_view variant_name(TemplateVariant v) {
  switch (v) {
    case TemplateVariant::presence_yes: return "presence_yes";
    case TemplateVariant::presence_no: return "presence_no";
    case TemplateVariant::presence_count: return "presence_count";
    case TemplateVariant::direction: return "direction";
    case TemplateVariant::relative_distance: return "relative_distance";
    case TemplateVariant::relative_location: return "relative_location";
  }
  return "presence_yes";
}

inline std::optional<TemplateVariant> variant_from_name(std::string_view s) {
  for (TemplateVariant v : kAllVariants) {
    if (variant_name(v) == s) return v;
  }
  return std::nullopt;
}

inline TaskFamily family_of(TemplateVariant v) {
  switch (v) {
    case TemplateVariant::presence_yes:
    case TemplateVariant::presence_no:
    case TemplateVariant::presence_count:
      return TaskFamily::presence;
    case TemplateVariant::direction:
      return TaskFamily::direction;
    case TemplateVariant::relative_distance:
      return TaskFamily::relative_distance;
    case TemplateVariant::relative_location:
      return TaskFamily::relative_location;
  }
  return TaskFamily::presence;
}

struct Template {
  TaskFamily family = TaskFamily::presence;
  TemplateVariant variant = TemplateVariant::presence_yes;
  std::string question;
  std::string answer;
  std::string joiner = ", ";        // direction: between target groups
  std::string final_joiner = " and ";  // direction: before the last group
};

// ---------------------------------------------------------------------------
// Placeholder substitution

using SubstMap = std::vector<std::pair<std::string_view, std::string_view>>;

// Replaces every "{key}"; a placeholder without a binding is a SchemaError
// (templates are validated data, not free text).
inline std::string substitute(std::string_view pattern, const SubstMap& values) {
  std::string out;
  out.reserve(pattern.size());
  std::size_t i = 0;
  while (i < pattern.size()) {
    char c = pattern[i];
    if (c != '{') {
      out += c;
      ++i;
      continue;
    }
    std::size_t close = pattern.find('}', i + 1);
    if (close == std::string_view::npos) {
      throw SchemaError("unterminated placeholder in template: " + std::string(pattern));
    }
    std::string_view key = pattern.substr(i + 1, close - i - 1);
    bool found = false;
    for (const auto& [k, v] : values) {
      if (k == key) {
        out += v;
        found = true;
        break;
      }
    }
    if (!found) {
      throw SchemaError("unknown placeholder {" + std::string(key) + "} in template");
    }
    i = close + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Template bank

class TemplateBank {
 public:
  static TemplateBank from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("templates") || !j["templates"].is_array()) {
      throw SchemaError("template bank: expected object with a templates array");
    }
    std::vector<Template> templates;
    std::size_t line = 0;
    for (const auto& tj : j["templates"]) {
      ++line;
      if (!tj.is_object()) throw SchemaError("template bank: template must be an object", line);
      Template t;
      auto var = variant_from_name(tj.value("variant", ""));
      if (!var) throw SchemaError("template bank: bad variant", line, "variant");
      t.variant = *var;
      t.family = family_of(*var);
      auto fam = family_from_name(tj.value("family", ""));
      if (!fam || *fam != t.family) {
        throw SchemaError("template bank: family does not match variant", line, "family");
      }
      if (!tj.contains("question") || !tj["question"].is_string() || !tj.contains("answer") ||
          !tj["answer"].is_string()) {
        throw SchemaError("template bank: question/answer must be strings", line);
      }
      t.question = tj["question"].get<std::string>();
      t.answer = tj["answer"].get<std::string>();
      t.joiner = tj.value("joiner", std::string(", "));
      t.final_joiner = tj.value("final_joiner", std::string(" and "));
      templates.push_back(std::move(t));
    }
    return TemplateBank(std::move(templates));
  }

  static TemplateBank from_json_text(std::string_view text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw SchemaError("template bank: invalid JSON");
    return from_json(j);
  }

  static const TemplateBank& builtin() {
    static const TemplateBank bank = from_json_text(kBuiltinTemplateBankJson);
    return bank;
  }

  nlohmann::json to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const Template& t : templates_) {
      nlohmann::json tj;
      tj["family"] = std::string(family_name(t.family));
      tj["variant"] = std::string(variant_name(t.variant));
      tj["question"] = t.question;
      tj["answer"] = t.answer;
      if (t.variant == TemplateVariant::direction) {
        tj["joiner"] = t.joiner;
        tj["final_joiner"] = t.final_joiner;
      }
      arr.push_back(std::move(tj));
    }
    return nlohmann::json{{"version", 1}, {"templates", std::move(arr)}};
  }

  const std::vector<Template>& all() const { return templates_; }

  const std::vector<std::size_t>& variant_index(TemplateVariant v) const {
    return by_variant_[static_cast<std::size_t>(v)];
  }

  const Template& pick(TemplateVariant v, Rng& rng) const {
    const auto& idx = variant_index(v);
    return templates_[idx[rng.below(idx.size())]];
  }

 private:
  explicit TemplateBank(std::vector<Template> templates) : templates_(std::move(templates)) {
    for (std::size_t i = 0; i < templates_.size(); ++i) {
      by_variant_[static_cast<std::size_t>(templates_[i].variant)].push_back(i);
    }
    for (TemplateVariant v : kAllVariants) {
      if (variant_index(v).empty()) {
        throw SchemaError("template bank: no templates for variant " +
                          std::string(variant_name(v)));
      }
    }
    smoke_check();
  }

  // Substitutes sample values into every template and checks that the answer
  // strict-parses into the slots the variant promises and that the question
  // stays markup-free.
  void smoke_check() const {
    const std::string targets_sample = "<target><cnt>3</cnt> <obj>trucks</obj></target>";
    for (const Template& t : templates_) {
      SubstMap values;
      switch (t.variant) {
        case TemplateVariant::presence_yes:
        case TemplateVariant::presence_no:
          values = {{"category", "car"}, {"categories", "cars"}};
          break;
        case TemplateVariant::presence_count:
          values = {{"category", "car"}, {"categories", "cars"}, {"count", "3"},
                    {"objects", "cars"}};
          break;
        case TemplateVariant::direction:
          values = {{"camera", "back"}, {"targets", targets_sample}};
          break;
        case TemplateVariant::relative_distance:
          values = {{"category", "car"}, {"distance", "5.00"}};
          break;
        case TemplateVariant::relative_location:
          values = {{"category", "car"}, {"location", "(3.43, 1.41)"}};
          break;
      }
      std::string q = substitute(t.question, values);
      std::string a = substitute(t.answer, values);
      ParseResult qr = parse_markup(q, ParseMode::strict);
      bool q_has_nodes = false;
      for (const Piece& p : qr.doc.items) {
        if (std::holds_alternative<MarkupNode>(p)) q_has_nodes = true;
      }
      if (!qr.ok() || q_has_nodes) {
        throw SchemaError("template question must be markup-free: " + t.question);
      }
      ParseResult ar = parse_markup(a, ParseMode::strict);
      if (!ar.ok()) {
        throw SchemaError("template answer does not strict-parse: " + t.answer);
      }
      check_slots(t, extract_answers(ar.doc));
    }
  }

  static void check_slots(const Template& t, const std::vector<ExtractedAnswer>& answers) {
    auto fail = [&](const char* what) {
      throw SchemaError(std::string("template answer missing expected slot (") + what +
                        "): " + t.answer);
    };
    switch (t.variant) {
      case TemplateVariant::presence_yes:
      case TemplateVariant::presence_no: {
        const YesNo* yn = nullptr;
        for (const auto& a : answers) {
          if (const YesNo* v = std::get_if<YesNo>(&a)) {
            if (yn) fail("exactly one ans");
            yn = v;
          }
        }
        if (!yn || yn->value != (t.variant == TemplateVariant::presence_yes)) {
          fail("ans polarity");
        }
        break;
      }
      case TemplateVariant::presence_count: {
        int pairs = 0;
        for (const auto& a : answers) {
          if (const TargetPair* p = std::get_if<TargetPair>(&a)) {
            if (p->count != 3 || p->category != "car") fail("target pair values");
            ++pairs;
          }
        }
        if (pairs != 1) fail("exactly one target");
        break;
      }
      case TemplateVariant::direction: {
        bool cam = false;
        int pairs = 0;
        for (const auto& a : answers) {
          if (const Camera* c = std::get_if<Camera>(&a)) {
            if (c->id != CameraId::back) fail("camera value");
            cam = true;
          }
          if (std::holds_alternative<TargetPair>(a)) ++pairs;
        }
        if (!cam || pairs != 1) fail("camera plus targets");
        break;
      }
      case TemplateVariant::relative_distance: {
        bool cat = false;
        bool dst = false;
        for (const auto& a : answers) {
          if (const Category* c = std::get_if<Category>(&a)) cat = c->name == "car";
          if (const Distance* d = std::get_if<Distance>(&a)) dst = d->meters == 5.0;
        }
        if (!cat || !dst) fail("obj plus dst");
        break;
      }
      case TemplateVariant::relative_location: {
        bool cat = false;
        bool loc = false;
        for (const auto& a : answers) {
          if (const Category* c = std::get_if<Category>(&a)) cat = c->name == "car";
          if (const Location* l = std::get_if<Location>(&a)) loc = l->x == 3.43 && l->y == 1.41;
        }
        if (!cat || !loc) fail("obj plus loc");
        break;
      }
    }
  }

  std::vector<Template> templates_;
  std::array<std::vector<std::size_t>, 6> by_variant_;
};

}  // namespace mqa

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mqa/errors.hpp"
#include "mqa/generate.hpp"
#include "mqa/markup.hpp"
#include "mqa/metrics.hpp"
#include "mqa/numeric.hpp"
#include "mqa/parallel.hpp"
#include "mqa/scene.hpp"

namespace mqa {

struct PredictionRecord {
  std::string item_id;
  std::string predicted_text;  // raw model output, possibly malformed markup
  bool operator==(const PredictionRecord&) const = default;
};

// Exact rational accuracy; value() is only meaningful when den > 0 and
// callers render an empty denominator as absent.
struct Rate {
  long num = 0;
  long den = 0;
  double value() const { return den > 0 ? static_cast<double>(num) / static_cast<double>(den) : 0.0; }
  Rate& operator+=(const Rate& o) {
    num += o.num;
    den += o.den;
    return *this;
  }
  bool operator==(const Rate&) const = default;
};

struct EvalConfig {
  double rd_tolerance = 1.0;  // meters; joint category+distance accuracy window
};

// Per-item contribution to the corpus report. Rates carry this item's
// numerator/denominator so aggregation is plain integer addition.
struct ItemScore {
  TaskFamily family = TaskFamily::presence;
  int n_qa = 1;
  Rate yes_no;     // answer-tag slots (yes/no presence form)
  Rate cat;        // target-pair category slots (presence count form, direction)
  Rate cat_count;  // same slots, category and count jointly
  Rate cam;        // direction camera slot
  Rate cat_rd;     // distance items: category correct and |error| <= tolerance
  Rate cat_loc;    // location items: category correct
  std::optional<double> rd_abs_err;
  std::optional<double> loc_x_abs_err;
  std::optional<double> loc_y_abs_err;
  long missing_slots = 0;    // expected slots with no usable candidate
  long invalid_slots = 0;    // tags present but content unusable
  long spurious_slots = 0;   // usable extractions beyond what the item expects
  bool missing_prediction = false;
};

namespace detail {

struct ExtractionBuckets {
  std::vector<bool> yes_no;
  std::vector<CameraId> cameras;
  std::vector<CategoryCount> pairs;  // vocabulary-normalized categories
  std::vector<std::string> categories;
  std::vector<double> distances;
  std::vector<double> locations_x;
  std::vector<double> locations_y;
  long invalid = 0;
};

inline ExtractionBuckets bucket_extractions(const std::string& text,
                                            const CategoryVocabulary& vocab) {
  ExtractionBuckets out;
  ParseResult parsed = parse_markup(text, ParseMode::lenient);
  for (const ExtractedAnswer& a : extract_answers(parsed.doc)) {
    if (const YesNo* v = std::get_if<YesNo>(&a)) {
      out.yes_no.push_back(v->value);
    } else if (const Camera* v = std::get_if<Camera>(&a)) {
      out.cameras.push_back(v->id);
    } else if (const TargetPair* v = std::get_if<TargetPair>(&a)) {
      out.pairs.push_back({normalize_category(v->category, vocab), v->count});
    } else if (const Category* v = std::get_if<Category>(&a)) {
      out.categories.push_back(normalize_category(v->name, vocab));
    } else if (const Distance* v = std::get_if<Distance>(&a)) {
      out.distances.push_back(v->meters);
    } else if (const Location* v = std::get_if<Location>(&a)) {
      out.locations_x.push_back(v->x);
      out.locations_y.push_back(v->y);
    } else if (const Count* v = std::get_if<Count>(&a)) {
      (void)v;  // bare count outside a target answers nothing scoreable
      out.invalid += 1;
    } else {
      out.invalid += 1;  // InvalidSlot
    }
  }
  return out;
}

// first candidate scores, the rest are spurious; absence is a missing slot
template <typename T>
std::optional<T> take_single(const std::vector<T>& candidates, ItemScore& score) {
  if (candidates.empty()) {
    score.missing_slots += 1;
    return std::nullopt;
  }
  score.spurious_slots += static_cast<long>(candidates.size()) - 1;
  return candidates.front();
}

inline void score_pairs(const std::vector<CategoryCount>& gt,
                        const std::vector<CategoryCount>& pred, ItemScore& score) {
  long n = static_cast<long>(gt.size());
  long m = static_cast<long>(pred.size());
  if (m < n) score.missing_slots += n - m;
  if (m > n) score.spurious_slots += m - n;

  std::map<std::string, long> gt_cats;
  std::map<std::string, long> pred_cats;
  std::map<std::pair<std::string, int>, long> gt_joint;
  std::map<std::pair<std::string, int>, long> pred_joint;
  for (const auto& p : gt) {
    gt_cats[p.category] += 1;
    gt_joint[{p.category, p.count}] += 1;
  }
  for (const auto& p : pred) {
    pred_cats[p.category] += 1;
    pred_joint[{p.category, p.count}] += 1;
  }
  long cat_hit = 0;
  for (const auto& [cat, c] : gt_cats) {
    auto it = pred_cats.find(cat);
    if (it != pred_cats.end()) cat_hit += std::min(c, it->second);
  }
  long joint_hit = 0;
  for (const auto& [key, c] : gt_joint) {
    auto it = pred_joint.find(key);
    if (it != pred_joint.end()) joint_hit += std::min(c, it->second);
  }
  score.cat.num += cat_hit;
  score.cat.den += n;
  score.cat_count.num += joint_hit;
  score.cat_count.den += n;
}

}  // namespace detail

inline ItemScore score_item(const QAItem& gt, const PredictionRecord& pred,
                            const CategoryVocabulary& vocab, const EvalConfig& cfg = {}) {
  if (gt.item_id != pred.item_id) {
    throw SchemaError("prediction item_id does not match ground truth: " + pred.item_id);
  }
  ItemScore score;
  score.family = gt.family;
  score.n_qa = gt.n_qa;
  detail::ExtractionBuckets got = detail::bucket_extractions(pred.predicted_text, vocab);
  score.invalid_slots = got.invalid;

  if (const PresenceTruth* truth = std::get_if<PresenceTruth>(&gt.ground_truth)) {
    if (!truth->count_form) {
      score.yes_no.den = 1;
      auto v = detail::take_single(got.yes_no, score);
      if (v && *v == truth->exists) score.yes_no.num = 1;
      score.spurious_slots += static_cast<long>(got.pairs.size());
    } else {
      std::vector<CategoryCount> want = {{truth->category, truth->count}};
      detail::score_pairs(want, got.pairs, score);
      score.spurious_slots += static_cast<long>(got.yes_no.size());
    }
    score.spurious_slots += static_cast<long>(got.cameras.size() + got.categories.size() +
                                              got.distances.size() + got.locations_x.size());
    return score;
  }

  if (const DirectionTruth* truth = std::get_if<DirectionTruth>(&gt.ground_truth)) {
    score.cam.den = 1;
    auto cam = detail::take_single(got.cameras, score);
    if (cam && *cam == truth->camera) score.cam.num = 1;
    detail::score_pairs(truth->targets, got.pairs, score);
    score.spurious_slots += static_cast<long>(got.yes_no.size() + got.categories.size() +
                                              got.distances.size() + got.locations_x.size());
    return score;
  }

  if (const DistanceTruth* truth = std::get_if<DistanceTruth>(&gt.ground_truth)) {
    score.cat_rd.den = 1;
    auto cat = detail::take_single(got.categories, score);
    auto dst = detail::take_single(got.distances, score);
    bool cat_ok = cat && *cat == truth->category;
    if (dst) {
      double err = std::fabs(*dst - round2(truth->distance));
      score.rd_abs_err = err;
      if (cat_ok && err <= cfg.rd_tolerance) score.cat_rd.num = 1;
    }
    score.spurious_slots += static_cast<long>(got.yes_no.size() + got.cameras.size() +
                                              got.pairs.size() + got.locations_x.size());
    return score;
  }

  const LocationTruth* truth = std::get_if<LocationTruth>(&gt.ground_truth);
  score.cat_loc.den = 1;
  auto cat = detail::take_single(got.categories, score);
  if (cat && *cat == truth->category) score.cat_loc.num = 1;
  if (!got.locations_x.empty()) {
    score.spurious_slots += static_cast<long>(got.locations_x.size()) - 1;
    score.loc_x_abs_err = std::fabs(got.locations_x.front() - round2(truth->x));
    score.loc_y_abs_err = std::fabs(got.locations_y.front() - round2(truth->y));
  } else {
    score.missing_slots += 1;
  }
  score.spurious_slots += static_cast<long>(got.yes_no.size() + got.cameras.size() +
                                            got.pairs.size() + got.distances.size());
  return score;
}

struct NQaRates {
  Rate cat;
  Rate cat_count;
  bool operator==(const NQaRates&) const = default;
};

struct EvalReport {
  SgpScores sgp;
  Rate yes_no;
  Rate cat;
  Rate cat_count;
  Rate cam;
  Rate cat_rd;
  Rate cat_loc;
  std::optional<double> rd_mae;
  std::optional<double> loc_x_mae;
  std::optional<double> loc_y_mae;
  long rd_samples = 0;
  long loc_samples = 0;
  std::map<int, NQaRates> by_n_qa;  // direction items only
  long items = 0;
  long missing_predictions = 0;
  long missing_slots = 0;
  long invalid_slots = 0;
  long spurious_slots = 0;
};

// Predictions may cover any subset of the ground truth; uncovered items are
// scored fully incorrect. A prediction for an unknown item or a duplicate
// item_id is a schema violation. Nothing inside predicted_text is fatal.
inline EvalReport evaluate_corpus(const std::vector<QAItem>& gt,
                                  const std::vector<PredictionRecord>& preds,
                                  const CategoryVocabulary& vocab, const EvalConfig& cfg = {},
                                  int jobs = 1) {
  std::map<std::string, const QAItem*> by_id;
  for (const QAItem& item : gt) {
    if (!by_id.emplace(item.item_id, &item).second) {
      throw SchemaError("duplicate item_id in ground truth: " + item.item_id);
    }
  }
  std::map<std::string, const PredictionRecord*> pred_by_id;
  for (const PredictionRecord& p : preds) {
    if (by_id.find(p.item_id) == by_id.end()) {
      throw SchemaError("prediction for unknown item_id: " + p.item_id);
    }
    if (!pred_by_id.emplace(p.item_id, &p).second) {
      throw SchemaError("duplicate prediction for item_id: " + p.item_id);
    }
  }

  std::vector<ItemScore> scores(gt.size());
  std::vector<std::string> ref_texts(gt.size());
  std::vector<std::string> hyp_texts(gt.size());
  parallel_for(gt.size(), jobs, [&](std::size_t i) {
    const QAItem& item = gt[i];
    auto it = pred_by_id.find(item.item_id);
    if (it == pred_by_id.end()) {
      PredictionRecord empty{item.item_id, ""};
      scores[i] = score_item(item, empty, vocab, cfg);
      scores[i].missing_prediction = true;
      hyp_texts[i] = "";
    } else {
      scores[i] = score_item(item, *it->second, vocab, cfg);
      hyp_texts[i] = strip_markup(it->second->predicted_text, StripMode::normalized);
    }
    ref_texts[i] = strip_markup(item.answer_markup, StripMode::normalized);
  });

  EvalReport report;
  report.items = static_cast<long>(gt.size());
  std::vector<double> rd_errs;
  std::vector<double> loc_x_errs;
  std::vector<double> loc_y_errs;
  for (const ItemScore& s : scores) {
    report.yes_no += s.yes_no;
    report.cat += s.cat;
    report.cat_count += s.cat_count;
    report.cam += s.cam;
    report.cat_rd += s.cat_rd;
    report.cat_loc += s.cat_loc;
    if (s.rd_abs_err) rd_errs.push_back(*s.rd_abs_err);
    if (s.loc_x_abs_err) {
      loc_x_errs.push_back(*s.loc_x_abs_err);
      loc_y_errs.push_back(*s.loc_y_abs_err);
    }
    if (s.family == TaskFamily::direction) {
      NQaRates& bucket = report.by_n_qa[s.n_qa];
      bucket.cat += s.cat;
      bucket.cat_count += s.cat_count;
    }
    report.missing_predictions += s.missing_prediction ? 1 : 0;
    report.missing_slots += s.missing_slots;
    report.invalid_slots += s.invalid_slots;
    report.spurious_slots += s.spurious_slots;
  }
  report.rd_samples = static_cast<long>(rd_errs.size());
  report.loc_samples = static_cast<long>(loc_x_errs.size());
  if (!rd_errs.empty()) report.rd_mae = mean_sorted(std::move(rd_errs));
  if (!loc_x_errs.empty()) {
    report.loc_x_mae = mean_sorted(std::move(loc_x_errs));
    report.loc_y_mae = mean_sorted(std::move(loc_y_errs));
  }
  if (!gt.empty()) report.sgp = sgp_suite(ref_texts, hyp_texts);
  return report;
}

inline std::map<int, NQaRates> accuracy_by_n_qa(const std::vector<QAItem>& gt,
                                                const std::vector<PredictionRecord>& preds,
                                                const CategoryVocabulary& vocab,
                                                const EvalConfig& cfg = {}) {
  return evaluate_corpus(gt, preds, vocab, cfg).by_n_qa;
}

// ---------------------------------------------------------------------------
// Report rendering

namespace detail {

inline std::string fmt3(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

inline std::string rate_cell(const Rate& r) {
  if (r.den == 0) return "n/a";
  return fmt3(r.value()) + " (" + std::to_string(r.num) + "/" + std::to_string(r.den) + ")";
}

}  // namespace detail

inline std::string render_report_table(const EvalReport& r) {
  std::string out;
  auto row = [&](std::string_view name, const std::string& cell) {
    out += name;
    if (name.size() < 14) out.append(14 - name.size(), ' ');
    out += cell;
    out += '\n';
  };
  row("items", std::to_string(r.items));
  row("bleu1", detail::fmt3(r.sgp.bleu1));
  row("bleu4", detail::fmt3(r.sgp.bleu4));
  row("meteor", detail::fmt3(r.sgp.meteor));
  row("rouge1_f", detail::fmt3(r.sgp.rouge1_f));
  row("avg_sgp", detail::fmt3(r.sgp.avg));
  row("yes_no_acc", detail::rate_cell(r.yes_no));
  row("cat_acc", detail::rate_cell(r.cat));
  row("cat_count_acc", detail::rate_cell(r.cat_count));
  row("cam_acc", detail::rate_cell(r.cam));
  row("cat_rd_acc", detail::rate_cell(r.cat_rd));
  row("cat_loc_acc", detail::rate_cell(r.cat_loc));
  row("rd_mae", r.rd_mae ? detail::fmt3(*r.rd_mae) + " (" + std::to_string(r.rd_samples) + ")"
                         : std::string("n/a"));
  row("loc_x_mae", r.loc_x_mae ? detail::fmt3(*r.loc_x_mae) + " (" +
                                     std::to_string(r.loc_samples) + ")"
                               : std::string("n/a"));
  row("loc_y_mae", r.loc_y_mae ? detail::fmt3(*r.loc_y_mae) + " (" +
                                     std::to_string(r.loc_samples) + ")"
                               : std::string("n/a"));
  row("missing_pred", std::to_string(r.missing_predictions));
  row("missing_slot", std::to_string(r.missing_slots));
  row("invalid_slot", std::to_string(r.invalid_slots));
  row("spurious_slot", std::to_string(r.spurious_slots));
  for (const auto& [n, rates] : r.by_n_qa) {
    row("n_qa=" + std::to_string(n),
        detail::rate_cell(rates.cat) + "  " + detail::rate_cell(rates.cat_count));
  }
  return out;
}

}  // namespace mqa

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mqa/errors.hpp"
#include "mqa/stem.hpp"
#include "mqa/tokenize.hpp"

namespace mqa {

// Mean that is invariant under permutation of the inputs: values are summed
// in ascending order so parallel or reordered pipelines agree bit for bit.
inline double mean_sorted(std::vector<double> values) {
  if (values.empty()) throw ConfigError("mean of empty sequence");
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

namespace detail {

inline std::map<std::string, int> counts_of(const std::vector<std::string>& toks) {
  std::map<std::string, int> c;
  for (const auto& t : toks) c[t] += 1;
  return c;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// BLEU (corpus level, single reference per hypothesis, uniform weights,
// no smoothing: any empty n-gram overlap zeroes the score)

inline double bleu_corpus(const std::vector<std::vector<std::string>>& refs,
                          const std::vector<std::vector<std::string>>& hyps, int max_n) {
  if (refs.size() != hyps.size()) throw LengthMismatchError("reference/hypothesis count mismatch");
  if (refs.empty()) throw ConfigError("bleu over empty corpus");
  if (max_n < 1) throw ConfigError("bleu order must be >= 1");

  std::vector<long> num(static_cast<std::size_t>(max_n), 0);
  std::vector<long> den(static_cast<std::size_t>(max_n), 0);
  long ref_len = 0;
  long hyp_len = 0;

  auto grams = [](const std::vector<std::string>& toks, int n) {
    std::map<std::string, int> g;
    if (static_cast<int>(toks.size()) < n) return g;
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= toks.size(); ++i) {
      std::string key;
      for (int k = 0; k < n; ++k) {
        if (k > 0) key.push_back('\x1f');
        key += toks[i + static_cast<std::size_t>(k)];
      }
      g[key] += 1;
    }
    return g;
  };

  for (std::size_t s = 0; s < refs.size(); ++s) {
    ref_len += static_cast<long>(refs[s].size());
    hyp_len += static_cast<long>(hyps[s].size());
    for (int n = 1; n <= max_n; ++n) {
      auto hg = grams(hyps[s], n);
      auto rg = grams(refs[s], n);
      long d = static_cast<long>(hyps[s].size()) - n + 1;
      if (d > 0) den[static_cast<std::size_t>(n - 1)] += d;
      for (const auto& [gram, hc] : hg) {
        auto it = rg.find(gram);
        if (it != rg.end()) {
          num[static_cast<std::size_t>(n - 1)] += std::min(hc, it->second);
        }
      }
    }
  }

  if (hyp_len == 0) return 0.0;
  double log_sum = 0.0;
  for (int n = 0; n < max_n; ++n) {
    if (num[static_cast<std::size_t>(n)] == 0 || den[static_cast<std::size_t>(n)] == 0) return 0.0;
    log_sum += std::log(static_cast<double>(num[static_cast<std::size_t>(n)]) /
                        static_cast<double>(den[static_cast<std::size_t>(n)]));
  }
  double bp = hyp_len >= ref_len
                  ? 1.0
                  : std::exp(1.0 - static_cast<double>(ref_len) / static_cast<double>(hyp_len));
  return bp * std::exp(log_sum / static_cast<double>(max_n));
}

// ---------------------------------------------------------------------------
// METEOR (single reference, exact stage then Porter-stem stage,
// alpha = 0.9, beta = 3, gamma = 0.5)

namespace detail {

struct MeteorMatchPlan {
  // per hypothesis position: matched reference position or -1
  std::vector<int> align;
  int matches = 0;
};

inline int chunk_count(const std::vector<int>& align) {
  int chunks = 0;
  int prev_i = -2;
  int prev_j = -2;
  for (int i = 0; i < static_cast<int>(align.size()); ++i) {
    if (align[static_cast<std::size_t>(i)] < 0) continue;
    int j = align[static_cast<std::size_t>(i)];
    if (!(i == prev_i + 1 && j == prev_j + 1)) ++chunks;
    prev_i = i;
    prev_j = j;
  }
  return chunks;
}

// Match budgets fixed by type counting: exact pairs first (per-token multiset
// intersection), then stem pairs over what remains (per-stem multiset
// intersection). Every admissible alignment realizes the same match count;
// only the chunk layout is searched.
struct MeteorBudgets {
  std::map<std::string, int> exact;           // token -> exact pairs to place
  std::map<std::string, int> stem;            // stem -> stem pairs to place
  std::vector<std::string> hyp_stems;
  std::vector<std::string> ref_stems;
  int total = 0;
};

inline MeteorBudgets meteor_budgets(const std::vector<std::string>& hyp,
                                    const std::vector<std::string>& ref) {
  MeteorBudgets b;
  auto hc = counts_of(hyp);
  auto rc = counts_of(ref);
  std::map<std::string, int> hyp_res_by_stem;
  std::map<std::string, int> ref_res_by_stem;
  b.hyp_stems.reserve(hyp.size());
  for (const auto& t : hyp) b.hyp_stems.push_back(porter_stem(t));
  b.ref_stems.reserve(ref.size());
  for (const auto& t : ref) b.ref_stems.push_back(porter_stem(t));

  for (const auto& [tok, n] : hc) {
    auto it = rc.find(tok);
    int e = it == rc.end() ? 0 : std::min(n, it->second);
    if (e > 0) b.exact[tok] = e;
    if (n - e > 0) hyp_res_by_stem[porter_stem(tok)] += n - e;
  }
  for (const auto& [tok, n] : rc) {
    auto it = hc.find(tok);
    int e = it == hc.end() ? 0 : std::min(n, it->second);
    if (n - e > 0) ref_res_by_stem[porter_stem(tok)] += n - e;
  }
  for (const auto& [st, n] : hyp_res_by_stem) {
    auto it = ref_res_by_stem.find(st);
    if (it != ref_res_by_stem.end()) {
      int s = std::min(n, it->second);
      if (s > 0) b.stem[st] = s;
    }
  }
  for (const auto& [tok, e] : b.exact) b.total += e;
  for (const auto& [st, s] : b.stem) b.total += s;
  return b;
}

// Deterministic greedy placement: exact pass then stem pass, each walking
// hypothesis positions left to right and preferring the reference slot that
// extends the current chunk.
inline MeteorMatchPlan meteor_greedy(const std::vector<std::string>& hyp,
                                     const std::vector<std::string>& ref, MeteorBudgets b) {
  MeteorMatchPlan plan;
  plan.align.assign(hyp.size(), -1);
  std::vector<bool> used(ref.size(), false);

  auto prev_ref_before = [&](int i) {
    for (int p = i - 1; p >= 0; --p) {
      if (plan.align[static_cast<std::size_t>(p)] >= 0) {
        return plan.align[static_cast<std::size_t>(p)];
      }
    }
    return -1;
  };

  for (int pass = 0; pass < 2; ++pass) {
    for (int i = 0; i < static_cast<int>(hyp.size()); ++i) {
      if (plan.align[static_cast<std::size_t>(i)] >= 0) continue;
      const std::string& tok = hyp[static_cast<std::size_t>(i)];
      auto compatible = [&](int j) {
        const std::string& rt = ref[static_cast<std::size_t>(j)];
        if (pass == 0) return rt == tok;
        return rt != tok && b.ref_stems[static_cast<std::size_t>(j)] ==
                                b.hyp_stems[static_cast<std::size_t>(i)];
      };
      int* budget = nullptr;
      if (pass == 0) {
        auto it = b.exact.find(tok);
        if (it == b.exact.end() || it->second == 0) continue;
        budget = &it->second;
      } else {
        auto it = b.stem.find(b.hyp_stems[static_cast<std::size_t>(i)]);
        if (it == b.stem.end() || it->second == 0) continue;
        budget = &it->second;
      }
      int want = prev_ref_before(i) + 1;
      int pick = -1;
      if (want >= 0 && want < static_cast<int>(ref.size()) &&
          !used[static_cast<std::size_t>(want)] && compatible(want)) {
        pick = want;
      } else {
        for (int j = 0; j < static_cast<int>(ref.size()); ++j) {
          if (!used[static_cast<std::size_t>(j)] && compatible(j)) {
            pick = j;
            break;
          }
        }
      }
      if (pick < 0) continue;
      plan.align[static_cast<std::size_t>(i)] = pick;
      used[static_cast<std::size_t>(pick)] = true;
      *budget -= 1;
      plan.matches += 1;
    }
  }
  return plan;
}

// Exhaustive chunk minimization for short pairs. Walks hypothesis positions
// in order; at each, either places a budgeted exact or stem match (trying
// the chunk-extending slot first) or skips when the remaining supply still
// covers the budgets. Prunes on the incumbent chunk count and an expansion
// cap; the incumbent starts from the greedy plan so a cap hit still returns
// a valid full matching.
struct MeteorSearch {
  const std::vector<std::string>& hyp;
  const std::vector<std::string>& ref;
  MeteorBudgets& b;
  std::vector<int> align;
  std::vector<bool> used;
  std::vector<std::map<std::string, int>> tok_after;   // per position: type supply at i..end
  std::vector<std::map<std::string, int>> stem_after;  // same for residual stems
  long expansions = 0;
  long cap = 200000;
  int placed = 0;
  int best_chunks;
  std::vector<int> best_align;

  MeteorSearch(const std::vector<std::string>& h, const std::vector<std::string>& r,
               MeteorBudgets& budgets, const MeteorMatchPlan& incumbent)
      : hyp(h), ref(r), b(budgets), best_chunks(chunk_count(incumbent.align)),
        best_align(incumbent.align) {
    align.assign(hyp.size(), -1);
    used.assign(ref.size(), false);
    tok_after.resize(hyp.size() + 1);
    stem_after.resize(hyp.size() + 1);
    for (int i = static_cast<int>(hyp.size()) - 1; i >= 0; --i) {
      tok_after[static_cast<std::size_t>(i)] = tok_after[static_cast<std::size_t>(i) + 1];
      stem_after[static_cast<std::size_t>(i)] = stem_after[static_cast<std::size_t>(i) + 1];
      tok_after[static_cast<std::size_t>(i)][hyp[static_cast<std::size_t>(i)]] += 1;
      stem_after[static_cast<std::size_t>(i)][b.hyp_stems[static_cast<std::size_t>(i)]] += 1;
    }
  }

  // supply from position i onward still meets every budget
  bool feasible(int i) const {
    for (const auto& [tok, need] : b.exact) {
      if (need == 0) continue;
      auto it = tok_after[static_cast<std::size_t>(i)].find(tok);
      if (it == tok_after[static_cast<std::size_t>(i)].end() || it->second < need) return false;
    }
    for (const auto& [st, need] : b.stem) {
      if (need == 0) continue;
      auto its = stem_after[static_cast<std::size_t>(i)].find(st);
      int supply = its == stem_after[static_cast<std::size_t>(i)].end() ? 0 : its->second;
      // exact pairs consume same-stem positions too
      for (const auto& [tok, e] : b.exact) {
        if (e == 0 || porter_stem(tok) != st) continue;
        auto itt = tok_after[static_cast<std::size_t>(i)].find(tok);
        int have = itt == tok_after[static_cast<std::size_t>(i)].end() ? 0 : itt->second;
        supply -= std::min(have, e);
      }
      if (supply < need) return false;
    }
    return true;
  }

  void dfs(int i, int prev_i, int prev_j, int chunks) {
    if (chunks >= best_chunks) return;
    if (++expansions > cap) return;
    if (i == static_cast<int>(hyp.size())) {
      if (placed == b.total) {  // only full matchings count
        best_chunks = chunks;
        best_align = align;
      }
      return;
    }
    const std::string& tok = hyp[static_cast<std::size_t>(i)];
    const std::string& st = b.hyp_stems[static_cast<std::size_t>(i)];

    auto try_place = [&](int j, bool exact) {
      int add = (i == prev_i + 1 && j == prev_j + 1) ? 0 : 1;
      int* budget = exact ? &b.exact[tok] : &b.stem[st];
      align[static_cast<std::size_t>(i)] = j;
      used[static_cast<std::size_t>(j)] = true;
      *budget -= 1;
      placed += 1;
      dfs(i + 1, i, j, chunks + add);
      placed -= 1;
      *budget += 1;
      used[static_cast<std::size_t>(j)] = false;
      align[static_cast<std::size_t>(i)] = -1;
    };

    auto candidates = [&](bool exact) {
      std::vector<int> js;
      int want = prev_j + 1;
      auto ok = [&](int j) {
        if (used[static_cast<std::size_t>(j)]) return false;
        const std::string& rt = ref[static_cast<std::size_t>(j)];
        if (exact) return rt == tok;
        return rt != tok && b.ref_stems[static_cast<std::size_t>(j)] == st;
      };
      if (i == prev_i + 1 && want >= 0 && want < static_cast<int>(ref.size()) && ok(want)) {
        js.push_back(want);
      }
      for (int j = 0; j < static_cast<int>(ref.size()); ++j) {
        if (j != want && ok(j)) js.push_back(j);
      }
      return js;
    };

    auto ite = b.exact.find(tok);
    if (ite != b.exact.end() && ite->second > 0) {
      for (int j : candidates(true)) try_place(j, true);
    }
    auto its = b.stem.find(st);
    if (its != b.stem.end() && its->second > 0) {
      for (int j : candidates(false)) try_place(j, false);
    }
    if (feasible(i + 1)) dfs(i + 1, prev_i, prev_j, chunks);
  }
};

inline constexpr int kMeteorSearchLimit = 16;  // max tokens per side for exhaustive search

}  // namespace detail

inline double meteor_sentence(const std::vector<std::string>& ref,
                              const std::vector<std::string>& hyp) {
  if (ref.empty() || hyp.empty()) return 0.0;
  detail::MeteorBudgets budgets = detail::meteor_budgets(hyp, ref);
  if (budgets.total == 0) return 0.0;

  detail::MeteorBudgets greedy_budgets = budgets;
  detail::MeteorMatchPlan plan = detail::meteor_greedy(hyp, ref, std::move(greedy_budgets));
  int chunks = detail::chunk_count(plan.align);
  if (hyp.size() <= static_cast<std::size_t>(detail::kMeteorSearchLimit) &&
      ref.size() <= static_cast<std::size_t>(detail::kMeteorSearchLimit)) {
    detail::MeteorSearch search(hyp, ref, budgets, plan);
    search.dfs(0, -2, -2, 0);
    chunks = search.best_chunks;
  }

  double m = static_cast<double>(budgets.total);
  double p = m / static_cast<double>(hyp.size());
  double r = m / static_cast<double>(ref.size());
  double f = (p * r) / (0.9 * p + 0.1 * r);
  double frag = static_cast<double>(chunks) / m;
  double penalty = 0.5 * frag * frag * frag;
  return f * (1.0 - penalty);
}

// ---------------------------------------------------------------------------
// ROUGE-1 F (single reference, clipped unigram overlap)

inline double rouge1_f_sentence(const std::vector<std::string>& ref,
                                const std::vector<std::string>& hyp) {
  if (ref.empty() || hyp.empty()) return 0.0;
  auto rc = detail::counts_of(ref);
  auto hc = detail::counts_of(hyp);
  long overlap = 0;
  for (const auto& [tok, n] : hc) {
    auto it = rc.find(tok);
    if (it != rc.end()) overlap += std::min(n, it->second);
  }
  if (overlap == 0) return 0.0;
  double p = static_cast<double>(overlap) / static_cast<double>(hyp.size());
  double r = static_cast<double>(overlap) / static_cast<double>(ref.size());
  return 2.0 * p * r / (p + r);
}

// ---------------------------------------------------------------------------
// Suite

struct SgpScores {
  double bleu1 = 0.0;
  double bleu4 = 0.0;
  double meteor = 0.0;
  double rouge1_f = 0.0;
  double avg = 0.0;
  bool operator==(const SgpScores&) const = default;
};

// refs/hyps are raw sentence strings; tokenization is applied here so every
// caller scores identically.
inline SgpScores sgp_suite(const std::vector<std::string>& refs,
                           const std::vector<std::string>& hyps) {
  if (refs.size() != hyps.size()) throw LengthMismatchError("reference/hypothesis count mismatch");
  if (refs.empty()) throw ConfigError("scoring an empty corpus");
  std::vector<std::vector<std::string>> rt;
  std::vector<std::vector<std::string>> ht;
  rt.reserve(refs.size());
  ht.reserve(hyps.size());
  for (const auto& s : refs) rt.push_back(tokenize(s));
  for (const auto& s : hyps) ht.push_back(tokenize(s));

  SgpScores out;
  out.bleu1 = bleu_corpus(rt, ht, 1);
  out.bleu4 = bleu_corpus(rt, ht, 4);
  std::vector<double> meteors;
  std::vector<double> rouges;
  meteors.reserve(refs.size());
  rouges.reserve(refs.size());
  for (std::size_t i = 0; i < refs.size(); ++i) {
    meteors.push_back(meteor_sentence(rt[i], ht[i]));
    rouges.push_back(rouge1_f_sentence(rt[i], ht[i]));
  }
  out.meteor = mean_sorted(std::move(meteors));
  out.rouge1_f = mean_sorted(std::move(rouges));
  out.avg = (out.bleu1 + out.bleu4 + out.meteor + out.rouge1_f) / 4.0;
  return out;
}

}  // namespace mqa

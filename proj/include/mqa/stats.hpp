#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mqa/errors.hpp"
#include "mqa/generate.hpp"
#include "mqa/markup.hpp"
#include "mqa/tokenize.hpp"

#include "json.hpp"

namespace mqa {

// function words dropped from the cloud views; raw counts keep everything
inline const std::set<std::string>& stats_stopwords() {
  static const std::set<std::string> words = {
      "a",    "an",   "and",  "any",  "are",  "as",    "at",    "be",    "been", "by",
      "can",  "do",   "does", "for",  "from", "how",   "if",    "in",    "is",   "it",
      "its",  "many", "may",  "of",   "on",   "or",    "per",   "that",  "the",  "there",
      "this", "to",   "was",  "were", "what", "which", "while", "will",  "with", "would",
  };
  return words;
}

struct StatsBundle {
  std::map<std::string, long> word_freq_questions;
  std::map<std::string, long> word_freq_answers;
  std::map<std::string, long> cloud_questions;  // stopwords and punctuation removed
  std::map<std::string, long> cloud_answers;
  long yes_count = 0;
  long no_count = 0;
  std::map<int, long> count_hist;  // one entry per counted target slot
  std::map<int, long> n_qa_hist;   // one entry per item
  std::array<long, 40> distance_hist{};       // 1 m bins over [0, 40)
  std::vector<long> location_grid =           // 1 m cells over [-40, 40)^2,
      std::vector<long>(80 * 80, 0);          // row-major ix * 80 + iy
  std::map<std::string, long> per_family_counts;
  bool operator==(const StatsBundle&) const = default;
};

namespace detail {

inline bool cloud_token(const std::string& tok) {
  if (stats_stopwords().count(tok)) return false;
  for (char c : tok) {
    if (ascii_alnum(c)) return true;  // keep words and numbers, drop bare punctuation
  }
  return false;
}

inline void add_text_freq(const std::string& text, std::map<std::string, long>& raw,
                          std::map<std::string, long>& cloud) {
  for (const std::string& tok : tokenize(text)) {
    raw[tok] += 1;
    if (cloud_token(tok)) cloud[tok] += 1;
  }
}

inline int clamp_bin(double v, double lo, int bins) {
  int b = static_cast<int>(std::floor(v - lo));
  if (b < 0) b = 0;
  if (b >= bins) b = bins - 1;
  return b;
}

}  // namespace detail

inline StatsBundle compute_stats(const std::vector<QAItem>& corpus) {
  StatsBundle b;
  for (const QAItem& item : corpus) {
    b.per_family_counts[std::string(family_name(item.family))] += 1;
    b.n_qa_hist[item.n_qa] += 1;
    detail::add_text_freq(strip_markup(item.question, StripMode::normalized),
                          b.word_freq_questions, b.cloud_questions);
    detail::add_text_freq(strip_markup(item.answer_markup, StripMode::normalized),
                          b.word_freq_answers, b.cloud_answers);

    if (const PresenceTruth* t = std::get_if<PresenceTruth>(&item.ground_truth)) {
      if (t->count_form) {
        b.count_hist[t->count] += 1;
      } else {
        (t->exists ? b.yes_count : b.no_count) += 1;
      }
    } else if (const DirectionTruth* t = std::get_if<DirectionTruth>(&item.ground_truth)) {
      for (const CategoryCount& pair : t->targets) b.count_hist[pair.count] += 1;
    } else if (const DistanceTruth* t = std::get_if<DistanceTruth>(&item.ground_truth)) {
      b.distance_hist[static_cast<std::size_t>(detail::clamp_bin(t->distance, 0.0, 40))] += 1;
    } else if (const LocationTruth* t = std::get_if<LocationTruth>(&item.ground_truth)) {
      int ix = detail::clamp_bin(t->x, -40.0, 80);
      int iy = detail::clamp_bin(t->y, -40.0, 80);
      b.location_grid[static_cast<std::size_t>(ix * 80 + iy)] += 1;
    }
  }
  return b;
}

enum class StatsFormat { tabular, structured };

// ---------------------------------------------------------------------------
// Structured (single JSON document)

inline nlohmann::json stats_to_json(const StatsBundle& b) {
  nlohmann::json j;
  j["schema"] = "mqa.stats.v1";
  j["word_freq_questions"] = b.word_freq_questions;
  j["word_freq_answers"] = b.word_freq_answers;
  j["cloud_questions"] = b.cloud_questions;
  j["cloud_answers"] = b.cloud_answers;
  j["yes_no"] = {{"yes", b.yes_count}, {"no", b.no_count}};
  nlohmann::json ch = nlohmann::json::object();
  for (const auto& [k, v] : b.count_hist) ch[std::to_string(k)] = v;
  j["count_hist"] = ch;
  nlohmann::json nh = nlohmann::json::object();
  for (const auto& [k, v] : b.n_qa_hist) nh[std::to_string(k)] = v;
  j["n_qa_hist"] = nh;
  j["distance_hist"] = {{"min_m", 0},
                        {"max_m", 40},
                        {"bin_width_m", 1},
                        {"counts", std::vector<long>(b.distance_hist.begin(),
                                                     b.distance_hist.end())}};
  nlohmann::json cells = nlohmann::json::array();
  for (int ix = 0; ix < 80; ++ix) {
    for (int iy = 0; iy < 80; ++iy) {
      long c = b.location_grid[static_cast<std::size_t>(ix * 80 + iy)];
      if (c != 0) cells.push_back({ix, iy, c});
    }
  }
  j["location_grid"] = {{"min_m", -40}, {"max_m", 40},   {"cell_m", 1},
                        {"rows", 80},   {"cols", 80},    {"cells", cells}};
  j["per_family"] = b.per_family_counts;
  return j;
}

inline StatsBundle stats_from_json(const nlohmann::json& j) {
  try {
    if (j.at("schema").get<std::string>() != "mqa.stats.v1") {
      throw SchemaError("unrecognized stats schema");
    }
    StatsBundle b;
    b.word_freq_questions = j.at("word_freq_questions").get<std::map<std::string, long>>();
    b.word_freq_answers = j.at("word_freq_answers").get<std::map<std::string, long>>();
    b.cloud_questions = j.at("cloud_questions").get<std::map<std::string, long>>();
    b.cloud_answers = j.at("cloud_answers").get<std::map<std::string, long>>();
    b.yes_count = j.at("yes_no").at("yes").get<long>();
    b.no_count = j.at("yes_no").at("no").get<long>();
    for (const auto& [k, v] : j.at("count_hist").items()) b.count_hist[std::stoi(k)] = v.get<long>();
    for (const auto& [k, v] : j.at("n_qa_hist").items()) b.n_qa_hist[std::stoi(k)] = v.get<long>();
    auto counts = j.at("distance_hist").at("counts").get<std::vector<long>>();
    if (counts.size() != b.distance_hist.size()) throw SchemaError("distance_hist size");
    std::copy(counts.begin(), counts.end(), b.distance_hist.begin());
    for (const auto& cell : j.at("location_grid").at("cells")) {
      int ix = cell.at(0).get<int>();
      int iy = cell.at(1).get<int>();
      if (ix < 0 || ix >= 80 || iy < 0 || iy >= 80) throw SchemaError("grid cell out of range");
      b.location_grid[static_cast<std::size_t>(ix * 80 + iy)] = cell.at(2).get<long>();
    }
    b.per_family_counts = j.at("per_family").get<std::map<std::string, long>>();
    return b;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("stats document: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Tabular (directory of TSV files, one table each, headers first)

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("write failed: " + path.string());
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return content;
}

inline std::vector<std::vector<std::string>> parse_tsv(const std::string& content,
                                                       const std::string& expect_header) {
  std::vector<std::vector<std::string>> rows;
  std::size_t pos = 0;
  bool first = true;
  while (pos < content.size()) {
    std::size_t nl = content.find('\n', pos);
    if (nl == std::string::npos) nl = content.size();
    std::string line = content.substr(pos, nl - pos);
    pos = nl + 1;
    if (first) {
      if (line != expect_header) throw SchemaError("unexpected table header: " + line);
      first = false;
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::size_t c = 0;
    while (true) {
      std::size_t tab = line.find('\t', c);
      if (tab == std::string::npos) {
        cols.push_back(line.substr(c));
        break;
      }
      cols.push_back(line.substr(c, tab - c));
      c = tab + 1;
    }
    rows.push_back(std::move(cols));
  }
  if (first) throw SchemaError("empty table, expected header: " + expect_header);
  return rows;
}

inline std::string freq_tsv(const std::map<std::string, long>& freq) {
  std::string out = "token\tcount\n";
  for (const auto& [tok, c] : freq) {
    out += tok;
    out += '\t';
    out += std::to_string(c);
    out += '\n';
  }
  return out;
}

inline std::map<std::string, long> freq_from_tsv(const std::string& content) {
  std::map<std::string, long> freq;
  for (const auto& row : parse_tsv(content, "token\tcount")) {
    if (row.size() != 2) throw SchemaError("bad frequency row");
    freq[row[0]] = std::stol(row[1]);
  }
  return freq;
}

}  // namespace detail

inline void emit_stats(const StatsBundle& b, const std::string& path, StatsFormat format) {
  namespace fs = std::filesystem;
  if (format == StatsFormat::structured) {
    detail::write_file(path, stats_to_json(b).dump(2) + "\n");
    return;
  }
  std::error_code ec;
  fs::create_directories(path, ec);
  if (ec) throw IoError("cannot create directory " + path + ": " + ec.message());
  fs::path dir(path);

  detail::write_file(dir / "word_freq_questions.tsv", detail::freq_tsv(b.word_freq_questions));
  detail::write_file(dir / "word_freq_answers.tsv", detail::freq_tsv(b.word_freq_answers));
  detail::write_file(dir / "cloud_questions.tsv", detail::freq_tsv(b.cloud_questions));
  detail::write_file(dir / "cloud_answers.tsv", detail::freq_tsv(b.cloud_answers));

  detail::write_file(dir / "yes_no.tsv", "answer\tcount\nyes\t" + std::to_string(b.yes_count) +
                                             "\nno\t" + std::to_string(b.no_count) + "\n");

  std::string count_hist = "count\titems\n";
  for (const auto& [k, v] : b.count_hist) {
    count_hist += std::to_string(k) + "\t" + std::to_string(v) + "\n";
  }
  detail::write_file(dir / "count_hist.tsv", count_hist);

  std::string n_qa = "n_qa\titems\n";
  for (const auto& [k, v] : b.n_qa_hist) {
    n_qa += std::to_string(k) + "\t" + std::to_string(v) + "\n";
  }
  detail::write_file(dir / "n_qa_hist.tsv", n_qa);

  std::string dist = "bin_low_m\tbin_high_m\tcount\n";
  for (std::size_t i = 0; i < b.distance_hist.size(); ++i) {
    dist += std::to_string(i) + "\t" + std::to_string(i + 1) + "\t" +
            std::to_string(b.distance_hist[i]) + "\n";
  }
  detail::write_file(dir / "distance_hist.tsv", dist);

  std::string grid = "ix\tiy\tx_low_m\ty_low_m\tcount\n";
  for (int ix = 0; ix < 80; ++ix) {
    for (int iy = 0; iy < 80; ++iy) {
      long c = b.location_grid[static_cast<std::size_t>(ix * 80 + iy)];
      if (c == 0) continue;
      grid += std::to_string(ix) + "\t" + std::to_string(iy) + "\t" + std::to_string(ix - 40) +
              "\t" + std::to_string(iy - 40) + "\t" + std::to_string(c) + "\n";
    }
  }
  detail::write_file(dir / "location_grid.tsv", grid);

  std::string fam = "family\titems\n";
  for (const auto& [k, v] : b.per_family_counts) {
    fam += k + "\t" + std::to_string(v) + "\n";
  }
  detail::write_file(dir / "per_family.tsv", fam);
}

inline StatsBundle read_stats(const std::string& path, StatsFormat format) {
  namespace fs = std::filesystem;
  if (format == StatsFormat::structured) {
    nlohmann::json j = nlohmann::json::parse(detail::read_file(path), nullptr, false);
    if (j.is_discarded()) throw SchemaError("stats file is not valid structured data: " + path);
    return stats_from_json(j);
  }
  fs::path dir(path);
  StatsBundle b;
  try {
    b.word_freq_questions = detail::freq_from_tsv(detail::read_file(dir / "word_freq_questions.tsv"));
    b.word_freq_answers = detail::freq_from_tsv(detail::read_file(dir / "word_freq_answers.tsv"));
    b.cloud_questions = detail::freq_from_tsv(detail::read_file(dir / "cloud_questions.tsv"));
    b.cloud_answers = detail::freq_from_tsv(detail::read_file(dir / "cloud_answers.tsv"));

    for (const auto& row : detail::parse_tsv(detail::read_file(dir / "yes_no.tsv"),
                                             "answer\tcount")) {
      if (row.size() != 2) throw SchemaError("bad yes_no row");
      if (row[0] == "yes") {
        b.yes_count = std::stol(row[1]);
      } else if (row[0] == "no") {
        b.no_count = std::stol(row[1]);
      } else {
        throw SchemaError("bad yes_no key: " + row[0]);
      }
    }
    for (const auto& row : detail::parse_tsv(detail::read_file(dir / "count_hist.tsv"),
                                             "count\titems")) {
      if (row.size() != 2) throw SchemaError("bad count_hist row");
      b.count_hist[std::stoi(row[0])] = std::stol(row[1]);
    }
    for (const auto& row : detail::parse_tsv(detail::read_file(dir / "n_qa_hist.tsv"),
                                             "n_qa\titems")) {
      if (row.size() != 2) throw SchemaError("bad n_qa_hist row");
      b.n_qa_hist[std::stoi(row[0])] = std::stol(row[1]);
    }
    for (const auto& row : detail::parse_tsv(detail::read_file(dir / "distance_hist.tsv"),
                                             "bin_low_m\tbin_high_m\tcount")) {
      if (row.size() != 3) throw SchemaError("bad distance_hist row");
      int bin = std::stoi(row[0]);
      if (bin < 0 || bin >= 40) throw SchemaError("distance bin out of range");
      b.distance_hist[static_cast<std::size_t>(bin)] = std::stol(row[2]);
    }
    for (const auto& row : detail::parse_tsv(detail::read_file(dir / "location_grid.tsv"),
                                             "ix\tiy\tx_low_m\ty_low_m\tcount")) {
      if (row.size() != 5) throw SchemaError("bad location_grid row");
      int ix = std::stoi(row[0]);
      int iy = std::stoi(row[1]);
      if (ix < 0 || ix >= 80 || iy < 0 || iy >= 80) throw SchemaError("grid cell out of range");
      b.location_grid[static_cast<std::size_t>(ix * 80 + iy)] = std::stol(row[4]);
    }
    for (const auto& row : detail::parse_tsv(detail::read_file(dir / "per_family.tsv"),
                                             "family\titems")) {
      if (row.size() != 2) throw SchemaError("bad per_family row");
      b.per_family_counts[row[0]] = std::stol(row[1]);
    }
  } catch (const std::invalid_argument&) {
    throw SchemaError("non-numeric value in stats table");
  } catch (const std::out_of_range&) {
    throw SchemaError("numeric overflow in stats table");
  }
  return b;
}

}  // namespace mqa

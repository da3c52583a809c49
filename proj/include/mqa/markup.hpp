#pragma once

#include <array>
#include <cstddef>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "mqa/ascii.hpp"
#include "mqa/camera.hpp"
#include "mqa/categories.hpp"

namespace mqa {

// ---------------------------------------------------------------------------
// Tag set

enum class TagKind { target, obj, cnt, ans, cam, dst, loc };

inline constexpr std::array<std::string_view, 7> kTagNames = {
    "target", "obj", "cnt", "ans", "cam", "dst", "loc"};

inline std::string_view tag_name(TagKind k) {
  return kTagNames[static_cast<std::size_t>(k)];
}

inline std::optional<TagKind> tag_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kTagNames.size(); ++i) {
    if (kTagNames[i] == name) return static_cast<TagKind>(i);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Document model
//
// Only <target> has children (whitespace runs plus one <cnt> and one <obj>
// leaf), so nesting depth is fixed at one and encoded structurally.

struct TextRun {
  std::string text;
  std::size_t begin = 0;  // byte offset into the source
};

struct LeafNode {
  TagKind kind = TagKind::obj;
  std::string content;    // raw bytes between the delimiters
  std::size_t begin = 0;  // byte range including both delimiters
  std::size_t end = 0;
};

using TargetChild = std::variant<TextRun, LeafNode>;

struct MarkupNode {
  TagKind kind = TagKind::obj;
  std::string content;                // leaf kinds only
  std::vector<TargetChild> children;  // target only
  std::size_t begin = 0;
  std::size_t end = 0;
};

using Piece = std::variant<TextRun, MarkupNode>;

struct MarkupDocument {
  std::string source;
  std::vector<Piece> items;
};

inline const LeafNode* find_child(const MarkupNode& target, TagKind k) {
  for (const TargetChild& c : target.children) {
    if (const LeafNode* leaf = std::get_if<LeafNode>(&c)) {
      if (leaf->kind == k) return leaf;
    }
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// Parsing

enum class ParseMode { strict, lenient };

enum class IssueKind {
  unclosed_tag,
  unknown_tag,
  illegal_nesting,
  empty_content,
  unmatched_close,
  cnt_outside_target,
};

inline std::string_view issue_kind_name(IssueKind k) {
  switch (k) {
    case IssueKind::unclosed_tag: return "unclosed_tag";
    case IssueKind::unknown_tag: return "unknown_tag";
    case IssueKind::illegal_nesting: return "illegal_nesting";
    case IssueKind::empty_content: return "empty_content";
    case IssueKind::unmatched_close: return "unmatched_close";
    case IssueKind::cnt_outside_target: return "cnt_outside_target";
  }
  return "unknown_tag";
}

enum class Severity { warning, error };

inline std::string_view severity_name(Severity s) {
  return s == Severity::error ? "error" : "warning";
}

struct ParseIssue {
  IssueKind kind = IssueKind::unknown_tag;
  Severity severity = Severity::error;
  std::size_t offset = 0;  // byte offset of the construct the issue is about
  std::string detail;
};

struct ParseResult {
  MarkupDocument doc;
  std::vector<ParseIssue> issues;
  bool ok() const {
    for (const ParseIssue& is : issues) {
      if (is.severity == Severity::error) return false;
    }
    return true;
  }
};

namespace detail {

inline bool ws_only(std::string_view s) {
  for (char c : s) {
    if (!ascii_space(c)) return false;
  }
  return true;
}

struct Token {
  enum class Type { text, open, close, unknown };
  Type type = Type::text;
  TagKind kind = TagKind::obj;  // open/close only
  std::size_t begin = 0;
  std::size_t end = 0;
};

// Tag token shape is literal: '<' '/'? [a-z]+ '>'. Anything else, including
// a stray '<', is text. An all-lowercase tag-shaped token with a name outside
// the tag set lexes as `unknown`.
inline std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t text_begin = 0;
  std::size_t i = 0;
  auto flush_text = [&](std::size_t upto) {
    if (upto > text_begin) out.push_back({Token::Type::text, TagKind::obj, text_begin, upto});
  };
  while (i < s.size()) {
    if (s[i] != '<') {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    bool closing = false;
    if (j < s.size() && s[j] == '/') {
      closing = true;
      ++j;
    }
    std::size_t name_begin = j;
    while (j < s.size() && s[j] >= 'a' && s[j] <= 'z') ++j;
    if (j > name_begin && j < s.size() && s[j] == '>') {
      flush_text(i);
      auto kind = tag_from_name(s.substr(name_begin, j - name_begin));
      if (kind) {
        out.push_back({closing ? Token::Type::close : Token::Type::open, *kind, i, j + 1});
      } else {
        out.push_back({Token::Type::unknown, TagKind::obj, i, j + 1});
      }
      i = j + 1;
      text_begin = i;
    } else {
      ++i;
    }
  }
  flush_text(s.size());
  return out;
}

class Parser {
 public:
  Parser(std::string_view src, ParseMode mode) : src_(src), mode_(mode), toks_(lex(src)) {}

  ParseResult run() {
    ParseResult r;
    r.doc.source.assign(src_);
    std::size_t i = 0;
    while (i < toks_.size()) parse_item(i, r.doc.items);
    r.issues = std::move(issues_);
    return r;
  }

 private:
  std::string_view src_;
  ParseMode mode_;
  std::vector<Token> toks_;
  std::vector<ParseIssue> issues_;

  Severity severity() const {
    return mode_ == ParseMode::strict ? Severity::error : Severity::warning;
  }

  void report(IssueKind k, std::size_t offset, std::string detail) {
    issues_.push_back({k, severity(), offset, std::move(detail)});
  }

  std::string_view slice(std::size_t b, std::size_t e) const { return src_.substr(b, e - b); }

  // Degraded regions become text; adjacent runs merge so a malformed span
  // surfaces as a single run.
  static void append_text(std::vector<Piece>& items, std::string_view txt, std::size_t begin) {
    if (!items.empty()) {
      if (TextRun* run = std::get_if<TextRun>(&items.back())) {
        if (run->begin + run->text.size() == begin) {
          run->text.append(txt);
          return;
        }
      }
    }
    items.push_back(TextRun{std::string(txt), begin});
  }

  void degrade(std::vector<Piece>& items, std::size_t b, std::size_t e) {
    append_text(items, slice(b, e), b);
  }

  struct LeafAttempt {
    enum class Status { ok, unclosed, empty };
    Status status = Status::unclosed;
    LeafNode node;
    std::size_t next = 0;
    // Unknown tag tokens kept literal inside the content; reported only if
    // the leaf parses (otherwise the region reparses and reports then).
    std::vector<std::pair<std::size_t, std::string>> unknown_inside;
  };

  // toks_[i] is an open token of a non-target kind.
  LeafAttempt try_leaf(std::size_t i) {
    const Token& open = toks_[i];
    LeafAttempt a;
    std::size_t j = i + 1;
    while (j < toks_.size() &&
           (toks_[j].type == Token::Type::text || toks_[j].type == Token::Type::unknown)) {
      if (toks_[j].type == Token::Type::unknown) {
        a.unknown_inside.emplace_back(toks_[j].begin,
                                      std::string(slice(toks_[j].begin, toks_[j].end)));
      }
      ++j;
    }
    if (j >= toks_.size() || toks_[j].type != Token::Type::close || toks_[j].kind != open.kind) {
      a.status = LeafAttempt::Status::unclosed;
      a.next = i + 1;
      a.unknown_inside.clear();
      return a;
    }
    std::string_view content = slice(open.end, toks_[j].begin);
    if (ws_only(content)) {
      a.status = LeafAttempt::Status::empty;
      a.next = j + 1;
      a.node.begin = open.begin;
      a.node.end = toks_[j].end;
      return a;
    }
    a.status = LeafAttempt::Status::ok;
    a.node = LeafNode{open.kind, std::string(content), open.begin, toks_[j].end};
    a.next = j + 1;
    return a;
  }

  void report_unknown_inside(const LeafAttempt& a) {
    for (const auto& [off, tok] : a.unknown_inside) {
      report(IssueKind::unknown_tag, off, tok + " is not a recognized tag");
    }
  }

  void parse_item(std::size_t& i, std::vector<Piece>& items) {
    const Token& t = toks_[i];
    switch (t.type) {
      case Token::Type::text:
        append_text(items, slice(t.begin, t.end), t.begin);
        ++i;
        return;
      case Token::Type::unknown:
        report(IssueKind::unknown_tag, t.begin,
               std::string(slice(t.begin, t.end)) + " is not a recognized tag");
        degrade(items, t.begin, t.end);
        ++i;
        return;
      case Token::Type::close:
        report(IssueKind::unmatched_close, t.begin,
               "</" + std::string(tag_name(t.kind)) + "> has no matching open tag");
        degrade(items, t.begin, t.end);
        ++i;
        return;
      case Token::Type::open:
        if (t.kind == TagKind::target) {
          parse_target(i, items);
        } else {
          parse_toplevel_leaf(i, items);
        }
        return;
    }
  }

  void parse_toplevel_leaf(std::size_t& i, std::vector<Piece>& items) {
    const Token& open = toks_[i];
    std::string name(tag_name(open.kind));
    LeafAttempt a = try_leaf(i);
    switch (a.status) {
      case LeafAttempt::Status::ok: {
        report_unknown_inside(a);
        if (open.kind == TagKind::cnt) {
          report(IssueKind::cnt_outside_target, open.begin, "<cnt> outside <target>");
        }
        MarkupNode n;
        n.kind = a.node.kind;
        n.content = std::move(a.node.content);
        n.begin = a.node.begin;
        n.end = a.node.end;
        items.push_back(std::move(n));
        i = a.next;
        return;
      }
      case LeafAttempt::Status::empty:
        report(IssueKind::empty_content, open.begin, "<" + name + "> has empty content");
        degrade(items, a.node.begin, a.node.end);
        i = a.next;
        return;
      case LeafAttempt::Status::unclosed:
        report(IssueKind::unclosed_tag, open.begin, "missing </" + name + ">");
        degrade(items, open.begin, open.end);
        i = a.next;
        return;
    }
  }

  void parse_target(std::size_t& i, std::vector<Piece>& items) {
    const Token& open = toks_[i];
    std::size_t j = i + 1;
    bool closed = false;
    std::size_t close_idx = 0;
    std::vector<TargetChild> children;
    std::vector<ParseIssue> defects;  // held back until the close tag is found
    int cnt_seen = 0;
    int obj_seen = 0;
    auto defect = [&](IssueKind k, std::size_t off, std::string detail) {
      defects.push_back({k, severity(), off, std::move(detail)});
    };
    while (j < toks_.size()) {
      const Token& t = toks_[j];
      if (t.type == Token::Type::close && t.kind == TagKind::target) {
        closed = true;
        close_idx = j;
        break;
      }
      switch (t.type) {
        case Token::Type::text: {
          std::string_view txt = slice(t.begin, t.end);
          if (ws_only(txt)) {
            children.push_back(TextRun{std::string(txt), t.begin});
          } else {
            defect(IssueKind::illegal_nesting, t.begin, "non-whitespace text inside <target>");
          }
          ++j;
          break;
        }
        case Token::Type::unknown:
          defect(IssueKind::unknown_tag, t.begin,
                 std::string(slice(t.begin, t.end)) + " is not a recognized tag");
          ++j;
          break;
        case Token::Type::close:
          defect(IssueKind::unmatched_close, t.begin,
                 "</" + std::string(tag_name(t.kind)) + "> has no matching open tag");
          ++j;
          break;
        case Token::Type::open: {
          if (t.kind == TagKind::cnt || t.kind == TagKind::obj) {
            std::string name(tag_name(t.kind));
            LeafAttempt a = try_leaf(j);
            if (a.status == LeafAttempt::Status::ok) {
              for (const auto& [off, tok] : a.unknown_inside) {
                defect(IssueKind::unknown_tag, off, tok + " is not a recognized tag");
              }
              (t.kind == TagKind::cnt ? cnt_seen : obj_seen) += 1;
              children.push_back(std::move(a.node));
            } else if (a.status == LeafAttempt::Status::empty) {
              defect(IssueKind::empty_content, t.begin, "<" + name + "> has empty content");
            } else {
              defect(IssueKind::unclosed_tag, t.begin, "missing </" + name + ">");
            }
            j = a.next;
          } else if (t.kind == TagKind::target) {
            defect(IssueKind::illegal_nesting, t.begin, "<target> may not nest");
            ++j;
          } else {
            defect(IssueKind::illegal_nesting, t.begin,
                   "<" + std::string(tag_name(t.kind)) + "> may not appear inside <target>");
            ++j;
          }
          break;
        }
      }
    }
    if (!closed) {
      // Only the open token degrades; the scanned tokens reparse as
      // top-level items (defects found so far would be rediscovered there,
      // so they are dropped rather than double-reported).
      report(IssueKind::unclosed_tag, open.begin, "missing </target>");
      degrade(items, open.begin, open.end);
      i = i + 1;
      return;
    }
    if (!defects.empty() || cnt_seen != 1 || obj_seen != 1) {
      for (ParseIssue& d : defects) issues_.push_back(std::move(d));
      if (cnt_seen != 1 || obj_seen != 1) {
        report(IssueKind::illegal_nesting, open.begin,
               "<target> needs exactly one <cnt> and one <obj>");
      }
      degrade(items, open.begin, toks_[close_idx].end);
      i = close_idx + 1;
      return;
    }
    MarkupNode n;
    n.kind = TagKind::target;
    n.children = std::move(children);
    n.begin = open.begin;
    n.end = toks_[close_idx].end;
    items.push_back(std::move(n));
    i = close_idx + 1;
  }
};

}  // namespace detail

// The document is lossless in both modes: render(result.doc) reproduces the
// input bytes exactly, with malformed regions kept verbatim as text runs.
// strict and lenient differ only in issue severity; ok() means no errors.
inline ParseResult parse_markup(std::string_view text, ParseMode mode = ParseMode::strict) {
  return detail::Parser(text, mode).run();
}

// ---------------------------------------------------------------------------
// Rendering

inline void render_leaf(std::string& out, TagKind kind, std::string_view content) {
  out += '<';
  out += tag_name(kind);
  out += '>';
  out += content;
  out += "</";
  out += tag_name(kind);
  out += '>';
}

inline std::string render(const MarkupDocument& doc) {
  std::string out;
  out.reserve(doc.source.size());
  for (const Piece& p : doc.items) {
    if (const TextRun* run = std::get_if<TextRun>(&p)) {
      out += run->text;
      continue;
    }
    const MarkupNode& n = std::get<MarkupNode>(p);
    if (n.kind != TagKind::target) {
      render_leaf(out, n.kind, n.content);
      continue;
    }
    out += "<target>";
    for (const TargetChild& c : n.children) {
      if (const TextRun* run = std::get_if<TextRun>(&c)) {
        out += run->text;
      } else {
        const LeafNode& leaf = std::get<LeafNode>(c);
        render_leaf(out, leaf.kind, leaf.content);
      }
    }
    out += "</target>";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Stripping

// normalized: tidies whitespace at splice points so prose reads naturally.
// verbatim: pure splice; output length is the source length minus the tag
// delimiter bytes.
enum class StripMode { normalized, verbatim };

namespace detail {

class StripEmitter {
 public:
  explicit StripEmitter(StripMode mode) : mode_(mode) {}

  // Marks a tag-delimiter splice point between emitted segments.
  void boundary() {
    if (mode_ == StripMode::normalized) pending_ = true;
  }

  void emit(std::string_view s) {
    if (mode_ == StripMode::verbatim || !pending_) {
      out_.append(s);
      return;
    }
    pending_ = false;
    bool left_ws = !out_.empty() && ascii_space(out_.back());
    std::size_t rskip = 0;
    while (rskip < s.size() && ascii_space(s[rskip])) ++rskip;
    bool right_ws = rskip > 0;
    if (left_ws && right_ws) {
      // whitespace on both sides collapses to a single space
      while (!out_.empty() && ascii_space(out_.back())) out_.pop_back();
      out_ += ' ';
      out_.append(s.substr(rskip));
      return;
    }
    if (!left_ws && !right_ws) {
      // a removed tag must not fuse two words
      if (!out_.empty() && !s.empty() && ascii_alnum(out_.back()) && ascii_alnum(s.front())) {
        out_ += ' ';
      }
      out_.append(s);
      return;
    }
    out_.append(s);  // exactly one side has whitespace: keep as written
  }

  std::string finish() {
    if (mode_ == StripMode::normalized) {
      std::size_t b = 0;
      while (b < out_.size() && ascii_space(out_[b])) ++b;
      std::size_t e = out_.size();
      while (e > b && ascii_space(out_[e - 1])) --e;
      return out_.substr(b, e - b);
    }
    return std::move(out_);
  }

 private:
  StripMode mode_;
  std::string out_;
  bool pending_ = false;
};

}  // namespace detail

inline std::string strip_markup(const MarkupDocument& doc,
                                StripMode mode = StripMode::normalized) {
  detail::StripEmitter em(mode);
  for (const Piece& p : doc.items) {
    if (const TextRun* run = std::get_if<TextRun>(&p)) {
      em.emit(run->text);
      continue;
    }
    const MarkupNode& n = std::get<MarkupNode>(p);
    if (n.kind != TagKind::target) {
      em.boundary();
      em.emit(n.content);
      em.boundary();
      continue;
    }
    em.boundary();
    for (const TargetChild& c : n.children) {
      if (const TextRun* run = std::get_if<TextRun>(&c)) {
        em.emit(run->text);
      } else {
        const LeafNode& leaf = std::get<LeafNode>(c);
        em.boundary();
        em.emit(leaf.content);
        em.boundary();
      }
    }
    em.boundary();
  }
  return em.finish();
}

inline std::string strip_markup(std::string_view text, StripMode mode = StripMode::normalized,
                                ParseMode parse_mode = ParseMode::lenient) {
  return strip_markup(parse_markup(text, parse_mode).doc, mode);
}

// ---------------------------------------------------------------------------
// Answer extraction

struct YesNo {
  bool value = false;
};
struct Category {
  std::string name;  // normalized, singular when the built-in plural table knows it
};
struct Count {
  int value = 0;
};
struct Camera {
  CameraId id = CameraId::front;
};
struct Distance {
  double meters = 0.0;
};
struct Location {
  double x = 0.0;
  double y = 0.0;
};
struct TargetPair {
  int count = 0;
  std::string category;  // normalized, singular when the built-in plural table knows it
};
// In-band marker for a slot whose content did not parse; carries the raw
// content so scoring can tally it without aborting.
struct InvalidSlot {
  TagKind slot = TagKind::obj;
  std::string content;
};

using ExtractedAnswer =
    std::variant<YesNo, Category, Count, Camera, Distance, Location, TargetPair, InvalidSlot>;

// Lowercase, trim, collapse internal whitespace runs to one space.
inline std::string normalize_surface(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char ch : s) {
    if (ascii_space(ch)) {
      if (!out.empty() && out.back() != ' ') out += ' ';
    } else {
      out += ascii_lower(ch);
    }
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

inline constexpr std::array<std::string_view, 21> kNumberWords = {
    "zero",    "one",     "two",       "three",    "four",  "five",  "six",
    "seven",   "eight",   "nine",      "ten",      "eleven", "twelve", "thirteen",
    "fourteen", "fifteen", "sixteen",  "seventeen", "eighteen", "nineteen", "twenty"};

// Digits, or a number word zero..twenty. Negative or non-numeric content
// does not parse.
inline std::optional<int> parse_count_text(std::string_view s) {
  std::string t = normalize_surface(s);
  for (std::size_t i = 0; i < kNumberWords.size(); ++i) {
    if (t == kNumberWords[i]) return static_cast<int>(i);
  }
  if (t.empty() || t.size() > 9) return std::nullopt;
  int v = 0;
  for (char c : t) {
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + (c - '0');
  }
  return v;
}

// Optional sign, digits, optionally a dot followed by digits; nothing else.
inline std::optional<double> parse_decimal_text(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && ascii_space(s[b])) ++b;
  while (e > b && ascii_space(s[e - 1])) --e;
  if (b == e) return std::nullopt;
  std::size_t i = b;
  if (s[i] == '+' || s[i] == '-') ++i;
  std::size_t int_begin = i;
  while (i < e && s[i] >= '0' && s[i] <= '9') ++i;
  if (i == int_begin) return std::nullopt;
  if (i < e) {
    if (s[i] != '.') return std::nullopt;
    ++i;
    std::size_t frac_begin = i;
    while (i < e && s[i] >= '0' && s[i] <= '9') ++i;
    if (i == frac_begin || i != e) return std::nullopt;
  }
  return std::strtod(std::string(s.substr(b, e - b)).c_str(), nullptr);
}

// "(x, y)" with two signed decimals.
inline std::optional<std::pair<double, double>> parse_location_text(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && ascii_space(s[b])) ++b;
  while (e > b && ascii_space(s[e - 1])) --e;
  if (e - b < 5 || s[b] != '(' || s[e - 1] != ')') return std::nullopt;
  std::string_view inner = s.substr(b + 1, e - b - 2);
  std::size_t comma = inner.find(',');
  if (comma == std::string_view::npos) return std::nullopt;
  auto x = parse_decimal_text(inner.substr(0, comma));
  auto y = parse_decimal_text(inner.substr(comma + 1));
  if (!x || !y) return std::nullopt;
  return std::make_pair(*x, *y);
}

namespace detail {

inline ExtractedAnswer convert_leaf(TagKind kind, const std::string& content) {
  switch (kind) {
    case TagKind::ans: {
      std::string t = normalize_surface(content);
      if (t == "yes") return YesNo{true};
      if (t == "no") return YesNo{false};
      return InvalidSlot{TagKind::ans, content};
    }
    case TagKind::obj:
      return Category{std::string(singularize_default(normalize_surface(content)))};
    case TagKind::cnt: {
      auto v = parse_count_text(content);
      if (v) return Count{*v};
      return InvalidSlot{TagKind::cnt, content};
    }
    case TagKind::cam: {
      auto c = camera_from_string(content);
      if (c) return Camera{*c};
      return InvalidSlot{TagKind::cam, content};
    }
    case TagKind::dst: {
      auto v = parse_decimal_text(content);
      if (v && *v >= 0.0) return Distance{*v};
      return InvalidSlot{TagKind::dst, content};
    }
    case TagKind::loc: {
      auto v = parse_location_text(content);
      if (v) return Location{v->first, v->second};
      return InvalidSlot{TagKind::loc, content};
    }
    case TagKind::target:
      break;
  }
  return InvalidSlot{kind, content};
}

}  // namespace detail

// Document-order list of typed answers; slots that fail to parse yield
// InvalidSlot markers rather than being dropped.
inline std::vector<ExtractedAnswer> extract_answers(const MarkupDocument& doc) {
  std::vector<ExtractedAnswer> out;
  for (const Piece& p : doc.items) {
    const MarkupNode* n = std::get_if<MarkupNode>(&p);
    if (!n) continue;
    if (n->kind != TagKind::target) {
      out.push_back(detail::convert_leaf(n->kind, n->content));
      continue;
    }
    const LeafNode* cnt = find_child(*n, TagKind::cnt);
    const LeafNode* obj = find_child(*n, TagKind::obj);
    if (!cnt || !obj) {
      out.push_back(InvalidSlot{TagKind::target, n->content});
      continue;
    }
    auto v = parse_count_text(cnt->content);
    if (!v) {
      out.push_back(InvalidSlot{TagKind::target, cnt->content});
      continue;
    }
    out.push_back(TargetPair{*v, std::string(singularize_default(normalize_surface(obj->content)))});
  }
  return out;
}

inline std::vector<ExtractedAnswer> extract_answers(std::string_view text,
                                                    ParseMode mode = ParseMode::lenient) {
  return extract_answers(parse_markup(text, mode).doc);
}

// ---------------------------------------------------------------------------
// Validation

struct Finding {
  IssueKind kind = IssueKind::unknown_tag;
  std::size_t offset = 0;
  std::string detail;
};

struct ValidationReport {
  std::vector<Finding> findings;
  bool ok() const { return findings.empty(); }
};

// Strict-mode findings; empty report means the text is well-formed.
inline ValidationReport validate(std::string_view text) {
  ParseResult r = parse_markup(text, ParseMode::strict);
  ValidationReport rep;
  rep.findings.reserve(r.issues.size());
  for (const ParseIssue& is : r.issues) {
    rep.findings.push_back({is.kind, is.offset, is.detail});
  }
  return rep;
}

}  // namespace mqa

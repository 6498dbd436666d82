#pragma once

// Structured-text reports and configuration files.
//
// Both formats are line based: `key = value`, `# comment`, and `[section]`
// headers. Lists are comma separated; matrices are written row-major as
// rows separated by ';'. The schema is described in README.md.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gsp/ladder.hpp"

namespace gsp {

inline constexpr const char* kReportFormat = "gsp-report/1";
inline constexpr const char* kConfigFormat = "gsp-config/1";

struct Check {
  std::string name;
  Verdict verdict = Verdict::Fail;
  std::string certificate;
  std::vector<std::string> witnesses;
};

struct ReportSection {
  std::string title;
  std::vector<std::pair<std::string, std::string>> entries;
};

class Report {
 public:
  explicit Report(std::string verb = "") : verb_(std::move(verb)) {}

  void set(const std::string& key, const std::string& value) { header_.emplace_back(key, value); }
  void add_check(Check c) { checks_.push_back(std::move(c)); }
  void add_check(const std::string& name, bool ok, const std::string& certificate,
                 std::vector<std::string> witnesses = {});
  void add_hypotheses(const HypothesisReport& h, const std::string& prefix = "hypothesis");
  void assume(const std::string& what) { assumed_.push_back(what); }
  ReportSection& section(const std::string& title);
  void add_ladder(const std::string& title, const LiftLadder& L, const std::vector<std::string>& notes = {});

  const std::vector<Check>& checks() const { return checks_; }
  const std::vector<std::string>& assumptions() const { return assumed_; }
  const Check* find(const std::string& name) const;
  // Every check that is not an assumption passes.
  bool all_pass() const;
  std::string str() const;

 private:
  std::string verb_;
  std::vector<std::pair<std::string, std::string>> header_;
  std::vector<Check> checks_;
  std::vector<std::string> assumed_;
  std::vector<ReportSection> sections_;
};

// Row-major "a b c; d e f" with symmetric integer representatives for
// prime fields and coefficient tuples otherwise.
std::string matrix_text(const Mat& X);
Mat parse_matrix(const std::string& text, const GaloisRing* R);

class Config {
 public:
  static Config parse(const std::string& text);
  static Config load(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  std::string get(const std::string& key) const;
  std::string get(const std::string& key, const std::string& fallback) const;
  int64_t get_int(const std::string& key) const;
  int64_t get_int(const std::string& key, int64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<std::string> get_list(const std::string& key) const;
  std::vector<int64_t> get_int_list(const std::string& key) const;
  Mat get_matrix(const std::string& key, const GaloisRing* R) const;
  // Keys with the given prefix, in file order.
  std::vector<std::string> keys_with_prefix(const std::string& prefix) const;
  // ConfigError naming the first key outside the allowed prefixes.
  void require_known(const std::vector<std::string>& allowed_prefixes) const;
  // "line N, field 'key': message".
  [[noreturn]] void fail(const std::string& key, const std::string& message) const;

 private:
  struct Entry {
    std::string value;
    int line = 0;
  };
  std::map<std::string, Entry> values_;
  std::vector<std::string> order_;
};

}  // namespace gsp

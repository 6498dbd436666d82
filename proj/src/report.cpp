#include "gsp/report.hpp"

#include <fstream>
#include <sstream>

#include "gsp/symplectic.hpp"

namespace gsp {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

std::string scalar_text(const GR& x) {
  if (x.ring()->degree() == 1) return std::to_string(x.to_signed());
  return x.str();
}

}  // namespace

void Report::add_check(const std::string& name, bool ok, const std::string& certificate,
                       std::vector<std::string> witnesses) {
  checks_.push_back({name, ok ? Verdict::Pass : Verdict::Fail, certificate, std::move(witnesses)});
}

void Report::add_hypotheses(const HypothesisReport& h, const std::string& prefix) {
  for (const ConditionResult& c : h.conditions) {
    const std::string name = prefix + "." + c.id;
    if (c.verdict == Verdict::Assumed) assume(name + ": " + c.title + " (" + c.certificate + ")");
    checks_.push_back({name + " " + c.title, c.verdict, c.certificate, c.witnesses});
  }
}

ReportSection& Report::section(const std::string& title) {
  for (ReportSection& s : sections_)
    if (s.title == title) return s;
  sections_.push_back({title, {}});
  return sections_.back();
}

void Report::add_ladder(const std::string& title, const LiftLadder& L, const std::vector<std::string>& notes) {
  ReportSection& s = section(title);
  s.entries.emplace_back("precision", std::to_string(L.precision()));
  for (const std::string& n : notes)
    if (!n.empty()) s.entries.emplace_back("note", n);
  for (size_t g = 0; g < L.images.size(); ++g) {
    s.entries.emplace_back("image." + L.group.labels[g], matrix_text(L.images[g]));
    s.entries.emplace_back("similitude." + L.group.labels[g], scalar_text(similitude(L.images[g])));
  }
}

const Check* Report::find(const std::string& name) const {
  for (const Check& c : checks_)
    if (c.name == name || c.name.rfind(name + " ", 0) == 0) return &c;
  return nullptr;
}

bool Report::all_pass() const {
  for (const Check& c : checks_)
    if (c.verdict == Verdict::Fail) return false;
  return true;
}

std::string Report::str() const {
  std::ostringstream os;
  os << "format = " << kReportFormat << "\n";
  if (!verb_.empty()) os << "verb = " << verb_ << "\n";
  for (const auto& [k, v] : header_) os << k << " = " << v << "\n";
  os << "result = " << (all_pass() ? "PASS" : "FAIL") << "\n";
  for (const Check& c : checks_) {
    os << "\n[check " << c.name << "]\n";
    os << "verdict = " << verdict_name(c.verdict) << "\n";
    if (!c.certificate.empty()) os << "certificate = " << c.certificate << "\n";
    for (const std::string& w : c.witnesses) os << "witness = " << w << "\n";
  }
  os << "\n[assumed, not verified]\n";
  for (const std::string& a : assumed_) os << "- " << a << "\n";
  for (const ReportSection& s : sections_) {
    os << "\n[" << s.title << "]\n";
    for (const auto& [k, v] : s.entries) os << k << " = " << v << "\n";
  }
  return os.str();
}

std::string matrix_text(const Mat& X) {
  std::ostringstream os;
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    if (i) os << "; ";
    for (Eigen::Index j = 0; j < X.cols(); ++j) os << (j ? " " : "") << scalar_text(X(i, j));
  }
  return os.str();
}

Mat parse_matrix(const std::string& text, const GaloisRing* R) {
  const auto rows = split(text, ';');
  std::vector<std::vector<int64_t>> vals;
  for (const std::string& r : rows) {
    std::istringstream is(r);
    std::vector<int64_t> row;
    std::string tok;
    while (is >> tok) {
      size_t used = 0;
      int64_t v = 0;
      try {
        v = std::stoll(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw Error(ErrorKind::ConfigError, "bad matrix entry '" + tok + "'");
      row.push_back(v);
    }
    vals.push_back(std::move(row));
  }
  if (vals.empty() || vals[0].empty()) throw Error(ErrorKind::ConfigError, "empty matrix");
  Mat X = zeros(R, static_cast<Eigen::Index>(vals.size()), static_cast<Eigen::Index>(vals[0].size()));
  for (size_t i = 0; i < vals.size(); ++i) {
    if (vals[i].size() != vals[0].size()) throw Error(ErrorKind::ConfigError, "ragged matrix");
    for (size_t j = 0; j < vals[i].size(); ++j) X(i, j) = R->from_int(vals[i][j]);
  }
  return X;
}

Config Config::parse(const std::string& text) {
  Config c;
  std::istringstream is(text);
  std::string line;
  int no = 0;
  while (std::getline(is, line)) {
    ++no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::ConfigError, "line " + std::to_string(no) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw Error(ErrorKind::ConfigError, "line " + std::to_string(no) + ": empty key");
    if (c.values_.count(key))
      throw Error(ErrorKind::ConfigError, "line " + std::to_string(no) + ", field '" + key + "': duplicate key");
    c.values_[key] = {value, no};
    c.order_.push_back(key);
  }
  if (c.has("format") && c.get("format") != kConfigFormat)
    c.fail("format", "unsupported format '" + c.get("format") + "', expected " + kConfigFormat);
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ConfigError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void Config::fail(const std::string& key, const std::string& message) const {
  auto it = values_.find(key);
  const std::string where = it == values_.end() ? "" : "line " + std::to_string(it->second.line) + ", ";
  throw Error(ErrorKind::ConfigError, where + "field '" + key + "': " + message);
}

std::string Config::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw Error(ErrorKind::ConfigError, "field '" + key + "': missing");
  return it->second.value;
}

std::string Config::get(const std::string& key, const std::string& fallback) const {
  return has(key) ? get(key) : fallback;
}

int64_t Config::get_int(const std::string& key) const {
  const std::string v = get(key);
  size_t used = 0;
  int64_t out = 0;
  try {
    out = std::stoll(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) fail(key, "expected an integer, got '" + v + "'");
  return out;
}

int64_t Config::get_int(const std::string& key, int64_t fallback) const { return has(key) ? get_int(key) : fallback; }

bool Config::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string v = get(key);
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  fail(key, "expected true or false, got '" + v + "'");
}

std::vector<std::string> Config::get_list(const std::string& key) const {
  std::vector<std::string> out;
  for (const std::string& s : split(get(key), ','))
    if (!s.empty()) out.push_back(s);
  return out;
}

std::vector<int64_t> Config::get_int_list(const std::string& key) const {
  std::vector<int64_t> out;
  for (const std::string& s : get_list(key)) {
    size_t used = 0;
    int64_t v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) fail(key, "expected a list of integers, got '" + s + "'");
    out.push_back(v);
  }
  return out;
}

Mat Config::get_matrix(const std::string& key, const GaloisRing* R) const {
  try {
    return parse_matrix(get(key), R);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ConfigError || !has(key)) throw;
    fail(key, e.what());
  }
}

std::vector<std::string> Config::keys_with_prefix(const std::string& prefix) const {
  std::vector<std::string> out;
  for (const std::string& k : order_)
    if (k.rfind(prefix, 0) == 0) out.push_back(k);
  return out;
}

void Config::require_known(const std::vector<std::string>& allowed_prefixes) const {
  for (const std::string& k : order_) {
    bool ok = false;
    for (const std::string& a : allowed_prefixes)
      if (k == a || (!a.empty() && a.back() == '.' && k.rfind(a, 0) == 0)) ok = true;
    if (!ok) fail(k, "unknown field");
  }
}

}  // namespace gsp

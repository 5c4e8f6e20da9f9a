#include "memilp/mps_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace memilp {

const char* to_string(MpsErrorKind kind) {
  switch (kind) {
    case MpsErrorKind::UnknownSection: return "unknown section";
    case MpsErrorKind::NotBinary: return "variable not binary";
    case MpsErrorKind::DuplicateEntry: return "duplicate entry";
    case MpsErrorKind::NoObjectiveRow: return "no objective row";
    case MpsErrorKind::UnknownRow: return "unknown row";
    case MpsErrorKind::RangesUnsupported: return "ranges unsupported";
    case MpsErrorKind::Unsupported: return "unsupported feature";
    case MpsErrorKind::Malformed: return "malformed record";
  }
  return "?";
}

MpsError::MpsError(MpsErrorKind kind, std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + to_string(kind) + ": " + message),
      kind_(kind),
      line_(line) {}

SolError::SolError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start));
  }
  return out;
}

bool parse_double(std::string_view text, double& out) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return false;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  if (ec == std::errc::result_out_of_range) {
    // from_chars reports overflow for values like 1e+400; MPS uses those as infinity
    out = text.front() == '-' ? -kInf : kInf;
    return true;
  }
  return ec == std::errc() && ptr == end;
}

double number_or_throw(std::string_view text, std::size_t line) {
  double v = 0.0;
  if (!parse_double(text, v)) {
    throw MpsError(MpsErrorKind::Malformed, line, "expected a number, got '" + std::string(text) + "'");
  }
  return v;
}

// Fixed-format field columns (0-based, half open).
constexpr std::pair<std::size_t, std::size_t> kFixedFields[] = {
    {1, 3}, {4, 12}, {14, 22}, {24, 36}, {39, 47}, {49, 61}};

// Splits a fixed-format data line into fields when its gap columns are blank;
// lines that do not respect the column layout fall back to whitespace tokens.
std::vector<std::string> split_fixed(std::string_view line) {
  constexpr std::size_t kGaps[] = {0, 3, 12, 13, 22, 23, 36, 37, 38, 47, 48};
  for (std::size_t g : kGaps) {
    if (g < line.size() && line[g] != ' ' && line[g] != '\t') return split_ws(line);
  }
  if (trim(line.substr(std::min(line.size(), std::size_t{61}))).size() > 0) return split_ws(line);

  std::vector<std::string> fields;
  for (auto [b, e] : kFixedFields) {
    if (b >= line.size()) {
      fields.emplace_back();
      continue;
    }
    fields.emplace_back(trim(line.substr(b, std::min(e, line.size()) - b)));
  }
  while (!fields.empty() && fields.back().empty()) fields.pop_back();
  return fields;
}

bool looks_fixed(std::string_view line) {
  if (line.size() < 5 || line[0] != ' ') return false;
  const std::string_view type = trim(line.substr(1, 2));
  return type.size() == 1 && line[3] == ' ' && line[4] != ' ' && line[4] != '\t';
}

enum class Section { None, Name, ObjSense, Rows, Columns, Rhs, Ranges, Bounds, End };

class MpsReader {
 public:
  explicit MpsReader(std::string_view text) : text_(text) {}

  MpsDocument read() {
    std::size_t pos = 0;
    while (pos <= text_.size() && section_ != Section::End) {
      const auto nl = text_.find('\n', pos);
      const auto raw = text_.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
      ++line_no_;
      handle_line(raw);
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
    if (!seen_rows_) throw MpsError(MpsErrorKind::Malformed, line_no_, "missing ROWS section");
    if (doc_.objective_row_name.empty()) {
      throw MpsError(MpsErrorKind::NoObjectiveRow, line_no_, "no N (objective) row declared");
    }
    return std::move(doc_);
  }

 private:
  void handle_line(std::string_view raw) {
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty() || line.front() == '*') return;

    if (line.front() != ' ' && line.front() != '\t') {
      start_section(line);
      return;
    }
    switch (section_) {
      case Section::None:
      case Section::Name:
        throw MpsError(MpsErrorKind::Malformed, line_no_, "data record outside of a section");
      case Section::ObjSense: objsense(split_ws(line)); break;
      case Section::Rows: row_record(line); break;
      case Section::Columns: column_record(fields(line)); break;
      case Section::Rhs: rhs_record(fields(line)); break;
      case Section::Ranges:
        throw MpsError(MpsErrorKind::RangesUnsupported, line_no_,
                       "RANGES records change the feasible set and are not supported");
      case Section::Bounds: bound_record(fields(line)); break;
      case Section::End: break;
    }
  }

  // Fixed-format COLUMNS and RHS records leave the first field blank.
  std::vector<std::string> fields(std::string_view line) const {
    if (doc_.format == MpsFormat::Free) return split_ws(line);
    auto f = split_fixed(line);
    if (!f.empty() && f.front().empty()) f.erase(f.begin());
    return f;
  }

  void start_section(std::string_view line) {
    const auto tokens = split_ws(line);
    const std::string& head = tokens.front();
    if (head == "NAME") {
      section_ = Section::Name;
      doc_.name = tokens.size() > 1 ? std::string(trim(line.substr(4))) : std::string();
    } else if (head == "OBJSENSE") {
      section_ = Section::ObjSense;
      if (tokens.size() > 1) objsense({tokens.begin() + 1, tokens.end()});
    } else if (head == "ROWS") {
      section_ = Section::Rows;
      seen_rows_ = true;
    } else if (head == "COLUMNS") {
      require_rows();
      section_ = Section::Columns;
    } else if (head == "RHS") {
      require_rows();
      section_ = Section::Rhs;
    } else if (head == "RANGES") {
      section_ = Section::Ranges;
    } else if (head == "BOUNDS") {
      require_rows();
      section_ = Section::Bounds;
    } else if (head == "ENDATA") {
      section_ = Section::End;
    } else if (head == "SOS" || head == "QUADOBJ" || head == "QMATRIX" || head == "QSECTION" ||
               head == "QCMATRIX" || head == "INDICATORS" || head == "LAZYCONS" ||
               head == "OBJNAME") {
      throw MpsError(MpsErrorKind::Unsupported, line_no_, "section " + head + " is not supported");
    } else {
      throw MpsError(MpsErrorKind::UnknownSection, line_no_, "unknown section '" + head + "'");
    }
  }

  void require_rows() const {
    if (!seen_rows_) throw MpsError(MpsErrorKind::Malformed, line_no_, "ROWS section must come first");
  }

  void objsense(const std::vector<std::string>& tokens) {
    if (tokens.empty()) return;
    const std::string& s = tokens.front();
    if (s == "MIN" || s == "MINIMIZE" || s == "MINIMISE") return;
    if (s == "MAX" || s == "MAXIMIZE" || s == "MAXIMISE") {
      throw MpsError(MpsErrorKind::Unsupported, line_no_, "maximization is not supported; negate the objective");
    }
    throw MpsError(MpsErrorKind::Malformed, line_no_, "unknown objective sense '" + s + "'");
  }

  void row_record(std::string_view line) {
    if (!format_decided_) {
      doc_.format = looks_fixed(line) ? MpsFormat::Fixed : MpsFormat::Free;
      format_decided_ = true;
    }
    auto f = fields(line);
    if (f.size() != 2 || f[0].size() != 1) {
      throw MpsError(MpsErrorKind::Malformed, line_no_, "ROWS record needs a type and a name");
    }
    const char type = f[0][0];
    if (type != 'N' && type != 'L' && type != 'G' && type != 'E') {
      throw MpsError(MpsErrorKind::Malformed, line_no_, std::string("unknown row type '") + type + "'");
    }
    if (row_types_.count(f[1])) {
      throw MpsError(MpsErrorKind::DuplicateEntry, line_no_, "row '" + f[1] + "' declared twice");
    }
    if (type == 'N') {
      if (!doc_.objective_row_name.empty()) {
        throw MpsError(MpsErrorKind::Unsupported, line_no_,
                       "more than one N row ('" + f[1] + "'); only a single objective is supported");
      }
      doc_.objective_row_name = f[1];
    }
    row_types_.emplace(f[1], type);
    doc_.rows.push_back({type, f[1], line_no_});
  }

  void column_record(const std::vector<std::string>& f) {
    if (std::find(f.begin(), f.end(), "'MARKER'") != f.end()) {
      if (std::find(f.begin(), f.end(), "'INTORG'") != f.end()) {
        if (in_integer_block_) throw MpsError(MpsErrorKind::Malformed, line_no_, "nested INTORG marker");
        in_integer_block_ = true;
      } else if (std::find(f.begin(), f.end(), "'INTEND'") != f.end()) {
        if (!in_integer_block_) throw MpsError(MpsErrorKind::Malformed, line_no_, "INTEND without INTORG");
        in_integer_block_ = false;
      } else {
        throw MpsError(MpsErrorKind::Malformed, line_no_, "unknown MARKER record");
      }
      return;
    }
    if (f.size() != 3 && f.size() != 5) {
      throw MpsError(MpsErrorKind::Malformed, line_no_, "COLUMNS record needs 3 or 5 fields");
    }
    for (std::size_t k = 1; k + 1 < f.size(); k += 2) {
      if (!row_types_.count(f[k])) {
        throw MpsError(MpsErrorKind::UnknownRow, line_no_, "column '" + f[0] + "' references undeclared row '" + f[k] + "'");
      }
      if (!entries_seen_.emplace(f[k], f[0]).second) {
        throw MpsError(MpsErrorKind::DuplicateEntry, line_no_,
                       "duplicate coefficient for (row '" + f[k] + "', column '" + f[0] + "')");
      }
      doc_.columns.push_back({f[0], f[k], number_or_throw(f[k + 1], line_no_), in_integer_block_, line_no_});
    }
    column_set_.insert(f[0]);
  }

  void rhs_record(std::vector<std::string> f) {
    // The RHS set name may be omitted.
    if (f.size() == 2 || f.size() == 4) f.insert(f.begin(), "");
    if (f.size() != 3 && f.size() != 5) {
      throw MpsError(MpsErrorKind::Malformed, line_no_, "RHS record needs 3 or 5 fields");
    }
    for (std::size_t k = 1; k + 1 < f.size(); k += 2) {
      auto it = row_types_.find(f[k]);
      if (it == row_types_.end()) {
        throw MpsError(MpsErrorKind::UnknownRow, line_no_, "RHS references undeclared row '" + f[k] + "'");
      }
      if (it->second == 'N') {
        throw MpsError(MpsErrorKind::Unsupported, line_no_, "objective constant (RHS on the N row) is not supported");
      }
      if (!rhs_seen_.insert(f[k]).second) {
        throw MpsError(MpsErrorKind::DuplicateEntry, line_no_, "duplicate RHS for row '" + f[k] + "'");
      }
      doc_.rhs.push_back({f[k], number_or_throw(f[k + 1], line_no_), line_no_});
    }
  }

  void bound_record(std::vector<std::string> f) {
    static const std::set<std::string> kWithValue = {"UP", "LO", "FX", "UI", "LI"};
    static const std::set<std::string> kNoValue = {"BV", "FR", "MI", "PL"};
    if (f.empty()) throw MpsError(MpsErrorKind::Malformed, line_no_, "empty BOUNDS record");
    const std::string type = f[0];
    const bool needs_value = kWithValue.count(type) > 0;
    if (!needs_value && !kNoValue.count(type)) {
      throw MpsError(MpsErrorKind::Unsupported, line_no_, "bound type '" + type + "' is not supported");
    }
    // The bound set name may be omitted.
    double dummy = 0.0;
    if (needs_value && f.size() == 3) {
      f.insert(f.begin() + 1, "");
    } else if (!needs_value && f.size() == 2) {
      f.insert(f.begin() + 1, "");
    } else if (!needs_value && f.size() == 3 && parse_double(f[2], dummy) && known_column(f[1])) {
      f.insert(f.begin() + 1, "");
    }
    if (f.size() < 3 || f.size() > 4 || (needs_value && f.size() != 4)) {
      throw MpsError(MpsErrorKind::Malformed, line_no_, "BOUNDS record has the wrong number of fields");
    }
    if (!known_column(f[2])) {
      throw MpsError(MpsErrorKind::Malformed, line_no_, "bound on undeclared column '" + f[2] + "'");
    }
    const double value = f.size() == 4 ? number_or_throw(f[3], line_no_) : 0.0;
    doc_.bounds.push_back({type, f[2], value, line_no_});
  }

  bool known_column(const std::string& name) const { return column_set_.count(name) > 0; }

  std::string_view text_;
  std::size_t line_no_ = 0;
  Section section_ = Section::None;
  bool seen_rows_ = false;
  bool format_decided_ = false;
  bool in_integer_block_ = false;
  MpsDocument doc_;
  std::unordered_map<std::string, char> row_types_;
  std::set<std::pair<std::string, std::string>> entries_seen_;
  std::set<std::string> rhs_seen_;
  std::set<std::string> column_set_;
};

struct ColumnInfo {
  std::size_t index = 0;
  bool integer = false;
  double lb = 0.0;
  double ub = kInf;
  std::size_t line = 0;        // first COLUMNS record
  std::size_t bound_line = 0;  // last BOUNDS record touching this column
};

}  // namespace

MpsDocument read_mps_document(std::string_view text) { return MpsReader(text).read(); }

IlpModel to_model(const MpsDocument& doc) {
  std::vector<std::string> var_names;
  std::unordered_map<std::string, ColumnInfo> columns;
  for (const auto& e : doc.columns) {
    auto [it, inserted] = columns.try_emplace(e.column);
    if (inserted) {
      it->second.index = var_names.size();
      it->second.integer = e.integer;
      it->second.ub = e.integer ? 1.0 : kInf;
      it->second.line = e.line;
      var_names.push_back(e.column);
    } else if (it->second.integer != e.integer) {
      throw MpsError(MpsErrorKind::Malformed, e.line,
                     "column '" + e.column + "' appears both inside and outside an integer marker block");
    }
  }
  if (var_names.empty()) throw MpsError(MpsErrorKind::Malformed, 1, "model declares no columns");

  for (const auto& b : doc.bounds) {
    auto& c = columns.at(b.column);
    c.bound_line = b.line;
    if (b.type == "UP") {
      c.ub = b.value;
    } else if (b.type == "LO") {
      c.lb = b.value;
    } else if (b.type == "FX") {
      c.lb = c.ub = b.value;
    } else if (b.type == "BV") {
      c.integer = true;
      c.lb = 0.0;
      c.ub = 1.0;
    } else if (b.type == "UI") {
      c.integer = true;
      c.ub = b.value;
    } else if (b.type == "LI") {
      c.integer = true;
      c.lb = b.value;
    } else if (b.type == "MI") {
      c.lb = -kInf;
    } else if (b.type == "PL") {
      c.ub = kInf;
    } else if (b.type == "FR") {
      c.lb = -kInf;
      c.ub = kInf;
    }
  }

  for (const auto& name : var_names) {
    const auto& c = columns.at(name);
    const bool binary = c.integer && std::ceil(c.lb) == 0.0 && std::floor(c.ub) == 1.0;
    if (!binary) {
      std::ostringstream msg;
      msg << "column '" << name << "' is " << (c.integer ? "integer" : "continuous") << " with bounds ["
          << c.lb << ", " << c.ub << "]; only 0-1 variables are supported (preprocess the model externally)";
      throw MpsError(MpsErrorKind::NotBinary, c.bound_line ? c.bound_line : c.line, msg.str());
    }
  }

  const std::size_t n = var_names.size();
  std::vector<double> objective(n, 0.0);
  std::unordered_map<std::string, std::size_t> row_index;
  std::vector<LinearConstraint> rows;
  std::vector<std::size_t> row_lines;
  for (const auto& r : doc.rows) {
    if (r.type == 'N') continue;
    row_index.emplace(r.name, rows.size());
    LinearConstraint c;
    c.name = r.name;
    c.relation = r.type == 'L' ? Relation::LE : r.type == 'G' ? Relation::GE : Relation::EQ;
    rows.push_back(std::move(c));
    row_lines.push_back(r.line);
  }
  for (const auto& e : doc.columns) {
    const std::size_t var = columns.at(e.column).index;
    if (e.row == doc.objective_row_name) {
      objective[var] = e.value;
    } else {
      rows[row_index.at(e.row)].terms.push_back({var, e.value});
    }
  }
  for (const auto& r : doc.rhs) rows[row_index.at(r.row)].rhs = r.value;

  std::vector<LinearConstraint> eq;
  std::vector<LinearConstraint> ineq;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto& c = rows[i];
    if (c.terms.empty()) {
      const bool ok = c.relation == Relation::LE   ? 0.0 <= c.rhs
                      : c.relation == Relation::GE ? 0.0 >= c.rhs
                                                   : c.rhs == 0.0;
      if (!ok) {
        throw MpsError(MpsErrorKind::Unsupported, row_lines[i],
                       "row '" + c.name + "' has no entries and cannot be satisfied");
      }
      continue;  // vacuous row
    }
    (c.relation == Relation::EQ ? eq : ineq).push_back(std::move(c));
  }
  return IlpModel(doc.name, std::move(var_names), std::move(objective), std::move(eq), std::move(ineq));
}

std::string format_real(double value) {
  if (value == 0.0) return "0";  // folds -0
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string write_sol(const Assignment& assignment, const std::vector<std::string>& var_names) {
  if (assignment.values.size() != var_names.size()) {
    throw ModelError("assignment and variable name lists differ in length");
  }
  std::string out = "=obj= " + format_real(assignment.objective_value) + "\n";
  for (std::size_t j = 0; j < var_names.size(); ++j) {
    out += var_names[j];
    out += assignment.values[j] ? " 1\n" : " 0\n";
  }
  return out;
}

SolFile parse_sol(std::string_view text) {
  SolFile sol;
  std::set<std::string> names;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view line =
        trim(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (line.empty()) continue;

    if (line.front() == '#') {
      std::string comment(trim(line.substr(1)));
      constexpr std::string_view kObjPrefix = "Objective value =";
      if (comment.rfind(kObjPrefix, 0) == 0) {
        double v = 0.0;
        if (!parse_double(std::string_view(comment).substr(kObjPrefix.size()), v)) {
          throw SolError(line_no, "unreadable objective value");
        }
        sol.declared_objective = v;
      }
      sol.comments.push_back(std::move(comment));
      continue;
    }
    const auto tokens = split_ws(line);
    if (tokens.size() == 2 && tokens[0] == "=obj=") {
      double v = 0.0;
      if (!parse_double(tokens[1], v)) throw SolError(line_no, "unreadable objective value");
      sol.declared_objective = v;
      continue;
    }
    if (tokens.size() != 2) {
      throw SolError(line_no, "expected '<name> <value>', a '#' comment, or '=obj= <value>'");
    }
    double v = 0.0;
    if (!parse_double(tokens[1], v)) throw SolError(line_no, "unreadable value '" + tokens[1] + "'");
    if (!names.insert(tokens[0]).second) throw SolError(line_no, "variable '" + tokens[0] + "' listed twice");
    SolEntry entry{tokens[0], v, true};
    if (std::abs(v) <= kSolIntegralityTol) {
      entry.value = 0.0;
    } else if (std::abs(v - 1.0) <= kSolIntegralityTol) {
      entry.value = 1.0;
    } else {
      entry.integral = false;
    }
    sol.entries.push_back(std::move(entry));
  }
  return sol;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace memilp

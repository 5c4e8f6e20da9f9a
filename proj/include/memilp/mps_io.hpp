#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "memilp/model.hpp"

namespace memilp {

enum class MpsErrorKind {
  UnknownSection,
  NotBinary,
  DuplicateEntry,
  NoObjectiveRow,
  UnknownRow,
  RangesUnsupported,
  Unsupported,
  Malformed,
};

const char* to_string(MpsErrorKind kind);

/// Parse failure; what() always starts with "line <n>: ".
class MpsError : public std::runtime_error {
 public:
  MpsError(MpsErrorKind kind, std::size_t line, const std::string& message);

  MpsErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  MpsErrorKind kind_;
  std::size_t line_;
};

enum class MpsFormat { Fixed, Free };

/// Sections of an MPS file as read, before interpretation as a binary ILP.
struct MpsDocument {
  struct Row {
    char type = 'N';  // N, L, G, E
    std::string name;
    std::size_t line = 0;
  };
  struct Entry {
    std::string column;
    std::string row;
    double value = 0.0;
    bool integer = false;  // inside an INTORG/INTEND marker block
    std::size_t line = 0;
  };
  struct RhsEntry {
    std::string row;
    double value = 0.0;
    std::size_t line = 0;
  };
  struct Bound {
    std::string type;  // UP, LO, FX, BV, UI, LI, MI, PL, FR
    std::string column;
    double value = 0.0;
    std::size_t line = 0;
  };

  std::string name;
  MpsFormat format = MpsFormat::Free;
  std::string objective_row_name;
  std::vector<Row> rows;
  std::vector<Entry> columns;
  std::vector<RhsEntry> rhs;
  std::vector<Bound> bounds;
};

/// Reads the section structure; checks that every COLUMNS/RHS record names a
/// declared row and that exactly one N row exists. RANGES records are rejected.
MpsDocument read_mps_document(std::string_view text);

/// Interprets a document as a binary minimization ILP.
IlpModel to_model(const MpsDocument& doc);

inline IlpModel parse_mps(std::string_view text) { return to_model(read_mps_document(text)); }

struct SolEntry {
  std::string name;
  double value = 0.0;
  bool integral = true;  // false when the value is not within 1e-4 of 0 or 1
};

struct SolFile {
  std::vector<SolEntry> entries;
  std::optional<double> declared_objective;
  std::vector<std::string> comments;
};

class SolError : public std::runtime_error {
 public:
  SolError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

inline constexpr double kSolIntegralityTol = 1e-4;

std::string write_sol(const Assignment& assignment, const std::vector<std::string>& var_names);

SolFile parse_sol(std::string_view text);

/// Shortest decimal text that reads back to exactly the same double.
std::string format_real(double value);

std::string read_text_file(const std::string& path);

}  // namespace memilp

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "conlog/context.hpp"
#include "conlog/lattice.hpp"

namespace conlog {

/// Burmeister CXT file: "B", a name line (usually blank), |G|, |M|, a
/// blank line, the object names, the attribute names, then one row of
/// X/. per object.
struct CxtDocument {
  FormalContext context;
  /// Content of line 2; kept so that named files round-trip.
  std::string name;
  bool crlf = false;
};

/// Throws ParseError carrying the 1-based line number.
CxtDocument parse_cxt_document(std::string_view text);
FormalContext parse_cxt(std::string_view text);
std::string serialize_cxt(const CxtDocument& doc);
std::string serialize_cxt(const FormalContext& context);

enum class CsvCells { cross_dot, binary };

/// First row: a corner cell and the attribute names. Each further row: the
/// object name and one cell per attribute, all "X"/"." or all "1"/"0".
/// Fields follow RFC 4180 quoting.
struct CsvDocument {
  FormalContext context;
  std::string corner;
  CsvCells cells = CsvCells::cross_dot;
  bool crlf = false;
};

CsvDocument parse_csv_document(std::string_view text);
FormalContext parse_csv(std::string_view text);
/// Quotes only the fields that need it.
std::string serialize_csv(const CsvDocument& doc);

/// Reads a context file, choosing the format from the extension (.cxt or
/// .csv; otherwise sniffed from a leading "B" line). Throws Error when the
/// file cannot be read and ParseError (prefixed with the path) on bad input.
FormalContext load_context(const std::string& path);
std::string read_file(const std::string& path);

/// Hasse diagram in DOT: one node per concept in list order, an edge per
/// covering pair (lower -> upper), drawn bottom to top.
std::string export_dot(const ConceptLattice& lattice, const FormalContext& context);

/// `name=sub` where `name` may carry a sort suffix (`p:2`) and `sub` is a
/// brace list of world names, e.g. `p={g1,g2}` or `q:s2={}`.
struct RawAssignment {
  std::string name;
  std::optional<std::string> sort;
  std::vector<std::string> members;
};

/// Throws ParseError on malformed text.
RawAssignment parse_assignment(std::string_view text);

/// Line-oriented key/value output:
///
///   key: value
///   list:
///     - item
///
/// Keys and items are printed as given; values containing a newline are
/// rejected.
class StructuredWriter {
 public:
  StructuredWriter& field(std::string_view key, std::string_view value);
  StructuredWriter& list(std::string_view key, const std::vector<std::string>& items);
  const std::string& str() const { return out_; }

 private:
  std::string out_;
};

}  // namespace conlog

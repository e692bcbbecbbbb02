#include "conlog/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "conlog/error.hpp"

namespace conlog {

namespace {

struct Lines {
  std::vector<std::string> lines;
  bool crlf = false;
};

Lines split_lines(std::string_view text) {
  Lines out;
  out.crlf = text.find("\r\n") != std::string_view::npos;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.lines.emplace_back(line);
    start = end + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::size_t parse_count(std::string_view s, std::size_t line, const char* what) {
  s = trim(s);
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(std::string("expected the ") + what + " as a decimal number, got '" + std::string(s) + "'",
                     line, 0);
  }
  if (v == 0) throw ParseError(std::string(what) + " must be at least 1", line, 0);
  return v;
}

}  // namespace

CxtDocument parse_cxt_document(std::string_view text) {
  const Lines in = split_lines(text);
  const auto& l = in.lines;
  auto need = [&](std::size_t i, const char* what) -> const std::string& {
    if (i >= l.size()) throw ParseError(std::string("file ends before ") + what, i + 1, 0);
    return l[i];
  };
  if (trim(need(0, "the header")) != "B") throw ParseError("expected header 'B'", 1, 0);
  std::string name = need(1, "the name line");
  const std::size_t g = parse_count(need(2, "the object count"), 3, "object count");
  const std::size_t m = parse_count(need(3, "the attribute count"), 4, "attribute count");
  if (!trim(need(4, "the separator line")).empty()) throw ParseError("expected a blank line", 5, 0);
  std::size_t at = 5;
  std::vector<std::string> objects;
  std::vector<std::string> attributes;
  for (std::size_t i = 0; i < g; ++i, ++at) objects.push_back(need(at, "the object names"));
  for (std::size_t i = 0; i < m; ++i, ++at) attributes.push_back(need(at, "the attribute names"));
  std::vector<BitSet> rows;
  for (std::size_t i = 0; i < g; ++i, ++at) {
    std::string_view row = need(at, "the incidence rows");
    while (!row.empty() && (row.back() == ' ' || row.back() == '\t')) row.remove_suffix(1);
    if (row.size() != m) {
      throw ParseError("row has " + std::to_string(row.size()) + " cells, expected " + std::to_string(m), at + 1, 0);
    }
    BitSet bits(m);
    for (std::size_t j = 0; j < m; ++j) {
      if (row[j] == 'X') {
        bits.set(j);
      } else if (row[j] != '.') {
        throw ParseError(std::string("unexpected character '") + row[j] + "' (expected X or .)", at + 1, j + 1);
      }
    }
    rows.push_back(std::move(bits));
  }
  for (std::size_t i = at; i < l.size(); ++i) {
    if (!trim(l[i]).empty()) throw ParseError("unexpected content after the incidence rows", i + 1, 0);
  }
  try {
    return {FormalContext(std::move(objects), std::move(attributes), rows), std::move(name), in.crlf};
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), 6, 0);
  }
}

FormalContext parse_cxt(std::string_view text) { return parse_cxt_document(text).context; }

std::string serialize_cxt(const CxtDocument& doc) {
  const char* nl = doc.crlf ? "\r\n" : "\n";
  const FormalContext& k = doc.context;
  std::string out = "B";
  out += nl;
  out += doc.name + nl;
  out += std::to_string(k.object_count()) + nl;
  out += std::to_string(k.attribute_count()) + nl;
  out += nl;
  for (const auto& n : k.objects()) out += n + nl;
  for (const auto& n : k.attributes()) out += n + nl;
  for (std::size_t g = 0; g < k.object_count(); ++g) {
    for (std::size_t m = 0; m < k.attribute_count(); ++m) out += k.incident(g, m) ? 'X' : '.';
    out += nl;
  }
  return out;
}

std::string serialize_cxt(const FormalContext& context) { return serialize_cxt(CxtDocument{context, {}, false}); }

namespace {

struct CsvRecord {
  std::vector<std::string> fields;
  std::size_t line = 0;
};

std::vector<CsvRecord> read_csv(std::string_view text) {
  std::vector<CsvRecord> out;
  std::size_t i = 0;
  std::size_t line = 1;
  while (i < text.size()) {
    CsvRecord rec;
    rec.line = line;
    std::string field;
    bool done = false;
    while (!done) {
      field.clear();
      if (i < text.size() && text[i] == '"') {
        const std::size_t open_line = line;
        ++i;
        while (true) {
          if (i >= text.size()) throw ParseError("unterminated quoted field", open_line, 0);
          if (text[i] == '"') {
            if (i + 1 < text.size() && text[i + 1] == '"') {
              field += '"';
              i += 2;
              continue;
            }
            ++i;
            break;
          }
          if (text[i] == '\n') ++line;
          field += text[i++];
        }
        if (i < text.size() && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
          throw ParseError("text after closing quote", line, 0);
        }
      } else {
        while (i < text.size() && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
          if (text[i] == '"') throw ParseError("quote inside unquoted field", line, 0);
          field += text[i++];
        }
      }
      rec.fields.push_back(field);
      if (i < text.size() && text[i] == ',') {
        ++i;
      } else {
        if (i < text.size() && text[i] == '\r') ++i;
        if (i < text.size() && text[i] == '\n') ++i;
        ++line;
        done = true;
      }
    }
    out.push_back(std::move(rec));
  }
  return out;
}

bool needs_quotes(std::string_view f) {
  if (f.find_first_of(",\"\r\n") != std::string_view::npos) return true;
  return !f.empty() && (std::isspace(static_cast<unsigned char>(f.front())) ||
                        std::isspace(static_cast<unsigned char>(f.back())));
}

std::string quote(std::string_view f) {
  if (!needs_quotes(f)) return std::string(f);
  std::string out = "\"";
  for (char c : f) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

CsvDocument parse_csv_document(std::string_view text) {
  auto records = read_csv(text);
  while (!records.empty() && records.back().fields.size() == 1 && records.back().fields[0].empty()) {
    records.pop_back();
  }
  if (records.empty()) throw ParseError("empty CSV input", 1, 0);
  const auto& header = records.front().fields;
  if (header.size() < 2) throw ParseError("header needs a corner cell and at least one attribute", 1, 0);
  if (records.size() < 2) throw ParseError("no object rows", 2, 0);
  const std::size_t m = header.size() - 1;
  std::vector<std::string> attributes(header.begin() + 1, header.end());
  std::vector<std::string> objects;
  std::vector<BitSet> rows;
  std::optional<CsvCells> style;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != m + 1) {
      throw ParseError("row has " + std::to_string(rec.fields.size()) + " fields, expected " + std::to_string(m + 1),
                       rec.line, 0);
    }
    objects.push_back(rec.fields[0]);
    BitSet bits(m);
    for (std::size_t j = 0; j < m; ++j) {
      const std::string& c = rec.fields[j + 1];
      CsvCells s;
      bool v;
      if (c == "X" || c == ".") {
        s = CsvCells::cross_dot;
        v = c == "X";
      } else if (c == "1" || c == "0") {
        s = CsvCells::binary;
        v = c == "1";
      } else {
        throw ParseError("cell '" + c + "' is not X, ., 1 or 0", rec.line, j + 2);
      }
      if (style && *style != s) throw ParseError("mixed cell styles (X/. and 1/0)", rec.line, j + 2);
      style = s;
      bits.set(j, v);
    }
    rows.push_back(std::move(bits));
  }
  try {
    return {FormalContext(std::move(objects), std::move(attributes), rows), header[0], *style,
            text.find("\r\n") != std::string_view::npos};
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), 1, 0);
  }
}

FormalContext parse_csv(std::string_view text) { return parse_csv_document(text).context; }

std::string serialize_csv(const CsvDocument& doc) {
  const char* nl = doc.crlf ? "\r\n" : "\n";
  const FormalContext& k = doc.context;
  std::string out = quote(doc.corner);
  for (const auto& a : k.attributes()) out += "," + quote(a);
  out += nl;
  const char* on = doc.cells == CsvCells::binary ? "1" : "X";
  const char* off = doc.cells == CsvCells::binary ? "0" : ".";
  for (std::size_t g = 0; g < k.object_count(); ++g) {
    out += quote(k.objects()[g]);
    for (std::size_t m = 0; m < k.attribute_count(); ++m) {
      out += ',';
      out += k.incident(g, m) ? on : off;
    }
    out += nl;
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

FormalContext load_context(const std::string& path) {
  const std::string text = read_file(path);
  std::string ext;
  if (auto dot = path.rfind('.'); dot != std::string::npos) ext = path.substr(dot + 1);
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  bool cxt = ext == "cxt";
  if (ext != "cxt" && ext != "csv") cxt = trim(text.substr(0, text.find('\n'))) == "B";
  try {
    return cxt ? parse_cxt(text) : parse_csv(text);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), 0, 0);
  }
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string export_dot(const ConceptLattice& lattice, const FormalContext& context) {
  std::string out = "digraph " + std::string(kind_name(lattice.kind())) + " {\n";
  out += "  rankdir=BT;\n";
  out += "  node [shape=box];\n";
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const auto& c = lattice.concepts()[i];
    out += "  c" + std::to_string(i) + " [label=\"" + dot_escape(format_subset(c.extent, context)) + "\\n" +
           dot_escape(format_subset(c.intent, context)) + "\"];\n";
  }
  for (const auto& [lo, hi] : lattice.covers()) {
    out += "  c" + std::to_string(lo) + " -> c" + std::to_string(hi) + ";\n";
  }
  return out + "}\n";
}

RawAssignment parse_assignment(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) throw ParseError("assignment needs the form name={w1,w2}", 0, 0);
  RawAssignment out;
  std::string_view lhs = trim(text.substr(0, eq));
  std::string_view rhs = trim(text.substr(eq + 1));
  if (auto colon = lhs.find(':'); colon != std::string_view::npos) {
    out.sort = std::string(trim(lhs.substr(colon + 1)));
    lhs = trim(lhs.substr(0, colon));
  }
  if (lhs.empty()) throw ParseError("assignment has no variable name", 0, 1);
  out.name = std::string(lhs);
  if (rhs.size() < 2 || rhs.front() != '{' || rhs.back() != '}') {
    throw ParseError("assignment value must be a brace list like {g1,g2}", 0, eq + 2);
  }
  rhs = trim(rhs.substr(1, rhs.size() - 2));
  while (!rhs.empty()) {
    const auto comma = rhs.find(',');
    std::string_view item = trim(rhs.substr(0, comma));
    if (item.empty()) throw ParseError("empty world name in assignment", 0, 0);
    out.members.emplace_back(item);
    if (comma == std::string_view::npos) break;
    rhs = rhs.substr(comma + 1);
    if (trim(rhs).empty()) throw ParseError("trailing comma in assignment", 0, 0);
  }
  return out;
}

StructuredWriter& StructuredWriter::field(std::string_view key, std::string_view value) {
  if (value.find('\n') != std::string_view::npos) throw Error("structured value contains a newline");
  out_ += std::string(key) + ": " + std::string(value) + "\n";
  return *this;
}

StructuredWriter& StructuredWriter::list(std::string_view key, const std::vector<std::string>& items) {
  out_ += std::string(key) + ":" + (items.empty() ? " []\n" : "\n");
  for (const auto& item : items) {
    if (item.find('\n') != std::string::npos) throw Error("structured item contains a newline");
    out_ += "  - " + item + "\n";
  }
  return *this;
}

}  // namespace conlog

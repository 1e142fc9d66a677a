#include "csv.hpp"

#include <cctype>

#include "refnet/errors.hpp"

namespace refnet::csv {

namespace {

std::string_view trim(std::string_view s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

std::vector<std::string> split_line(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string current;
  bool in_quotes = false;
  bool was_quoted = false;

  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"') {
      if (!current.empty() && !trim(current).empty()) {
        throw ParseError("unexpected quote inside unquoted field", line_no);
      }
      current.clear();
      in_quotes = true;
      was_quoted = true;
    } else if (c == ',') {
      fields.push_back(was_quoted ? current : std::string(trim(current)));
      current.clear();
      was_quoted = false;
    } else {
      current.push_back(c);
    }
    ++i;
  }
  if (in_quotes) {
    throw ParseError("unterminated quoted field", line_no);
  }
  fields.push_back(was_quoted ? current : std::string(trim(current)));
  return fields;
}

}  // namespace

std::vector<Row> parse(std::string_view text) {
  std::vector<Row> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line =
        nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!trim(line).empty()) {
      rows.push_back(Row{split_line(line, line_no), line_no});
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return rows;
}

std::string escape(std::string_view field) {
  bool needs_quotes = false;
  for (char c : field) {
    if (c == ',' || c == '"' || c == '\n' || c == '\r') needs_quotes = true;
  }
  if (!field.empty() &&
      (std::isspace(static_cast<unsigned char>(field.front())) ||
       std::isspace(static_cast<unsigned char>(field.back())))) {
    needs_quotes = true;
  }
  if (!needs_quotes) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

}  // namespace refnet::csv

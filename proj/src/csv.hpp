#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace refnet::csv {

struct Row {
  std::vector<std::string> fields;
  std::size_t line = 0;  // 1-based line number in the source text
};

/// Minimal RFC-4180 reader: comma-separated, double quotes may wrap a field,
/// "" inside quotes escapes a quote. Quoted fields may not span lines. Fields
/// are trimmed of surrounding whitespace (outside quotes). Empty lines are
/// skipped. Throws ParseError on stray quotes.
std::vector<Row> parse(std::string_view text);

/// Quote a field if it contains a comma, quote or leading/trailing space.
std::string escape(std::string_view field);

}  // namespace refnet::csv

#pragma once

// Minimal RFC 4180 reader/writer used by the ledger, roster and matrix formats.

#include <string>
#include <string_view>
#include <vector>

namespace socnet::csv {

struct Row {
    std::size_t line = 0;  // 1-based line where the record starts
    std::vector<std::string> cells;
};

/// Splits `text` into records. Quoted fields may contain delimiters, quotes
/// ("" escape) and newlines. CRLF is accepted. Throws ParseError on an
/// unterminated quote.
std::vector<Row> read(std::string_view text, char delimiter = ',');

/// Quotes the field only when it contains the delimiter, a quote or a newline.
std::string escape(std::string_view field, char delimiter = ',');

std::string join(const std::vector<std::string>& fields, char delimiter = ',');

}  // namespace socnet::csv

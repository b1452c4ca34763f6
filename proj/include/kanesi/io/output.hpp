#pragma once

#include <string>
#include <vector>

namespace kanesi::io {

/// Fixed-precision number text used by every writer ("%.12g"), so repeated
/// runs are byte-identical.
std::string number(double v);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// RFC-4180-style CSV: header row, comma separator, CRLF-free, quoted only
/// where a cell needs it.
std::string to_csv(const Table& t);

/// Write `content` to dir/name, creating dir if needed. Returns the path.
std::string write_file(const std::string& dir, const std::string& name, const std::string& content);

}  // namespace kanesi::io

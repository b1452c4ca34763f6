#include "kanesi/io/output.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace kanesi::io {

std::string number(double v) {
  if (v == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

std::string cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

void append_row(std::string& out, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + cell(row[i]);
  out += '\n';
}

}  // namespace

std::string to_csv(const Table& t) {
  std::string out;
  append_row(out, t.header);
  for (const auto& r : t.rows) {
    if (r.size() != t.header.size()) throw std::logic_error("CSV row width differs from header");
    append_row(out, r);
  }
  return out;
}

std::string write_file(const std::string& dir, const std::string& name, const std::string& content) {
  const std::filesystem::path d(dir.empty() ? "." : dir);
  std::filesystem::create_directories(d);
  const auto p = d / name;
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << content;
  return p.string();
}

}  // namespace kanesi::io

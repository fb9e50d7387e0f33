#include "csv.hpp"

#include <charconv>
#include <cmath>

#include "hkt/error.hpp"

namespace hkt::csv {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

namespace {

double parse_number(const std::string& s, std::size_t line_no) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v))
    throw DomainError("line " + std::to_string(line_no) + ": invalid number '" + s + "'");
  return v;
}

}  // namespace

Table read(std::istream& in) {
  Table t;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    if (t.header.empty()) {
      if (line.find(',') == std::string::npos && line.find('=') != std::string::npos) {
        const auto eq = line.find('=');
        t.preamble[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
        continue;
      }
      t.header = split(line, ',');
      continue;
    }
    const auto cells = split(line, ',');
    if (cells.size() != t.header.size())
      throw DomainError("line " + std::to_string(line_no) + ": expected " +
                        std::to_string(t.header.size()) + " columns");
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(parse_number(c, line_no));
    t.rows.push_back(std::move(row));
  }
  if (t.header.empty()) throw DomainError("CSV has no header line");
  return t;
}

}  // namespace hkt::csv

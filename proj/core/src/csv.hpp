#pragma once

// Minimal numeric CSV reader shared by the polar and geometry loaders.

#include <istream>
#include <map>
#include <string>
#include <vector>

namespace hkt::csv {

struct Table {
  std::map<std::string, std::string> preamble;  // key=value lines before the header
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Throws DomainError on malformed numbers or ragged rows.
Table read(std::istream& in);

std::vector<std::string> split(const std::string& line, char sep);
std::string trim(const std::string& s);

}  // namespace hkt::csv

#pragma once

#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hardattn/core/alphabet.hpp"

namespace test_support {

inline std::string data_path(const std::string& name) { return std::string(HARDATTN_DATA_DIR) + "/" + name; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string read_data(const std::string& name) { return read_file(data_path(name)); }

/// Every word of length 1..max_len over k symbols, shortest first.
inline void for_each_word(std::size_t k, std::size_t max_len, const std::function<void(const hardattn::Word&)>& fn) {
  for (std::size_t len = 1; len <= max_len; ++len) {
    hardattn::Word w(len, 0);
    while (true) {
      fn(w);
      std::size_t p = len;
      while (p > 0 && w[p - 1] + 1 == k) w[--p] = 0;
      if (p == 0) break;
      ++w[p - 1];
    }
  }
}

/// Rows of a trace grid file: label -> cells.
inline std::vector<std::pair<std::string, std::vector<std::string>>> read_grid(const std::string& name) {
  std::vector<std::pair<std::string, std::vector<std::string>>> rows;
  std::istringstream in(read_data(name));
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string label, cell;
    if (!(fields >> label)) continue;
    std::vector<std::string> cells;
    while (fields >> cell) cells.push_back(cell);
    rows.emplace_back(label, cells);
  }
  return rows;
}

}  // namespace test_support

#include "qobjex/mgrid.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "qobjex/error.hpp"

namespace qobjex {

namespace {

void finish(std::vector<long>& grid) {
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
}

long parse_long(std::string_view text) {
  long value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw InputError("bad m-grid number \"" + std::string(text) + "\"");
  return value;
}

}  // namespace

std::vector<long> auto_m_grid(long env, long m0) {
  if (env < 1) throw InputError("environment must be non-empty");
  std::vector<long> grid;
  constexpr long dense = 200;
  for (long m = 0; m <= std::min(env, dense); ++m) grid.push_back(m);
  for (double x = dense; x < static_cast<double>(env); x *= 1.02) grid.push_back(std::lround(x));
  if (m0 > 0) {
    for (long m = std::max(0L, m0 - 25); m <= std::min(env, m0 + 25); ++m) grid.push_back(m);
  }
  grid.push_back(env);
  finish(grid);
  return grid;
}

std::vector<long> parse_m_grid(std::string_view text, long env, long m0) {
  if (text == "auto") return auto_m_grid(env, m0);
  std::vector<long> grid;
  if (text == "all") {
    for (long m = 0; m <= env; ++m) grid.push_back(m);
    return grid;
  }
  if (text.find(':') != std::string_view::npos) {
    std::vector<long> parts;
    std::size_t start = 0;
    while (true) {
      const std::size_t colon = text.find(':', start);
      parts.push_back(parse_long(text.substr(start, colon - start)));
      if (colon == std::string_view::npos) break;
      start = colon + 1;
    }
    if (parts.size() > 3) throw InputError("m-grid range must be a:b or a:b:step");
    const long step = parts.size() == 3 ? parts[2] : 1;
    if (step < 1) throw InputError("m-grid step must be positive");
    if (parts[1] < parts[0]) throw InputError("m-grid range is empty");
    for (long m = parts[0]; m <= parts[1]; m += step) grid.push_back(m);
  } else {
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = text.find(',', start);
      grid.push_back(parse_long(text.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }
  for (long m : grid) {
    if (m < 0 || m > env) {
      throw InputError("m-grid value " + std::to_string(m) + " outside [0, " + std::to_string(env) + "]");
    }
  }
  finish(grid);
  return grid;
}

}  // namespace qobjex

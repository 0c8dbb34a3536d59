#ifndef QOBJEX_MGRID_HPP
#define QOBJEX_MGRID_HPP

#include <string_view>
#include <vector>

namespace qobjex {

/// Every m <= 200, geometric steps (ratio 1.02) above, every m within 25 of
/// m0 (skipped when m0 <= 0), and always env itself. Sorted, unique.
std::vector<long> auto_m_grid(long env, long m0);

/// Grid syntax: "all", "auto", "a:b", "a:b:step" or a comma list "1,4,9".
/// Values must lie in [0, env]; the result is sorted and unique.
std::vector<long> parse_m_grid(std::string_view text, long env, long m0);

}  // namespace qobjex

#endif  // QOBJEX_MGRID_HPP

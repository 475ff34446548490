#include "fundsol/multi_index.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "fundsol/errors.hpp"

namespace fundsol {

MultiIndex MultiIndex::unit(int n, int axis) {
  MultiIndex m = zero(n);
  m.entries[axis] = 1;
  return m;
}

int MultiIndex::order() const {
  return std::accumulate(entries.begin(), entries.end(), 0);
}

double MultiIndex::monomial(const std::vector<double>& x) const {
  double v = 1.0;
  for (std::size_t i = 0; i < entries.size(); ++i)
    for (int p = 0; p < entries[i]; ++p) v *= x[i];
  return v;
}

std::string MultiIndex::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) os << ',';
    os << entries[i];
  }
  return os.str();
}

MultiIndex MultiIndex::parse(const std::string& s, int n) {
  std::vector<int> e;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &pos);
    } catch (const std::exception&) {
      throw ParseError("multi-index: bad component '" + tok + "'");
    }
    if (pos != tok.size() || v < 0)
      throw ParseError("multi-index: bad component '" + tok + "'");
    e.push_back(v);
  }
  if (static_cast<int>(e.size()) != n)
    throw ParseError("multi-index '" + s + "': expected " + std::to_string(n) +
                     " components");
  return MultiIndex(std::move(e));
}

static void enumerate(int n, int d, bool exact, std::vector<int>& cur, int pos,
                      int used, std::vector<MultiIndex>& out) {
  if (pos == n) {
    if (!exact || used == d) out.emplace_back(cur);
    return;
  }
  for (int v = 0; v <= d - used; ++v) {
    cur[pos] = v;
    enumerate(n, d, exact, cur, pos + 1, used + v, out);
  }
  cur[pos] = 0;
}

std::vector<MultiIndex> multi_indices_up_to(int n, int d) {
  std::vector<MultiIndex> out;
  std::vector<int> cur(n, 0);
  for (int ord = 0; ord <= d; ++ord)
    enumerate(n, ord, true, cur, 0, 0, out);
  return out;
}

std::vector<MultiIndex> multi_indices_of_order(int n, int d) {
  std::vector<MultiIndex> out;
  std::vector<int> cur(n, 0);
  enumerate(n, d, true, cur, 0, 0, out);
  return out;
}

}  // namespace fundsol

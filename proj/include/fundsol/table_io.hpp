#ifndef FUNDSOL_TABLE_IO_HPP
#define FUNDSOL_TABLE_IO_HPP

#include <string>

#include "fundsol/assembly.hpp"

namespace fundsol {

/// Versioned JSON serialization of a table. Keys are emitted in sorted
/// order and doubles survive a round trip bit-exactly.
std::string table_to_json(const FundamentalSolutionTable& t);
FundamentalSolutionTable table_from_json(const std::string& text);

void save_table(const FundamentalSolutionTable& t, const std::string& path);
FundamentalSolutionTable load_table(const std::string& path);

}  // namespace fundsol

#endif

#pragma once

#include <iosfwd>
#include <string>

#include "hrodds/core.hpp"

namespace hrodds {

// Dataset wire format: header `time,event,arm`, event and arm in {0,1},
// times printed with %.17g so every double round-trips bit-exactly.
void write_dataset_csv(const SurvivalDataset& data, std::ostream& out);
std::string dataset_to_csv(const SurvivalDataset& data);

// Throws ParseError with a 1-based line number on malformed input.
SurvivalDataset read_dataset_csv(std::istream& in);
SurvivalDataset dataset_from_csv(const std::string& text);

}  // namespace hrodds

#pragma once

#include "timelot/empirics.hpp"

#include <string>
#include <vector>

namespace timelot {

/// The two experiment tables shipped with the library, as printed in their
/// sources (the inconsistent cell in the second table included; see audit()).
enum class Dataset { dejarnette, onay };

/// CSV text of a shipped dataset ("rates" schema).
const std::string& shipped_dataset_csv(Dataset dataset);

/// Parsed records of a shipped dataset.
std::vector<ChoiceProblemRecord> shipped_dataset(Dataset dataset);

} // namespace timelot

#pragma once

#include <string>
#include <vector>

#include "regkit/rhetoric.hpp"

namespace regkit::fixtures {

// Web-search domain pair used throughout the test corpus.
ToolDescription d01_neutral();
ToolDescription d01_optimized();

// Three-point spectrum for the legal-boundary pipeline.
ToolDescription d01_structured();  // API-reference style, no evaluative language
ToolDescription d01_legal();       // superlatives and benefit framing only
ToolDescription d01_full();        // adds fabricated statistics and endorsements

// Deterministic corpus of descriptions spanning L0..L4 registers across
// several domains, for property tests.
std::vector<ToolDescription> corpus(std::size_t count = 50);

}  // namespace regkit::fixtures

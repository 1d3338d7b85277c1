#pragma once

#include <filesystem>
#include <string>

#include "orbitns/spectral.hpp"

namespace orbitns {

// State documents: {"N": n, "modes": [{"k": [k1,k2,k3], "re": [3], "im": [3]}, ...]}
// covering every retained mode exactly once, in lattice order when written.

std::string state_to_json(const TruncatedState& u);

/// Parses and validates a state document. Throws ValidationError for malformed
/// documents, missing or duplicate modes, and invariant violations.
TruncatedState state_from_json(const std::string& text);

TruncatedState read_state(const std::filesystem::path& path);
void write_state(const std::filesystem::path& path, const TruncatedState& u);

}  // namespace orbitns

namespace orbitns {

/// Writes `content` to a temporary sibling of `path` and renames it into place,
/// so a failed run never leaves a partial file behind.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_text(const std::filesystem::path& path);

}  // namespace orbitns

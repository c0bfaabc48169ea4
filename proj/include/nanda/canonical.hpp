#pragma once

#include <json.hpp>

#include "nanda/common.hpp"

namespace nanda {

using Json = nlohmann::json;

/// Deterministic JSON encoding used as the signing substrate everywhere:
/// object keys in lexicographic (byte) order, no insignificant whitespace,
/// UTF-8 passthrough with minimal escaping, numbers in shortest
/// round-trip decimal form. Two structurally equal documents always encode
/// to identical bytes regardless of construction order.
///
/// Throws NON_FINITE_NUMBER for NaN/Inf and INVALID_UTF8 for byte sequences
/// that are not well-formed UTF-8.
std::string canonical_json(const Json& doc);

Bytes canonical_bytes(const Json& doc);
Sha256 canonical_digest(const Json& doc);

/// Strict parse of a JSON text; throws PARSE_FAILURE instead of the
/// library's exception type.
Json parse_json(std::string_view text);

}  // namespace nanda

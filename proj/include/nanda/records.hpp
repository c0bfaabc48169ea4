#pragma once

#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "nanda/canonical.hpp"
#include "nanda/common.hpp"

namespace nanda::records {

/// The lean index record: identity, metadata pointers, TTL and a signature
/// by the agent key bound to the record. Endpoints never live here; they
/// change through AgentFacts without touching the index.
struct AgentAddr {
  std::string agent_id;    // "nanda:" + uuid-shaped id (lowercase hex groups)
  std::string agent_name;  // canonical URN form
  std::string primary_facts_url;
  std::optional<std::string> private_facts_url;
  std::optional<std::string> adaptive_resolver_url;
  std::uint32_t ttl_s = 0;
  std::uint64_t version = 0;
  bool tombstone = false;
  PublicKey public_key{};  // agent signing key
  Signature signature{};   // over canonical_view() bytes, by public_key
  // Key-rotation proof: the previous key countersigns the same canonical
  // bytes, so a key change cannot be injected by the index operator alone.
  std::optional<PublicKey> prev_public_key;
  std::optional<Signature> prev_key_countersig;

  Json to_json() const;
  static AgentAddr from_json(const Json& j);  // throws PARSE_FAILURE / MALFORMED_RECORD

  /// Every field except the signatures, in wire spelling.
  Json canonical_view() const;
  Bytes signing_payload() const;

  bool operator==(const AgentAddr&) const = default;
};

constexpr std::uint32_t kMaxAddrTtlS = 86400;  // one-day cap

/// Structural invariants (id shape, ttl bounds, name parses). Throws
/// MALFORMED_RECORD.
void validate_addr(const AgentAddr& addr);

/// Append-only intern table mapping 8-byte digests to URI/URN strings; the
/// compact record layout stores digests, full strings live here exactly
/// once. Concurrent readers, serialized appends.
class UrlTable {
 public:
  UrlTable() = default;
  UrlTable(const UrlTable& other);
  UrlTable& operator=(const UrlTable&) = delete;

  Digest8 put(const std::string& s);
  const std::string* find(const Digest8& d) const;
  std::string get(const Digest8& d) const;  // throws TABLE_MISS
  std::size_t size() const;
  std::vector<std::pair<Digest8, std::string>> entries() const;

 private:
  mutable std::shared_mutex mu_;
  std::map<Digest8, std::string> map_;
};

constexpr std::size_t kCompactCoreBytes = 61;

/// Fixed-layout binary form of an AgentAddr. The 61-byte core is the
/// budgeted index payload; signature and key ride alongside it.
///
/// Core layout (little-endian integers):
///   [0,16)  agent id hex digits packed to 16 bytes (zero-padded nibbles)
///   [16,24) name digest
///   [24,32) primary facts URL digest
///   [32,40) private facts URL digest (zero when absent)
///   [40,48) adaptive resolver URL digest (zero when absent)
///   [48,52) ttl seconds, u32
///   [52,60) version, u64
///   [60]    flags: bit0 has_private, bit1 has_adaptive, bit2 tombstone,
///           bits 3-5 id pad nibble count (0-4)
struct CompactRecord {
  std::array<std::uint8_t, kCompactCoreBytes> core{};
  Signature signature{};
  PublicKey public_key{};

  bool operator==(const CompactRecord&) const = default;
};

CompactRecord compact_encode(const AgentAddr& addr, UrlTable& table);
AgentAddr compact_decode(const CompactRecord& rec, const UrlTable& table);  // throws TABLE_MISS

// --- AgentFacts ---

// Facts documents stay schema-flexible: they are carried as JSON with
// unknown fields preserved verbatim, and validated against the published
// schema rather than parsed into a closed struct.

struct ValidationIssue {
  enum class Severity { error, warning };
  Severity severity = Severity::error;
  std::string path;  // dotted path of the offending field
  std::string rule;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const;
  std::vector<std::string> error_paths() const;
  Json to_json() const;
};

/// Validates a parsed facts document against the schema: required fields
/// with their shapes, range rules, endpoint-group presence. Unknown fields
/// yield warnings, never errors.
ValidationReport validate_facts(const Json& facts);

/// Parses text and validates; PARSE_FAILURE only for syntactically invalid
/// input.
ValidationReport validate_facts_text(std::string_view text);

struct AdaptiveRef {
  std::string url;
  std::vector<std::string> policies;
};

struct Endpoints {
  std::vector<std::string> static_urls;
  std::vector<std::string> rotating;
  std::optional<AdaptiveRef> adaptive;
};

/// Extracts the endpoints section (accepts both the object form and the
/// plain-string adaptive_resolver shorthand).
Endpoints endpoints_of(const Json& facts);

constexpr std::uint32_t kDefaultFactsTtlS = 3600;
std::uint32_t facts_ttl(const Json& facts);  // declared ttl or the default

enum class TtlClass { static_endpoint, rotating_endpoint, adaptive_token };

/// True iff ttl falls inside the class range: static 1-6 h, rotating
/// 5-15 min, adaptive tokens 30-60 s.
bool ttl_class_ok(TtlClass klass, std::uint32_t ttl_s);

/// ISO-8601 UTC timestamp ("2025-03-15T09:30:00Z") to epoch seconds;
/// nullopt when unparseable.
std::optional<std::int64_t> parse_timestamp(std::string_view iso);

}  // namespace nanda::records

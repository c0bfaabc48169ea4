#pragma once

#include <set>
#include <string>
#include <string_view>

#include "nanda/common.hpp"

namespace nanda::naming {

enum class Scheme { urn, handle };

/// Surface spelling of a name as written. "@ns:local", "agent:ns:local" and
/// "urn:agent:ns:local" are three spellings of the same canonical URN.
enum class Surface { urn_full, urn_bare, handle };

struct AgentName {
  Surface surface = Surface::urn_full;
  std::string ns;     // may embed a "DID:" marker, e.g. "DID:company"
  std::string local;  // empty for bare names ("@company")
  std::string raw;    // original input, reproduced byte-for-byte by format()

  Scheme scheme() const { return surface == Surface::handle ? Scheme::handle : Scheme::urn; }
  bool is_did() const { return ns.rfind("DID:", 0) == 0; }

  /// "urn:agent:<ns>[:<local>]" — the form used in all wire payloads and as
  /// the digest input.
  std::string canonical_urn() const;

  bool operator==(const AgentName&) const = default;
};

/// Accepts "@..." handles, "urn:agent:..." URNs and the bare "agent:..."
/// spelling. Throws MALFORMED_NAME on bad prefix, empty segment or an
/// illegal character (only visible ASCII without ':' and '@' is allowed
/// inside a segment).
AgentName parse_agent_name(std::string_view raw);

/// Renders the given parts in the given surface syntax; parse of the result
/// round-trips.
std::string format_agent_name(Surface surface, const std::string& ns, const std::string& local);

Digest8 name_digest(const AgentName& name);

enum class RegistrationKind {
  native_civil,
  native_government,
  enterprise_routed,
  enterprise_visible,
  web3_routed,
  web3_direct,
};

const char* kind_name(RegistrationKind k);

struct RegistrationModel {
  RegistrationKind kind;
  std::string authority;  // administering entity; empty for native_civil
  bool operator==(const RegistrationModel&) const = default;
};

struct RegistryConfig {
  std::set<std::string> enterprise_namespaces;
  std::set<std::string> government_namespaces;
};

/// Deterministic classification of a parsed name against the configured
/// namespace lists. Throws UNKNOWN_NAMESPACE when an "ns:local" name uses a
/// namespace the config does not list (the shape alone cannot decide).
RegistrationModel classify_registration(const AgentName& name, const RegistryConfig& config);

}  // namespace nanda::naming

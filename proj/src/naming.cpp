#include "nanda/naming.hpp"

#include <vector>

namespace nanda::naming {

namespace {

constexpr std::string_view kUrnPrefix = "urn:agent:";
constexpr std::string_view kBarePrefix = "agent:";
constexpr std::string_view kDidMarker = "DID:";

bool valid_segment(std::string_view seg) {
  if (seg.empty()) return false;
  for (const char c : seg) {
    const auto u = static_cast<unsigned char>(c);
    if (u <= 0x20 || u >= 0x7F) return false;  // visible ASCII only
    if (c == ':' || c == '@') return false;
  }
  return true;
}

std::vector<std::string_view> split_colon(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(':', start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

// Splits the part after the prefix into (ns, local). A leading case-sensitive
// "DID:" folds the following segment into the namespace.
std::pair<std::string, std::string> parse_body(std::string_view body, std::string_view raw) {
  bool did = false;
  if (body.rfind(kDidMarker, 0) == 0) {
    did = true;
    body.remove_prefix(kDidMarker.size());
  }
  const auto segs = split_colon(body);
  for (const auto seg : segs) {
    if (!valid_segment(seg)) {
      fail(Err::malformed_name, "bad segment in '" + std::string(raw) + "'");
    }
  }
  if (segs.empty() || segs.size() > 2) {
    fail(Err::malformed_name, "wrong segment count in '" + std::string(raw) + "'");
  }
  std::string ns = did ? std::string(kDidMarker) + std::string(segs[0]) : std::string(segs[0]);
  std::string local = segs.size() == 2 ? std::string(segs[1]) : std::string();
  return {std::move(ns), std::move(local)};
}

}  // namespace

std::string AgentName::canonical_urn() const {
  std::string out(kUrnPrefix);
  out += ns;
  if (!local.empty()) {
    out += ':';
    out += local;
  }
  return out;
}

AgentName parse_agent_name(std::string_view raw) {
  if (raw.empty()) fail(Err::malformed_name, "empty name");
  AgentName name;
  name.raw = std::string(raw);
  std::string_view body;
  if (raw.front() == '@') {
    name.surface = Surface::handle;
    body = raw.substr(1);
  } else if (raw.rfind(kUrnPrefix, 0) == 0) {
    name.surface = Surface::urn_full;
    body = raw.substr(kUrnPrefix.size());
  } else if (raw.rfind(kBarePrefix, 0) == 0) {
    name.surface = Surface::urn_bare;
    body = raw.substr(kBarePrefix.size());
  } else {
    fail(Err::malformed_name, "unrecognized prefix in '" + std::string(raw) + "'");
  }
  auto [ns, local] = parse_body(body, raw);
  name.ns = std::move(ns);
  name.local = std::move(local);
  return name;
}

std::string format_agent_name(Surface surface, const std::string& ns, const std::string& local) {
  std::string body = ns;
  if (!local.empty()) {
    body += ':';
    body += local;
  }
  switch (surface) {
    case Surface::handle: return "@" + body;
    case Surface::urn_bare: return std::string(kBarePrefix) + body;
    case Surface::urn_full: return std::string(kUrnPrefix) + body;
  }
  return body;
}

Digest8 name_digest(const AgentName& name) { return digest8(name.canonical_urn()); }

const char* kind_name(RegistrationKind k) {
  switch (k) {
    case RegistrationKind::native_civil: return "NATIVE_CIVIL";
    case RegistrationKind::native_government: return "NATIVE_GOVERNMENT";
    case RegistrationKind::enterprise_routed: return "ENTERPRISE_ROUTED";
    case RegistrationKind::enterprise_visible: return "ENTERPRISE_VISIBLE";
    case RegistrationKind::web3_routed: return "WEB3_ROUTED";
    case RegistrationKind::web3_direct: return "WEB3_DIRECT";
  }
  return "UNKNOWN";
}

RegistrationModel classify_registration(const AgentName& name, const RegistryConfig& config) {
  if (name.is_did()) {
    const std::string authority = name.ns.substr(4);
    if (name.local.empty()) return {RegistrationKind::web3_routed, authority};
    return {RegistrationKind::web3_direct, authority};
  }
  if (config.government_namespaces.count(name.ns)) {
    return {RegistrationKind::native_government, name.ns};
  }
  if (config.enterprise_namespaces.count(name.ns)) {
    if (name.local.empty()) return {RegistrationKind::enterprise_routed, name.ns};
    return {RegistrationKind::enterprise_visible, name.ns};
  }
  if (name.local.empty()) return {RegistrationKind::native_civil, ""};
  fail(Err::unknown_namespace, "namespace '" + name.ns + "' is not configured");
}

}  // namespace nanda::naming

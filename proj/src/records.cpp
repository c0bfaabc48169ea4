#include "nanda/records.hpp"

#include <algorithm>
#include <cstring>
#include <ctime>

#include "nanda/naming.hpp"

namespace nanda::records {

namespace {

void put_u32le(std::uint8_t* p, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) p[i] = static_cast<std::uint8_t>(v >> (8 * i));
}

void put_u64le(std::uint8_t* p, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) p[i] = static_cast<std::uint8_t>(v >> (8 * i));
}

std::uint32_t get_u32le(const std::uint8_t* p) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
  return v;
}

std::uint64_t get_u64le(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return v;
}

bool is_lower_hex(char c) { return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'); }

// "nanda:xxxxxxxx-xxxx-xxxx-xxxx-x{8,12}" with lowercase hex digits. The
// last group is allowed to run short of the canonical 12 because published
// example ids do; the pad count is carried in the compact flags so decoding
// reproduces the exact string.
std::optional<std::string> agent_id_hex_digits(const std::string& agent_id) {
  constexpr std::string_view prefix = "nanda:";
  if (agent_id.rfind(prefix, 0) != 0) return std::nullopt;
  const std::string_view body{agent_id.data() + prefix.size(), agent_id.size() - prefix.size()};
  const std::size_t groups[4] = {8, 4, 4, 4};
  std::string digits;
  std::size_t pos = 0;
  for (const std::size_t g : groups) {
    if (body.size() < pos + g) return std::nullopt;
    for (std::size_t i = 0; i < g; ++i) {
      if (!is_lower_hex(body[pos + i])) return std::nullopt;
      digits.push_back(body[pos + i]);
    }
    pos += g;
    if (pos >= body.size() || body[pos] != '-') return std::nullopt;
    ++pos;
  }
  const std::size_t tail = body.size() - pos;
  if (tail < 8 || tail > 12) return std::nullopt;
  for (std::size_t i = 0; i < tail; ++i) {
    if (!is_lower_hex(body[pos + i])) return std::nullopt;
    digits.push_back(body[pos + i]);
  }
  return digits;
}

std::string agent_id_from_digits(std::string_view digits) {
  std::string out = "nanda:";
  const std::size_t groups[4] = {8, 4, 4, 4};
  std::size_t pos = 0;
  for (const std::size_t g : groups) {
    out.append(digits.substr(pos, g));
    out.push_back('-');
    pos += g;
  }
  out.append(digits.substr(pos));
  return out;
}

bool plausible_url(const std::string& u) {
  return u.rfind("http://", 0) == 0 || u.rfind("https://", 0) == 0 || u.rfind("ipfs://", 0) == 0;
}

}  // namespace

Json AgentAddr::canonical_view() const {
  Json j;
  j["agent_id"] = agent_id;
  j["agent_name"] = agent_name;
  j["primary_facts_url"] = primary_facts_url;
  if (private_facts_url) j["private_facts_url"] = *private_facts_url;
  if (adaptive_resolver_url) j["adaptive_resolver_url"] = *adaptive_resolver_url;
  j["ttl"] = ttl_s;
  j["version"] = version;
  if (tombstone) j["tombstone"] = true;
  j["public_key"] = to_base64(public_key);
  if (prev_public_key) j["prev_public_key"] = to_base64(*prev_public_key);
  return j;
}

Bytes AgentAddr::signing_payload() const { return canonical_bytes(canonical_view()); }

Json AgentAddr::to_json() const {
  Json j = canonical_view();
  j["signature"] = to_base64(signature);
  if (prev_key_countersig) j["prev_key_countersig"] = to_base64(*prev_key_countersig);
  return j;
}

AgentAddr AgentAddr::from_json(const Json& j) {
  if (!j.is_object()) fail(Err::parse_failure, "AgentAddr must be a JSON object");
  AgentAddr a;
  try {
    a.agent_id = j.at("agent_id").get<std::string>();
    a.agent_name = j.at("agent_name").get<std::string>();
    a.primary_facts_url = j.at("primary_facts_url").get<std::string>();
    if (j.contains("private_facts_url")) {
      a.private_facts_url = j.at("private_facts_url").get<std::string>();
    }
    if (j.contains("adaptive_resolver_url")) {
      a.adaptive_resolver_url = j.at("adaptive_resolver_url").get<std::string>();
    }
    a.ttl_s = j.at("ttl").get<std::uint32_t>();
    a.version = j.at("version").get<std::uint64_t>();
    a.tombstone = j.value("tombstone", false);
    a.public_key = array_from_base64<kPublicKeyBytes>(j.at("public_key").get<std::string>());
    a.signature = array_from_base64<kSignatureBytes>(j.at("signature").get<std::string>());
    if (j.contains("prev_public_key")) {
      a.prev_public_key =
          array_from_base64<kPublicKeyBytes>(j.at("prev_public_key").get<std::string>());
    }
    if (j.contains("prev_key_countersig")) {
      a.prev_key_countersig =
          array_from_base64<kSignatureBytes>(j.at("prev_key_countersig").get<std::string>());
    }
  } catch (const Json::exception& e) {
    fail(Err::parse_failure, std::string("bad AgentAddr JSON: ") + e.what());
  }
  return a;
}

void validate_addr(const AgentAddr& addr) {
  if (!agent_id_hex_digits(addr.agent_id)) {
    fail(Err::malformed_record, "agent_id '" + addr.agent_id + "' is not a nanda uuid");
  }
  try {
    naming::parse_agent_name(addr.agent_name);
  } catch (const Error&) {
    fail(Err::malformed_record, "agent_name does not parse: '" + addr.agent_name + "'");
  }
  if (addr.ttl_s == 0 || addr.ttl_s > kMaxAddrTtlS) {
    fail(Err::malformed_record, "ttl out of range");
  }
  if (addr.primary_facts_url.empty() || !plausible_url(addr.primary_facts_url)) {
    fail(Err::malformed_record, "primary_facts_url missing or not a URL");
  }
  if (addr.private_facts_url && !plausible_url(*addr.private_facts_url)) {
    fail(Err::malformed_record, "private_facts_url not a URL");
  }
  if (addr.adaptive_resolver_url && !plausible_url(*addr.adaptive_resolver_url)) {
    fail(Err::malformed_record, "adaptive_resolver_url not a URL");
  }
  if (addr.prev_public_key.has_value() != addr.prev_key_countersig.has_value()) {
    fail(Err::malformed_record, "rotation proof needs both prev key and countersig");
  }
}

// --- UrlTable ---

UrlTable::UrlTable(const UrlTable& other) {
  std::shared_lock lk(other.mu_);
  map_ = other.map_;
}

Digest8 UrlTable::put(const std::string& s) {
  const Digest8 d = digest8(s);
  std::unique_lock lk(mu_);
  map_.emplace(d, s);  // append-only: existing entries never change
  return d;
}

const std::string* UrlTable::find(const Digest8& d) const {
  std::shared_lock lk(mu_);
  const auto it = map_.find(d);
  return it == map_.end() ? nullptr : &it->second;
}

std::string UrlTable::get(const Digest8& d) const {
  if (const std::string* s = find(d)) return *s;
  fail(Err::table_miss, "no table entry for digest " + to_hex(d));
}

std::size_t UrlTable::size() const {
  std::shared_lock lk(mu_);
  return map_.size();
}

std::vector<std::pair<Digest8, std::string>> UrlTable::entries() const {
  std::shared_lock lk(mu_);
  return {map_.begin(), map_.end()};
}

// --- compact codec ---

CompactRecord compact_encode(const AgentAddr& addr, UrlTable& table) {
  validate_addr(addr);
  CompactRecord rec;
  auto* p = rec.core.data();

  const std::string digits = *agent_id_hex_digits(addr.agent_id);
  const std::size_t pad = 32 - digits.size();
  std::string padded = digits + std::string(pad, '0');
  const Bytes id_bytes = from_hex(padded);
  std::copy(id_bytes.begin(), id_bytes.end(), p);

  const auto name = naming::parse_agent_name(addr.agent_name);
  const Digest8 nd = table.put(name.canonical_urn());
  std::copy(nd.begin(), nd.end(), p + 16);

  const Digest8 pf = table.put(addr.primary_facts_url);
  std::copy(pf.begin(), pf.end(), p + 24);
  if (addr.private_facts_url) {
    const Digest8 d = table.put(*addr.private_facts_url);
    std::copy(d.begin(), d.end(), p + 32);
  }
  if (addr.adaptive_resolver_url) {
    const Digest8 d = table.put(*addr.adaptive_resolver_url);
    std::copy(d.begin(), d.end(), p + 40);
  }

  put_u32le(p + 48, addr.ttl_s);
  put_u64le(p + 52, addr.version);

  std::uint8_t flags = 0;
  if (addr.private_facts_url) flags |= 1u;
  if (addr.adaptive_resolver_url) flags |= 2u;
  if (addr.tombstone) flags |= 4u;
  flags |= static_cast<std::uint8_t>(pad) << 3;
  p[60] = flags;

  rec.signature = addr.signature;
  rec.public_key = addr.public_key;
  return rec;
}

AgentAddr compact_decode(const CompactRecord& rec, const UrlTable& table) {
  const auto* p = rec.core.data();
  AgentAddr a;

  const std::uint8_t flags = p[60];
  const std::size_t pad = (flags >> 3) & 0x7u;
  if (pad > 4) fail(Err::malformed_record, "bad id pad count");
  const std::string all_digits = to_hex(p, 16);
  a.agent_id = agent_id_from_digits(std::string_view(all_digits).substr(0, 32 - pad));

  Digest8 d{};
  std::copy_n(p + 16, kDigestBytes, d.begin());
  a.agent_name = table.get(d);
  std::copy_n(p + 24, kDigestBytes, d.begin());
  a.primary_facts_url = table.get(d);
  if (flags & 1u) {
    std::copy_n(p + 32, kDigestBytes, d.begin());
    a.private_facts_url = table.get(d);
  }
  if (flags & 2u) {
    std::copy_n(p + 40, kDigestBytes, d.begin());
    a.adaptive_resolver_url = table.get(d);
  }
  a.tombstone = (flags & 4u) != 0;
  a.ttl_s = get_u32le(p + 48);
  a.version = get_u64le(p + 52);
  a.signature = rec.signature;
  a.public_key = rec.public_key;
  return a;
}

// --- facts validation ---

bool ValidationReport::ok() const {
  return std::none_of(issues.begin(), issues.end(), [](const ValidationIssue& i) {
    return i.severity == ValidationIssue::Severity::error;
  });
}

std::vector<std::string> ValidationReport::error_paths() const {
  std::vector<std::string> out;
  for (const auto& i : issues) {
    if (i.severity == ValidationIssue::Severity::error) out.push_back(i.path);
  }
  return out;
}

Json ValidationReport::to_json() const {
  Json arr = Json::array();
  for (const auto& i : issues) {
    arr.push_back({{"severity", i.severity == ValidationIssue::Severity::error ? "error" : "warning"},
                   {"path", i.path},
                   {"rule", i.rule}});
  }
  return Json{{"ok", ok()}, {"issues", arr}};
}

namespace {

class Checker {
 public:
  explicit Checker(ValidationReport& report) : report_(report) {}

  void error(const std::string& path, const std::string& rule) {
    report_.issues.push_back({ValidationIssue::Severity::error, path, rule});
  }
  void warning(const std::string& path, const std::string& rule) {
    report_.issues.push_back({ValidationIssue::Severity::warning, path, rule});
  }

  const Json* require(const Json& parent, const std::string& parent_path, const char* key,
                      Json::value_t type, const char* type_name) {
    const std::string path = parent_path.empty() ? key : parent_path + "." + key;
    if (!parent.contains(key)) {
      error(path, "required field missing");
      return nullptr;
    }
    const Json& v = parent.at(key);
    if (!matches(v, type)) {
      error(path, std::string("must be ") + type_name);
      return nullptr;
    }
    return &v;
  }

  const Json* optional(const Json& parent, const std::string& parent_path, const char* key,
                       Json::value_t type, const char* type_name) {
    if (!parent.contains(key)) return nullptr;
    const std::string path = parent_path.empty() ? key : parent_path + "." + key;
    const Json& v = parent.at(key);
    if (!matches(v, type)) {
      error(path, std::string("must be ") + type_name);
      return nullptr;
    }
    return &v;
  }

  void known_fields(const Json& obj, const std::string& path,
                    std::initializer_list<const char*> known) {
    for (const auto& [key, value] : obj.items()) {
      (void)value;
      if (std::none_of(known.begin(), known.end(),
                       [&](const char* k) { return key == k; })) {
        warning(path.empty() ? key : path + "." + key, "unknown field preserved");
      }
    }
  }

  bool string_array(const Json& v, const std::string& path, bool non_empty) {
    if (!v.is_array()) {
      error(path, "must be an array");
      return false;
    }
    if (non_empty && v.empty()) {
      error(path, "must be non-empty");
      return false;
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_string()) {
        error(path + "[" + std::to_string(i) + "]", "must be a string");
        return false;
      }
    }
    return true;
  }

 private:
  static bool matches(const Json& v, Json::value_t type) {
    if (type == Json::value_t::number_float) return v.is_number();
    if (type == Json::value_t::number_unsigned) return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
    return v.type() == type;
  }

  ValidationReport& report_;
};

using VT = Json::value_t;

std::optional<double> parse_percentage(const std::string& s) {
  if (s.empty() || s.back() != '%') return std::nullopt;
  try {
    std::size_t used = 0;
    const double v = std::stod(s.substr(0, s.size() - 1), &used);
    if (used != s.size() - 1) return std::nullopt;
    return v;
  } catch (...) {
    return std::nullopt;
  }
}

void check_endpoints(Checker& c, const Json& endpoints) {
  bool any_group = false;
  if (endpoints.contains("static")) {
    if (c.string_array(endpoints["static"], "endpoints.static", false)) {
      any_group = any_group || !endpoints["static"].empty();
    }
  }
  if (endpoints.contains("rotating")) {
    if (c.string_array(endpoints["rotating"], "endpoints.rotating", false)) {
      any_group = any_group || !endpoints["rotating"].empty();
    }
  }
  if (endpoints.contains("adaptive_resolver")) {
    const Json& ar = endpoints["adaptive_resolver"];
    if (ar.is_string()) {
      any_group = true;
    } else if (ar.is_object()) {
      if (c.require(ar, "endpoints.adaptive_resolver", "url", VT::string, "a string")) {
        any_group = true;
      }
      if (ar.contains("policies")) {
        c.string_array(ar["policies"], "endpoints.adaptive_resolver.policies", false);
      }
      c.known_fields(ar, "endpoints.adaptive_resolver", {"url", "policies"});
    } else {
      c.error("endpoints.adaptive_resolver", "must be a URL string or an object");
    }
  }
  c.known_fields(endpoints, "endpoints", {"static", "rotating", "adaptive_resolver"});
  if (!any_group) c.error("endpoints", "no endpoint group");
}

void check_skills(Checker& c, const Json& skills) {
  if (!skills.is_array() || skills.empty()) {
    c.error("skills", "must be a non-empty array");
    return;
  }
  for (std::size_t i = 0; i < skills.size(); ++i) {
    const std::string path = "skills[" + std::to_string(i) + "]";
    const Json& s = skills[i];
    if (!s.is_object()) {
      c.error(path, "must be an object");
      continue;
    }
    if (!s.contains("id") || !s["id"].is_string()) c.error(path + ".id", "must be a string");
    if (!s.contains("description") || !s["description"].is_string()) {
      c.error(path + ".description", "must be a string");
    }
    if (!s.contains("inputModes")) {
      c.error(path + ".inputModes", "required field missing");
    } else {
      c.string_array(s["inputModes"], path + ".inputModes", true);
    }
    if (!s.contains("outputModes")) {
      c.error(path + ".outputModes", "required field missing");
    } else {
      c.string_array(s["outputModes"], path + ".outputModes", true);
    }
    if (s.contains("supportedLanguages")) {
      c.string_array(s["supportedLanguages"], path + ".supportedLanguages", false);
    }
    if (s.contains("latencyBudgetMs") &&
        (!s["latencyBudgetMs"].is_number_integer() || s["latencyBudgetMs"].get<std::int64_t>() <= 0)) {
      c.error(path + ".latencyBudgetMs", "must be a positive integer");
    }
    if (s.contains("maxTokens") &&
        (!s["maxTokens"].is_number_integer() || s["maxTokens"].get<std::int64_t>() <= 0)) {
      c.error(path + ".maxTokens", "must be a positive integer");
    }
    c.known_fields(s, path, {"id", "description", "inputModes", "outputModes",
                             "supportedLanguages", "latencyBudgetMs", "maxTokens"});
  }
}

}  // namespace

ValidationReport validate_facts(const Json& facts) {
  ValidationReport report;
  Checker c(report);
  if (!facts.is_object()) {
    c.error("", "facts document must be a JSON object");
    return report;
  }

  c.require(facts, "", "id", VT::string, "a string");
  if (const Json* name = c.require(facts, "", "agent_name", VT::string, "a string")) {
    try {
      naming::parse_agent_name(name->get<std::string>());
    } catch (const Error&) {
      c.error("agent_name", "must parse as an agent name");
    }
  }
  c.require(facts, "", "label", VT::string, "a string");
  c.require(facts, "", "description", VT::string, "a string");
  c.require(facts, "", "version", VT::string, "a string");
  c.require(facts, "", "documentationUrl", VT::string, "a string");
  c.require(facts, "", "jurisdiction", VT::string, "a string");

  if (const Json* provider = c.require(facts, "", "provider", VT::object, "an object")) {
    c.require(*provider, "provider", "name", VT::string, "a string");
    c.require(*provider, "provider", "url", VT::string, "a string");
    c.optional(*provider, "provider", "did", VT::string, "a string");
    c.known_fields(*provider, "provider", {"name", "url", "did"});
  }

  if (const Json* endpoints = c.require(facts, "", "endpoints", VT::object, "an object")) {
    check_endpoints(c, *endpoints);
  }

  if (const Json* caps = c.require(facts, "", "capabilities", VT::object, "an object")) {
    if (caps->contains("modalities")) {
      c.string_array((*caps)["modalities"], "capabilities.modalities", false);
    } else {
      c.error("capabilities.modalities", "required field missing");
    }
    c.require(*caps, "capabilities", "streaming", VT::boolean, "a boolean");
    c.require(*caps, "capabilities", "batch", VT::boolean, "a boolean");
    if (const Json* auth =
            c.require(*caps, "capabilities", "authentication", VT::object, "an object")) {
      if (auth->contains("methods")) {
        c.string_array((*auth)["methods"], "capabilities.authentication.methods", false);
      } else {
        c.error("capabilities.authentication.methods", "required field missing");
      }
      if (auth->contains("requiredScopes")) {
        c.string_array((*auth)["requiredScopes"], "capabilities.authentication.requiredScopes",
                       false);
      } else {
        c.error("capabilities.authentication.requiredScopes", "required field missing");
      }
      c.known_fields(*auth, "capabilities.authentication", {"methods", "requiredScopes"});
    }
    c.known_fields(*caps, "capabilities", {"modalities", "streaming", "batch", "authentication"});
  }

  if (facts.contains("skills")) {
    check_skills(c, facts["skills"]);
  } else {
    c.error("skills", "required field missing");
  }

  if (const Json* ev = c.require(facts, "", "evaluations", VT::object, "an object")) {
    if (const Json* score =
            c.require(*ev, "evaluations", "performanceScore", VT::number_float, "a number")) {
      const double v = score->get<double>();
      if (v < 0.0 || v > 5.0) c.error("evaluations.performanceScore", "must be in [0,5]");
    }
    if (const Json* avail =
            c.require(*ev, "evaluations", "availability90d", VT::string, "a string")) {
      const auto pct = parse_percentage(avail->get<std::string>());
      if (!pct || *pct < 0.0 || *pct > 100.0) {
        c.error("evaluations.availability90d", "must be a percentage in [0,100]");
      }
    }
    if (const Json* ts = c.require(*ev, "evaluations", "lastAudited", VT::string, "a string")) {
      if (!parse_timestamp(ts->get<std::string>())) {
        c.error("evaluations.lastAudited", "must be an ISO-8601 UTC timestamp");
      }
    }
    c.require(*ev, "evaluations", "auditTrail", VT::string, "a string");
    c.require(*ev, "evaluations", "auditorID", VT::string, "a string");
    c.known_fields(*ev, "evaluations",
                   {"performanceScore", "availability90d", "lastAudited", "auditTrail",
                    "auditorID"});
  }

  if (const Json* tel = c.require(facts, "", "telemetry", VT::object, "an object")) {
    c.require(*tel, "telemetry", "enabled", VT::boolean, "a boolean");
    c.require(*tel, "telemetry", "retention", VT::string, "a string");
    if (const Json* sampling =
            c.require(*tel, "telemetry", "sampling", VT::number_float, "a number")) {
      const double v = sampling->get<double>();
      if (v < 0.0 || v > 1.0) c.error("telemetry.sampling", "must be in [0,1]");
    }
    if (const Json* metrics = c.require(*tel, "telemetry", "metrics", VT::object, "an object")) {
      c.require(*metrics, "telemetry.metrics", "latency_p95_ms", VT::number_float, "a number");
      c.require(*metrics, "telemetry.metrics", "throughput_rps", VT::number_float, "a number");
      if (const Json* er = c.require(*metrics, "telemetry.metrics", "error_rate",
                                     VT::number_float, "a number")) {
        const double v = er->get<double>();
        if (v < 0.0 || v > 1.0) c.error("telemetry.metrics.error_rate", "must be in [0,1]");
      }
      c.require(*metrics, "telemetry.metrics", "availability", VT::string, "a string");
      c.known_fields(*metrics, "telemetry.metrics",
                     {"latency_p95_ms", "throughput_rps", "error_rate", "availability"});
    }
    c.known_fields(*tel, "telemetry", {"enabled", "retention", "sampling", "metrics"});
  }

  if (const Json* cert = c.require(facts, "", "certification", VT::object, "an object")) {
    c.require(*cert, "certification", "level", VT::string, "a string");
    c.require(*cert, "certification", "issuer", VT::string, "a string");
    const Json* iss = c.require(*cert, "certification", "issuanceDate", VT::string, "a string");
    const Json* exp = c.require(*cert, "certification", "expirationDate", VT::string, "a string");
    if (iss && exp) {
      const auto t0 = parse_timestamp(iss->get<std::string>());
      const auto t1 = parse_timestamp(exp->get<std::string>());
      if (!t0) c.error("certification.issuanceDate", "must be an ISO-8601 UTC timestamp");
      if (!t1) c.error("certification.expirationDate", "must be an ISO-8601 UTC timestamp");
      if (t0 && t1 && *t1 <= *t0) {
        c.error("certification.expirationDate", "must be after issuanceDate");
      }
    }
    c.known_fields(*cert, "certification", {"level", "issuer", "issuanceDate", "expirationDate"});
  }

  if (facts.contains("ttl")) {
    const Json& ttl = facts["ttl"];
    if (!ttl.is_number_integer() || ttl.get<std::int64_t>() <= 0 ||
        ttl.get<std::int64_t>() > kMaxAddrTtlS) {
      c.error("ttl", "must be a positive integer number of seconds (max one day)");
    }
  }

  c.known_fields(facts, "",
                 {"id", "agent_name", "label", "description", "version", "documentationUrl",
                  "jurisdiction", "provider", "endpoints", "capabilities", "skills",
                  "evaluations", "telemetry", "certification", "ttl", "@context"});
  return report;
}

ValidationReport validate_facts_text(std::string_view text) {
  return validate_facts(parse_json(text));
}

Endpoints endpoints_of(const Json& facts) {
  Endpoints out;
  if (!facts.is_object() || !facts.contains("endpoints")) return out;
  const Json& e = facts["endpoints"];
  if (e.contains("static") && e["static"].is_array()) {
    for (const auto& u : e["static"]) {
      if (u.is_string()) out.static_urls.push_back(u.get<std::string>());
    }
  }
  if (e.contains("rotating") && e["rotating"].is_array()) {
    for (const auto& u : e["rotating"]) {
      if (u.is_string()) out.rotating.push_back(u.get<std::string>());
    }
  }
  if (e.contains("adaptive_resolver")) {
    const Json& ar = e["adaptive_resolver"];
    if (ar.is_string()) {
      out.adaptive = AdaptiveRef{ar.get<std::string>(), {}};
    } else if (ar.is_object() && ar.contains("url") && ar["url"].is_string()) {
      AdaptiveRef ref{ar["url"].get<std::string>(), {}};
      if (ar.contains("policies") && ar["policies"].is_array()) {
        for (const auto& p : ar["policies"]) {
          if (p.is_string()) ref.policies.push_back(p.get<std::string>());
        }
      }
      out.adaptive = std::move(ref);
    }
  }
  return out;
}

std::uint32_t facts_ttl(const Json& facts) {
  if (facts.is_object() && facts.contains("ttl") && facts["ttl"].is_number_integer()) {
    const auto v = facts["ttl"].get<std::int64_t>();
    if (v > 0 && v <= kMaxAddrTtlS) return static_cast<std::uint32_t>(v);
  }
  return kDefaultFactsTtlS;
}

bool ttl_class_ok(TtlClass klass, std::uint32_t ttl_s) {
  switch (klass) {
    case TtlClass::static_endpoint: return ttl_s >= 3600 && ttl_s <= 21600;
    case TtlClass::rotating_endpoint: return ttl_s >= 300 && ttl_s <= 900;
    case TtlClass::adaptive_token: return ttl_s >= 30 && ttl_s <= 60;
  }
  return false;
}

std::optional<std::int64_t> parse_timestamp(std::string_view iso) {
  std::tm tm{};
  int y, mo, d, h, mi, s;
  char z;
  if (std::sscanf(std::string(iso).c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%c", &y, &mo, &d, &h, &mi,
                  &s, &z) != 7 ||
      z != 'Z') {
    return std::nullopt;
  }
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || s > 60) return std::nullopt;
  tm.tm_year = y - 1900;
  tm.tm_mon = mo - 1;
  tm.tm_mday = d;
  tm.tm_hour = h;
  tm.tm_min = mi;
  tm.tm_sec = s;
  return static_cast<std::int64_t>(timegm(&tm));
}

}  // namespace nanda::records

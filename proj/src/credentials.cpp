#include "nanda/credentials.hpp"

#include <sodium.h>

#include <algorithm>

namespace nanda::creds {

KeyPair KeyPair::generate(std::string key_id) {
  ensure_sodium_init();
  std::array<std::uint8_t, kSeedBytes> seed{};
  randombytes_buf(seed.data(), seed.size());
  return from_seed(std::move(key_id), seed);
}

KeyPair KeyPair::from_seed(std::string key_id, const std::array<std::uint8_t, kSeedBytes>& seed) {
  ensure_sodium_init();
  KeyPair kp;
  kp.key_id = std::move(key_id);
  kp.seed = seed;
  unsigned char sk[crypto_sign_SECRETKEYBYTES];
  crypto_sign_seed_keypair(kp.public_key.data(), sk, seed.data());
  sodium_memzero(sk, sizeof(sk));
  return kp;
}

Signature sign(const std::uint8_t* payload, std::size_t len, const KeyPair& key) {
  ensure_sodium_init();
  unsigned char sk[crypto_sign_SECRETKEYBYTES];
  unsigned char pk[crypto_sign_PUBLICKEYBYTES];
  crypto_sign_seed_keypair(pk, sk, key.seed.data());
  Signature sig{};
  crypto_sign_detached(sig.data(), nullptr, payload, len, sk);
  sodium_memzero(sk, sizeof(sk));
  return sig;
}

Signature sign(const Bytes& payload, const KeyPair& key) {
  return sign(payload.data(), payload.size(), key);
}

Signature sign(std::string_view payload, const KeyPair& key) {
  return sign(reinterpret_cast<const std::uint8_t*>(payload.data()), payload.size(), key);
}

bool verify(const std::uint8_t* payload, std::size_t len, const Signature& sig,
            const PublicKey& pk) noexcept {
  ensure_sodium_init();
  return crypto_sign_verify_detached(sig.data(), payload, len, pk.data()) == 0;
}

bool verify(const Bytes& payload, const Signature& sig, const PublicKey& pk) noexcept {
  return verify(payload.data(), payload.size(), sig, pk);
}

bool verify(std::string_view payload, const Signature& sig, const PublicKey& pk) noexcept {
  return verify(reinterpret_cast<const std::uint8_t*>(payload.data()), payload.size(), sig, pk);
}

// --- Credential ---

Json Credential::canonical_view() const {
  return Json{{"claims", to_base64(claims)},
              {"issuer_id", issuer_id},
              {"key_id", key_id},
              {"issued_at", issued_at},
              {"expires_at", expires_at},
              {"status_list", status.list_id},
              {"status_index", status.index}};
}

Bytes Credential::signing_payload() const { return canonical_bytes(canonical_view()); }

Json Credential::to_json() const {
  Json j = canonical_view();
  j["signature"] = to_base64(signature);
  return j;
}

Credential Credential::from_json(const Json& j) {
  Credential c;
  try {
    c.claims = from_base64(j.at("claims").get<std::string>());
    c.issuer_id = j.at("issuer_id").get<std::string>();
    c.key_id = j.at("key_id").get<std::string>();
    c.issued_at = j.at("issued_at").get<Millis>();
    c.expires_at = j.at("expires_at").get<Millis>();
    c.status.list_id = j.at("status_list").get<std::string>();
    c.status.index = j.at("status_index").get<std::uint64_t>();
    c.signature = array_from_base64<kSignatureBytes>(j.at("signature").get<std::string>());
  } catch (const Json::exception& e) {
    fail(Err::parse_failure, std::string("bad Credential JSON: ") + e.what());
  }
  return c;
}

std::string Credential::id() const {
  return to_hex(sha256(canonical_json(canonical_view()))).substr(0, 32);
}

// --- StatusList ---

bool StatusList::bit(std::uint64_t index) const {
  const std::uint64_t byte = index >> 3;
  if (byte >= bits.size()) return false;
  return (bits[byte] >> (index & 7u)) & 1u;
}

Json StatusList::canonical_view() const {
  return Json{{"list_id", list_id},
              {"issuer_id", issuer_id},
              {"version", version},
              {"bits", to_base64(bits)}};
}

Bytes StatusList::signing_payload() const { return canonical_bytes(canonical_view()); }

Json StatusList::to_json() const {
  Json j = canonical_view();
  j["signature"] = to_base64(signature);
  return j;
}

StatusList StatusList::from_json(const Json& j) {
  StatusList l;
  try {
    l.list_id = j.at("list_id").get<std::string>();
    l.issuer_id = j.at("issuer_id").get<std::string>();
    l.version = j.at("version").get<std::uint64_t>();
    l.bits = from_base64(j.at("bits").get<std::string>());
    l.signature = array_from_base64<kSignatureBytes>(j.at("signature").get<std::string>());
  } catch (const Json::exception& e) {
    fail(Err::parse_failure, std::string("bad StatusList JSON: ") + e.what());
  }
  return l;
}

const char* status_name(CredStatus s) {
  switch (s) {
    case CredStatus::active: return "ACTIVE";
    case CredStatus::revoked: return "REVOKED";
    case CredStatus::expired: return "EXPIRED";
    case CredStatus::unknown_list: return "UNKNOWN_LIST";
  }
  return "UNKNOWN";
}

CredStatus check_status(const Credential& cred, const StatusList& list, Millis now) {
  if (now >= cred.expires_at) return CredStatus::expired;
  if (cred.status.list_id != list.list_id) return CredStatus::unknown_list;
  if (list.bit(cred.status.index)) return CredStatus::revoked;
  return CredStatus::active;
}

StatusList revoke(const StatusList& list, std::uint64_t index, const KeyPair& issuer_key) {
  if (!verify(list.signing_payload(), list.signature, issuer_key.public_key)) {
    fail(Err::not_list_owner, "key does not own list '" + list.list_id + "'");
  }
  if ((index >> 3) >= list.bits.size()) {
    fail(Err::index_out_of_range, "status index " + std::to_string(index) + " out of range");
  }
  StatusList out = list;
  out.bits[index >> 3] |= static_cast<std::uint8_t>(1u << (index & 7u));
  out.version += 1;
  out.signature = sign(out.signing_payload(), issuer_key);
  return out;
}

// --- Issuer ---

namespace {
constexpr std::size_t kStatusChunkBytes = 8;  // lists grow in 64-bit steps
}

Issuer::Issuer(std::string issuer_id, KeyPair key, std::string list_id)
    : issuer_id_(std::move(issuer_id)), key_(std::move(key)), list_id_(std::move(list_id)) {
  list_.list_id = list_id_;
  list_.issuer_id = issuer_id_;
  list_.version = 1;
  list_.bits.assign(kStatusChunkBytes, 0);
  list_.signature = sign(list_.signing_payload(), key_);
}

Credential Issuer::issue(Bytes claims, std::uint32_t lifetime_s, Millis now) {
  if (lifetime_s == 0 || lifetime_s > kMaxCredentialLifetimeS) {
    fail(Err::lifetime_too_long,
         "credential lifetime " + std::to_string(lifetime_s) + "s exceeds the cap");
  }
  std::lock_guard lk(mu_);
  const std::uint64_t index = next_index_++;
  if ((index >> 3) >= list_.bits.size()) {
    list_.bits.resize(list_.bits.size() + kStatusChunkBytes, 0);
    list_.version += 1;
    list_.signature = sign(list_.signing_payload(), key_);
  }
  Credential c;
  c.claims = std::move(claims);
  c.issuer_id = issuer_id_;
  c.key_id = key_.key_id;
  c.issued_at = now;
  c.expires_at = now + static_cast<Millis>(lifetime_s) * 1000;
  c.status = {list_id_, index};
  c.signature = sign(c.signing_payload(), key_);
  index_by_credential_[c.id()] = index;
  return c;
}

void Issuer::revoke_index(std::uint64_t index) {
  std::lock_guard lk(mu_);
  list_ = revoke(list_, index, key_);
}

bool Issuer::revoke_credential(const std::string& credential_id) {
  std::lock_guard lk(mu_);
  const auto it = index_by_credential_.find(credential_id);
  if (it == index_by_credential_.end()) return false;
  list_ = revoke(list_, it->second, key_);
  return true;
}

StatusList Issuer::status_list() const {
  std::lock_guard lk(mu_);
  return list_;
}

// --- TrustPolicy ---

TrustPolicy TrustPolicy::create(std::map<std::string, double> issuer_weights,
                                std::uint32_t threshold_k, double min_trs,
                                std::uint32_t max_cache_age_s,
                                std::uint32_t min_credential_lifetime_s) {
  for (const auto& [issuer, w] : issuer_weights) {
    if (w <= 0.0 || w > 1.0) {
      fail(Err::config_invalid, "issuer weight for '" + issuer + "' must be in (0,1]");
    }
  }
  if (min_trs < 0.0 || min_trs > 1.0) fail(Err::config_invalid, "min_trs must be in [0,1]");
  if (max_cache_age_s >= min_credential_lifetime_s) {
    fail(Err::config_invalid, "max_cache_age must be shorter than the weakest credential TTL");
  }
  TrustPolicy p;
  p.issuer_weights = std::move(issuer_weights);
  p.threshold_k = threshold_k;
  p.min_trs = min_trs;
  p.max_cache_age_s = max_cache_age_s;
  return p;
}

Json TrustPolicy::to_json() const {
  Json weights = Json::object();
  for (const auto& [issuer, w] : issuer_weights) weights[issuer] = w;
  return Json{{"issuer_weights", weights},
              {"threshold_k", threshold_k},
              {"min_trs", min_trs},
              {"max_cache_age_s", max_cache_age_s}};
}

TrustPolicy TrustPolicy::from_json(const Json& j) {
  std::map<std::string, double> weights;
  try {
    for (const auto& [issuer, w] : j.at("issuer_weights").items()) {
      weights[issuer] = w.get<double>();
    }
    return create(std::move(weights), j.at("threshold_k").get<std::uint32_t>(),
                  j.at("min_trs").get<double>(), j.at("max_cache_age_s").get<std::uint32_t>());
  } catch (const Json::exception& e) {
    fail(Err::parse_failure, std::string("bad TrustPolicy JSON: ") + e.what());
  }
}

double compute_trs(const std::vector<std::pair<Credential, CredStatus>>& creds,
                   const TrustPolicy& policy, Millis now) {
  double weight_sum = 0.0;
  double value_sum = 0.0;
  for (const auto& [cred, status] : creds) {
    if (status != CredStatus::active) continue;
    const auto it = policy.issuer_weights.find(cred.issuer_id);
    if (it == policy.issuer_weights.end()) continue;
    const double w = it->second;
    const double lifetime = static_cast<double>(cred.expires_at - cred.issued_at);
    double fraction = 0.0;
    if (lifetime > 0.0 && now < cred.expires_at) {
      const double remaining = static_cast<double>(cred.expires_at - now);
      fraction = std::clamp(remaining / lifetime, 0.0, 1.0);
    }
    weight_sum += w;
    value_sum += w * fraction;
  }
  if (weight_sum == 0.0) return 0.0;
  return value_sum / weight_sum;
}

// --- key rotation ---

void sign_addr(records::AgentAddr& addr, const KeyPair& key) {
  addr.public_key = key.public_key;
  addr.signature = sign(addr.signing_payload(), key);
}

records::AgentAddr rotate_key(const records::AgentAddr& current, const KeyPair& new_key,
                              const KeyPair& old_key) {
  if (old_key.public_key != current.public_key) {
    fail(Err::old_key_mismatch, "old key is not bound to '" + current.agent_id + "'");
  }
  records::AgentAddr rotated = current;
  rotated.version = current.version + 1;
  rotated.public_key = new_key.public_key;
  rotated.prev_public_key = old_key.public_key;
  const Bytes payload = rotated.signing_payload();
  rotated.signature = sign(payload, new_key);
  rotated.prev_key_countersig = sign(payload, old_key);
  return rotated;
}

}  // namespace nanda::creds

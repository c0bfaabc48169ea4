#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "nanda/canonical.hpp"
#include "nanda/common.hpp"
#include "nanda/records.hpp"

namespace nanda::creds {

/// Ed25519 key pair. The 32-byte seed is the secret; it never appears in
/// wire payloads.
struct KeyPair {
  std::string key_id;
  PublicKey public_key{};
  std::array<std::uint8_t, kSeedBytes> seed{};

  static KeyPair generate(std::string key_id);
  static KeyPair from_seed(std::string key_id, const std::array<std::uint8_t, kSeedBytes>& seed);
};

Signature sign(const std::uint8_t* payload, std::size_t len, const KeyPair& key);
Signature sign(const Bytes& payload, const KeyPair& key);
Signature sign(std::string_view payload, const KeyPair& key);

/// Never throws; any malformed input verifies false.
bool verify(const std::uint8_t* payload, std::size_t len, const Signature& sig,
            const PublicKey& pk) noexcept;
bool verify(const Bytes& payload, const Signature& sig, const PublicKey& pk) noexcept;
bool verify(std::string_view payload, const Signature& sig, const PublicKey& pk) noexcept;

constexpr std::uint32_t kMaxCredentialLifetimeS = 300;  // hard cap: short-lived credentials

struct StatusRef {
  std::string list_id;
  std::uint64_t index = 0;
  bool operator==(const StatusRef&) const = default;
};

/// Short-lived verifiable-credential envelope: opaque claim bytes bound to
/// an issuer key, with expiry and a status-list slot for revocation.
struct Credential {
  Bytes claims;  // canonical claim bytes; opaque at this layer
  std::string issuer_id;
  std::string key_id;
  Millis issued_at = 0;
  Millis expires_at = 0;
  StatusRef status;
  Signature signature{};

  Json canonical_view() const;
  Bytes signing_payload() const;
  Json to_json() const;
  static Credential from_json(const Json& j);

  /// Stable identifier derived from the signed content.
  std::string id() const;

  bool operator==(const Credential&) const = default;
};

/// Issuer-signed revocation bitstring; a set bit marks a revoked credential
/// and never clears.
struct StatusList {
  std::string list_id;
  std::string issuer_id;
  std::uint64_t version = 0;
  Bytes bits;
  Signature signature{};

  bool bit(std::uint64_t index) const;  // false when out of range
  Json canonical_view() const;
  Bytes signing_payload() const;
  Json to_json() const;
  static StatusList from_json(const Json& j);
};

enum class CredStatus { active, revoked, expired, unknown_list };
const char* status_name(CredStatus s);

/// Expiry dominates (closed boundary: now == expires_at is expired), then
/// list identity, then the revocation bit.
CredStatus check_status(const Credential& cred, const StatusList& list, Millis now);

/// Sets the bit and re-signs. Ownership is proven by the issuer key
/// verifying the list's current signature. Throws NOT_LIST_OWNER /
/// INDEX_OUT_OF_RANGE.
StatusList revoke(const StatusList& list, std::uint64_t index, const KeyPair& issuer_key);

/// Issues credentials against one status list; allocation and revocation
/// are serialized internally, readers get signed snapshots.
class Issuer {
 public:
  Issuer(std::string issuer_id, KeyPair key, std::string list_id);

  Credential issue(Bytes claims, std::uint32_t lifetime_s, Millis now);  // throws LIFETIME_TOO_LONG
  void revoke_index(std::uint64_t index);
  bool revoke_credential(const std::string& credential_id);  // false when unknown
  StatusList status_list() const;
  const KeyPair& key() const { return key_; }
  const std::string& id() const { return issuer_id_; }
  const std::string& list_id() const { return list_id_; }

 private:
  std::string issuer_id_;
  KeyPair key_;
  std::string list_id_;
  mutable std::mutex mu_;
  StatusList list_;
  std::uint64_t next_index_ = 0;
  std::map<std::string, std::uint64_t> index_by_credential_;
};

/// Client-side acceptance rules for credentialed metadata.
struct TrustPolicy {
  std::map<std::string, double> issuer_weights;  // whitelisted issuer -> weight in (0,1]
  std::uint32_t threshold_k = 1;                 // min distinct whitelisted issuers
  double min_trs = 0.0;
  std::uint32_t max_cache_age_s = 60;

  /// Validates ranges and the cache-age rule: max_cache_age must stay below
  /// the weakest credential lifetime the system can issue. Throws
  /// CONFIG_INVALID.
  static TrustPolicy create(std::map<std::string, double> issuer_weights, std::uint32_t threshold_k,
                            double min_trs, std::uint32_t max_cache_age_s,
                            std::uint32_t min_credential_lifetime_s = kMaxCredentialLifetimeS);

  Json to_json() const;
  static TrustPolicy from_json(const Json& j);
};

/// Weighted mean of issuer weight x remaining-lifetime fraction over ACTIVE
/// credentials from whitelisted issuers; 0 for the empty set. Always in
/// [0,1] and non-increasing in `now`.
double compute_trs(const std::vector<std::pair<Credential, CredStatus>>& creds,
                   const TrustPolicy& policy, Millis now);

/// Builds the rotation update for an AgentAddr: version+1, re-signed by the
/// new key, countersigned by the old key. Throws OLD_KEY_MISMATCH when
/// old_key is not the key currently bound to the record.
records::AgentAddr rotate_key(const records::AgentAddr& current, const KeyPair& new_key,
                              const KeyPair& old_key);

/// Signs an AgentAddr in place with the agent key.
void sign_addr(records::AgentAddr& addr, const KeyPair& key);

}  // namespace nanda::creds

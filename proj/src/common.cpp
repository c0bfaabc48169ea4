#include "nanda/common.hpp"

#include <sodium.h>

#include <chrono>
#include <mutex>

namespace nanda {

const char* err_name(Err e) {
  switch (e) {
    case Err::malformed_name: return "MALFORMED_NAME";
    case Err::unknown_namespace: return "UNKNOWN_NAMESPACE";
    case Err::non_finite_number: return "NON_FINITE_NUMBER";
    case Err::invalid_utf8: return "INVALID_UTF8";
    case Err::table_miss: return "TABLE_MISS";
    case Err::parse_failure: return "PARSE_FAILURE";
    case Err::lifetime_too_long: return "LIFETIME_TOO_LONG";
    case Err::not_list_owner: return "NOT_LIST_OWNER";
    case Err::index_out_of_range: return "INDEX_OUT_OF_RANGE";
    case Err::stale_version: return "STALE_VERSION";
    case Err::old_key_mismatch: return "OLD_KEY_MISMATCH";
    case Err::bad_signature: return "BAD_SIGNATURE";
    case Err::malformed_record: return "MALFORMED_RECORD";
    case Err::not_found: return "NOT_FOUND";
    case Err::gone: return "GONE";
    case Err::signature_invalid: return "SIGNATURE_INVALID";
    case Err::ttl_expired_upstream: return "TTL_EXPIRED_UPSTREAM";
    case Err::no_endpoint: return "NO_ENDPOINT";
    case Err::facts_unavailable: return "FACTS_UNAVAILABLE";
    case Err::credential_revoked: return "CREDENTIAL_REVOKED";
    case Err::credential_expired: return "CREDENTIAL_EXPIRED";
    case Err::schema_invalid: return "SCHEMA_INVALID";
    case Err::redirect_loop: return "REDIRECT_LOOP";
    case Err::registry_unreachable: return "REGISTRY_UNREACHABLE";
    case Err::resolver_unreachable: return "RESOLVER_UNREACHABLE";
    case Err::index_unreachable: return "INDEX_UNREACHABLE";
    case Err::token_invalid: return "TOKEN_INVALID";
    case Err::token_ttl_out_of_range: return "TOKEN_TTL_OUT_OF_RANGE";
    case Err::no_backend: return "NO_BACKEND";
    case Err::unknown_backend: return "UNKNOWN_BACKEND";
    case Err::no_fallback: return "NO_FALLBACK";
    case Err::credential_required: return "CREDENTIAL_REQUIRED";
    case Err::invalid_bundle: return "INVALID_BUNDLE";
    case Err::config_invalid: return "CONFIG_INVALID";
  }
  return "UNKNOWN";
}

void ensure_sodium_init() {
  static std::once_flag once;
  std::call_once(once, [] {
    if (sodium_init() < 0) throw std::runtime_error("libsodium init failed");
  });
}

std::string to_hex(const std::uint8_t* data, std::size_t len) {
  std::string out(len * 2 + 1, '\0');
  sodium_bin2hex(out.data(), out.size(), data, len);
  out.resize(len * 2);
  return out;
}

Bytes from_hex(std::string_view hex) {
  Bytes out(hex.size() / 2 + 1);
  std::size_t written = 0;
  if (sodium_hex2bin(out.data(), out.size(), hex.data(), hex.size(), nullptr, &written,
                     nullptr) != 0) {
    fail(Err::parse_failure, "invalid hex");
  }
  out.resize(written);
  return out;
}

std::string to_base64(const std::uint8_t* data, std::size_t len) {
  std::string out(sodium_base64_encoded_len(len, sodium_base64_VARIANT_ORIGINAL), '\0');
  sodium_bin2base64(out.data(), out.size(), data, len, sodium_base64_VARIANT_ORIGINAL);
  out.resize(out.find('\0') == std::string::npos ? out.size() : out.find('\0'));
  return out;
}

Bytes from_base64(std::string_view b64) {
  Bytes out(b64.size());
  std::size_t written = 0;
  if (sodium_base642bin(out.data(), out.size(), b64.data(), b64.size(), nullptr, &written,
                        nullptr, sodium_base64_VARIANT_ORIGINAL) != 0) {
    fail(Err::parse_failure, "invalid base64");
  }
  out.resize(written);
  return out;
}

Sha256 sha256(const std::uint8_t* data, std::size_t len) {
  ensure_sodium_init();
  Sha256 out{};
  crypto_hash_sha256(out.data(), data, len);
  return out;
}

Sha256 sha256(std::string_view s) {
  return sha256(reinterpret_cast<const std::uint8_t*>(s.data()), s.size());
}

Digest8 digest8(std::string_view s) {
  Sha256 full = sha256(s);
  Digest8 out{};
  std::copy_n(full.begin(), kDigestBytes, out.begin());
  return out;
}

Millis SystemClock::now_ms() const {
  return static_cast<Millis>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::system_clock::now().time_since_epoch())
                                 .count());
}

}  // namespace nanda

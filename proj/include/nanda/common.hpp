#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nanda {

using Bytes = std::vector<std::uint8_t>;
using Millis = std::uint64_t;  // milliseconds since epoch (wall clock or simulated)

constexpr std::size_t kSignatureBytes = 64;
constexpr std::size_t kPublicKeyBytes = 32;
constexpr std::size_t kSeedBytes = 32;
constexpr std::size_t kDigestBytes = 8;  // compact table key width

using Signature = std::array<std::uint8_t, kSignatureBytes>;
using PublicKey = std::array<std::uint8_t, kPublicKeyBytes>;
using Digest8 = std::array<std::uint8_t, kDigestBytes>;
using Sha256 = std::array<std::uint8_t, 32>;

enum class Err {
  malformed_name,
  unknown_namespace,
  non_finite_number,
  invalid_utf8,
  table_miss,
  parse_failure,
  lifetime_too_long,
  not_list_owner,
  index_out_of_range,
  stale_version,
  old_key_mismatch,
  bad_signature,
  malformed_record,
  not_found,
  gone,
  signature_invalid,
  ttl_expired_upstream,
  no_endpoint,
  facts_unavailable,
  credential_revoked,
  credential_expired,
  schema_invalid,
  redirect_loop,
  registry_unreachable,
  resolver_unreachable,
  index_unreachable,
  token_invalid,
  token_ttl_out_of_range,
  no_backend,
  unknown_backend,
  no_fallback,
  credential_required,
  invalid_bundle,
  config_invalid,
};

const char* err_name(Err e);

/// Error with a machine-checkable code; every failure named in a module
/// contract maps onto one of these.
class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what)
      : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

// --- binary <-> text helpers (libsodium-backed) ---

std::string to_hex(const std::uint8_t* data, std::size_t len);
Bytes from_hex(std::string_view hex);  // throws parse_failure
std::string to_base64(const std::uint8_t* data, std::size_t len);
Bytes from_base64(std::string_view b64);  // throws parse_failure

inline std::string to_hex(const Bytes& b) { return to_hex(b.data(), b.size()); }
inline std::string to_base64(const Bytes& b) { return to_base64(b.data(), b.size()); }

template <std::size_t N>
std::string to_hex(const std::array<std::uint8_t, N>& a) {
  return to_hex(a.data(), N);
}

template <std::size_t N>
std::string to_base64(const std::array<std::uint8_t, N>& a) {
  return to_base64(a.data(), N);
}

template <std::size_t N>
std::array<std::uint8_t, N> array_from_base64(std::string_view b64) {
  Bytes raw = from_base64(b64);
  if (raw.size() != N) fail(Err::parse_failure, "unexpected binary length");
  std::array<std::uint8_t, N> out{};
  std::copy(raw.begin(), raw.end(), out.begin());
  return out;
}

template <std::size_t N>
std::array<std::uint8_t, N> array_from_hex(std::string_view hex) {
  Bytes raw = from_hex(hex);
  if (raw.size() != N) fail(Err::parse_failure, "unexpected binary length");
  std::array<std::uint8_t, N> out{};
  std::copy(raw.begin(), raw.end(), out.begin());
  return out;
}

Sha256 sha256(const std::uint8_t* data, std::size_t len);
Sha256 sha256(std::string_view s);

/// First 8 bytes of sha256; the key type for the compact index layer.
Digest8 digest8(std::string_view s);

// --- clock ---

struct Clock {
  virtual ~Clock() = default;
  virtual Millis now_ms() const = 0;
};

struct SystemClock final : Clock {
  Millis now_ms() const override;
};

void ensure_sodium_init();

}  // namespace nanda

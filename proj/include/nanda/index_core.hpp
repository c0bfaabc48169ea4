#pragma once

#include <atomic>
#include <map>
#include <shared_mutex>
#include <string>
#include <vector>

#include "nanda/credentials.hpp"
#include "nanda/naming.hpp"
#include "nanda/records.hpp"

namespace nanda::index {

/// Total order for last-writer-wins merges: version first, then writer id
/// lexicographically (a deterministic tie-break for concurrent equal-version
/// writes).
struct Lamport {
  std::uint64_t version = 0;
  std::string writer_id;
  auto operator<=>(const Lamport&) const = default;
};

struct IndexRecord {
  Digest8 key{};  // name digest
  records::CompactRecord compact;
  Lamport lamport;
};

/// Self-describing merge unit: full records on the wire, so applying a delta
/// never requires prior deltas.
struct CrdtDelta {
  std::string origin;
  // (record, writer_id) pairs; record.version + writer_id form the lamport pair
  std::vector<std::pair<records::AgentAddr, std::string>> entries;

  Json to_json() const;
  static CrdtDelta from_json(const Json& j);
  bool empty() const { return entries.empty(); }
};

struct MergeReport {
  std::size_t applied = 0;
  std::size_t stale = 0;
  std::size_t duplicates = 0;
  std::size_t bad_signature = 0;
  Json to_json() const;
};

struct ResolutionTarget {
  enum class Kind { addr, registry_redirect };
  Kind kind = Kind::addr;
  std::optional<records::AgentAddr> addr;
  std::optional<std::string> registry_url;
};

struct ShardConfig {
  std::string shard_id;
  naming::RegistryConfig registry;
  std::map<std::string, std::string> registry_urls;  // authority -> registry base URL
};

/// One replica of the lean index. Stores records in compact form, answers
/// resolution queries, and replicates via LWW-merged deltas. Writes are
/// serialized; resolves run concurrently against the last committed state.
class Shard {
 public:
  Shard(ShardConfig cfg, creds::KeyPair resolver_key);

  /// Client-facing write path. Verifies the record signature, enforces
  /// version monotonicity per agent_id and key continuity across rotations.
  /// Throws MALFORMED_RECORD / BAD_SIGNATURE / STALE_VERSION /
  /// OLD_KEY_MISMATCH.
  IndexRecord register_record(const records::AgentAddr& addr);

  /// Resolution by canonical name, any accepted name spelling, or
  /// "nanda:..." agent id. Routed names yield a registry redirect. Throws
  /// NOT_FOUND / MALFORMED_NAME.
  ResolutionTarget resolve(const std::string& name_or_id) const;

  /// Gossip ingestion. Records failing signature verification are counted
  /// and skipped, never merged. Per key the greater lamport pair wins;
  /// replays and stale entries are no-ops.
  MergeReport apply_delta(const CrdtDelta& delta);

  std::vector<std::pair<Digest8, Lamport>> summary() const;

  /// Anti-entropy: exactly the records the peer summary lacks or holds at a
  /// smaller lamport pair.
  CrdtDelta delta_for(const std::vector<std::pair<Digest8, Lamport>>& peer_summary) const;

  CrdtDelta full_delta() const;

  /// Pending-delta drain for routine gossip: entries accepted since the last
  /// drain for the given peer.
  CrdtDelta drain_pending(const std::string& peer_id);

  const std::string& shard_id() const { return cfg_.shard_id; }
  const creds::KeyPair& resolver_key() const { return resolver_key_; }
  std::uint64_t write_count() const { return writes_.load(); }
  std::size_t record_count() const;

  /// Digest over the full record state; equal digests mean converged shards.
  std::string state_digest() const;

  std::vector<IndexRecord> all_records() const;

 private:
  struct Stored {
    records::CompactRecord compact;
    std::string writer_id;
    std::string agent_id;
    std::optional<PublicKey> prev_public_key;
    std::optional<Signature> prev_key_countersig;
  };

  // expects mu_ held
  ResolutionTarget target_from(const Stored& s) const;
  bool merge_locked(const records::AgentAddr& addr, const std::string& writer_id,
                    MergeReport& report);

  ShardConfig cfg_;
  creds::KeyPair resolver_key_;
  mutable std::shared_mutex mu_;
  records::UrlTable urls_;
  std::map<Digest8, Stored> records_;
  std::map<std::string, Digest8> by_agent_id_;
  std::map<std::string, std::vector<Digest8>> pending_;  // peer -> dirty keys
  std::atomic<std::uint64_t> writes_{0};
};

/// Free-function spelling of the anti-entropy exchange.
CrdtDelta anti_entropy(const Shard& local,
                       const std::vector<std::pair<Digest8, Lamport>>& peer_summary);

Json summary_to_json(const std::vector<std::pair<Digest8, Lamport>>& summary);
std::vector<std::pair<Digest8, Lamport>> summary_from_json(const Json& j);

struct ThroughputReport {
  double mean_ops_per_sec = 0.0;
  double stddev_ops_per_sec = 0.0;
  std::vector<double> run_ops_per_sec;
  std::uint64_t n_updates = 0;
  Json to_json() const;
};

/// Wall-clock ingest benchmark: registers `n_updates` pre-signed records
/// into fresh in-memory shards, signature verification included in the
/// timed region. `n_updates` of zero reports zero throughput.
ThroughputReport update_throughput_bench(std::uint64_t n_updates, unsigned runs = 3);

}  // namespace nanda::index

#include "nanda/index_core.hpp"

#include <chrono>
#include <cmath>

namespace nanda::index {

Json CrdtDelta::to_json() const {
  Json entries_json = Json::array();
  for (const auto& [addr, writer] : entries) {
    entries_json.push_back(Json{{"record", addr.to_json()}, {"writer_id", writer}});
  }
  return Json{{"origin", origin}, {"entries", entries_json}};
}

CrdtDelta CrdtDelta::from_json(const Json& j) {
  CrdtDelta d;
  try {
    d.origin = j.at("origin").get<std::string>();
    for (const auto& e : j.at("entries")) {
      d.entries.emplace_back(records::AgentAddr::from_json(e.at("record")),
                             e.at("writer_id").get<std::string>());
    }
  } catch (const Json::exception& e) {
    fail(Err::parse_failure, std::string("bad CrdtDelta JSON: ") + e.what());
  }
  return d;
}

Json MergeReport::to_json() const {
  return Json{{"applied", applied},
              {"stale", stale},
              {"duplicates", duplicates},
              {"bad_signature", bad_signature}};
}

Shard::Shard(ShardConfig cfg, creds::KeyPair resolver_key)
    : cfg_(std::move(cfg)), resolver_key_(std::move(resolver_key)) {}

IndexRecord Shard::register_record(const records::AgentAddr& addr) {
  records::validate_addr(addr);
  if (!creds::verify(addr.signing_payload(), addr.signature, addr.public_key)) {
    fail(Err::bad_signature, "record signature does not verify");
  }

  std::unique_lock lk(mu_);
  const auto existing_key = by_agent_id_.find(addr.agent_id);
  if (existing_key != by_agent_id_.end()) {
    const Stored& stored = records_.at(existing_key->second);
    const records::AgentAddr current = records::compact_decode(stored.compact, urls_);
    if (addr.version <= current.version) {
      fail(Err::stale_version, "version " + std::to_string(addr.version) +
                                   " does not exceed stored " + std::to_string(current.version));
    }
    if (addr.public_key != current.public_key) {
      // A key change must carry a rotation proof countersigned by the key
      // currently on record.
      if (!addr.prev_public_key || !addr.prev_key_countersig ||
          *addr.prev_public_key != current.public_key ||
          !creds::verify(addr.signing_payload(), *addr.prev_key_countersig,
                         current.public_key)) {
        fail(Err::old_key_mismatch, "key change lacks a valid rotation countersignature");
      }
    }
  }

  MergeReport report;
  if (!merge_locked(addr, cfg_.shard_id, report)) {
    fail(Err::stale_version, "record lost the merge");  // unreachable after checks above
  }
  writes_.fetch_add(1, std::memory_order_relaxed);

  const auto name = naming::parse_agent_name(addr.agent_name);
  IndexRecord rec;
  rec.key = naming::name_digest(name);
  rec.compact = records_.at(rec.key).compact;
  rec.lamport = {addr.version, cfg_.shard_id};
  return rec;
}

bool Shard::merge_locked(const records::AgentAddr& addr, const std::string& writer_id,
                         MergeReport& report) {
  const auto name = naming::parse_agent_name(addr.agent_name);
  const Digest8 key = naming::name_digest(name);
  const Lamport incoming{addr.version, writer_id};

  const auto it = records_.find(key);
  if (it != records_.end()) {
    const Lamport current{records::compact_decode(it->second.compact, urls_).version,
                          it->second.writer_id};
    if (incoming < current) {
      ++report.stale;
      return false;
    }
    if (incoming == current) {
      ++report.duplicates;
      return false;
    }
  }

  Stored stored;
  stored.compact = records::compact_encode(addr, urls_);
  stored.writer_id = writer_id;
  stored.agent_id = addr.agent_id;
  stored.prev_public_key = addr.prev_public_key;
  stored.prev_key_countersig = addr.prev_key_countersig;

  // An agent renaming itself leaves the old name key behind only as the
  // stale record it was; drop the agent-id alias to the old key.
  const auto alias = by_agent_id_.find(addr.agent_id);
  if (alias != by_agent_id_.end() && alias->second != key) records_.erase(alias->second);

  records_[key] = std::move(stored);
  by_agent_id_[addr.agent_id] = key;
  for (auto& [peer, dirty] : pending_) dirty.push_back(key);
  ++report.applied;
  return true;
}

ResolutionTarget Shard::target_from(const Stored& s) const {
  ResolutionTarget t;
  t.kind = ResolutionTarget::Kind::addr;
  t.addr = records::compact_decode(s.compact, urls_);
  if (s.prev_public_key) {
    t.addr->prev_public_key = s.prev_public_key;
    t.addr->prev_key_countersig = s.prev_key_countersig;
  }
  return t;
}

ResolutionTarget Shard::resolve(const std::string& name_or_id) const {
  std::shared_lock lk(mu_);
  if (name_or_id.rfind("nanda:", 0) == 0) {
    const auto it = by_agent_id_.find(name_or_id);
    if (it == by_agent_id_.end()) fail(Err::not_found, "unknown agent id " + name_or_id);
    const Stored& s = records_.at(it->second);
    auto t = target_from(s);
    if (t.addr->tombstone) fail(Err::not_found, "agent id " + name_or_id + " was deleted");
    return t;
  }

  const auto name = naming::parse_agent_name(name_or_id);  // MALFORMED_NAME propagates
  const Digest8 key = naming::name_digest(name);
  const auto it = records_.find(key);
  if (it != records_.end()) {
    auto t = target_from(it->second);
    if (t.addr->tombstone) fail(Err::not_found, "'" + name_or_id + "' was deleted");
    return t;
  }

  // Not held natively: routed registration models redirect to the
  // administering registry.
  try {
    const auto model = naming::classify_registration(name, cfg_.registry);
    if (model.kind == naming::RegistrationKind::enterprise_routed ||
        model.kind == naming::RegistrationKind::web3_routed) {
      const auto reg = cfg_.registry_urls.find(model.authority);
      if (reg != cfg_.registry_urls.end()) {
        ResolutionTarget t;
        t.kind = ResolutionTarget::Kind::registry_redirect;
        t.registry_url = reg->second;
        return t;
      }
    }
  } catch (const Error& e) {
    if (e.code() != Err::unknown_namespace) throw;
  }
  fail(Err::not_found, "no record for '" + name_or_id + "'");
}

MergeReport Shard::apply_delta(const CrdtDelta& delta) {
  MergeReport report;
  std::unique_lock lk(mu_);
  for (const auto& [addr, writer] : delta.entries) {
    try {
      records::validate_addr(addr);
    } catch (const Error&) {
      ++report.bad_signature;
      continue;
    }
    if (!creds::verify(addr.signing_payload(), addr.signature, addr.public_key)) {
      ++report.bad_signature;
      continue;
    }
    merge_locked(addr, writer, report);
  }
  return report;
}

std::vector<std::pair<Digest8, Lamport>> Shard::summary() const {
  std::shared_lock lk(mu_);
  std::vector<std::pair<Digest8, Lamport>> out;
  out.reserve(records_.size());
  for (const auto& [key, stored] : records_) {
    const auto addr = records::compact_decode(stored.compact, urls_);
    out.emplace_back(key, Lamport{addr.version, stored.writer_id});
  }
  return out;
}

CrdtDelta Shard::delta_for(const std::vector<std::pair<Digest8, Lamport>>& peer_summary) const {
  std::map<Digest8, Lamport> peer(peer_summary.begin(), peer_summary.end());
  CrdtDelta delta;
  delta.origin = cfg_.shard_id;
  std::shared_lock lk(mu_);
  for (const auto& [key, stored] : records_) {
    auto addr = records::compact_decode(stored.compact, urls_);
    if (stored.prev_public_key) {
      addr.prev_public_key = stored.prev_public_key;
      addr.prev_key_countersig = stored.prev_key_countersig;
    }
    const Lamport local{addr.version, stored.writer_id};
    const auto it = peer.find(key);
    if (it == peer.end() || it->second < local) {
      delta.entries.emplace_back(std::move(addr), stored.writer_id);
    }
  }
  return delta;
}

CrdtDelta Shard::full_delta() const { return delta_for({}); }

CrdtDelta Shard::drain_pending(const std::string& peer_id) {
  std::unique_lock lk(mu_);
  const bool first_contact = pending_.find(peer_id) == pending_.end();
  auto& dirty = pending_[peer_id];
  if (first_contact) {
    // A newly joined peer starts from the full state.
    for (const auto& kv : records_) dirty.push_back(kv.first);
  }
  CrdtDelta delta;
  delta.origin = cfg_.shard_id;
  std::map<Digest8, bool> seen;
  for (auto it = dirty.rbegin(); it != dirty.rend(); ++it) {
    if (seen.emplace(*it, true).second == false) continue;
    const auto rec = records_.find(*it);
    if (rec == records_.end()) continue;
    auto addr = records::compact_decode(rec->second.compact, urls_);
    if (rec->second.prev_public_key) {
      addr.prev_public_key = rec->second.prev_public_key;
      addr.prev_key_countersig = rec->second.prev_key_countersig;
    }
    delta.entries.emplace_back(std::move(addr), rec->second.writer_id);
  }
  dirty.clear();
  return delta;
}

std::size_t Shard::record_count() const {
  std::shared_lock lk(mu_);
  return records_.size();
}

std::string Shard::state_digest() const {
  std::shared_lock lk(mu_);
  std::string acc;
  for (const auto& [key, stored] : records_) {
    acc += to_hex(key);
    acc += to_hex(stored.compact.core.data(), stored.compact.core.size());
    acc += to_hex(stored.compact.signature);
    acc += to_hex(stored.compact.public_key);
    acc += stored.writer_id;
    acc.push_back(';');
  }
  return to_hex(sha256(acc));
}

std::vector<IndexRecord> Shard::all_records() const {
  std::shared_lock lk(mu_);
  std::vector<IndexRecord> out;
  for (const auto& [key, stored] : records_) {
    IndexRecord rec;
    rec.key = key;
    rec.compact = stored.compact;
    rec.lamport = {records::compact_decode(stored.compact, urls_).version, stored.writer_id};
    out.push_back(std::move(rec));
  }
  return out;
}

CrdtDelta anti_entropy(const Shard& local,
                       const std::vector<std::pair<Digest8, Lamport>>& peer_summary) {
  return local.delta_for(peer_summary);
}

Json summary_to_json(const std::vector<std::pair<Digest8, Lamport>>& summary) {
  Json arr = Json::array();
  for (const auto& [key, lamport] : summary) {
    arr.push_back(Json{{"key", to_hex(key)},
                       {"version", lamport.version},
                       {"writer_id", lamport.writer_id}});
  }
  return arr;
}

std::vector<std::pair<Digest8, Lamport>> summary_from_json(const Json& j) {
  std::vector<std::pair<Digest8, Lamport>> out;
  try {
    for (const auto& e : j) {
      out.emplace_back(array_from_hex<kDigestBytes>(e.at("key").get<std::string>()),
                       Lamport{e.at("version").get<std::uint64_t>(),
                               e.at("writer_id").get<std::string>()});
    }
  } catch (const Json::exception& e) {
    fail(Err::parse_failure, std::string("bad summary JSON: ") + e.what());
  }
  return out;
}

Json ThroughputReport::to_json() const {
  return Json{{"mean_ops_per_sec", mean_ops_per_sec},
              {"stddev_ops_per_sec", stddev_ops_per_sec},
              {"runs", run_ops_per_sec},
              {"n_updates", n_updates}};
}

ThroughputReport update_throughput_bench(std::uint64_t n_updates, unsigned runs) {
  ThroughputReport report;
  report.n_updates = n_updates;
  if (n_updates == 0 || runs == 0) return report;

  // Pre-sign outside the timed region; a small key pool keeps setup cheap
  // without letting verification amortize across identical records.
  constexpr std::size_t kKeys = 16;
  std::vector<creds::KeyPair> keys;
  for (std::size_t i = 0; i < kKeys; ++i) {
    keys.push_back(creds::KeyPair::generate("bench-" + std::to_string(i)));
  }
  std::vector<records::AgentAddr> pre;
  pre.reserve(n_updates);
  for (std::uint64_t i = 0; i < n_updates; ++i) {
    records::AgentAddr a;
    char idbuf[64];
    std::snprintf(idbuf, sizeof(idbuf), "nanda:%08llx-0000-4000-8000-%012llx",
                  static_cast<unsigned long long>(i & 0xffffffffull),
                  static_cast<unsigned long long>(i));
    a.agent_id = idbuf;
    a.agent_name = "urn:agent:bench:a" + std::to_string(i);
    a.primary_facts_url = "https://bench.test/" + std::to_string(i) + "/.well-known/agent-facts";
    a.ttl_s = 3600;
    a.version = 1;
    creds::sign_addr(a, keys[i % kKeys]);
    pre.push_back(std::move(a));
  }

  for (unsigned r = 0; r < runs; ++r) {
    Shard shard({"bench-shard", {}, {}}, creds::KeyPair::generate("bench-resolver"));
    const auto t0 = std::chrono::steady_clock::now();
    for (const auto& a : pre) shard.register_record(a);
    const auto t1 = std::chrono::steady_clock::now();
    const double secs = std::chrono::duration<double>(t1 - t0).count();
    report.run_ops_per_sec.push_back(secs > 0 ? static_cast<double>(n_updates) / secs : 0.0);
  }

  double sum = 0.0;
  for (const double v : report.run_ops_per_sec) sum += v;
  report.mean_ops_per_sec = sum / static_cast<double>(runs);
  double var = 0.0;
  for (const double v : report.run_ops_per_sec) {
    var += (v - report.mean_ops_per_sec) * (v - report.mean_ops_per_sec);
  }
  report.stddev_ops_per_sec = runs > 1 ? std::sqrt(var / static_cast<double>(runs - 1)) : 0.0;
  return report;
}

}  // namespace nanda::index

// Copyright 2026 The DecentLLMs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "simnet/brb.h"

#include <algorithm>

#include "core/error.h"
#include "core/serialize.h"

namespace decentllms::simnet {
namespace {

enum class Kind : std::uint8_t { kInitial = 0, kEcho = 1 };

struct SignedValue {
  AgentId origin;
  std::string tag;
  Bytes value;
  Signature origin_sig{};
};

Bytes ValueSigningBytes(const AgentId& origin, const std::string& tag,
                        const Bytes& value) {
  ByteWriter w;
  w.String("decentllms/brb-value");
  w.Agent(origin);
  w.String(tag);
  w.Bytes(value);
  return std::move(w).bytes();
}

void WriteSigned(ByteWriter& w, const SignedValue& v) {
  w.Agent(v.origin);
  w.String(v.tag);
  w.Bytes(v.value);
  w.Bytes(v.origin_sig);
}

SignedValue ReadSigned(ByteReader& r) {
  SignedValue v;
  v.origin = r.Agent();
  v.tag = r.String();
  v.value = r.Bytes();
  auto sig = r.Bytes();
  if (sig.size() != kSignatureSize) throw Error(ErrorCode::kParse, "bad signature size");
  std::copy(sig.begin(), sig.end(), v.origin_sig.begin());
  return v;
}

struct Parsed {
  Kind kind;
  AgentId echoer;
  SignedValue value;
};

// Decodes and authenticates an envelope. Anything that fails is dropped.
std::optional<Parsed> Accept(const Envelope& e, const Keyring& keys,
                             const std::string& tag) {
  if (!keys.VerifyCached(e.sender, e.payload, e.signature)) return std::nullopt;
  try {
    ByteReader r(e.payload);
    Parsed p;
    const auto kind = r.U8();
    if (kind > 1) return std::nullopt;
    p.kind = static_cast<Kind>(kind);
    if (p.kind == Kind::kEcho) {
      p.echoer = r.Agent();
      if (p.echoer != e.sender) return std::nullopt;
    }
    p.value = ReadSigned(r);
    r.ExpectDone();
    if (p.value.tag != tag) return std::nullopt;
    if (p.kind == Kind::kInitial && p.value.origin != e.sender) return std::nullopt;
    if (!keys.VerifyCached(p.value.origin,
                           ValueSigningBytes(p.value.origin, p.value.tag, p.value.value),
                           p.value.origin_sig)) {
      return std::nullopt;
    }
    return p;
  } catch (const Error&) {
    return std::nullopt;
  }
}

void SendSigned(Network& net, const AgentId& from, const AgentId& to,
                Bytes payload, const Signature& sig) {
  Envelope e;
  e.sender = from;
  e.recipient = to;
  e.signature = sig;
  e.payload = std::move(payload);
  net.Send(std::move(e));
}

// Per member view: origin -> payload -> vouching members.
using View = std::map<AgentId, std::map<Bytes, std::set<AgentId>>>;

}  // namespace

BrbInstance BrbInstance::Honest(const AgentId& sender,
                                std::span<const AgentId> recipients,
                                const Bytes& payload) {
  BrbInstance inst{sender, {}};
  for (const auto& r : recipients) inst.outgoing.emplace(r, payload);
  return inst;
}

bool BrbOutcome::Agreement() const {
  if (deliveries.empty()) return true;
  const auto& first = deliveries.begin()->second;
  return std::all_of(deliveries.begin(), deliveries.end(),
                     [&](const auto& kv) { return kv.second == first; });
}

const std::map<AgentId, BrbDelivery>& BrbOutcome::CommonView() const {
  if (deliveries.empty()) throw Error(ErrorCode::kInvariant, "no honest recipients");
  if (!Agreement()) throw Error(ErrorCode::kInvariant, "BRB agreement violated");
  return deliveries.begin()->second;
}

BrbOutcome BroadcastReliable(Network& net, const Keyring& keys,
                             std::span<const BrbInstance> instances,
                             const BrbGroup& group, const std::string& tag) {
  const std::set<AgentId> members(group.members.begin(), group.members.end());
  if (members.size() != group.members.size()) {
    throw InvalidArgument("BRB group has duplicate members");
  }

  // Round 1: initial signed values.
  for (const auto& inst : instances) {
    for (const auto& [recipient, value] : inst.outgoing) {
      if (!members.count(recipient)) {
        throw InvalidArgument("BRB recipient outside group: " + recipient.ToString());
      }
      SignedValue sv{inst.sender, tag, value,
                     keys.key(inst.sender).Sign(ValueSigningBytes(inst.sender, tag, value))};
      ByteWriter w;
      w.U8(static_cast<std::uint8_t>(Kind::kInitial));
      WriteSigned(w, sv);
      Bytes payload = std::move(w).bytes();
      const Signature sig = keys.key(inst.sender).Sign(payload);
      SendSigned(net, inst.sender, recipient, std::move(payload), sig);
    }
  }

  std::map<AgentId, View> views;
  std::map<AgentId, std::vector<SignedValue>> direct;
  for (const auto& e : net.StepRound()) {
    auto p = Accept(e, keys, tag);
    if (!p || p->kind != Kind::kInitial) continue;
    views[e.recipient][p->value.origin][p->value.value].insert(e.recipient);
    direct[e.recipient].push_back(std::move(p->value));
  }

  // Round 2: echoes.
  for (const auto& member : group.members) {
    auto eb = group.echo.find(member);
    if (eb != group.echo.end() && eb->second == EchoBehavior::kWithhold) continue;
    for (const auto& sv : direct[member]) {
      ByteWriter w;
      w.U8(static_cast<std::uint8_t>(Kind::kEcho));
      w.Agent(member);
      WriteSigned(w, sv);
      const Bytes payload = std::move(w).bytes();
      const Signature sig = keys.key(member).Sign(payload);
      for (const auto& other : group.members) {
        if (other != member) SendSigned(net, member, other, payload, sig);
      }
    }
  }
  for (const auto& e : net.StepRound()) {
    auto p = Accept(e, keys, tag);
    if (!p || p->kind != Kind::kEcho) continue;
    views[e.recipient][p->value.origin][p->value.value].insert(p->echoer);
  }

  BrbOutcome out;
  out.network_rounds = 2;
  std::set<AgentId> senders;
  for (const auto& inst : instances) senders.insert(inst.sender);
  for (const auto& member : group.members) {
    if (group.byzantine.count(member)) continue;
    auto& mine = out.deliveries[member];
    const auto& view = views[member];
    for (const auto& sender : senders) {
      BrbDelivery d;
      auto it = view.find(sender);
      if (it != view.end()) {
        if (it->second.size() > 1) {
          d.sender_faulty = true;
          out.faulty_senders.insert(sender);
        } else if (it->second.begin()->second.size() >= group.Quorum()) {
          d.payload = it->second.begin()->first;
        }
      }
      mine.emplace(sender, std::move(d));
    }
  }
  return out;
}

}  // namespace decentllms::simnet

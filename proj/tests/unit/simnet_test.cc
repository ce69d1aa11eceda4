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

#include <gtest/gtest.h>

#include "core/error.h"
#include "simnet/brb.h"
#include "simnet/keyring.h"
#include "simnet/network.h"
#include "support/gen.h"

namespace decentllms::simnet {
namespace {

Bytes B(const std::string& s) { return Bytes(s.begin(), s.end()); }

std::vector<AgentId> Evaluators(std::uint32_t n) {
  std::vector<AgentId> out;
  for (std::uint32_t i = 0; i < n; ++i) out.push_back(Evaluator(i));
  return out;
}

Envelope Env(AgentId from, AgentId to, const std::string& body) {
  Envelope e;
  e.sender = from;
  e.recipient = to;
  e.payload = B(body);
  return e;
}

TEST(Network, DeliveryOrderIndependentOfSendOrder) {
  Network a(10.0), b(10.0);
  std::vector<Envelope> msgs = {Env(Worker(2), Evaluator(0), "x"),
                                Env(Worker(0), Evaluator(1), "y"),
                                Env(Worker(0), Evaluator(0), "z"),
                                Env(Worker(0), Evaluator(0), "a")};
  for (const auto& m : msgs) a.Send(m);
  for (auto it = msgs.rbegin(); it != msgs.rend(); ++it) b.Send(*it);
  const auto da = a.StepRound();
  const auto db = b.StepRound();
  ASSERT_EQ(da.size(), 4u);
  for (std::size_t i = 0; i < da.size(); ++i) {
    EXPECT_EQ(da[i].sender, db[i].sender);
    EXPECT_EQ(da[i].recipient, db[i].recipient);
    EXPECT_EQ(da[i].payload, db[i].payload);
  }
  EXPECT_EQ(da[0].sender, Worker(0));
  EXPECT_EQ(da[0].recipient, Evaluator(0));
  EXPECT_EQ(da.back().sender, Worker(2));
  EXPECT_EQ(a.TranscriptDigest(), b.TranscriptDigest());
}

TEST(Network, ClockAndCharges) {
  Network net(25.0);
  net.Charge("generation", 1000.0);
  net.Send(Env(Worker(0), Evaluator(0), "m"));
  EXPECT_EQ(net.pending(), 1u);
  net.StepRound();
  net.StepRound();
  EXPECT_EQ(net.clock().round, 2u);
  EXPECT_DOUBLE_EQ(net.clock().wall_time_ms, 1050.0);
  EXPECT_DOUBLE_EQ(net.ChargedTotalMs(), net.clock().wall_time_ms);
  ASSERT_EQ(net.transcript().size(), 1u);
  EXPECT_EQ(net.transcript()[0].round, 1u);
  EXPECT_THROW(net.Charge("bad", -1.0), Error);
  EXPECT_THROW(Network(-1.0), Error);
}

TEST(Network, TranscriptNdjsonOneLinePerEnvelope) {
  Network net(0.0);
  net.Send(Env(Worker(0), Evaluator(0), "a"));
  net.Send(Env(Worker(1), Evaluator(0), "b"));
  net.StepRound();
  const auto nd = net.TranscriptNdjson();
  EXPECT_EQ(std::count(nd.begin(), nd.end(), '\n'), 2);
  EXPECT_NE(nd.find("\"sender\":\"w0\""), std::string::npos) << nd;
}

struct Fixture {
  GroupConfig cfg;
  Keyring keys;
  Network net{5.0};
  BrbGroup group;

  Fixture(std::uint32_t nw, std::uint32_t ne, std::uint64_t seed = 7)
      : cfg{nw, ne, 0, 0}, keys(Keyring::Generate(seed, cfg)) {
    group.members = Evaluators(ne);
  }
};

TEST(Brb, HonestSendersDeliverEverywhere) {
  Fixture fx(4, 5);
  std::vector<BrbInstance> inst;
  for (std::uint32_t w = 0; w < 4; ++w) {
    inst.push_back(BrbInstance::Honest(Worker(w), fx.group.members, B("answer" + std::to_string(w))));
  }
  const auto out = BroadcastReliable(fx.net, fx.keys, inst, fx.group, "answers");
  EXPECT_EQ(out.network_rounds, 2u);
  EXPECT_EQ(fx.net.clock().round, 2u);
  ASSERT_TRUE(out.Agreement());
  const auto& view = out.CommonView();
  ASSERT_EQ(view.size(), 4u);
  for (std::uint32_t w = 0; w < 4; ++w) {
    ASSERT_TRUE(view.at(Worker(w)).payload.has_value());
    EXPECT_EQ(*view.at(Worker(w)).payload, B("answer" + std::to_string(w)));
    EXPECT_FALSE(view.at(Worker(w)).sender_faulty);
  }
  EXPECT_TRUE(out.faulty_senders.empty());
}

TEST(Brb, EquivocatingSenderGetsCommonFailureMarker) {
  Fixture fx(1, 7);
  BrbInstance inst{Worker(0), {}};
  for (std::uint32_t e = 0; e < 7; ++e) {
    inst.outgoing.emplace(Evaluator(e), B(e < 3 ? "left" : "right"));
  }
  std::vector<BrbInstance> all{inst};
  const auto out = BroadcastReliable(fx.net, fx.keys, all, fx.group, "answers");
  ASSERT_TRUE(out.Agreement());
  const auto& d = out.CommonView().at(Worker(0));
  EXPECT_FALSE(d.payload.has_value());
  EXPECT_TRUE(d.sender_faulty);
  EXPECT_EQ(out.faulty_senders.count(Worker(0)), 1u);
}

TEST(Brb, SilentSenderIsAbsentEverywhere) {
  Fixture fx(2, 5);
  std::vector<BrbInstance> inst{BrbInstance::Honest(Worker(0), fx.group.members, B("a")),
                                BrbInstance{Worker(1), {}}};
  const auto out = BroadcastReliable(fx.net, fx.keys, inst, fx.group, "answers");
  ASSERT_TRUE(out.Agreement());
  EXPECT_TRUE(out.CommonView().at(Worker(0)).payload.has_value());
  EXPECT_FALSE(out.CommonView().at(Worker(1)).payload.has_value());
  EXPECT_FALSE(out.CommonView().at(Worker(1)).sender_faulty);
}

TEST(Brb, MinorityDeliveryIsNotAccepted) {
  Fixture fx(1, 7);
  BrbInstance inst{Worker(0), {}};
  inst.outgoing.emplace(Evaluator(0), B("a"));
  inst.outgoing.emplace(Evaluator(1), B("a"));
  inst.outgoing.emplace(Evaluator(2), B("a"));
  std::vector<BrbInstance> all{inst};
  const auto out = BroadcastReliable(fx.net, fx.keys, all, fx.group, "t");
  ASSERT_TRUE(out.Agreement());
  EXPECT_FALSE(out.CommonView().at(Worker(0)).payload.has_value());
}

TEST(Brb, WithholdingByzantineEchoersCannotSplitHonestMembers) {
  Fixture fx(1, 7);
  for (std::uint32_t e : {0u, 1u, 2u}) {
    fx.group.byzantine.insert(Evaluator(e));
    fx.group.echo[Evaluator(e)] = EchoBehavior::kWithhold;
  }
  BrbInstance inst{Worker(0), {}};
  for (std::uint32_t e = 0; e < 7; ++e) inst.outgoing.emplace(Evaluator(e), B(e < 3 ? "x" : "y"));
  std::vector<BrbInstance> all{inst};
  const auto out = BroadcastReliable(fx.net, fx.keys, all, fx.group, "t");
  ASSERT_TRUE(out.Agreement());
  EXPECT_EQ(out.deliveries.size(), 4u);
  ASSERT_TRUE(out.CommonView().at(Worker(0)).payload.has_value());
  EXPECT_EQ(*out.CommonView().at(Worker(0)).payload, B("y"));
}

TEST(Brb, ForgedAndMalformedEnvelopesAreDropped) {
  Fixture fx(2, 5);
  Envelope forged = Env(Worker(1), Evaluator(0), "\x01garbage");
  forged.signature = fx.keys.key(Worker(0)).Sign(forged.payload);
  fx.net.Send(forged);
  Envelope malformed = Env(Worker(1), Evaluator(1), "\x07zz");
  malformed.signature = fx.keys.key(Worker(1)).Sign(malformed.payload);
  fx.net.Send(malformed);
  std::vector<BrbInstance> inst{BrbInstance::Honest(Worker(0), fx.group.members, B("ok"))};
  const auto out = BroadcastReliable(fx.net, fx.keys, inst, fx.group, "t");
  ASSERT_TRUE(out.Agreement());
  EXPECT_EQ(*out.CommonView().at(Worker(0)).payload, B("ok"));
}

TEST(Brb, RejectsRecipientsOutsideGroupAndDuplicateMembers) {
  Fixture fx(1, 5);
  BrbInstance inst{Worker(0), {{Worker(0), B("x")}}};
  std::vector<BrbInstance> all{inst};
  EXPECT_THROW(BroadcastReliable(fx.net, fx.keys, all, fx.group, "t"), Error);
  BrbGroup dup = fx.group;
  dup.members.push_back(Evaluator(0));
  std::vector<BrbInstance> none;
  EXPECT_THROW(BroadcastReliable(fx.net, fx.keys, none, dup, "t"), Error);
}

// Random Byzantine senders and withholding Byzantine members, always inside
// the fault bound: honest members must end with identical views.
TEST(Brb, AgreementUnderRandomFaults) {
  testgen::ForAll(100, 77, [](testgen::Gen& g, int run) {
    const auto ne = static_cast<std::uint32_t>(g.Int(4, 15));
    const auto nw = static_cast<std::uint32_t>(g.Int(3, 12));
    const std::int64_t be = (static_cast<std::int64_t>(ne) - 1) / 2 - 1;
    const std::int64_t bw = (static_cast<std::int64_t>(nw) - 1) / 2 - 1;
    const auto fe = static_cast<std::uint32_t>(be > 0 ? g.Int(0, static_cast<int>(be)) : 0);
    const auto fw = static_cast<std::uint32_t>(bw > 0 ? g.Int(0, static_cast<int>(bw)) : 0);
    Fixture fx(nw, ne, static_cast<std::uint64_t>(run) + 1);
    auto members = fx.group.members;
    g.Shuffle(members);
    for (std::uint32_t i = 0; i < fe; ++i) {
      fx.group.byzantine.insert(members[i]);
      if (g.Coin()) fx.group.echo[members[i]] = EchoBehavior::kWithhold;
    }
    std::vector<BrbInstance> inst;
    for (std::uint32_t w = 0; w < nw; ++w) {
      BrbInstance bi{Worker(w), {}};
      if (w >= fw) {
        bi = BrbInstance::Honest(Worker(w), fx.group.members, B("honest" + std::to_string(w)));
      } else {
        switch (g.Int(0, 3)) {
          case 0:  // equivocate on a random partition
            for (const auto& m : fx.group.members) {
              bi.outgoing.emplace(m, B(g.Coin() ? "p" : "q"));
            }
            break;
          case 1:  // random subset
            for (const auto& m : fx.group.members) {
              if (g.Coin()) bi.outgoing.emplace(m, B("partial"));
            }
            break;
          case 2:  // only Byzantine members, possibly different values
            for (const auto& m : fx.group.byzantine) {
              bi.outgoing.emplace(m, B(std::to_string(g.Int(0, 2))));
            }
            break;
          default:  // silent
            break;
        }
      }
      inst.push_back(std::move(bi));
    }
    const auto out = BroadcastReliable(fx.net, fx.keys, inst, fx.group, "answers");
    ASSERT_TRUE(out.Agreement()) << "run " << run;
    const auto& view = out.CommonView();
    for (std::uint32_t w = fw; w < nw; ++w) {
      ASSERT_TRUE(view.at(Worker(w)).payload.has_value()) << "run " << run;
      EXPECT_EQ(*view.at(Worker(w)).payload, B("honest" + std::to_string(w)));
    }
  });
}

TEST(Brb, Deterministic) {
  auto run = [] {
    Fixture fx(3, 5, 11);
    std::vector<BrbInstance> inst;
    for (std::uint32_t w = 0; w < 3; ++w) {
      inst.push_back(BrbInstance::Honest(Worker(w), fx.group.members, B("v")));
    }
    BroadcastReliable(fx.net, fx.keys, inst, fx.group, "t");
    return fx.net.TranscriptDigest();
  };
  EXPECT_EQ(run(), run());
}

TEST(Keyring, CoversGroupAndCachesVerification) {
  const GroupConfig cfg{2, 3, 0, 0};
  const auto keys = Keyring::Generate(5, cfg);
  EXPECT_TRUE(keys.contains(Worker(1)));
  EXPECT_TRUE(keys.contains(Evaluator(2)));
  EXPECT_FALSE(keys.contains(Worker(2)));
  EXPECT_THROW(keys.key(Evaluator(3)), Error);
  const auto msg = B("hello");
  const auto sig = keys.key(Worker(0)).Sign(msg);
  EXPECT_TRUE(keys.VerifyCached(Worker(0), msg, sig));
  EXPECT_TRUE(keys.VerifyCached(Worker(0), msg, sig));
  EXPECT_FALSE(keys.VerifyCached(Worker(1), msg, sig));
  EXPECT_EQ(Keyring::Generate(5, cfg).public_key(Worker(0)), keys.public_key(Worker(0)));
}

}  // namespace
}  // namespace decentllms::simnet

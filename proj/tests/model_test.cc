// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "model.h"

#include <gtest/gtest.h>

#include <string>

#include "test_util.h"

namespace kicknext {
namespace {

using ::kicknext::testing::FourElementInstance;
using ::kicknext::testing::MixedInstance;

std::string ErrorOf(const std::string& json) {
  try {
    LoadInstance(json);
  } catch (const InstanceError& err) {
    return err.what();
  }
  return "";
}

TEST(LoadInstanceTest, ParsesDocumentedExample) {
  const LaminarInstance instance = FourElementInstance();
  EXPECT_EQ(instance.name(), "four");
  EXPECT_EQ(instance.num_elements(), 4u);
  EXPECT_EQ(instance.num_nodes(), 2u);
  EXPECT_EQ(instance.node(instance.root()).id, 0);
  EXPECT_EQ(instance.node(instance.minimal_node(instance.element_index(1))).id, 1);
  EXPECT_EQ(instance.node(instance.minimal_node(instance.element_index(2))).id, 0);
  EXPECT_TRUE(instance.Contains(instance.root(), instance.element_index(0)));
  EXPECT_FALSE(instance.Contains(instance.node_index(1), instance.element_index(3)));
}

TEST(LoadInstanceTest, RejectsMultipleRoots) {
  const std::string error = ErrorOf(R"({"name": "x",
    "elements": [{"id": 0, "weight": 1}],
    "nodes": [{"id": 0, "capacity": 1, "parent": null},
              {"id": 1, "capacity": 1, "parent": null}],
    "membership": {"0": 0}})");
  EXPECT_NE(error.find("multiple roots"), std::string::npos) << error;
  EXPECT_NE(error.find("id 1"), std::string::npos) << error;
}

TEST(LoadInstanceTest, RejectsZeroCapacity) {
  const std::string error = ErrorOf(R"({"name": "x",
    "elements": [{"id": 0, "weight": 1}],
    "nodes": [{"id": 0, "capacity": 2, "parent": null},
              {"id": 7, "capacity": 0, "parent": 0}],
    "membership": {"0": 7}})");
  EXPECT_NE(error.find("non-positive capacity"), std::string::npos) << error;
  EXPECT_NE(error.find("id 7"), std::string::npos) << error;
}

TEST(LoadInstanceTest, RejectsStructuralErrors) {
  // Malformed syntax.
  EXPECT_NE(ErrorOf("{\"name\": ").find("malformed"), std::string::npos);
  // Duplicate element id.
  EXPECT_NE(ErrorOf(R"({"elements": [{"id": 0, "weight": 1}, {"id": 0, "weight": 2}],
    "nodes": [{"id": 0, "capacity": 1, "parent": null}],
    "membership": {"0": 0}})").find("duplicate element id"), std::string::npos);
  // Cycle: 1 -> 2 -> 1 beside the root.
  EXPECT_NE(ErrorOf(R"({"elements": [{"id": 0, "weight": 1}],
    "nodes": [{"id": 0, "capacity": 3, "parent": null},
              {"id": 1, "capacity": 1, "parent": 2},
              {"id": 2, "capacity": 2, "parent": 1}],
    "membership": {"0": 0}})").find("cyclic"), std::string::npos);
  // Membership to unknown node.
  EXPECT_NE(ErrorOf(R"({"elements": [{"id": 0, "weight": 1}],
    "nodes": [{"id": 0, "capacity": 1, "parent": null}],
    "membership": {"0": 9}})").find("unknown node"), std::string::npos);
  // Element without membership.
  EXPECT_NE(ErrorOf(R"({"elements": [{"id": 0, "weight": 1}, {"id": 1, "weight": 1}],
    "nodes": [{"id": 0, "capacity": 1, "parent": null}],
    "membership": {"0": 0}})").find("without membership"), std::string::npos);
  // Non-positive weight.
  EXPECT_NE(ErrorOf(R"({"elements": [{"id": 0, "weight": 0}],
    "nodes": [{"id": 0, "capacity": 1, "parent": null}],
    "membership": {"0": 0}})").find("non-positive weight"), std::string::npos);
}

TEST(SaveInstanceTest, RoundTripPreservesStructure) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const LaminarInstance original = MixedInstance(seed, 3 + static_cast<int>(seed % 9));
    const LaminarInstance copy = LoadInstance(SaveInstance(original));
    ASSERT_EQ(copy.name(), original.name());
    ASSERT_EQ(copy.num_elements(), original.num_elements());
    for (std::size_t e = 0; e < original.num_elements(); ++e) {
      EXPECT_EQ(copy.element(e).id, original.element(e).id);
      EXPECT_EQ(copy.element(e).weight, original.element(e).weight);
    }
    EXPECT_EQ(copy.Membership(), original.Membership());
    ASSERT_EQ(copy.num_nodes(), original.num_nodes());
    for (std::size_t b = 0; b < original.num_nodes(); ++b) {
      EXPECT_EQ(copy.node(b).id, original.node(b).id);
      EXPECT_EQ(copy.capacity(b), original.capacity(b));
      EXPECT_EQ(copy.parent(b), original.parent(b));
    }
    EXPECT_EQ(SaveInstance(copy), SaveInstance(original));
  }
}

TEST(WeightOrderTest, BreaksTiesByIdAndPutsVirtualLast) {
  const WeightOrder before;
  EXPECT_TRUE(before({1, 5.0}, {0, 4.0}));
  EXPECT_TRUE(before({0, 5.0}, {1, 5.0}));
  EXPECT_FALSE(before({1, 5.0}, {0, 5.0}));
  EXPECT_FALSE(before({3, 5.0}, {3, 5.0}));
  EXPECT_TRUE(before({9, 0.001}, {0, 0.0, true}));
  EXPECT_TRUE(before({4, 0.0, true}, {5, 0.0, true}));
}

LaminarInstance Path(std::vector<std::int64_t> capacities) {
  std::vector<NodeSpec> nodes;
  std::map<std::int64_t, std::int64_t> membership;
  std::vector<Element> elements;
  for (std::size_t j = 0; j < capacities.size(); ++j) {
    std::optional<std::int64_t> parent;
    if (j > 0) parent = static_cast<std::int64_t>(j) - 1;
    nodes.push_back({static_cast<std::int64_t>(j), capacities[j], parent});
    elements.push_back({static_cast<std::int64_t>(j), 1.0 + j, false});
    membership[static_cast<std::int64_t>(j)] = static_cast<std::int64_t>(j);
  }
  return LaminarInstance("path", elements, nodes, membership);
}

TEST(NormalizeFamilyTest, RemovesChildWithEqualCapacity) {
  const LaminarInstance normalized = NormalizeFamily(Path({3, 3}));
  ASSERT_EQ(normalized.num_nodes(), 1u);
  EXPECT_EQ(normalized.node(normalized.minimal_node(normalized.element_index(1))).id, 0);
}

TEST(NormalizeFamilyTest, ScansAllAncestors) {
  // Capacities 5, 2, 4 from the root down: only the leaf is redundant.
  const LaminarInstance normalized = NormalizeFamily(Path({5, 2, 4}));
  ASSERT_EQ(normalized.num_nodes(), 2u);
  EXPECT_EQ(normalized.node(1).id, 1);
  EXPECT_EQ(normalized.node(normalized.minimal_node(normalized.element_index(2))).id, 1);
}

TEST(NormalizeFamilyTest, IdentityOnMonotoneTreeAndIdempotent) {
  const LaminarInstance monotone = Path({6, 4, 1});
  EXPECT_EQ(SaveInstance(NormalizeFamily(monotone)), SaveInstance(monotone));
  for (std::vector<std::int64_t> caps :
       {std::vector<std::int64_t>{2, 5, 1, 1}, {4, 4, 4}, {1, 9, 3, 2}}) {
    const LaminarInstance once = NormalizeFamily(Path(caps));
    EXPECT_EQ(SaveInstance(NormalizeFamily(once)), SaveInstance(once));
    EXPECT_TRUE(::kicknext::testing::StrictlyMonotone(once));
  }
}

TEST(ChainTest, FollowsParentsAndRejectsNonContainment) {
  const LaminarInstance path = Path({6, 4, 1});
  EXPECT_EQ(Chain(path, 2, 0), (std::vector<std::size_t>{2, 1, 0}));
  EXPECT_EQ(Chain(path, 0, 0), (std::vector<std::size_t>{0}));
  EXPECT_THROW(Chain(path, 0, 2), InstanceError);

  const LaminarInstance siblings = LoadInstance(R"({"elements": [{"id": 0, "weight": 1}],
    "nodes": [{"id": 0, "capacity": 3, "parent": null},
              {"id": 1, "capacity": 1, "parent": 0},
              {"id": 2, "capacity": 1, "parent": 0}],
    "membership": {"0": 1}})");
  EXPECT_THROW(Chain(siblings, 1, 2), InstanceError);
}

TEST(ChainTest, CapacitiesIncreaseAlongEveryElementChain) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const LaminarInstance instance = MixedInstance(seed, 2 + static_cast<int>(seed % 11));
    for (std::size_t e = 0; e < instance.num_elements(); ++e) {
      const auto chain = Chain(instance, instance.minimal_node(e), instance.root());
      ASSERT_FALSE(chain.empty());
      for (std::size_t j = 1; j < chain.size(); ++j) {
        EXPECT_LT(instance.capacity(chain[j - 1]), instance.capacity(chain[j]));
      }
    }
  }
}

}  // namespace
}  // namespace kicknext

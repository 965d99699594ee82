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

#ifndef KICKNEXT_SRC_MODEL_H_
#define KICKNEXT_SRC_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kicknext {

// Raised for any structural problem with an instance: bad syntax, dangling
// references, duplicate ids, non-tree families, invalid capacities.
class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kNoNode = static_cast<std::size_t>(-1);

struct Element {
  std::int64_t id = 0;
  double weight = 0.0;
  // Padding elements only. They have weight 0 and are never selected.
  bool is_virtual = false;
};

// Total order used everywhere: heavier first, lower id first among equal
// weights. Virtual elements always sort after real ones.
struct WeightOrder {
  bool operator()(const Element& x, const Element& y) const {
    if (x.is_virtual != y.is_virtual) return y.is_virtual;
    if (x.weight != y.weight) return x.weight > y.weight;
    return x.id < y.id;
  }
};

// Input form of a family node, before the tree is linked.
struct NodeSpec {
  std::int64_t id = 0;
  std::int64_t capacity = 0;
  std::optional<std::int64_t> parent;
};

struct FamilyNode {
  std::int64_t id = 0;
  int capacity = 0;
  std::size_t parent = kNoNode;  // index into nodes(); kNoNode for the root
  std::vector<std::size_t> children;
};

// A laminar matroid given as a rooted capacity tree. Every element is
// attached to its minimal containing set M(i); a node's member set is the
// union of the elements attached to it or to any descendant.
//
// Elements and nodes are addressed by dense index (position in elements() /
// nodes()); ids are only used at the serialization boundary. Instances are
// immutable after construction.
class LaminarInstance {
 public:
  // Validates and links the tree. Throws InstanceError naming the offending
  // id on: duplicate element or node ids, non-positive capacity, non-positive
  // or non-finite weight, zero or multiple roots, unknown parent, cycles,
  // membership referencing an unknown element or node, elements without
  // membership.
  LaminarInstance(std::string name, std::vector<Element> elements,
                  std::vector<NodeSpec> nodes,
                  const std::map<std::int64_t, std::int64_t>& membership);

  const std::string& name() const { return name_; }
  const std::vector<Element>& elements() const { return elements_; }
  const std::vector<FamilyNode>& nodes() const { return nodes_; }
  std::size_t num_elements() const { return elements_.size(); }
  std::size_t num_nodes() const { return nodes_.size(); }

  const Element& element(std::size_t e) const { return elements_.at(e); }
  const FamilyNode& node(std::size_t b) const { return nodes_.at(b); }
  double weight(std::size_t e) const { return elements_[e].weight; }
  int capacity(std::size_t b) const { return nodes_[b].capacity; }
  std::size_t parent(std::size_t b) const { return nodes_[b].parent; }
  std::size_t root() const { return root_; }

  // M(i) as a node index.
  std::size_t minimal_node(std::size_t e) const { return minimal_node_.at(e); }

  // Throw InstanceError on unknown ids.
  std::size_t element_index(std::int64_t id) const;
  std::size_t node_index(std::int64_t id) const;

  // True iff `ancestor` is `descendant` or one of its ancestors.
  bool IsAncestorOrSelf(std::size_t ancestor, std::size_t descendant) const {
    return enter_[ancestor] <= enter_[descendant] &&
           enter_[descendant] < leave_[ancestor];
  }
  // True iff element `e` is a member of node `b`'s set.
  bool Contains(std::size_t b, std::size_t e) const {
    return IsAncestorOrSelf(b, minimal_node_[e]);
  }

  // Position of `e` in the weight order: 0 is the heaviest element.
  std::size_t rank(std::size_t e) const { return rank_[e]; }
  // Element indices sorted heaviest first.
  const std::vector<std::size_t>& by_weight() const { return by_weight_; }
  // x strictly precedes (is heavier than) y.
  bool Precedes(std::size_t x, std::size_t y) const {
    return rank_[x] < rank_[y];
  }

  // Id of the `slot`-th padding element of node `b`. Padding ids are fresh
  // (larger than every real id) and distinct across nodes.
  std::int64_t VirtualId(std::size_t b, int slot) const {
    return virtual_base_ + padding_offset_[b] + slot;
  }

  double TotalWeight() const;

  // Node specs and membership in input form, for serialization and rebuilds.
  std::vector<NodeSpec> NodeSpecs() const;
  std::map<std::int64_t, std::int64_t> Membership() const;

 private:
  std::string name_;
  std::vector<Element> elements_;
  std::vector<FamilyNode> nodes_;
  std::size_t root_ = kNoNode;
  std::vector<std::size_t> minimal_node_;
  std::map<std::int64_t, std::size_t> element_index_;
  std::map<std::int64_t, std::size_t> node_index_;
  std::vector<std::size_t> enter_;
  std::vector<std::size_t> leave_;
  std::vector<std::size_t> rank_;
  std::vector<std::size_t> by_weight_;
  std::int64_t virtual_base_ = 0;
  std::vector<std::int64_t> padding_offset_;
};

// JSON instance format:
//   {"name": str,
//    "elements": [{"id": int, "weight": number}, ...],
//    "nodes": [{"id": int, "capacity": int, "parent": int|null}, ...],
//    "membership": {"<element id>": <node id>, ...}}
LaminarInstance LoadInstance(std::string_view text);
LaminarInstance LoadInstanceFile(const std::string& path);
std::string SaveInstance(const LaminarInstance& instance);

// Removes every node whose capacity is at least that of some proper
// ancestor. Children and attached elements of a removed node move to its
// nearest surviving ancestor. The independent sets are unchanged.
LaminarInstance NormalizeFamily(const LaminarInstance& instance);

// Chain[from, to]: node indices from `from` up to `to` along parent links.
// Throws InstanceError if `from` is not contained in `to`.
std::vector<std::size_t> Chain(const LaminarInstance& instance,
                               std::size_t from, std::size_t to);

}  // namespace kicknext

#endif  // KICKNEXT_SRC_MODEL_H_

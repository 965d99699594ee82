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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace kicknext {

namespace {

std::string Describe(const char* what, std::int64_t id) {
  std::ostringstream out;
  out << what << " (id " << id << ")";
  return out.str();
}

}  // namespace

LaminarInstance::LaminarInstance(
    std::string name, std::vector<Element> elements,
    std::vector<NodeSpec> nodes,
    const std::map<std::int64_t, std::int64_t>& membership)
    : name_(std::move(name)), elements_(std::move(elements)) {
  for (std::size_t e = 0; e < elements_.size(); ++e) {
    const Element& el = elements_[e];
    if (!element_index_.emplace(el.id, e).second) {
      throw InstanceError(Describe("duplicate element id", el.id));
    }
    if (el.id < 0) throw InstanceError(Describe("negative element id", el.id));
    if (el.is_virtual) {
      throw InstanceError(Describe("virtual element in input", el.id));
    }
    if (!std::isfinite(el.weight) || el.weight <= 0.0) {
      throw InstanceError(Describe("non-positive weight", el.id));
    }
  }

  if (nodes.empty()) throw InstanceError("family has no nodes");
  nodes_.resize(nodes.size());
  for (std::size_t b = 0; b < nodes.size(); ++b) {
    const NodeSpec& spec = nodes[b];
    if (!node_index_.emplace(spec.id, b).second) {
      throw InstanceError(Describe("duplicate node id", spec.id));
    }
    if (spec.capacity <= 0) {
      throw InstanceError(Describe("non-positive capacity", spec.id));
    }
    if (spec.capacity > std::numeric_limits<int>::max()) {
      throw InstanceError(Describe("capacity too large", spec.id));
    }
    nodes_[b].id = spec.id;
    nodes_[b].capacity = static_cast<int>(spec.capacity);
  }
  for (std::size_t b = 0; b < nodes.size(); ++b) {
    if (!nodes[b].parent) {
      if (root_ != kNoNode) {
        throw InstanceError(Describe("multiple roots", nodes[b].id));
      }
      root_ = b;
      continue;
    }
    auto it = node_index_.find(*nodes[b].parent);
    if (it == node_index_.end()) {
      throw InstanceError(Describe("unknown parent of node", nodes[b].id));
    }
    nodes_[b].parent = it->second;
    nodes_[it->second].children.push_back(b);
  }
  if (root_ == kNoNode) throw InstanceError("no root node (cyclic family)");

  // Euler tour from the root; anything not reached sits on a cycle.
  enter_.assign(nodes_.size(), 0);
  leave_.assign(nodes_.size(), 0);
  std::vector<bool> seen(nodes_.size(), false);
  std::size_t clock = 0;
  std::vector<std::pair<std::size_t, std::size_t>> stack = {{root_, 0}};
  seen[root_] = true;
  enter_[root_] = clock++;
  while (!stack.empty()) {
    auto& [b, next_child] = stack.back();
    if (next_child < nodes_[b].children.size()) {
      std::size_t c = nodes_[b].children[next_child++];
      seen[c] = true;
      enter_[c] = clock++;
      stack.emplace_back(c, 0);
    } else {
      leave_[b] = clock;
      stack.pop_back();
    }
  }
  for (std::size_t b = 0; b < nodes_.size(); ++b) {
    if (!seen[b]) throw InstanceError(Describe("cyclic family at node", nodes_[b].id));
  }

  minimal_node_.assign(elements_.size(), kNoNode);
  for (const auto& [element_id, node_id] : membership) {
    auto e = element_index_.find(element_id);
    if (e == element_index_.end()) {
      throw InstanceError(Describe("membership references unknown element", element_id));
    }
    auto b = node_index_.find(node_id);
    if (b == node_index_.end()) {
      throw InstanceError(Describe("membership references unknown node", node_id));
    }
    minimal_node_[e->second] = b->second;
  }
  for (std::size_t e = 0; e < elements_.size(); ++e) {
    if (minimal_node_[e] == kNoNode) {
      throw InstanceError(Describe("element without membership", elements_[e].id));
    }
  }

  by_weight_.resize(elements_.size());
  std::iota(by_weight_.begin(), by_weight_.end(), 0);
  std::sort(by_weight_.begin(), by_weight_.end(),
            [this](std::size_t x, std::size_t y) {
              return WeightOrder{}(elements_[x], elements_[y]);
            });
  rank_.resize(elements_.size());
  for (std::size_t r = 0; r < by_weight_.size(); ++r) rank_[by_weight_[r]] = r;

  virtual_base_ = 0;
  for (const Element& el : elements_) virtual_base_ = std::max(virtual_base_, el.id + 1);
  padding_offset_.resize(nodes_.size());
  std::int64_t offset = 0;
  for (std::size_t b = 0; b < nodes_.size(); ++b) {
    padding_offset_[b] = offset;
    offset += nodes_[b].capacity;
  }
}

std::size_t LaminarInstance::element_index(std::int64_t id) const {
  auto it = element_index_.find(id);
  if (it == element_index_.end()) throw InstanceError(Describe("unknown element", id));
  return it->second;
}

std::size_t LaminarInstance::node_index(std::int64_t id) const {
  auto it = node_index_.find(id);
  if (it == node_index_.end()) throw InstanceError(Describe("unknown node", id));
  return it->second;
}

double LaminarInstance::TotalWeight() const {
  double total = 0.0;
  for (const Element& el : elements_) total += el.weight;
  return total;
}

std::vector<NodeSpec> LaminarInstance::NodeSpecs() const {
  std::vector<NodeSpec> specs;
  specs.reserve(nodes_.size());
  for (const FamilyNode& node : nodes_) {
    NodeSpec spec{node.id, node.capacity, std::nullopt};
    if (node.parent != kNoNode) spec.parent = nodes_[node.parent].id;
    specs.push_back(spec);
  }
  return specs;
}

std::map<std::int64_t, std::int64_t> LaminarInstance::Membership() const {
  std::map<std::int64_t, std::int64_t> membership;
  for (std::size_t e = 0; e < elements_.size(); ++e) {
    membership[elements_[e].id] = nodes_[minimal_node_[e]].id;
  }
  return membership;
}

LaminarInstance LoadInstance(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& err) {
    throw InstanceError(std::string("malformed JSON: ") + err.what());
  }
  try {
    if (!doc.is_object()) throw InstanceError("instance must be a JSON object");
    std::string name = doc.value("name", std::string());

    std::vector<Element> elements;
    for (const json& item : doc.at("elements")) {
      const json& weight = item.at("weight");
      if (!weight.is_number()) throw InstanceError("element weight must be a number");
      elements.push_back({item.at("id").get<std::int64_t>(), weight.get<double>(), false});
    }

    std::vector<NodeSpec> nodes;
    for (const json& item : doc.at("nodes")) {
      NodeSpec spec;
      spec.id = item.at("id").get<std::int64_t>();
      spec.capacity = item.at("capacity").get<std::int64_t>();
      if (item.contains("parent") && !item.at("parent").is_null()) {
        spec.parent = item.at("parent").get<std::int64_t>();
      }
      nodes.push_back(spec);
    }

    std::map<std::int64_t, std::int64_t> membership;
    const json& members = doc.at("membership");
    if (!members.is_object()) throw InstanceError("membership must be an object");
    for (auto it = members.begin(); it != members.end(); ++it) {
      const std::string& key = it.key();
      std::int64_t element_id = 0;
      auto [end, ec] = std::from_chars(key.data(), key.data() + key.size(), element_id);
      if (ec != std::errc() || end != key.data() + key.size()) {
        throw InstanceError("membership key is not an integer: \"" + key + "\"");
      }
      if (!membership.emplace(element_id, it.value().get<std::int64_t>()).second) {
        throw InstanceError(Describe("duplicate membership entry", element_id));
      }
    }
    return LaminarInstance(std::move(name), std::move(elements), std::move(nodes),
                           membership);
  } catch (const json::exception& err) {
    throw InstanceError(std::string("invalid instance: ") + err.what());
  }
}

LaminarInstance LoadInstanceFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InstanceError("cannot open instance file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return LoadInstance(buffer.str());
}

std::string SaveInstance(const LaminarInstance& instance) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["name"] = instance.name();
  doc["elements"] = ordered_json::array();
  for (const Element& el : instance.elements()) {
    doc["elements"].push_back({{"id", el.id}, {"weight", el.weight}});
  }
  doc["nodes"] = ordered_json::array();
  for (const NodeSpec& spec : instance.NodeSpecs()) {
    ordered_json node = {{"id", spec.id}, {"capacity", spec.capacity}};
    node["parent"] = spec.parent ? ordered_json(*spec.parent) : ordered_json(nullptr);
    doc["nodes"].push_back(std::move(node));
  }
  doc["membership"] = ordered_json::object();
  for (const auto& [element_id, node_id] : instance.Membership()) {
    doc["membership"][std::to_string(element_id)] = node_id;
  }
  return doc.dump(2) + "\n";
}

LaminarInstance NormalizeFamily(const LaminarInstance& instance) {
  const std::size_t count = instance.num_nodes();
  // Minimum capacity over proper ancestors, computed top-down.
  std::vector<int> ancestor_min(count, std::numeric_limits<int>::max());
  std::vector<std::size_t> order = {instance.root()};
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::size_t b = order[i];
    for (std::size_t c : instance.node(b).children) {
      ancestor_min[c] = std::min(ancestor_min[b], instance.capacity(b));
      order.push_back(c);
    }
  }
  std::vector<bool> keep(count);
  for (std::size_t b = 0; b < count; ++b) {
    keep[b] = instance.capacity(b) < ancestor_min[b];
  }
  auto surviving = [&](std::size_t b) {
    while (!keep[b]) b = instance.parent(b);
    return b;
  };

  std::vector<NodeSpec> nodes;
  for (std::size_t b = 0; b < count; ++b) {
    if (!keep[b]) continue;
    NodeSpec spec{instance.node(b).id, instance.capacity(b), std::nullopt};
    if (b != instance.root()) {
      spec.parent = instance.node(surviving(instance.parent(b))).id;
    }
    nodes.push_back(spec);
  }
  std::map<std::int64_t, std::int64_t> membership;
  for (std::size_t e = 0; e < instance.num_elements(); ++e) {
    membership[instance.element(e).id] =
        instance.node(surviving(instance.minimal_node(e))).id;
  }
  return LaminarInstance(instance.name(), instance.elements(), std::move(nodes),
                         membership);
}

std::vector<std::size_t> Chain(const LaminarInstance& instance, std::size_t from,
                               std::size_t to) {
  if (from >= instance.num_nodes() || to >= instance.num_nodes()) {
    throw InstanceError("chain endpoint out of range");
  }
  if (!instance.IsAncestorOrSelf(to, from)) {
    throw InstanceError("chain: node " + std::to_string(instance.node(from).id) +
                        " is not contained in node " +
                        std::to_string(instance.node(to).id));
  }
  std::vector<std::size_t> chain = {from};
  while (chain.back() != to) chain.push_back(instance.parent(chain.back()));
  return chain;
}

}  // namespace kicknext

#include "ogt/tree.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace ogt {

void canonicalize_tree(GatherTree& tree) {
  std::sort(tree.edges.begin(), tree.edges.end(), [](const TreeEdge& a, const TreeEdge& b) {
    if (a.round != b.round) return a.round < b.round;
    return a.from < b.from;
  });
}

namespace {

nlohmann::ordered_json tree_to_json_object(const GatherTree& tree) {
  nlohmann::ordered_json j;
  j["p"] = tree.p;
  j["mode"] = tree.mode == RootMode::Auto ? "auto" : "fixed";
  j["root"] = tree.root;
  nlohmann::ordered_json edges = nlohmann::ordered_json::array();
  for (const TreeEdge& e : tree.edges) {
    nlohmann::ordered_json je;
    je["from"] = e.from;
    je["to"] = e.to;
    je["round"] = e.round;
    je["lo"] = e.lo;
    je["hi"] = e.hi;
    je["size"] = e.size;
    edges.push_back(std::move(je));
  }
  j["edges"] = std::move(edges);
  return j;
}

std::string tree_to_dot(const GatherTree& tree) {
  std::ostringstream out;
  out << "digraph gather_tree {\n";
  out << "  rankdir=BT;\n";
  out << "  node [shape=circle];\n";
  out << "  " << tree.root << " [shape=doublecircle];\n";
  for (const TreeEdge& e : tree.edges) {
    out << "  " << e.from << " -> " << e.to << " [label=\"(" << e.round << ", " << e.size
        << ")\"";
    if (e.size == 0) out << ", style=dashed";  // no actual communication
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace

std::string serialize_tree(const GatherTree& tree, TreeFormat format) {
  GatherTree canonical = tree;
  canonicalize_tree(canonical);
  if (format == TreeFormat::Dot) return tree_to_dot(canonical);
  return tree_to_json_object(canonical).dump(2) + "\n";
}

GatherTree tree_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::Parse, std::string("tree JSON: ") + e.what());
  }
  GatherTree tree;
  try {
    tree.p = j.at("p").get<std::uint32_t>();
    std::string mode = j.at("mode").get<std::string>();
    if (mode == "auto")
      tree.mode = RootMode::Auto;
    else if (mode == "fixed")
      tree.mode = RootMode::Fixed;
    else
      throw Error(Errc::Parse, "tree JSON: unknown mode '" + mode + "'");
    tree.root = j.at("root").get<Rank>();
    for (const auto& je : j.at("edges")) {
      TreeEdge e;
      e.from = je.at("from").get<Rank>();
      e.to = je.at("to").get<Rank>();
      e.round = je.at("round").get<std::uint32_t>();
      e.lo = je.at("lo").get<Rank>();
      e.hi = je.at("hi").get<Rank>();
      e.size = je.at("size").get<std::uint64_t>();
      tree.edges.push_back(e);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::Parse, std::string("tree JSON: ") + e.what());
  }
  if (tree.p == 0) throw Error(Errc::Parse, "tree JSON: p must be positive");
  if (tree.root >= tree.p) throw Error(Errc::Parse, "tree JSON: root out of range");
  // Wrapped payload ranges only ever come from relative-rank (binomial) trees.
  tree.kind = TreeKind::OrderedHypercube;
  for (const TreeEdge& e : tree.edges) {
    if (e.from >= tree.p || e.to >= tree.p || e.lo >= tree.p || e.hi >= tree.p)
      throw Error(Errc::Parse, "tree JSON: edge field out of range");
    if (e.lo > e.hi) tree.kind = TreeKind::Binomial;
  }
  canonicalize_tree(tree);
  return tree;
}

void validate_tree(const GatherTree& tree, const ProblemInstance& instance) {
  if (tree.p != instance.p) throw Error(Errc::InvalidArgument, "tree/instance mismatch: p");
  if (tree.mode == RootMode::Fixed && instance.root_mode == RootMode::Fixed &&
      tree.root != instance.fixed_root)
    throw Error(Errc::InvalidArgument, "tree/instance mismatch: fixed root");

  constexpr std::uint32_t kNone = 0xffffffffu;
  const std::uint32_t rounds = ceil_log2(tree.p);
  std::vector<std::uint32_t> send_round(tree.p, kNone);
  std::vector<std::uint32_t> max_receive_round(tree.p, kNone);
  std::vector<std::uint64_t> receive_round_mask(tree.p, 0);
  for (const TreeEdge& e : tree.edges) {
    if (e.from >= tree.p || e.to >= tree.p)
      throw Error(Errc::InvalidArgument, "tree edge rank out of range");
    if (e.from == e.to) throw Error(Errc::InvalidArgument, "self edge");
    if (e.round >= rounds) throw Error(Errc::InvalidArgument, "edge round out of range");
    if (send_round[e.from] != kNone) throw Error(Errc::InvalidArgument, "processor sends twice");
    send_round[e.from] = e.round;
    if (receive_round_mask[e.to] & (1ull << e.round))
      throw Error(Errc::InvalidArgument, "two receives in one round at one processor");
    receive_round_mask[e.to] |= 1ull << e.round;
    if (max_receive_round[e.to] == kNone || e.round > max_receive_round[e.to])
      max_receive_round[e.to] = e.round;
  }
  if (send_round[tree.root] != kNone) throw Error(Errc::InvalidArgument, "root must not send");
  for (Rank i = 0; i < tree.p; ++i) {
    if (i != tree.root && send_round[i] == kNone)
      throw Error(Errc::InvalidArgument, "non-root processor never sends");
    if (send_round[i] != kNone && max_receive_round[i] != kNone &&
        send_round[i] <= max_receive_round[i])
      throw Error(Errc::InvalidArgument, "send round not after receive rounds");
  }
}

}  // namespace ogt

#pragma once

// Line-oriented netlist text format.
//
//   WIDTH <k>
//   SEED <net_0> ... <net_{k-1}>        seed inputs, b_0 first
//   LOAD <net>                          multiplexer select (1 = load seed)
//   TIE0 <net>                          optional constant-0 net
//   <KIND> <id> <out_net> <in_net_1> [<in_net_2> ...]
//
// KIND is XOR2, DFF or MUX. A multiplexer drives a k-bit bus, written as a
// comma-separated list in the output field. Flip-flops hold b_0 .. b_{k-1}
// in the order their lines appear. '#' starts a comment.

#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "ptent/errors.hpp"
#include "ptent/netlist.hpp"

namespace ptent {

inline std::string to_text(const Netlist& nl) {
  std::ostringstream os;
  auto name = [&](NetId id) -> const std::string& { return nl.nets[id]; };
  os << "WIDTH " << nl.width.bits() << '\n';
  os << "SEED";
  for (NetId s : nl.seed_inputs) os << ' ' << name(s);
  os << '\n';
  os << "LOAD " << name(nl.load_input) << '\n';
  for (NetId t : nl.tie_low) os << "TIE0 " << name(t) << '\n';

  // Flip-flops are written in register order so the reader recovers it.
  std::vector<bool> is_register(nl.elements.size(), false);
  for (std::size_t idx : nl.register_bits) is_register[idx] = true;
  auto write = [&](const Element& e) {
    os << kind_name(e.kind) << ' ' << e.id << ' ';
    for (std::size_t i = 0; i < e.outputs.size(); ++i) {
      os << (i ? "," : "") << name(e.outputs[i]);
    }
    for (NetId in : e.inputs) os << ' ' << name(in);
    os << '\n';
  };
  for (std::size_t i = 0; i < nl.elements.size(); ++i) {
    if (!is_register[i]) write(nl.elements[i]);
  }
  for (std::size_t idx : nl.register_bits) write(nl.elements[idx]);
  return os.str();
}

inline Netlist parse_netlist(std::istream& in) {
  std::optional<Netlist> nl;
  std::unordered_map<std::string, NetId> index;
  bool have_load = false;
  int line_no = 0;

  auto fail = [&](const std::string& what) -> ParseError {
    return ParseError("line " + std::to_string(line_no) + ": " + what);
  };
  auto net = [&](const std::string& name) {
    auto [it, inserted] = index.try_emplace(name, static_cast<NetId>(nl->nets.size()));
    if (inserted) nl->nets.push_back(name);
    return it->second;
  };

  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    const std::string& head = tok[0];
    if (head == "WIDTH") {
      if (nl) throw fail("duplicate WIDTH");
      if (tok.size() != 2) throw fail("WIDTH takes one value");
      int k = 0;
      try {
        std::size_t used = 0;
        k = std::stoi(tok[1], &used);
        if (used != tok[1].size()) throw fail("bad width");
      } catch (const std::logic_error&) {
        throw fail("bad width '" + tok[1] + "'");
      }
      try {
        nl.emplace();
        nl->width = BitWidth(k);
      } catch (const RangeError& e) {
        throw fail(e.what());
      }
      continue;
    }
    if (!nl) throw fail("WIDTH must come first");

    if (head == "SEED") {
      for (std::size_t i = 1; i < tok.size(); ++i) nl->seed_inputs.push_back(net(tok[i]));
    } else if (head == "LOAD") {
      if (tok.size() != 2 || have_load) throw fail("LOAD takes exactly one net, once");
      nl->load_input = net(tok[1]);
      have_load = true;
    } else if (head == "TIE0") {
      if (tok.size() != 2) throw fail("TIE0 takes one net");
      nl->tie_low.push_back(net(tok[1]));
    } else {
      ElementKind kind;
      if (head == "XOR2") kind = ElementKind::xor2;
      else if (head == "DFF") kind = ElementKind::dff;
      else if (head == "MUX") kind = ElementKind::mux;
      else throw fail("unknown keyword '" + head + "'");
      if (tok.size() < 4) throw fail(head + " needs id, output and inputs");

      Element e{tok[1], kind, {}, {}};
      std::istringstream outs(tok[2]);
      for (std::string o; std::getline(outs, o, ',');) {
        if (o.empty()) throw fail("empty net in output bus");
        e.outputs.push_back(net(o));
      }
      for (std::size_t i = 3; i < tok.size(); ++i) e.inputs.push_back(net(tok[i]));
      if (kind == ElementKind::dff) nl->register_bits.push_back(nl->elements.size());
      nl->elements.push_back(std::move(e));
    }
  }
  if (!nl) throw ParseError("empty netlist");
  if (!have_load) throw ParseError("missing LOAD line");
  validate(*nl);
  return std::move(*nl);
}

inline Netlist parse_netlist(const std::string& text) {
  std::istringstream in(text);
  return parse_netlist(in);
}

}  // namespace ptent

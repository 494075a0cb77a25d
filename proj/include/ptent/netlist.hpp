#pragma once

// Gate-level model of the tent-map generator circuit:
//
//   * k-1 XOR2 gates c_i = b_0 ^ b_i (i = 1..k-1), the complement bank;
//   * one XOR2 gate p = b_{k-1} ^ b_{k-2}, the perturbation;
//   * k D flip-flops forming a left-shift register (serial-in = p);
//   * one k-bit 2-to-1 multiplexer choosing seed inputs (load) or next state.
//
// The netlist is a plain value; Simulator compiles an evaluation order for it.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

#include "ptent/core_map.hpp"
#include "ptent/errors.hpp"

namespace ptent {

using NetId = std::uint32_t;

enum class ElementKind { xor2, dff, mux };

inline const char* kind_name(ElementKind kind) {
  switch (kind) {
    case ElementKind::xor2: return "XOR2";
    case ElementKind::dff:  return "DFF";
    case ElementKind::mux:  return "MUX";
  }
  return "?";
}

// XOR2: inputs {a, b}, outputs {y}.
// DFF:  inputs {d}, outputs {q}.
// MUX:  inputs {sel, a_0..a_{k-1}, b_0..b_{k-1}}, outputs {y_0..y_{k-1}};
//       y_i = sel ? b_i : a_i.
struct Element {
  std::string id;
  ElementKind kind;
  std::vector<NetId> inputs;
  std::vector<NetId> outputs;
};

struct Netlist {
  BitWidth width{8};
  std::vector<std::string> nets;
  std::vector<Element> elements;
  // Externally driven nets. seed_inputs[i] carries b_i of the seed.
  std::vector<NetId> seed_inputs;
  NetId load_input = 0;
  // Nets tied to constant 0 (the serial-in of an unperturbed register).
  std::vector<NetId> tie_low;
  // Element indices of the flip-flops holding b_0 .. b_{k-1}.
  std::vector<std::size_t> register_bits;

  std::optional<NetId> find_net(const std::string& name) const {
    auto it = std::find(nets.begin(), nets.end(), name);
    if (it == nets.end()) return std::nullopt;
    return static_cast<NetId>(it - nets.begin());
  }
};

struct ElementCensus {
  std::size_t xor2 = 0;
  std::size_t dff = 0;
  std::size_t mux = 0;
  std::size_t total() const { return xor2 + dff + mux; }
};

struct SimState {
  Word dff_values = 0;  // register content, b_0 as MSB
  std::uint64_t cycle = 0;
};

namespace detail {

class NetlistBuilder {
 public:
  explicit NetlistBuilder(BitWidth width) { nl_.width = width; }

  NetId net(const std::string& name) {
    auto [it, inserted] = index_.try_emplace(name, nl_.nets.size());
    if (inserted) nl_.nets.push_back(name);
    return static_cast<NetId>(it->second);
  }

  std::size_t add(std::string id, ElementKind kind, std::vector<NetId> in,
                  std::vector<NetId> out) {
    nl_.elements.push_back({std::move(id), kind, std::move(in), std::move(out)});
    return nl_.elements.size() - 1;
  }

  Netlist& get() { return nl_; }

 private:
  Netlist nl_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace detail

inline ElementCensus element_stats(const Netlist& netlist) {
  ElementCensus census;
  for (const auto& e : netlist.elements) {
    switch (e.kind) {
      case ElementKind::xor2: ++census.xor2; break;
      case ElementKind::dff:  ++census.dff; break;
      case ElementKind::mux:  ++census.mux; break;
    }
  }
  return census;
}

// Checks arity, single drivers, register wiring and the absence of
// combinational loops. Throws StructuralError on the first violation.
inline void validate(const Netlist& nl) {
  const std::size_t k = static_cast<std::size_t>(nl.width.bits());
  const std::size_t n_nets = nl.nets.size();
  auto check_net = [&](NetId id, const std::string& where) {
    if (id >= n_nets) {
      throw StructuralError(where + " references unknown net " +
                            std::to_string(id));
    }
  };

  std::vector<int> drivers(n_nets, 0);
  for (NetId id : nl.seed_inputs) { check_net(id, "seed input"); ++drivers[id]; }
  check_net(nl.load_input, "load input");
  ++drivers[nl.load_input];
  for (NetId id : nl.tie_low) { check_net(id, "tie-low"); ++drivers[id]; }
  if (nl.seed_inputs.size() != k) {
    throw StructuralError("expected " + std::to_string(k) + " seed inputs");
  }

  for (const auto& e : nl.elements) {
    std::size_t want_in = 0, want_out = 0;
    switch (e.kind) {
      case ElementKind::xor2: want_in = 2; want_out = 1; break;
      case ElementKind::dff:  want_in = 1; want_out = 1; break;
      case ElementKind::mux:  want_in = 2 * k + 1; want_out = k; break;
    }
    if (e.inputs.size() != want_in || e.outputs.size() != want_out) {
      throw StructuralError(std::string(kind_name(e.kind)) + " " + e.id +
                            " has wrong pin count");
    }
    for (NetId id : e.inputs) check_net(id, e.id);
    for (NetId id : e.outputs) { check_net(id, e.id); ++drivers[id]; }
  }
  for (std::size_t i = 0; i < n_nets; ++i) {
    if (drivers[i] != 1) {
      throw StructuralError("net " + nl.nets[i] + " has " +
                            std::to_string(drivers[i]) + " drivers");
    }
  }

  if (nl.register_bits.size() != k) {
    throw StructuralError("register must hold exactly " + std::to_string(k) +
                          " flip-flops");
  }
  for (std::size_t idx : nl.register_bits) {
    if (idx >= nl.elements.size() || nl.elements[idx].kind != ElementKind::dff) {
      throw StructuralError("register bit does not name a flip-flop");
    }
  }
}

/// Builds the generator circuit for the given width. With perturbed = false
/// the perturbation gate is omitted and the serial-in is tied low.
inline Netlist build_tent_netlist(BitWidth width, bool perturbed = true) {
  const int k = width.bits();
  detail::NetlistBuilder b(width);
  auto q = [&](int i) { return b.net("q" + std::to_string(i)); };

  // Run-mode next state: bit i <- c_{i+1}, bit k-1 <- serial-in.
  std::vector<NetId> next(k);
  for (int i = 1; i < k; ++i) {
    NetId c = b.net("c" + std::to_string(i));
    b.add("xc" + std::to_string(i), ElementKind::xor2, {q(0), q(i)}, {c});
    next[i - 1] = c;
  }
  if (perturbed) {
    NetId p = b.net("p");
    b.add("xp", ElementKind::xor2, {q(k - 1), q(k - 2)}, {p});
    next[k - 1] = p;
  } else {
    NetId gnd = b.net("gnd");
    b.get().tie_low.push_back(gnd);
    next[k - 1] = gnd;
  }

  NetId load = b.net("load");
  b.get().load_input = load;
  std::vector<NetId> mux_in{load};
  mux_in.insert(mux_in.end(), next.begin(), next.end());
  for (int i = 0; i < k; ++i) {
    NetId s = b.net("seed" + std::to_string(i));
    b.get().seed_inputs.push_back(s);
    mux_in.push_back(s);
  }
  std::vector<NetId> d(k);
  for (int i = 0; i < k; ++i) d[i] = b.net("d" + std::to_string(i));
  b.add("mux", ElementKind::mux, mux_in, d);

  for (int i = 0; i < k; ++i) {
    std::size_t idx = b.add("ff" + std::to_string(i), ElementKind::dff, {d[i]}, {q(i)});
    b.get().register_bits.push_back(idx);
  }

  Netlist nl = std::move(b.get());
  validate(nl);
  return nl;
}

// Two-phase synchronous evaluation: settle every combinational element in
// topological order from the flip-flop outputs, then clock all flip-flops.
class Simulator {
 public:
  explicit Simulator(const Netlist& netlist) : nl_(&netlist) {
    validate(netlist);
    order_ = levelize(netlist);
  }

  SimState cycle(const SimState& state, bool load, Word seed) const {
    const BitWidth width = nl_->width;
    detail::require_word(state.dff_values, width);
    detail::require_word(seed, width);
    const int k = width.bits();

    std::vector<std::uint8_t> v(nl_->nets.size(), 0);
    for (int i = 0; i < k; ++i) {
      const Element& ff = nl_->elements[nl_->register_bits[i]];
      v[ff.outputs[0]] = static_cast<std::uint8_t>(bit(state.dff_values, width, i));
      v[nl_->seed_inputs[i]] = static_cast<std::uint8_t>(bit(seed, width, i));
    }
    v[nl_->load_input] = load ? 1 : 0;
    for (NetId t : nl_->tie_low) v[t] = 0;

    for (std::size_t idx : order_) {
      const Element& e = nl_->elements[idx];
      if (e.kind == ElementKind::xor2) {
        v[e.outputs[0]] = v[e.inputs[0]] ^ v[e.inputs[1]];
      } else {
        const bool sel = v[e.inputs[0]] != 0;
        for (std::size_t i = 0; i < e.outputs.size(); ++i) {
          v[e.outputs[i]] = v[e.inputs[1 + i + (sel ? e.outputs.size() : 0)]];
        }
      }
    }

    Word next = 0;
    for (int i = 0; i < k; ++i) {
      const Element& ff = nl_->elements[nl_->register_bits[i]];
      next = (next << 1) | v[ff.inputs[0]];
    }
    return {next, state.cycle + 1};
  }

 private:
  static std::vector<std::size_t> levelize(const Netlist& nl) {
    std::vector<std::optional<std::size_t>> driver(nl.nets.size());
    for (std::size_t i = 0; i < nl.elements.size(); ++i) {
      for (NetId o : nl.elements[i].outputs) driver[o] = i;
    }
    // Edges run between combinational elements only; flip-flops cut them.
    std::vector<std::vector<std::size_t>> fanout(nl.elements.size());
    std::vector<int> indegree(nl.elements.size(), 0);
    std::size_t n_comb = 0;
    for (std::size_t i = 0; i < nl.elements.size(); ++i) {
      const Element& e = nl.elements[i];
      if (e.kind == ElementKind::dff) continue;
      ++n_comb;
      for (NetId in : e.inputs) {
        auto src = driver[in];
        if (src && nl.elements[*src].kind != ElementKind::dff) {
          fanout[*src].push_back(i);
          ++indegree[i];
        }
      }
    }
    std::queue<std::size_t> ready;
    for (std::size_t i = 0; i < nl.elements.size(); ++i) {
      if (nl.elements[i].kind != ElementKind::dff && indegree[i] == 0) ready.push(i);
    }
    std::vector<std::size_t> order;
    while (!ready.empty()) {
      std::size_t i = ready.front();
      ready.pop();
      order.push_back(i);
      for (std::size_t j : fanout[i]) {
        if (--indegree[j] == 0) ready.push(j);
      }
    }
    if (order.size() != n_comb) {
      throw StructuralError("combinational loop not broken by a flip-flop");
    }
    return order;
  }

  const Netlist* nl_;
  std::vector<std::size_t> order_;
};

inline SimState simulate_cycle(const Netlist& netlist, const SimState& state,
                               bool load, Word seed) {
  return Simulator(netlist).cycle(state, load, seed);
}

/// One load cycle followed by n run cycles; returns the n + 1 register values.
inline std::vector<Word> run(const Netlist& netlist, Word seed, std::size_t n) {
  if (n < 1) throw RangeError("run needs at least one cycle");
  Simulator sim(netlist);
  std::vector<Word> out;
  out.reserve(n + 1);
  SimState s = sim.cycle(SimState{}, true, seed);
  out.push_back(s.dff_values);
  for (std::size_t i = 0; i < n; ++i) {
    s = sim.cycle(s, false, 0);
    out.push_back(s.dff_values);
  }
  return out;
}

}  // namespace ptent

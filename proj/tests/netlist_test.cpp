#include <gtest/gtest.h>

#include "ptent/comparison.hpp"
#include "ptent/netlist.hpp"
#include "ptent/netlist_io.hpp"

using namespace ptent;

TEST(BuildTentNetlist, CensusExamples) {
  const auto c8 = element_stats(build_tent_netlist(BitWidth{8}));
  EXPECT_EQ(c8.xor2, 8u);
  EXPECT_EQ(c8.dff, 8u);
  EXPECT_EQ(c8.mux, 1u);
  EXPECT_EQ(c8.total(), 17u);

  const auto c2 = element_stats(build_tent_netlist(BitWidth{2}));
  EXPECT_EQ(c2.xor2, 2u);
  EXPECT_EQ(c2.dff, 2u);
  EXPECT_EQ(c2.total(), 5u);

  EXPECT_EQ(element_stats(build_tent_netlist(BitWidth{16})).total(), 33u);
  EXPECT_EQ(element_stats(build_tent_netlist(BitWidth{32})).total(), 65u);
  EXPECT_EQ(element_stats(build_tent_netlist(BitWidth{64})).total(), 129u);
}

TEST(BuildTentNetlist, CensusFormulaAllWidths) {
  for (int k = 2; k <= 64; ++k) {
    const auto c = element_stats(build_tent_netlist(BitWidth{k}));
    ASSERT_EQ(c.total(), static_cast<std::size_t>(2 * k + 1));
    ASSERT_EQ(c.xor2, static_cast<std::size_t>(k));
    ASSERT_EQ(c.dff, static_cast<std::size_t>(k));
    ASSERT_EQ(c.mux, 1u);
  }
}

TEST(BuildTentNetlist, UnperturbedDropsOneGate) {
  const auto nl = build_tent_netlist(BitWidth{8}, false);
  EXPECT_EQ(element_stats(nl).xor2, 7u);
  EXPECT_EQ(nl.tie_low.size(), 1u);
}

TEST(BuildTentNetlist, RejectsNarrowWidth) { EXPECT_THROW(build_tent_netlist(BitWidth{1}), RangeError); }

TEST(BuildTentNetlist, ComplementBankPairsMsbWithEachBit) {
  const auto nl = build_tent_netlist(BitWidth{8});
  const NetId q0 = *nl.find_net("q0");
  int bank = 0;
  for (const auto& e : nl.elements) {
    if (e.kind != ElementKind::xor2 || e.id == "xp") continue;
    ++bank;
    EXPECT_EQ(e.inputs[0], q0);
  }
  EXPECT_EQ(bank, 7);
}

TEST(BuildTentNetlist, StructurallyValidAllWidths) {
  for (int k = 2; k <= 64; ++k) {
    for (bool p : {true, false}) EXPECT_NO_THROW(validate(build_tent_netlist(BitWidth{k}, p)));
  }
}

TEST(Validate, RejectsDoubleDriver) {
  auto nl = build_tent_netlist(BitWidth{4});
  // Second driver for c1.
  nl.elements.push_back({"extra", ElementKind::xor2, {0, 1}, {*nl.find_net("c1")}});
  EXPECT_THROW(validate(nl), StructuralError);
}

TEST(Validate, RejectsUndrivenNet) {
  auto nl = build_tent_netlist(BitWidth{4});
  nl.nets.push_back("floating");
  EXPECT_THROW(validate(nl), StructuralError);
}

TEST(Validate, RejectsWrongArity) {
  auto nl = build_tent_netlist(BitWidth{4});
  nl.elements[0].inputs.pop_back();
  EXPECT_THROW(validate(nl), StructuralError);
}

TEST(Simulator, RejectsCombinationalLoop) {
  auto nl = build_tent_netlist(BitWidth{4});
  // Feed c1 back into its own gate.
  for (auto& e : nl.elements) {
    if (e.id == "xc1") e.inputs[1] = e.outputs[0];
  }
  EXPECT_THROW(Simulator{nl}, StructuralError);
}

TEST(SimulateCycle, Examples) {
  const auto n8 = build_tent_netlist(BitWidth{8});
  EXPECT_EQ(simulate_cycle(n8, {64, 0}, false, 0).dff_values, 128u);
  EXPECT_EQ(simulate_cycle(n8, {64, 5}, false, 0).cycle, 6u);
  for (Word s : {Word{0}, Word{37}, Word{255}}) {
    EXPECT_EQ(simulate_cycle(n8, {201, 0}, true, s).dff_values, s);
  }
  EXPECT_EQ(simulate_cycle(build_tent_netlist(BitWidth{4}), {0b1000, 0}, false, 0).dff_values,
            0b1110u);
}

TEST(Run, Examples) {
  EXPECT_EQ(run(build_tent_netlist(BitWidth{4}), 0b1000, 7),
            (std::vector<Word>{8, 14, 3, 6, 13, 5, 11, 8}));
  EXPECT_EQ(run(build_tent_netlist(BitWidth{8}), 0, 2), (std::vector<Word>{0, 0, 0}));
  EXPECT_EQ(run(build_tent_netlist(BitWidth{8}), 192, 1), (std::vector<Word>{192, 126}));
}

TEST(Run, EqualsWordModelAcrossWidthsAndVariants) {
  for (int k : {2, 3, 5, 8, 13, 16, 31, 64}) {
    const BitWidth w(k);
    for (bool p : {true, false}) {
      const auto nl = build_tent_netlist(w, p);
      const Word seed = 0x5A3C5A3C5A3C5A3Cull & w.mask();
      ASSERT_EQ(run(nl, seed, 300), iterate(MapConfig{w, p}, seed, 300)) << k << p;
    }
  }
}

TEST(Run, Deterministic) {
  const auto nl = build_tent_netlist(BitWidth{12});
  EXPECT_EQ(run(nl, 0x123, 500), run(nl, 0x123, 500));
}

TEST(NetlistText, RoundTripPreservesBehaviour) {
  for (int k : {2, 8, 16}) {
    for (bool p : {true, false}) {
      const auto nl = build_tent_netlist(BitWidth{k}, p);
      const std::string text = to_text(nl);
      const Netlist back = parse_netlist(text);
      EXPECT_EQ(to_text(back), text);
      EXPECT_EQ(element_stats(back).total(), element_stats(nl).total());
      const Word seed = 0x2B & BitWidth{k}.mask();
      EXPECT_EQ(run(back, seed, 200), run(nl, seed, 200));
    }
  }
}

TEST(NetlistText, HeaderAndElementLines) {
  const std::string text = to_text(build_tent_netlist(BitWidth{4}));
  EXPECT_EQ(text.rfind("WIDTH 4\n", 0), 0u);
  EXPECT_NE(text.find("XOR2 xc1 c1 q0 q1\n"), std::string::npos);
  EXPECT_NE(text.find("XOR2 xp p q3 q2\n"), std::string::npos);
  EXPECT_NE(text.find("DFF ff0 q0 d0\n"), std::string::npos);
  EXPECT_NE(text.find("MUX mux d0,d1,d2,d3 load c1 c2 c3 p seed0 seed1 seed2 seed3\n"),
            std::string::npos);
}

TEST(NetlistText, ParseErrors) {
  EXPECT_THROW(parse_netlist(""), ParseError);
  EXPECT_THROW(parse_netlist("XOR2 a b c d\n"), ParseError);
  EXPECT_THROW(parse_netlist("WIDTH 1\n"), ParseError);
  EXPECT_THROW(parse_netlist("WIDTH x\n"), ParseError);
  EXPECT_THROW(parse_netlist("WIDTH 4\nNAND a b c d\n"), ParseError);

  std::string text = to_text(build_tent_netlist(BitWidth{4}));
  // Drop the perturbation gate: p becomes undriven.
  text.erase(text.find("XOR2 xp"), std::string("XOR2 xp p q3 q2\n").size());
  EXPECT_THROW(parse_netlist(text), StructuralError);
}

TEST(NetlistText, CommentsAndBlankLinesIgnored) {
  std::string text = "# generator\n\n" + to_text(build_tent_netlist(BitWidth{4})) + "# end\n";
  EXPECT_EQ(run(parse_netlist(text), 8, 7), (std::vector<Word>{8, 14, 3, 6, 13, 5, 11, 8}));
}

TEST(Comparison, ThisDesignRows) {
  const auto r16 = this_design_row(BitWidth{16});
  EXPECT_EQ(r16.elements, 33u);
  EXPECT_DOUBLE_EQ(r16.ratio, 2.063);
  EXPECT_DOUBLE_EQ(this_design_row(BitWidth{32}).ratio, 2.031);
  EXPECT_DOUBLE_EQ(this_design_row(BitWidth{64}).ratio, 2.016);
}

TEST(Comparison, LiteratureRows) {
  const auto rows = literature_rows();
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].bits, 10);
  EXPECT_EQ(rows[0].elements, 55u);
  EXPECT_DOUBLE_EQ(rows[0].ratio, 5.5);
  EXPECT_DOUBLE_EQ(rows[1].ratio, 5.031);
  EXPECT_DOUBLE_EQ(rows[2].ratio, 5.016);
  for (const auto& r : comparison_table({8, 16, 32, 64})) {
    EXPECT_NEAR(r.ratio, static_cast<double>(r.elements) / r.bits, 5e-4 + 1e-12) << r.source;
  }
}
